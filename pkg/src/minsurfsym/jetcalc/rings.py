"""Coefficient rings for the jet polynomial layer.

RationalRing: plain exact rationals; the lane for the n-dimensional
catalog, currents and Noether-identity work, where every section is
polynomial.

ContactRing: coefficients are q-polynomials over the univariate closed
forms (PQ), i.e. functions of p = u_x and q = u_y.  In this lane the
first-order jet coordinates live inside the coefficients, which is what
lets transcendental contact sections such as u_y*arctan(u_x) enter the jet
calculus exactly.
"""

from __future__ import annotations

from fractions import Fraction

from ..exprcore import (
    CF_ONE,
    CF_P,
    ClosedForm,
    GaussianRational,
    INV_ONE_PLUS_P2,
    ONE_PLUS_P2,
)
from ..hierarchy import PQ


class RationalRing:
    """Fraction coefficients; no first-order content inside coefficients."""

    embedded_first_order = False

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def from_fraction(q: Fraction) -> Fraction:
        return Fraction(q)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def scale(a, q: Fraction):
        return a * q

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    @staticmethod
    def invert(a):
        return Fraction(1) / a

    @staticmethod
    def partial_first(a, j: int):
        return Fraction(0)

    @staticmethod
    def eval(a, point) -> complex:
        return complex(a)


class ContactRing:
    """PQ coefficients: polynomials in q = u_y over closed forms in p = u_x."""

    embedded_first_order = True

    zero = PQ()
    one = PQ({0: CF_ONE})

    # L^2 = 1 + p^2 + q^2 as a coefficient
    k_coeff = PQ({0: ONE_PLUS_P2, 2: CF_ONE})
    # the u_yy coefficient of the equation and its exact inverse
    c_coeff = PQ({0: ONE_PLUS_P2})
    inv_c_coeff = PQ({0: INV_ONE_PLUS_P2})

    @staticmethod
    def from_fraction(q: Fraction) -> PQ:
        if q == 0:
            return PQ()
        return PQ({0: ClosedForm.from_scalar(q)})

    @staticmethod
    def add(a: PQ, b: PQ) -> PQ:
        return a + b

    @staticmethod
    def mul(a: PQ, b: PQ) -> PQ:
        return a * b

    @staticmethod
    def neg(a: PQ) -> PQ:
        return -a

    @staticmethod
    def scale(a: PQ, q: Fraction) -> PQ:
        return a.scale(q)

    @staticmethod
    def is_zero(a: PQ) -> bool:
        return a.is_zero()

    @staticmethod
    def invert(a: PQ) -> PQ:
        # only rational constants are invertible here; enough for division
        # by leading coefficients, which are rational in all supported uses
        if list(a.coeffs) != [0]:
            raise ValueError("cannot invert a non-constant contact coefficient")
        cf = a.coeffs[0]
        if set(cf.terms) != {(0, 0)}:
            raise ValueError("cannot invert a non-constant contact coefficient")
        rf = cf.terms[(0, 0)]
        if rf.pole_plus or rf.pole_minus or len(rf.poly) != 1:
            raise ValueError("cannot invert a non-constant contact coefficient")
        return PQ({0: ClosedForm.from_scalar(rf.poly[0].inverse())})

    @staticmethod
    def partial_first(a: PQ, j: int) -> PQ:
        if j == 1:
            return a.partial_p()
        if j == 2:
            return a.partial_q()
        raise ValueError("the contact lane has exactly two directions")

    @staticmethod
    def embed_first(j: int) -> PQ:
        if j == 1:
            return PQ({0: CF_P})
        if j == 2:
            return PQ({1: CF_ONE})
        raise ValueError("the contact lane has exactly two directions")

    @staticmethod
    def eval(a: PQ, point) -> complex:
        from ..numcheck import eval_pq
        p = point(("u", (1,)))
        q = point(("u", (2,)))
        return eval_pq(a, p, q)

    @staticmethod
    def divmod_q(num: PQ, den: PQ):
        """Division in q by a divisor whose leading q-coefficient is 1."""
        dn = den.q_degree()
        lead = den.coeffs.get(dn)
        if lead != CF_ONE:
            raise ValueError("divisor must be monic in q")
        quotient = PQ()
        rem = num
        while not rem.is_zero() and rem.q_degree() >= dn:
            e = rem.q_degree()
            c = rem.coeffs[e]
            step = PQ({e - dn: c})
            quotient = quotient + step
            rem = rem - step * den
        return quotient, rem

    @classmethod
    def divide_exact(cls, num: PQ, den: PQ):
        q, r = cls.divmod_q(num, den)
        return q if r.is_zero() else None


RATIONAL_RING = RationalRing()
CONTACT_RING = ContactRing()


def gaussian_to_pq(g: GaussianRational) -> PQ:
    return PQ({0: ClosedForm.from_scalar(g)})
