"""Generation of the contact-symmetry sequences of the 2-D minimal surface equation.

A contact section phi(p, q), p = u_x, q = u_y, polynomial in q, solves the
determining equation

    (1 + p^2) phi_pp + 2 p q phi_pq + (1 + q^2) phi_qq = 0

iff its q-coefficient ladder satisfies a chain of second-order ODEs in p:
a homogeneous equation at the top power, nonhomogeneous ones at the
intermediate powers (solved by variation of parameters), and a terminal
quadrature at the lowest power.  All of this happens inside the exact
closed-form class of exprcore, so every produced symmetry is verified
symbolically by substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .exprcore import (
    ARCTAN_P,
    CF_P,
    CF_ZERO,
    ClosedForm,
    ClosedFormEscape,
    GaussianRational,
    INV_ONE_PLUS_P2,
    ONE_PLUS_P2,
)

EVEN = "even"
ODD = "odd"
BRANCHES = ("plus", "minus", "re", "im")

_HALF = Fraction(1, 2)
_MINUS_I_HALF = GaussianRational(0, Fraction(-1, 2))


class PQ:
    """Polynomial in q with ClosedForm coefficients: {q_power: ClosedForm}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for k, cf in (coeffs or {}).items():
            if k < 0:
                raise ValueError("q powers must be non-negative")
            if not cf.is_zero():
                clean[k] = cf
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PQ is immutable")

    @staticmethod
    def from_closedform(cf: ClosedForm, q_power: int = 0) -> "PQ":
        return PQ({q_power: cf})

    def __add__(self, other: "PQ") -> "PQ":
        out = dict(self.coeffs)
        for k, cf in other.coeffs.items():
            s = out.get(k, CF_ZERO) + cf
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return PQ(out)

    def __neg__(self) -> "PQ":
        return PQ({k: -cf for k, cf in self.coeffs.items()})

    def __sub__(self, other: "PQ") -> "PQ":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PQ):
            out = {}
            for k1, c1 in self.coeffs.items():
                for k2, c2 in other.coeffs.items():
                    k = k1 + k2
                    prod = c1 * c2
                    if k in out:
                        out[k] = out[k] + prod
                    else:
                        out[k] = prod
            return PQ(out)
        if isinstance(other, ClosedForm):
            return PQ({k: cf * other for k, cf in self.coeffs.items()})
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, s) -> "PQ":
        return PQ({k: cf.scale(s) for k, cf in self.coeffs.items()})

    def shift_q(self, n: int) -> "PQ":
        return PQ({k + n: cf for k, cf in self.coeffs.items()})

    def partial_p(self) -> "PQ":
        return PQ({k: cf.differentiate() for k, cf in self.coeffs.items()})

    def partial_q(self) -> "PQ":
        return PQ({k - 1: cf.scale(k) for k, cf in self.coeffs.items() if k >= 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, PQ):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted((k, hash(cf)) for k, cf in self.coeffs.items())))

    def q_degree(self) -> int:
        return max(self.coeffs, default=0)

    def lambda_degree(self) -> int:
        return max((cf.lambda_degree() for cf in self.coeffs.values()), default=0)

    def conjugate(self) -> "PQ":
        return PQ({k: cf.conjugate() for k, cf in self.coeffs.items()})


class ContactPolynomial:
    """Contact section phi(p, q), polynomial in q with definite parity.

    Even parity stores only even q powers (phi = sum f_l q^(2l)); odd parity
    only odd powers (phi = sum g_l q^(2l+1)).
    """

    __slots__ = ("parity", "pq")

    def __init__(self, parity: str, coeffs):
        if parity not in (EVEN, ODD):
            raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
        pq = coeffs if isinstance(coeffs, PQ) else PQ(coeffs)
        rem = 0 if parity == EVEN else 1
        for k in pq.coeffs:
            if k % 2 != rem:
                raise ValueError(f"q^{k} is not allowed in a {parity} section")
        object.__setattr__(self, "parity", parity)
        object.__setattr__(self, "pq", pq)

    def __setattr__(self, name, value):
        raise AttributeError("ContactPolynomial is immutable")

    @property
    def coeffs(self):
        return self.pq.coeffs

    def level_coefficient(self, level: int) -> ClosedForm:
        """Coefficient at q power 2*level (even) or 2*level+1 (odd)."""
        power = 2 * level + (0 if self.parity == EVEN else 1)
        return self.pq.coeffs.get(power, CF_ZERO)

    def top_level(self) -> int:
        power = self.pq.q_degree()
        return power // 2

    def head(self) -> ClosedForm:
        return self.pq.coeffs.get(self.pq.q_degree(), CF_ZERO)

    def is_zero(self) -> bool:
        return self.pq.is_zero()

    def __eq__(self, other):
        if not isinstance(other, ContactPolynomial):
            return NotImplemented
        return self.parity == other.parity and self.pq == other.pq

    def __hash__(self):
        return hash((self.parity, self.pq))

    def scale(self, s) -> "ContactPolynomial":
        return ContactPolynomial(self.parity, self.pq.scale(s))

    def __add__(self, other: "ContactPolynomial") -> "ContactPolynomial":
        if self.parity != other.parity:
            raise ValueError("cannot add sections of opposite parity")
        return ContactPolynomial(self.parity, self.pq + other.pq)

    def __sub__(self, other: "ContactPolynomial") -> "ContactPolynomial":
        return self + other.scale(-1)

    def lambda_degree(self) -> int:
        return self.pq.lambda_degree()


@dataclass(frozen=True)
class ChainSpec:
    """Selects one chain: parity, level k >= 1 of the head, and basis branch.

    Branch selectors name the homogeneous head solution:
      even: plus -> (p+i)^(-2k+1),  minus -> (p-i)^(-2k+1)
      odd:  plus -> (p-i)^(-2k),    minus -> (p+i)^(-2k)
      re / im -> real and imaginary parts of the (p-i)-pole solution.
    """

    parity: str
    k: int
    branch: str

    def __post_init__(self):
        if self.parity not in (EVEN, ODD):
            raise ValueError(f"bad parity {self.parity!r}")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.branch not in BRANCHES:
            raise ValueError(f"bad branch {self.branch!r}")


def _head_order(parity: str, k: int) -> int:
    return 2 * k - 1 if parity == EVEN else 2 * k


def homogeneous_basis(spec: ChainSpec) -> ClosedForm:
    """The selected homogeneous solution of the top-level chain ODE."""
    m = _head_order(spec.parity, spec.k)
    if spec.parity == EVEN:
        plus = ClosedForm.pole(-1, m)   # (p+i)^(-2k+1)
        minus = ClosedForm.pole(1, m)   # (p-i)^(-2k+1)
    else:
        plus = ClosedForm.pole(1, m)    # (p-i)^(-2k)
        minus = ClosedForm.pole(-1, m)  # (p+i)^(-2k)
    if spec.branch == "plus":
        return plus
    if spec.branch == "minus":
        return minus
    base = ClosedForm.pole(1, m)        # the (p-i)-pole solution for both parities
    conj = base.conjugate()
    if spec.branch == "re":
        return (base + conj).scale(_HALF)
    return (base - conj).scale(_MINUS_I_HALF)


def ode_coefficients(parity: str, k: int):
    """(c1, c0) with the chain ODE (1+p^2) f'' + c1 p f' + c0 f at level k."""
    if parity == EVEN:
        return 4 * k, 2 * k * (2 * k - 1)
    return 2 * (2 * k + 1), 2 * k * (2 * k + 1)


def homogeneous_residual(f: ClosedForm, parity: str, k: int) -> ClosedForm:
    c1, c0 = ode_coefficients(parity, k)
    fp = f.differentiate()
    return ONE_PLUS_P2 * fp.differentiate() + CF_P.scale(c1) * fp + f.scale(c0)


def homogeneous_residual_printed_odd(f: ClosedForm, k: int) -> ClosedForm:
    """Residual under the odd top equation with first-derivative coefficient
    2(2k+1)k, the variant printed in the source text (coincides with the
    derived coefficient 2(2k+1) only at k = 1)."""
    c1 = 2 * (2 * k + 1) * k
    c0 = 2 * k * (2 * k + 1)
    fp = f.differentiate()
    return ONE_PLUS_P2 * fp.differentiate() + CF_P.scale(c1) * fp + f.scale(c0)


def wronskian(y1: ClosedForm, y2: ClosedForm) -> ClosedForm:
    return y1 * y2.differentiate() - y1.differentiate() * y2


def _constant_value(cf: ClosedForm) -> GaussianRational:
    """The value of a ClosedForm that must be a nonzero constant."""
    if set(cf.terms) != {(0, 0)}:
        raise ValueError("expected a constant ClosedForm")
    rf = cf.terms[(0, 0)]
    if rf.pole_plus or rf.pole_minus or len(rf.poly) != 1:
        raise ValueError("expected a constant ClosedForm")
    return rf.poly[0]


def forcing_factor(parity: str, level: int) -> int:
    """Multiplier N with chain ODE rhs = -N * (next level coefficient)."""
    if parity == EVEN:
        return (2 * level + 2) * (2 * level + 1)
    return (2 * level + 3) * (2 * level + 2)


def solve_intermediate(parity: str, level: int, f_next: ClosedForm) -> ClosedForm:
    """Particular solution of the level ODE with rhs -N*f_next.

    Variation of parameters over the real basis pair {re, im} at this level;
    integration constants are zero, so no homogeneous component is added.
    The result is checked by substitution before returning.
    """
    if level < 1:
        raise ValueError("intermediate levels start at 1")
    y1 = homogeneous_basis(ChainSpec(parity, level, "re"))
    y2 = homogeneous_basis(ChainSpec(parity, level, "im"))
    w = wronskian(y1, y2)
    m = 2 * level if parity == EVEN else 2 * level + 1
    c = _constant_value(w * ONE_PLUS_P2 ** m)
    # 1/((1+p^2) W) = (1+p^2)^(m-1) / c
    kernel = (ONE_PLUS_P2 ** (m - 1)).scale(c.inverse())
    n = forcing_factor(parity, level)
    int1 = (f_next * y2 * kernel).antiderivative()
    int2 = (f_next * y1 * kernel).antiderivative()
    f_level = (y1 * int1 - y2 * int2).scale(n)
    check = homogeneous_residual(f_level, parity, level) + f_next.scale(n)
    if not check.is_zero():
        raise AssertionError(
            f"variation of parameters failed at level {level} ({parity})")
    return f_level


def terminal_quadrature(parity: str, f1: ClosedForm) -> ClosedForm:
    """Level-0 coefficient by double quadrature, all constants zero.

    Even: (1+p^2) f0'' = -2 f1.  Odd: (1+p^2) g0'' + 2p g0' = -6 g1.
    """
    if parity == EVEN:
        inner = (f1 * INV_ONE_PLUS_P2).antiderivative()
        f0 = inner.antiderivative().scale(-2)
        check = ONE_PLUS_P2 * f0.differentiate().differentiate() + f1.scale(2)
    else:
        inner = f1.antiderivative()
        f0 = (inner * INV_ONE_PLUS_P2).antiderivative().scale(-6)
        f0p = f0.differentiate()
        check = ONE_PLUS_P2 * f0p.differentiate() + CF_P.scale(2) * f0p + f1.scale(6)
    if not check.is_zero():
        raise AssertionError(f"terminal quadrature failed ({parity})")
    return f0


def generate_symmetry(spec: ChainSpec) -> ContactPolynomial:
    """Solve the whole ladder top-down and assemble the contact section."""
    ladder = {spec.k: homogeneous_basis(spec)}
    try:
        for level in range(spec.k - 1, 0, -1):
            ladder[level] = solve_intermediate(spec.parity, level, ladder[level + 1])
        ladder[0] = terminal_quadrature(spec.parity, ladder[1] if spec.k >= 1 else CF_ZERO)
    except ClosedFormEscape as exc:
        exc.chain_spec = spec
        raise
    offset = 0 if spec.parity == EVEN else 1
    phi = ContactPolynomial(
        spec.parity, {2 * level + offset: cf for level, cf in ladder.items()})
    residual = determining_residual(phi)
    if not residual.is_zero():
        raise AssertionError(f"generated section fails the determining equation: {spec}")
    return phi


def determining_residual(phi: ContactPolynomial) -> ContactPolynomial:
    """(1+p^2) phi_pp + 2 p q phi_pq + (1+q^2) phi_qq, parity preserved."""
    pq = phi.pq
    phi_pp = pq.partial_p().partial_p()
    phi_pq = pq.partial_p().partial_q()
    phi_qq = pq.partial_q().partial_q()
    res = (phi_pp * ONE_PLUS_P2
           + phi_pq.shift_q(1) * CF_P.scale(2)
           + phi_qq + phi_qq.shift_q(2))
    return ContactPolynomial(phi.parity, res)


def determining_residual_terms(phi: ContactPolynomial):
    """The three summands of the determining expression, not yet combined.

    Used by the floating-point shadow checks, which must see the
    cancellation happen numerically rather than symbolically.
    """
    pq = phi.pq
    phi_pp = pq.partial_p().partial_p()
    phi_pq = pq.partial_p().partial_q()
    phi_qq = pq.partial_q().partial_q()
    return (phi_pp * ONE_PLUS_P2,
            phi_pq.shift_q(1) * CF_P.scale(2),
            phi_qq + phi_qq.shift_q(2))


def recursion_nabla(head: ClosedForm, parity: str, k: int) -> ClosedForm:
    """Map a level-k homogeneous head to the level-(k+1) head.

    On the complex branches this multiplies by the branch's own pole
    monomial squared; on re/im heads the action is induced by linearity,
    i.e. each pole part is multiplied by its own monomial.
    """
    m = _head_order(parity, k)
    if set(head.terms) != {(0, 0)}:
        raise ValueError("head must be a pure rational homogeneous solution")
    rf = head.terms[(0, 0)]
    if rf.poly or set(rf.pole_plus) - {m} or set(rf.pole_minus) - {m}:
        raise ValueError(f"head is not a level-{k} {parity} homogeneous solution")
    a = rf.pole_plus.get(m)    # coefficient of (p-i)^(-m)
    b = rf.pole_minus.get(m)   # coefficient of (p+i)^(-m)
    out = CF_ZERO
    if a is not None:
        out = out + ClosedForm.pole(1, m + 2, a)
    if b is not None:
        out = out + ClosedForm.pole(-1, m + 2, b)
    return out


def recursion_delta(spec: ChainSpec) -> ChainSpec:
    """Swap the basis branch at fixed parity and level; an involution."""
    swap = {"plus": "minus", "minus": "plus", "re": "im", "im": "re"}
    return ChainSpec(spec.parity, spec.k, swap[spec.branch])


# ---------------------------------------------------------------------------
# printed real bases and the audit against the machine-verified branches


def printed_basis(parity: str, which: int, k: int) -> ClosedForm:
    """The printed real basis formulas, built verbatim.

    even 1: (1+p^2)^(1-2k) * sum_{l=0}^{k-1} (-1)^l C(2k-1, 2l)   p^(2k-2l-1)
    even 2: (1+p^2)^(1-2k) * sum_{l=1}^{k}   C(2k-1, 2l-1)        p^(2k-2l)
    odd  1: (1+p^2)^(-2k)  * sum_{l=0}^{k-1} (-1)^l C(2k, 2l)     p^(2k-2l)
    odd  2: (1+p^2)^(-2k)  * sum_{l=1}^{k}   C(2k, 2l-1)          p^(2k-2l+1)
    """
    if parity == EVEN:
        n_pow = 2 * k - 1
        if which == 1:
            coeffs = {2 * k - 2 * l - 1: Fraction((-1) ** l * comb(2 * k - 1, 2 * l))
                      for l in range(k)}
        else:
            coeffs = {2 * k - 2 * l: Fraction(comb(2 * k - 1, 2 * l - 1))
                      for l in range(1, k + 1)}
    else:
        n_pow = 2 * k
        if which == 1:
            coeffs = {2 * k - 2 * l: Fraction((-1) ** l * comb(2 * k, 2 * l))
                      for l in range(k)}
        else:
            coeffs = {2 * k - 2 * l + 1: Fraction(comb(2 * k, 2 * l - 1))
                      for l in range(1, k + 1)}
    deg = max(coeffs)
    poly = [coeffs.get(j, Fraction(0)) for j in range(deg + 1)]
    return ClosedForm.from_poly(poly) * (INV_ONE_PLUS_P2 ** n_pow)


def audit_printed_bases(kmax: int):
    """Compare printed basis formulas with the machine-verified branches.

    Returns a list of row dicts.  For every printed formula that does not
    match its branch, the row records the (exact) nonzero ODE residual of
    the printed formula; the complex heads and the odd top-equation
    coefficient variant are audited as well.
    """
    rows = []
    for k in range(1, kmax + 1):
        for parity in (EVEN, ODD):
            for which, branch in ((1, "re"), (2, "im")):
                printed = printed_basis(parity, which, k)
                generated = homogeneous_basis(ChainSpec(parity, k, branch))
                matches = printed == generated
                res = homogeneous_residual(printed, parity, k)
                rows.append({
                    "k": k,
                    "item": f"{parity}_basis_{which}",
                    "branch": branch,
                    "matches_branch": matches,
                    "printed_residual_zero": res.is_zero(),
                })
            for branch in ("plus", "minus"):
                head = homogeneous_basis(ChainSpec(parity, k, branch))
                rows.append({
                    "k": k,
                    "item": f"{parity}_complex_head",
                    "branch": branch,
                    "matches_branch": True,
                    "printed_residual_zero":
                        homogeneous_residual(head, parity, k).is_zero(),
                })
        head = homogeneous_basis(ChainSpec(ODD, k, "plus"))
        rows.append({
            "k": k,
            "item": "odd_top_equation_printed_coefficient",
            "branch": "plus",
            "matches_branch": k == 1,
            "printed_residual_zero":
                homogeneous_residual_printed_odd(head, k).is_zero(),
        })
    return rows
