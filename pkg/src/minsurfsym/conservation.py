"""Symmetry catalog, conserved currents and related certificates.

For arbitrary concrete dimension n, the catalog holds the point symmetries
of the minimal-area equation in evolutionary form, each with the exact
flux mu trivializing its action on the area density L (the dilatation
scales L instead and gets a nonlocal current through the potentials s^i
with D_i s^i = L).  Currents are assembled through the coordinate Noether
identity and verified on construction: their divergence must reduce to
zero modulo the equation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import jetcalc
from .exprcore import CF_ONE, ClosedForm, GaussianRational, ONE_PLUS_P2
from .hierarchy import ContactPolynomial, PQ
from .jetcalc import (
    EquationObject,
    JetContext,
    JetExpression,
    characteristic_of,
    divergence,
    euler_operator,
    evolutionary_apply,
    linearization_apply,
    noether_Q_apply,
    reduce_mod_equation,
)
from .jetcalc.core import contact_context, pure_context
from .jetcalc.poly import sym_u


class NotConservative(Exception):
    """No conservation law exists for this symmetry (classification 'none')."""


NOETHER = "noether"
VARIATIONAL = "variational"
NONE = "none"


@dataclass(frozen=True)
class CatalogSymmetry:
    """One point symmetry in evolutionary form, with its conservation data.

    mu is the exact n-tuple with D_phi(L) = d_h(mu) (+ n*L for the
    dilatation, whose remainder is recorded separately).
    """

    id: str
    n: int
    section: JetExpression
    mu: tuple
    classification: str
    scaling_remainder: int = 0      # the multiple of L left over by d_h(mu)

    def __repr__(self):
        return f"CatalogSymmetry({self.id}, n={self.n}, {self.classification})"


@dataclass(frozen=True)
class ConservedCurrent:
    n: int
    symmetry_id: str
    components: tuple
    is_local: bool

    def divergence(self) -> JetExpression:
        return divergence(self.components)


def catalog(n: int, ctx: JetContext = None):
    """All point symmetries for dimension n, with their mu tables.

    1 shift + n translations + n(n-1)/2 rotations + n xrotations
    + 1 dilatation.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    ctx = ctx or pure_context(n)
    L = ctx.L()
    zero = ctx.zero()
    out = []

    out.append(CatalogSymmetry("shift", n, ctx.const(1), (zero,) * n, NOETHER))

    for i in range(1, n + 1):
        mu = tuple(L if j == i else zero for j in range(1, n + 1))
        out.append(CatalogSymmetry(f"translation_{i}", n, ctx.u(i), mu, NOETHER))

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            section = ctx.x(j) * ctx.u(i) - ctx.x(i) * ctx.u(j)
            mu = tuple(
                ctx.x(j) * L if k == i else (-(ctx.x(i) * L) if k == j else zero)
                for k in range(1, n + 1))
            out.append(CatalogSymmetry(f"rotation_{i}{j}", n, section, mu, NOETHER))

    for i in range(1, n + 1):
        section = ctx.x(i) + ctx.u() * ctx.u(i)
        mu = tuple(ctx.u() * L if j == i else zero for j in range(1, n + 1))
        out.append(CatalogSymmetry(f"xrotation_{i}", n, section, mu, NOETHER))

    section = ctx.u()
    for j in range(1, n + 1):
        section = section - ctx.x(j) * ctx.u(j)
    mu = tuple(-(ctx.x(j) * L) for j in range(1, n + 1))
    out.append(CatalogSymmetry("dilatation", n, section, mu, VARIATIONAL,
                               scaling_remainder=n))
    return out


def dimension_report(n: int) -> dict:
    """Counting bookkeeping: the non-scaling symmetries match the dimension
    (n+1)(n+2)/2 of the isometry algebra of the ambient flat space."""
    killing = 1 + n + n * (n - 1) // 2 + n
    return {
        "n": n,
        "shift": 1,
        "translations": n,
        "rotations": n * (n - 1) // 2,
        "xrotations": n,
        "dilatation": 1,
        "killing_total": killing,
        "killing_expected": (n + 1) * (n + 2) // 2,
        "catalog_total": killing + 1,
    }


def verify_mu(sym: CatalogSymmetry) -> bool:
    """D_phi(L) - d_h(mu) == scaling_remainder * L, identically (off equation)."""
    ctx = sym.section.ctx
    lhs = evolutionary_apply(sym.section, ctx.L())
    rhs = divergence(sym.mu) + ctx.L().scale(sym.scaling_remainder)
    return (lhs - rhs).is_zero()


def build_current(sym: CatalogSymmetry, eq: EquationObject = None) -> ConservedCurrent:
    """Assemble the conserved current of a catalog symmetry.

    Noether route: flux_i = Q_{phi,i}(L) - mu_i, with divergence
    -phi*E_u(L).  The dilatation needs the potentials: flux_i =
    s^i + mu_i - Q_{phi,i}(L), using only D_i(s^i) = L; its divergence is
    +phi*E_u(L).  Both reduce to zero modulo the equation, which is
    checked on construction.
    """
    if sym.classification == NONE:
        raise NotConservative(f"{sym.id} admits no conservation law")
    ctx = sym.section.ctx
    eq = eq or EquationObject(sym.n, ctx=ctx)
    L = ctx.L()
    q_parts = [noether_Q_apply(sym.section, i, L) for i in range(1, sym.n + 1)]
    if sym.classification == NOETHER:
        components = tuple(q - m for q, m in zip(q_parts, sym.mu))
        is_local = True
    else:
        components = tuple(ctx.s(i) + m - q
                           for i, (q, m) in enumerate(zip(q_parts, sym.mu), start=1))
        is_local = False
    current = ConservedCurrent(sym.n, sym.id, components, is_local)
    if not reduce_mod_equation(current.divergence(), eq).is_zero():
        raise AssertionError(f"current for {sym.id} is not conserved")
    return current


def verify_current(current: ConservedCurrent, eq: EquationObject = None) -> dict:
    """Off-equation divergence, its exact characteristic (div = chi * F when
    the division is exact) and the reduced divergence, which must vanish."""
    div = current.divergence()
    ctx = div.ctx
    eq = eq or EquationObject(current.n, ctx=ctx)
    chi = characteristic_of(div, eq)
    reduced = reduce_mod_equation(div, eq)
    return {
        "divergence": div,
        "characteristic": chi,
        "reduced_divergence": reduced,
        "conserved": reduced.is_zero(),
    }


def catalog_symmetry_check(sym: CatalogSymmetry, eq: EquationObject = None) -> bool:
    """Linearization of the equation along the section, reduced: must vanish."""
    ctx = sym.section.ctx
    eq = eq or EquationObject(sym.n, ctx=ctx)
    lin = linearization_apply(eq, sym.section)
    return reduce_mod_equation(lin, eq).is_zero()


# ---------------------------------------------------------------------------
# invariant surfaces (contact-invariant minimal surfaces are planes)


@dataclass(frozen=True)
class _BivariatePoly:
    """Tiny exact polynomial in two indeterminates (p and the constraint
    slope w), used only for the discriminant certificate."""

    terms: tuple   # ((i, j), Fraction) with monomial p^i w^j

    @staticmethod
    def build(entries) -> "_BivariatePoly":
        acc = {}
        for (i, j), c in entries:
            acc[(i, j)] = acc.get((i, j), Fraction(0)) + Fraction(c)
        return _BivariatePoly(tuple(sorted((k, v) for k, v in acc.items() if v)))

    def __add__(self, other):
        return _BivariatePoly.build(list(self.terms) + list(other.terms))

    def __mul__(self, other):
        out = []
        for (i1, j1), c1 in self.terms:
            for (i2, j2), c2 in other.terms:
                out.append(((i1 + i2, j1 + j2), c1 * c2))
        return _BivariatePoly.build(out)

    def scale(self, s) -> "_BivariatePoly":
        return _BivariatePoly.build([(m, c * Fraction(s)) for m, c in self.terms])

    def is_zero(self) -> bool:
        return not self.terms


def discriminant_identity_holds() -> bool:
    """4 p^2 w^2 - 4(1+p^2)(1+w^2) == -4(1+p^2+w^2) as exact polynomials."""
    P = _BivariatePoly.build([((1, 0), 1)])
    W = _BivariatePoly.build([((0, 1), 1)])
    one = _BivariatePoly.build([((0, 0), 1)])
    lhs = (P * P * W * W).scale(4) + ((one + P * P) * (one + W * W)).scale(-4)
    rhs = (one + P * P + W * W).scale(-4)
    return (lhs + rhs.scale(-1)).is_zero()


def invariant_surface_check(phi_branch: ClosedForm) -> dict:
    """Certificate that a surface invariant under a contact section is a plane.

    For the constraint branch u_y = phi(u_x) the equation collapses to
    C(u_x) * u_xx = 0 with

        C = (1+p^2) phi'^2 - 2 p phi phi' + (1 + phi^2).

    As a quadratic in phi' the discriminant is -4(1+p^2+phi^2) < 0 with
    positive leading coefficient 1+p^2, so C > 0 and u_xx must vanish.
    """
    d = phi_branch.differentiate()
    from .exprcore import CF_P
    coefficient = (ONE_PLUS_P2 * d * d
                   - (CF_P * phi_branch * d).scale(2)
                   + CF_ONE + phi_branch * phi_branch)
    return {
        "coefficient": coefficient,
        "discriminant_identity": discriminant_identity_holds(),
        "leading_coefficient_positive": True,   # 1 + p^2 > 0 for real p
        "conclusion": "u_xx = 0: the invariant surface is a plane",
    }


# ---------------------------------------------------------------------------
# the exactness probe for contact symmetries


def noether_exactness_probe(phi: ContactPolynomial, ctx: JetContext = None) -> JetExpression:
    """E_u(D_phi(L)) on the full jet space; zero iff D_phi(L) is a total
    divergence there (the Euler operator annihilates exactly the
    divergences).  The outcome is recorded by the callers, not asserted."""
    ctx = ctx or contact_context()
    return jetcalc.euler_of_evolutionary_on_L(phi, ctx)


def first_order_flux_integrability(phi: ContactPolynomial, ctx: JetContext = None) -> dict:
    """Independent divergence test for D_phi(L), bypassing the Euler operator.

    D_phi(L) is linear in the second derivatives with coefficients that are
    functions of (p, q) alone.  It is the divergence of a first-order flux
    (a(p,q), b(p,q)) iff

        a_p = c_xx,  a_q + b_p = c_xy,  b_q = c_yy,

    which on a simply connected domain is solvable iff
    d_p d_q c_xy == d_q^2 c_xx + d_p^2 c_yy.  The function partials are
    extracted from total derivatives of jet-free expressions.
    """
    ctx = ctx or contact_context()
    dens = jetcalc.evolutionary_on_L(phi, ctx)
    coeffs = {}
    leftover = dens
    for sigma in ((1, 1), (1, 2), (2, 2)):
        c = _coefficient_of(dens, sigma)
        coeffs[sigma] = c
        leftover = leftover - c * ctx.u(*sigma)
    if not leftover.is_zero():
        raise ValueError("density is not linear in the second derivatives")
    cxx_q = _function_partial(coeffs[(1, 1)], 2)
    cxy_p = _function_partial(coeffs[(1, 2)], 1)
    cyy_p = _function_partial(coeffs[(2, 2)], 1)
    lhs = _function_partial(cxy_p, 2)
    rhs = _function_partial(cxx_q, 2) + _function_partial(cyy_p, 1)
    return {
        "integrable": (lhs - rhs).is_zero(),
        "coefficients": coeffs,
    }


def _coefficient_of(e: JetExpression, sigma) -> JetExpression:
    parts = e.num.split_powers(sym_u(sigma))
    if any(d > 1 for d in parts):
        raise ValueError("expression is not linear in the requested derivative")
    num = parts.get(1)
    if num is None:
        return e.ctx.zero()
    return JetExpression(e.ctx, num, e.la, e.cb)


def _function_partial(e: JetExpression, j: int) -> JetExpression:
    """d/dp (j=1) or d/dq (j=2) of a jet-free contact expression, read off
    the total derivative D_j(e) = e_p u_{1j} + e_q u_{2j}."""
    if any(sym[0] == "u" for sym in e.num.symbols()):
        raise ValueError("expected a jet-free expression")
    d = e.total_derivative(j)
    # D_1(e) = e_p u_11 + e_q u_12; D_2(e) = e_p u_12 + e_q u_22
    want = sym_u((1, 1)) if j == 1 else sym_u((2, 2))
    parts = d.num.split_powers(want)
    num = parts.get(1)
    if num is None:
        return e.ctx.zero()
    return JetExpression(e.ctx, num, d.la, d.cb)
