"""Jet expressions and the differential operators of the verification layer.

A JetExpression is an exact fraction num / (L^la * C^cb) where num is a
polynomial (L-degree at most 1 after the rewrite L^2 -> 1 + sum u_j^2) and
C = 1 + sum_{j != n} u_j^2 is the coefficient of the solved derivative
u_{nn} in the equation.  Both exponents are kept minimal, which makes the
representation canonical and the zero test syntactic.

Two lanes share this machinery: the rational lane (coefficients are exact
rationals, sections are polynomial) and the contact lane (coefficients are
q-polynomials over closed forms in p, where the first-order coordinates
p = u_x, q = u_y live inside the coefficients and C-denominators fold into
them exactly).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

from .poly import (
    MONO_ONE,
    Poly,
    SYM_L,
    mono_exp,
    sym_s,
    sym_u,
    sym_x,
)
from .rings import CONTACT_RING, RATIONAL_RING


class NonlocalUnderivable(Exception):
    """D_j(s^i) with j != i was requested; only the diagonal rule exists."""


class OrderOverflow(Exception):
    """A total derivative would exceed the configured maximum jet order."""


class JetContext:
    """Dimension, coefficient ring and jet-order bound for one computation."""

    def __init__(self, n: int, ring, max_order: int = 4):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.ring = ring
        self.max_order = max_order
        self._solved_cache = {}
        self._k_poly = None
        self._c_poly = None
        self._f_poly = None

    # -- structural polynomials ----------------------------------------------

    def k_poly(self) -> Poly:
        """L^2 as a polynomial: 1 + sum_j u_j^2."""
        if self._k_poly is None:
            if self.ring.embedded_first_order:
                self._k_poly = Poly.const(self.ring, self.ring.k_coeff)
            else:
                out = Poly.from_int(self.ring, 1)
                for j in range(1, self.n + 1):
                    out = out + Poly.from_symbol(self.ring, sym_u((j,)), 2)
                self._k_poly = out
        return self._k_poly

    def c_poly(self) -> Poly:
        """Coefficient of u_{nn} in the equation: 1 + sum_{j != n} u_j^2."""
        if self._c_poly is None:
            if self.ring.embedded_first_order:
                self._c_poly = Poly.const(self.ring, self.ring.c_coeff)
            else:
                out = Poly.from_int(self.ring, 1)
                for j in range(1, self.n):
                    out = out + Poly.from_symbol(self.ring, sym_u((j,)), 2)
                self._c_poly = out
        return self._c_poly

    def f_poly(self) -> Poly:
        """The equation numerator: sum_i (1 + sum_{k != i} u_k^2) u_ii
        - 2 sum_{i<j} u_i u_j u_ij."""
        if self._f_poly is None:
            ring = self.ring
            out = Poly.zero(ring)
            for i in range(1, self.n + 1):
                coeff = Poly.from_int(ring, 1)
                for k in range(1, self.n + 1):
                    if k != i:
                        coeff = coeff + self._first_order_poly(k) * self._first_order_poly(k)
                out = out + coeff.mul_symbol(sym_u((i, i)))
            for i in range(1, self.n + 1):
                for j in range(i + 1, self.n + 1):
                    cross = (self._first_order_poly(i) * self._first_order_poly(j)
                             ).mul_symbol(sym_u((i, j))).scale_rational(Fraction(-2))
                    out = out + cross
            self._f_poly = out
        return self._f_poly

    def _first_order_poly(self, j: int) -> Poly:
        """u_{1_j} as a polynomial (a symbol, or an embedded coefficient)."""
        if self.ring.embedded_first_order:
            return Poly.const(self.ring, self.ring.embed_first(j))
        return Poly.from_symbol(self.ring, sym_u((j,)))

    def w_poly(self, i: int) -> Poly:
        """L * D_i(L) = sum_j u_j u_{j,i}."""
        out = Poly.zero(self.ring)
        for j in range(1, self.n + 1):
            out = out + self._first_order_poly(j).mul_symbol(sym_u(tuple(sorted((j, i)))))
        return out

    def v_poly(self, i: int) -> Poly:
        """D_i(C) = 2 sum_{j != n} u_j u_{j,i}."""
        out = Poly.zero(self.ring)
        for j in range(1, self.n):
            out = out + self._first_order_poly(j).mul_symbol(sym_u(tuple(sorted((j, i)))))
        return out.scale_rational(Fraction(2))

    # -- expression constructors ----------------------------------------------

    def zero(self) -> "JetExpression":
        return JetExpression(self, Poly.zero(self.ring))

    def const(self, q) -> "JetExpression":
        return JetExpression(self, Poly.const(self.ring, self.ring.from_fraction(Fraction(q))))

    def coeff(self, c) -> "JetExpression":
        return JetExpression(self, Poly.const(self.ring, c))

    def x(self, i: int) -> "JetExpression":
        return JetExpression(self, Poly.from_symbol(self.ring, sym_x(i)))

    def u(self, *sigma) -> "JetExpression":
        if len(sigma) > self.max_order:
            raise OrderOverflow(f"jet order {len(sigma)} exceeds {self.max_order}")
        return JetExpression(self, Poly.from_symbol(self.ring, sym_u(sigma)))

    def s(self, i: int) -> "JetExpression":
        return JetExpression(self, Poly.from_symbol(self.ring, sym_s(i)))

    def L(self) -> "JetExpression":
        return JetExpression(self, Poly.from_symbol(self.ring, SYM_L))

    def inv_L(self, power: int = 1) -> "JetExpression":
        return JetExpression(self, Poly.from_int(self.ring, 1), la=power)

    # -- lane-specific exact division ------------------------------------------

    def poly_divide_exact(self, num: Poly, which: str):
        """num / K or num / C when exact, else None; L-free num expected."""
        divisor = self.k_poly() if which == "K" else self.c_poly()
        if self.ring.embedded_first_order:
            coeff = divisor.terms.get(MONO_ONE)
            out = {}
            for mono, c in num.terms.items():
                q = self.ring.divide_exact(c, coeff)
                if q is None:
                    return None
                out[mono] = q
            return Poly(self.ring, out)
        return num.divide_exact(divisor)

    def solved_expression(self, sigma) -> "JetExpression":
        """u_sigma rewritten through the equation; sigma contains (n, n)."""
        sigma = tuple(sorted(sigma))
        cached = self._solved_cache.get(sigma)
        if cached is not None:
            return cached
        base = tuple([self.n, self.n])
        if sigma == base:
            r_poly = self.c_poly().mul_symbol(sym_u((self.n, self.n))) - self.f_poly()
            if self.ring.embedded_first_order:
                expr = JetExpression(self, r_poly.scale(self.ring.inv_c_coeff))
            else:
                expr = JetExpression(self, r_poly, cb=1)
        else:
            rest = list(sigma)
            rest.remove(self.n)
            rest.remove(self.n)
            i = rest.pop()
            parent = tuple(sorted(base + tuple(rest)))
            expr = self.solved_expression(parent).total_derivative(i)
        self._solved_cache[sigma] = expr
        return expr


def pure_context(n: int, max_order: int = 4) -> JetContext:
    return JetContext(n, RATIONAL_RING, max_order)


def contact_context(max_order: int = 4) -> JetContext:
    return JetContext(2, CONTACT_RING, max_order)


class JetExpression:
    """Canonical exact fraction num / (L^la * C^cb) over a jet context."""

    __slots__ = ("ctx", "num", "la", "cb")

    def __init__(self, ctx: JetContext, num: Poly, la: int = 0, cb: int = 0):
        num = num.reduce_L(ctx.k_poly())
        # fold C-denominators into contact coefficients immediately
        if cb and ctx.ring.embedded_first_order:
            for _ in range(cb):
                num = num.scale(ctx.ring.inv_c_coeff)
            cb = 0
        # minimal la: num divisible by L iff its L-free part is divisible by K
        while la >= 1:
            a_part, b_part = num.split_L()
            q = ctx.poly_divide_exact(a_part, "K")
            if q is None:
                break
            num = b_part + q.mul_symbol(SYM_L)
            la -= 1
        # minimal cb (rational lane only)
        while cb >= 1:
            a_part, b_part = num.split_L()
            qa = ctx.poly_divide_exact(a_part, "C")
            if qa is None:
                break
            qb = ctx.poly_divide_exact(b_part, "C")
            if qb is None:
                break
            num = qa + qb.mul_symbol(SYM_L)
            cb -= 1
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "la", la)
        object.__setattr__(self, "cb", cb)

    def __setattr__(self, name, value):
        raise AttributeError("JetExpression is immutable")

    # -- arithmetic -------------------------------------------------------------

    def _check_ctx(self, other: "JetExpression"):
        if self.ctx is not other.ctx:
            raise ValueError("mixing expressions from different jet contexts")

    def _lift_num(self, la: int, cb: int) -> Poly:
        """Numerator after raising the denominator to L^la * C^cb."""
        num = self.num
        dla = la - self.la
        for _ in range(dla // 2):
            num = num * self.ctx.k_poly()
        if dla % 2:
            num = num.mul_symbol(SYM_L).reduce_L(self.ctx.k_poly())
        for _ in range(cb - self.cb):
            num = num * self.ctx.c_poly()
        return num

    def __add__(self, other: "JetExpression") -> "JetExpression":
        self._check_ctx(other)
        la = max(self.la, other.la)
        cb = max(self.cb, other.cb)
        return JetExpression(self.ctx, self._lift_num(la, cb) + other._lift_num(la, cb), la, cb)

    def __neg__(self) -> "JetExpression":
        return JetExpression(self.ctx, -self.num, self.la, self.cb)

    def __sub__(self, other: "JetExpression") -> "JetExpression":
        return self + (-other)

    def __mul__(self, other: "JetExpression") -> "JetExpression":
        self._check_ctx(other)
        return JetExpression(self.ctx, self.num * other.num,
                             self.la + other.la, self.cb + other.cb)

    def scale(self, q: Fraction) -> "JetExpression":
        return JetExpression(self.ctx, self.num.scale_rational(Fraction(q)), self.la, self.cb)

    def div_L(self, power: int = 1) -> "JetExpression":
        return JetExpression(self.ctx, self.num, self.la + power, self.cb)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, JetExpression):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("JetExpression is not hashable")

    def __repr__(self):
        den = []
        if self.la:
            den.append(f"L^{self.la}")
        if self.cb:
            den.append(f"C^{self.cb}")
        if den:
            return f"({self.num}) / ({'*'.join(den)})"
        return repr(self.num)

    # -- differential structure ---------------------------------------------------

    def jet_order(self) -> int:
        return max((len(sym[1]) for sym in self.num.symbols() if sym[0] == "u"),
                   default=0)

    def is_local(self) -> bool:
        return not any(sym[0] == "s" for sym in self.num.symbols())

    def total_derivative(self, i: int) -> "JetExpression":
        """D_i with the chain rules for u_sigma, x^j, L, s^j and coefficients."""
        ctx = self.ctx
        if not 1 <= i <= ctx.n:
            raise ValueError(f"direction {i} out of range for n={ctx.n}")
        ring = ctx.ring
        plain = Poly.zero(ring)     # ordinary terms of D_i(num)
        l_chain = Poly.zero(ring)   # terms to be multiplied by W_i / L
        for mono, coeff in self.num.terms.items():
            if ring.embedded_first_order:
                for j in (1, 2):
                    pc = ring.partial_first(coeff, j)
                    if not ring.is_zero(pc):
                        second = sym_u(tuple(sorted((j, i))))
                        plain = plain + Poly(ring, {mono: pc}).mul_symbol(second)
            for sym, e in mono:
                rest = tuple((s, x) for s, x in mono if s != sym)
                if e > 1:
                    rest = rest + ((sym, e - 1),)
                    rest = tuple(sorted(rest))
                factor = Poly(ring, {rest: ring.scale(coeff, Fraction(e))})
                kind = sym[0]
                if kind == "L":
                    l_chain = l_chain + factor
                elif kind == "x":
                    if sym[1] == i:
                        plain = plain + factor
                elif kind == "s":
                    if sym[1] != i:
                        raise NonlocalUnderivable(
                            f"D_{i}(s^{sym[1]}) is undefined; only D_i(s^i) = L exists")
                    plain = plain + factor.mul_symbol(SYM_L)
                else:
                    sigma = sym[1]
                    if len(sigma) + 1 > ctx.max_order:
                        raise OrderOverflow(
                            f"D_{i} of u_{sigma} exceeds max order {ctx.max_order}")
                    plain = plain + factor.mul_symbol(sym_u(sigma + (i,)))
        w = ctx.w_poly(i)
        out = JetExpression(ctx, plain, self.la, self.cb)
        if not l_chain.is_zero():
            out = out + JetExpression(ctx, l_chain * w, self.la + 1, self.cb)
        if self.la:
            out = out + JetExpression(ctx, self.num * w,
                                      self.la + 2, self.cb).scale(-self.la)
        if self.cb:
            out = out + JetExpression(ctx, self.num * ctx.v_poly(i),
                                      self.la, self.cb + 1).scale(-self.cb)
        return out

    def total_derivative_multi(self, sigma) -> "JetExpression":
        out = self
        for i in sorted(sigma):
            out = out.total_derivative(i)
        return out

    def partial_u(self, sigma) -> "JetExpression":
        """Jet-space partial derivative d/du_sigma, with the L, C and
        coefficient chain rules for first-order sigma."""
        ctx = self.ctx
        sigma = tuple(sorted(sigma))
        out = JetExpression(ctx, self.num.partial(sym_u(sigma)), self.la, self.cb)
        if len(sigma) == 1:
            j = sigma[0]
            ring = ctx.ring
            if ring.embedded_first_order:
                acc = {}
                for mono, coeff in self.num.terms.items():
                    pc = ring.partial_first(coeff, j)
                    if not ring.is_zero(pc):
                        acc[mono] = pc
                out = out + JetExpression(ctx, Poly(ring, acc), self.la, self.cb)
            uj = ctx._first_order_poly(j)
            _, b_part = self.num.split_L()
            if not b_part.is_zero():
                out = out + JetExpression(ctx, b_part * uj, self.la + 1, self.cb)
            if self.la:
                out = out + JetExpression(ctx, self.num * uj,
                                          self.la + 2, self.cb).scale(-self.la)
            if self.cb and j != ctx.n:
                out = out + JetExpression(ctx, self.num * uj,
                                          self.la, self.cb + 1).scale(-2 * self.cb)
        return out

    # -- evaluation ------------------------------------------------------------

    def eval(self, point) -> complex:
        """point maps symbols to numbers and must include ('L',)."""
        ctx = self.ctx
        num = self.num.eval(point, lambda c: ctx.ring.eval(c, point))
        l_val = point(SYM_L)
        c_val = 1.0
        for j in range(1, ctx.n):
            c_val += point(sym_u((j,))) ** 2
        return num / (l_val ** self.la * c_val ** self.cb)


# ---------------------------------------------------------------------------
# derivative multi-index bookkeeping


def multi_indices(n: int, max_order: int):
    """All sorted multi-indices over 1..n with 0 <= |sigma| <= max_order."""
    out = [()]
    for order in range(1, max_order + 1):
        out.extend(combinations_with_replacement(range(1, n + 1), order))
    return out


def _dependence_candidates(e: JetExpression):
    """Multi-indices sigma with possibly nonzero d(e)/du_sigma."""
    ctx = e.ctx
    out = {(), *((j,) for j in range(1, ctx.n + 1))}
    for sym in e.num.symbols():
        if sym[0] == "u":
            out.add(sym[1])
    return sorted(out, key=lambda s: (len(s), s))


def _sub_multisets(tau):
    """All distinct sub-multisets rho of tau, as sorted tuples."""
    if not tau:
        return [()]
    counts = {}
    for t in tau:
        counts[t] = counts.get(t, 0) + 1
    items = sorted(counts)
    subs = [()]
    for t in items:
        new = []
        for base in subs:
            for e in range(counts[t] + 1):
                new.append(base + (t,) * e)
        subs = new
    return subs


def _multiset_diff(tau, rho):
    out = list(tau)
    for r in rho:
        out.remove(r)
    return tuple(out)


def _orderings(tau) -> int:
    """Number of ordered sequences realizing the multiset tau."""
    from math import factorial
    counts = {}
    for t in tau:
        counts[t] = counts.get(t, 0) + 1
    n = factorial(len(tau))
    for c in counts.values():
        n //= factorial(c)
    return n


# ---------------------------------------------------------------------------
# the variational operators


def evolutionary_apply(phi: JetExpression, e: JetExpression) -> JetExpression:
    """Evolutionary derivation with generating section phi:
    sum_sigma D_sigma(phi) * d(e)/du_sigma."""
    phi._check_ctx(e)
    out = e.ctx.zero()
    for sigma in _dependence_candidates(e):
        pe = e.partial_u(sigma)
        if pe.is_zero():
            continue
        out = out + phi.total_derivative_multi(sigma) * pe
    return out


def euler_operator(e: JetExpression) -> JetExpression:
    """Variational derivative sum_sigma (-D)_sigma d/du_sigma applied to e."""
    if not e.is_local():
        raise ValueError("the Euler operator needs a local density (no s^i)")
    out = e.ctx.zero()
    for sigma in _dependence_candidates(e):
        pe = e.partial_u(sigma)
        if pe.is_zero():
            continue
        term = pe.total_derivative_multi(sigma)
        if len(sigma) % 2:
            term = -term
        out = out + term
    return out


def noether_Q_apply(phi: JetExpression, i: int, density: JetExpression) -> JetExpression:
    """The boundary operator of the coordinate Noether identity:

        Q_{phi,i} = sum_tau sum_{rho+eta=tau} (-1)^|eta| D_rho(phi) . D_eta . d/du_{tau+1_i}

    The double sum is literal over ordered multi-indices; jet coordinates
    here are multisets (u_xy stored once), so each (rho, eta) split carries
    the ordering-count weight |rho-orderings| * |eta-orderings| /
    |(tau+1_i)-orderings|, which makes the identity

        D_phi = phi * E_u + sum_i D_i . Q_{phi,i}

    hold exactly; it collapses to 1 whenever only one direction repeats.
    """
    phi._check_ctx(density)
    ctx = density.ctx
    out = ctx.zero()
    for sigma in _dependence_candidates(density):
        if i not in sigma:
            continue
        tau = list(sigma)
        tau.remove(i)
        tau = tuple(tau)
        base = density.partial_u(sigma)
        if base.is_zero():
            continue
        denom = _orderings(sigma)
        for rho in _sub_multisets(tau):
            eta = _multiset_diff(tau, rho)
            weight = Fraction(_orderings(rho) * _orderings(eta), denom)
            term = phi.total_derivative_multi(rho) * base.total_derivative_multi(eta)
            if len(eta) % 2:
                term = -term
            out = out + term.scale(weight)
    return out


def noether_identity_terms(phi: JetExpression, density: JetExpression):
    """The three pieces of the identity D_phi(e) = phi*E_u(e) + sum_i D_i Q_i.

    Returns (evolutionary, phi*euler, [D_i(Q_i) per i]); their alternating
    sum is the identity residual and must vanish.
    """
    ev = evolutionary_apply(phi, density)
    eu = phi * euler_operator(density)
    divs = [noether_Q_apply(phi, i, density).total_derivative(i)
            for i in range(1, density.ctx.n + 1)]
    return ev, eu, divs


def noether_identity_residual(phi: JetExpression, density: JetExpression) -> JetExpression:
    ev, eu, divs = noether_identity_terms(phi, density)
    out = ev - eu
    for d in divs:
        out = out - d
    return out


def divergence(components) -> JetExpression:
    """sum_i D_i(component_i) for an n-tuple of jet expressions."""
    components = list(components)
    ctx = components[0].ctx
    if len(components) != ctx.n:
        raise ValueError("a current needs one component per direction")
    out = ctx.zero()
    for i, comp in enumerate(components, start=1):
        out = out + comp.total_derivative(i)
    return out


# ---------------------------------------------------------------------------
# the equation object and reduction


class EquationObject:
    """The minimal-surface equation for a concrete dimension n.

    F is the polynomial numerator of E_u(L) * (-L^3); the equation is
    solved for u_{nn}, whose coefficient 1 + sum_{j != n} u_j^2 never
    vanishes, so the reduction below is total.
    """

    def __init__(self, n: int, max_order: int = 4, ctx: JetContext = None):
        self.n = n
        self.ctx = ctx or pure_context(n, max_order)
        if self.ctx.n != n:
            raise ValueError("context dimension mismatch")
        self.F = JetExpression(self.ctx, self.ctx.f_poly())
        self.solved_for = sym_u((n, n))

    def solved_coefficient(self) -> JetExpression:
        return JetExpression(self.ctx, self.ctx.c_poly())


def _principal_symbols(e: JetExpression):
    n = e.ctx.n
    out = []
    for sym in e.num.symbols():
        if sym[0] == "u" and sym[1].count(n) >= 2:
            out.append(sym[1])
    return out


def reduce_mod_equation(e: JetExpression, eq: EquationObject = None) -> JetExpression:
    """Canonical representative of e modulo the equation's differential ideal.

    Substitutes the solved form of u_{nn} and every prolongation of it, to
    a fixpoint.  Each substitution step eliminates the principal derivative
    with the most n's and introduces only derivatives with strictly fewer,
    so the rewriting terminates.
    """
    ctx = e.ctx
    if eq is not None and eq.ctx is not ctx:
        raise ValueError("equation and expression use different contexts")
    while True:
        principal = _principal_symbols(e)
        if not principal:
            return e
        sigma = max(principal, key=lambda s: (s.count(ctx.n), len(s)))
        replacement = ctx.solved_expression(sigma)
        target = sym_u(sigma)
        parts = e.num.split_powers(target)
        out = ctx.zero()
        power = ctx.const(1)
        max_e = max(parts)
        pieces = {0: ctx.const(1)}
        for d in range(1, max_e + 1):
            power = power * replacement
            pieces[d] = power
        for d, poly_part in parts.items():
            out = out + JetExpression(ctx, poly_part, e.la, e.cb) * pieces[d]
        e = out


def characteristic_of(div: JetExpression, eq: EquationObject):
    """chi with div = chi * F when the division is exact, else None."""
    a_part, b_part = div.num.split_L()
    f = eq.ctx.f_poly()
    qa = a_part.divide_exact(f)
    if qa is None:
        return None
    qb = b_part.divide_exact(f)
    if qb is None:
        return None
    return JetExpression(eq.ctx, qa + qb.mul_symbol(SYM_L), div.la, div.cb)


def linearization_apply(eq: EquationObject, phi: JetExpression) -> JetExpression:
    """The linearization of the equation along phi:
    sum_sigma dF/du_sigma * D_sigma(phi)."""
    phi._check_ctx(eq.F)
    out = eq.ctx.zero()
    for sigma in _dependence_candidates(eq.F):
        pf = eq.F.partial_u(sigma)
        if pf.is_zero():
            continue
        out = out + pf * phi.total_derivative_multi(sigma)
    return out
