"""Exact arithmetic and calculus for univariate closed forms in p.

The working class is the differential ring of expressions

    sum over (c, d) of  R_{c,d}(p) * lm^c * lp^d

where lm = log(p - i), lp = log(p + i) are formal logarithms and each
R_{c,d} is a rational function of p, over the Gaussian rationals, whose
poles lie only at p = +i and p = -i.  Every rational part is kept in
canonical partial-fraction form (polynomial part plus principal parts at
the two poles), so equality and the zero test are syntactic.

Derivation rules: lm' = 1/(p-i), lp' = 1/(p+i).  Consequently

    arctan(p)    = (lm - lp) / (2i)
    log(1 + p^2) = lm + lp

as formal antiderivatives (integration constants fixed to zero).
Antidifferentiation stays inside the class except for the two
dilogarithmic base cases int lp/(p-i) and int lm/(p+i); those raise
ClosedFormEscape unless their contributions cancel exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb


class ClosedFormEscape(Exception):
    """An antiderivative left the closed-form class (dilogarithm)."""

    def __init__(self, monomial, message=None):
        self.monomial = monomial
        super().__init__(message or f"antiderivative escapes the class at {monomial}")


class NotReal(Exception):
    """realify() was applied to an expression that is not conjugation-symmetric."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class GaussianRational:
    """Exact complex number a + b*i with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(_as_fraction(x))

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero GaussianRational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE_G
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


ZERO_G = GaussianRational(0)
ONE_G = GaussianRational(1)
I_G = GaussianRational(0, 1)
TWO_I = GaussianRational(0, 2)


# ---------------------------------------------------------------------------
# dense polynomial helpers over GaussianRational (index = power of the variable)


def _poly_trim(c: list) -> tuple:
    n = len(c)
    while n and c[n - 1].is_zero():
        n -= 1
    return tuple(c[:n])


def _poly_add(a, b):
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        x = a[k] if k < len(a) else ZERO_G
        y = b[k] if k < len(b) else ZERO_G
        out.append(x + y)
    return _poly_trim(out)


def _poly_mul(a, b):
    if not a or not b:
        return ()
    out = [ZERO_G] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _poly_trim(out)


def _poly_scale(a, s: GaussianRational):
    return _poly_trim([x * s for x in a])


def _poly_pow(a, n: int):
    out = (ONE_G,)
    for _ in range(n):
        out = _poly_mul(out, a)
    return out


def _poly_divmod(num, den):
    """Long division by a monic-leading polynomial; exact arithmetic."""
    num = list(num)
    q = [ZERO_G] * max(0, len(num) - len(den) + 1)
    inv_lead = den[-1].inverse()
    for k in range(len(num) - len(den), -1, -1):
        coeff = num[k + len(den) - 1] * inv_lead
        if not coeff.is_zero():
            q[k] = coeff
            for j, d in enumerate(den):
                num[k + j] = num[k + j] - coeff * d
    return _poly_trim(q), _poly_trim(num)


def _poly_shift(a, alpha: GaussianRational):
    """Coefficients of a(t + alpha) as a polynomial in t."""
    n = len(a)
    out = [ZERO_G] * n
    pow_alpha = [ONE_G]
    for _ in range(1, n):
        pow_alpha.append(pow_alpha[-1] * alpha)
    for k, coeff in enumerate(a):
        if coeff.is_zero():
            continue
        for m in range(k + 1):
            out[m] = out[m] + coeff * comb(k, m) * pow_alpha[k - m]
    return _poly_trim(out)


def _geom_series(center_pow: int, alpha: GaussianRational, terms: int):
    """Taylor coefficients of (t + alpha)^(-center_pow) around t = 0."""
    # (t + alpha)^(-m) = alpha^(-m) * sum_r binom(m+r-1, r) (-t/alpha)^r
    inv_alpha = alpha.inverse()
    out = []
    cur = inv_alpha ** center_pow
    for r in range(terms):
        out.append(cur * comb(center_pow + r - 1, r))
        cur = cur * (-ONE_G) * inv_alpha
    return out


class RationalFunctionPM:
    """Rational function of p with poles only at +i and -i, in partial fractions.

    poly        -- tuple of GaussianRational, polynomial part (index = power)
    pole_plus   -- {j: coeff} for (p - i)^(-j), the principal part at +i
    pole_minus  -- {j: coeff} for (p + i)^(-j), the principal part at -i
    """

    __slots__ = ("poly", "pole_plus", "pole_minus")

    def __init__(self, poly=(), pole_plus=None, pole_minus=None):
        object.__setattr__(self, "poly", _poly_trim([GaussianRational.coerce(c) for c in poly]))
        pp = {j: GaussianRational.coerce(c) for j, c in (pole_plus or {}).items()
              if not GaussianRational.coerce(c).is_zero()}
        pm = {j: GaussianRational.coerce(c) for j, c in (pole_minus or {}).items()
              if not GaussianRational.coerce(c).is_zero()}
        if any(j < 1 for j in pp) or any(j < 1 for j in pm):
            raise ValueError("pole orders must be >= 1")
        object.__setattr__(self, "pole_plus", pp)
        object.__setattr__(self, "pole_minus", pm)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunctionPM is immutable")

    def is_zero(self) -> bool:
        return not self.poly and not self.pole_plus and not self.pole_minus

    def __eq__(self, other):
        if not isinstance(other, RationalFunctionPM):
            return NotImplemented
        return (self.poly == other.poly and self.pole_plus == other.pole_plus
                and self.pole_minus == other.pole_minus)

    def __hash__(self):
        return hash((self.poly, tuple(sorted(self.pole_plus.items())),
                     tuple(sorted(self.pole_minus.items()))))

    def __add__(self, other):
        pp = dict(self.pole_plus)
        for j, c in other.pole_plus.items():
            s = pp.get(j, ZERO_G) + c
            if s.is_zero():
                pp.pop(j, None)
            else:
                pp[j] = s
        pm = dict(self.pole_minus)
        for j, c in other.pole_minus.items():
            s = pm.get(j, ZERO_G) + c
            if s.is_zero():
                pm.pop(j, None)
            else:
                pm[j] = s
        return RationalFunctionPM(_poly_add(self.poly, other.poly), pp, pm)

    def __neg__(self):
        return self.scale(-ONE_G)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "RationalFunctionPM":
        s = GaussianRational.coerce(s)
        if s.is_zero():
            return RF_ZERO
        return RationalFunctionPM(
            _poly_scale(self.poly, s),
            {j: c * s for j, c in self.pole_plus.items()},
            {j: c * s for j, c in self.pole_minus.items()},
        )

    # -- numerator form and partial-fraction decomposition ------------------

    def _numerator_form(self):
        """Return (N, a, b) with self = N / ((p-i)^a (p+i)^b)."""
        a = max(self.pole_plus, default=0)
        b = max(self.pole_minus, default=0)
        den_p = _poly_pow((-I_G, ONE_G), a)       # (p - i)^a
        den_m = _poly_pow((I_G, ONE_G), b)        # (p + i)^b
        num = _poly_mul(_poly_mul(self.poly, den_p), den_m)
        for j, c in self.pole_plus.items():
            term = _poly_mul(_poly_pow((-I_G, ONE_G), a - j), den_m)
            num = _poly_add(num, _poly_scale(term, c))
        for j, c in self.pole_minus.items():
            term = _poly_mul(den_p, _poly_pow((I_G, ONE_G), b - j))
            num = _poly_add(num, _poly_scale(term, c))
        return num, a, b

    @staticmethod
    def _decompose(num, a: int, b: int) -> "RationalFunctionPM":
        """Partial fractions of num / ((p-i)^a (p+i)^b)."""
        if a == 0 and b == 0:
            return RationalFunctionPM(num)
        den = _poly_mul(_poly_pow((-I_G, ONE_G), a), _poly_pow((I_G, ONE_G), b))
        q, r = _poly_divmod(num, den)
        pp, pm = {}, {}
        if a:
            # Taylor expansion of r(p)/(p+i)^b around p = i, in t = p - i
            shifted = _poly_shift(r, I_G)
            series = _geom_series(b, TWO_I, a) if b else [ONE_G] + [ZERO_G] * (a - 1)
            for m in range(a):
                c = ZERO_G
                for k in range(m + 1):
                    if k < len(shifted):
                        c = c + shifted[k] * series[m - k]
                if not c.is_zero():
                    pp[a - m] = c
        if b:
            shifted = _poly_shift(r, -I_G)
            series = _geom_series(a, -TWO_I, b) if a else [ONE_G] + [ZERO_G] * (b - 1)
            for m in range(b):
                c = ZERO_G
                for k in range(m + 1):
                    if k < len(shifted):
                        c = c + shifted[k] * series[m - k]
                if not c.is_zero():
                    pm[b - m] = c
        return RationalFunctionPM(q, pp, pm)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return RF_ZERO
        if not self.pole_plus and not self.pole_minus and not other.pole_plus and not other.pole_minus:
            return RationalFunctionPM(_poly_mul(self.poly, other.poly))
        n1, a1, b1 = self._numerator_form()
        n2, a2, b2 = other._numerator_form()
        return RationalFunctionPM._decompose(_poly_mul(n1, n2), a1 + a2, b1 + b2)

    def differentiate(self) -> "RationalFunctionPM":
        poly = _poly_trim([self.poly[k] * k for k in range(1, len(self.poly))])
        pp = {j + 1: c * (-j) for j, c in self.pole_plus.items()}
        pm = {j + 1: c * (-j) for j, c in self.pole_minus.items()}
        return RationalFunctionPM(poly, pp, pm)

    def conjugate(self) -> "RationalFunctionPM":
        """Complex conjugation for real p: coefficients conjugate, poles swap."""
        return RationalFunctionPM(
            [c.conjugate() for c in self.poly],
            {j: c.conjugate() for j, c in self.pole_minus.items()},
            {j: c.conjugate() for j, c in self.pole_plus.items()},
        )

    def residues(self):
        """(simple-pole coeff at +i, at -i, remainder with no simple poles)."""
        rp = self.pole_plus.get(1, ZERO_G)
        rm = self.pole_minus.get(1, ZERO_G)
        pp = {j: c for j, c in self.pole_plus.items() if j != 1}
        pm = {j: c for j, c in self.pole_minus.items() if j != 1}
        return rp, rm, RationalFunctionPM(self.poly, pp, pm)

    def integrate_no_log(self) -> "RationalFunctionPM":
        """Antiderivative, valid only when both simple-pole residues vanish."""
        if 1 in self.pole_plus or 1 in self.pole_minus:
            raise ValueError("integrate_no_log requires vanishing residues")
        poly = [ZERO_G] + [c / Fraction(k + 1) for k, c in enumerate(self.poly)]
        pp = {j - 1: c / Fraction(1 - j) for j, c in self.pole_plus.items()}
        pm = {j - 1: c / Fraction(1 - j) for j, c in self.pole_minus.items()}
        return RationalFunctionPM(_poly_trim(poly), pp, pm)

    def __repr__(self):
        parts = []
        for k, c in enumerate(self.poly):
            if not c.is_zero():
                parts.append(f"({c})*p^{k}" if k else f"({c})")
        for j in sorted(self.pole_plus):
            parts.append(f"({self.pole_plus[j]})*(p-i)^-{j}")
        for j in sorted(self.pole_minus):
            parts.append(f"({self.pole_minus[j]})*(p+i)^-{j}")
        return " + ".join(parts) if parts else "0"


RF_ZERO = RationalFunctionPM()
RF_ONE = RationalFunctionPM((ONE_G,))


class ClosedForm:
    """Canonical element of the closed-form class: {(c, d): RationalFunctionPM}.

    Key (c, d) is the pair of exponents of lm = log(p-i) and lp = log(p+i);
    the zero expression is the empty map.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, rf in (terms or {}).items():
            c, d = key
            if c < 0 or d < 0:
                raise ValueError("log exponents must be non-negative")
            if not rf.is_zero():
                clean[(c, d)] = rf
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ClosedForm is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "ClosedForm":
        return CF_ZERO

    @staticmethod
    def from_scalar(s) -> "ClosedForm":
        s = GaussianRational.coerce(s)
        if s.is_zero():
            return CF_ZERO
        return ClosedForm({(0, 0): RationalFunctionPM((s,))})

    @staticmethod
    def from_poly(coeffs) -> "ClosedForm":
        return ClosedForm({(0, 0): RationalFunctionPM(coeffs)})

    @staticmethod
    def p_power(n: int) -> "ClosedForm":
        return ClosedForm.from_poly([ZERO_G] * n + [ONE_G])

    @staticmethod
    def pole(sign: int, order: int, coeff=1) -> "ClosedForm":
        """coeff * (p - sign*i)^(-order); sign=+1 gives the pole at +i."""
        if sign == 1:
            rf = RationalFunctionPM((), {order: coeff})
        elif sign == -1:
            rf = RationalFunctionPM((), None, {order: coeff})
        else:
            raise ValueError("sign must be +1 or -1")
        return ClosedForm({(0, 0): rf})

    @staticmethod
    def log_minus() -> "ClosedForm":
        """lm = log(p - i)."""
        return ClosedForm({(1, 0): RF_ONE})

    @staticmethod
    def log_plus() -> "ClosedForm":
        """lp = log(p + i)."""
        return ClosedForm({(0, 1): RF_ONE})

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = ClosedForm.from_scalar(other)
        out = dict(self.terms)
        for key, rf in other.terms.items():
            s = out.get(key, RF_ZERO) + rf
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return ClosedForm(out)

    __radd__ = __add__

    def __neg__(self):
        return ClosedForm({k: -rf for k, rf in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = ClosedForm.from_scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        out = {}
        for (c1, d1), r1 in self.terms.items():
            for (c2, d2), r2 in other.terms.items():
                key = (c1 + c2, d1 + d2)
                prod = r1 * r2
                if key in out:
                    s = out[key] + prod
                    if s.is_zero():
                        del out[key]
                    else:
                        out[key] = s
                elif not prod.is_zero():
                    out[key] = prod
        return ClosedForm(out)

    __rmul__ = __mul__

    def scale(self, s) -> "ClosedForm":
        s = GaussianRational.coerce(s)
        if s.is_zero():
            return CF_ZERO
        return ClosedForm({k: rf.scale(s) for k, rf in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not in the class")
        out = CF_ONE
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = ClosedForm.from_scalar(other)
        if not isinstance(other, ClosedForm):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted((k, hash(rf)) for k, rf in self.terms.items())))

    def lambda_degree(self) -> int:
        """Largest total power c + d of the formal logarithms."""
        return max((c + d for c, d in self.terms), default=0)

    def conjugate(self) -> "ClosedForm":
        """i -> -i together with lm <-> lp; an involution fixing real forms."""
        return ClosedForm({(d, c): rf.conjugate() for (c, d), rf in self.terms.items()})

    def is_conjugation_symmetric(self) -> bool:
        return self == self.conjugate()

    # -- calculus -------------------------------------------------------------

    def differentiate(self) -> "ClosedForm":
        out = CF_ZERO
        for (c, d), rf in self.terms.items():
            out = out + ClosedForm({(c, d): rf.differentiate()})
            if c:
                out = out + ClosedForm({(c - 1, d): rf.scale(c) * _RF_INV_PM})
            if d:
                out = out + ClosedForm({(c, d - 1): rf.scale(d) * _RF_INV_PP})
        return out

    def antiderivative(self) -> "ClosedForm":
        """Exact antiderivative within the class, integration constant zero.

        Integration by parts reduces the total log degree; the two
        dilogarithmic base cases are accumulated as formal atoms and must
        cancel, otherwise ClosedFormEscape is raised.
        """
        result = CF_ZERO
        escapes = {}   # (c, d) -> coefficient of the formal atom int lm^c lp^d/(p+i), c >= 1
        work = [(c, d, rf) for (c, d), rf in self.terms.items()]
        while work:
            c, d, rf = work.pop()
            rp, rm, core = rf.residues()
            if not core.is_zero():
                s0 = core.integrate_no_log()
                if c == 0 and d == 0:
                    result = result + ClosedForm({(0, 0): s0})
                else:
                    result = result + ClosedForm({(c, d): s0})
                    if c:
                        work.append((c - 1, d, (s0 * _RF_INV_PM).scale(-c)))
                    if d:
                        work.append((c, d - 1, (s0 * _RF_INV_PP).scale(-d)))
            if not rp.is_zero():
                # rp * int lm^c lp^d / (p-i)
                if d == 0:
                    result = result + ClosedForm(
                        {(c + 1, 0): RationalFunctionPM((rp / Fraction(c + 1),))})
                else:
                    # int lm^c lp^d/(p-i) = [lm^(c+1) lp^d - d*atom(c+1, d-1)]/(c+1)
                    result = result + ClosedForm(
                        {(c + 1, d): RationalFunctionPM((rp / Fraction(c + 1),))})
                    key = (c + 1, d - 1)
                    acc = escapes.get(key, ZERO_G) - rp * Fraction(d, c + 1)
                    escapes[key] = acc
            if not rm.is_zero():
                # rm * int lm^c lp^d / (p+i)
                if c == 0:
                    result = result + ClosedForm(
                        {(0, d + 1): RationalFunctionPM((rm / Fraction(d + 1),))})
                else:
                    escapes[(c, d)] = escapes.get((c, d), ZERO_G) + rm
        bad = {k: v for k, v in escapes.items() if not v.is_zero()}
        if bad:
            key = sorted(bad)[0]
            raise ClosedFormEscape(
                key, f"dilogarithmic atom int lm^{key[0]} lp^{key[1]}/(p+i) "
                     f"survives with coefficient {bad[key]}")
        return result

    # -- realification ---------------------------------------------------------

    def realify(self) -> "RealDisplayForm":
        """Rewrite a conjugation-symmetric form over A = arctan p, G = log(1+p^2).

        Substitutes lm = G/2 + i*A and lp = G/2 - i*A (the combination
        consistent with lm' = 1/(p-i), lp' = 1/(p+i)) and recombines each
        coefficient over a (1+p^2) power.  Raises NotReal when the input is
        not conjugation-symmetric.
        """
        if not self.is_conjugation_symmetric():
            raise NotReal("expression is not invariant under conjugation")
        half = GaussianRational(Fraction(1, 2))
        grouped = {}  # (a, b) -> RationalFunctionPM  with A^a G^b
        for (c, d), rf in self.terms.items():
            # (G/2 + iA)^c (G/2 - iA)^d
            for s in range(c + 1):
                for t in range(d + 1):
                    coeff = (comb(c, s) * comb(d, t)
                             * (half ** (c - s + d - t))
                             * (I_G ** s) * ((-I_G) ** t))
                    key = (s + t, c - s + d - t)
                    add = rf.scale(coeff)
                    cur = grouped.get(key, RF_ZERO) + add
                    if cur.is_zero():
                        grouped.pop(key, None)
                    else:
                        grouped[key] = cur
        out = []
        for (a, b) in sorted(grouped):
            rf = grouped[(a, b)]
            num, m = _rf_over_one_plus_p2(rf)
            real_num = []
            for g in num:
                if g.im != 0:
                    raise NotReal(f"imaginary residue {g.im} in A^{a} G^{b} coefficient")
                real_num.append(g.re)
            out.append((a, b, tuple(real_num), m))
        return RealDisplayForm(out)


def _rf_over_one_plus_p2(rf: RationalFunctionPM):
    """Write rf as num / (1+p^2)^m with polynomial num; m minimal for the poles."""
    num, a, b = rf._numerator_form()
    m = max(a, b)
    if m == 0:
        return num, 0
    num = _poly_mul(num, _poly_pow((-I_G, ONE_G), m - a))
    num = _poly_mul(num, _poly_pow((I_G, ONE_G), m - b))
    return num, m


class RealDisplayForm:
    """Sum of terms num(p)/(1+p^2)^m * A^a * G^b with real rational num.

    A stands for arctan p and G for log(1 + p^2).  Produced by
    ClosedForm.realify; purely presentational, but convertible back to a
    ClosedForm for exact round trips.
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        clean = []
        for a, b, num, m in terms:
            num = tuple(Fraction(x) for x in num)
            n = len(num)
            while n and num[n - 1] == 0:
                n -= 1
            num = num[:n]
            if num:
                clean.append((a, b, num, m))
        object.__setattr__(self, "terms", tuple(sorted(clean)))

    def __setattr__(self, name, value):
        raise AttributeError("RealDisplayForm is immutable")

    def __eq__(self, other):
        if not isinstance(other, RealDisplayForm):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def to_closedform(self) -> ClosedForm:
        out = CF_ZERO
        for a, b, num, m in self.terms:
            piece = ClosedForm.from_poly(num)
            piece = piece * (INV_ONE_PLUS_P2 ** m)
            piece = piece * (ARCTAN_P ** a)
            piece = piece * (LOG_ONE_PLUS_P2 ** b)
            out = out + piece
        return out

    def __repr__(self):
        from .display import real_text
        return real_text(self)


# frequently used atoms
CF_ZERO = ClosedForm()
CF_ONE = ClosedForm({(0, 0): RF_ONE})
CF_P = ClosedForm.p_power(1)
_RF_INV_PM = RationalFunctionPM((), {1: ONE_G})            # 1/(p-i)
_RF_INV_PP = RationalFunctionPM((), None, {1: ONE_G})      # 1/(p+i)
# arctan p = (lm - lp)/(2i)
ARCTAN_P = ClosedForm({(1, 0): RationalFunctionPM((ONE_G / TWO_I,)),
                       (0, 1): RationalFunctionPM((-(ONE_G / TWO_I),))})
# log(1+p^2) = lm + lp
LOG_ONE_PLUS_P2 = ClosedForm({(1, 0): RF_ONE, (0, 1): RF_ONE})
# 1/(1+p^2) = (i/2)/(p+i) - (i/2)/(p-i)
INV_ONE_PLUS_P2 = ClosedForm({(0, 0): RationalFunctionPM(
    (), {1: -(I_G * Fraction(1, 2))}, {1: I_G * Fraction(1, 2)})})
ONE_PLUS_P2 = ClosedForm.from_poly((ONE_G, ZERO_G, ONE_G))


# module-level operation aliases matching the documented API surface
def add(a: ClosedForm, b: ClosedForm) -> ClosedForm:
    return a + b


def mul(a: ClosedForm, b) -> ClosedForm:
    return a * b


def negate(a: ClosedForm) -> ClosedForm:
    return -a


def scalar_mul(a: ClosedForm, s) -> ClosedForm:
    return a.scale(s)


def differentiate(e: ClosedForm) -> ClosedForm:
    return e.differentiate()


def antiderivative(e: ClosedForm) -> ClosedForm:
    return e.antiderivative()


def realify(e: ClosedForm) -> RealDisplayForm:
    return e.realify()


def is_zero(e: ClosedForm) -> bool:
    return e.is_zero()
