"""Sparse multivariate polynomials over a pluggable exact coefficient ring.

Symbols are hashable tuples:

    ('x', i)      independent variable x^i            (i = 1..n)
    ('u', sigma)  jet coordinate u_sigma, sigma a sorted tuple of directions;
                  sigma = () is u itself
    ('s', i)      nonlocal potential with D_i s^i = L
    ('L',)        the radical, L^2 = 1 + sum u_j^2

A monomial is a sorted tuple of (symbol, exponent) pairs; a polynomial maps
monomials to nonzero ring coefficients.  The ring is duck-typed (see
rings.py): exact rationals for the plain jet calculus, q-polynomials over
closed forms for contact sections.
"""

from __future__ import annotations

from fractions import Fraction


def sym_x(i: int):
    return ("x", i)


def sym_u(sigma=()):
    return ("u", tuple(sorted(sigma)))


def sym_s(i: int):
    return ("s", i)


SYM_L = ("L",)

MONO_ONE = ()


def mono_from(symbol, exp: int = 1):
    return ((symbol, exp),) if exp else MONO_ONE


def mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    out = dict(m1)
    for sym, e in m2:
        out[sym] = out.get(sym, 0) + e
    return tuple(sorted((s, e) for s, e in out.items() if e))


def mono_degree(m) -> int:
    return sum(e for _, e in m)


def mono_exp(m, symbol) -> int:
    for sym, e in m:
        if sym == symbol:
            return e
    return 0


def mono_divides(m1, m2) -> bool:
    """True when m1 divides m2."""
    d2 = dict(m2)
    return all(d2.get(sym, 0) >= e for sym, e in m1)


def mono_quotient(m2, m1):
    d2 = dict(m2)
    for sym, e in m1:
        d2[sym] -= e
    return tuple(sorted((s, e) for s, e in d2.items() if e))


def _mono_order_key(m):
    """Graded order key; ties broken by the merged exponent sequence."""
    return (mono_degree(m), tuple(sorted(dict(m).items())))


class Poly:
    """Polynomial with exact, duck-typed coefficients; zero terms stripped."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            if not ring.is_zero(coeff):
                clean[mono] = coeff
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(ring) -> "Poly":
        return Poly(ring)

    @staticmethod
    def const(ring, coeff) -> "Poly":
        return Poly(ring, {MONO_ONE: coeff})

    @staticmethod
    def from_int(ring, value: int) -> "Poly":
        return Poly.const(ring, ring.from_fraction(Fraction(value)))

    @staticmethod
    def from_symbol(ring, symbol, exp: int = 1) -> "Poly":
        return Poly(ring, {mono_from(symbol, exp): ring.one})

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        ring = self.ring
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            if mono in out:
                s = ring.add(out[mono], coeff)
                if ring.is_zero(s):
                    del out[mono]
                else:
                    out[mono] = s
            else:
                out[mono] = coeff
        return Poly(ring, out)

    def __neg__(self) -> "Poly":
        ring = self.ring
        return Poly(ring, {m: ring.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        ring = self.ring
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                prod = ring.mul(c1, c2)
                if m in out:
                    out[m] = ring.add(out[m], prod)
                else:
                    out[m] = prod
        return Poly(ring, out)

    def scale(self, coeff) -> "Poly":
        ring = self.ring
        return Poly(ring, {m: ring.mul(c, coeff) for m, c in self.terms.items()})

    def scale_rational(self, q: Fraction) -> "Poly":
        return self.scale(self.ring.from_fraction(Fraction(q)))

    def mul_symbol(self, symbol, exp: int = 1) -> "Poly":
        shift = mono_from(symbol, exp)
        return Poly(self.ring, {mono_mul(m, shift): c for m, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("Poly is not hashable")

    # -- structure ------------------------------------------------------------

    def symbols(self):
        out = set()
        for mono in self.terms:
            for sym, _ in mono:
                out.add(sym)
        return out

    def max_exp(self, symbol) -> int:
        return max((mono_exp(m, symbol) for m in self.terms), default=0)

    def split_powers(self, symbol):
        """{exponent: polynomial free of symbol} with self = sum P_e * symbol^e."""
        out = {}
        for mono, coeff in self.terms.items():
            e = mono_exp(mono, symbol)
            rest = tuple((s, x) for s, x in mono if s != symbol)
            bucket = out.setdefault(e, {})
            bucket[rest] = coeff
        return {e: Poly(self.ring, terms) for e, terms in out.items()}

    def split_L(self):
        """(A, B) with self = A + B*L; requires L-degree <= 1."""
        parts = self.split_powers(SYM_L)
        if any(e > 1 for e in parts):
            raise ValueError("L-degree exceeds 1; reduce first")
        return parts.get(0, Poly.zero(self.ring)), parts.get(1, Poly.zero(self.ring))

    def reduce_L(self, k_poly: "Poly") -> "Poly":
        """Rewrite L^2 -> k_poly until the L-degree is at most 1."""
        if self.max_exp(SYM_L) <= 1:
            return self
        out = Poly.zero(self.ring)
        for e, part in self.split_powers(SYM_L).items():
            piece = part
            for _ in range(e // 2):
                piece = piece * k_poly
            if e % 2:
                piece = piece.mul_symbol(SYM_L)
            out = out + piece
        return out

    def partial(self, symbol) -> "Poly":
        """Formal partial derivative treating every symbol as independent."""
        ring = self.ring
        out = {}
        for mono, coeff in self.terms.items():
            e = mono_exp(mono, symbol)
            if not e:
                continue
            rest = mono_mul(tuple((s, x) for s, x in mono if s != symbol),
                            mono_from(symbol, e - 1))
            c = ring.scale(coeff, Fraction(e))
            if rest in out:
                out[rest] = ring.add(out[rest], c)
            else:
                out[rest] = c
        return Poly(ring, out)

    def leading(self):
        mono = max(self.terms, key=_mono_order_key)
        return mono, self.terms[mono]

    def divmod_single(self, divisor: "Poly"):
        """Long division by one divisor; (quotient, remainder), both exact.

        Requires the divisor's leading coefficient to be invertible in the
        ring (here it is always a rational).  For a single divisor the
        remainder is zero iff the divisor divides self.
        """
        ring = self.ring
        lt_mono, lt_coeff = divisor.leading()
        inv_lt = ring.invert(lt_coeff)
        quotient = Poly.zero(ring)
        rem = self
        while not rem.is_zero():
            cand = [m for m in rem.terms if mono_divides(lt_mono, m)]
            if not cand:
                break
            m = max(cand, key=_mono_order_key)
            c = ring.mul(rem.terms[m], inv_lt)
            step = Poly(ring, {mono_quotient(m, lt_mono): c})
            quotient = quotient + step
            rem = rem - step * divisor
        return quotient, rem

    def divide_exact(self, divisor: "Poly"):
        q, r = self.divmod_single(divisor)
        return q if r.is_zero() else None

    def eval(self, symbol_values, coeff_eval):
        """Numeric value; symbol_values maps symbol -> complex/float."""
        total = 0j
        for mono, coeff in self.terms.items():
            v = coeff_eval(coeff)
            for sym, e in mono:
                v *= symbol_values(sym) ** e
            total += v
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono in sorted(self.terms, key=_mono_order_key, reverse=True):
            factors = []
            for sym, e in mono:
                name = _sym_name(sym)
                factors.append(f"{name}^{e}" if e > 1 else name)
            mono_txt = "*".join(factors) if factors else "1"
            bits.append(f"({self.terms[mono]})*{mono_txt}")
        return " + ".join(bits)


def _sym_name(sym) -> str:
    kind = sym[0]
    if kind == "L":
        return "L"
    if kind == "x":
        return f"x{sym[1]}"
    if kind == "s":
        return f"s{sym[1]}"
    sigma = sym[1]
    if not sigma:
        return "u"
    return "u_" + "".join(str(j) for j in sigma)
