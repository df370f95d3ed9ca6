"""Independent floating-point oracle for the symbolic layers.

Evaluates closed forms, contact sections and jet expressions at random
sample points and confirms every symbolic zero numerically.  Claims are
supplied as lists of terms whose sum is the asserted zero, so the
cancellation happens in floating point rather than in the canonical forms
being checked.

Branch policy: the formal logarithms evaluate as

    lm = log(p - i) + i*pi/2 = (1/2) log(1+p^2) + i*arctan(p)
    lp = conj(lm)

i.e. principal real logarithm and arctangent; this is the choice of
integration constants consistent with realify, and every tested quantity
is either a derivative-level identity or conjugation-symmetric, so the
constants never matter.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass

from .exprcore import ClosedForm, GaussianRational, RationalFunctionPM, RealDisplayForm
from .hierarchy import PQ, ContactPolynomial
from .jetcalc import JetExpression
from .jetcalc.poly import SYM_L, sym_u

DEFAULT_SEED = 20040830
FIRST_ORDER_RANGE = 5.0
HIGHER_ORDER_RANGE = 2.0


def eval_gaussian(g: GaussianRational) -> complex:
    return complex(g.re, g.im)


def eval_rf(rf: RationalFunctionPM, p: float) -> complex:
    z = complex(p)
    total = 0j
    for k, c in enumerate(rf.poly):
        total += eval_gaussian(c) * z ** k
    for j, c in rf.pole_plus.items():
        total += eval_gaussian(c) * (z - 1j) ** (-j)
    for j, c in rf.pole_minus.items():
        total += eval_gaussian(c) * (z + 1j) ** (-j)
    return total


def eval_closedform(e: ClosedForm, p: float) -> complex:
    lm = 0.5 * math.log(1.0 + p * p) + 1j * math.atan(p)
    lp = lm.conjugate()
    total = 0j
    for (c, d), rf in e.terms.items():
        total += eval_rf(rf, p) * lm ** c * lp ** d
    return total


def eval_real_display(r: RealDisplayForm, p: float) -> float:
    a_val = math.atan(p)
    g_val = math.log(1.0 + p * p)
    total = 0.0
    for a, b, num, m in r.terms:
        num_val = 0.0
        for k, c in enumerate(num):
            num_val += float(c) * p ** k
        total += num_val / (1.0 + p * p) ** m * a_val ** a * g_val ** b
    return total


def eval_pq(pq, p: float, q: float) -> complex:
    coeffs = pq.coeffs if isinstance(pq, PQ) else pq.pq.coeffs
    total = 0j
    for k, cf in coeffs.items():
        total += eval_closedform(cf, p) * q ** k
    return total


@dataclass
class SamplePoint:
    """One assignment of real values to the jet coordinates of order <= order.

    L is derived as +sqrt(1 + sum u_j^2) > 0.  With on_equation=True the
    derivative u_{n..n} (order 2) is recomputed from the solved form, so
    the equation numerator vanishes to machine precision.
    """

    n: int
    order: int
    values: dict
    on_equation: bool = False

    @staticmethod
    def random(rng: random.Random, n: int, order: int = 4,
               on_equation: bool = False) -> "SamplePoint":
        values = {}
        values[("u", ())] = rng.uniform(-HIGHER_ORDER_RANGE, HIGHER_ORDER_RANGE)
        for i in range(1, n + 1):
            values[("x", i)] = rng.uniform(-HIGHER_ORDER_RANGE, HIGHER_ORDER_RANGE)
            values[("s", i)] = rng.uniform(-HIGHER_ORDER_RANGE, HIGHER_ORDER_RANGE)
            values[("u", (i,))] = rng.uniform(-FIRST_ORDER_RANGE, FIRST_ORDER_RANGE)
        from .jetcalc import multi_indices
        for sigma in multi_indices(n, order):
            if len(sigma) >= 2:
                values[("u", tuple(sigma))] = rng.uniform(
                    -HIGHER_ORDER_RANGE, HIGHER_ORDER_RANGE)
        point = SamplePoint(n, order, values, on_equation)
        if on_equation:
            point._solve_top()
        return point

    def _solve_top(self):
        """u_{nn} := value solving the equation numerator F = 0."""
        n = self.n
        u = lambda *s: self.values[("u", tuple(sorted(s)))]
        c_val = 1.0 + sum(u(j) ** 2 for j in range(1, n))
        f_rest = 0.0
        for i in range(1, n + 1):
            if i == n:
                continue
            coeff = 1.0 + sum(u(k) ** 2 for k in range(1, n + 1) if k != i)
            f_rest += coeff * u(i, i)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                f_rest -= 2.0 * u(i) * u(j) * u(i, j)
        self.values[("u", (n, n))] = -f_rest / c_val

    def lookup(self, sym):
        if sym == SYM_L:
            return self.L()
        return self.values[sym]

    def L(self) -> float:
        total = 1.0
        for i in range(1, self.n + 1):
            total += self.values[("u", (i,))] ** 2
        return math.sqrt(total)

    def equation_residual(self) -> float:
        n = self.n
        u = lambda *s: self.values[("u", tuple(sorted(s)))]
        f = 0.0
        for i in range(1, n + 1):
            coeff = 1.0 + sum(u(k) ** 2 for k in range(1, n + 1) if k != i)
            f += coeff * u(i, i)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                f -= 2.0 * u(i) * u(j) * u(i, j)
        return f


# ---------------------------------------------------------------------------
# claims: lists of terms whose float sum must vanish


@dataclass
class Claim:
    """A numeric shadow of a symbolic zero.

    terms     -- list of expressions whose values are summed per point
    kind      -- 'pq' (terms are PQ/ContactPolynomial, sampled at (p, q))
                 or 'jet' (terms are JetExpression, sampled at a SamplePoint)
    n         -- dimension for jet claims
    mod_equation -- sample on-equation points (jet claims only)
    name      -- label for the report
    """

    name: str
    kind: str
    terms: list
    n: int = 2
    mod_equation: bool = False


def _eval_claim_at(claim: Claim, rng: random.Random):
    if claim.kind == "pq":
        p = rng.uniform(-FIRST_ORDER_RANGE, FIRST_ORDER_RANGE)
        q = rng.uniform(-FIRST_ORDER_RANGE, FIRST_ORDER_RANGE)
        vals = [eval_pq(t, p, q) for t in claim.terms]
    elif claim.kind == "jet":
        order = max((t.jet_order() for t in claim.terms), default=2)
        point = SamplePoint.random(rng, claim.n, max(order, 2), claim.mod_equation)
        vals = [t.eval(point.lookup) for t in claim.terms]
    else:
        raise ValueError(f"unknown claim kind {claim.kind!r}")
    scale = max((abs(v) for v in vals), default=0.0)
    residual = abs(sum(vals))
    return residual, scale


def sample_verify(claim: Claim, trials: int = 100, tol: float = 1e-9,
                  seed: int = DEFAULT_SEED) -> dict:
    """Evaluate the claim at random points; the summed residual must stay
    below tol * (1 + magnitude scale) at every point."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    worst = 0.0
    failures = 0
    for _ in range(trials):
        residual, scale = _eval_claim_at(claim, rng)
        rel = residual / (1.0 + scale)
        worst = max(worst, rel)
        if rel >= tol:
            failures += 1
    return {
        "claim": claim.name,
        "kind": claim.kind,
        "trials": trials,
        "seed": seed,
        "tol": tol,
        "max_residual": worst,
        "failures": failures,
        "pass": failures == 0,
    }


def fd_crosscheck(e: ClosedForm, p: float, h: float = 1e-4,
                  tol: float = 1e-6) -> dict:
    """Central finite difference of e against the symbolic derivative.

    Convergence order is estimated under h-halving.  The default h sits at
    the top of the allowed range so that the O(h^2) truncation term still
    dominates roundoff; once the error is at roundoff level the order
    estimate is meaningless and agreement alone decides.
    """
    if not 1e-6 <= h <= 1e-4:
        raise ValueError("h must lie in [1e-6, 1e-4]")
    deriv = eval_closedform(e.differentiate(), p)

    def fd(step):
        return (eval_closedform(e, p + step) - eval_closedform(e, p - step)) / (2 * step)

    err1 = abs(fd(h) - deriv)
    err2 = abs(fd(h / 2) - deriv)
    scale = 1.0 + abs(deriv)
    roundoff_limited = err1 < 1e-10 * scale
    if roundoff_limited:
        order = None
    elif err2 == 0.0:
        order = math.inf
    else:
        order = math.log2(err1 / err2)
    return {
        "p": p,
        "h": h,
        "symbolic": deriv,
        "fd_error_h": err1,
        "fd_error_half_h": err2,
        "observed_order": order,
        "pass": err1 < tol * scale and (order is None or order >= 1.9),
    }


def realify_agreement(e: ClosedForm, trials: int = 100, seed: int = DEFAULT_SEED,
                      rel_tol: float = 1e-10, imag_tol: float = 1e-12) -> dict:
    """Numeric agreement of a conjugation-symmetric form with its realification."""
    real_form = e.realify()
    rng = random.Random(seed)
    worst = 0.0
    worst_imag = 0.0
    for _ in range(trials):
        p = rng.uniform(-10.0, 10.0)
        zc = eval_closedform(e, p)
        zr = eval_real_display(real_form, p)
        worst_imag = max(worst_imag, abs(zc.imag))
        worst = max(worst, abs(zc.real - zr) / (1.0 + abs(zr)))
    return {
        "trials": trials,
        "seed": seed,
        "max_relative_error": worst,
        "max_imaginary": worst_imag,
        "pass": worst < rel_tol and worst_imag < imag_tol,
    }
