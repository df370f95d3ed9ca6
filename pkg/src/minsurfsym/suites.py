"""Verification suites: symbolic checks plus their floating-point shadows.

Each suite returns {"suite", "checks": [...], "pass", "escape"} where every
check is {"name", "status", "detail"}; status is "pass"/"fail" for asserted
claims and "info" for recorded-only findings (the exactness probe).  The
command-line front end serializes these verbatim.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .conservation import (
    NOETHER,
    build_current,
    catalog,
    catalog_symmetry_check,
    dimension_report,
    discriminant_identity_holds,
    first_order_flux_integrability,
    noether_exactness_probe,
    verify_current,
    verify_mu,
)
from .exprcore import ARCTAN_P, CF_ONE, ClosedForm, ClosedFormEscape
from .fixtures import FIXTURES, NORMALIZATIONS, expected_generated
from .hierarchy import (
    EVEN,
    ODD,
    PQ,
    ChainSpec,
    ContactPolynomial,
    audit_printed_bases,
    determining_residual,
    determining_residual_terms,
    generate_symmetry,
    homogeneous_basis,
    homogeneous_residual,
    recursion_delta,
    recursion_nabla,
)
from .jetcalc import (
    EquationObject,
    divergence,
    euler_operator,
    jacobi_bracket,
    noether_identity_terms,
    pure_context,
)
from .jetcalc.core import contact_context
from .numcheck import DEFAULT_SEED, Claim, sample_verify


def _check(name: str, ok: bool, detail: str = "") -> dict:
    return {"name": name, "status": "pass" if ok else "fail", "detail": detail}


def _info(name: str, detail: str) -> dict:
    return {"name": name, "status": "info", "detail": detail}


def _finish(suite: str, checks, escape=None) -> dict:
    ok = all(c["status"] != "fail" for c in checks)
    return {"suite": suite, "checks": checks, "pass": ok and escape is None,
            "escape": escape}


# ---------------------------------------------------------------------------
# random object builders (seeded; shared with the test suite)


def random_pq_section(rng: random.Random, max_p_deg: int = 3,
                      max_q_deg: int = 3, transcendental: bool = True) -> PQ:
    """A random section phi(p, q): polynomial coefficients, optionally with
    an arctan factor mixed in; generically not a symmetry."""
    coeffs = {}
    for _ in range(rng.randint(1, 4)):
        qp = rng.randint(0, max_q_deg)
        poly = [Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(1, max_p_deg + 1))]
        cf = ClosedForm.from_poly(poly)
        if transcendental and rng.random() < 0.3:
            cf = cf * ARCTAN_P
        cur = coeffs.get(qp, None)
        coeffs[qp] = cf if cur is None else cur + cf
    pq = PQ({k: c for k, c in coeffs.items() if not c.is_zero()})
    return pq if not pq.is_zero() else PQ({0: CF_ONE})


def random_jet_expression(ctx, rng: random.Random, order: int = 2,
                          nterms: int = 4, allow_inv_L: bool = True):
    """A random local jet expression of bounded order."""
    from .jetcalc import multi_indices
    symbols = [ctx.u(*sigma) for sigma in multi_indices(ctx.n, order)]
    symbols += [ctx.x(i) for i in range(1, ctx.n + 1)]
    out = ctx.zero()
    for _ in range(nterms):
        term = ctx.const(Fraction(rng.randint(-3, 3)))
        for _ in range(rng.randint(0, 3)):
            term = term * rng.choice(symbols)
        if rng.random() < 0.3:
            term = term * ctx.L()
        if allow_inv_L and rng.random() < 0.3:
            term = term * ctx.inv_L(rng.randint(1, 2))
        out = out + term
    return out


def random_first_order_phi(ctx, rng: random.Random):
    choices = [ctx.const(1), ctx.u()] + \
        [ctx.x(i) for i in range(1, ctx.n + 1)] + \
        [ctx.u(i) for i in range(1, ctx.n + 1)]
    out = ctx.zero()
    for _ in range(rng.randint(1, 3)):
        term = ctx.const(Fraction(rng.randint(-2, 2)))
        for _ in range(rng.randint(1, 2)):
            term = term * rng.choice(choices)
        out = out + term
    return out if not out.is_zero() else ctx.const(1)


# ---------------------------------------------------------------------------
# suites


def run_chain_suite(kmax: int = 6, seed: int = DEFAULT_SEED,
                    trials: int = 1000, generated: dict = None) -> dict:
    """Generation, determining-equation residuals (symbolic and numeric),
    fixture links, head consistency, recursion operators, printed-basis audit."""
    checks = []
    escape = None
    generated = generated if generated is not None else {}
    specs = [ChainSpec(parity, k, branch)
             for k in range(1, kmax + 1)
             for parity in (EVEN, ODD)
             for branch in ("re", "im")]
    try:
        for spec in specs:
            if spec not in generated:
                generated[spec] = generate_symmetry(spec)
    except ClosedFormEscape as exc:
        escape = {"spec": repr(getattr(exc, "chain_spec", None)),
                  "monomial": list(exc.monomial), "message": str(exc)}
        return _finish("chains", checks, escape)

    for spec in specs:
        phi = generated[spec]
        name = f"{spec.parity}/k={spec.k}/{spec.branch}"
        checks.append(_check(f"residual symbolic zero [{name}]",
                             determining_residual(phi).is_zero()))
        rep = sample_verify(Claim(f"residual shadow {name}", "pq",
                                  list(determining_residual_terms(phi))),
                            trials=trials, tol=1e-9, seed=seed)
        checks.append(_check(f"residual shadow [{name}]", rep["pass"],
                             f"max={rep['max_residual']:.3e} over {trials} points"))
        head = homogeneous_basis(spec)
        checks.append(_check(f"head consistency [{name}]", phi.head() == head))
        rem = 0 if spec.parity == EVEN else 1
        checks.append(_check(f"parity purity [{name}]",
                             all(k % 2 == rem for k in phi.pq.coeffs)))

    for spec, norm in NORMALIZATIONS.items():
        if spec.k > kmax:
            continue
        ok = generated[spec] == expected_generated(spec)
        adj = ", ".join(f"{v}*{n}" for n, v in norm.adjustments.items()) or "none"
        checks.append(_check(
            f"fixture link [{spec.parity}/k=1/{spec.branch}] == "
            f"{norm.scalar}*{norm.fixture} (+ {adj})", ok))

    for parity in (EVEN, ODD):
        for branch in ("plus", "minus", "re", "im"):
            ok = True
            for k in range(1, min(kmax, 5) + 1):
                nab = recursion_nabla(homogeneous_basis(ChainSpec(parity, k, branch)),
                                      parity, k)
                ok = ok and nab == homogeneous_basis(ChainSpec(parity, k + 1, branch))
            checks.append(_check(f"nabla ladder [{parity}/{branch}] k<=min(kmax,5)", ok))
    delta_ok = all(recursion_delta(recursion_delta(s)) == s for s in specs)
    checks.append(_check("delta involution", delta_ok))

    audit = audit_printed_bases(kmax)
    f1_ok = all(r["matches_branch"] for r in audit if r["item"] == "even_basis_1")
    checks.append(_check("printed f^1 matches re-branch for all k", f1_ok))
    heads_ok = all(r["printed_residual_zero"] for r in audit
                   if r["item"].endswith("complex_head"))
    checks.append(_check("complex heads solve their equations", heads_ok))
    mism = [r for r in audit if not r["matches_branch"]
            and not r["item"].endswith("complex_head")]
    mism_ok = all(not r["printed_residual_zero"] for r in mism)
    checks.append(_check(
        "every mismatching printed formula has nonzero residual", mism_ok,
        f"{len(mism)} mismatching printed formulas audited"))
    lam = max(generated[s].lambda_degree() for s in specs)
    checks.append(_info("max log-degree across chains", str(lam)))
    checks.append(_info("closed-form escape", "none observed"))
    out = _finish("chains", checks, escape)
    out["audit"] = audit
    return out


def run_bracket_suite(kmax: int = 3, seed: int = DEFAULT_SEED,
                      random_pairs: int = 50, generated: dict = None) -> dict:
    """Pairwise Jacobi brackets of the generated symmetries and the seed
    sections, plus the bracket-triviality property on random sections."""
    checks = []
    generated = generated if generated is not None else {}
    ctx = contact_context()
    sections = []
    for k in range(1, kmax + 1):
        for parity in (EVEN, ODD):
            for branch in ("re", "im"):
                spec = ChainSpec(parity, k, branch)
                if spec not in generated:
                    generated[spec] = generate_symmetry(spec)
                sections.append((f"{parity}{k}{branch}", generated[spec]))
    for name in ("phi1", "phi2_1", "phi2_2", "phi5"):
        sections.append((name, FIXTURES[name]))

    bad = []
    npairs = 0
    for idx, (n1, s1) in enumerate(sections):
        for n2, s2 in sections[idx + 1:]:
            npairs += 1
            if not jacobi_bracket(s1, s2, ctx).is_zero():
                bad.append(f"{{{n1},{n2}}}")
    checks.append(_check(f"all {npairs} pairwise brackets vanish", not bad,
                         "; ".join(bad) if bad else ""))

    rng = random.Random(seed)
    ok = True
    for _ in range(random_pairs):
        s1 = random_pq_section(rng)
        s2 = random_pq_section(rng)
        if not jacobi_bracket(s1, s2, ctx).is_zero():
            ok = False
    checks.append(_check(f"bracket trivial on {random_pairs} random section pairs", ok))
    return _finish("brackets", checks)


def run_current_suite(ns=(2, 3), seed: int = DEFAULT_SEED, trials: int = 1000) -> dict:
    """Catalog structure, mu identities, symmetry property, conserved
    currents (symbolic + on-equation shadows), the scaling identity."""
    checks = []
    for n in ns:
        ctx = pure_context(n)
        eq = EquationObject(n, ctx=ctx)
        cat = catalog(n, ctx)
        rep = dimension_report(n)
        checks.append(_check(
            f"catalog count n={n}",
            len(cat) == rep["catalog_total"]
            and rep["killing_total"] == rep["killing_expected"],
            f"{len(cat)} symmetries; isometry part {rep['killing_total']} "
            f"= {rep['killing_expected']}"))
        for sym in cat:
            checks.append(_check(f"mu identity [{sym.id}, n={n}]", verify_mu(sym)))
            checks.append(_check(f"symmetry property [{sym.id}, n={n}]",
                                 catalog_symmetry_check(sym, eq)))
            current = build_current(sym, eq)
            report = verify_current(current, eq)
            detail = ""
            if sym.id == "shift":
                chi_ok = report["characteristic"] == ctx.inv_L(3)
                detail = f"characteristic 1/L^3 confirmed: {chi_ok}"
            checks.append(_check(f"current conserved [{sym.id}, n={n}]",
                                 report["conserved"], detail))
            terms = [comp.total_derivative(i)
                     for i, comp in enumerate(current.components, start=1)]
            shadow = sample_verify(
                Claim(f"div {sym.id} n={n}", "jet", terms, n=n, mod_equation=True),
                trials=trials, tol=1e-9, seed=seed)
            checks.append(_check(f"divergence shadow [{sym.id}, n={n}]",
                                 shadow["pass"],
                                 f"max={shadow['max_residual']:.3e}"))
    for n in (1, 2, 3):
        ctx = pure_context(n)
        cat = {s.id: s for s in catalog(n, ctx)}
        sym = cat["dilatation"]
        ok = verify_mu(sym) and sym.scaling_remainder == n
        checks.append(_check(f"scaling identity D_phi(L) = {n}L + d_h(-x L), n={n}", ok))
    checks.append(_check("plane certificate discriminant identity",
                         discriminant_identity_holds()))
    return _finish("currents", checks)


def run_noether_suite(ns=(2, 3), seed: int = DEFAULT_SEED, random_pairs: int = 25,
                      divergence_samples: int = 50) -> dict:
    """The operator identity behind the currents, the Euler operator's
    annihilation of divergences, and the recorded exactness probe."""
    checks = []
    rng = random.Random(seed)
    for n in ns:
        ctx = pure_context(n)
        L = ctx.L()
        for sym in catalog(n, ctx):
            ev, eu, divs = noether_identity_terms(sym.section, L)
            res = ev - eu
            for d in divs:
                res = res - d
            checks.append(_check(f"identity residual [{sym.id}, n={n}]", res.is_zero()))
        ok = True
        for _ in range(random_pairs):
            phi = random_first_order_phi(ctx, rng)
            density = random_jet_expression(ctx, rng, order=2, nterms=3)
            ev, eu, divs = noether_identity_terms(phi, density)
            res = ev - eu
            for d in divs:
                res = res - d
            if not res.is_zero():
                ok = False
        checks.append(_check(
            f"identity residual on {random_pairs} random (phi, density) pairs, n={n}", ok))

    ctx2 = pure_context(2, max_order=6)
    eq2 = EquationObject(2, ctx=ctx2)
    checks.append(_check("Euler of the area density is the equation",
                         euler_operator(ctx2.L()) == -(eq2.F * ctx2.inv_L(3))))
    ok = True
    for _ in range(divergence_samples):
        flux = [random_jet_expression(ctx2, rng, order=2, nterms=2)
                for _ in range(2)]
        if not euler_operator(divergence(flux)).is_zero():
            ok = False
    checks.append(_check(
        f"Euler annihilates {divergence_samples} random divergences", ok))

    cctx = contact_context()
    for name in ("phi5", "phi6", "phi7", "phi8", "phi9"):
        probe = noether_exactness_probe(FIXTURES[name], cctx)
        integ = first_order_flux_integrability(FIXTURES[name], cctx)
        checks.append(_info(
            f"exactness probe [{name}]",
            f"E_u(D_phi(L)) zero: {probe.is_zero()}; "
            f"first-order flux integrability: {integ['integrable']}"))
    return _finish("noether", checks)


def run_all(kmax: int = 6, ns=(2, 3), seed: int = DEFAULT_SEED,
            trials: int = 1000) -> list:
    generated = {}
    return [
        run_chain_suite(kmax=kmax, seed=seed, trials=trials, generated=generated),
        run_bracket_suite(kmax=min(kmax, 3), seed=seed, generated=generated),
        run_current_suite(ns=ns, seed=seed, trials=trials),
        run_noether_suite(ns=ns, seed=seed),
    ]
