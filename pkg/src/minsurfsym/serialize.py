"""Exact JSON serialization of closed forms, sections and symmetry records.

Schema: the top level is {"meta": {"version", "seed"}, "records": [...]};
every number in a symbolic record is an exact fraction string, never a
float.  Deserializers rebuild canonical objects, so serialization round
trips are exact.
"""

from __future__ import annotations

from fractions import Fraction

from . import __version__
from .display import closedform_text, real_text, symmetry_text
from .exprcore import (
    ClosedForm,
    GaussianRational,
    NotReal,
    RationalFunctionPM,
    RealDisplayForm,
)
from .fixtures import NORMALIZATIONS
from .hierarchy import ChainSpec, ContactPolynomial, determining_residual


def frac_str(q: Fraction) -> str:
    return str(Fraction(q))


def gaussian_json(g: GaussianRational) -> dict:
    return {"re": frac_str(g.re), "im": frac_str(g.im)}


def gaussian_from_json(obj) -> GaussianRational:
    return GaussianRational(Fraction(obj["re"]), Fraction(obj["im"]))


def rf_json(rf: RationalFunctionPM) -> dict:
    return {
        "poly": [gaussian_json(c) for c in rf.poly],
        "pole_plus": {str(j): gaussian_json(c) for j, c in sorted(rf.pole_plus.items())},
        "pole_minus": {str(j): gaussian_json(c) for j, c in sorted(rf.pole_minus.items())},
    }


def rf_from_json(obj) -> RationalFunctionPM:
    return RationalFunctionPM(
        [gaussian_from_json(c) for c in obj["poly"]],
        {int(j): gaussian_from_json(c) for j, c in obj["pole_plus"].items()},
        {int(j): gaussian_from_json(c) for j, c in obj["pole_minus"].items()},
    )


def closedform_json(e: ClosedForm) -> dict:
    return {"terms": [{"lm": c, "lp": d, "rf": rf_json(e.terms[(c, d)])}
                      for (c, d) in sorted(e.terms)]}


def closedform_from_json(obj) -> ClosedForm:
    terms = {}
    for t in obj["terms"]:
        terms[(t["lm"], t["lp"])] = rf_from_json(t["rf"])
    return ClosedForm(terms)


def real_display_json(r: RealDisplayForm) -> list:
    return [{"atan_pow": a, "log_pow": b,
             "num": [frac_str(c) for c in num], "den_pow": m}
            for a, b, num, m in r.terms]


def real_display_from_json(obj) -> RealDisplayForm:
    return RealDisplayForm([
        (t["atan_pow"], t["log_pow"], tuple(Fraction(c) for c in t["num"]), t["den_pow"])
        for t in obj])


def contact_json(phi: ContactPolynomial) -> dict:
    return {"parity": phi.parity,
            "coefficients": {str(k): closedform_json(cf)
                             for k, cf in sorted(phi.pq.coeffs.items())}}


def contact_from_json(obj) -> ContactPolynomial:
    coeffs = {int(k): closedform_from_json(v)
              for k, v in obj["coefficients"].items()}
    return ContactPolynomial(obj["parity"], coeffs)


# ---------------------------------------------------------------------------
# symmetry records


def symmetry_record(spec: ChainSpec, phi: ContactPolynomial,
                    verified: bool = None) -> dict:
    """The full record for one generated symmetry: structured coefficients,
    display strings, the normalization link to the seed table (k = 1 only)
    and the verification status."""
    if verified is None:
        verified = determining_residual(phi).is_zero()
    coeffs = []
    for power in sorted(phi.pq.coeffs):
        cf = phi.pq.coeffs[power]
        try:
            real_terms = real_display_json(cf.realify())
            display = real_text(cf.realify())
        except NotReal:
            real_terms = None
            display = closedform_text(cf)
        coeffs.append({
            "q_power": power,
            "closed_form": closedform_json(cf),
            "real_terms": real_terms,
            "display": display,
        })
    norm = NORMALIZATIONS.get(spec)
    record = {
        "parity": spec.parity,
        "k": spec.k,
        "branch": spec.branch,
        "verified": verified,
        "lambda_degree": phi.lambda_degree(),
        "coefficients": coeffs,
        "display": symmetry_text(phi),
        "normalization": None,
    }
    if norm is not None:
        record["normalization"] = {
            "fixture": norm.fixture,
            "scalar": frac_str(norm.scalar),
            "adjustments": {name: frac_str(c) for name, c in sorted(norm.adjustments.items())},
        }
    return record


def record_to_contact(record: dict) -> ContactPolynomial:
    coeffs = {c["q_power"]: closedform_from_json(c["closed_form"])
              for c in record["coefficients"]}
    return ContactPolynomial(record["parity"], coeffs)


def document(records, seed: int) -> dict:
    return {
        "meta": {"version": __version__, "seed": seed},
        "records": records,
    }
