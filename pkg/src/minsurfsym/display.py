"""Text and LaTeX rendering of closed forms and contact sections.

The text grammar is canonical and round-trips: parse_real_text and
parse_closedform_text reconstruct exactly what real_text and
closedform_text emitted.  LaTeX output is presentation-only and follows
the display style of the source tables (arctan u_x, powers of 1+u_x^2,
powers of u_y); the complex pole basis never leaks into LaTeX.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exprcore import (
    ClosedForm,
    GaussianRational,
    RationalFunctionPM,
    RealDisplayForm,
)

# ---------------------------------------------------------------------------
# real display text: sum of  coef [*p^k] [/(1+p^2)^m] [*arctan(p)^a] [*log(1+p^2)^b]


def _coef_str(c: Fraction) -> str:
    return str(c)


def real_text(r: RealDisplayForm) -> str:
    pieces = []
    for a, b, num, m in r.terms:
        for k, c in enumerate(num):
            if c == 0:
                continue
            factors = []
            if k:
                factors.append("p" if k == 1 else f"p^{k}")
            if a:
                factors.append("arctan(p)" if a == 1 else f"arctan(p)^{a}")
            if b:
                factors.append("log(1+p^2)" if b == 1 else f"log(1+p^2)^{b}")
            mag = abs(c)
            if mag != 1 or not factors:
                factors.insert(0, _coef_str(mag))
            body = "*".join(factors)
            if m:
                body += "/(1+p^2)" if m == 1 else f"/(1+p^2)^{m}"
            pieces.append((c < 0, body))
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def _parse_real_term(text: str):
    # the denominator may come before the transcendental factors
    den = 0
    m_den = re.search(r"/\(1\+p\^2\)(?:\^(\d+))?", text)
    if m_den:
        den = int(m_den.group(1) or 1)
        text = text[:m_den.start()] + text[m_den.end():]
    coef = Fraction(1)
    p_pow = 0
    a_pow = 0
    b_pow = 0
    for factor in text.split("*"):
        if not factor:
            continue
        if factor == "p":
            p_pow += 1
        elif factor.startswith("p^"):
            p_pow += int(factor[2:])
        elif factor == "arctan(p)":
            a_pow += 1
        elif factor.startswith("arctan(p)^"):
            a_pow += int(factor[len("arctan(p)^"):])
        elif factor == "log(1+p^2)":
            b_pow += 1
        elif factor.startswith("log(1+p^2)^"):
            b_pow += int(factor[len("log(1+p^2)^"):])
        else:
            coef *= Fraction(factor)
    return coef, p_pow, den, a_pow, b_pow


def parse_real_text(text: str) -> RealDisplayForm:
    text = text.strip()
    if text == "0":
        return RealDisplayForm(())
    chunks = re.split(r" ([+-]) ", text)
    signed = [(False, chunks[0] if not chunks[0].startswith("-") else chunks[0][1:])]
    if chunks[0].startswith("-"):
        signed[0] = (True, chunks[0][1:])
    for op, chunk in zip(chunks[1::2], chunks[2::2]):
        signed.append((op == "-", chunk))
    buckets = {}
    for neg, chunk in signed:
        coef, p_pow, den, a_pow, b_pow = _parse_real_term(chunk)
        if neg:
            coef = -coef
        key = (a_pow, b_pow, den)
        bucket = buckets.setdefault(key, {})
        bucket[p_pow] = bucket.get(p_pow, Fraction(0)) + coef
    terms = []
    for (a, b, m), poly in sorted(buckets.items()):
        deg = max(poly)
        num = tuple(poly.get(k, Fraction(0)) for k in range(deg + 1))
        terms.append((a, b, num, m))
    return RealDisplayForm(terms)


# ---------------------------------------------------------------------------
# complex closed-form text (canonical basis, for non-realifiable branches)


def gaussian_text(g: GaussianRational) -> str:
    if g.im == 0:
        return str(g.re)
    if g.im == 1:
        imag = "i"
    elif g.im == -1:
        imag = "-i"
    else:
        imag = f"{g.im}i"
    if g.re == 0:
        return imag
    return f"{g.re}+{imag}" if g.im > 0 else f"{g.re}{imag}"


def parse_gaussian_text(text: str) -> GaussianRational:
    text = text.strip()
    if not text.endswith("i"):
        return GaussianRational(Fraction(text))
    body = text[:-1]
    # find the sign separating the real part from the imaginary magnitude
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] not in "+-/":
            re_part = Fraction(body[:pos])
            im_txt = body[pos:]
            im = Fraction(im_txt + "1") if im_txt in ("+", "-") else Fraction(im_txt)
            return GaussianRational(re_part, im)
    if body in ("", "+"):
        return GaussianRational(0, 1)
    if body == "-":
        return GaussianRational(0, -1)
    return GaussianRational(0, Fraction(body))


def closedform_text(e: ClosedForm) -> str:
    if e.is_zero():
        return "0"
    pieces = []
    for (c, d) in sorted(e.terms):
        rf = e.terms[(c, d)]
        for k, g in enumerate(rf.poly):
            if not g.is_zero():
                pieces.append(_cf_piece(g, f"p^{k}" if k else "", c, d))
        for j in sorted(rf.pole_plus):
            pieces.append(_cf_piece(rf.pole_plus[j], f"(p-i)^-{j}", c, d))
        for j in sorted(rf.pole_minus):
            pieces.append(_cf_piece(rf.pole_minus[j], f"(p+i)^-{j}", c, d))
    return " + ".join(pieces)


def _cf_piece(g: GaussianRational, base: str, c: int, d: int) -> str:
    factors = [f"({gaussian_text(g)})"]
    if base:
        factors.append(base)
    if c:
        factors.append("lm" if c == 1 else f"lm^{c}")
    if d:
        factors.append("lp" if d == 1 else f"lp^{d}")
    return "*".join(factors)


def parse_closedform_text(text: str) -> ClosedForm:
    text = text.strip()
    if text == "0":
        return ClosedForm()
    out = ClosedForm()
    for chunk in text.split(" + "):
        coef = None
        base = None     # ('poly', k) | ('pole', sign, j)
        c = d = 0
        for factor in chunk.split("*"):
            if factor.startswith("(") and factor.endswith(")") and "p" not in factor:
                coef = parse_gaussian_text(factor[1:-1])
            elif factor.startswith("p^"):
                base = ("poly", int(factor[2:]))
            elif factor.startswith("(p-i)^-"):
                base = ("pole", 1, int(factor[len("(p-i)^-"):]))
            elif factor.startswith("(p+i)^-"):
                base = ("pole", -1, int(factor[len("(p+i)^-"):]))
            elif factor == "lm":
                c += 1
            elif factor.startswith("lm^"):
                c += int(factor[3:])
            elif factor == "lp":
                d += 1
            elif factor.startswith("lp^"):
                d += int(factor[3:])
            else:
                raise ValueError(f"bad closed-form factor {factor!r}")
        if coef is None:
            raise ValueError(f"term without coefficient: {chunk!r}")
        if base is None:
            rf = RationalFunctionPM((coef,))
        elif base[0] == "poly":
            rf = RationalFunctionPM([GaussianRational(0)] * base[1] + [coef])
        elif base[1] == 1:
            rf = RationalFunctionPM((), {base[2]: coef})
        else:
            rf = RationalFunctionPM((), None, {base[2]: coef})
        out = out + ClosedForm({(c, d): rf})
    return out


# ---------------------------------------------------------------------------
# LaTeX (emit only)


def _latex_poly(num, var: str) -> str:
    bits = []
    for k, c in enumerate(num):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = _latex_frac(mag)
        else:
            v = var if k == 1 else f"{var}^{{{k}}}"
            body = v if mag == 1 else f"{_latex_frac(mag)} {v}"
        bits.append(("-" if c < 0 else "+", body))
    if not bits:
        return "0"
    out = ("-" if bits[0][0] == "-" else "") + bits[0][1]
    for sign, body in bits[1:]:
        out += f" {sign} {body}"
    return out


def _latex_frac(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return rf"\frac{{{c.numerator}}}{{{c.denominator}}}"


def _join_terms(pieces) -> str:
    out = pieces[0]
    for piece in pieces[1:]:
        if piece.startswith("-"):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out


def real_latex(r: RealDisplayForm, var: str = "u_x") -> str:
    if not r.terms:
        return "0"
    pieces = []
    for a, b, num, m in r.terms:
        numerator = _latex_poly(num, var)
        single = "+" not in numerator and "-" not in numerator[1:]
        sign = ""
        if numerator.startswith("-") and single:
            sign = "-"
            numerator = numerator[1:]
        if m:
            den = f"1+{var}^2" if m == 1 else f"(1+{var}^2)^{{{m}}}"
            body = rf"\frac{{{numerator}}}{{{den}}}"
        elif not single and (a or b):
            body = f"\\left({numerator}\\right)"
        else:
            body = numerator
        if (a or b) and body == "1":
            body = ""
        if a:
            tail = rf"\arctan {var}" if a == 1 else rf"\arctan^{{{a}}} {var}"
            body = f"{body} {tail}".strip()
        if b:
            tail = rf"\ln(1+{var}^2)" if b == 1 else rf"\ln^{{{b}}}(1+{var}^2)"
            body = f"{body} {tail}".strip()
        pieces.append(sign + body)
    return _join_terms(pieces)


def symmetry_latex(phi, q_var: str = "u_y", p_var: str = "u_x") -> str:
    """Paper-style LaTeX of a contact section with realifiable coefficients."""
    pieces = []
    for power in sorted(phi.pq.coeffs, reverse=True):
        cf = phi.pq.coeffs[power]
        coeff = real_latex(cf.realify(), p_var)
        if power == 0:
            pieces.append(coeff)
            continue
        qp = q_var if power == 1 else f"{q_var}^{{{power}}}"
        if coeff == "1":
            pieces.append(qp)
        elif _is_single_product(coeff):
            pieces.append(f"{coeff} \\, {qp}")
        else:
            pieces.append(rf"\left({coeff}\right) {qp}")
    return _join_terms(pieces) if pieces else "0"


def _is_single_product(tex: str) -> bool:
    return " + " not in tex and " - " not in tex


def symmetry_text(phi, q_var: str = "u_y") -> str:
    """Plain-text rendering of a contact section, q-coefficients in p."""
    pieces = []
    for power in sorted(phi.pq.coeffs, reverse=True):
        cf = phi.pq.coeffs[power]
        try:
            body = real_text(cf.realify())
        except Exception:
            body = closedform_text(cf)
        if power:
            qp = q_var if power == 1 else f"{q_var}^{power}"
            pieces.append(f"({body})*{qp}")
        else:
            pieces.append(f"({body})")
    return " + ".join(pieces) if pieces else "0"
