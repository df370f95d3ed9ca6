"""Command-line front end: generate symmetries, print tables, run suites.

Exit codes: 0 success, 1 verification failure, 2 closed-form escape,
64 usage error.  JSON goes to standard output; the default seed comes from
MINSURFSYM_SEED when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .display import symmetry_latex, symmetry_text
from .exprcore import ClosedFormEscape, NotReal
from .fixtures import FIXTURE_LATEX, FIXTURE_ORDER, FIXTURES, NORMALIZATIONS
from .hierarchy import EVEN, ODD, ChainSpec, generate_symmetry
from .numcheck import DEFAULT_SEED
from .serialize import document, symmetry_record
from .suites import run_all, run_bracket_suite, run_chain_suite, run_current_suite, run_noether_suite

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_ESCAPE = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    env = os.environ.get("MINSURFSYM_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_SEED


def build_parser() -> _Parser:
    parser = _Parser(prog="minsurfsym",
                     description="Contact symmetries and conservation laws "
                                 "of the minimal surface equation, exactly.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[], help="generate one contact symmetry",
                         description="Generate and self-verify one contact symmetry.")
    gen.add_argument("--parity", required=True, choices=(EVEN, ODD))
    gen.add_argument("--k", required=True, type=int)
    gen.add_argument("--branch", default="re", choices=("re", "im", "plus", "minus"))
    gen.add_argument("--format", default="text", choices=("text", "json", "latex"))
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", default=None)

    ver = sub.add_parser("verify", help="run verification suites",
                         description="Run the symbolic suites and their "
                                     "floating-point shadows.")
    ver.add_argument("--suite", default="all",
                     choices=("chains", "brackets", "currents", "noether", "all"))
    ver.add_argument("--n", type=int, default=None,
                     help="dimension for the currents/noether suites")
    ver.add_argument("--kmax", type=int, default=6)
    ver.add_argument("--seed", type=int, default=None)
    ver.add_argument("--trials", type=int, default=1000)
    ver.add_argument("--out", default=None)

    tab = sub.add_parser("table", help="emit the symmetry table",
                         description="Emit the seed symmetries with their "
                                     "normalization scalars, then generated "
                                     "symmetries up to kmax.")
    tab.add_argument("--kmax", type=int, default=1)
    tab.add_argument("--format", default="json", choices=("json", "latex"))
    tab.add_argument("--seed", type=int, default=None)
    tab.add_argument("--out", default=None)
    return parser


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def cmd_gen(args) -> int:
    if args.k < 1:
        print("minsurfsym gen: error: --k must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    spec = ChainSpec(args.parity, args.k, args.branch)
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        phi = generate_symmetry(spec)
    except ClosedFormEscape as exc:
        print(f"closed-form escape while solving the chain: {exc}", file=sys.stderr)
        return EXIT_ESCAPE
    record = symmetry_record(spec, phi)
    if args.format == "json":
        _emit(json.dumps(document([record], seed), indent=2), args.out)
    elif args.format == "latex":
        try:
            _emit(symmetry_latex(phi), args.out)
        except NotReal:
            print("complex-branch output has no real display; use --format json",
                  file=sys.stderr)
            return EXIT_USAGE
    else:
        _emit(symmetry_text(phi), args.out)
    return EXIT_OK if record["verified"] else EXIT_VERIFY_FAILED


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    ns = (args.n,) if args.n else (2, 3)
    if args.suite == "chains":
        results = [run_chain_suite(kmax=args.kmax, seed=seed, trials=args.trials)]
    elif args.suite == "brackets":
        results = [run_bracket_suite(kmax=min(args.kmax, 3), seed=seed)]
    elif args.suite == "currents":
        results = [run_current_suite(ns=ns, seed=seed, trials=args.trials)]
    elif args.suite == "noether":
        results = [run_noether_suite(ns=ns, seed=seed)]
    else:
        results = run_all(kmax=args.kmax, ns=ns, seed=seed, trials=args.trials)
    doc = {
        "meta": {"version": __version__, "seed": seed},
        "suites": results,
        "pass": all(r["pass"] for r in results),
    }
    _emit(json.dumps(doc, indent=2), args.out)
    if any(r.get("escape") for r in results):
        return EXIT_ESCAPE
    return EXIT_OK if doc["pass"] else EXIT_VERIFY_FAILED


def cmd_table(args) -> int:
    if args.kmax < 1:
        print("minsurfsym table: error: --kmax must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    seed = args.seed if args.seed is not None else _default_seed()
    if args.format == "latex":
        lines = []
        for name in FIXTURE_ORDER:
            lines.append(rf"\varphi_{{{name[3:].replace('_', '^')}}} &= {FIXTURE_LATEX[name]} \\")
        for k in range(2, args.kmax + 1):
            for parity in (EVEN, ODD):
                for branch in ("re", "im"):
                    phi = generate_symmetry(ChainSpec(parity, k, branch))
                    lines.append(
                        rf"\varphi^{{\mathrm{{{parity}}}}}_{{{k},\mathrm{{{branch}}}}} "
                        rf"&= {symmetry_latex(phi)} \\")
        _emit("\n".join(lines), args.out)
        return EXIT_OK
    records = []
    for name in FIXTURE_ORDER:
        phi = FIXTURES[name]
        rec = {
            "fixture": name,
            "parity": phi.parity,
            "latex": FIXTURE_LATEX[name],
            "display": symmetry_text(phi),
            "coefficients": symmetry_record_coefficients(phi),
        }
        links = [
            {"parity": spec.parity, "k": spec.k, "branch": spec.branch,
             "scalar": str(n.scalar),
             "adjustments": {a: str(c) for a, c in n.adjustments.items()}}
            for spec, n in NORMALIZATIONS.items() if n.fixture == name]
        rec["chain_links"] = links
        records.append(rec)
    ok = True
    for k in range(1, args.kmax + 1):
        for parity in (EVEN, ODD):
            for branch in ("re", "im"):
                spec = ChainSpec(parity, k, branch)
                try:
                    phi = generate_symmetry(spec)
                except ClosedFormEscape as exc:
                    print(f"closed-form escape: {exc}", file=sys.stderr)
                    return EXIT_ESCAPE
                rec = symmetry_record(spec, phi)
                ok = ok and rec["verified"]
                records.append(rec)
    _emit(json.dumps(document(records, seed), indent=2), args.out)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def symmetry_record_coefficients(phi):
    from .serialize import closedform_json, real_display_json
    from .display import closedform_text, real_text
    out = []
    for power in sorted(phi.pq.coeffs):
        cf = phi.pq.coeffs[power]
        try:
            real_terms = real_display_json(cf.realify())
            display = real_text(cf.realify())
        except NotReal:
            real_terms = None
            display = closedform_text(cf)
        out.append({"q_power": power, "closed_form": closedform_json(cf),
                    "real_terms": real_terms, "display": display})
    return out


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_OK
    if args.command == "gen":
        return cmd_gen(args)
    if args.command == "verify":
        return cmd_verify(args)
    return cmd_table(args)


if __name__ == "__main__":
    sys.exit(main())
