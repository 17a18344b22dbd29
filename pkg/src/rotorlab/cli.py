"""rotorlab command line.

Exit codes: 0 success, 1 theorem violation, 2 usage error, 3 file or validation error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .diagram import DiagramError, parse_diagram
from .harness import (compare_rotants, default_threads, property_suite,
                      search_conway_counterexample, search_homology_example, write_reproducer)
from .invariants import DEFAULT_OMEGA_T, BudgetExceeded, OmegaIsOne, conway_skein, invariant_report
from .tangle import TangleError, compose, parse_rotor_link, rotant_link

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _omega_token(s: str) -> str:
    if s.strip().lower() in ("inf", "infinity"):
        return "inf"
    try:
        Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"omega parameter must be a rational t or 'inf', got {s!r}")
    if "." in s or "e" in s.lower():
        raise argparse.ArgumentTypeError("give t as an exact rational such as 1/3, not a decimal")
    return s


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rotorlab", description="Link invariants and rotant experiments.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("invariants", help="full invariant report of a diagram file")
    q.add_argument("file")
    q.add_argument("--json", action="store_true", help="machine-readable output")
    q.add_argument("--omega", action="append", type=_omega_token, metavar="T",
                   help="sample omega(t) on the unit circle (repeatable; 'inf' is -1)")

    q = sub.add_parser("rotant", help="write the rotant of a rotor link")
    q.add_argument("file")
    q.add_argument("-o", "--output", required=True, help="composed diagram; the rotor link goes to OUT.link.json")
    q.add_argument("--k", type=int, default=0, help="use the flype d_{k/2} (default 0)")

    q = sub.add_parser("compare", help="compare a rotor link with its rotant")
    q.add_argument("file")
    q.add_argument("--omega", action="append", type=_omega_token, metavar="T")
    q.add_argument("--k", type=int, default=0)

    q = sub.add_parser("suite", help="randomized theorem checks")
    q.add_argument("--trials", type=_nonneg, required=True)
    q.add_argument("--seed", required=True)
    q.add_argument("--nmin", type=int, default=3)
    q.add_argument("--nmax", type=int, default=5)
    q.add_argument("--max-crossings", type=_positive, default=14)
    q.add_argument("--threads", type=_positive, default=None)
    q.add_argument("--json", action="store_true")
    q.add_argument("--reproducer-dir", default=".")

    q = sub.add_parser("search", help="look for rotant pairs that differ")
    q.add_argument("kind", choices=("conway", "homology"))
    q.add_argument("--seed", required=True)
    q.add_argument("--budget", type=_nonneg, required=True)
    q.add_argument("--reproducer-dir", default=".")

    q = sub.add_parser("oracle", help="single-route computations for external cross-checks")
    q.add_argument("kind", choices=("conway",))
    q.add_argument("file")
    q.add_argument("--max-crossings", type=_positive, default=24)
    return p


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1)


def _poly_text(coeffs: dict, var: str) -> str:
    terms = []
    for e, c in sorted(((int(e), int(c)) for e, c in coeffs.items()), reverse=True):
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(("" if c == 1 else "-" if c == -1 else f"{c}*") + mono)
    return " + ".join(terms).replace("+ -", "- ") or "0"


def _group_text(g: dict) -> str:
    parts = [f"Z{d}" for d in g["factors"]] + ["Z"] * g["free_rank"]
    return " + ".join(parts) or "0"


def _print_report(rep: dict, out) -> None:
    print(f"components      {rep['components']}", file=out)
    print(f"linking matrix  {rep['linking_matrix']}", file=out)
    print(f"lk total        {rep['lk_total']}", file=out)
    print(f"trace           {rep['trace']}", file=out)
    print(f"conway          {_poly_text(rep['conway'], 'z')}", file=out)
    print(f"alexander       {_poly_text(rep['alexander'], 't')}", file=out)
    print(f"determinant     {rep['determinant']}", file=out)
    print(f"murasugi        {rep['murasugi']}", file=out)
    for s in rep["tl_signatures"]:
        print(f"sigma(t={s['t']:>4s}) {s['sigma']:3d}   omega={s['omega']}", file=out)
    print(f"goeritz charpoly {rep['goeritz_charpoly']}", file=out)
    print(f"H1 double cover {_group_text(rep['h1_double_cover'])}", file=out)


def _cmd_invariants(a, out) -> int:
    d = parse_diagram(_read(a.file))
    rep = invariant_report(d, tuple(a.omega or DEFAULT_OMEGA_T))
    if a.json:
        print(_dump(rep), file=out)
    else:
        _print_report(rep, out)
    return EXIT_OK


def _cmd_rotant(a, out) -> int:
    rl = parse_rotor_link(_read(a.file))
    link = rotant_link(rl, a.k)
    d = compose(link.stator, link.rotor)
    base = a.output[:-5] if a.output.endswith(".json") else a.output
    with open(a.output, "w") as fh:
        fh.write(_dump(d.as_json()) + "\n")
    with open(base + ".link.json", "w") as fh:
        fh.write(_dump(link.as_json()) + "\n")
    print(f"wrote {a.output} and {base}.link.json", file=out)
    return EXIT_OK


def _cmd_compare(a, out) -> int:
    rl = parse_rotor_link(_read(a.file))
    rep = compare_rotants(rl, tuple(a.omega or DEFAULT_OMEGA_T), a.k)
    print(_dump(rep.as_json()), file=out)
    return EXIT_VIOLATION if rep.violated() else EXIT_OK


def _cmd_suite(a, out) -> int:
    if not 1 <= a.nmin <= a.nmax:
        raise UsageError("need 1 <= nmin <= nmax")
    threads = a.threads or default_threads()
    s = property_suite(a.seed, a.trials, range(a.nmin, a.nmax + 1), a.max_crossings,
                       threads=threads, reproducer_dir=a.reproducer_dir)
    print(_dump(s.as_json()) if a.json else s.table(), file=out)
    return EXIT_OK if s.clean else EXIT_VIOLATION


def _cmd_search(a, out) -> int:
    if a.kind == "conway":
        hit = search_conway_counterexample(a.seed, a.budget)
    else:
        hit = search_homology_example(a.seed, a.budget)
    if hit is None:
        print(f"no {a.kind} example within budget {a.budget}", file=out)
        return EXIT_OK
    path = write_reproducer(hit, a.reproducer_dir)
    print(_dump(hit), file=out)
    print(f"reproducer written to {path}", file=out)
    return EXIT_OK


def _cmd_oracle(a, out) -> int:
    d = parse_diagram(_read(a.file))
    p = conway_skein(d, max_crossings=a.max_crossings)
    print(_dump({"conway": p.to_json()}), file=out)
    return EXIT_OK


COMMANDS = {"invariants": _cmd_invariants, "rotant": _cmd_rotant, "compare": _cmd_compare,
            "suite": _cmd_suite, "search": _cmd_search, "oracle": _cmd_oracle}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        a = build_parser().parse_args(list(sys.argv[1:] if argv is None else argv))
        return COMMANDS[a.command](a, out)
    except UsageError as exc:
        print(f"rotorlab: usage error: {exc}", file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (OSError, DiagramError, TangleError, OmegaIsOne, BudgetExceeded, ValueError) as exc:
        print(f"rotorlab: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
