"""Command-line interface: ``tripartite-mpc <command> [options]``.

Commands
--------
measure   every measure of a state read from a CSV file
schmidt   canonical five-term form of a state and the local unitaries reaching it
family    analytic sweep of a mixed family, written as CSV
props     randomized property suite
roof      numerical convex-roof tangle against the analytic curve

Exit codes: 0 success, 1 property-suite failure, 2 unparsable input,
3 invalid values, 4 numerical inconsistency.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import families
from .errors import InvalidStateError, NumericalConsistencyError
from .measures import measure_report
from .props import run_property_suite
from .roof import minimize_tangle
from .schmidt import reconstruction_fidelity, schmidt_decompose

log = logging.getLogger("tripartite_mpc")

EXIT_OK = 0
EXIT_SUITE_FAILED = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_NUMERICAL = 4

RENORMALIZE_TOL = 1e-10
REJECT_TOL = 1e-6

LABELS = tuple(format(i, "03b") for i in range(8))


class ParseError(Exception):
    """Input file could not be read as a state file."""


def fmt(x: float) -> str:
    return f"{float(x):.15g}"


def read_state_csv(path: str | Path) -> np.ndarray:
    """Parse ``label,re,im`` records (optional header) into a normalized ket.

    Raises
    ------
    ParseError
        Unreadable file, bad labels, duplicates, missing labels or non-numeric fields.
    InvalidStateError
        Norm off by more than 1e-6.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    amps: dict[str, complex] = {}
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        row = [f.strip() for f in row]
        if not row or not any(row) or row[0].startswith("#"):
            continue
        if lineno == 1 and row[0].lower() == "label":
            continue
        if len(row) != 3:
            raise ParseError(f"line {lineno}: expected 3 fields, got {len(row)}")
        label = row[0]
        if label not in LABELS:
            raise ParseError(f"line {lineno}: bad basis label {label!r}")
        if label in amps:
            raise ParseError(f"line {lineno}: duplicate label {label}")
        try:
            amps[label] = complex(float(row[1]), float(row[2]))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    missing = [lab for lab in LABELS if lab not in amps]
    if missing:
        raise ParseError(f"missing labels: {', '.join(missing)}")
    psi = np.array([amps[lab] for lab in LABELS], dtype=complex)
    if not np.all(np.isfinite(psi)):
        raise InvalidStateError("amplitudes must be finite")
    norm = float(np.linalg.norm(psi))
    dev = abs(norm - 1.0)
    if dev > REJECT_TOL:
        raise InvalidStateError(f"state norm {fmt(norm)} deviates from 1 by more than {REJECT_TOL:g}")
    if dev > RENORMALIZE_TOL:
        log.warning("state norm %s deviates from 1 by %.3g; renormalizing", fmt(norm), dev)
    return psi / norm


def write_state_csv(path: str | Path, psi) -> None:
    psi = np.asarray(psi, dtype=complex)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["label", "re", "im"])
        for lab, a in zip(LABELS, psi):
            w.writerow([lab, fmt(a.real), fmt(a.imag)])


def _kv(key: str, value) -> str:
    return f"{key}={fmt(value) if isinstance(value, float) else value}"


# -- commands -----------------------------------------------------------------

def cmd_measure(args, out) -> int:
    report = measure_report(read_state_csv(args.input))
    fields = report.as_dict()
    for key, value in fields.items():
        print(_kv(key, value), file=out)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(list(fields))
                w.writerow([fmt(v) if isinstance(v, float) else v for v in fields.values()])
        except OSError as exc:
            raise InvalidStateError(f"cannot write {args.out}: {exc}") from exc
    return EXIT_OK


def _print_matrix(name: str, m: np.ndarray, out) -> None:
    for i in range(2):
        for j in range(2):
            print(f"{name}[{i}{j}]={fmt(m[i, j].real)}{m[i, j].imag:+.15g}j", file=out)


def cmd_schmidt(args, out) -> int:
    psi = read_state_csv(args.input)
    form, lu = schmidt_decompose(psi)
    for i, lam in enumerate(form.lambdas):
        print(_kv(f"lambda{i}", lam), file=out)
    print(_kv("phi", form.phi), file=out)
    print(_kv("fidelity", reconstruction_fidelity(psi, form, lu)), file=out)
    _print_matrix("u_a", lu.u_a, out)
    _print_matrix("u_b", lu.u_b, out)
    _print_matrix("u_c", lu.u_c, out)
    return EXIT_OK


def write_family_csv(fh, points) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["p", "tau", "c_ab", "mpc", "branch"])
    for pt in points:
        w.writerow([fmt(pt.p), fmt(pt.tau), fmt(pt.c_ab), fmt(pt.mpc), pt.branch.value])


def cmd_family(args, out) -> int:
    points = families.sweep(args.family, steps=args.steps, n=args.n)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                write_family_csv(fh, points)
        except OSError as exc:
            raise InvalidStateError(f"cannot write {args.out}: {exc}") from exc
    else:
        write_family_csv(out, points)
    return EXIT_OK


def cmd_props(args, out) -> int:
    report = run_property_suite(args.samples, args.seed)
    out.write(report.render())
    return EXIT_OK if report.passed else EXIT_SUITE_FAILED


def cmd_roof(args, out) -> int:
    rho = families.family_state(args.family, args.p, args.n)
    result = minimize_tangle(rho, m=args.m, restarts=args.restarts, seed=args.seed)
    analytic = families.family_tangle(args.family, args.p, args.n)
    print(_kv("family", args.family), file=out)
    print(_kv("p", float(args.p)), file=out)
    if args.family == "ghz-w-wt":
        print(_kv("n", args.n), file=out)
    print(_kv("m", len(result.best)), file=out)
    print(_kv("restarts", result.restarts), file=out)
    print(_kv("estimate", result.estimate), file=out)
    print(_kv("analytic", analytic), file=out)
    print(_kv("gap", abs(result.estimate - analytic)), file=out)
    print(_kv("converged", str(result.converged).lower()), file=out)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tripartite-mpc", description="Three-qubit GME measures.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("measure", help="measures of a state file")
    p.add_argument("--input", required=True, help="CSV with rows label,re,im")
    p.add_argument("--out", help="also write the report as a one-row CSV")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("schmidt", help="canonical form of a state file")
    p.add_argument("--input", required=True, help="CSV with rows label,re,im")
    p.set_defaults(func=cmd_schmidt)

    p = sub.add_parser("family", help="analytic curve of a mixed family as CSV")
    p.add_argument("--family", required=True, choices=families.FAMILIES)
    p.add_argument("--n", type=_positive_int, default=2, help="q = (1-p)/n (ghz-w-wt only)")
    p.add_argument("--steps", type=int, default=families.DEFAULT_STEPS)
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("props", help="randomized property suite")
    p.add_argument("--samples", type=_positive_int, default=10_000)
    p.add_argument("--seed", type=_seed, default=7)
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("roof", help="numerical convex-roof tangle vs. analytic value")
    p.add_argument("--family", required=True, choices=families.FAMILIES)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--n", type=_positive_int, default=2)
    p.add_argument("--m", type=_positive_int, default=4)
    p.add_argument("--restarts", type=_positive_int, default=32)
    p.add_argument("--seed", type=_seed, default=0)
    p.set_defaults(func=cmd_roof)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    out = sys.stdout if out is None else out
    try:
        return args.func(args, out)
    except ParseError as exc:
        log.error("%s", exc)
        return EXIT_PARSE
    except NumericalConsistencyError as exc:
        log.error("numerical consistency failure: %s", exc)
        return EXIT_NUMERICAL
    except (InvalidStateError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
