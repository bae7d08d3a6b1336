"""Command-line driver: ``verify``, ``decompose``, ``reduce`` and ``simulate``.

Exit codes: 0 success, 1 identity failure, 2 bad arguments or unparsable
input (including a Courant violation), 3 descent condition violated.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import identities
from .coeff import VARIABLE_NAMES, PolyParseError
from .descent import DescentPair, decompose_double, decompose_single, is_invariant
from .exterior import Form, FormParseError, Metric
from .fdtd import CSV_HEADER, CourantViolation, GridSpec, format_row, poly_sources, run, sample
from .maxwell import (
    CROSSCHECK_CATALOGUE,
    DescentViolation,
    EMConfig,
    assemble_F,
    assemble_G_vacuum,
    assemble_J,
    componentwise_crosscheck,
    descent_violations,
    split_double,
    split_single,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DESCENT = 0, 1, 2, 3


class InputError(ValueError):
    pass


def default_trials() -> int:
    raw = os.environ.get("DESCENT_TRIALS", "200")
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"DESCENT_TRIALS must be an integer, got {raw!r}") from None
    if n < 1:
        raise InputError("DESCENT_TRIALS must be positive")
    return n


def _dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not dims or any(not 2 <= m <= len(VARIABLE_NAMES) for m in dims):
        raise argparse.ArgumentTypeError(f"dimensions must lie in 2..{len(VARIABLE_NAMES)}")
    return dims


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _load_config(path: str) -> EMConfig:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object of field polynomials")
    try:
        return EMConfig.from_strings(data)
    except (PolyParseError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


# -- verify --------------------------------------------------------------------

def cmd_verify(args, out) -> int:
    trials = args.trials if args.trials is not None else default_trials()
    names = None
    if args.only:
        names = [n.strip() for n in args.only.split(",") if n.strip()]
        unknown = sorted(set(names) - set(identities.NAMES))
        if unknown:
            raise InputError(f"unknown identities: {', '.join(unknown)}")
    results = identities.run_suite(args.dims, args.seed, trials, names)
    dims = ",".join(map(str, args.dims))
    print(f"seed={args.seed} dims={dims} trials={trials}", file=out)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status}  {r.name:<{width}}  {r.statement}  [{r.trials - r.failures}/{r.trials}]", file=out)
        if not r.ok:
            print(f"      counterexample: {r.counterexample}", file=out)
    failed = [r.name for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} identities hold", file=out)
    return EXIT_FAIL if failed else EXIT_OK


# -- decompose -----------------------------------------------------------------

def _axis_index(letter: str, dim: int) -> int:
    i = VARIABLE_NAMES.index(letter)
    if i >= dim:
        raise InputError(f"axis {letter} does not exist in dimension {dim}")
    return i


def _load_decompose_input(args) -> tuple[Form, EMConfig | None, int]:
    """The form to split, plus the field config it came from (``None`` for a bare form)."""
    data = _load_json(args.input)
    if not isinstance(data, dict):
        raise InputError(f"{args.input}: expected a JSON object")
    if "form" in data:
        dim = data.get("dim", 4)
        if not isinstance(dim, int) or not 2 <= dim <= len(VARIABLE_NAMES):
            raise InputError(f"{args.input}: dim must be an integer in 2..{len(VARIABLE_NAMES)}")
        try:
            return Form.parse(str(data["form"]), dim), None, dim
        except (FormParseError, PolyParseError, ValueError) as exc:
            raise InputError(f"{args.input}: {exc}") from None
    try:
        c = EMConfig.from_strings(data)
    except (PolyParseError, ValueError) as exc:
        raise InputError(f"{args.input}: {exc}") from None
    if args.field == "F":
        w = assemble_F(c)
    elif args.field == "G":
        w = assemble_G_vacuum(c, Metric.lorentzian(4))
    else:
        w = assemble_J(c)
    return w, c, 4


def cmd_decompose(args, out) -> int:
    w, c, dim = _load_decompose_input(args)
    g = Metric.lorentzian(dim)
    names = [args.axis] if args.mode == "single" else ["y", "z"]
    pairs = [DescentPair.coordinate(dim, _axis_index(n, dim), g) for n in names]
    if c is None:
        violations = [("form", n) for n, pr in zip(names, pairs) if not is_invariant(pr.X, w)]
    else:
        violations = descent_violations(c, pairs)
    if violations:
        raise DescentViolation(violations)
    dec = decompose_single(pairs[0], w) if args.mode == "single" else decompose_double(*pairs, w)
    tagged = dec.tagged()
    doc = {key: str(form) for key, (_, form) in tagged.items()}
    doc["tags"] = {key: tag for key, (tag, _) in tagged.items()}
    doc["mode"] = args.mode
    print(_dump(doc), file=out)
    return EXIT_OK


# -- reduce --------------------------------------------------------------------

def _crosscheck_table(c: EMConfig, g: Metric, mode: str, report) -> dict:
    scalars = componentwise_crosscheck(c, g, mode)
    table = {}
    for eq, (rid, idx, sign) in CROSSCHECK_CATALOGUE[mode].items():
        intrinsic = report.residuals[rid][idx].scale(sign)
        table[eq] = {
            "componentwise": str(scalars[eq]),
            "intrinsic": str(intrinsic),
            "residual": rid,
            "agree": scalars[eq] == intrinsic,
        }
    return table


def cmd_reduce(args, out) -> int:
    c = _load_config(args.input)
    g = Metric.lorentzian(4)
    report = split_single(c, g) if args.mode == "single" else split_double(c, g)
    doc = report.to_json()
    doc["crosscheck"] = _crosscheck_table(c, g, args.mode, report)
    if args.format == "json":
        print(_dump(doc), file=out)
    else:
        print(f"mode: {doc['mode']}", file=out)
        for sector, ids in doc["sectors"].items():
            print(f"[{sector}]", file=out)
            for rid in ids:
                print(f"  {rid}: {doc['residuals'][rid]}", file=out)
        print("[crosscheck]", file=out)
        for eq in sorted(doc["crosscheck"]):
            row = doc["crosscheck"][eq]
            mark = "ok" if row["agree"] else "MISMATCH"
            print(f"  {eq}: {row['componentwise']}  ({row['residual']}, {mark})", file=out)
    return EXIT_OK


# -- simulate ------------------------------------------------------------------

def cmd_simulate(args, out) -> int:
    spec = GridSpec(args.nx, args.ny, args.nz, args.dx, args.courant)
    c = _load_config(args.init) if args.init else EMConfig()
    grid = sample(c, spec)
    rows = list(run(grid, args.steps, poly_sources(c, spec), args.every))
    text = "\n".join([CSV_HEADER] + [format_row(r) for r in rows]) + "\n"
    if args.output == "-":
        out.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    max_leak = max(r.leakage for r in rows)
    max_div = max(r.divB_max for r in rows)
    print(f"steps={args.steps} max_leakage={max_leak:.17g} final_leakage={rows[-1].leakage:.17g} "
          f"max_divB={max_div:.17g}", file=sys.stderr if args.output == "-" else out)
    return EXIT_OK


# -- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="formdescent", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the exact identity suites")
    v.add_argument("--dims", type=_dims, default=(2, 3, 4, 5), help="comma-separated dimensions")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=_positive, default=None,
                   help="trials per (identity, dimension, signature); default $DESCENT_TRIALS or 200")
    v.add_argument("--only", default=None, help="comma-separated identity names")
    v.set_defaults(func=cmd_verify)

    dc = sub.add_parser("decompose", help="split a form or Maxwell field along descent directions")
    dc.add_argument("--input", required=True)
    dc.add_argument("--mode", choices=("single", "double"), required=True)
    dc.add_argument("--axis", choices=("z", "y"), default="z", help="descent axis in single mode")
    dc.add_argument("--field", choices=("F", "G", "J"), default="F", help="which form of a field config")
    dc.set_defaults(func=cmd_decompose)

    r = sub.add_parser("reduce", help="sector residual report for a field config")
    r.add_argument("--input", required=True)
    r.add_argument("--mode", choices=("single", "double"), required=True)
    r.add_argument("--format", choices=("json", "text"), default="json")
    r.set_defaults(func=cmd_reduce)

    s = sub.add_parser("simulate", help="Yee leapfrog run with sector diagnostics")
    s.add_argument("--nx", type=_positive, default=64)
    s.add_argument("--ny", type=_positive, default=64)
    s.add_argument("--nz", type=_positive, default=1)
    s.add_argument("--dx", type=float, default=1.0 / 64)
    s.add_argument("--courant", type=float, default=0.5)
    s.add_argument("--steps", type=int, default=1000)
    s.add_argument("--every", type=_positive, default=1, help="diagnostic stride in steps")
    s.add_argument("--init", default=None, help="field config JSON (default: zero fields)")
    s.add_argument("--output", default="-", help="CSV path, '-' for stdout")
    s.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "steps", 0) < 0:
            raise InputError("--steps must be non-negative")
        return args.func(args, out)
    except DescentViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DESCENT
    except (InputError, CourantViolation, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
