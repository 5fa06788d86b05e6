"""Command line front end.

    horoclif horosphere --input spinor.json
    horoclif lambda --input spinors.json
    horoclif ptolemy --input four_spinors.json
    horoclif flags --input spinor.json
    horoclif verify --n 2 --samples 200 --seed 42
    horoclif random --n 3 --samples 5 --seed 7

Exit codes: 0 success, 1 failed verification suite, 2 bad input,
3 degenerate configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import clifford as cl
from . import hyperbolic as hy
from . import lipschitz as lp
from . import minkowski as mk
from . import ptolemy as pt
from . import verify

EXIT_SUITE, EXIT_INPUT, EXIT_DEGENERATE = 1, 2, 3


class InputError(Exception):
    pass


# -- input ---------------------------------------------------------------------

def _read(path: str | None):
    try:
        text = sys.stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read input: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not JSON: {exc}") from None


def _spinor(obj):
    try:
        return lp.spinor_from_json(obj)
    except lp.InvalidSpinor as exc:
        raise InputError(exc.clause) from None
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed spinor: {exc}") from None


def _spinor_list(doc):
    if isinstance(doc, dict) and "spinors" in doc:
        doc = doc["spinors"]
    if isinstance(doc, dict):
        doc = [doc]
    if not isinstance(doc, list) or not doc:
        raise InputError("expected a spinor, a list of spinors, or {\"spinors\": [...]}")
    ks = [_spinor(obj) for obj in doc]
    if len({k.n for k in ks}) > 1:
        raise InputError("spinors have different n")
    return ks


# -- output --------------------------------------------------------------------

def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for key, val in obj.items():
            key = key or "scalar"  # the empty blade label
            yield from _flatten(val, f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(obj, list):
        for i, val in enumerate(obj):
            yield from _flatten(val, f"{prefix}.{i}" if prefix else str(i))
    else:
        yield prefix, obj


def _cell(v):
    if isinstance(v, bool) or v is None:
        return "" if v is None else str(v).lower()
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def to_csv(rows) -> str:
    flat = [dict(_flatten(r)) for r in rows]
    header = []
    for r in flat:
        header.extend(k for k in r if k not in header)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for r in flat:
        writer.writerow([_cell(r.get(k)) for k in header])
    return buf.getvalue()


def _emit(payload, rows, fmt: str):
    if fmt == "csv":
        sys.stdout.write(to_csv(rows))
    else:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")


# -- commands ------------------------------------------------------------------

def cmd_horosphere(args):
    doc = _read(args.input)
    many = isinstance(doc, list) or (isinstance(doc, dict) and "spinors" in doc)
    records = [hy.horosphere_to_json(hy.horosphere(k)) for k in _spinor_list(doc)]
    _emit(records if many else records[0], records, args.format)
    return 0


def cmd_lambda(args):
    ks = _spinor_list(_read(args.input))
    lam = pt.LambdaMatrix.from_spinors(ks)
    payload = pt.lambda_matrix_to_json(lam)
    rows = [{"i": i + 1, "j": j + 1, "coeffs": payload["lambda"][i][j]}
            for i in range(len(ks)) for j in range(len(ks))]
    _emit(payload, rows, args.format)
    return 0


def cmd_ptolemy(args):
    ks = _spinor_list(_read(args.input))
    if len(ks) != 4:
        raise InputError(f"ptolemy needs exactly 4 spinors, got {len(ks)}")
    tol = 1e-8 if args.tol is None else args.tol
    report = pt.ptolemy_report(*ks, tol=tol)
    _emit(report, [report], args.format)
    return 0 if report["pass"] else EXIT_SUITE


def cmd_flags(args):
    ks = _spinor_list(_read(args.input))
    records = []
    for k in ks:
        mf = mk.multiflag(k)
        rec = mk.multiflag_to_json(mf)
        rec["decorated"] = mk.decorated_to_json(mk.to_decorated_ideal(mf))
        records.append(rec)
    _emit(records if len(records) > 1 else records[0], records, args.format)
    return 0


def cmd_verify(args):
    report = verify.run_all(args.n, args.seed, args.samples, args.tol)
    _emit(report, report["suites"], args.format)
    return 0 if report["pass"] else EXIT_SUITE


def cmd_random(args):
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(args.seed)))
    spinors = [lp.spinor_to_json(lp.random_spinor(args.n, rng)) for _ in range(args.samples)]
    matrices = [lp.matrix_to_json(lp.random_sl2(args.n, rng)) for _ in range(args.samples)]
    payload = {"n": args.n, "seed": args.seed, "spinors": spinors, "matrices": matrices}
    rows = [{"kind": "spinor", **s} for s in spinors] + [{"kind": "matrix", **m} for m in matrices]
    _emit(payload, rows, args.format)
    return 0


COMMANDS = {
    "horosphere": (cmd_horosphere, "decorated horosphere of a spinor"),
    "lambda": (cmd_lambda, "lambda lengths between spinors"),
    "ptolemy": (cmd_ptolemy, "check the Ptolemy relation on four spinors"),
    "flags": (cmd_flags, "multiflag and decorated ideal point of a spinor"),
    "verify": (cmd_verify, "run the seeded property suites"),
    "random": (cmd_random, "emit random spinors and SL(2) matrices"),
}


def _positive_int(text):
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return val


def _dimension(text):
    val = int(text)
    if not 0 <= val <= cl.dim_cap():
        raise argparse.ArgumentTypeError(f"n must be between 0 and {cl.dim_cap()}")
    return val


def _seed(text):
    val = int(text)
    if not 0 <= val < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return val


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="horoclif", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", default="-", help="JSON file, or - for stdin")
        p.add_argument("--n", type=_dimension, default=2)
        p.add_argument("--seed", type=_seed, default=0)
        p.add_argument("--samples", type=_positive_int, default=100)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        return func(args)
    except InputError as exc:
        print(json.dumps({"error": "invalid input", "detail": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    except lp.InvalidMatrix as exc:
        print(json.dumps({"error": "invalid input", "detail": exc.clause}), file=sys.stderr)
        return EXIT_INPUT
    except (pt.Degenerate, hy.SharedCenter, mk.DegenerateFlag, cl.NonInvertible) as exc:
        print(json.dumps({"error": "degenerate", "detail": str(exc)}), file=sys.stderr)
        return EXIT_DEGENERATE
    except cl.DimensionCapExceeded as exc:
        print(json.dumps({"error": "invalid input", "detail": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
