"""Command-line front end: prepare, multiply, conjugate, estimate-g, report.

Matrix files are JSON objects {"n": int, "entries": [[[re, im], ...], ...]},
row major; prepared files add {"b": [re, im], "s_original": ..., "c": ...}.
Reports are JSON with every float printed at 17 significant digits so values
round-trip bit for bit.

Exit codes: 0 success (and all requested verifications passed), 1 failed
verification, 2 parse/parameter problems, 3 dimension mismatch, 4 the
normalization estimate is undefined or unavailable.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .complexmat import (
    ComplexMatrix,
    ORACLE_TOL,
    matrix_from_obj,
    matrix_to_obj,
    prepare,
    prepared_from_obj,
    prepared_to_obj,
)
from .conjugator import hermitian_conjugate
from .encoder import EncodedBlock, decode, encode
from .errors import (
    DimensionError,
    EstimateUnavailableError,
    MethodUndefinedError,
    ParameterError,
    ValidationError,
)
from .estimator import estimate_g
from .multiplier import oracle_product, resource_report, run_pipeline
from .registers import layout_for

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_DIMENSION = 3
EXIT_ESTIMATE = 4

DEFAULT_C = 1.0


# --- JSON emission -----------------------------------------------------------
# stdlib json prints shortest-repr floats; reports pin 17 significant digits
# instead, so the emitter is hand rolled.


def _scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _is_scalar(value) -> bool:
    return value is None or isinstance(value, (bool, int, float, str, np.integer, np.floating))


def _emit(value, out: list, indent: int) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, item) in enumerate(value.items()):
            out.append(f"{pad}  {json.dumps(str(key))}: ")
            _emit(item, out, indent + 1)
            out.append(",\n" if i + 1 < len(value) else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        items = list(value)
        if not items:
            out.append("[]")
        elif all(_is_scalar(v) for v in items):
            out.append("[" + ", ".join(_scalar(v) for v in items) + "]")
        else:
            out.append("[\n")
            for i, item in enumerate(items):
                out.append(pad + "  ")
                _emit(item, out, indent + 1)
                out.append(",\n" if i + 1 < len(items) else "\n")
            out.append(pad + "]")
    else:
        out.append(_scalar(value))


def dump_json(obj) -> str:
    out: list[str] = []
    _emit(obj, out, 0)
    return "".join(out) + "\n"


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ValidationError(f"cannot read {path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from None


def _load_operand(path: str, c: float):
    """A matrix file is prepared here with slack parameter ``c``; a prepared
    file (recognized by its b field) is taken as is."""
    obj = _load_json(path)
    if isinstance(obj, dict) and "b" in obj:
        return prepared_from_obj(obj)
    return prepare(matrix_from_obj(obj), c)


# --- commands ----------------------------------------------------------------


def cmd_prepare(args) -> int:
    matrix = matrix_from_obj(_load_json(args.input))
    pm = prepare(matrix, args.c)
    _write_output(dump_json(prepared_to_obj(pm)), args.output)
    return EXIT_OK


def cmd_multiply(args) -> int:
    manips = set()
    if args.dagger_a:
        manips.add("dagger1")
    if args.dagger_b:
        manips.add("dagger2")
    if args.swap_order:
        manips.add("swap_order")
    pm1 = _load_operand(args.a, args.c)
    pm2 = _load_operand(args.b, args.c)
    result = run_pipeline(pm1, pm2, manips)
    rescaled = ComplexMatrix(result.matrix_hat.n, result.matrix_hat.entries * result.scale_back)

    report = {
        "version": __version__,
        "command": "multiply",
        "flags": {
            "a": args.a,
            "b": args.b,
            "dagger_a": args.dagger_a,
            "dagger_b": args.dagger_b,
            "swap_order": args.swap_order,
            "c": args.c,
            "verify": args.verify,
            "output": args.output,
        },
        "layout": layout_for(pm1.n).summary(),
        "manipulations": sorted(manips),
        "matrix_hat": matrix_to_obj(result.matrix_hat),
        "matrix_hat_rescaled": matrix_to_obj(rescaled),
        "b_hat": [result.b_hat.real, result.b_hat.imag],
        "g": result.g_exact,
        "branch_probability": result.branch_probability,
        "scale_back": result.scale_back,
    }
    ok = True
    if args.verify:
        ok = result.oracle_error <= ORACLE_TOL
        report["verify"] = {
            "oracle_error": result.oracle_error,
            "tolerance": ORACLE_TOL,
            "pass": ok,
        }
    _write_output(dump_json(report), args.output)
    if not ok:
        expected, _ = oracle_product(pm1, pm2, manips)
        diff = np.abs(result.matrix_hat.entries - expected.entries)
        j, k = np.unravel_index(int(np.argmax(diff)), diff.shape)
        print(
            f"verification failed: max error {result.oracle_error:.3e} at entry "
            f"({j}, {k}) exceeds {ORACLE_TOL}",
            file=sys.stderr,
        )
        return EXIT_VERIFY
    return EXIT_OK


def cmd_conjugate(args) -> int:
    matrix = matrix_from_obj(_load_json(args.input))
    if matrix.n < 1:
        raise ParameterError("conjugate needs a matrix of width n >= 1")
    pm = prepare(matrix, DEFAULT_C)
    layout = layout_for(matrix.n)
    block = EncodedBlock.for_side(layout, "first")
    state = hermitian_conjugate(encode(pm, "first", layout), block)
    decoded, _b, _residual = decode(state, block)
    result = ComplexMatrix(matrix.n, decoded.entries * pm.scale)
    _write_output(dump_json(matrix_to_obj(result)), args.output)
    return EXIT_OK


def cmd_estimate_g(args) -> int:
    pm1 = _load_operand(args.a, DEFAULT_C)
    pm2 = _load_operand(args.b, DEFAULT_C)
    est = estimate_g(pm1, pm2, (), shots=args.shots, seed=args.seed)
    report = {
        "version": __version__,
        "command": "estimate-g",
        "flags": {"a": args.a, "b": args.b, "shots": args.shots, "seed": args.seed},
        "s1": est.s1,
        "s1_tilde_exact": est.s1_tilde_exact,
        "s1_tilde_sampled": est.s1_tilde_sampled,
        "g_exact": est.g_exact,
        "g_hat": est.g_hat,
        "stderr": est.stderr,
        "shots": est.shots,
        "seed": est.seed,
        "nominal_runs": est.nominal_runs,
    }
    sys.stdout.write(dump_json(report))
    return EXIT_OK


def cmd_report(args) -> int:
    rep = resource_report(args.n)
    report = {
        "version": __version__,
        "command": "report",
        "flags": {"n": args.n},
        **rep.to_dict(),
    }
    sys.stdout.write(dump_json(report))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qamp",
        description="Amplitude-encoded matrix operations on a statevector simulator.",
    )
    parser.add_argument("--version", action="version", version=f"qamp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prepare", help="scale a matrix and attach its slack amplitude")
    p.add_argument("input", help="matrix JSON file")
    p.add_argument("--c", type=float, default=DEFAULT_C, help="slack parameter (default 1.0)")
    p.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("multiply", help="run the multiplication pipeline on two inputs")
    p.add_argument("a", help="first operand (matrix or prepared JSON file)")
    p.add_argument("b", help="second operand (matrix or prepared JSON file)")
    p.add_argument("--dagger-a", action="store_true", help="conjugate-transpose the first operand")
    p.add_argument("--dagger-b", action="store_true", help="conjugate-transpose the second operand")
    p.add_argument("--swap-order", action="store_true", help="exchange the operands' roles")
    p.add_argument("--c", type=float, default=DEFAULT_C, help="slack parameter for raw inputs")
    p.add_argument(
        "--verify",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="check the decoded product against the classical oracle (default on)",
    )
    p.add_argument("--output", "-o", default=None, help="report path (default stdout)")
    p.set_defaults(func=cmd_multiply)

    p = sub.add_parser("conjugate", help="conjugate-transpose a matrix through the circuit")
    p.add_argument("input", help="matrix JSON file")
    p.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_conjugate)

    p = sub.add_parser("estimate-g", help="recover the normalization factor by sampling")
    p.add_argument("a", help="first operand (matrix or prepared JSON file)")
    p.add_argument("b", help="second operand (matrix or prepared JSON file)")
    p.add_argument("--shots", type=int, default=100_000, help="number of sampled runs")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.set_defaults(func=cmd_estimate_g)

    p = sub.add_parser("report", help="analytic qubit/gate/depth accounting")
    p.add_argument("--n", type=int, required=True, help="matrix register width")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (MethodUndefinedError, EstimateUnavailableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ESTIMATE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
