"""Command-line front end: presets, JSON/CSV I/O, report emission.

Every invocation runs one job and writes one report; the report embeds a
hash of the fully-resolved job document and the scalar backend, so a run is
reproducible from its own output.  Exit codes: 0 success, 2 validation
error, 3 indeterminate verdict under --strict, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .compactness import (
    chi_norm,
    compactness_verdict,
    operator_norm,
    supplied_associate,
)
from .conditions import CONDITION_SUMMARY, classify_map
from .duality import basis_vector, dual_membership, associate_row
from .errors import (
    DimensionError,
    GuardError,
    InconsistencyError,
    ParameterError,
    SchemaError,
    SingularTriangleError,
    TailError,
)
from .operators import PresetSpec, preset, inverse_transform, space_norm, transform
from .scalars import backend_for
from .selfcheck import run_selftest
from .serialize import (
    make_report,
    matrix_from_json,
    params_from_json,
    params_to_json,
    sequence_from_json,
    sequence_to_csv,
)


def _parse_scalar(text, backend):
    if backend.mode == "rational":
        return Fraction(text)
    return float(text)


def _parse_sequence_arg(text, length, backend, what):
    """Sequence-valued flags accept 'ones', a comma list, or @file.json."""
    if text == "ones":
        return tuple(backend.one for _ in range(length))
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        seq = sequence_from_json(doc, path=what, backend=backend)
        return seq.values
    try:
        return tuple(_parse_scalar(part.strip(), backend) for part in text.split(","))
    except ValueError as exc:
        raise ParameterError([f"{what}: cannot parse {text!r} ({exc})"]) from None


def _load_json(path, what):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ParameterError([f"{what}: file not found: {path}"]) from None
    except json.JSONDecodeError as exc:
        raise SchemaError(what, f"malformed JSON at line {exc.lineno}, column {exc.colno}: "
                                f"{exc.msg}") from None


def _resolve_params(args, backend):
    """Build the parameter set from --params or a preset, recording how."""
    if getattr(args, "params", None):
        doc = _load_json(args.params, "params")
        p = params_from_json(doc)
        return p, {"params_file": args.params, "params": params_to_json(p)}
    name = args.preset or "identity"
    order = args.n
    window = 4 * order
    kwargs = {}
    if name in ("euler", "aydin"):
        if args.alpha is None:
            raise ParameterError([f"preset {name!r} requires --alpha"])
        try:
            parsed = Fraction(args.alpha)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterError([f"--alpha: cannot parse {args.alpha!r} ({exc})"]) from None
        kwargs["alpha"] = parsed if backend.mode == "rational" else float(parsed)
    if name == "uv":
        if args.u is None or args.v is None:
            raise ParameterError(["preset 'uv' requires --u and --v"])
        kwargs["u"] = _parse_sequence_arg(args.u, window, backend, "--u")
        kwargs["v"] = _parse_sequence_arg(args.v, window, backend, "--v")
    if name == "lambda":
        if args.lam is None:
            raise ParameterError(["preset 'lambda' requires --lam"])
        kwargs["lam"] = _parse_sequence_arg(args.lam, window, backend, "--lam")
    spec = PresetSpec(name, **kwargs)
    p = preset(spec, order, m=args.m, backend=backend)
    job = {"preset": name, "n": order, "m": p.m, "scalar": backend.mode}
    if "alpha" in kwargs:
        job["alpha"] = str(kwargs["alpha"])
    for key in ("u", "v", "lam"):
        if key in kwargs:
            job[key] = [str(v) for v in kwargs[key]]
    return p, job


def _load_sequence(path, backend, p):
    doc = _load_json(path, "input")
    seq = sequence_from_json(doc, path="input", backend=backend)
    if len(seq) != p.order:
        raise DimensionError(f"input length {len(seq)} does not match --n {p.order}")
    return seq, doc


def _load_matrix(path, backend):
    doc = _load_json(path, "matrix")
    return matrix_from_json(doc, path="matrix", backend=backend), doc


def _cmd_transform(args, backend):
    p, job_params = _resolve_params(args, backend)
    x, raw = _load_sequence(args.input, backend, p)
    y = transform(p, x)
    job = {"command": "transform", **job_params, "input": raw}
    return job, {"sequence": y}, y, False


def _cmd_inverse_transform(args, backend):
    p, job_params = _resolve_params(args, backend)
    y, raw = _load_sequence(args.input, backend, p)
    x = inverse_transform(p, y)
    job = {"command": "inverse-transform", **job_params, "input": raw}
    return job, {"sequence": x}, x, False


def _cmd_norm(args, backend):
    p, job_params = _resolve_params(args, backend)
    x, raw = _load_sequence(args.input, backend, p)
    result = space_norm(p, x)
    job = {"command": "norm", **job_params, "input": raw}
    return job, {"norm": result}, None, False


def _cmd_basis(args, backend):
    p, job_params = _resolve_params(args, backend)
    b = basis_vector(p, args.j)
    y = transform(p, b.values)
    job = {"command": "basis", **job_params, "j": args.j}
    result = {"index": b.index, "vector": b.values, "transformed": y}
    return job, result, b.values, False


def _cmd_dual(args, backend):
    p, job_params = _resolve_params(args, backend)
    a, raw = _load_sequence(args.input, backend, p)
    verdict = dual_membership(p, a, args.dual, args.space)
    result = {"dual": args.dual, "space": args.space, "verdict": verdict}
    if a.tail == "zero":
        result["associate_row"] = list(associate_row(p, a).values)
    job = {"command": "dual", **job_params, "dual": args.dual,
           "space": args.space, "input": raw}
    return job, result, None, verdict.status == "indeterminate"


def _cmd_matclass(args, backend):
    p, job_params = _resolve_params(args, backend)
    matrix, raw = _load_matrix(args.matrix, backend)
    report = classify_map(p, matrix, args.source, args.target,
                          trend_window=args.window, tolerance=backend.tolerance)
    job = {"command": "matclass", **job_params, "source": args.source,
           "target": args.target, "matrix": raw}
    result = {
        "source": report.source,
        "target": report.target,
        "conditions": {cond: {"summary": CONDITION_SUMMARY[cond],
                              "estimate": report.estimates[cond],
                              "verdict": report.verdicts[cond]}
                       for cond in report.estimates},
        "overall": report.overall,
        "notes": list(report.notes),
    }
    return job, result, None, report.overall.status == "indeterminate"


def _cmd_chi(args, backend):
    p, job_params = _resolve_params(args, backend)
    if args.atilde:
        matrix, raw = _load_matrix(args.atilde, backend)
        operand = supplied_associate(matrix if not hasattr(matrix, "to_window")
                                     else matrix.to_window())
        source_doc = {"atilde": raw}
    elif args.matrix:
        matrix, raw = _load_matrix(args.matrix, backend)
        operand = matrix
        source_doc = {"matrix": raw}
    else:
        raise ParameterError(["chi requires --matrix or --atilde"])
    estimate = chi_norm(p, operand, args.target, trend_window=args.window,
                        tolerance=backend.tolerance)
    verdict = compactness_verdict(p, operand, args.target, trend_window=args.window,
                                  tolerance=backend.tolerance)
    norm = operator_norm(p, operand, trend_window=args.window, tolerance=backend.tolerance)
    job = {"command": "chi", **job_params, "target": args.target, **source_doc}
    result = {"chi": estimate, "compactness": verdict, "operator_norm": norm}
    indeterminate = estimate.status == "indeterminate" or verdict.status == "indeterminate"
    return job, result, None, indeterminate


def _cmd_selftest(args, backend):
    lines = []
    ok = run_selftest(seed=args.seed, emit=lines.append)
    for line in lines:
        print(line, file=sys.stderr)
    if not ok:
        raise InconsistencyError("selftest failed; see report lines")
    job = {"command": "selftest", "seed": args.seed}
    return job, {"passed": ok, "lines": lines}, None, False


COMMANDS = {
    "transform": _cmd_transform,
    "inverse-transform": _cmd_inverse_transform,
    "norm": _cmd_norm,
    "basis": _cmd_basis,
    "dual": _cmd_dual,
    "matclass": _cmd_matclass,
    "chi": _cmd_chi,
    "selftest": _cmd_selftest,
}

CSV_COMMANDS = ("transform", "inverse-transform", "basis")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="genmeans",
        description="Finite-truncation operator algebra for mean-difference sequence spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, with_params=True):
        if with_params:
            sp.add_argument("--preset", choices=("uv", "euler", "aydin", "lambda", "identity"),
                            help="named parameter family (default: identity)")
            sp.add_argument("--params", help="JSON file with explicit r/s/t windows")
            sp.add_argument("--alpha", help="euler/aydin parameter in (0, 1)")
            sp.add_argument("--u", help="uv preset: 'ones', comma list, or @file.json")
            sp.add_argument("--v", help="uv preset: 'ones', comma list, or @file.json")
            sp.add_argument("--lam", help="lambda preset window: comma list or @file.json")
            sp.add_argument("--n", type=int, default=16, help="truncation order (default 16)")
            sp.add_argument("--m", type=int, default=1, help="difference order (default 1)")
        sp.add_argument("--scalar", choices=("rational", "f64"), default="rational",
                        help="arithmetic backend (default rational)")
        sp.add_argument("--tolerance", type=float, default=None,
                        help="absolute tolerance for float equality and trend checks")
        sp.add_argument("--window", type=int, default=8,
                        help="trend-classification window (default 8)")
        sp.add_argument("--strict", action="store_true",
                        help="exit 3 when the verdict is indeterminate")
        sp.add_argument("--output", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "csv"), default="json",
                        help="report format (csv only for flat sequence payloads)")

    sp = sub.add_parser("transform", help="apply the composite operator to a sequence")
    sp.add_argument("--input", required=True, help="sequence JSON file")
    add_common(sp)

    sp = sub.add_parser("inverse-transform", help="apply the closed-form inverse")
    sp.add_argument("--input", required=True, help="sequence JSON file")
    add_common(sp)

    sp = sub.add_parser("norm", help="sup-norm of the transformed sequence")
    sp.add_argument("--input", required=True, help="sequence JSON file")
    add_common(sp)

    sp = sub.add_parser("basis", help="emit basis vector j with its transform")
    sp.add_argument("--j", type=int, required=True, help="basis index (>= -1)")
    add_common(sp)

    sp = sub.add_parser("dual", help="dual membership verdict for a zero-tail sequence")
    sp.add_argument("--input", required=True, help="sequence JSON file")
    sp.add_argument("--dual", choices=("alpha", "beta", "gamma"), required=True)
    sp.add_argument("--space", choices=("c0", "c", "l_inf"), default="c0")
    add_common(sp)

    sp = sub.add_parser("matclass", help="source/target classification of a matrix")
    sp.add_argument("--matrix", required=True, help="matrix JSON file")
    sp.add_argument("--source", choices=("c0", "c", "l_inf"), required=True)
    sp.add_argument("--target", choices=("c0", "c", "l_inf"), required=True)
    add_common(sp)

    sp = sub.add_parser("chi", help="noncompactness gauge and compactness verdict")
    sp.add_argument("--matrix", help="matrix JSON file (associate computed from it)")
    sp.add_argument("--atilde", help="user-supplied associate matrix JSON file")
    sp.add_argument("--target", choices=("c0", "c", "l_inf"), required=True)
    add_common(sp)

    sp = sub.add_parser("selftest", help="run the seeded rational-backend invariant suite")
    sp.add_argument("--seed", type=int, default=20240601)
    add_common(sp, with_params=False)

    return parser


def _emit(report, payload_seq, args):
    if args.format == "csv":
        if args.command not in CSV_COMMANDS or payload_seq is None:
            raise ParameterError(
                [f"csv output is only available for {', '.join(CSV_COMMANDS)}"])
        text = sequence_to_csv(report, payload_seq)
    else:
        text = json.dumps(report, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    backend = backend_for(getattr(args, "scalar", "rational"),
                          getattr(args, "tolerance", None))
    try:
        job, result, payload_seq, indeterminate = COMMANDS[args.command](args, backend)
        report = make_report(job, backend, result)
        _emit(report, payload_seq, args)
    except (ParameterError, SchemaError, DimensionError, TailError, GuardError,
            SingularTriangleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    if args.strict and indeterminate:
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
