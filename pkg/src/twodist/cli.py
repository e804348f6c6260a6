"""Command line front end.

Every verb reads UTF-8 JSON, writes one deterministic JSON document and
exits with 0 (ok), 2 (mathematical violation) or 1 (usage or input error).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .constructions import (
    complement_transform,
    equiangular_lift,
    equiangular_translate,
    etf_neighbor_subset,
    etf_projection,
    lift,
    naimark,
    project_to_balanced,
    translate,
)
from .designs import (
    LinesBoundsTable,
    QSDParams,
    design_nonexistence,
    detect_intersection_numbers,
    equiangular_pipeline,
    qsd_necessary_conditions,
    qsd_to_frame_basis,
    qsd_to_frame_simplex,
    validate_design,
)
from .errors import (
    IdentityViolation,
    MixedRadicands,
    NotPSD,
    NotSquare,
    NotSymmetric,
    NotUnitDiagonal,
    ParseError,
    TwoDistanceError,
)
from .gram import analyze
from .matrix import GramMatrix, SymmetricMatrix
from .realize import frame_operator_check, realize
from .scalar import qs_parse

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2

# problems with the input itself rather than with the mathematics it describes
INPUT_ERRORS = (ParseError, NotSquare, NotSymmetric, NotUnitDiagonal, MixedRadicands, IdentityViolation)

TRANSFORM_OPS = {
    # name: number of arguments
    "naimark": 0,
    "project": 0,
    "complement": 0,
    "translate": 1,
    "lift": 1,
    "equilift": 0,
    "equitranslate": (0, 1),
    "etf-neighbor": 1,
    "etf-project": 1,
}


class InputError(Exception):
    pass


# -- JSON ---------------------------------------------------------------------

def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"cannot serialise {obj}")
        return format(obj, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        # keep rows of scalars on one line
        if all(not isinstance(x, (dict, list, tuple)) for x in obj):
            return "[" + ", ".join(_encode(x, indent, level + 1) for x in obj) + "]"
        items = [pad + _encode(x, indent, level + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON; floats carry 17 significant digits."""
    return _encode(obj, 2, 0) + "\n"


def read_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def gram_to_json(g: SymmetricMatrix) -> dict:
    return {"m": g.m, "d": g.d, "rows": g.to_strings()}


def _require(data, key, kind):
    if not isinstance(data, dict) or key not in data:
        raise InputError(f"missing field {key!r}")
    value = data[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        raise InputError(f"field {key!r} has the wrong type")
    return value


def gram_from_json(data) -> GramMatrix:
    """Parse Gram JSON; the output of ``construct`` or ``transform`` is accepted too."""
    if isinstance(data, dict) and "rows" not in data and isinstance(data.get("gram"), dict):
        data = data["gram"]
    m = _require(data, "m", int)
    rows = _require(data, "rows", list)
    if len(rows) != m:
        raise InputError(f"m = {m} but {len(rows)} rows given")
    parsed = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or not all(isinstance(x, str) for x in row):
            raise InputError(f"row {i} must be a list of scalar strings")
        parsed.append([qs_parse(x) for x in row])
    g = GramMatrix(parsed)
    if "d" in data and data["d"] != g.d and g.d:
        raise InputError(f"declared d = {data['d']} but entries use sqrt({g.d})")
    return g


# -- verbs ----------------------------------------------------------------------

def _bounds(args) -> LinesBoundsTable:
    return LinesBoundsTable.load(args.bounds) if getattr(args, "bounds", None) else LinesBoundsTable.default()


def _result(status: str, payload: dict, diagnostics=(), table=None) -> dict:
    out = {
        "status": status,
        "artifact_version": __version__,
        "bounds_table_version": (table or LinesBoundsTable.default()).version,
    }
    out.update(payload)
    out["diagnostics"] = list(diagnostics)
    return out


def _certified(g: GramMatrix, extra=None, diagnostics=()):
    cert = analyze(g)
    payload = dict(extra or {})
    payload["gram"] = gram_to_json(g)
    payload["certificate"] = cert.to_dict()
    diags = list(diagnostics) + [f"{c.name} failed: {c.detail}" for c in cert.violations]
    return _result("ok" if cert.ok else "violation", payload, diags)


def cmd_verify(args) -> dict:
    g = gram_from_json(read_json(args.gram))
    cert = analyze(g)
    diags = [f"{c.name} failed: {c.detail}" for c in cert.violations]
    return _result("ok" if cert.ok else "violation", {"certificate": cert.to_dict()}, diags, _bounds(args))


def cmd_construct(args) -> dict:
    data = read_json(args.design)
    v = _require(data, "v", int)
    blocks = _require(data, "blocks", list)
    try:
        design = validate_design(v, blocks)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, TwoDistanceError):
            raise
        raise InputError(f"bad design: {exc}") from None
    q = detect_intersection_numbers(design)
    build = qsd_to_frame_simplex if args.variant == "simplex" else qsd_to_frame_basis
    g = build(q, design)
    extra = {"params": q.to_dict(), "variant": args.variant}
    return _certified(g, extra)


def _index(text: str, m: int) -> int:
    try:
        i = int(text)
    except ValueError:
        raise InputError(f"index must be an integer, got {text!r}") from None
    if not 1 <= i <= m:
        raise InputError(f"index {i} outside 1..{m}")
    return i - 1


def cmd_transform(args) -> dict:
    op, *params = args.op
    if op not in TRANSFORM_OPS:
        raise InputError(f"unknown op {op!r}; choose from {', '.join(TRANSFORM_OPS)}")
    want = TRANSFORM_OPS[op]
    allowed = want if isinstance(want, tuple) else (want,)
    if len(params) not in allowed:
        raise InputError(f"op {op} takes {' or '.join(map(str, allowed))} argument(s)")
    g = gram_from_json(read_json(args.gram))
    record = {"op": op}
    diags = []
    if op == "naimark":
        out = naimark(g)
    elif op == "project":
        out = project_to_balanced(g)
    elif op == "translate":
        t = qs_parse(params[0])
        record["t"] = str(t)
        out = translate(g, t)
    elif op == "lift":
        t2 = qs_parse(params[0])
        record["t_squared"] = str(t2)
        out = lift(g, t2)
    elif op == "equilift":
        out, gamma = equiangular_lift(g)
        record["gamma"] = str(gamma)
        diags.append(f"{g.m} equiangular lines at angle {gamma} in R^{g.rank + 1}")
    elif op == "equitranslate":
        root = int(params[0]) if params else 0
        if root not in (0, 1):
            raise InputError("root must be 0 or 1")
        out, gamma, t = equiangular_translate(g, root)
        record.update(t=str(t), gamma=str(gamma), root=root)
        diags.append(f"{g.m} equiangular lines at angle {gamma} in R^{g.rank}")
    elif op == "etf-neighbor":
        pivot = _index(params[0], g.m)
        out, _ = etf_neighbor_subset(g, pivot)
        record["pivot"] = pivot + 1
    elif op == "etf-project":
        pivot = _index(params[0], g.m)
        out = etf_projection(g, pivot)
        record["pivot"] = pivot + 1
    else:  # complement
        res = complement_transform(g)
        record.update(gamma=str(res.gamma), is_tight_result=res.is_tight_result)
        try:
            out = res.as_gram()
        except NotPSD as exc:
            diags.append(f"complement candidate is not a Gram matrix: {exc}")
            payload = {"transform": record, "gram": gram_to_json(res.matrix), "certificate": None}
            return _result("ok", payload, diags)
    return _certified(out, {"transform": record}, diags)


def _design_check_one(q: QSDParams, table: LinesBoundsTable) -> dict:
    checks = qsd_necessary_conditions(q)
    pipe = equiangular_pipeline(q, table)
    certs = design_nonexistence(q, table)
    return {
        "params": q.to_dict(),
        "checks": [c.to_dict() for c in checks],
        "lines_claim": pipe.to_dict()["lines_claim"],
        "pipeline_notes": list(pipe.notes),
        "nonexistence": [c.to_dict() for c in certs],
    }


def cmd_design_check(args) -> dict:
    table = _bounds(args)
    data = read_json(args.params)
    entries = data if isinstance(data, list) else [data]
    results = []
    for entry in entries:
        try:
            q = QSDParams.from_dict(entry)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad parameters {entry!r}: {exc}") from None
        results.append(_design_check_one(q, table))
    failed = any(r["nonexistence"] for r in results)
    payload = {"results": results} if isinstance(data, list) else results[0]
    return _result("violation" if failed else "ok", payload, (), table)


def cmd_realize(args) -> dict:
    g = gram_from_json(read_json(args.gram))
    frame = realize(g, args.tol)
    report = frame_operator_check(frame)
    payload = {
        "frame": frame.to_dict(),
        "round_trip": {"max_deviation": frame.deviation, "tolerance": args.tol},
        "frame_operator": report.to_dict(),
    }
    return _result("ok", payload)


# -- entry point --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twodist", description="Exact two-distance frame toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("-o", "--output", help="write JSON here instead of stdout")
        return sp

    sp = common(sub.add_parser("verify", help="certify a Gram matrix"))
    sp.add_argument("gram")
    sp.add_argument("--bounds", help="equiangular lines bounds table")
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("construct", help="frame from a quasi-symmetric design"))
    sp.add_argument("design")
    sp.add_argument("--variant", choices=("basis", "simplex"), default="simplex")
    sp.set_defaults(func=cmd_construct)

    sp = common(sub.add_parser("transform", help="apply a Gram-level transform"))
    sp.add_argument("gram")
    sp.add_argument("--op", nargs="+", required=True, metavar="OP",
                    help="op name followed by its argument, e.g. --op translate 1/2")
    sp.set_defaults(func=cmd_transform)

    sp = common(sub.add_parser("design-check", help="necessary conditions and line bounds"))
    sp.add_argument("params")
    sp.add_argument("--bounds", help="equiangular lines bounds table")
    sp.set_defaults(func=cmd_design_check)

    sp = common(sub.add_parser("realize", help="floating-point coordinates"))
    sp.add_argument("gram")
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(func=cmd_realize)
    return p


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (InputError, *INPUT_ERRORS) as exc:
        code, status = EXIT_ERROR, "error"
        result = _result(status, {}, [f"{type(exc).__name__}: {exc}"])
    except TwoDistanceError as exc:
        code, status = EXIT_VIOLATION, "violation"
        result = _result(status, {}, [f"{type(exc).__name__}: {exc}"])
    else:
        code = {"ok": EXIT_OK, "violation": EXIT_VIOLATION}[result["status"]]
    try:
        _emit(dumps(result), getattr(args, "output", None))
    except OSError as exc:
        print(f"twodist: cannot write output: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return code


if __name__ == "__main__":
    sys.exit(main())
