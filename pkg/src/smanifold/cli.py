"""Command-line front end.

Every subcommand emits one envelope::

    {"schema": "smk/1", "tool": ..., "version": ..., "command": ...,
     "input": {...}, "payload": {...}, "verdicts": {...}, "ok": bool}

Rationals are always ``"p/q"`` strings.  Output is deterministic for fixed
input and bounds; wall-clock timing is only added with ``--timing``.
Exit status is 0 iff every verdict holds, 1 if a verdict fails or the input
is rejected by the mathematics (e.g. a non-isolated structure), 2 on usage or
parse errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

import numpy as np

from . import __version__
from . import acceptance
from . import finite_model as fm
from . import torus as tr
from . import weyl as wy
from .errors import NotIsolated, SManifoldError

SCHEMA = "smk/1"
TOOL = "smanifold"


class UsageError(Exception):
    pass


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _vec_json(v) -> list[str]:
    return [str(c) for c in v]


# ---------------------------------------------------------------------------
# subcommands: each returns (input_echo, payload, verdicts)


def cmd_torus(args) -> tuple[dict, dict, dict]:
    if args.catalog:
        if args.catalog not in tr.CATALOG:
            raise UsageError(f"unknown catalog id {args.catalog!r}; choose from {', '.join(tr.CATALOG)}")
        s = tr.CATALOG[args.catalog]
        echo = {"catalog": args.catalog}
    elif args.file:
        doc = _load_json(args.file)
        try:
            s = tr.TorusSStructure.from_json(doc)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"invalid torus structure: {exc}") from exc
        echo = {"file": args.file, "structure": s.to_json()}
    else:
        raise UsageError("torus needs --catalog or --file")
    try:
        x = tr.TorusPoint.parse(args.point) if args.point else tr.TorusPoint.origin(s.dimension)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid --point: {exc}") from exc
    if x.dimension != s.dimension:
        raise UsageError(f"--point has {x.dimension} coordinates, structure has dimension {s.dimension}")
    # --word-bound drives the Γ-family commands; effectiveness of restricted
    # structures uses the module's own (larger) bound
    echo.update(point=x.to_json(), effectiveness_word_bound=tr.DEFAULT_WORD_BOUND)

    axioms = tr.check_axioms(s)
    payload: dict = {"structure": s.to_json(), "axioms": axioms.to_json()}
    verdicts = {"condition2": axioms.condition2, "condition3": axioms.condition3}
    try:
        D = tr.antipodal_subgroup(s)
    except NotIsolated as exc:
        payload["error"] = {"type": "NotIsolated", "message": str(exc)}
        return echo, payload, verdicts
    payload["polars"] = tr.polars(s, x).to_json()
    payload["antipodal_subgroup"] = [d.to_json() for d in D]
    payload["antipodal_number"] = len(D)
    payload["maximal_antipodal_set"] = [p.to_json() for p in tr.maximal_antipodal_set(s, x)]
    if axioms.abelian:
        rep = tr.verify_inequality(s, x)
        payload["inequality"] = rep.to_json()
        verdicts["inequality"] = rep.passed
    else:
        payload["inequality"] = "not applicable: Γ is not abelian"
    return echo, payload, verdicts


def _finite_input(args) -> tuple[dict, fm.GammaTriple]:
    if args.catalog:
        try:
            return {"preset": args.catalog}, fm.triple_preset(args.catalog)
        except ValueError as exc:
            raise UsageError(f"{exc}; choose from {', '.join(fm.TRIPLE_PRESETS)}") from exc
    if args.file:
        doc = _load_json(args.file)
        try:
            return {"file": args.file}, fm.triple_from_json(doc)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"invalid triple file: {exc}") from exc
    raise UsageError("finite needs --catalog PRESET or --file")


def cmd_finite(args) -> tuple[dict, dict, dict]:
    try:
        echo, triple = _finite_input(args)
    except (fm.InvalidGroup, fm.NotAnAutomorphism) as exc:
        echo = {"file": args.file} if args.file else {"preset": args.catalog}
        payload = {"error": {"type": type(exc).__name__, "message": str(exc), "witness": exc.witness}}
        return echo, payload, {"triple_valid": False}
    echo["word_bound"] = args.word_bound
    verdict = fm.validate_triple(triple)
    payload: dict = {"group_order": triple.group.order, "K": list(triple.K), "triple": verdict.to_json()}
    if not verdict.valid:
        return echo, payload, {"triple_valid": False}
    try:
        fam = fm.build_family(triple)
    except fm.IllDefined as exc:
        payload["error"] = {"type": "IllDefined", "message": str(exc), "witness": exc.witness}
        return echo, payload, {"triple_valid": True, "well_defined": False}
    labels = fam.coset_labels()
    gq = fm.verify_gq(fam, args.word_bound)
    axioms = fm.axiom_report(fam, args.word_bound)
    eq = fm.equivariance_check(fam, args.word_bound)
    anti = fm.max_antipodal(fam)
    quandles = []
    for k in fam.gen_index:
        q = fm.verify_quandle(fam.star[k])
        quandles.append({"gamma": k, "table": fam.star[k], "quandle": q.passed,
                         "dihedral": fm.identify_dihedral(fam.star[k])})
    payload.update(
        cosets=labels,
        gamma_order=len(fam.gamma),
        quandles=quandles,
        axioms=axioms,
        polars_at_base=[labels[i] for i in fm.fixed_points(fam, 0)],
        gq=gq.to_json(),
        equivariance=eq.to_json(),
        antipodal=anti.to_json(labels),
    )
    verdicts = {"triple_valid": True, "well_defined": True, "gq": gq.passed,
                "condition3": axioms["condition3"], "homomorphism": axioms["homomorphism"],
                "equivariance": eq.passed}
    return echo, payload, verdicts


def cmd_weyl(args) -> tuple[dict, dict, dict]:
    if args.file:
        doc = _load_json(args.file)
        kind, rank, point = doc.get("type"), doc.get("rank"), doc.get("point")
    else:
        kind, rank = args.type, args.rank
        point = args.point.split(",") if args.point else None
    if kind is None or rank is None or point is None:
        raise UsageError("weyl needs --type, --rank and --point (or --file)")
    try:
        rs = wy.root_system(str(kind), int(rank))
        X = wy.parse_point(point)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc
    if len(X) != rs.ambient_dimension:
        raise UsageError(f"point needs {rs.ambient_dimension} coordinates for {rs.label}")
    if not rs.in_cartan_subalgebra(X):
        raise UsageError(f"point must have coordinate sum 0 for {rs.label}")
    echo = {"type": rs.kind, "rank": rs.rank, "point": _vec_json(X)}
    orbit = wy.weyl_orbit(rs, X)
    number = wy.flag_antipodal_number(rs, X)  # raises ZeroPoint
    stab = wy.stabilizer_subsystem(rs, X)
    classes = wy.polar_classes(rs, X)
    payload = {
        "root_system": rs.label,
        "weyl_group_order": wy.weyl_group_order(rs.kind, rs.rank),
        "orbit": [_vec_json(p) for p in orbit.points],
        "antipodal_number": number,
        "stabilizer": stab.to_json(),
        "polar_classes": [c.to_json() for c in classes],
        "pole_count": sum(c.is_pole for c in classes),
    }
    verdicts = {
        "orbit_stabilizer": len(orbit) * stab.weyl_order == payload["weyl_group_order"],
        "classes_partition_orbit": sum(len(c.points) for c in classes) == len(orbit),
    }
    return echo, payload, verdicts


def cmd_quandle_check(args) -> tuple[dict, dict, dict]:
    """Quandle/GQ axioms for a raw table, a finite preset or a torus catalog structure."""
    if args.catalog and args.catalog in tr.CATALOG:
        s = tr.CATALOG[args.catalog]
        bound = min(args.denominator_bound, 6)
        pts = tr.rational_grid(s.dimension, bound)
        rng = random.Random(0)
        triples = [tuple(rng.choice(pts) for _ in range(3)) for _ in range(200)]
        rep = tr.verify_gq(s, pts, triples, args.word_bound)
        echo = {"catalog": args.catalog, "denominator_bound": bound, "word_bound": args.word_bound,
                "sampled_triples": len(triples), "seed": 0}
        return echo, {"gq": rep.to_json()}, {"gq": rep.passed}
    if args.file:
        doc = _load_json(args.file)
        if "table" in doc:
            table = np.asarray(doc["table"], dtype=np.int64)
            if table.ndim != 2 or table.shape[0] != table.shape[1] or table.min(initial=0) < 0 \
                    or table.max(initial=0) >= table.shape[0]:
                raise UsageError("table must be a square array with entries in range")
            rep = fm.verify_quandle(table)
            return ({"file": args.file},
                    {"quandle": rep.to_json(), "dihedral": fm.identify_dihedral(table) if rep.passed else None},
                    dict(rep.verdicts))
    echo, payload, verdicts = cmd_finite(args)
    keep = {k: payload[k] for k in ("quandles", "gq", "error") if k in payload}
    verdicts = {k: v for k, v in verdicts.items() if k in ("triple_valid", "well_defined", "gq")}
    for q in keep.get("quandles", []):
        verdicts[f"quandle_gamma{q['gamma']}"] = q["quandle"]
    return echo, keep, verdicts


def cmd_verify_all(args) -> tuple[dict, dict, dict]:
    results = acceptance.run_all(args.denominator_bound, args.word_bound)
    echo = {"denominator_bound": args.denominator_bound, "word_bound": args.word_bound}
    payload = {"criteria": [r.to_json(timing=args.timing) for r in results]}
    verdicts = {f"criterion_{r.number}": r.passed for r in results}
    if args.timing:
        verdicts.update({f"criterion_{r.number}_runtime": r.within_budget for r in results})
    return echo, payload, verdicts


COMMANDS = {
    "torus": cmd_torus,
    "finite": cmd_finite,
    "weyl": cmd_weyl,
    "quandle-check": cmd_quandle_check,
    "verify-all": cmd_verify_all,
}


# ---------------------------------------------------------------------------
# output


def _flatten(prefix: str, obj: Any, rows: list):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, json.dumps(obj) if isinstance(obj, list) else obj))


def render(envelope: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(envelope, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["section", "key", "value"])
        for k, v in envelope["verdicts"].items():
            w.writerow(["verdict", k, "pass" if v else "fail"])
        rows: list = []
        _flatten("", envelope["payload"], rows)
        for k, v in rows:
            w.writerow(["payload", k, v])
        w.writerow(["summary", "ok", envelope["ok"]])
        return buf.getvalue()
    lines = [f"{TOOL} {envelope['version']}  {envelope['command']}"]
    for k, v in envelope["input"].items():
        lines.append(f"  input {k}: {v}")
    payload = envelope["payload"]
    for key in ("antipodal_number", "antipodal_subgroup", "orbit", "pole_count", "antipodal", "dihedral", "error"):
        if key in payload:
            lines.append(f"  {key}: {json.dumps(payload[key], ensure_ascii=False)}")
    if "polars" in payload:
        for c in payload["polars"]["components"]:
            kind = "pole" if c["pole"] else f"{c['dimension']}-dim subtorus"
            lines.append(f"  polar: {kind} through ({','.join(c['base'])})")
    for q in payload.get("quandles", []):
        ident = f", isomorphic to {q['dihedral']}" if q["dihedral"] else ""
        lines.append(f"  quandle for gamma #{q['gamma']}: {'valid' if q['quandle'] else 'INVALID'}{ident}")
    if "criteria" in payload:
        for c in payload["criteria"]:
            lines.append(f"  [{'PASS' if c['passed'] else 'FAIL'}] criterion {c['criterion']}: {c['name']}")
    for k, v in envelope["verdicts"].items():
        lines.append(f"  verdict {k}: {'pass' if v else 'FAIL'}")
    lines.append(f"  ok: {envelope['ok']}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--catalog", help="catalog id (torus-1..torus-8) or finite preset name")
    src.add_argument("--file", help="JSON input file")
    common.add_argument("--point", help='comma-separated rationals, e.g. "1/2,1/3"')
    common.add_argument("--denominator-bound", type=_positive, default=12)
    common.add_argument("--word-bound", type=_positive, default=3)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings (breaks byte-identity)")

    parser = argparse.ArgumentParser(prog=TOOL, description="Exact computations for generalized s-manifolds.")
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("torus", parents=[common], help="flat-torus structures: axioms, polars, antipodal sets")
    sub.add_parser("finite", parents=[common], help="finite Γ-symmetric triples and their quandle families")
    w = sub.add_parser("weyl", parents=[common], help="Weyl orbits and polar classes in a Cartan subalgebra")
    w.add_argument("--type", help="A, B, C, D, E, F or G")
    w.add_argument("--rank", type=int)
    sub.add_parser("quandle-check", parents=[common], help="quandle / Γ-family axioms")
    sub.add_parser("verify-all", parents=[common], help="run the acceptance suite")
    return parser


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("bound must be >= 1")
    return n


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        echo, payload, verdicts = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"{TOOL}: error: {exc}", file=sys.stderr)
        return 2
    except SManifoldError as exc:
        echo = {k: v for k, v in vars(args).items() if v is not None and k not in ("command", "format", "out", "timing")}
        payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        verdicts = {"input_accepted": False}
    envelope = {
        "schema": SCHEMA,
        "tool": TOOL,
        "version": __version__,
        "command": args.command,
        "input": _jsonable(echo),
        "payload": _jsonable(payload),
        "verdicts": {k: bool(v) for k, v in verdicts.items()},
    }
    envelope["ok"] = all(envelope["verdicts"].values())
    if args.timing:
        envelope["timing"] = {"elapsed_s": round(time.perf_counter() - t0, 4)}
    text = render(envelope, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if "error" in envelope["payload"]:
        print(f"{TOOL}: {envelope['payload']['error']['type']}: {envelope['payload']['error']['message']}",
              file=sys.stderr)
    return 0 if envelope["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
