"""Command line interface.

Exit codes: 0 success, 2 parse error, 3 validation failure, 4 resource
cap exceeded, 5 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from pathlib import Path
from typing import Callable

from .charmatrix import iterated_wedge, validate
from .errors import InputError, KotoricError, OracleMismatch, ValidationError
from .f2 import DEFAULT_RANK_CAP
from .facering import a1_decomposition, quotient_presentation
from .io import Report, instance_to_dict, parse_instance, render_text, write_instance
from .ko import assemble_ko, classify, free_ranks, oracle_crosscheck, witt_groups


def _keys(d: dict[int, int]) -> dict[str, int]:
    return {str(k): v for k, v in sorted(d.items())}


def _base_report(inst) -> Report:
    return Report(instance=instance_to_dict(inst))


def cmd_validate(args) -> tuple[Report, int]:
    inst = parse_instance(args.instance)
    rep = _base_report(inst)
    rep.validation = validate(inst.complex, inst.lam, "toric").to_dict()
    rep.validation["small_cover_ok"] = validate(inst.complex, inst.lam, "small-cover").ok
    return rep, 0


def cmd_witt(args) -> tuple[Report, int]:
    inst = parse_instance(args.instance)
    rep = _base_report(inst)
    rep.witt = witt_groups(inst, args.rank_cap, args.threads)
    return rep, 0


def cmd_ko(args) -> tuple[Report, int]:
    inst = parse_instance(args.instance)
    rep = _base_report(inst)
    rep.witt = witt_groups(inst, args.rank_cap, args.threads)
    n0, n2 = free_ranks(inst)
    rep.ko_unreduced = assemble_ko(rep.witt.w, n0, n2, reduced=False)
    rep.ko_reduced = assemble_ko(rep.witt.w, n0, n2, reduced=True)
    rep.classification = classify(inst, args.rank_cap, args.threads, witt=rep.witt)
    return rep, 0


def cmd_classify(args) -> tuple[Report, int]:
    inst = parse_instance(args.instance)
    rep = _base_report(inst)
    rep.witt = witt_groups(inst, args.rank_cap, args.threads)
    rep.classification = classify(inst, args.rank_cap, args.threads, witt=rep.witt)
    return rep, 0


def cmd_decompose(args) -> tuple[Report, int]:
    inst = parse_instance(args.instance)
    rep = _base_report(inst)
    dec = a1_decomposition(quotient_presentation(inst.complex, inst.lam2, 2))
    rep.decomposition = {"dims": _keys(dec.dims), "s": _keys(dec.s), "m_pairs": _keys(dec.m_pairs)}
    return rep, 0


def cmd_oracle(args) -> tuple[Report, int]:
    inst = parse_instance(args.instance)
    rep = _base_report(inst)
    rep.witt = witt_groups(inst, args.rank_cap, args.threads)
    result = oracle_crosscheck(inst, witt=rep.witt)
    rep.oracle = result.to_dict()
    return rep, 0 if result.ok else OracleMismatch.exit_code


def cmd_wedge(args) -> tuple[Report, int]:
    inst = parse_instance(args.instance)
    try:
        vertices = tuple(int(x) for x in args.vertices.split(",") if x.strip())
    except ValueError as exc:
        raise InputError(f"--vertices must be comma-separated integers: {args.vertices}") from exc
    wedged = iterated_wedge(inst, vertices)
    if args.out:
        write_instance(wedged, args.out)
    rep = Report(instance=instance_to_dict(wedged))
    rep.extra["wedged_from"] = inst.name
    rep.extra["wedge_vertices"] = list(vertices)
    if args.out:
        rep.extra["written_to"] = str(args.out)
    return rep, 0


def cmd_batch(args) -> tuple[dict, int]:
    rows = []
    worst = 0
    for path in sorted(Path(args.directory).glob("*.json")):
        row = {"file": path.name}
        try:
            inst = parse_instance(path)
            w = witt_groups(inst, args.rank_cap, args.threads)
            c = classify(inst, args.rank_cap, args.threads, witt=w)
            n0, n2 = free_ranks(inst)
            ko = assemble_ko(w.w, n0, n2)
            row.update(name=inst.name, n=inst.n, m=inst.m, status=0, w=list(w.w),
                       ko=[ko.group(j) for j in range(8)], s_type=c.s_type, m_type=c.m_type)
            if args.oracle:
                o = oracle_crosscheck(inst, witt=w)
                row["oracle_ok"] = o.ok
                if not o.ok:
                    row["status"] = OracleMismatch.exit_code
        except KotoricError as exc:
            row.update(status=exc.exit_code, error=str(exc))
        worst = worst or row["status"]
        rows.append(row)
    return {"schema_version": 1, "batch": rows}, worst


def _batch_text(doc: dict) -> str:
    lines = [f"{'file':<28} {'n':>2} {'m':>3}  {'W^0..W^3':<14} {'S':<5} {'M':<5} status"]
    for r in doc["batch"]:
        if "w" in r:
            lines.append(f"{r['file']:<28} {r['n']:>2} {r['m']:>3}  {str(r['w']):<14} "
                         f"{str(r['s_type']).lower():<5} {str(r['m_type']).lower():<5} {r['status']}")
        else:
            lines.append(f"{r['file']:<28} {'':>2} {'':>3}  {'':<14} {'':<5} {'':<5} {r['status']} {r['error']}")
    return "\n".join(lines)


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate,
    "witt": cmd_witt,
    "ko": cmd_ko,
    "classify": cmd_classify,
    "decompose": cmd_decompose,
    "oracle": cmd_oracle,
    "wedge": cmd_wedge,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--threads", type=int, default=1, help="worker processes; 0 = one per CPU")
    common.add_argument("--rank-cap", type=int, default=DEFAULT_RANK_CAP,
                        help="largest GF(2) rank whose row space may be enumerated")
    parser = argparse.ArgumentParser(prog="kotoric", description="KO-groups of toric manifolds")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("validate", "witt", "classify", "decompose", "oracle"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("instance")
    p = sub.add_parser("ko", parents=[common])
    p.add_argument("instance")
    p.add_argument("--reduced", action="store_true", help="show the reduced table in text output")
    p = sub.add_parser("wedge", parents=[common])
    p.add_argument("instance")
    p.add_argument("--vertices", required=True, help="comma-separated original vertex labels")
    p.add_argument("--out", help="write the wedged instance to this file")
    p = sub.add_parser("batch", parents=[common])
    p.add_argument("directory")
    p.add_argument("--oracle", action="store_true", help="also run the face-ring cross-check")
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    start = time.perf_counter()
    try:
        if args.command == "batch":
            doc, code = cmd_batch(args)
            out.write((json.dumps(doc, indent=2) if args.format == "json" else _batch_text(doc)) + "\n")
            return code
        report, code = COMMANDS[args.command](args)
    except ValidationError as exc:
        detail = exc.report.to_dict() if exc.report is not None else None
        _error(out, args.format, str(exc), exc.exit_code, detail)
        return exc.exit_code
    except KotoricError as exc:
        _error(out, args.format, str(exc), exc.exit_code)
        return exc.exit_code
    report.timing_ms = round((time.perf_counter() - start) * 1000, 3)
    if args.format == "json":
        out.write(report.to_json() + "\n")
    else:
        if args.command == "ko":
            hide = "ko_unreduced" if args.reduced else "ko_reduced"
            report = replace(report, **{hide: None})
        out.write(render_text(report) + "\n")
    return code


def _error(out, fmt: str, message: str, code: int, detail=None) -> None:
    if fmt == "json":
        doc = {"error": message, "exit_code": code}
        if detail is not None:
            doc["validation"] = detail
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(f"error: {message}\n")
        if detail is not None:
            for p in detail["problems"]:
                out.write(f"  problem: {p}\n")
            for f in detail["failing_faces"]:
                out.write(f"  face {f['face']}: det {f['det']}\n")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
