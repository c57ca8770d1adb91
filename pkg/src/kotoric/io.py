"""JSON instance files and analysis reports.

Instance file: one UTF-8 JSON object with keys ``name, n, m,
maximal_faces, lambda`` (vertices 1-indexed).  Any other top-level key is
kept under ``metadata``.  Wedge provenance is stored in
``metadata["wedge_provenance"]`` as ``[[new, source], ...]``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .charmatrix import CharMatrix, ToricInstance, validate
from .complex import SimplicialComplex
from .errors import InputError, ValidationError
from .ko import Classification, KOTable, WittGroups

SCHEMA_VERSION = 1
REQUIRED_KEYS = ("name", "n", "m", "maximal_faces", "lambda")


def instance_from_dict(doc: dict[str, Any]) -> ToricInstance:
    """Build and validate an instance; parse problems raise InputError,
    semantic problems raise ValidationError carrying the full report."""
    if not isinstance(doc, dict):
        raise InputError("instance file must contain a JSON object")
    missing = [k for k in REQUIRED_KEYS if k not in doc]
    if missing:
        raise InputError(f"missing keys: {', '.join(missing)}")
    name, n, m = doc["name"], doc["n"], doc["m"]
    faces, lam = doc["maximal_faces"], doc["lambda"]
    if not isinstance(name, str):
        raise InputError("name must be a string")
    if not (isinstance(n, int) and isinstance(m, int)) or n < 1 or m < 1:
        raise InputError("n and m must be positive integers")
    if not isinstance(faces, list) or not all(
        isinstance(f, list) and all(isinstance(v, int) for v in f) for f in faces
    ):
        raise InputError("maximal_faces must be a list of integer lists")
    if not isinstance(lam, list) or not all(
        isinstance(r, list) and all(isinstance(x, int) for x in r) for r in lam
    ):
        raise InputError("lambda must be a list of integer rows")
    if len(lam) != n or any(len(r) != m for r in lam):
        raise InputError(f"lambda must be {n} x {m}")
    if any(len(set(f)) != len(f) for f in faces):
        raise InputError("a maximal face repeats a vertex")
    K = SimplicialComplex(m, tuple(tuple(f) for f in faces))
    lam_m = CharMatrix.from_lists(lam)
    metadata = dict(doc.get("metadata", {}))
    for k, v in doc.items():
        if k not in REQUIRED_KEYS and k != "metadata":
            metadata[k] = v
    prov = tuple((int(a), int(b)) for a, b in metadata.pop("wedge_provenance", []))
    report = validate(K, lam_m, "toric")
    if not report.ok:
        raise ValidationError(f"instance {name!r} fails validation", report)
    return ToricInstance(K, lam_m, name, prov, tuple(sorted(metadata.items())))


def instance_to_dict(inst: ToricInstance) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "name": inst.name,
        "n": inst.n,
        "m": inst.m,
        "maximal_faces": [list(f) for f in inst.complex.maximal_faces],
        "lambda": inst.lam.to_lists(),
    }
    meta = dict(inst.metadata)
    if inst.provenance:
        meta["wedge_provenance"] = [list(p) for p in inst.provenance]
    if meta:
        doc["metadata"] = meta
    return doc


def parse_instance(path: str | Path) -> ToricInstance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    return instance_from_dict(doc)


_INT_LIST = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)\s*\]")


def dumps_instance(inst: ToricInstance) -> str:
    """Indented JSON with each face and each lambda row on one line."""
    text = json.dumps(instance_to_dict(inst), indent=2)
    return _INT_LIST.sub(lambda mt: "[" + ", ".join(x.strip() for x in mt.group(1).split(",")) + "]", text)


def write_instance(inst: ToricInstance, path: str | Path) -> None:
    Path(path).write_text(dumps_instance(inst) + "\n", encoding="utf-8")


@dataclass
class Report:
    instance: dict[str, Any]
    witt: WittGroups | None = None
    ko_unreduced: KOTable | None = None
    ko_reduced: KOTable | None = None
    classification: Classification | None = None
    oracle: dict[str, Any] | None = None
    decomposition: dict[str, Any] | None = None
    validation: dict[str, Any] | None = None
    timing_ms: float = 0.0
    extra: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "instance": self.instance}
        if self.validation is not None:
            out["validation"] = self.validation
        if self.witt is not None:
            out["witt"] = self.witt.to_dict()
        if self.ko_unreduced is not None:
            out["ko_unreduced"] = self.ko_unreduced.to_list()
        if self.ko_reduced is not None:
            out["ko_reduced"] = self.ko_reduced.to_list()
        if self.classification is not None:
            out["classification"] = self.classification.to_dict()
        if self.decomposition is not None:
            out["decomposition"] = self.decomposition
        if self.oracle is not None:
            out["oracle"] = self.oracle
        out.update(self.extra)
        out["timing_ms"] = self.timing_ms
        return out

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Report":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise InputError(f"unsupported report schema {d.get('schema_version')!r}")
        known = {"schema_version", "instance", "validation", "witt", "ko_unreduced", "ko_reduced",
                 "classification", "decomposition", "oracle", "timing_ms"}
        return cls(
            instance=d["instance"],
            witt=WittGroups.from_dict(d["witt"]) if "witt" in d else None,
            ko_unreduced=KOTable.from_list(d["ko_unreduced"], False) if "ko_unreduced" in d else None,
            ko_reduced=KOTable.from_list(d["ko_reduced"], True) if "ko_reduced" in d else None,
            classification=Classification.from_dict(d["classification"]) if "classification" in d else None,
            oracle=d.get("oracle"),
            decomposition=d.get("decomposition"),
            validation=d.get("validation"),
            timing_ms=d.get("timing_ms", 0.0),
            extra={k: v for k, v in d.items() if k not in known},
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))


def render_text(report: Report) -> str:
    """Human-readable rendering built from the same numbers as the JSON."""
    inst = report.instance
    lines = [f"instance: {inst['name']}  (n={inst['n']}, m={inst['m']})"]
    if report.validation is not None:
        v = report.validation
        lines.append(f"validation ({v['mode']}): {'ok' if v['ok'] else 'FAILED'}")
        lines += [f"  problem: {p}" for p in v["problems"]]
        lines += [f"  face {f['face']}: det {f['det']}" for f in v["failing_faces"]]
    if report.witt is not None:
        w = report.witt
        lines.append("witt: " + "  ".join(f"W^{i} = (Z/2)^{w.w[i]}" for i in range(4)))
        lines.append(f"  subcomplexes examined: {w.subcomplex_count}")
        if w.attribution:
            lines.append("  omega          degree  dim  -> W^t")
            for c in w.attribution:
                lines.append(f"  {c.omega:<14} {c.degree:>6}  {c.dim:>3}  -> W^{c.target}")
    for label, table in (("KO (unreduced)", report.ko_unreduced), ("KO (reduced)", report.ko_reduced)):
        if table is not None:
            lines.append(f"{label}:")
            lines += [f"  KO^{j} = {table.group(j)}" for j in range(8)]
    if report.classification is not None:
        c = report.classification
        lines.append(f"s_type: {str(c.s_type).lower()}")
        lines.append(f"  witness: {json.dumps(c.s_witness)}")
        lines.append(f"m_type: {str(c.m_type).lower()}")
        lines.append(f"  witness: {json.dumps(c.m_witness)}")
    if report.decomposition is not None:
        d = report.decomposition
        lines.append("A(1) split of H*(M; Z/2):")
        lines.append("  degree  dim  trivial  pairs-from")
        for deg in sorted(set(d["dims"]) | set(d["s"]) | set(d["m_pairs"]), key=int):
            lines.append(f"  {deg:>6}  {d['dims'].get(deg, 0):>3}  {d['s'].get(deg, 0):>7}  {d['m_pairs'].get(deg, 0):>10}")
    if report.oracle is not None:
        o = report.oracle
        lines.append(f"oracle: {'pass' if o['ok'] else 'MISMATCH'}")
        keys = sorted(set(o["sq2_margolis"]) | set(o["subcomplex_sums"]), key=int)
        for i in keys:
            lines.append(f"  i={i}: trivial summands in degree {2 * int(i)} = {o['sq2_margolis'].get(i, 0)}, "
                         f"subcomplex sum = {o['subcomplex_sums'].get(i, 0)}")
        lines.append(f"  degree halving: {'pass' if o['degree_halving']['ok'] else 'FAIL'}")
        lines += [f"  mismatch: {msg}" for msg in o["mismatches"]]
    for k, v in report.extra.items():
        lines.append(f"{k}: {json.dumps(v)}")
    lines.append(f"timing_ms: {report.timing_ms:.1f}")
    return "\n".join(lines)
