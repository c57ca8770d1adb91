"""Run the Witt/KO pipeline and the face-ring cross-check over a corpus.

Writes one JSON line per instance and prints a summary table.
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from kotoric.instances import corpus
from kotoric.ko import assemble_ko, classify, free_ranks, oracle_crosscheck, witt_groups


@dataclass
class CorpusConfig:
    seed: int = 2024
    random_count: int = 20
    workers: int = 1
    out: Path | None = None


def run(cfg: CorpusConfig) -> list[dict]:
    rows = []
    for inst in corpus(cfg.seed, cfg.random_count):
        t0 = time.perf_counter()
        w = witt_groups(inst, workers=cfg.workers)
        c = classify(inst, witt=w)
        ko = assemble_ko(w.w, *free_ranks(inst))
        o = oracle_crosscheck(inst, witt=w)
        rows.append({
            "name": inst.name, "n": inst.n, "m": inst.m, "w": list(w.w),
            "ko": [ko.group(j) for j in range(8)], "s_type": c.s_type, "m_type": c.m_type,
            "oracle_ok": o.ok, "halving_ok": o.halving.ok,
            "seconds": round(time.perf_counter() - t0, 4),
        })
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--random-count", type=int, default=20)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=Path)
    a = ap.parse_args()
    cfg = CorpusConfig(a.seed, a.random_count, a.workers, a.out)
    rows = run(cfg)
    if cfg.out:
        cfg.out.write_text("".join(json.dumps(r) + "\n" for r in rows))
    print(f"{'name':<22} {'n':>2} {'m':>3}  {'w':<14} S     M     oracle")
    for r in rows:
        print(f"{r['name']:<22} {r['n']:>2} {r['m']:>3}  {str(r['w']):<14} "
              f"{str(r['s_type']).lower():<5} {str(r['m_type']).lower():<5} {'ok' if r['oracle_ok'] else 'MISMATCH'}")
    bad = sum(not (r["oracle_ok"] and r["halving_ok"]) for r in rows)
    print(f"\n{len(rows)} instances, {bad} cross-check failures, {sum(r['seconds'] for r in rows):.2f} s")


if __name__ == "__main__":
    main()
