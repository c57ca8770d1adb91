"""Write the standard instance files used by the CLI examples and tests."""

from __future__ import annotations

import argparse
from pathlib import Path

from kotoric.instances import complex_projective_space, cp1_power, maximal_simplex_wedge
from kotoric.io import write_instance


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=Path(__file__).resolve().parent.parent / "fixtures", type=Path)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    instances = {f"cp{n}": complex_projective_space(n) for n in range(1, 7)}
    instances |= {f"cp1_pow{n}": cp1_power(n) for n in range(2, 5)}
    instances |= {f"cp{n}_wedged": maximal_simplex_wedge(n) for n in (2, 3)}
    for stem, inst in instances.items():
        write_instance(inst, args.out / f"{stem}.json")
        print(f"wrote {stem}.json  (n={inst.n}, m={inst.m})")


if __name__ == "__main__":
    main()
