"""KO-groups of toric manifolds via Witt counts over full subcomplexes."""

from __future__ import annotations

from .charmatrix import CharMatrix, ToricInstance, iterated_wedge, validate
from .complex import SimplicialComplex
from .f2 import F2Matrix, F2Vector
from .ko import Classification, KOTable, WittGroups, classify, ko_table, oracle_crosscheck, witt_groups

__all__ = [
    "CharMatrix", "ToricInstance", "iterated_wedge", "validate", "SimplicialComplex",
    "F2Matrix", "F2Vector", "Classification", "KOTable", "WittGroups", "classify",
    "ko_table", "oracle_crosscheck", "witt_groups",
]
