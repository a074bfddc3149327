"""Full pipeline: lattice with isometry -> torsion, pairing matrix, verdicts.

The claims the pairing is supposed to satisfy are checked on every run and
collected in ``AnalysisReport.violations`` instead of being assumed.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional

from .criteria import CharacteristicFinding, characteristic_finding
from .lattice import LatticeWithIsometry
from .normalform import CoinvariantDecomposition, coinvariants
from .pairing import TorsionPairingMatrix, Verdicts, order_bound_ok, pairing_matrix, verdicts
from .scalars import PairingValue

__all__ = ["AnalysisReport", "Analysis", "analyze", "run_analysis"]


@dataclass
class AnalysisReport:
    name: Optional[str]
    l: int
    rank: int
    free_rank: int
    torsion_exponents: list
    pairing_matrix: list  # rows of "c/l^m" strings
    verdicts: dict
    criteria: Optional[dict]
    violations: list = field(default_factory=list)
    timing_ms: float = 0.0

    def to_dict(self, timing=True) -> dict:
        out = {
            "name": self.name,
            "l": self.l,
            "rank": self.rank,
            "free_rank": self.free_rank,
            "torsion_exponents": list(self.torsion_exponents),
            "pairing_matrix": [list(r) for r in self.pairing_matrix],
            "verdicts": dict(self.verdicts),
            "criteria": self.criteria,
            "violations": list(self.violations),
        }
        if timing:
            out["timing_ms"] = self.timing_ms
        return out

    def to_json(self, timing=True, indent=None) -> str:
        return json.dumps(self.to_dict(timing), indent=indent, sort_keys=False)

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisReport":
        return cls(
            name=data["name"],
            l=data["l"],
            rank=data["rank"],
            free_rank=data["free_rank"],
            torsion_exponents=list(data["torsion_exponents"]),
            pairing_matrix=[list(r) for r in data["pairing_matrix"]],
            verdicts=dict(data["verdicts"]),
            criteria=data["criteria"],
            violations=list(data.get("violations", [])),
            timing_ms=data.get("timing_ms", 0.0),
        )

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))

    def pairing_values(self):
        return [[PairingValue.parse(s, self.l) for s in row] for row in self.pairing_matrix]


@dataclass(frozen=True)
class Analysis:
    """In-memory result with the structured objects behind the report."""

    lattice: LatticeWithIsometry
    decomposition: CoinvariantDecomposition
    matrix: TorsionPairingMatrix
    verdicts: Verdicts
    criteria: Optional[CharacteristicFinding]
    violations: tuple


def _consistency(L, P, V, C):
    found = []
    if not order_bound_ok(P):
        found.append("order_bound: a pairing value exceeds the order of its generators")
    if not V.skewsymmetric:
        found.append("skewsymmetry: (a,b) + (b,a) != 0 for some generators")
    if not V.nondegenerate:
        found.append("nondegeneracy: some nonzero torsion class pairs trivially with everything")
    if int(L.prime) != 2 and not V.alternating:
        found.append("odd_alternation: pairing not alternating at odd l")
    if int(L.prime) != 2 and not V.square_order:
        found.append("odd_square: torsion order is not a square at odd l")
    if V.alternating and not V.square_order:
        found.append("alternating_square: alternating pairing on a group of non-square order")
    if C is not None:
        if C.h0_even != V.alternating:
            found.append("h0_criterion: evenness on H0 disagrees with alternation")
        if C.predicted_alternating and not V.alternating:
            found.append("witness_sufficiency: characteristic witness present but pairing not alternating")
    return found


def run_analysis(L: LatticeWithIsometry) -> Analysis:
    decomp = coinvariants(L)
    P = pairing_matrix(L, decomp)
    V = verdicts(P, L.prime)
    C = characteristic_finding(L) if int(L.prime) == 2 else None
    return Analysis(L, decomp, P, V, C, tuple(_consistency(L, P, V, C)))


def analyze(L: LatticeWithIsometry) -> AnalysisReport:
    start = time.perf_counter()
    a = run_analysis(L)
    elapsed = (time.perf_counter() - start) * 1000.0
    return AnalysisReport(
        name=L.name,
        l=int(L.prime),
        rank=L.rank,
        free_rank=a.decomposition.free_rank,
        torsion_exponents=list(a.decomposition.torsion_exponents),
        pairing_matrix=a.matrix.as_strings(),
        verdicts=a.verdicts.as_dict(),
        criteria=None if a.criteria is None else a.criteria.as_dict(),
        violations=list(a.violations),
        timing_ms=round(elapsed, 3),
    )
