"""Regression sweep over Sigma(2, 3, 6k - 1) against a homotopy S^3 x S^1."""

from __future__ import annotations

from dataclasses import dataclass

from .cs_q import HomotopyS3xS1
from .obstruction import FROYSHOV, AssumptionSet, NonvanishingAssumed, ObstructionReport, embedding_verdict
from .seifert_flat import enumerate_flat_connections, validate_seifert

K_LIMIT = 64


@dataclass
class SweepRow:
    k: int
    multiplicities: tuple[int, int, int]
    connections: int
    odd: int
    even: int
    report: ObstructionReport

    @property
    def parity_ok(self) -> bool:
        return self.even == 0

    @property
    def verdict(self) -> str:
        return self.report.verdict

    def to_dict(self) -> dict:
        cert = self.report.certificate
        return {
            "k": self.k,
            "multiplicities": list(self.multiplicities),
            "connections": self.connections,
            "odd_gradings": self.odd,
            "even_gradings": self.even,
            "verdict": self.verdict,
            "r": None if cert is None else cert.to_dict()["r"],
            "report": self.report.to_dict(),
        }


@dataclass
class SweepResult:
    rows: list[SweepRow]

    @property
    def first_parity_failure(self) -> int | None:
        return next((row.k for row in self.rows if not row.parity_ok), None)

    def to_dict(self) -> dict:
        return {
            "rows": [row.to_dict() for row in self.rows],
            "first_parity_failure": self.first_parity_failure,
        }


def sweep_example(k_min: int, k_max: int) -> SweepResult:
    if not 1 <= k_min <= k_max <= K_LIMIT:
        raise ValueError(f"need 1 <= k_min <= k_max <= {K_LIMIT}, got {k_min}..{k_max}")
    assumptions = AssumptionSet(NonvanishingAssumed(FROYSHOV), nondegeneracy_asserted=True)
    rows = []
    for k in range(k_min, k_max + 1):
        y = validate_seifert((2, 3, 6 * k - 1))
        conns = enumerate_flat_connections(y)
        odd = sum(c.grading % 2 for c in conns)
        report = embedding_verdict(y, HomotopyS3xS1(), assumptions)
        rows.append(SweepRow(k, y.multiplicities, len(conns), odd, len(conns) - odd, report))
    return SweepResult(rows)
