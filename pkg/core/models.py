"""Report data models for verification runs."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple


@dataclass
class AxiomReport:
    """Pass/fail tally for one identity checked over many samples."""
    axiom: str
    samples: int
    failures: int = 0
    max_residual: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    @classmethod
    def from_outcomes(cls, axiom: str, outcomes: Sequence[Tuple[bool, float]]) -> "AxiomReport":
        failures = sum(1 for ok, _ in outcomes if not ok)
        worst = max((r for _, r in outcomes), default=0.0)
        return cls(axiom=axiom, samples=len(outcomes), failures=failures, max_residual=float(worst))

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class SuiteResult:
    """All checks of one suite."""
    suite: str
    checks: List[AxiomReport] = field(default_factory=list)
    note: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "suite": self.suite,
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class WitnessReport:
    """Support confinement of natural-basis combinations."""
    basis: str
    samples: int
    confined: int
    target_outside_row: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return self.samples - self.confined

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "basis": self.basis,
            "samples": self.samples,
            "confined": self.confined,
            "violations": self.violations,
            "target_outside_row": [list(p) for p in self.target_outside_row],
        }


@dataclass
class EigenCheck:
    """Per-k outcome of the diagonalization check."""
    k: int
    hypothesis_residual: float
    eigen_residual: float
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "hypothesis_residual": self.hypothesis_residual,
            "eigen_residual": self.eigen_residual,
            "pass": self.passed,
        }


@dataclass
class DiagonalizationReport:
    """status is "ok", "hypothesis_failed" or "conclusion_failed"."""
    status: str
    hypothesis_residual: float
    checks: List[EigenCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "ok"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status,
            "hypothesis_residual": self.hypothesis_residual,
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
        }
