"""Pass/fail reports for identity checks, with reproducible witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactmath import ExactMatrix, format_scalar

SCHEMA_VERSION = 1


class AxiomViolation(Exception):
    """Raised when a construction requires an identity that fails."""

    def __init__(self, message: str, check: "Check | None" = None):
        super().__init__(message)
        self.check = check


@dataclass
class Check:
    identity: str
    passed: bool
    context: dict = field(default_factory=dict)
    witness: dict | None = None

    def to_dict(self) -> dict:
        out = {"identity": self.identity, "passed": self.passed}
        if self.context:
            out["context"] = dict(self.context)
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def find(self, identity: str) -> list:
        return [c for c in self.checks if c.identity == identity]

    def require(self) -> "Report":
        bad = self.failures()
        if bad:
            c = bad[0]
            raise AxiomViolation(f"{self.title}: {c.identity} fails {c.context} "
                                 f"witness={c.witness}", c)
        return self

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "n_checks": len(self.checks),
            "n_failed": len(self.failures()),
            "checks": [c.to_dict() for c in self.checks],
        }


def format_vector(vec: dict, labels=None) -> list:
    """Sparse vector as ``[[label, scalar], ...]`` sorted by index."""
    out = []
    for i in sorted(vec):
        out.append([labels(i) if labels else i, format_scalar(vec[i])])
    return out


def compare(lhs: ExactMatrix, rhs: ExactMatrix, identity: str, *,
            source_label=None, target_label=None, **context) -> Check:
    """Check ``lhs == rhs``; on failure record the first differing basis
    vector of the source and both images."""
    if lhs.shape != rhs.shape:
        return Check(identity, False, context,
                     {"error": f"shape {lhs.shape} != {rhs.shape}"})
    j = lhs.first_difference(rhs)
    if j is None:
        return Check(identity, True, context)
    witness = {
        "input": source_label(j) if source_label else j,
        "lhs": format_vector(lhs.cols[j], target_label),
        "rhs": format_vector(rhs.cols[j], target_label),
    }
    return Check(identity, False, context, witness)
