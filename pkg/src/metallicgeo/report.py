"""Named residual reports shared by all verification suites."""
from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import DEFAULT_TOL


@dataclass(frozen=True)
class ResidualReport:
    """An ordered list of (identity name, residual) pairs with a verdict.

    The verdict is pass iff every residual is <= tol.
    """

    entries: tuple
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple((str(n), float(r)) for n, r in self.entries))

    @property
    def passed(self) -> bool:
        return all(r <= self.tol for _, r in self.entries)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def max_residual(self) -> float:
        return max((r for _, r in self.entries), default=0.0)

    def residual(self, name: str) -> float:
        for n, r in self.entries:
            if n == name:
                return r
        raise KeyError(name)

    def failures(self):
        return [(n, r) for n, r in self.entries if r > self.tol]

    def merged(self, other: "ResidualReport", prefix: str = "") -> "ResidualReport":
        extra = tuple((prefix + n, r) for n, r in other.entries)
        return ResidualReport(self.entries + extra, tol=self.tol)

    def to_dict(self) -> dict:
        return {
            "entries": [{"name": n, "residual": r} for n, r in self.entries],
            "tol": self.tol,
            "verdict": self.verdict,
            "max_residual": self.max_residual,
        }


def make_report(pairs, tol: float = DEFAULT_TOL) -> ResidualReport:
    return ResidualReport(tuple(pairs), tol=tol)
