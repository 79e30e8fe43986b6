"""
Check results and reports.

A failed check always carries a witness: the basis indices at which the
identity fails and, when the identity is vector-valued, the defect vector.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple

from src.linalg.rational import format_rational


@dataclass(frozen=True)
class Witness:
    indices: Tuple[int, ...]
    defect: Optional[Tuple[Fraction, ...]] = None
    note: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"indices": list(self.indices)}
        if self.defect is not None:
            data["defect"] = [format_rational(x) for x in self.defect]
        if self.note:
            data["note"] = self.note
        return data


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named identity check."""

    name: str
    passed: bool
    witness: Optional[Witness] = None

    def __post_init__(self) -> None:
        if not self.passed and self.witness is None:
            raise ValueError(f"Failed check '{self.name}' must carry a witness")
        if self.passed and self.witness is not None:
            raise ValueError(f"Passed check '{self.name}' must not carry a witness")

    def __bool__(self) -> bool:
        return self.passed

    @classmethod
    def ok(cls, name: str) -> "CheckResult":
        return cls(name, True)

    @classmethod
    def fail(
        cls,
        name: str,
        indices: Sequence[int],
        defect: Optional[Sequence[Fraction]] = None,
        note: Optional[str] = None,
    ) -> "CheckResult":
        return cls(name, False, Witness(tuple(indices), tuple(defect) if defect is not None else None, note))

    def renamed(self, name: str) -> "CheckResult":
        return CheckResult(name, self.passed, self.witness)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"passed": self.passed}
        if self.witness is not None:
            data["witness"] = self.witness.to_dict()
        return data


@dataclass(frozen=True)
class AlgebraReport:
    """Named check results plus structural facts.

    ``passed`` is the conjunction of the checks; facts (is_lie, is_perfect
    and so on) describe the algebra and never make a report fail.
    """

    checks: Tuple[CheckResult, ...] = ()
    facts: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def of(cls, checks: Iterable[CheckResult], **facts: Any) -> "AlgebraReport":
        return cls(tuple(checks), dict(facts))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: object) -> bool:
        return any(c.name == name for c in self.checks)

    def ok(self, prefix: str) -> bool:
        """True when every check named ``prefix`` or ``prefix.*`` passed."""
        return all(c.passed for c in self.checks if c.name == prefix or c.name.startswith(prefix + "."))

    @property
    def failures(self) -> Tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def merged(self, *others: "AlgebraReport") -> "AlgebraReport":
        checks = list(self.checks)
        facts = dict(self.facts)
        for other in others:
            checks.extend(other.checks)
            facts.update(other.facts)
        return AlgebraReport(tuple(checks), facts)

    def restricted(self, prefixes: Iterable[str]) -> "AlgebraReport":
        """Keep only the checks matching one of the given names or prefixes."""
        wanted = tuple(prefixes)
        kept = tuple(
            c for c in self.checks if any(c.name == p or c.name.startswith(p + ".") for p in wanted)
        )
        return AlgebraReport(kept, dict(self.facts))

    def prefixed(self, prefix: str) -> "AlgebraReport":
        return AlgebraReport(tuple(c.renamed(f"{prefix}.{c.name}") for c in self.checks), dict(self.facts))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "checks": {c.name: c.to_dict() for c in self.checks},
            "facts": dict(self.facts),
        }
