"""Exception types and the validation report shared by every checker."""

from dataclasses import dataclass, field


class ParseError(ValueError):
    """Malformed input text. ``position`` is a 1-based line or byte offset."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)
        self.position = position


class CapacityError(RuntimeError):
    """An exact search hit its size limit or node budget.

    Never to be read as a negative answer.
    """


class InvariantViolation(RuntimeError):
    """An internal guarantee failed; always an implementation bug."""


@dataclass
class Report:
    """Outcome of a validator: ``ok`` plus human-readable violations."""

    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, message: str):
        self.violations.append(message)

    def extend(self, other: "Report", prefix: str = ""):
        self.violations.extend(prefix + v for v in other.violations)

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(self.violations)
