"""Result containers shared by the bound and oracle modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

FINITE = "finite"
UNBOUNDED = "unbounded"


@dataclass
class BoundResult:
    """Value of a bound with its certificate.

    An infinite bound has ``status == "unbounded"`` and ``value is None``;
    its certificate then holds a recession direction instead of an optimizer.
    """

    name: str
    value: float | None
    certificate: dict[str, Any] = field(default_factory=dict)
    diagnostics: dict[str, Any] = field(default_factory=dict)
    status: str = FINITE

    def __post_init__(self):
        if self.status not in (FINITE, UNBOUNDED):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == UNBOUNDED:
            if self.value is not None:
                raise ValueError("an unbounded result carries no value")
        else:
            if self.value is None:
                raise ValueError("a finite result needs a value")
            self.value = float(self.value)

    @property
    def is_infinite(self) -> bool:
        return self.status == UNBOUNDED

    @property
    def gap(self) -> float:
        return float(self.diagnostics.get("gap", 0.0))

    @property
    def iterations(self) -> int:
        return int(self.diagnostics.get("iterations", 0))

    def __float__(self) -> float:
        return float("inf") if self.is_infinite else self.value

    def le(self, other: float, slack: float = 0.0) -> bool:
        """``self <= other + slack`` with an infinite value never below a finite one."""
        return (not self.is_infinite) and self.value <= other + slack
