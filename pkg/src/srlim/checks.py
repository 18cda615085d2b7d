from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a verification: truthy on pass, with a witness on failure."""

    ok: bool
    witness: Any = None
    detail: str = ""
    data: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.ok

    @classmethod
    def passed(cls, detail: str = "", **data) -> CheckResult:
        return cls(True, None, detail, data)

    @classmethod
    def failed(cls, witness, detail: str = "", **data) -> CheckResult:
        return cls(False, witness, detail, data)
