from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check; ``witness`` points at the first failure."""

    ok: bool
    name: str
    witness: Any = None
    detail: str = ""
    parts: tuple = field(default=(), compare=False)

    def __bool__(self) -> bool:
        return self.ok

    def first_failure(self) -> "Verdict | None":
        if self.ok:
            return None
        for p in self.parts:
            if not p.ok:
                return p.first_failure() or p
        return self


def combine(name: str, parts) -> Verdict:
    parts = tuple(parts)
    for p in parts:
        if not p.ok:
            return Verdict(False, name, p.witness, f"{p.name}: {p.detail}".rstrip(": "), parts)
    return Verdict(True, name, None, "", parts)
