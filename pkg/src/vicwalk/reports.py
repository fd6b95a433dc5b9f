"""Identity-check reports: both sides as decimal strings plus a verdict."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class IdentityReport:
    name: str
    params: dict
    rows: list[dict] = field(default_factory=list)

    def add(self, lhs, rhs, **labels) -> bool:
        ok = lhs == rhs
        self.rows.append({**labels, "lhs": str(lhs), "rhs": str(rhs), "holds": bool(ok)})
        return ok

    @property
    def holds(self) -> bool:
        return all(r["holds"] for r in self.rows)

    def to_json(self) -> dict:
        return {"identity": self.name, "params": self.params, "rows": self.rows, "holds": self.holds}
