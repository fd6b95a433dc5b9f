"""Configuration spaces of the random-turns model as graded graphs.

Two graphs live here:

* the Weyl lattice ``W_d`` of strictly decreasing integer vectors, where
  two configurations are adjacent when they differ by a unit vector;
* the Young graph ``Y_d`` of partitions with at most ``d`` rows, ordered
  by adding a single cell.

``young_embed`` maps ``Y_d`` into ``W_d`` by padding with zeros and adding
the ground state ``rho = (d, d-1, ..., 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True, order=True)
class Configuration:
    """Walker positions, listed right to left (strictly decreasing)."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise ValueError("a configuration needs at least one walker")
        for a, b in zip(parts, parts[1:]):
            if a <= b:
                raise ValueError(f"configuration {parts} is not strictly decreasing")
        object.__setattr__(self, "parts", parts)

    @property
    def d(self) -> int:
        return len(self.parts)

    def to_json(self) -> list[int]:
        return list(self.parts)

    def __repr__(self):
        return f"Configuration{self.parts}"


@dataclass(frozen=True, order=True)
class YoungDiagram:
    """Partition stored without trailing zeros; ``()`` is the empty diagram."""

    rows: tuple[int, ...] = ()

    def __post_init__(self):
        rows = [int(r) for r in self.rows]
        while rows and rows[-1] == 0:
            rows.pop()
        if any(r < 0 for r in rows):
            raise ValueError(f"negative row length in {tuple(rows)}")
        for a, b in zip(rows, rows[1:]):
            if a < b:
                raise ValueError(f"rows {tuple(rows)} are not weakly decreasing")
        object.__setattr__(self, "rows", tuple(rows))

    @property
    def size(self) -> int:
        return sum(self.rows)

    @property
    def length(self) -> int:
        return len(self.rows)

    def to_json(self) -> list[int]:
        return list(self.rows)

    def __repr__(self):
        return f"YoungDiagram{self.rows}"


EMPTY = YoungDiagram(())


def ground_state(d: int) -> Configuration:
    """The packed configuration ``rho = (d, d-1, ..., 1)``."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return Configuration(tuple(range(d, 0, -1)))


def shifted_ground_state(d: int, q: int) -> Configuration:
    """``rho + (q, ..., q)``: the ground state translated ``q`` sites right."""
    return Configuration(tuple(p + q for p in ground_state(d).parts))


def rectangle(d: int, q: int) -> YoungDiagram:
    """The ``d x q`` rectangular diagram (empty when ``q == 0``)."""
    return YoungDiagram((q,) * d)


def rank(c: Configuration) -> int:
    d = c.d
    return sum(c.parts) - d * (d + 1) // 2


def young_rank(y: YoungDiagram) -> int:
    return y.size


def _is_strict(parts: tuple[int, ...]) -> bool:
    return all(a > b for a, b in zip(parts, parts[1:]))


def up_neighbors(c: Configuration) -> list[Configuration]:
    """Configurations reached by moving one walker one site right."""
    out = []
    for i in range(c.d):
        parts = c.parts[:i] + (c.parts[i] + 1,) + c.parts[i + 1:]
        if _is_strict(parts):
            out.append(Configuration(parts))
    return sorted(out)


def down_neighbors(c: Configuration) -> list[Configuration]:
    """Configurations reached by moving one walker one site left."""
    out = []
    for i in range(c.d):
        parts = c.parts[:i] + (c.parts[i] - 1,) + c.parts[i + 1:]
        if _is_strict(parts):
            out.append(Configuration(parts))
    return sorted(out)


def young_up_neighbors(y: YoungDiagram, d: int) -> list[YoungDiagram]:
    if y.length > d:
        raise ValueError(f"{y} has more than {d} rows")
    rows = list(y.rows) + [0] * (d - y.length)
    out = []
    for i in range(d):
        if i == 0 or rows[i - 1] > rows[i]:
            new = rows.copy()
            new[i] += 1
            out.append(YoungDiagram(tuple(new)))
    return sorted(out)


def young_down_neighbors(y: YoungDiagram) -> list[YoungDiagram]:
    rows = list(y.rows)
    out = []
    for i in range(len(rows)):
        if i == len(rows) - 1 or rows[i] > rows[i + 1]:
            new = rows.copy()
            new[i] -= 1
            out.append(YoungDiagram(tuple(new)))
    return sorted(out)


def young_embed(y: YoungDiagram, d: int) -> Configuration:
    if y.length > d:
        raise ValueError(f"{y} has more than {d} rows, cannot embed in W_{d}")
    rows = y.rows + (0,) * (d - y.length)
    return Configuration(tuple(r + (d - i) for i, r in enumerate(rows)))


def shift_to_partition(c: Configuration) -> tuple[int, ...]:
    """``c - rho``: a weakly decreasing (possibly negative) integer vector."""
    return tuple(p - (c.d - i) for i, p in enumerate(c.parts))


def partitions(n: int, max_rows: int | None = None) -> Iterable[YoungDiagram]:
    """All diagrams of size ``n`` with at most ``max_rows`` rows."""

    def gen(remaining, largest, rows_left):
        if remaining == 0:
            yield ()
            return
        if rows_left == 0:
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - first, first, rows_left - 1):
                yield (first,) + rest

    limit = n if max_rows is None else max_rows
    for rows in gen(n, n, limit):
        yield YoungDiagram(rows)


# Graph objects bundle neighbor functions so operator code is graph-agnostic.


@dataclass(frozen=True)
class WeylLattice:
    d: int

    kind = "weyl"

    def up(self, v: Configuration) -> list[Configuration]:
        return up_neighbors(v)

    def down(self, v: Configuration) -> list[Configuration]:
        return down_neighbors(v)

    def rank(self, v: Configuration) -> int:
        return rank(v)

    def check(self, v) -> None:
        if not isinstance(v, Configuration) or v.d != self.d:
            raise ValueError(f"{v!r} is not a vertex of W_{self.d}")


@dataclass(frozen=True)
class YoungGraph:
    d: int

    kind = "young"

    def up(self, v: YoungDiagram) -> list[YoungDiagram]:
        return young_up_neighbors(v, self.d)

    def down(self, v: YoungDiagram) -> list[YoungDiagram]:
        return young_down_neighbors(v)

    def rank(self, v: YoungDiagram) -> int:
        return v.size

    def check(self, v) -> None:
        if not isinstance(v, YoungDiagram) or v.length > self.d:
            raise ValueError(f"{v!r} is not a vertex of Y_{self.d}")
