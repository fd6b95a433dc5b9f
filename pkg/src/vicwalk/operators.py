"""Raising and lowering operators on the free module over a graded graph.

Words over ``{L, R}`` are written the way operators compose: the leftmost
letter acts last. ``"LR"`` applied to ``u`` means ``L(R(u))``.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .lattice import (
    Configuration,
    WeylLattice,
    YoungDiagram,
    YoungGraph,
    shift_to_partition,
)
from .reports import IdentityReport

Graph = Union[WeylLattice, YoungGraph]
Vertex = Union[Configuration, YoungDiagram]


@dataclass(frozen=True, eq=False)
class StateVector:
    """Finite integer combination of vertices of one graph."""

    graph: Graph
    entries: Mapping[Vertex, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for v, c in self.entries.items():
            self.graph.check(v)
            if c:
                clean[v] = int(c)
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    @classmethod
    def unit(cls, graph: Graph, v: Vertex) -> "StateVector":
        return cls(graph, {v: 1})

    @classmethod
    def zero(cls, graph: Graph) -> "StateVector":
        return cls(graph, {})

    def __getitem__(self, v: Vertex) -> int:
        return self.entries.get(v, 0)

    def __len__(self):
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def _same_graph(self, other: "StateVector"):
        if self.graph != other.graph:
            raise ValueError("state vectors live on different graphs")

    def __add__(self, other: "StateVector") -> "StateVector":
        self._same_graph(other)
        acc = defaultdict(int, self.entries)
        for v, c in other.entries.items():
            acc[v] += c
        return StateVector(self.graph, acc)

    def __sub__(self, other: "StateVector") -> "StateVector":
        self._same_graph(other)
        acc = defaultdict(int, self.entries)
        for v, c in other.entries.items():
            acc[v] -= c
        return StateVector(self.graph, acc)

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.graph == other.graph and self.entries == other.entries

    def to_json(self) -> list:
        return [[v.to_json(), str(c)] for v, c in self.entries.items()]


def _push(v: StateVector, step) -> StateVector:
    acc: dict = defaultdict(int)
    for u, c in v.entries.items():
        for w in step(u):
            acc[w] += c
    return StateVector(v.graph, acc)


def apply_raise(v: StateVector) -> StateVector:
    return _push(v, v.graph.up)


def apply_lower(v: StateVector) -> StateVector:
    return _push(v, v.graph.down)


@dataclass(frozen=True)
class StepWord:
    """A word in the raising (R) and lowering (L) operators."""

    letters: str = ""

    def __post_init__(self):
        letters = "".join(self.letters).upper()
        bad = set(letters) - {"L", "R"}
        if bad:
            raise ValueError(f"step words use only L and R, got {sorted(bad)}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> "StepWord":
        return cls(text.strip())

    @classmethod
    def from_blocks(cls, blocks: Iterable[tuple[int, int]]) -> "StepWord":
        """Build ``L^{b_k} R^{a_k} ... L^{b_1} R^{a_1}`` from ``[(a_1, b_1), ...]``."""
        parts = []
        for a, b in blocks:
            parts.append("L" * b + "R" * a)
        return cls("".join(reversed(parts)))

    @property
    def deg_l(self) -> int:
        return self.letters.count("L")

    @property
    def deg_r(self) -> int:
        return self.letters.count("R")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return self.letters


def apply_word(w: StepWord | str, v: StateVector) -> StateVector:
    if isinstance(w, str):
        w = StepWord(w)
    for letter in reversed(w.letters):
        v = apply_raise(v) if letter == "R" else apply_lower(v)
    return v


def refined_count(w: StepWord | str, source: Vertex, target: Vertex, graph: Graph) -> int:
    """Number of walks ``source -> target`` whose up/down pattern is ``w``."""
    graph.check(target)
    return apply_word(w, StateVector.unit(graph, source))[target]


def commutator_residual(v: StateVector) -> StateVector:
    """``LR(v) - RL(v)``; identically zero on the Weyl lattice."""
    return apply_lower(apply_raise(v)) - apply_raise(apply_lower(v))


def distinct_shifted_entries(c: Configuration) -> int:
    """Number of distinct entries of ``c - rho``, the diagonal of ``LR`` at ``c``."""
    return len(set(shift_to_partition(c)))


def random_configuration(d: int, rng: random.Random, lo: int = -10, hi: int = 10) -> Configuration:
    """Uniform ``d``-subset of ``[lo, hi]`` sorted decreasingly."""
    return Configuration(tuple(sorted(rng.sample(range(lo, hi + 1), d), reverse=True)))


def shuffled_word(w: StepWord, rng: random.Random) -> StepWord:
    letters = list(w.letters)
    rng.shuffle(letters)
    return StepWord("".join(letters))


def commutation_report(d: int, trials: int, reorders: int, seed: int, max_word: int = 10) -> IdentityReport:
    """``LR = RL`` on random configurations of ``W_d``, and word-reorder invariance."""
    rng = random.Random(seed)
    graph = WeylLattice(d)
    rep = IdentityReport("commute", {"d": d, "trials": trials, "reorders": reorders, "seed": seed})
    nonzero = 0
    for _ in range(trials):
        v = StateVector.unit(graph, random_configuration(d, rng))
        if not commutator_residual(v).is_zero():
            nonzero += 1
    rep.add(nonzero, 0, check="configurations with nonzero LR - RL")
    mismatched = 0
    for _ in range(reorders):
        length = rng.randint(0, max_word)
        w = StepWord("".join(rng.choice("LR") for _ in range(length)))
        start = StateVector.unit(graph, random_configuration(d, rng))
        if apply_word(w, start) != apply_word(shuffled_word(w, rng), start):
            mismatched += 1
    rep.add(mismatched, 0, check="reordered words with a different image")
    return rep
