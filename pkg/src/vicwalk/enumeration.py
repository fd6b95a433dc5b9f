"""Exact walk counts for the random-turns model and their combinatorial twins.

``z_count`` runs the transfer operator ``R + L`` over a sparse frontier;
``walk_oracle`` enumerates walks one by one and shares no code with it.
``u_count`` brute-forces permutations so that it can serve as an
independent oracle for the determinant side.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .lattice import (
    EMPTY,
    Configuration,
    YoungDiagram,
    YoungGraph,
    ground_state,
    rectangle,
    shifted_ground_state,
)
from .operators import StepWord, refined_count
from .reports import IdentityReport

WALK_ORACLE_MAX_STEPS = 12
U_COUNT_MAX_N = 9


@dataclass(frozen=True)
class WalkCountQuery:
    d: int
    steps: int
    source: Configuration
    target: Configuration

    def __post_init__(self):
        if self.steps < 0:
            raise ValueError("steps must be non-negative")
        if self.source.d != self.d or self.target.d != self.d:
            raise ValueError(f"endpoints must have {self.d} walkers")


@dataclass(frozen=True)
class GroundStateQuery:
    d: int
    steps: int
    q: int

    def __post_init__(self):
        if self.d < 1 or self.steps < 0 or self.q < 0:
            raise ValueError("need d >= 1, steps >= 0, q >= 0")

    def as_walk_query(self) -> WalkCountQuery:
        return WalkCountQuery(self.d, self.steps, ground_state(self.d), shifted_ground_state(self.d, self.q))


_PASCAL: list[list[int]] = [[1]]


def binomial(n: int, k: int) -> int:
    """Exact binomial from cached Pascal rows; zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    while len(_PASCAL) <= n:
        prev = _PASCAL[-1]
        _PASCAL.append([1] + [a + b for a, b in zip(prev, prev[1:])] + [1])
    return _PASCAL[n][k]


def z_count(query: WalkCountQuery) -> int:
    """Number of ``N``-step random-turns evolutions from ``source`` to ``target``."""
    target_sum = sum(query.target.parts)
    frontier = {query.source: 1}
    for step in range(query.steps):
        remaining = query.steps - step - 1
        nxt: dict = defaultdict(int)
        for v, c in frontier.items():
            for i in range(query.d):
                for delta in (1, -1):
                    parts = v.parts[:i] + (v.parts[i] + delta,) + v.parts[i + 1:]
                    if i > 0 and parts[i - 1] <= parts[i]:
                        continue
                    if i < query.d - 1 and parts[i] <= parts[i + 1]:
                        continue
                    # rank gap to the target must be closable in the steps left
                    if abs(sum(parts) - target_sum) > remaining:
                        continue
                    nxt[Configuration(parts)] += c
        frontier = nxt
        if not frontier:
            return 0
    return frontier.get(query.target, 0)


def z_ground(query: GroundStateQuery) -> int:
    """``Z_d(N; q)``: walks between ground states ``q`` sites apart."""
    return z_count(query.as_walk_query())


def walk_oracle(query: WalkCountQuery) -> int:
    """Depth-first enumeration of every walk; exponential, for cross-checks only."""
    if query.steps > WALK_ORACLE_MAX_STEPS:
        raise ValueError(f"walk_oracle is limited to {WALK_ORACLE_MAX_STEPS} steps")
    goal = list(query.target.parts)
    pos = list(query.source.parts)
    d = query.d

    def dfs(left: int) -> int:
        if left == 0:
            return 1 if pos == goal else 0
        if sum(abs(x - y) for x, y in zip(pos, goal)) > left:
            return 0
        total = 0
        for i in range(d):
            for delta in (1, -1):
                pos[i] += delta
                if all(pos[j] > pos[j + 1] for j in range(d - 1)):
                    total += dfs(left - 1)
                pos[i] -= delta
        return total

    return dfs(query.steps)


def lis_length(perm) -> int:
    """Longest increasing subsequence via patience sorting."""
    perm = list(perm)
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{len(perm)}")
    piles: list[int] = []
    for x in perm:
        k = bisect_left(piles, x)
        if k == len(piles):
            piles.append(x)
        else:
            piles[k] = x
    return len(piles)


@lru_cache(maxsize=None)
def _lis_histogram(n: int) -> tuple[int, ...]:
    hist = [0] * (n + 1)
    for p in permutations(range(1, n + 1)):
        hist[lis_length(p)] += 1
    return tuple(hist)


def u_count(d: int, n: int) -> int:
    """Permutations of ``n`` letters with no increasing subsequence longer than ``d``."""
    if n > U_COUNT_MAX_N:
        raise ValueError(f"u_count brute force is limited to n <= {U_COUNT_MAX_N}")
    if n < 0 or d < 0:
        raise ValueError("need n >= 0 and d >= 0")
    return sum(_lis_histogram(n)[: d + 1])


def syt_count(y: YoungDiagram) -> int:
    """Hook-length formula for the number of standard Young tableaux."""
    rows = y.rows
    cols = [sum(1 for r in rows if r > j) for j in range(rows[0])] if rows else []
    hooks = 1
    for i, r in enumerate(rows):
        for j in range(r):
            hooks *= (r - j - 1) + (cols[j] - i - 1) + 1
    n = y.size
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    return fact // hooks


def forrester_check(d: int, n: int) -> IdentityReport:
    """``Z_d(2m; 0) = C(2m, m) u_d(m)`` for ``m <= n`` and ``Z_d(odd; 0) = 0``."""
    rep = IdentityReport("forrester", {"d": d, "n": n})
    for m in range(n + 1):
        lhs = z_ground(GroundStateQuery(d, 2 * m, 0))
        rep.add(lhs, binomial(2 * m, m) * u_count(d, m), N=2 * m)
        rep.add(z_ground(GroundStateQuery(d, 2 * m + 1, 0)), 0, N=2 * m + 1)
    return rep


def rsk_chain_check(d: int, n: int, q: int) -> IdentityReport:
    """Young-graph refined count times a binomial recovers ``Z_d(2n + dq; q)``."""
    rep = IdentityReport("rsk-chain", {"d": d, "n": n, "q": q})
    graph = YoungGraph(d)
    word = StepWord("L" * n + "R" * (n + d * q))
    refined = refined_count(word, EMPTY, rectangle(d, q), graph)
    steps = 2 * n + d * q
    rep.add(refined * binomial(steps, n), z_ground(GroundStateQuery(d, steps, q)), N=steps, refined=str(refined))
    if q == 0:
        rep.add(refined_count(StepWord("L" * n + "R" * n), EMPTY, EMPTY, graph), u_count(d, n), check="u_d(n)")
    return rep
