"""Truncated power series with exact rational coefficients, Bessel series,
Toeplitz-type Bessel determinants, and the generating-function identity checks.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .enumeration import (
    GroundStateQuery,
    u_count,
    z_ground,
)
from .lattice import Configuration, WeylLattice, rank
from .operators import StepWord, refined_count
from .reports import IdentityReport

_FACTORIALS = [1]


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of a negative number")
    while len(_FACTORIALS) <= n:
        _FACTORIALS.append(_FACTORIALS[-1] * len(_FACTORIALS))
    return _FACTORIALS[n]


class RationalSeries:
    """``sum_{k <= order} c_k x^k`` known exactly up to ``order`` inclusive.

    Binary operations truncate to the smaller order of the two operands.
    """

    __slots__ = ("coefficients", "order")

    def __init__(self, coefficients: Sequence, order: int):
        if order < 0:
            raise ValueError("order must be >= 0")
        coeffs = [Fraction(c) for c in list(coefficients)[: order + 1]]
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        self.coefficients = tuple(coeffs)
        self.order = order

    @classmethod
    def constant(cls, c, order: int) -> "RationalSeries":
        return cls([c], order)

    @classmethod
    def monomial(cls, k: int, c, order: int) -> "RationalSeries":
        coeffs = [0] * (order + 1)
        if k <= order:
            coeffs[k] = c
        return cls(coeffs, order)

    def __getitem__(self, k: int) -> Fraction:
        if k > self.order:
            raise IndexError(f"coefficient {k} is beyond truncation order {self.order}")
        return self.coefficients[k] if k >= 0 else Fraction(0)

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        n = min(self.order, other.order)
        return RationalSeries([self[k] + other[k] for k in range(n + 1)], n)

    def __neg__(self) -> "RationalSeries":
        return RationalSeries([-c for c in self.coefficients], self.order)

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        return self + (-other)

    def __mul__(self, other) -> "RationalSeries":
        if not isinstance(other, RationalSeries):
            c = Fraction(other)
            return RationalSeries([c * a for a in self.coefficients], self.order)
        n = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            if a[i]:
                for j in range(n + 1 - i):
                    if b[j]:
                        out[i + j] += a[i] * b[j]
        return RationalSeries(out, n)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return self.order == other.order and self.coefficients == other.coefficients

    def __repr__(self):
        terms = ", ".join(str(c) for c in self.coefficients)
        return f"RationalSeries([{terms}], order={self.order})"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coefficients": [{"num": str(c.numerator), "den": str(c.denominator)} for c in self.coefficients],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RationalSeries":
        coeffs = [Fraction(int(c["num"]), int(c["den"])) for c in data["coefficients"]]
        return cls(coeffs, int(data["order"]))

    def evaluate(self, x: float) -> float:
        return sum(float(c) * x**k for k, c in enumerate(self.coefficients))


def bessel_series(k: int, order: int) -> RationalSeries:
    """``I_k(2x) = sum_n x^(2n+|k|) / (n! (n+|k|)!)`` truncated at ``order``."""
    k = abs(k)
    coeffs = [Fraction(0)] * (order + 1)
    n = 0
    while 2 * n + k <= order:
        coeffs[2 * n + k] = Fraction(1, factorial(n) * factorial(n + k))
        n += 1
    return RationalSeries(coeffs, order)


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def series_det(matrix: Sequence[Sequence[RationalSeries]]) -> RationalSeries:
    """Leibniz expansion over series entries; fine for the tiny sizes used here."""
    d = len(matrix)
    if any(len(row) != d for row in matrix):
        raise ValueError("determinant needs a square matrix")
    order = min(e.order for row in matrix for e in row)
    total = RationalSeries.constant(0, order)
    for p in permutations(range(d)):
        term = RationalSeries.constant(_perm_sign(p), order)
        for i in range(d):
            term = term * matrix[i][p[i]]
        total = total + term
    return total


def toeplitz_bessel_det(offsets: Sequence[Sequence[int]], order: int) -> RationalSeries:
    """``det(I_{offsets[i][j]}(2x))`` as an exact truncated series."""
    cache: dict[int, RationalSeries] = {}
    matrix = []
    for row in offsets:
        line = []
        for k in row:
            k = abs(int(k))
            if k not in cache:
                cache[k] = bessel_series(k, order)
            line.append(cache[k])
        matrix.append(line)
    return series_det(matrix)


def toeplitz_offsets(d: int, q: int) -> list[list[int]]:
    """Bessel orders ``q + j - i`` for ``1 <= i, j <= d``."""
    return [[q + j - i for j in range(d)] for i in range(d)]


def hook_product(d: int, q: int) -> int:
    """Hook-length product of the ``d x q`` rectangle: ``prod (q+i)!/i!``."""
    if d < 1 or q < 0:
        raise ValueError("need d >= 1 and q >= 0")
    value = 1
    for i in range(d):
        value *= factorial(q + i) // factorial(i)
    return value


def gd_from_counts(d: int, q: int, order: int) -> RationalSeries:
    """Exponential generating series of ``Z_d(N; q)`` up to ``x^order``."""
    coeffs = [Fraction(z_ground(GroundStateQuery(d, n, q)), factorial(n)) for n in range(order + 1)]
    return RationalSeries(coeffs, order)


def theorem2_report(d: int, q: int, order: int) -> IdentityReport:
    """Walk-count series against ``det(I_{q+j-i}(2x))``, coefficient by coefficient."""
    rep = IdentityReport("toeplitz", {"d": d, "q": q, "order": order})
    counts = gd_from_counts(d, q, order)
    det = toeplitz_bessel_det(toeplitz_offsets(d, q), order)
    for n in range(order + 1):
        rep.add(counts[n], det[n], N=n)
    return rep


def refined_word_families(n: int, gap: int) -> dict[str, StepWord]:
    """Two different words with ``n`` lowerings and ``n + gap`` raisings."""
    return {
        "L^n R^(n+gap)": StepWord("L" * n + "R" * (n + gap)),
        "(LR)^n R^gap": StepWord("LR" * n + "R" * gap),
    }


def determinantal_report(d: int, mu: Configuration, lam: Configuration, order: int) -> IdentityReport:
    """Refined walk counts between ``mu`` and ``lam`` against ``det(I_{lam_i - mu_j}(2x))``."""
    if mu.d != d or lam.d != d:
        raise ValueError(f"configurations must have {d} walkers")
    gap = rank(lam) - rank(mu)
    if gap < 0:
        raise ValueError("need rank(mu) <= rank(lam)")
    graph = WeylLattice(d)
    rep = IdentityReport("determinantal", {"d": d, "mu": mu.to_json(), "lam": lam.to_json(), "order": order})
    det = toeplitz_bessel_det([[l - m for m in mu.parts] for l in lam.parts], order)

    per_family = {name: [Fraction(0)] * (order + 1) for name in refined_word_families(0, gap)}
    n = 0
    while 2 * n + gap <= order:
        counts = {name: refined_count(w, mu, lam, graph) for name, w in refined_word_families(n, gap).items()}
        first, second = counts.values()
        rep.add(first, second, n=n, check="word families agree")
        for name, c in counts.items():
            per_family[name][2 * n + gap] = Fraction(c, factorial(n) * factorial(n + gap))
        n += 1
    for name, coeffs in per_family.items():
        series = RationalSeries(coeffs, order)
        for k in range(order + 1):
            rep.add(series[k], det[k], k=k, family=name)
    return rep


def gessel_report(d: int, order: int) -> IdentityReport:
    """``sum u_d(n) x^(2n)/(n!)^2`` against ``det(I_{i-j}(2x))``."""
    rep = IdentityReport("gessel", {"d": d, "order": order})
    det = toeplitz_bessel_det([[i - j for j in range(d)] for i in range(d)], order)
    for k in range(order + 1):
        if k % 2:
            expected = Fraction(0)
        else:
            n = k // 2
            expected = Fraction(u_count(d, n), factorial(n) ** 2)
        rep.add(expected, det[k], k=k)
    return rep
