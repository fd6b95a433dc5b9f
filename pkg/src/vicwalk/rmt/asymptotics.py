"""Large-q form of ``Z_d(2n + dq; q)`` and its comparison with exact counts."""

from __future__ import annotations

import math

from ..enumeration import GroundStateQuery, z_ground


def log_asymptotic_rhs(d: int, n: int, q: int) -> float:
    if d < 1 or n < 0 or q < 1:
        raise ValueError("need d >= 1, n >= 0, q >= 1")
    return (
        (1 - d) / 2 * math.log(2 * math.pi)
        + sum(math.lgamma(i + 1) for i in range(d))
        + (3 * n + d * q + 0.5) * math.log(d)
        + (n + (1 - d * d) / 2) * math.log(q)
    )


def asymptotic_rhs(d: int, n: int, q: int) -> float:
    """``(2 pi)^((1-d)/2) (prod_{i<d} i!) d^(3n + dq + 1/2) q^(n + (1-d^2)/2)``, taken verbatim.

    Returns ``inf`` rather than overflowing.
    """
    log_value = log_asymptotic_rhs(d, n, q)
    return math.exp(log_value) if log_value < 709 else math.inf


def asymptotic_ratio(d: int, n: int, q: int) -> dict:
    """Exact ``Z_d(2n + dq; q)`` over the asymptotic form, raw and times ``n!``."""
    z = z_ground(GroundStateQuery(d, 2 * n + d * q, q))
    log_ratio = math.log(z) - log_asymptotic_rhs(d, n, q) if z else -math.inf
    raw = math.exp(log_ratio)
    return {
        "d": d,
        "n": n,
        "q": q,
        "z": str(z),
        "rhs": asymptotic_rhs(d, n, q),
        "ratio": raw,
        "ratio_times_n_factorial": raw * math.factorial(n),
    }
