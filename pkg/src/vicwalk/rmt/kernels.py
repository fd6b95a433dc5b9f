"""Correlation kernels of the truncated ensemble and its large-q limit,
Neretin's density, and the radial-law check against sampling (d = 1).
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from ..series import hook_product
from .haar import DEFAULT_SEED, truncated_samples


def sz_kernel(d: int, q: int, z: complex, w: complex) -> complex:
    """Sommers-Zyczkowski kernel of the eigenvalues of ``d x d`` truncations of ``U(d+q)``."""
    if q < 1:
        raise ValueError("the kernel needs q >= 1")
    az, aw = abs(z) ** 2, abs(w) ** 2
    if az > 1 or aw > 1:
        raise ValueError("kernel arguments must lie in the closed unit disc")
    zw = z * np.conj(w)
    poly = sum(math.comb(q + j, j) * zw**j for j in range(d))
    return complex(q / math.pi * (1 - az) ** ((q - 1) / 2) * (1 - aw) ** ((q - 1) / 2) * poly)


def ginibre_kernel(d: int, z: complex, w: complex) -> complex:
    """Eigenvalue kernel of a ``d x d`` matrix of i.i.d. standard complex Gaussians.

    Weight ``exp(-(|z|^2 + |w|^2) / 2)``: the diagonal integrates to ``d``
    over the plane, and it is the pointwise limit of the rescaled
    truncated kernel ``sz_kernel(d, q, z/sqrt(q), w/sqrt(q)) / q``.
    """
    zw = z * np.conj(w)
    poly = sum(zw**j / math.factorial(j) for j in range(d))
    return complex(math.exp(-(abs(z) ** 2 + abs(w) ** 2) / 2) / math.pi * poly)


def kernel_grid(radius: float = 1.0, points: int = 7) -> list[complex]:
    xs = np.linspace(-radius, radius, points)
    return [complex(a, b) for a in xs for b in xs if abs(complex(a, b)) <= radius]


def kernel_convergence_report(d: int, q_list, grid=None) -> dict:
    """Sup over ``grid x grid`` of the gap between the rescaled truncated
    kernel and the Ginibre kernel, for each ``q``."""
    grid = kernel_grid() if grid is None else list(grid)
    rows = []
    for q in q_list:
        s = math.sqrt(q)
        pts = [z for z in grid if abs(z) <= s]
        err = 0.0
        for z in pts:
            for w in pts:
                gap = abs(sz_kernel(d, q, z / s, w / s) / q - ginibre_kernel(d, z, w))
                err = max(err, gap)
        rows.append({"q": q, "sup_error": err, "grid_points": len(pts)})
    decreasing = all(b["sup_error"] < a["sup_error"] for a, b in zip(rows, rows[1:]))
    origin = [sz_kernel(d, q, 0, 0) / q == ginibre_kernel(d, 0, 0) for q in q_list]
    return {"d": d, "rows": rows, "strictly_decreasing": decreasing, "origin_exact": all(origin)}


def sz_diagonal_mass(d: int, q: int) -> float:
    """Integral of ``sz_kernel(z, z)`` over the unit disc (expected: ``d``)."""
    value, _ = integrate.quad(lambda r: sz_kernel(d, q, r, r).real * 2 * math.pi * r, 0.0, 1.0, epsabs=1e-12, limit=200)
    return value


def neretin_density(d: int, q: int, p: np.ndarray) -> float:
    """Lebesgue density of the truncated ensemble at the contraction ``p`` (needs ``q >= d``)."""
    if q < d:
        raise ValueError("the truncated ensemble has a density only for q >= d")
    p = np.atleast_2d(np.asarray(p, dtype=complex))
    if p.shape != (d, d):
        raise ValueError(f"expected a {d}x{d} matrix")
    const = hook_product(d, q) / (math.pi ** (d * d) * hook_product(d, q - d))
    gram = np.eye(d) - p.conj().T @ p
    det = np.linalg.det(gram).real
    if det < -1e-12:
        raise ValueError("matrix is not a contraction")
    return const * max(det, 0.0) ** (q - d)


def radial_cdf_from_density(q: int, grid_size: int = 2001) -> tuple[np.ndarray, np.ndarray]:
    """CDF of ``|P|`` for ``d = 1`` by integrating the density over annuli."""
    r = np.linspace(0.0, 1.0, grid_size)
    pieces = [
        integrate.quad(lambda t: neretin_density(1, q, np.array([[t]])) * 2 * math.pi * t, a, b)[0]
        for a, b in zip(r[:-1], r[1:])
    ]
    return r, np.concatenate([[0.0], np.cumsum(pieces)])


def ks_distance(samples: np.ndarray, grid: np.ndarray, cdf: np.ndarray) -> float:
    """Kolmogorov-Smirnov distance between the sample ECDF and an interpolated CDF."""
    x = np.sort(np.asarray(samples))
    n = len(x)
    f = np.interp(x, grid, cdf)
    upper = np.arange(1, n + 1) / n - f
    lower = f - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))


def density_check(q: int, samples: int, seed: int = DEFAULT_SEED) -> dict:
    """Compare sampled ``|P|`` (``d = 1``) with the radial law from the density."""
    radii = np.abs(truncated_samples(1, q, samples, seed)[:, 0, 0])
    grid, cdf = radial_cdf_from_density(q)
    ks = ks_distance(radii, grid, cdf)
    return {"d": 1, "q": q, "samples": samples, "seed": seed, "ks_distance": ks, "total_mass": float(cdf[-1])}
