"""Haar unitaries, truncation, and the blocked Monte Carlo driver.

Every estimate is computed over fixed-size blocks. Block ``k`` draws from
its own stream ``(seed, k)``, so the numbers drawn do not depend on how
many workers are used, and block summaries are merged in block order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

DEFAULT_SEED = 20240607
BLOCK_SIZE = 8192


@dataclass(frozen=True)
class RngStream:
    seed: int
    index: int = 0

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.index,))
        return np.random.Generator(np.random.PCG64(seq))


@dataclass(frozen=True)
class MomentEstimate:
    """Sample mean with its standard error (sample std / sqrt(samples)).

    For complex means ``stderr`` is the error of the real part and
    ``stderr_imag`` that of the imaginary part.
    """

    mean: complex | float
    stderr: float
    samples: int
    seed: int
    stream_count: int
    stderr_imag: float | None = None

    @property
    def is_complex(self) -> bool:
        return self.stderr_imag is not None

    def scaled(self, factor: float) -> "MomentEstimate":
        f = abs(factor)
        return MomentEstimate(
            self.mean * factor,
            self.stderr * f,
            self.samples,
            self.seed,
            self.stream_count,
            None if self.stderr_imag is None else self.stderr_imag * f,
        )

    def to_json(self) -> dict:
        if self.is_complex:
            mean = [float(self.mean.real), float(self.mean.imag)]
            err = [self.stderr, self.stderr_imag]
        else:
            mean, err = float(self.mean), self.stderr
        return {
            "mean": mean,
            "stderr": err,
            "samples": self.samples,
            "seed": self.seed,
            "stream_count": self.stream_count,
        }


def ginibre(shape: tuple[int, ...], gen: np.random.Generator) -> np.ndarray:
    """i.i.d. standard complex Gaussians, ``E|z|^2 = 1``."""
    re = gen.standard_normal(shape)
    im = gen.standard_normal(shape)
    return (re + 1j * im) / np.sqrt(2.0)


def haar_unitaries(m: int, count: int, gen: np.random.Generator) -> np.ndarray:
    """``count`` Haar unitaries of size ``m``, shape ``(count, m, m)``.

    QR of a Ginibre matrix, then the phases of ``diag(R)`` are moved into
    ``Q``; without that correction the law of ``Q`` is not Haar.
    """
    if m < 1:
        raise ValueError("matrix size must be >= 1")
    z = ginibre((count, m, m), gen)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    phases = diag / np.abs(diag)
    return q * phases[..., None, :]


def truncated_haar(d: int, q: int, count: int, gen: np.random.Generator) -> np.ndarray:
    """``count`` draws of the top-left ``d x d`` block of a Haar unitary of size ``d + q``.

    Gram-Schmidt on the first ``d`` columns of a Ginibre matrix produces the
    first ``d`` columns of the full phase-corrected QR factor, so a thin QR
    of a ``(d + q) x d`` Gaussian block gives the same law at ``O(d^2 (d + q))``
    cost instead of ``O((d + q)^3)``.
    """
    if d < 1 or q < 0:
        raise ValueError("need d >= 1 and q >= 0")
    z = ginibre((count, d + q, d), gen)
    cols, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    cols = cols * (diag / np.abs(diag))[..., None, :]
    return cols[..., :d, :]


def sample_haar_unitary(m: int, rng: RngStream | np.random.Generator) -> np.ndarray:
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    return haar_unitaries(m, 1, gen)[0]


def truncate(u: np.ndarray, d: int) -> np.ndarray:
    """Top-left ``d x d`` block (works on stacks of matrices too)."""
    if d < 1 or d > u.shape[-1]:
        raise ValueError(f"cannot truncate a {u.shape[-1]}x{u.shape[-1]} matrix to {d}x{d}")
    return u[..., :d, :d]


def _block_sizes(samples: int, block_size: int) -> list[int]:
    full, rest = divmod(samples, block_size)
    return [block_size] * full + ([rest] if rest else [])


def _summarize(values: np.ndarray) -> tuple[int, np.ndarray, np.ndarray]:
    # (count, mean, M2) per real component; complex values carry two components
    if np.iscomplexobj(values):
        comp = np.stack([values.real, values.imag], axis=-1)
    else:
        comp = values[:, None].astype(float)
    mean = comp.mean(axis=0)
    m2 = ((comp - mean) ** 2).sum(axis=0)
    return len(values), mean, m2


def _merge(a, b):
    na, ma, sa = a
    nb, mb, sb = b
    n = na + nb
    delta = mb - ma
    return n, ma + delta * (nb / n), sa + sb + delta**2 * (na * nb / n)


def monte_carlo(
    draw: Callable[[np.random.Generator, int], np.ndarray],
    samples: int,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
    block_size: int = BLOCK_SIZE,
) -> MomentEstimate:
    """Mean and standard error of ``draw(gen, count)`` over ``samples`` draws."""
    if samples < 2:
        raise ValueError("need at least two samples for a standard error")
    sizes = _block_sizes(samples, block_size)

    def run(k: int):
        values = np.asarray(draw(RngStream(seed, k).generator(), sizes[k]))
        return _summarize(values), np.iscomplexobj(values)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(len(sizes))))
    else:
        results = [run(k) for k in range(len(sizes))]

    total = results[0][0]
    for summary, _ in results[1:]:
        total = _merge(total, summary)
    n, mean, m2 = total
    se = np.sqrt(m2 / (n - 1) / n)
    if results[0][1]:
        return MomentEstimate(complex(mean[0], mean[1]), float(se[0]), n, seed, len(sizes), float(se[1]))
    return MomentEstimate(float(mean[0]), float(se[0]), n, seed, len(sizes))


def truncated_samples(
    d: int, q: int, samples: int, seed: int = DEFAULT_SEED, block_size: int = BLOCK_SIZE
) -> np.ndarray:
    """``samples`` draws from the truncated ensemble, shape ``(samples, d, d)``."""
    parts = [
        truncated_haar(d, q, size, RngStream(seed, k).generator())
        for k, size in enumerate(_block_sizes(samples, block_size))
    ]
    return np.concatenate(parts, axis=0)
