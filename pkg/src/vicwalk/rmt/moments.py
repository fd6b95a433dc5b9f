"""Trace moments of truncated unitaries and the two sides of the unitary
integral identity, plus Schur-function checks of Hall orthogonality.
"""

from __future__ import annotations

import warnings
from fractions import Fraction

import numpy as np

from ..enumeration import GroundStateQuery, z_ground
from ..reports import IdentityReport
from ..lattice import YoungDiagram
from ..series import factorial, hook_product
from .haar import DEFAULT_SEED, MomentEstimate, haar_unitaries, monte_carlo, truncated_haar

MIN_SAMPLES = 100


class DegenerateSpectrumWarning(RuntimeWarning):
    """Eigenvalues were (nearly) repeated and had to be jittered."""


def _check_samples(samples: int):
    if samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples")


def exact_trace_moment(d: int, q: int, n: int) -> Fraction:
    """``E |Tr P|^(2n)`` over the truncated ensemble, from the walk count
    ``Z_d(2n + dq; q)``: ``H_{dxq} (n!)^2 Z / (2n + dq)!``.
    """
    steps = 2 * n + d * q
    z = z_ground(GroundStateQuery(d, steps, q))
    return Fraction(hook_product(d, q) * factorial(n) ** 2 * z, factorial(steps))


def mc_trace_moment(d, q, n, samples, seed=DEFAULT_SEED, workers=1) -> MomentEstimate:
    _check_samples(samples)

    def draw(gen, count):
        p = truncated_haar(d, q, count, gen)
        return np.abs(np.trace(p, axis1=-2, axis2=-1)) ** (2 * n)

    return monte_carlo(draw, samples, seed, workers)


def mc_unitary_side(d, q, x, samples, seed=DEFAULT_SEED, workers=1) -> MomentEstimate:
    """Haar average over ``U(d)`` of ``exp(x Tr(U + U*)) det(U*)^q`` (complex)."""
    _check_samples(samples)

    def draw(gen, count):
        u = haar_unitaries(d, count, gen)
        tr = np.trace(u, axis1=-2, axis2=-1)
        det_conj = np.conj(np.linalg.det(u))
        return np.exp(2.0 * x * tr.real) * det_conj**q

    return monte_carlo(draw, samples, seed, workers)


def mc_truncation_side(d, q, x, samples, seed=DEFAULT_SEED, workers=1) -> MomentEstimate:
    """``x^(dq) / H_{dxq}`` times the truncated-ensemble mean of ``exp(x Tr(P + P*))``."""
    _check_samples(samples)

    def draw(gen, count):
        p = truncated_haar(d, q, count, gen)
        return np.exp(2.0 * x * np.trace(p, axis1=-2, axis2=-1).real)

    est = monte_carlo(draw, samples, seed, workers)
    return est.scaled(x ** (d * q) / hook_product(d, q))


def _exponent_matrix(y: YoungDiagram, d: int) -> np.ndarray:
    if y.length > d:
        raise ValueError(f"{y} has more than {d} rows")
    rows = y.rows + (0,) * (d - y.length)
    return np.array([rows[j] + d - 1 - j for j in range(d)])


def _bialternant(exponents: np.ndarray, x: np.ndarray) -> np.ndarray:
    # x: (..., d) -> det(x_i^{e_j}) over the last axis
    return np.linalg.det(x[..., :, None] ** exponents[None, :])


def schur_eval(y: YoungDiagram, eigenvalues, *, jitter_seed: int = 0) -> complex:
    """Schur polynomial ``s_y`` at the given points via the bialternant formula.

    Repeated points make the ratio 0/0; they are pulled apart by a seeded
    jitter of size 1e-9 and a :class:`DegenerateSpectrumWarning` is issued.
    """
    x = np.asarray(eigenvalues, dtype=complex)
    d = len(x)
    if y.length > d:
        return 0j
    if y.size == 0:
        return 1 + 0j
    base = np.arange(d - 1, -1, -1)
    denom = _bialternant(base, x)
    if abs(denom) < 1e-12:
        warnings.warn("near-degenerate spectrum in schur_eval; jittering", DegenerateSpectrumWarning, stacklevel=2)
        gen = np.random.default_rng(jitter_seed)
        x = x + 1e-9 * np.exp(2j * np.pi * gen.random(d)) * np.arange(1, d + 1) / d
        denom = _bialternant(base, x)
    return complex(_bialternant(_exponent_matrix(y, d), x) / denom)


def _schur_batch(y: YoungDiagram, x: np.ndarray) -> np.ndarray:
    d = x.shape[-1]
    if y.length > d:
        return np.zeros(x.shape[:-1], dtype=complex)
    if y.size == 0:
        return np.ones(x.shape[:-1], dtype=complex)
    base = np.arange(d - 1, -1, -1)
    return _bialternant(_exponent_matrix(y, d), x) / _bialternant(base, x)


def hall_product_mc(lam: YoungDiagram, mu: YoungDiagram, d, samples, seed=DEFAULT_SEED, workers=1) -> MomentEstimate:
    """Haar average of ``s_lam`` at the eigenvalues of ``U`` times ``s_mu`` at those of ``U*``; Schur orthogonality
    says this is 1 when ``lam == mu`` and 0 otherwise."""
    _check_samples(samples)

    def draw(gen, count):
        eig = np.linalg.eigvals(haar_unitaries(d, count, gen))
        return _schur_batch(lam, eig) * np.conj(_schur_batch(mu, eig))

    return monte_carlo(draw, samples, seed, workers)


def gaussian_limit_report(d, n, q_list, samples, seed=DEFAULT_SEED, workers=1) -> dict:
    """``q^n E|Tr P|^(2n)`` for each ``q`` against the Gaussian value ``d^n n!``."""
    target = d**n * factorial(n)
    rows = []
    for q in q_list:
        est = mc_trace_moment(d, q, n, samples, seed, workers).scaled(q**n)
        exact = exact_trace_moment(d, q, n) * q**n
        rows.append(
            {
                "q": q,
                "estimate": est.to_json(),
                "exact": str(exact),
                "exact_float": float(exact),
                "deviation": abs(est.mean - target),
                "exact_deviation": abs(float(exact) - target),
            }
        )
    shrinking = all(b["exact_deviation"] < a["exact_deviation"] for a, b in zip(rows, rows[1:]))
    return {"d": d, "n": n, "target": target, "rows": rows, "exact_deviation_shrinks": shrinking}


def moment_check(d, q, n, samples, seed=DEFAULT_SEED, workers=1, sigmas=4.0) -> IdentityReport:
    """Monte Carlo moment against the exact walk-count prediction."""
    rep = IdentityReport("moments", {"d": d, "q": q, "n": n, "samples": samples, "seed": seed})
    exact = exact_trace_moment(d, q, n)
    est = mc_trace_moment(d, q, n, samples, seed, workers)
    within = abs(est.mean - float(exact)) <= sigmas * est.stderr
    rep.rows.append(
        {"exact": str(exact), "estimate": est.to_json(), "z_score": _z(est.mean - float(exact), est.stderr), "holds": within}
    )
    return rep


def _z(diff: float, se: float) -> float | None:
    return None if se == 0 else float(diff / se)


def weiwettig_check(d, q, x, samples, seed=DEFAULT_SEED, workers=1, sigmas=4.0) -> dict:
    """Truncated-ensemble side against the unitary side at the same ``x``.

    The two estimates use disjoint seeds so their errors are independent.
    """
    trunc = mc_truncation_side(d, q, x, samples, seed, workers)
    unit = mc_unitary_side(d, q, x, samples, seed + 1, workers)
    combined = float(np.hypot(trunc.stderr, unit.stderr))
    diff = trunc.mean - unit.mean.real
    real_ok = abs(diff) <= sigmas * combined
    imag_ok = abs(unit.mean.imag) <= sigmas * unit.stderr_imag
    return {
        "d": d,
        "q": q,
        "x": x,
        "truncation_side": trunc.to_json(),
        "unitary_side": unit.to_json(),
        "combined_stderr": combined,
        "z_real": _z(diff, combined),
        "z_imag": _z(unit.mean.imag, unit.stderr_imag),
        "holds": bool(real_ok and imag_ok),
    }
