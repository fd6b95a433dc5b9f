import itertools
import math
import warnings
from fractions import Fraction

import numpy as np
import pytest

from vicwalk.lattice import YoungDiagram
from vicwalk.rmt import (
    DegenerateSpectrumWarning,
    RngStream,
    asymptotic_ratio,
    asymptotic_rhs,
    exact_trace_moment,
    ginibre_kernel,
    hall_product_mc,
    haar_unitaries,
    kernel_convergence_report,
    mc_trace_moment,
    mc_truncation_side,
    mc_unitary_side,
    neretin_density,
    radial_cdf_from_density,
    sample_haar_unitary,
    schur_eval,
    sz_diagonal_mass,
    sz_kernel,
    truncate,
    truncated_haar,
)
from vicwalk.rmt.haar import monte_carlo
from vicwalk.rmt.kernels import density_check, ks_distance

SEED = 1234


def within(est, target, sigmas=4.0):
    return abs(est.mean - target) <= sigmas * est.stderr


# sampling


def test_u1_is_a_phase():
    u = sample_haar_unitary(1, RngStream(SEED))
    assert abs(abs(u[0, 0]) - 1) < 1e-12


@pytest.mark.parametrize("m", [1, 2, 3, 5, 8])
def test_unitarity(m):
    us = haar_unitaries(m, 200, RngStream(SEED, m).generator())
    gram = np.conj(np.swapaxes(us, -1, -2)) @ us
    assert np.max(np.abs(gram - np.eye(m))) < 1e-12


def test_haar_second_moment_of_entry():
    est = monte_carlo(lambda g, n: np.abs(haar_unitaries(2, n, g)[:, 0, 0]) ** 2, 100_000, SEED)
    assert within(est, 0.5)


def test_phase_correction_matters():
    # Raw QR output of numpy has a real positive-ish bias on diag(R); corrected Q has E[u_11] = 0
    gen = np.random.default_rng(SEED)
    z = (gen.standard_normal((20000, 2, 2)) + 1j * gen.standard_normal((20000, 2, 2))) / np.sqrt(2)
    raw, _ = np.linalg.qr(z)
    fixed = haar_unitaries(2, 20000, np.random.default_rng(SEED))
    se = 1 / np.sqrt(2 * 20000)
    assert abs(raw[:, 0, 0].mean()) > 10 * se
    assert abs(fixed[:, 0, 0].mean()) < 4 * se * np.sqrt(2)


def test_truncate_examples():
    u = sample_haar_unitary(3, RngStream(SEED))
    assert np.array_equal(truncate(u, 3), u)
    assert np.array_equal(truncate(u, 2), u[:2, :2])
    with pytest.raises(ValueError):
        truncate(u, 4)


def test_truncations_are_contractions():
    p = truncated_haar(2, 3, 1000, RngStream(SEED).generator())
    assert np.linalg.svd(p, compute_uv=False).max() <= 1 + 1e-12
    full = truncate(haar_unitaries(5, 1000, RngStream(SEED).generator()), 2)
    assert np.linalg.svd(full, compute_uv=False).max() <= 1 + 1e-12


def test_thin_qr_block_equals_full_qr_block():
    # same Gaussian columns give the same leading columns of Q
    gen = np.random.default_rng(7)
    z = (gen.standard_normal((50, 5, 5)) + 1j * gen.standard_normal((50, 5, 5))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r, axis1=-2, axis2=-1)
    full = (q * (ph / np.abs(ph))[..., None, :])[:, :2, :2]
    qt, rt = np.linalg.qr(z[:, :, :2])
    pht = np.diagonal(rt, axis1=-2, axis2=-1)
    thin = (qt * (pht / np.abs(pht))[..., None, :])[:, :2, :]
    assert np.allclose(full, thin, atol=1e-12)


def test_streams_reproducible_and_distinct():
    a = RngStream(5, 0).generator().standard_normal(4)
    b = RngStream(5, 0).generator().standard_normal(4)
    c = RngStream(5, 1).generator().standard_normal(4)
    assert np.array_equal(a, b) and not np.array_equal(a, c)


def test_estimates_independent_of_worker_count():
    one = mc_trace_moment(2, 1, 1, 30_000, SEED, workers=1)
    four = mc_trace_moment(2, 1, 1, 30_000, SEED, workers=4)
    assert one == four
    assert one == mc_trace_moment(2, 1, 1, 30_000, SEED, workers=1)


# exact moments


def test_exact_trace_moment_examples():
    assert exact_trace_moment(1, 1, 1) == Fraction(1, 2)
    assert exact_trace_moment(1, 0, 1) == 1
    assert exact_trace_moment(2, 0, 1) == 1


def test_exact_moments_of_cue_match_permutation_counts():
    # E|Tr U|^(2n) over U(d) counts permutations with LIS <= d
    from vicwalk.enumeration import u_count

    for d in (1, 2, 3):
        for n in range(6):
            assert exact_trace_moment(d, 0, n) == u_count(d, n)


def test_exact_d1_moments_are_beta_moments():
    # |u_11|^2 ~ Beta(1, q): E|u_11|^(2n) = n! q! / (n + q)!
    for q in range(1, 6):
        for n in range(5):
            expected = Fraction(math.factorial(n) * math.factorial(q), math.factorial(n + q))
            assert exact_trace_moment(1, q, n) == expected


def test_mc_moment_examples():
    assert within(mc_trace_moment(1, 1, 1, 100_000, SEED), 0.5)
    est = mc_trace_moment(2, 1, 0, 1000, SEED)
    assert est.mean == 1.0 and est.stderr == 0.0


def test_mc_sample_floor():
    with pytest.raises(ValueError):
        mc_trace_moment(1, 1, 1, 50, SEED)


# unitary integral identity


def test_unitary_side_d1():
    from scipy.special import iv

    est = mc_unitary_side(1, 0, 0.5, 100_000, SEED)
    assert abs(est.mean.real - iv(0, 1.0)) <= 4 * est.stderr
    est = mc_unitary_side(1, 1, 0.5, 100_000, SEED)
    assert abs(est.mean.real - iv(1, 1.0)) <= 4 * est.stderr
    assert abs(est.mean.imag) <= 4 * est.stderr_imag


def test_unitary_side_vanishes_at_zero():
    est = mc_unitary_side(2, 1, 0.0, 50_000, SEED)
    assert abs(est.mean.real) <= 4 * est.stderr
    assert abs(est.mean.imag) <= 4 * est.stderr_imag


def test_truncation_side_examples():
    from scipy.special import iv

    est = mc_truncation_side(1, 0, 0.5, 100_000, SEED)
    assert within(est, iv(0, 1.0))
    zero = mc_truncation_side(2, 1, 0.0, 1000, SEED)
    assert zero.mean == 0.0 and zero.stderr == 0.0


def test_two_sides_agree_d2_q1():
    a = mc_truncation_side(2, 1, 0.3, 100_000, SEED)
    b = mc_unitary_side(2, 1, 0.3, 100_000, SEED + 1)
    assert abs(a.mean - b.mean.real) <= 4 * math.hypot(a.stderr, b.stderr)


# kernels


def test_sz_kernel_examples():
    for d in (1, 2, 3):
        for q in (1, 2, 5):
            assert sz_kernel(d, q, 0, 0) == pytest.approx(q / math.pi, abs=0)
    for z in (0.3 + 0.1j, -0.5j, 0.9):
        assert sz_kernel(1, 1, z, z) == pytest.approx(1 / math.pi, rel=1e-15)
    with pytest.raises(ValueError):
        sz_kernel(1, 2, 1.2, 0)


@pytest.mark.parametrize("d, q", [(1, 1), (2, 3), (3, 1), (2, 16)])
def test_sz_diagonal_integrates_to_d(d, q):
    assert abs(sz_diagonal_mass(d, q) - d) < 1e-3


def test_ginibre_kernel_examples():
    assert ginibre_kernel(3, 0, 0) == 1 / math.pi
    assert sz_kernel(2, 7, 0, 0) / 7 == ginibre_kernel(2, 0, 0)
    z, w = 0.4 + 0.2j, -0.1 + 0.3j
    assert ginibre_kernel(1, z, w) == pytest.approx(math.exp(-(abs(z) ** 2 + abs(w) ** 2) / 2) / math.pi)


def test_ginibre_diagonal_integrates_to_d():
    from scipy import integrate

    for d in (1, 2, 3):
        mass, _ = integrate.quad(lambda r: ginibre_kernel(d, r, r).real * 2 * math.pi * r, 0, np.inf)
        assert abs(mass - d) < 1e-8


def test_kernel_convergence_decreasing():
    rep = kernel_convergence_report(2, [16, 64, 256])
    errs = [r["sup_error"] for r in rep["rows"]]
    assert errs[0] > errs[1] > errs[2]
    assert rep["origin_exact"]


def test_kernel_convergence_excludes_points_outside_disc():
    rep = kernel_convergence_report(1, [1], grid=[0j, 0.5, 2.0])
    assert rep["rows"][0]["grid_points"] == 2


def test_kernel_origin_error_is_zero():
    rep = kernel_convergence_report(2, [4, 9], grid=[0j])
    assert all(r["sup_error"] == 0 for r in rep["rows"])


# density


def test_neretin_density_examples():
    for z in (0, 0.3, 0.5 + 0.5j):
        assert neretin_density(1, 1, np.array([[z]])) == pytest.approx(1 / math.pi)
    value = neretin_density(2, 3, np.zeros((2, 2)))
    from vicwalk.series import hook_product

    assert value == pytest.approx(hook_product(2, 3) / (math.pi**4 * hook_product(2, 1)))
    with pytest.raises(ValueError):
        neretin_density(2, 1, np.zeros((2, 2)))


def test_radial_cdf_matches_closed_form():
    for q in (1, 3, 6):
        r, cdf = radial_cdf_from_density(q, grid_size=401)
        assert np.max(np.abs(cdf - (1 - (1 - r**2) ** q))) < 1e-10


def test_density_ks_d1():
    for q in (1, 3):
        assert density_check(q, 50_000, SEED)["ks_distance"] < 0.01


def test_ks_distance_detects_wrong_law():
    r = np.abs(truncated_haar(1, 3, 20000, np.random.default_rng(1))[:, 0, 0])
    grid, cdf = radial_cdf_from_density(1)
    assert ks_distance(r, grid, cdf) > 0.1


# Schur functions


def _ssyt_schur(rows, x):
    # brute force over fillings with entries 1..len(x), rows weakly increasing, columns strictly
    cells = [(i, j) for i, r in enumerate(rows) for j in range(r)]
    total = 0j
    for fill in itertools.product(range(len(x)), repeat=len(cells)):
        t = dict(zip(cells, fill))
        if all(t[(i, j)] <= t[(i, j + 1)] for (i, j) in cells if (i, j + 1) in t) and all(
            t[(i, j)] < t[(i + 1, j)] for (i, j) in cells if (i + 1, j) in t
        ):
            total += np.prod([x[v] for v in fill]) if fill else 1
    return total


def test_schur_examples():
    x = np.array([0.3 + 0.4j, -0.7 + 0.1j])
    assert schur_eval(YoungDiagram(()), x) == pytest.approx(1)
    assert schur_eval(YoungDiagram((1,)), x) == pytest.approx(x[0] + x[1])
    assert schur_eval(YoungDiagram((1, 1)), x) == pytest.approx(x[0] * x[1])
    assert schur_eval(YoungDiagram((1, 1, 1)), x) == 0


@pytest.mark.parametrize("rows", [(2,), (2, 1), (3, 1), (2, 2), (2, 1, 1), (3, 2, 1)])
def test_schur_bialternant_matches_tableaux(rows):
    x = np.exp(1j * np.array([0.3, 1.9, -2.2]))
    assert schur_eval(YoungDiagram(rows), x) == pytest.approx(_ssyt_schur(rows, x), abs=1e-10)


def test_schur_degenerate_spectrum_is_flagged():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        v = schur_eval(YoungDiagram((1,)), [1.0, 1.0])
    assert any(issubclass(w.category, DegenerateSpectrumWarning) for w in caught)
    assert v == pytest.approx(2.0, abs=1e-6)


def test_hall_product_examples():
    est = hall_product_mc(YoungDiagram(()), YoungDiagram(()), 2, 500, SEED)
    assert est.mean == 1
    est = hall_product_mc(YoungDiagram((1,)), YoungDiagram((1,)), 2, 100_000, SEED)
    assert abs(est.mean.real - 1) <= 4 * est.stderr
    est = hall_product_mc(YoungDiagram((2,)), YoungDiagram((1, 1)), 2, 100_000, SEED)
    assert abs(est.mean.real) <= 4 * est.stderr


# asymptotics


def test_asymptotic_examples():
    assert asymptotic_rhs(1, 0, 5) == pytest.approx(1)
    assert asymptotic_rhs(1, 1, 100) == pytest.approx(100)
    rep = asymptotic_ratio(1, 1, 100)
    assert rep["z"] == "102"
    r = asymptotic_ratio(2, 0, 2)
    assert r["rhs"] > 0 and math.isfinite(r["ratio"])


def test_asymptotic_rhs_log_domain_guard():
    from vicwalk.rmt.asymptotics import log_asymptotic_rhs

    assert asymptotic_rhs(6, 2, 300) == math.inf
    assert math.isfinite(log_asymptotic_rhs(6, 2, 300))
    assert math.isfinite(asymptotic_ratio(3, 1, 5)["ratio"])


def test_gaussian_limit_d1_closed_form():
    for q in (1, 4, 64, 1000):
        assert float(exact_trace_moment(1, q, 1) * q) == pytest.approx(q / (q + 1), abs=1e-12)
