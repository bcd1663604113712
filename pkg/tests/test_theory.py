"""Lens geometry, the interior constant, st sampling and threshold errors."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st_

import boundarykit as bk
from boundarykit import BinningMismatchError

import oracles

SIGMA_PRINTED = 0.4134966716


# -- lens and m --------------------------------------------------------------


def test_lens_endpoints():
    assert bk.lens_area(0.0) == pytest.approx(math.pi, abs=1e-12)
    assert bk.lens_area(2.0) == pytest.approx(0.0, abs=1e-12)


def test_lens_at_one():
    exact = 2 * math.pi / 3 - math.sqrt(3) / 2
    assert bk.lens_area(1.0) == pytest.approx(exact, abs=1e-12)
    assert bk.lens_area(1.0) == pytest.approx(1.2283696986, abs=1e-9)


def test_m_at_one():
    assert bk.m_area(1.0) == pytest.approx(1.9132229550, abs=1e-9)


def test_lens_domain():
    with pytest.raises(ValueError):
        bk.lens_area(-0.1)
    with pytest.raises(ValueError):
        bk.lens_area(2.1)


def test_lens_vectorized():
    x = np.linspace(0, 2, 50)
    v = bk.lens_area(x)
    assert v.shape == (50,)
    assert v[0] == pytest.approx(math.pi)


def test_lens_matches_slice_integral():
    for x in (0.25, 0.5, 1.0, 1.5):
        assert bk.lens_area(x) == pytest.approx(
            oracles.lens_area_by_slices(x), abs=1e-6
        )


@settings(max_examples=60, deadline=None)
@given(st_.floats(min_value=0.0, max_value=2.0, allow_nan=False))
def test_lens_plus_m_is_pi(x):
    assert bk.lens_area(x) + bk.m_area(x) == pytest.approx(math.pi, abs=1e-12)


def test_lens_strictly_decreasing():
    x = np.linspace(0, 2, 200)
    v = bk.lens_area(x)
    assert np.all(np.diff(v) < 0)


# -- the interior constant ---------------------------------------------------


def test_sigma_value():
    s = bk.sigma_interior()
    assert abs(s - SIGMA_PRINTED) < 1e-9
    assert abs(s - 3 * math.sqrt(3) / (4 * math.pi)) < 1e-9


def test_sigma_against_independent_quadrature():
    quad_ref, closed_ref = oracles.sigma_reference()
    s = bk.sigma_interior()
    assert abs(s - quad_ref) < 1e-11
    assert abs(s - closed_ref) < 1e-11


def test_clipped_disk_area():
    assert bk.clipped_disk_area(0.0) == pytest.approx(math.pi / 2)
    assert bk.clipped_disk_area(1.0) == pytest.approx(math.pi)
    assert bk.clipped_disk_area(5.0) == pytest.approx(math.pi)
    with pytest.raises(ValueError):
        bk.clipped_disk_area(-0.5)


def test_clipped_disk_area_monotone():
    s = np.linspace(0, 1, 40)
    v = np.array([bk.clipped_disk_area(x) for x in s])
    assert np.all(np.diff(v) > 0)


# -- st sampling -------------------------------------------------------------


def test_sample_st_validation():
    with pytest.raises(ValueError):
        bk.sample_st(-0.1, 100.0, 10, seed=1)
    with pytest.raises(ValueError):
        bk.sample_st(0.5, 0.0, 10, seed=1)
    with pytest.raises(ValueError):
        bk.sample_st(0.5, 100.0, 0, seed=1)


def test_distribution_invariants():
    d = bk.sample_st(0.7, 30.0, 2000, seed=3)
    assert int(d.counts.sum()) == 2000
    assert len(d.bin_edges) == 101
    assert d.bin_edges[0] == 0.0 and d.bin_edges[-1] == 1.0
    assert 0.0 <= d.mean <= 1.0
    assert d.stddev >= 0.0


def test_sample_st_deterministic():
    a = bk.sample_st(0.3, 40.0, 5000, seed=9)
    b = bk.sample_st(0.3, 40.0, 5000, seed=9)
    assert np.array_equal(a.counts, b.counts)
    assert a.mean == b.mean and a.stddev == b.stddev


def test_sample_st_worker_independent():
    a = bk.sample_st(0.2, 60.0, 25_000, seed=17, workers=1)
    b = bk.sample_st(0.2, 60.0, 25_000, seed=17, workers=4)
    assert np.array_equal(a.counts, b.counts)
    assert a.mean == b.mean and a.stddev == b.stddev


def test_sparse_network_degenerates():
    # mu = 0.5: almost every sample sees at most one other node, st = 0
    d = bk.sample_st(0.0, 0.5, 4000, seed=21)
    assert d.counts[0] / 4000 > 0.9
    assert d.mean < 0.05


def test_interior_mean_tracks_sigma():
    # deep interior, high density: the mean approaches the constant
    d = bk.sample_st(1.0, 500.0, 4000, seed=33)
    se = d.stddev / math.sqrt(4000)
    assert abs(d.mean - SIGMA_PRINTED) < 3 * se + 1e-4


def test_boundary_mean_density_free(dist_b20, dist_b200):
    # the s=0 mean is essentially density independent
    se = math.hypot(dist_b20.stddev / math.sqrt(dist_b20.samples),
                    dist_b200.stddev / math.sqrt(dist_b200.samples))
    assert abs(dist_b20.mean - dist_b200.mean) < 4 * se + 1e-3


def test_means_ordered(dist_b200, dist_i200):
    assert dist_b200.mean < dist_i200.mean
    # frozen regression values for the fixed seeds
    assert dist_b200.mean == pytest.approx(0.217970, abs=1e-5)
    assert dist_i200.mean == pytest.approx(0.413528, abs=1e-5)


def test_separation_grows_with_density(dist_b20, dist_i20, dist_b200, dist_i200):
    lo = bk.separation(dist_b20, dist_i20)
    hi = bk.separation(dist_b200, dist_i200)
    assert 0 < lo < hi


# -- threshold error estimates -----------------------------------------------


def test_estimate_errors_edges(dist_b200, dist_i200):
    r = bk.estimate_errors(dist_b200, dist_i200, 1.0)
    assert r.false_negative_rate == 0.0
    r = bk.estimate_errors(dist_b200, dist_i200, 0.0)
    assert r.false_positive_rate == 0.0
    # boundary mass strictly above threshold 0 excludes the first bin only
    assert r.false_negative_rate == pytest.approx(
        1.0 - dist_b200.counts[0] / dist_b200.samples
    )


def test_estimate_errors_monotone(dist_b200, dist_i200):
    ts = np.linspace(0.0, 1.0, 21)
    fns = [bk.estimate_errors(dist_b200, dist_i200, t).false_negative_rate for t in ts]
    fps = [bk.estimate_errors(dist_b200, dist_i200, t).false_positive_rate for t in ts]
    assert all(a >= b - 1e-12 for a, b in zip(fns, fns[1:]))   # fn falls
    assert all(a <= b + 1e-12 for a, b in zip(fps, fps[1:]))   # fp rises


def test_estimate_errors_threshold_domain(dist_b200, dist_i200):
    with pytest.raises(ValueError):
        bk.estimate_errors(dist_b200, dist_i200, -0.1)
    with pytest.raises(ValueError):
        bk.estimate_errors(dist_b200, dist_i200, 1.1)


def test_estimate_errors_binning_mismatch(dist_b200):
    other = bk.StDistribution(
        s=1.0, mu=200.0, samples=10,
        bin_edges=np.linspace(0, 1, 51), counts=np.zeros(50, dtype=np.int64),
        mean=0.5, stddev=0.1,
    )
    with pytest.raises(BinningMismatchError):
        bk.estimate_errors(dist_b200, other, 0.5)


def test_report_total():
    r = bk.ThresholdErrorReport(0.3, 0.01, 0.02)
    assert r.total == pytest.approx(0.03)


# -- distribution CSV --------------------------------------------------------


def test_distribution_csv_round_trip(tmp_path):
    d = bk.sample_st(0.4, 25.0, 3000, seed=5)
    p = tmp_path / "dist.csv"
    d.to_csv(p)
    d2 = bk.StDistribution.from_csv(p)
    assert d2.s == d.s and d2.mu == d.mu and d2.samples == d.samples
    assert np.array_equal(d2.counts, d.counts)
    assert np.allclose(d2.bin_edges, d.bin_edges)
    assert d2.mean == pytest.approx(d.mean, abs=1e-12)
    assert d2.stddev == pytest.approx(d.stddev, abs=1e-12)


def test_distribution_csv_header(tmp_path):
    d = bk.sample_st(0.4, 25.0, 100, seed=6)
    p = tmp_path / "dist.csv"
    d.to_csv(p)
    lines = p.read_text().splitlines()
    assert lines[0].startswith("#")
    assert lines[1] == "bin_low,bin_high,count"
    assert len(lines) == 2 + 100
