import numpy as np
import pytest

import convspectra as cs
from convspectra.errors import EmptySpectrum

from conftest import identity_kernel


def spectrum_of(values):
    return cs.SpectrumResult(
        values=np.asarray(values, dtype=float),
        method="lfa", boundary="periodic",
        dims=cs.SpatialDims(1, 1), channels=(1, 1),
    )


def test_summary_identity_kernel():
    res = cs.compute_spectrum(identity_kernel(16), cs.SpatialDims(4, 4))
    summary = cs.spectral_summary(res)
    assert summary.sigma_max == summary.sigma_min == 1.0
    assert summary.count == 256
    assert summary.condition == 1.0
    assert summary.mean == 1.0


def test_summary_averaging(averaging_kernel):
    res = cs.compute_spectrum(averaging_kernel, cs.SpatialDims(2, 2))
    summary = cs.spectral_summary(res)
    assert abs(summary.sigma_max - 1.0) < 1e-14
    assert abs(summary.sigma_min - 1 / 9) < 1e-14
    assert abs(summary.condition - 9.0) < 1e-12


def test_summary_histogram_shape():
    summary = cs.spectral_summary(spectrum_of([3.0, 1.0, 0.1, 2.0]))
    assert summary.histogram.shape == (64,)
    assert summary.histogram.sum() == 4
    assert summary.bin_edges[0] == 0.0
    assert summary.bin_edges[-1] == 3.0


def test_summary_zero_spectrum_condition():
    summary = cs.spectral_summary(spectrum_of([0.0, 0.0]))
    assert summary.condition == np.inf


def test_summary_empty_raises():
    with pytest.raises(EmptySpectrum):
        cs.spectral_summary(spectrum_of([]))


def test_summary_max_is_operator_norm():
    kernel = cs.random_kernel(2, 2, 3, 3, seed=32)
    dims = cs.SpatialDims(4, 4)
    summary = cs.spectral_summary(cs.compute_spectrum(kernel, dims))
    dense = cs.build_explicit(kernel, dims, "periodic").to_dense()
    norm = np.linalg.norm(dense, ord=2)
    assert abs(summary.sigma_max - norm) <= 1e-6 * norm


def test_w1_identical_is_zero():
    a = spectrum_of([2.0, 1.0, 0.5])
    assert cs.wasserstein1(a, a) == 0.0


def test_w1_hand_computed_pair():
    assert cs.wasserstein1(spectrum_of([1.0, 1.0]), spectrum_of([1.0, 0.0])) == 0.5


def test_w1_resampled_hand_case():
    # (2,0) resampled at the quantiles of (2,1,0) interpolates to (2,1,0)
    assert cs.wasserstein1(spectrum_of([2.0, 1.0, 0.0]), spectrum_of([2.0, 0.0])) == 0.0


def test_w1_symmetry():
    a = spectrum_of([3.0, 2.0, 0.5, 0.25])
    b = spectrum_of([1.5, 1.0])
    assert cs.wasserstein1(a, b) == cs.wasserstein1(b, a)


def test_w1_scales_linearly():
    rng = np.random.default_rng(33)
    a = spectrum_of(np.abs(rng.standard_normal(40)))
    b = spectrum_of(np.abs(rng.standard_normal(25)))
    base = cs.wasserstein1(a, b)
    scaled = cs.wasserstein1(spectrum_of(3.5 * a.values), spectrum_of(3.5 * b.values))
    assert abs(scaled - 3.5 * base) <= 1e-12 * scaled


def test_w1_empty_raises():
    with pytest.raises(EmptySpectrum):
        cs.wasserstein1(spectrum_of([]), spectrum_of([1.0]))


def _w1_reference(a, b):
    """Independent reimplementation: explicit per-quantile interpolation loop."""
    long_, short = (a, b) if len(a) >= len(b) else (b, a)
    long_ = sorted(long_, reverse=True)
    short = sorted(short, reverse=True)
    total = 0.0
    for j, val in enumerate(long_):
        t = j / (len(long_) - 1) if len(long_) > 1 else 0.0
        pos = t * (len(short) - 1)
        lo = int(np.floor(pos))
        hi = min(lo + 1, len(short) - 1)
        frac = pos - lo
        interp = (1 - frac) * short[lo] + frac * short[hi]
        total += abs(val - interp)
    return total / len(long_)


def test_w1_matches_independent_reimplementation():
    kernel = cs.random_kernel(2, 2, 3, 3, seed=34)
    dims = cs.SpatialDims(8, 8)
    per = cs.compute_spectrum(kernel, dims)
    diri = cs.dense_spectrum(cs.build_explicit(kernel, dims, "dirichlet"))
    got = cs.wasserstein1(per, diri)
    ref = _w1_reference(per.values.tolist(), diri.values.tolist())
    assert abs(got - ref) <= 1e-12 * max(1.0, ref)


def test_boundary_compare_rows():
    kernel = cs.random_kernel(2, 2, 3, 3, seed=35)
    rows = cs.boundary_compare(kernel, [4, 8])
    assert len(rows) == 4
    periodic = [r for r in rows if r.boundary == "periodic"]
    dirichlet = [r for r in rows if r.boundary == "dirichlet"]
    assert all(r.w1_vs_periodic == 0.0 for r in periodic)  # self check
    assert all(r.w1_vs_periodic > 0.0 for r in dirichlet)
    assert {r.method for r in periodic} == {"lfa"}
    assert {r.method for r in dirichlet} == {"explicit"}
    assert all(r.count == r.n * r.m * 2 for r in rows)


def test_boundary_effect_shrinks_with_size():
    kernel = cs.random_kernel(2, 2, 3, 3, seed=36)
    rows = cs.boundary_compare(kernel, [4, 16])
    w1 = {r.n: r.w1_vs_periodic for r in rows if r.boundary == "dirichlet"}
    assert w1[16] < w1[4]
    rel = cs.relative_max_difference(rows)
    assert rel[(16, 16)] < rel[(4, 4)]


def test_boundary_csv(tmp_path):
    kernel = identity_kernel(2)
    rows = cs.boundary_compare(kernel, [4])
    path = tmp_path / "boundary.csv"
    cs.write_boundary_csv(rows, path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "n,m,c_in,c_out,method,boundary,sigma_max,sigma_min,w1_vs_periodic,count"
    assert len(lines) == 3
    first = lines[1].split(",")
    assert first[0] == "4" and first[4] == "lfa" and first[5] == "periodic"
