import numpy as np
import pytest

import convspectra as cs

from conftest import identity_kernel


def naive_dft2(x):
    """O(N^4) direct double sum, the independent oracle for dft_2d."""
    m, n = x.shape
    out = np.zeros((m, n), dtype=complex)
    for a in range(m):
        for b in range(n):
            for u in range(m):
                for v in range(n):
                    out[a, b] += x[u, v] * np.exp(-2j * np.pi * (a * u / m + b * v / n))
    return out


def test_delta_gives_all_ones():
    x = np.zeros((4, 4))
    x[0, 0] = 1.0
    assert np.allclose(cs.dft_2d(x), np.ones((4, 4)), atol=1e-12)


def test_constant_gives_scaled_delta():
    got = cs.dft_2d(np.ones((4, 4)))
    expected = np.zeros((4, 4), dtype=complex)
    expected[0, 0] = 16.0
    assert np.allclose(got, expected, atol=1e-12)


@pytest.mark.parametrize("shape", [(8, 8), (6, 4), (10, 5), (3, 9), (2, 2)])
def test_matches_naive_dft(shape):
    rng = np.random.default_rng(shape[0] * 10 + shape[1])
    x = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    got = cs.dft_2d(x)
    ref = naive_dft2(x)
    assert np.max(np.abs(got - ref)) <= 1e-10 * max(1.0, np.abs(ref).max())


def test_inverse_roundtrip():
    rng = np.random.default_rng(0)
    x = rng.standard_normal((12, 10)) + 1j * rng.standard_normal((12, 10))
    back = cs.idft_2d(cs.dft_2d(x))
    assert np.max(np.abs(back - x)) <= 1e-10 * np.abs(x).max()


def test_nonsmooth_size_warns_and_matches():
    rng = np.random.default_rng(1)
    x = rng.standard_normal((7, 7))
    with pytest.warns(RuntimeWarning, match="prime factors"):
        got = cs.dft_2d(x)
    assert np.max(np.abs(got - naive_dft2(x))) <= 1e-10 * np.abs(got).max()


def test_identity_kernel_field_matches_symbol_path():
    dims = cs.SpatialDims(4, 4)
    via_fft = cs.fft_symbol_field(identity_kernel(2), dims)
    via_sym = cs.build_symbol_field(identity_kernel(2), dims)
    assert via_fft.blocks.shape == (16, 2, 2)
    assert np.allclose(via_fft.blocks, np.eye(2), atol=1e-13)
    assert np.allclose(via_fft.blocks, via_sym.blocks, atol=1e-13)
    assert via_fft.source == "fft"


def test_averaging_2x2_wrapped_scalars(averaging_kernel):
    # kernel wider than the torus: taps wrap and accumulate
    fld = cs.fft_symbol_field(averaging_kernel, cs.SpatialDims(2, 2))
    got = np.sort(fld.blocks[:, 0, 0].real)
    assert np.allclose(got, [-1 / 3, -1 / 3, 1 / 9, 1.0], atol=1e-13)


def test_per_block_agreement_up_to_unit_phase():
    kernel = cs.random_kernel(2, 2, 3, 3, seed=21)
    dims = cs.SpatialDims(n=6, m=4)
    fft_fld = cs.fft_symbol_field(kernel, dims)
    sym_fld = cs.build_symbol_field(kernel, dims)
    for f in range(len(fft_fld.grid)):
        a, b = fft_fld.blocks[f], sym_fld.blocks[f]
        idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
        scalar = a[idx] / b[idx]
        assert abs(abs(scalar) - 1.0) <= 1e-10
        assert np.allclose(a, scalar * b, atol=1e-12 * np.abs(b).max())


@pytest.mark.parametrize("dims,channels,seed", [
    ((8, 8), (3, 3), 22),
    ((6, 10), (2, 3), 23),
    ((5, 5), (1, 1), 24),
])
def test_cross_path_spectra(dims, channels, seed):
    kernel = cs.random_kernel(channels[1], channels[0], 3, 3, seed=seed)
    sd = cs.SpatialDims(*dims)
    lfa = cs.compute_spectrum(kernel, sd, method="lfa").values
    fft = cs.compute_spectrum(kernel, sd, method="fft").values
    assert np.allclose(fft, lfa, rtol=1e-8, atol=1e-12 * lfa[0])


def test_fft_timing_split():
    fld = cs.fft_symbol_field(cs.random_kernel(2, 2, 3, 3, seed=25),
                              cs.SpatialDims(8, 8))
    assert fld.s_transform > 0
    assert fld.s_copy > 0


def test_dft_rejects_non_2d():
    with pytest.raises(ValueError):
        cs.dft_2d(np.zeros(4))
