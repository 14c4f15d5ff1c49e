"""FFT reference path: 2D DFT of the embedded kernel per channel pair.

Serves as the comparison baseline for the symbol path.  Each kernel tap is
placed at its wrapped offset on the torus (accumulating on collisions), the
grid is transformed per (out, in) channel pair with a hand-rolled mixed-radix
{2,3,5} transform, and the DFT coefficients are scattered into per-frequency
blocks.  The resulting blocks match the symbol path exactly; only spectra are
contractually required to agree.
"""

from __future__ import annotations

import time
import warnings

import numpy as np

from .errors import AllocationFailure
from .kernels import ConvKernel, FrequencyGrid, SpatialDims, validate_kernel
from .symbol import (
    BLOCK_CONTIGUOUS,
    FREQUENCY_STRIDED,
    LAYOUTS,
    SymbolField,
    convert_layout,
    mem_budget_bytes,
)


def _smooth_235(size: int) -> bool:
    for r in (2, 3, 5):
        while size % r == 0:
            size //= r
    return size == 1


def _naive_dft_last(x, sign):
    size = x.shape[-1]
    grid = np.arange(size)
    w = np.exp(sign * 2j * np.pi * np.outer(grid, grid) / size)
    return x @ w


def _fft_rec(x, sign):
    size = x.shape[-1]
    if size == 1:
        return x.astype(np.complex128, copy=True)
    for r in (2, 3, 5):
        if size % r == 0:
            break
    half = size // r
    parts = [_fft_rec(x[..., j::r], sign) for j in range(r)]
    ks = np.arange(half)
    for j in range(1, r):
        parts[j] = parts[j] * np.exp(sign * 2j * np.pi * (j * ks) / size)
    out = np.empty(x.shape[:-1] + (size,), dtype=np.complex128)
    for t in range(r):
        acc = parts[0].copy()
        for j in range(1, r):
            acc += parts[j] * np.exp(sign * 2j * np.pi * (t * j) / r)
        out[..., t * half:(t + 1) * half] = acc
    return out


def _dft_last(x, sign):
    size = x.shape[-1]
    if _smooth_235(size):
        return _fft_rec(x, sign)
    warnings.warn(
        f"transform size {size} has prime factors outside {{2,3,5}}; "
        "falling back to the direct O(N^2) DFT",
        RuntimeWarning,
    )
    return _naive_dft_last(x, sign)


def _dft2_batch(x, sign):
    y = _dft_last(x, sign)
    y = _dft_last(y.swapaxes(-1, -2), sign)
    return np.ascontiguousarray(y.swapaxes(-1, -2))


def dft_2d(a) -> np.ndarray:
    """Forward 2D DFT, negative-exponent convention.

    X[i,j] = sum_{u,v} a[u,v] * exp(-2*pi*1j*(i*u/m + j*v/n)) for an m x n
    input.
    """
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError(f"dft_2d expects a 2D array, got shape {a.shape}")
    return _dft2_batch(a.astype(np.complex128, copy=False)[None], -1)[0]


def idft_2d(a) -> np.ndarray:
    """Inverse of dft_2d: positive exponent, normalized by the grid size."""
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError(f"idft_2d expects a 2D array, got shape {a.shape}")
    return _dft2_batch(a.astype(np.complex128, copy=False)[None], +1)[0] / a.size


def fft_symbol_field(
    kernel: ConvKernel,
    dims: SpatialDims,
    layout: str = BLOCK_CONTIGUOUS,
    mem_budget_gib=None,
) -> SymbolField:
    """Per-frequency blocks via channel-pair 2D DFTs of the embedded kernel.

    Embedding plus the transforms count as transform time; gathering the DFT
    coefficients into per-frequency blocks counts as copy time.
    """
    validate_kernel(kernel)
    if layout not in LAYOUTS:
        raise ValueError(f"unknown layout {layout!r}")
    grid = FrequencyGrid(dims)
    n, m = dims.n, dims.m
    co, ci = kernel.c_out, kernel.c_in
    # the embedded channel-pair grids match the field size, so budget both
    need = 2 * dims.size * co * ci * 16
    budget = mem_budget_bytes(mem_budget_gib)
    if need > budget:
        raise AllocationFailure(
            f"fft path needs {need} bytes for {co * ci} embedded {m}x{n} grids "
            f"plus the block field, budget is {budget} bytes"
        )

    t0 = time.perf_counter()
    offs = kernel.offsets()
    taps = kernel.taps()
    embedded = np.zeros((co * ci, m, n), dtype=np.complex128)
    for t in range(offs.shape[0]):
        embedded[:, offs[t, 0] % m, offs[t, 1] % n] += taps[t].ravel()
    coeffs = _dft2_batch(embedded, -1)
    s_transform = time.perf_counter() - t0

    t1 = time.perf_counter()
    # coefficient (a, b) is the symbol at the negated frequency, so the block
    # for grid point (i, j) ~ (i/n, j/m) sits at a = -j mod m, b = -i mod n
    gi = np.repeat(np.arange(n), m)
    gj = np.tile(np.arange(m), n)
    gathered = coeffs[:, (-gj) % m, (-gi) % n]
    blocks = np.ascontiguousarray(gathered.T).reshape(dims.size, co, ci)
    s_copy = time.perf_counter() - t1

    fld = SymbolField(grid=grid, blocks=blocks, layout=BLOCK_CONTIGUOUS,
                      source="fft", s_transform=s_transform, s_copy=s_copy)
    if layout == FREQUENCY_STRIDED:
        fld = convert_layout(fld, FREQUENCY_STRIDED)
    return fld
