"""Symbol field construction: one c_out x c_in complex block per frequency.

The symbol at frequency k is the sum over kernel offsets y of
``M_y * exp(2*pi*1j * (k[0]*y_width + k[1]*y_height))`` where M_y is the
c_out x c_in weight slice at offset y.  Frequency components pair with
spatial axes by period (k[0]=i/n has period 1/n and acts on the width axis),
which is what makes the periodic unrolled operator and the symbol field
share a spectrum for n != m.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

import numpy as np
from numba import njit, prange

from .errors import AllocationFailure
from .kernels import ConvKernel, FrequencyGrid, SpatialDims, validate_kernel

BLOCK_CONTIGUOUS = "block_contiguous"
FREQUENCY_STRIDED = "frequency_strided"
LAYOUTS = (BLOCK_CONTIGUOUS, FREQUENCY_STRIDED)

DEFAULT_MEM_BUDGET_GIB = 16.0
MEM_BUDGET_ENV = "CONV_SPECTRA_MEM_BUDGET_GIB"


def mem_budget_bytes(mem_budget_gib=None) -> int:
    """Resolve the symbol-field allocation budget (parameter > env > default)."""
    if mem_budget_gib is None:
        mem_budget_gib = float(os.environ.get(MEM_BUDGET_ENV, DEFAULT_MEM_BUDGET_GIB))
    return int(mem_budget_gib * 2**30)


@dataclass(frozen=True)
class SymbolField:
    """n*m symbol blocks over a frequency grid, with an explicit layout tag.

    ``blocks`` always has shape (n*m, c_out, c_in).  With the
    block_contiguous layout each block occupies consecutive storage; with
    frequency_strided the backing store is (c_out, c_in, n*m) and ``blocks``
    is a strided view of it.  Build/copy wall-clock costs ride along so the
    SVD stage can assemble phase timings.
    """

    grid: FrequencyGrid
    blocks: np.ndarray = field(repr=False)
    layout: str = BLOCK_CONTIGUOUS
    source: str = "lfa"
    s_transform: float = 0.0
    s_copy: float = 0.0

    @property
    def c_out(self) -> int:
        return self.blocks.shape[1]

    @property
    def c_in(self) -> int:
        return self.blocks.shape[2]

    def block(self, f: int) -> np.ndarray:
        return self.blocks[f]


def _phase_argument(kernel, k):
    offs = kernel.offsets()
    # k[0] has period 1/n -> width offsets (column 1); k[1] -> height offsets
    return k[0] * offs[:, 1] + k[1] * offs[:, 0]


def symbol_at(kernel: ConvKernel, k) -> np.ndarray:
    """Symbol block of ``kernel`` at a single frequency pair ``k``.

    Summation runs over offsets in row-major tensor-index order so repeated
    calls are bit-for-bit reproducible.
    """
    validate_kernel(kernel)
    phases = np.exp(2j * np.pi * _phase_argument(kernel, k))
    taps = kernel.taps()
    out = np.zeros((kernel.c_out, kernel.c_in), dtype=np.complex128)
    for t in range(taps.shape[0]):
        out += phases[t] * taps[t]
    return out


@njit(parallel=True, cache=True)
def _symbol_blocks(freqs, offs, taps, out):
    # per-frequency accumulation in fixed tap order: bit-identical results for
    # any thread count, and no BLAS threads competing with the SVD stage
    two_pi = 2.0 * np.pi
    F = freqs.shape[0]
    T = offs.shape[0]
    co, ci = taps.shape[1], taps.shape[2]
    for f in prange(F):
        k1 = freqs[f, 0]
        k2 = freqs[f, 1]
        for t in range(T):
            arg = two_pi * (k1 * offs[t, 1] + k2 * offs[t, 0])
            phase = complex(np.cos(arg), np.sin(arg))
            for o in range(co):
                for i in range(ci):
                    out[f, o, i] += phase * taps[t, o, i]


def build_symbol_field(
    kernel: ConvKernel,
    dims: SpatialDims,
    layout: str = BLOCK_CONTIGUOUS,
    mem_budget_gib=None,
) -> SymbolField:
    """Evaluate the symbol on the full frequency grid.

    Every block equals symbol_at at its grid frequency (same bits regardless
    of layout).  Raises AllocationFailure before touching memory if the field
    would exceed the configured budget.
    """
    validate_kernel(kernel)
    if layout not in LAYOUTS:
        raise ValueError(f"unknown layout {layout!r}")
    grid = FrequencyGrid(dims)
    need = dims.size * kernel.c_out * kernel.c_in * 16
    budget = mem_budget_bytes(mem_budget_gib)
    if need > budget:
        raise AllocationFailure(
            f"symbol field needs {need} bytes "
            f"({dims.size} blocks of {kernel.c_out}x{kernel.c_in} complex128), "
            f"budget is {budget} bytes"
        )

    t0 = time.perf_counter()
    blocks = np.zeros((dims.size, kernel.c_out, kernel.c_in), dtype=np.complex128)
    _symbol_blocks(grid.frequencies, kernel.offsets().astype(np.float64),
                   kernel.taps(), blocks)
    s_transform = time.perf_counter() - t0

    fld = SymbolField(grid=grid, blocks=blocks, layout=BLOCK_CONTIGUOUS,
                      s_transform=s_transform)
    if layout == FREQUENCY_STRIDED:
        fld = convert_layout(fld, FREQUENCY_STRIDED)
    return fld


def convert_layout(fld: SymbolField, layout: str) -> SymbolField:
    """Re-store the blocks in the requested layout; conversion time is s_copy."""
    if layout not in LAYOUTS:
        raise ValueError(f"unknown layout {layout!r}")
    if layout == fld.layout:
        return fld
    t0 = time.perf_counter()
    if layout == FREQUENCY_STRIDED:
        base = np.ascontiguousarray(fld.blocks.transpose(1, 2, 0))
        blocks = base.transpose(2, 0, 1)
    else:
        blocks = np.ascontiguousarray(fld.blocks)
    s_copy = time.perf_counter() - t0
    return SymbolField(grid=fld.grid, blocks=blocks, layout=layout,
                       source=fld.source, s_transform=fld.s_transform,
                       s_copy=fld.s_copy + s_copy)
