"""Unrolled convolution matrices: the ground-truth oracle path.

The convolution is materialized as a sparse (m*n*c_out) x (m*n*c_in)
coordinate list under periodic (wrap) or dirichlet (zero padding) boundary
conditions, then densified for a direct LAPACK SVD.  Index linearization is
row = (x1*n + x2)*c_out + o and col likewise with c_in, where x1 is the row
coordinate (period m) and x2 the column coordinate (period n).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .blocksvd import PhaseTimings, SpectrumResult, sort_descending
from .errors import KernelLargerThanTorus, ShapeMismatch, SizeCapExceeded
from .kernels import ConvKernel, SpatialDims, validate_kernel

PERIODIC = "periodic"
DIRICHLET = "dirichlet"
BOUNDARIES = (PERIODIC, DIRICHLET)

DEFAULT_SIZE_CAP = 20_000


@dataclass(frozen=True)
class ExplicitMatrix:
    """Sparse coordinate-list view of the unrolled convolution."""

    rows: int
    cols: int
    row_idx: np.ndarray = field(repr=False)
    col_idx: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    boundary: str
    dims: SpatialDims
    channels: tuple

    @property
    def nnz(self) -> int:
        return len(self.values)

    def to_dense(self) -> np.ndarray:
        flat = self.row_idx * self.cols + self.col_idx
        dense = np.bincount(flat, weights=self.values, minlength=self.rows * self.cols)
        return dense.reshape(self.rows, self.cols)

    def matvec(self, vec: np.ndarray) -> np.ndarray:
        vec = np.asarray(vec)
        if vec.shape != (self.cols,):
            raise ShapeMismatch(f"expected vector of length {self.cols}, got {vec.shape}")
        out = np.zeros(self.rows, dtype=np.result_type(self.values, vec))
        np.add.at(out, self.row_idx, self.values * vec[self.col_idx])
        return out


def _check_cap(rows, cols, size_cap):
    cap = DEFAULT_SIZE_CAP if size_cap is None else int(size_cap)
    if rows > cap or cols > cap:
        raise SizeCapExceeded(
            f"explicit matrix would be {rows}x{cols}, cap is {cap} per side"
        )


def build_explicit(kernel: ConvKernel, dims: SpatialDims, boundary: str = PERIODIC,
                   size_cap=None) -> ExplicitMatrix:
    """Materialize the convolution matrix entry list.

    Every tap emits an entry per (spatial point, channel pair), including
    zero-valued taps; wrapped collisions stay separate entries and are summed
    on densification.
    """
    validate_kernel(kernel)
    if boundary not in BOUNDARIES:
        raise ValueError(f"unknown boundary {boundary!r}")
    n, m = dims.n, dims.m
    co, ci = kernel.c_out, kernel.c_in
    rows, cols = m * n * co, m * n * ci
    _check_cap(rows, cols, size_cap)

    offs = kernel.offsets()
    if boundary == DIRICHLET:
        if np.abs(offs[:, 0]).max() >= m or np.abs(offs[:, 1]).max() >= n:
            raise KernelLargerThanTorus(
                "dirichlet masking needs |offset| < dims componentwise; "
                f"kernel {kernel.k_h}x{kernel.k_w} does not fit {m}x{n}"
            )

    x1 = np.repeat(np.arange(m), n)
    x2 = np.tile(np.arange(n), m)
    o_idx = np.arange(co)
    i_idx = np.arange(ci)
    taps = kernel.taps()

    row_parts, col_parts, val_parts = [], [], []
    for t in range(offs.shape[0]):
        y1, y2 = offs[t]
        xi1 = x1 + y1
        xi2 = x2 + y2
        if boundary == PERIODIC:
            keep = slice(None)
            xi1, xi2 = xi1 % m, xi2 % n
        else:
            keep = (xi1 >= 0) & (xi1 < m) & (xi2 >= 0) & (xi2 < n)
            xi1, xi2 = xi1[keep], xi2[keep]
        src = (x1[keep] * n + x2[keep])
        dst = (xi1 * n + xi2)
        # broadcast over the channel pair: (points, c_out, c_in)
        r = (src[:, None] * co + o_idx[None, :])[:, :, None]
        c = (dst[:, None] * ci + i_idx[None, :])[:, None, :]
        v = np.broadcast_to(taps[t][None, :, :], (len(src), co, ci))
        shape = (len(src), co, ci)
        row_parts.append(np.broadcast_to(r, shape).ravel())
        col_parts.append(np.broadcast_to(c, shape).ravel())
        val_parts.append(v.ravel())

    return ExplicitMatrix(
        rows=rows,
        cols=cols,
        row_idx=np.concatenate(row_parts),
        col_idx=np.concatenate(col_parts),
        values=np.concatenate(val_parts),
        boundary=boundary,
        dims=dims,
        channels=(ci, co),
    )


def dense_spectrum(matrix: ExplicitMatrix, size_cap=None) -> SpectrumResult:
    """Descending singular values of the densified matrix (LAPACK)."""
    _check_cap(matrix.rows, matrix.cols, size_cap)
    t0 = time.perf_counter()
    dense = matrix.to_dense()
    t1 = time.perf_counter()
    values = sort_descending(np.linalg.svd(dense, compute_uv=False))
    t2 = time.perf_counter()
    return SpectrumResult(
        values=values,
        method="explicit",
        boundary=matrix.boundary,
        dims=matrix.dims,
        channels=matrix.channels,
        timings=PhaseTimings.build(t1 - t0, t2 - t1),
    )


def apply_conv_reference(kernel: ConvKernel, input_field, boundary: str = PERIODIC):
    """Apply the convolution directly to an (m, n, c_in) field.

    Matches ExplicitMatrix.matvec on the vectorized field; dirichlet treats
    out-of-range samples as zero.
    """
    validate_kernel(kernel)
    if boundary not in BOUNDARIES:
        raise ValueError(f"unknown boundary {boundary!r}")
    f = np.asarray(input_field, dtype=np.float64)
    if f.ndim != 3 or f.shape[2] != kernel.c_in:
        raise ShapeMismatch(
            f"expected (m, n, {kernel.c_in}) input, got shape {f.shape}"
        )
    m, n = f.shape[:2]
    offs = kernel.offsets()
    taps = kernel.taps()
    out = np.zeros((m, n, kernel.c_out))
    for t in range(offs.shape[0]):
        y1, y2 = offs[t]
        if boundary == PERIODIC:
            shifted = np.roll(f, shift=(-y1, -y2), axis=(0, 1))
        else:
            shifted = np.zeros_like(f)
            lo1, hi1 = max(0, -y1), min(m, m - y1)
            lo2, hi2 = max(0, -y2), min(n, n - y2)
            if lo1 < hi1 and lo2 < hi2:
                shifted[lo1:hi1, lo2:hi2] = f[lo1 + y1:hi1 + y1, lo2 + y2:hi2 + y2]
        out += shifted @ taps[t].T
    return out


def dump_coo(matrix: ExplicitMatrix, path) -> None:
    """Write the entry list as 'row col value' lines for external inspection."""
    with open(path, "w", encoding="ascii") as fh:
        for r, c, v in zip(matrix.row_idx, matrix.col_idx, matrix.values):
            fh.write(f"{r} {c} {v:.17g}\n")
