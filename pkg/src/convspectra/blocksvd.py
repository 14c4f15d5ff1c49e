"""Batched complex SVD of symbol blocks and spectrum assembly.

The per-block solver is a one-sided (Hestenes) Jacobi SVD on the columns of
each block, jitted with numba and parallelized over blocks.  Every block is
solved independently with a fixed rotation order, so results are bit-identical
for any worker count or batch partition.  Right-vector accumulation never
feeds back into the working matrix, which makes values-only and full runs
produce identical singular values.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numba
import numpy as np
from numba import njit, prange

from .errors import ConvergenceFailure, IndexOutOfRange
from .kernels import SpatialDims
from .symbol import SymbolField

DEFAULT_MAX_SWEEPS = 100
DEFAULT_SVD_TOL = 1e-13


@dataclass(frozen=True)
class PhaseTimings:
    """Wall-clock split of a spectrum computation."""

    s_transform: float
    s_svd: float
    s_copy: float
    s_total: float

    @classmethod
    def build(cls, s_transform, s_svd, s_copy=0.0):
        return cls(s_transform=s_transform, s_svd=s_svd, s_copy=s_copy,
                   s_total=s_transform + s_svd + s_copy)


@dataclass(frozen=True)
class SvdTriplet:
    """Per-frequency factors A_k = U diag(sigma) V*."""

    k: Optional[tuple]
    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray


@dataclass(frozen=True)
class SpectrumResult:
    """Descending singular values plus provenance metadata."""

    values: np.ndarray = field(repr=False)
    method: str
    boundary: str
    dims: SpatialDims
    channels: tuple
    timings: Optional[PhaseTimings] = None

    def __len__(self):
        return len(self.values)


def sort_descending(values: np.ndarray) -> np.ndarray:
    """Stable descending sort; exact ties keep their input order."""
    order = np.argsort(-values, kind="stable")
    return values[order]


@njit(cache=True)
def _jacobi_sweeps(B, V, accumulate_v, tol, max_sweeps):
    """Orthogonalize the columns of B in place; returns sweeps used or -1."""
    mr, nc = B.shape
    norms = np.empty(nc)
    for sweep in range(max_sweeps):
        for j in range(nc):
            acc = 0.0
            for r in range(mr):
                v = B[r, j]
                acc += v.real * v.real + v.imag * v.imag
            norms[j] = acc
        rotated = False
        for p in range(nc - 1):
            for q in range(p + 1, nc):
                alpha = norms[p]
                beta = norms[q]
                if alpha == 0.0 or beta == 0.0:
                    continue
                gamma = 0.0 + 0.0j
                for r in range(mr):
                    gamma += B[r, p].conjugate() * B[r, q]
                ag = abs(gamma)
                if ag <= tol * np.sqrt(alpha * beta):
                    continue
                rotated = True
                tau = (beta - alpha) / (2.0 * ag)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                ph = gamma / ag
                phc = ph.conjugate()
                for r in range(mr):
                    bp = B[r, p]
                    bq = B[r, q]
                    B[r, p] = c * bp - s * (phc * bq)
                    B[r, q] = s * (ph * bp) + c * bq
                if accumulate_v:
                    for r in range(nc):
                        vp = V[r, p]
                        vq = V[r, q]
                        V[r, p] = c * vp - s * (phc * vq)
                        V[r, q] = s * (ph * vp) + c * vq
                norms[p] = c * c * alpha + s * s * beta - 2.0 * c * s * ag
                norms[q] = s * s * alpha + c * c * beta + 2.0 * c * s * ag
        if not rotated:
            return sweep + 1
    return -1


@njit(cache=True)
def _column_norms(B, out):
    mr, nc = B.shape
    for j in range(nc):
        acc = 0.0
        for r in range(mr):
            v = B[r, j]
            acc += v.real * v.real + v.imag * v.imag
        out[j] = np.sqrt(acc)


@njit(parallel=True, cache=True)
def _svd_values_batch(blocks, tol, max_sweeps):
    """Ascending singular values per block, shape (F, nc); fail flags per block."""
    F, mr, nc = blocks.shape
    sig = np.empty((F, nc))
    fail = np.zeros(F, dtype=np.int8)
    dummy = np.empty((1, 1), dtype=np.complex128)
    for f in prange(F):
        B = blocks[f].copy()
        if _jacobi_sweeps(B, dummy, False, tol, max_sweeps) < 0:
            fail[f] = 1
        _column_norms(B, sig[f])
        sig[f].sort()
    return sig, fail


@njit(parallel=True, cache=True)
def _svd_full_batch(blocks, tol, max_sweeps):
    """Converged column matrices, accumulated rotations, and raw sigmas."""
    F, mr, nc = blocks.shape
    Bout = np.empty((F, mr, nc), dtype=np.complex128)
    Vout = np.zeros((F, nc, nc), dtype=np.complex128)
    sig = np.empty((F, nc))
    fail = np.zeros(F, dtype=np.int8)
    for f in prange(F):
        B = blocks[f].copy()
        V = np.zeros((nc, nc), dtype=np.complex128)
        for j in range(nc):
            V[j, j] = 1.0
        if _jacobi_sweeps(B, V, True, tol, max_sweeps) < 0:
            fail[f] = 1
        _column_norms(B, sig[f])
        Bout[f] = B
        Vout[f] = V
    return Bout, Vout, sig, fail


def resolve_workers(workers) -> int:
    """Map a worker request onto numba's thread pool; 0 means auto-detect."""
    cap = numba.config.NUMBA_NUM_THREADS
    eff = cap if not workers else max(1, min(int(workers), cap))
    numba.set_num_threads(eff)
    return eff


def _complete_zero_columns(U, sigma):
    """Replace columns with sigma == 0 by a deterministic orthonormal fill."""
    bad_blocks = np.nonzero(~(sigma > 0).all(axis=1))[0]
    for f in bad_blocks:
        mat = U[f]
        mr = mat.shape[0]
        for j in np.nonzero(~(sigma[f] > 0))[0]:
            for t in range(mr):
                cand = np.zeros(mr, dtype=np.complex128)
                cand[t] = 1.0
                cand -= mat @ (mat.conj().T @ cand)
                norm = np.linalg.norm(cand)
                if norm > 0.5:
                    mat[:, j] = cand / norm
                    break


def _finish_full(blocks_work, tol, max_sweeps):
    Bfin, Vrot, sig, fail = _svd_full_batch(blocks_work, tol, max_sweeps)
    order = np.argsort(-sig, axis=1, kind="stable")
    sig = np.take_along_axis(sig, order, axis=1)
    Bfin = np.take_along_axis(Bfin, order[:, None, :], axis=2)
    Vrot = np.take_along_axis(Vrot, order[:, None, :], axis=2)
    denom = np.where(sig > 0, sig, 1.0)
    U = Bfin / denom[:, None, :]
    _complete_zero_columns(U, sig)
    return U, sig, Vrot, fail


def _raise_convergence(fail, grid=None, max_sweeps=DEFAULT_MAX_SWEEPS):
    if not fail.any():
        return
    f = int(np.argmax(fail))
    where = f"block {f}"
    if grid is not None:
        k = grid.frequencies[f]
        where = f"frequency index {f} (k=({k[0]:.6g}, {k[1]:.6g}))"
    raise ConvergenceFailure(
        f"jacobi SVD did not converge within {max_sweeps} sweeps at {where}; "
        "check the input for NaN/Inf contamination"
    )


def svd_block(block, k=None, tol=DEFAULT_SVD_TOL, max_sweeps=DEFAULT_MAX_SWEEPS) -> SvdTriplet:
    """Full SVD of a single c_out x c_in complex block."""
    b = np.atleast_2d(np.asarray(block, dtype=np.complex128))
    co, ci = b.shape
    wide = co < ci
    work = b.conj().T if wide else b
    U, sig, V, fail = _finish_full(work[None, :, :], tol, max_sweeps)
    _raise_convergence(fail, max_sweeps=max_sweeps)
    if wide:
        return SvdTriplet(k=k, U=V[0], sigma=sig[0], V=U[0])
    return SvdTriplet(k=k, U=U[0], sigma=sig[0], V=V[0])


def spectrum_from_field(
    fld: SymbolField,
    values_only: bool = True,
    workers: int = 1,
    tol: float = DEFAULT_SVD_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
):
    """SVD every block of a symbol field and merge the singular values.

    Returns a SpectrumResult (globally sorted, descending).  With
    values_only=False additionally returns the per-frequency SvdTriplet list
    in grid order as ``(result, triplets)``.
    """
    blocks = fld.blocks
    F, co, ci = blocks.shape
    wide = co < ci
    work = blocks.conj().transpose(0, 2, 1) if wide else blocks
    resolve_workers(workers)

    t0 = time.perf_counter()
    triplets = None
    if values_only:
        sig, fail = _svd_values_batch(work, tol, max_sweeps)
        _raise_convergence(fail, fld.grid, max_sweeps)
        per_block = sig[:, ::-1]
    else:
        U, sig, V, fail = _finish_full(work, tol, max_sweeps)
        _raise_convergence(fail, fld.grid, max_sweeps)
        per_block = sig
        if wide:
            U, V = V, U
        freqs = fld.grid.frequencies
        triplets = [
            SvdTriplet(k=(freqs[f, 0], freqs[f, 1]), U=U[f], sigma=sig[f], V=V[f])
            for f in range(F)
        ]
    values = sort_descending(np.ascontiguousarray(per_block).ravel())
    s_svd = time.perf_counter() - t0

    result = SpectrumResult(
        values=values,
        method=fld.source,
        boundary="periodic",
        dims=fld.grid.dims,
        channels=(ci, co),
        timings=PhaseTimings.build(fld.s_transform, s_svd, fld.s_copy),
    )
    if values_only:
        return result
    return result, triplets


def materialize_singular_vector(triplet: SvdTriplet, column: int, side: str,
                                dims: SpatialDims) -> np.ndarray:
    """Global spatial singular vector for one frequency and factor column.

    Entry layout matches the explicit matrix: index (x1*n + x2)*c + channel,
    normalized so the vector has unit 2-norm on the torus.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    W = triplet.U if side == "left" else triplet.V
    if not 0 <= column < W.shape[1]:
        raise IndexOutOfRange(
            f"column {column} out of range for rank {W.shape[1]}"
        )
    n, m = dims.n, dims.m
    x1 = np.repeat(np.arange(m), n)
    x2 = np.tile(np.arange(n), m)
    k1, k2 = triplet.k
    phase = np.exp(2j * np.pi * (k1 * x2 + k2 * x1)) / np.sqrt(n * m)
    return np.outer(phase, W[:, column]).ravel()
