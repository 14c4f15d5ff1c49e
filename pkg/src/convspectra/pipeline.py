"""End-to-end spectrum computation over any of the three methods."""

from __future__ import annotations

import time
from dataclasses import replace

from .blocksvd import (
    DEFAULT_MAX_SWEEPS,
    DEFAULT_SVD_TOL,
    PhaseTimings,
    SpectrumResult,
    resolve_workers,
    spectrum_from_field,
)
from .explicit import BOUNDARIES, DIRICHLET, PERIODIC, build_explicit, dense_spectrum
from .fft import fft_symbol_field
from .kernels import ConvKernel, SpatialDims
from .symbol import BLOCK_CONTIGUOUS, build_symbol_field

METHODS = ("lfa", "fft", "explicit")


def compute_spectrum(
    kernel: ConvKernel,
    dims: SpatialDims,
    method: str = "lfa",
    boundary: str = PERIODIC,
    values_only: bool = True,
    workers: int = 0,
    layout: str = BLOCK_CONTIGUOUS,
    size_cap=None,
    mem_budget_gib=None,
    tol: float = DEFAULT_SVD_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> SpectrumResult:
    """Compute the full singular value spectrum with phase timings attached.

    Only the explicit method accepts dirichlet boundaries; lfa and fft are
    inherently periodic.  With values_only=False the per-frequency factors
    are computed and discarded (use spectrum_from_field directly to keep
    them); the sorted values are bit-identical either way.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if boundary not in BOUNDARIES:
        raise ValueError(f"unknown boundary {boundary!r}")
    if boundary == DIRICHLET and method != "explicit":
        raise ValueError(f"method {method!r} only supports periodic boundaries")
    resolve_workers(workers)

    if method == "explicit":
        t0 = time.perf_counter()
        matrix = build_explicit(kernel, dims, boundary, size_cap=size_cap)
        build_seconds = time.perf_counter() - t0
        result = dense_spectrum(matrix)
        t = result.timings
        return replace(result, timings=PhaseTimings.build(
            build_seconds + t.s_transform, t.s_svd, t.s_copy))

    if method == "lfa":
        fld = build_symbol_field(kernel, dims, layout=layout,
                                 mem_budget_gib=mem_budget_gib)
    else:
        fld = fft_symbol_field(kernel, dims, layout=layout,
                               mem_budget_gib=mem_budget_gib)
    out = spectrum_from_field(fld, values_only=values_only, workers=workers,
                              tol=tol, max_sweeps=max_sweeps)
    return out if values_only else out[0]
