"""Spectrum post-processing: summaries, distances, boundary comparison."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .blocksvd import SpectrumResult
from .errors import EmptySpectrum
from .explicit import DIRICHLET, PERIODIC, build_explicit, dense_spectrum
from .kernels import ConvKernel, SpatialDims
from .pipeline import compute_spectrum

HISTOGRAM_BINS = 64


@dataclass(frozen=True)
class SpectralSummary:
    sigma_max: float
    sigma_min: float
    count: int
    condition: float
    mean: float
    histogram: np.ndarray = field(repr=False)
    bin_edges: np.ndarray = field(repr=False)


def _values_of(spectrum):
    if isinstance(spectrum, SpectrumResult):
        return spectrum.values
    return np.asarray(spectrum, dtype=np.float64)


def spectral_summary(spectrum) -> SpectralSummary:
    """Max/min/mean/condition plus a fixed 64-bin histogram over [0, max]."""
    values = _values_of(spectrum)
    if len(values) == 0:
        raise EmptySpectrum("summary needs at least one singular value")
    smax = float(values.max())
    smin = float(values.min())
    top = smax if smax > 0 else 1.0
    hist, edges = np.histogram(values, bins=HISTOGRAM_BINS, range=(0.0, top))
    return SpectralSummary(
        sigma_max=smax,
        sigma_min=smin,
        count=len(values),
        condition=smax / smin if smin > 0 else np.inf,
        mean=float(values.mean()),
        histogram=hist,
        bin_edges=edges,
    )


def wasserstein1(a, b) -> float:
    """W1 between two spectra via quantile coupling.

    Both spectra are sorted descending; the shorter one is resampled at the
    longer one's quantile positions by linear interpolation, and the mean
    absolute difference is returned.
    """
    va = np.sort(_values_of(a))[::-1]
    vb = np.sort(_values_of(b))[::-1]
    if len(va) == 0 or len(vb) == 0:
        raise EmptySpectrum("wasserstein1 needs nonempty spectra")
    if len(va) < len(vb):
        va, vb = vb, va
    if len(vb) < len(va):
        # quantile positions of a length-L descending sample: t_j = j/(L-1)
        t_long = np.linspace(0.0, 1.0, len(va))
        t_short = np.linspace(0.0, 1.0, len(vb))
        # np.interp needs ascending sample points
        vb = np.interp(t_long, t_short, vb[::-1])[::-1]
    return float(np.mean(np.abs(va - vb)))


@dataclass(frozen=True)
class BoundaryRow:
    """One CSV row of the boundary comparison table."""

    n: int
    m: int
    c_in: int
    c_out: int
    method: str
    boundary: str
    sigma_max: float
    sigma_min: float
    w1_vs_periodic: float
    count: int


def _row_from(result: SpectrumResult, w1: float) -> BoundaryRow:
    return BoundaryRow(
        n=result.dims.n,
        m=result.dims.m,
        c_in=result.channels[0],
        c_out=result.channels[1],
        method=result.method,
        boundary=result.boundary,
        sigma_max=float(result.values.max()),
        sigma_min=float(result.values.min()),
        w1_vs_periodic=w1,
        count=len(result.values),
    )


def boundary_compare(kernel: ConvKernel, dims_list, size_cap=None,
                     workers: int = 0) -> list:
    """Periodic-vs-dirichlet spectrum comparison over a list of torus sizes.

    Per size: the periodic spectrum from the symbol path (its w1 column is
    the periodic-vs-periodic self check, always 0) and the dirichlet spectrum
    from the explicit matrix with its W1 distance to the periodic one.
    """
    rows = []
    for dims in dims_list:
        if isinstance(dims, int):
            dims = SpatialDims(n=dims, m=dims)
        periodic = compute_spectrum(kernel, dims, method="lfa", workers=workers)
        dirichlet = dense_spectrum(
            build_explicit(kernel, dims, DIRICHLET, size_cap=size_cap),
            size_cap=size_cap,
        )
        rows.append(_row_from(periodic, wasserstein1(periodic, periodic)))
        rows.append(_row_from(dirichlet, wasserstein1(periodic, dirichlet)))
    return rows


def relative_max_difference(rows, dims=None) -> dict:
    """Per-size |sigma_max_periodic - sigma_max_dirichlet| / sigma_max_periodic."""
    out = {}
    per = {(r.n, r.m): r for r in rows if r.boundary == PERIODIC}
    for r in rows:
        if r.boundary != DIRICHLET:
            continue
        p = per[(r.n, r.m)]
        out[(r.n, r.m)] = abs(p.sigma_max - r.sigma_max) / p.sigma_max
    if dims is not None:
        return out[(dims.n, dims.m)]
    return out


BOUNDARY_CSV_COLUMNS = ("n", "m", "c_in", "c_out", "method", "boundary",
                        "sigma_max", "sigma_min", "w1_vs_periodic", "count")


def write_boundary_csv(rows, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(",".join(BOUNDARY_CSV_COLUMNS) + "\n")
        for r in rows:
            fh.write(
                f"{r.n},{r.m},{r.c_in},{r.c_out},{r.method},{r.boundary},"
                f"{r.sigma_max:.17g},{r.sigma_min:.17g},"
                f"{r.w1_vs_periodic:.17g},{r.count}\n"
            )
