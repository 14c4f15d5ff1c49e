"""Phase-split timing harness and empirical scaling fits.

Cells run sequentially; the per-frequency parallelism of the method under
test applies inside a cell.  Warmup runs are recorded (flagged) but excluded
from medians and fits.  Every explicit cell is cross-checked against the
symbol path before its timings are emitted.
"""

from __future__ import annotations

import statistics
import warnings
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from .blocksvd import resolve_workers
from .errors import InsufficientPoints, SizeCapExceeded
from .explicit import DEFAULT_SIZE_CAP
from .kernels import ConvKernel, SpatialDims, random_kernel
from .pipeline import compute_spectrum
from .symbol import BLOCK_CONTIGUOUS, FREQUENCY_STRIDED

CROSSCHECK_RTOL = 1e-6


@dataclass(frozen=True)
class BenchRecord:
    method: str
    n: int
    m: int
    c_in: int
    c_out: int
    layout: str
    repeat_index: int
    s_transform: float
    s_copy: float
    s_svd: float
    s_total: float
    sv_count: int
    worker_count: int
    warmup_flag: bool


@dataclass(frozen=True)
class BenchConfig:
    methods: tuple = ("lfa",)
    sizes: tuple = (64,)
    channels: tuple = (16,)
    repeats: int = 3
    warmups: int = 1
    workers: int = 0
    layout: str = BLOCK_CONTIGUOUS
    k_h: int = 3
    k_w: int = 3
    seed: int = 0
    dist: str = "normal"
    skip_infeasible: bool = False
    size_cap: Optional[int] = None
    mem_budget_gib: Optional[float] = None


def _as_pair(value):
    if isinstance(value, (tuple, list)):
        return int(value[0]), int(value[1])
    return int(value), int(value)


def _record(method, dims, channels, layout, repeat_index, result, workers, warmup):
    t = result.timings
    return BenchRecord(
        method=method,
        n=dims.n,
        m=dims.m,
        c_in=channels[0],
        c_out=channels[1],
        layout=layout,
        repeat_index=repeat_index,
        s_transform=t.s_transform,
        s_copy=t.s_copy,
        s_svd=t.s_svd,
        s_total=t.s_total,
        sv_count=len(result),
        worker_count=workers,
        warmup_flag=warmup,
    )


def run_bench(config: BenchConfig) -> list:
    """Timed repetitions over the (method, size, channels) grid."""
    if config.repeats < 1:
        raise ValueError("repeats must be >= 1")
    records = []
    eff_workers = resolve_workers(config.workers)
    for ch in config.channels:
        c_in, c_out = _as_pair(ch)
        kernel = random_kernel(c_out, c_in, config.k_h, config.k_w,
                               seed=config.seed, dist=config.dist)
        for size in config.sizes:
            n, m = _as_pair(size)
            dims = SpatialDims(n=n, m=m)
            reference = None
            for method in config.methods:
                if method == "explicit":
                    cap = DEFAULT_SIZE_CAP if config.size_cap is None else config.size_cap
                    side = dims.size * max(c_in, c_out)
                    if side > cap:
                        if config.skip_infeasible:
                            warnings.warn(
                                f"skipping explicit cell {n}x{m} c={c_in}x{c_out}: "
                                f"matrix side {side} exceeds cap {cap}",
                                RuntimeWarning,
                            )
                            continue
                        raise SizeCapExceeded(
                            f"explicit cell {n}x{m} c={c_in}x{c_out} needs a "
                            f"{side}-row matrix, cap is {cap}"
                        )
                for ridx in range(config.warmups + config.repeats):
                    result = compute_spectrum(
                        kernel, dims, method=method, values_only=True,
                        workers=config.workers, layout=config.layout,
                        size_cap=config.size_cap,
                        mem_budget_gib=config.mem_budget_gib,
                    )
                    if method == "explicit":
                        if reference is None:
                            reference = compute_spectrum(
                                kernel, dims, method="lfa", values_only=True,
                                workers=config.workers,
                            )
                        scale = reference.values[0] if reference.values[0] > 0 else 1.0
                        err = np.max(np.abs(result.values - reference.values)) / scale
                        if err > CROSSCHECK_RTOL:
                            _crosscheck_error(n, m, err)
                    records.append(_record(
                        method, dims, (c_in, c_out), config.layout, ridx,
                        result, eff_workers, ridx < config.warmups,
                    ))
    return records


def _crosscheck_error(n, m, err):
    raise AssertionError(
        f"explicit spectrum disagrees with the symbol path at {n}x{m} "
        f"(rel err {err:.3e}); refusing to emit timings"
    )


def layout_experiment(kernel: ConvKernel, dims: SpatialDims, workers: int = 0,
                      mem_budget_gib=None) -> tuple:
    """Paired block_contiguous vs frequency_strided runs on one cell.

    The strided field is produced from the contiguous one by a measured
    conversion (s_copy).  Spectra must be bit-identical; timings are reported,
    not judged.
    """
    eff_workers = resolve_workers(workers)
    results = {}
    for layout in (BLOCK_CONTIGUOUS, FREQUENCY_STRIDED):
        results[layout] = compute_spectrum(
            kernel, dims, method="lfa", values_only=True, workers=workers,
            layout=layout, mem_budget_gib=mem_budget_gib,
        )
    a, b = results[BLOCK_CONTIGUOUS], results[FREQUENCY_STRIDED]
    if not np.array_equal(a.values, b.values):
        raise AssertionError("layouts produced different spectra")
    if a.timings.s_svd < 0.1:
        warnings.warn(
            f"SVD phase is only {a.timings.s_svd * 1e3:.1f} ms at "
            f"{dims.n}x{dims.m}; layout timings will be noise-dominated",
            RuntimeWarning,
        )
    channels = (kernel.c_in, kernel.c_out)
    return (
        _record("lfa", dims, channels, BLOCK_CONTIGUOUS, 0, a, eff_workers, False),
        _record("lfa", dims, channels, FREQUENCY_STRIDED, 0, b, eff_workers, False),
    )


@dataclass(frozen=True)
class ScalingFit:
    spatial_exponent: Optional[float]
    channel_exponent: Optional[float]


def _median_by(records, key):
    groups = {}
    for r in records:
        groups.setdefault(key(r), []).append(r.s_total)
    return {k: statistics.median(v) for k, v in groups.items()}


def _fit_loglog(points) -> Optional[float]:
    if len(points) < 3:
        return None
    xs = np.log([p[0] for p in points])
    ys = np.log([p[1] for p in points])
    return float(np.polyfit(xs, ys, 1)[0])


def scaling_fit(records) -> dict:
    """Per-method log-log slope estimates from timed records.

    Spatial exponent: slope of log(s_total) against the log of the linear
    spatial scale sqrt(n*m), with the channel pair fixed (the pair with the
    most distinct sizes wins); grid-size-linear cost therefore reports as
    exponent 2.  Channel exponent: slope against log(c_in) with dims fixed.
    Raises if no method offers three distinct points along either axis.
    """
    timed = [r for r in records if not r.warmup_flag]
    out = {}
    fitted_any = False
    for method in sorted({r.method for r in timed}):
        rs = [r for r in timed if r.method == method]

        by_channels = {}
        for r in rs:
            by_channels.setdefault((r.c_in, r.c_out), []).append(r)
        spatial_medians = max(
            (_median_by(g, lambda r: (r.n * r.m) ** 0.5) for g in by_channels.values()),
            key=len,
        )
        spatial = _fit_loglog(sorted(spatial_medians.items()))

        by_dims = {}
        for r in rs:
            by_dims.setdefault((r.n, r.m), []).append(r)
        channel_medians = max(
            (_median_by(g, lambda r: r.c_in) for g in by_dims.values()),
            key=len,
        )
        channel = _fit_loglog(sorted(channel_medians.items()))
        out[method] = ScalingFit(spatial_exponent=spatial, channel_exponent=channel)
        fitted_any = fitted_any or spatial is not None or channel is not None
    if not fitted_any:
        raise InsufficientPoints(
            "scaling fits need >= 3 distinct sizes (or channel counts) per method"
        )
    return out


def median_totals(records) -> dict:
    """Median timed s_total per (method, n, m, c_in, c_out) cell."""
    timed = [r for r in records if not r.warmup_flag]
    return _median_by(timed, lambda r: (r.method, r.n, r.m, r.c_in, r.c_out))


def fft_lfa_ratios(records) -> list:
    """Per-cell s_fft/s_lfa ratios from median totals."""
    med = median_totals(records)
    cells = sorted({k[1:] for k in med})
    rows = []
    for cell in cells:
        f = med.get(("fft",) + cell)
        l = med.get(("lfa",) + cell)
        if f is None or l is None:
            continue
        n, m, c_in, c_out = cell
        rows.append({
            "n": n, "m": m, "c_in": c_in, "c_out": c_out,
            "sv_count": n * m * min(c_in, c_out),
            "s_fft": f, "s_lfa": l, "ratio": f / l,
        })
    return rows


BENCH_CSV_COLUMNS = tuple(f.name for f in fields(BenchRecord))


def write_bench_csv(records, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(",".join(BENCH_CSV_COLUMNS) + "\n")
        for r in records:
            cells = []
            for f in fields(BenchRecord):
                v = getattr(r, f.name)
                if isinstance(v, bool):
                    cells.append("true" if v else "false")
                elif isinstance(v, float):
                    cells.append(f"{v:.17g}")
                else:
                    cells.append(str(v))
            fh.write(",".join(cells) + "\n")
