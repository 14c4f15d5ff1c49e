"""Exact singular value spectra of 2D multi-channel convolutions.

A periodic convolution block-diagonalizes over the discrete frequency torus:
each frequency carries a small c_out x c_in complex block whose singular
values, pooled over all n*m frequencies, form the exact spectrum of the
unrolled operator.  This package builds those blocks directly (symbol path),
via per-channel-pair 2D DFTs (fft path), or materializes the full matrix
(explicit path, periodic or zero-padded), and ships analysis plus a timing
harness on top.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    AllocationFailure,
    BadMagic,
    ConvSpectraError,
    ConvergenceFailure,
    EmptySpectrum,
    FortranOrderUnsupported,
    IndexOutOfRange,
    InsufficientPoints,
    KernelLargerThanTorus,
    NonFiniteWeight,
    ShapeMismatch,
    ShapeRankNot4,
    SizeCapExceeded,
    TruncatedPayload,
    UnsupportedDescr,
    ZeroDimension,
)
from .kernels import (  # noqa: F401
    ConvKernel,
    FrequencyGrid,
    SpatialDims,
    neighborhood_offsets,
    random_kernel,
    validate_kernel,
)
from .symbol import (  # noqa: F401
    BLOCK_CONTIGUOUS,
    FREQUENCY_STRIDED,
    SymbolField,
    build_symbol_field,
    convert_layout,
    symbol_at,
)
from .blocksvd import (  # noqa: F401
    PhaseTimings,
    SpectrumResult,
    SvdTriplet,
    materialize_singular_vector,
    sort_descending,
    spectrum_from_field,
    svd_block,
)
from .fft import dft_2d, fft_symbol_field, idft_2d  # noqa: F401
from .explicit import (  # noqa: F401
    DIRICHLET,
    PERIODIC,
    ExplicitMatrix,
    apply_conv_reference,
    build_explicit,
    dense_spectrum,
    dump_coo,
)
from .pipeline import METHODS, compute_spectrum  # noqa: F401
from .analysis import (  # noqa: F401
    SpectralSummary,
    boundary_compare,
    relative_max_difference,
    spectral_summary,
    wasserstein1,
    write_boundary_csv,
)
from .bench import (  # noqa: F401
    BenchConfig,
    BenchRecord,
    ScalingFit,
    fft_lfa_ratios,
    layout_experiment,
    run_bench,
    scaling_fit,
    write_bench_csv,
)
from .npyio import (  # noqa: F401
    read_npy_kernel,
    read_spectrum_csv,
    write_npy_kernel,
    write_run_metadata_json,
    write_spectrum_csv,
)
