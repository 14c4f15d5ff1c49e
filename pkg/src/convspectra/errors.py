"""Exception types shared across the library."""


class ConvSpectraError(Exception):
    """Base class for all library errors."""


class NonFiniteWeight(ConvSpectraError):
    """A kernel weight is NaN or infinite; the offending index is reported."""

    def __init__(self, index, value):
        self.index = tuple(index)
        self.value = value
        super().__init__(f"non-finite weight {value!r} at index {self.index}")


class ZeroDimension(ConvSpectraError):
    """A channel count, kernel extent or torus dimension is < 1."""


class AllocationFailure(ConvSpectraError):
    """A symbol field would exceed the configured memory budget."""


class ConvergenceFailure(ConvSpectraError):
    """The block SVD hit its sweep cap; usually means NaN contamination."""


class KernelLargerThanTorus(ConvSpectraError):
    """Kernel offsets do not fit the torus for the requested operation."""


class SizeCapExceeded(ConvSpectraError):
    """An explicit matrix would exceed the configured row/column cap."""


class ShapeMismatch(ConvSpectraError):
    """An input field does not match the kernel/torus shape."""


class IndexOutOfRange(ConvSpectraError):
    """A singular-vector column index is out of range."""


class EmptySpectrum(ConvSpectraError):
    """A spectrum operation needs at least one singular value."""


class InsufficientPoints(ConvSpectraError):
    """A scaling fit needs at least three distinct sizes along an axis."""


class BadMagic(ConvSpectraError):
    """Not an NPY v1.0 file."""


class UnsupportedDescr(ConvSpectraError):
    """NPY dtype descriptor other than little-endian f4/f8."""


class FortranOrderUnsupported(ConvSpectraError):
    """NPY files with fortran_order=True are rejected."""


class ShapeRankNot4(ConvSpectraError):
    """Kernel NPY files must have exactly 4 dimensions."""


class TruncatedPayload(ConvSpectraError):
    """NPY payload is shorter than the header-declared shape requires."""
