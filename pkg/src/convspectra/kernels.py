"""Core domain types: weight tensors, torus dimensions and the frequency grid.

Conventions used throughout the library:

* weight tensors are indexed ``(c_out, c_in, p, q)`` with ``p`` running over
  the kernel height and ``q`` over the kernel width;
* spatial points on the torus are ``x = (x1, x2)`` with ``x1`` the row
  (height, period ``m``) and ``x2`` the column (width, period ``n``);
* frequencies are ``k = (i/n, j/m)``: the first component has period ``1/n``
  and therefore acts on the width axis, the second on the height axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonFiniteWeight, ZeroDimension

PRECISIONS = ("f32", "f64")


@dataclass(frozen=True)
class ConvKernel:
    """A 4D convolution weight tensor plus the precision it was loaded from.

    Weights are always held as float64 internally; ``precision`` records the
    source precision so serialization can round-trip bit-exactly.
    """

    weights: np.ndarray
    precision: str = "f64"

    @classmethod
    def from_array(cls, weights, precision=None):
        arr = np.asarray(weights)
        if precision is None:
            precision = "f32" if arr.dtype == np.float32 else "f64"
        kernel = cls(weights=np.asarray(arr, dtype=np.float64), precision=precision)
        validate_kernel(kernel)
        return kernel

    @property
    def c_out(self) -> int:
        return self.weights.shape[0]

    @property
    def c_in(self) -> int:
        return self.weights.shape[1]

    @property
    def k_h(self) -> int:
        return self.weights.shape[2]

    @property
    def k_w(self) -> int:
        return self.weights.shape[3]

    def offsets(self) -> np.ndarray:
        return neighborhood_offsets(self.k_h, self.k_w)

    def taps(self) -> np.ndarray:
        """Per-offset multiplication matrices, shape (k_h*k_w, c_out, c_in)."""
        co, ci, kh, kw = self.weights.shape
        return np.ascontiguousarray(
            self.weights.reshape(co, ci, kh * kw).transpose(2, 0, 1)
        )


def neighborhood_offsets(k_h: int, k_w: int) -> np.ndarray:
    """Integer spatial offsets y(p,q) = (p - k_h//2, q - k_w//2), row-major.

    Returns an (k_h*k_w, 2) int array; column 0 is the height offset, column 1
    the width offset.  For even extents the extra offset goes to the negative
    side, so a 4-tap axis covers {-2,-1,0,1}.
    """
    if k_h < 1 or k_w < 1:
        raise ZeroDimension(f"kernel extents must be >= 1, got ({k_h}, {k_w})")
    rows = np.arange(k_h) - k_h // 2
    cols = np.arange(k_w) - k_w // 2
    out = np.empty((k_h * k_w, 2), dtype=np.int64)
    out[:, 0] = np.repeat(rows, k_w)
    out[:, 1] = np.tile(cols, k_h)
    return out


def validate_kernel(kernel: ConvKernel) -> None:
    """Raise unless every ConvKernel invariant holds."""
    w = kernel.weights
    if w.ndim != 4:
        raise ZeroDimension(f"weights must be 4D, got shape {w.shape}")
    if min(w.shape) < 1:
        raise ZeroDimension(f"all tensor dimensions must be >= 1, got {w.shape}")
    if kernel.precision not in PRECISIONS:
        raise ZeroDimension(f"unknown precision {kernel.precision!r}")
    finite = np.isfinite(w)
    if not finite.all():
        index = np.unravel_index(int(np.argmin(finite)), w.shape)
        raise NonFiniteWeight(index, w[index])


@dataclass(frozen=True)
class SpatialDims:
    """Torus extents: n columns (width) by m rows (height)."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ZeroDimension(f"torus dims must be >= 1, got n={self.n}, m={self.m}")

    @property
    def size(self) -> int:
        return self.n * self.m


@dataclass(frozen=True)
class FrequencyGrid:
    """All n*m well-defined torus frequencies k = (i/n, j/m), row-major in (i, j)."""

    dims: SpatialDims
    frequencies: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        if self.frequencies is None:
            n, m = self.dims.n, self.dims.m
            i = np.repeat(np.arange(n), m)
            j = np.tile(np.arange(m), n)
            freqs = np.empty((n * m, 2))
            freqs[:, 0] = i / n
            freqs[:, 1] = j / m
            object.__setattr__(self, "frequencies", freqs)

    def __len__(self) -> int:
        return self.dims.size

    def index_of(self, i: int, j: int) -> int:
        return i * self.dims.m + j


def random_kernel(c_out, c_in, k_h, k_w, seed=0, dist="normal") -> ConvKernel:
    """Seeded test-fixture kernel from the counter-based Philox generator.

    Philox keeps fixtures bit-identical across platforms and processes for a
    given seed.  ``dist`` is "normal" (standard) or "uniform" (over [-1, 1)).
    """
    if min(c_out, c_in, k_h, k_w) < 1:
        raise ZeroDimension(
            f"kernel dims must be >= 1, got ({c_out}, {c_in}, {k_h}, {k_w})"
        )
    rng = np.random.Generator(np.random.Philox(key=seed))
    shape = (c_out, c_in, k_h, k_w)
    if dist == "normal":
        w = rng.standard_normal(shape)
    elif dist == "uniform":
        w = rng.uniform(-1.0, 1.0, shape)
    else:
        raise ValueError(f"unknown dist {dist!r}")
    return ConvKernel.from_array(w)
