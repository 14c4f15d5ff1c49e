"""NPY v1.0 kernels, spectrum CSVs and run-metadata JSON.

Only the version-1.0 subset of the NPY format is accepted: little-endian f4
or f8 payloads, C order, shape rank exactly 4 (c_out, c_in, k_h, k_w).
Written files are byte-compatible with the wider ecosystem's readers.
"""

from __future__ import annotations

import ast
import json
import struct

import numpy as np

from . import __version__
from .blocksvd import SpectrumResult
from .errors import (
    BadMagic,
    FortranOrderUnsupported,
    ShapeRankNot4,
    TruncatedPayload,
    UnsupportedDescr,
)
from .kernels import ConvKernel, validate_kernel

_MAGIC = b"\x93NUMPY"
_DESCRS = {"<f4": np.dtype("<f4"), "<f8": np.dtype("<f8")}


def read_npy_kernel(path) -> ConvKernel:
    """Parse an NPY v1.0 kernel file; f32 payloads are widened to f64."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:6] != _MAGIC:
        raise BadMagic(f"{path}: not an NPY file")
    if data[6:8] != b"\x01\x00":
        raise BadMagic(f"{path}: only NPY version 1.0 is supported")
    if len(data) < 10:
        raise TruncatedPayload(f"{path}: header length field missing")
    (hlen,) = struct.unpack("<H", data[8:10])
    header_end = 10 + hlen
    if len(data) < header_end:
        raise TruncatedPayload(f"{path}: header shorter than declared")
    try:
        header = ast.literal_eval(data[10:header_end].decode("latin1"))
    except (ValueError, SyntaxError) as exc:
        raise BadMagic(f"{path}: malformed header dict") from exc

    descr = header.get("descr")
    if descr not in _DESCRS:
        raise UnsupportedDescr(f"{path}: descr {descr!r} not in ('<f4', '<f8')")
    if header.get("fortran_order"):
        raise FortranOrderUnsupported(f"{path}: fortran_order=True is not supported")
    shape = tuple(header.get("shape", ()))
    if len(shape) != 4:
        raise ShapeRankNot4(f"{path}: kernel shape must have rank 4, got {shape}")

    dtype = _DESCRS[descr]
    expected = int(np.prod(shape)) * dtype.itemsize
    payload = data[header_end:]
    if len(payload) < expected:
        raise TruncatedPayload(
            f"{path}: payload has {len(payload)} bytes, shape needs {expected}"
        )
    weights = np.frombuffer(payload[:expected], dtype=dtype).reshape(shape)
    kernel = ConvKernel(
        weights=weights.astype(np.float64),
        precision="f32" if descr == "<f4" else "f64",
    )
    validate_kernel(kernel)
    return kernel


def _header_bytes(descr, shape) -> bytes:
    text = "{'descr': '%s', 'fortran_order': False, 'shape': %r, }" % (
        descr, tuple(int(s) for s in shape))
    pad = (-(len(_MAGIC) + 4 + len(text) + 1)) % 64
    return (text + " " * pad + "\n").encode("latin1")


def write_npy_kernel(path, kernel) -> None:
    """Write a kernel as NPY v1.0 in its recorded precision, bit-exactly."""
    if isinstance(kernel, ConvKernel):
        weights, precision = kernel.weights, kernel.precision
    else:
        weights = np.asarray(kernel)
        precision = "f32" if weights.dtype == np.float32 else "f64"
    descr = "<f4" if precision == "f32" else "<f8"
    header = _header_bytes(descr, weights.shape)
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(b"\x01\x00")
        fh.write(struct.pack("<H", len(header)))
        fh.write(header)
        fh.write(np.ascontiguousarray(weights, dtype=descr).tobytes())


def write_spectrum_csv(spectrum, path) -> None:
    """'index,sigma' header plus one row per value, 17 significant digits."""
    values = spectrum.values if isinstance(spectrum, SpectrumResult) else spectrum
    with open(path, "w", encoding="ascii") as fh:
        fh.write("index,sigma\n")
        for i, v in enumerate(values):
            fh.write(f"{i},{v:.17g}\n")


def read_spectrum_csv(path) -> np.ndarray:
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        if header != "index,sigma":
            raise ValueError(f"{path}: unexpected header {header!r}")
        return np.array([float(line.split(",")[1]) for line in fh if line.strip()])


def write_run_metadata_json(spectrum: SpectrumResult, path, seed=None) -> None:
    """Provenance record for one spectrum computation."""
    t = spectrum.timings
    meta = {
        "method": spectrum.method,
        "boundary": spectrum.boundary,
        "dims": {"n": spectrum.dims.n, "m": spectrum.dims.m},
        "channels": {"c_in": spectrum.channels[0], "c_out": spectrum.channels[1]},
        "sv_count": len(spectrum),
        "timings": None if t is None else {
            "s_transform": t.s_transform,
            "s_svd": t.s_svd,
            "s_copy": t.s_copy,
            "s_total": t.s_total,
        },
        "version": __version__,
        "seed": seed,
    }
    with open(path, "w", encoding="ascii") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")
