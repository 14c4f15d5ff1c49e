import json

import numpy as np
import pytest

import convspectra as cs
from convspectra.errors import (
    BadMagic,
    FortranOrderUnsupported,
    ShapeRankNot4,
    TruncatedPayload,
    UnsupportedDescr,
)


@pytest.mark.parametrize("dtype", [np.float32, np.float64])
def test_roundtrip_bit_exact(tmp_path, dtype):
    rng = np.random.default_rng(37)
    original = rng.standard_normal((2, 3, 3, 3)).astype(dtype)
    path = tmp_path / "kernel.npy"
    cs.write_npy_kernel(path, original)
    kernel = cs.read_npy_kernel(path)
    assert kernel.precision == ("f32" if dtype == np.float32 else "f64")
    assert np.array_equal(kernel.weights.astype(dtype), original)
    # second trip through our writer reproduces the file byte for byte
    path2 = tmp_path / "kernel2.npy"
    cs.write_npy_kernel(path2, kernel)
    assert path.read_bytes() == path2.read_bytes()


def test_numpy_interop(tmp_path):
    rng = np.random.default_rng(38)
    arr = rng.standard_normal((16, 16, 3, 3)).astype(np.float32)
    theirs = tmp_path / "theirs.npy"
    np.save(theirs, arr)
    kernel = cs.read_npy_kernel(theirs)
    assert kernel.c_out == kernel.c_in == 16
    assert kernel.precision == "f32"
    assert np.array_equal(kernel.weights, arr.astype(np.float64))

    ours = tmp_path / "ours.npy"
    cs.write_npy_kernel(ours, kernel)
    assert np.array_equal(np.load(ours), arr)
    assert ours.read_bytes() == theirs.read_bytes()


def test_bad_magic(tmp_path):
    path = tmp_path / "nope.npy"
    path.write_bytes(b"not numpy at all")
    with pytest.raises(BadMagic):
        cs.read_npy_kernel(path)


def test_unsupported_version(tmp_path):
    path = tmp_path / "v2.npy"
    good = b"\x93NUMPY" + b"\x02\x00" + b"\x00" * 32
    path.write_bytes(good)
    with pytest.raises(BadMagic):
        cs.read_npy_kernel(path)


def test_unsupported_descr(tmp_path):
    path = tmp_path / "ints.npy"
    np.save(path, np.zeros((1, 1, 1, 1), dtype=np.int32))
    with pytest.raises(UnsupportedDescr):
        cs.read_npy_kernel(path)


def test_fortran_order_rejected(tmp_path):
    path = tmp_path / "fortran.npy"
    np.save(path, np.asfortranarray(np.zeros((2, 2, 3, 3))))
    with pytest.raises(FortranOrderUnsupported):
        cs.read_npy_kernel(path)


def test_rank_must_be_4(tmp_path):
    path = tmp_path / "matrix.npy"
    np.save(path, np.zeros((3, 3)))
    with pytest.raises(ShapeRankNot4):
        cs.read_npy_kernel(path)


def test_truncated_payload(tmp_path):
    path = tmp_path / "short.npy"
    cs.write_npy_kernel(path, np.zeros((2, 2, 3, 3)))
    data = path.read_bytes()
    path.write_bytes(data[:-8])
    with pytest.raises(TruncatedPayload):
        cs.read_npy_kernel(path)


def spectrum_of(values):
    return cs.SpectrumResult(
        values=np.asarray(values, dtype=float), method="lfa",
        boundary="periodic", dims=cs.SpatialDims(2, 2), channels=(1, 1),
        timings=cs.PhaseTimings.build(0.25, 0.5, 0.125),
    )


def test_spectrum_csv_roundtrip_bits(tmp_path):
    rng = np.random.default_rng(39)
    values = np.sort(np.abs(rng.standard_normal(50)))[::-1]
    path = tmp_path / "spectrum.csv"
    cs.write_spectrum_csv(spectrum_of(values), path)
    lines = path.read_text().splitlines()
    assert lines[0] == "index,sigma"
    assert len(lines) == 51
    back = cs.read_spectrum_csv(path)
    assert np.array_equal(back, values)


def test_spectrum_csv_empty(tmp_path):
    path = tmp_path / "empty.csv"
    cs.write_spectrum_csv(spectrum_of([]), path)
    assert path.read_text() == "index,sigma\n"
    assert len(cs.read_spectrum_csv(path)) == 0


def test_metadata_json(tmp_path):
    path = tmp_path / "meta.json"
    cs.write_run_metadata_json(spectrum_of([1.0, 0.5]), path, seed=42)
    meta = json.loads(path.read_text())
    assert meta["method"] == "lfa"
    assert meta["sv_count"] == 2
    assert meta["seed"] == 42
    assert meta["dims"] == {"n": 2, "m": 2}
    assert meta["channels"] == {"c_in": 1, "c_out": 1}
    assert meta["timings"]["s_total"] == 0.875
    assert meta["version"] == cs.__version__


def test_metadata_json_null_timings(tmp_path):
    res = cs.SpectrumResult(values=np.ones(1), method="fft", boundary="periodic",
                            dims=cs.SpatialDims(1, 1), channels=(1, 1))
    path = tmp_path / "meta.json"
    cs.write_run_metadata_json(res, path)
    meta = json.loads(path.read_text())
    assert meta["timings"] is None
    assert meta["seed"] is None
