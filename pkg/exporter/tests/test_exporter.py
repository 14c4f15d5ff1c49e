import json
import sys
from pathlib import Path

import numpy as np
import pytest
import torch

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

import export_conv_weights as exporter  # noqa: E402

# the primary package is only consumed through its public NPY interface
import convspectra as cs  # noqa: E402


@pytest.fixture
def checkpoint(tmp_path):
    torch.manual_seed(0)
    state = {
        "features.0.conv.weight": torch.randn(8, 4, 3, 3),
        "features.0.conv.bias": torch.randn(8),
        "classifier.weight": torch.randn(10, 64),
    }
    path = tmp_path / "model.pt"
    torch.save(state, path)
    return path, state


def test_export_roundtrips_into_primary(tmp_path, checkpoint):
    path, state = checkpoint
    written = exporter.export_weights(path, r"conv\.weight$", tmp_path / "out")
    assert len(written) == 1

    kernel = cs.read_npy_kernel(written[0])
    original = state["features.0.conv.weight"].numpy()
    assert kernel.precision == "f32"
    assert kernel.weights.shape == (8, 4, 3, 3)
    assert np.array_equal(kernel.weights.astype(np.float32), original)

    # and numpy itself agrees on the raw file
    assert np.array_equal(np.load(written[0]), original)


def test_manifest_contents(tmp_path, checkpoint):
    path, _ = checkpoint
    out = tmp_path / "out"
    exporter.export_weights(path, r"conv\.weight$", out)
    manifest = json.loads((out / "manifest.json").read_text())
    entry = manifest["features.0.conv.weight"]
    assert entry["shape"] == [8, 4, 3, 3]
    assert entry["dtype"] == "float32"
    assert (out / entry["file"]).exists()


def test_rank_mismatch_is_skipped_with_warning(tmp_path, checkpoint, capsys):
    path, _ = checkpoint
    written = exporter.export_weights(path, r"weight$", tmp_path / "out")
    assert len(written) == 1  # bias filtered by regex, fc skipped by rank
    assert "rank 2 != 4" in capsys.readouterr().err


def test_no_matching_layers(tmp_path, checkpoint):
    path, _ = checkpoint
    with pytest.raises(exporter.NoMatchingLayers):
        exporter.export_weights(path, r"does_not_exist", tmp_path / "out")


def test_cli_entry(tmp_path, checkpoint):
    path, _ = checkpoint
    out = tmp_path / "cli_out"
    code = exporter.main([str(path), "--filter", r"conv\.weight$",
                          "--out-dir", str(out)])
    assert code == 0
    assert (out / "manifest.json").exists()
    assert exporter.main([str(path), "--filter", "nope",
                          "--out-dir", str(out)]) == 1


def test_f64_preserved(tmp_path):
    torch.manual_seed(1)
    state = {"c.weight": torch.randn(2, 2, 3, 3, dtype=torch.float64)}
    path = tmp_path / "model64.pt"
    torch.save(state, path)
    written = exporter.export_weights(path, "weight", tmp_path / "out")
    kernel = cs.read_npy_kernel(written[0])
    assert kernel.precision == "f64"
    assert np.array_equal(kernel.weights, state["c.weight"].numpy())
