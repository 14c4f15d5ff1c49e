#!/usr/bin/env python3
"""Export convolutional weight tensors from a PyTorch checkpoint to NPY v1.0.

One file per matching rank-4 tensor, shape (c_out, c_in, k_h, k_w), channel
order untouched, dtype preserved (f32 or f64), plus a manifest.json mapping
layer names to files and shapes.  The written files follow the NPY version
1.0 layout exactly, so any standard reader loads them bit-for-bit.

The script depends only on torch (to read the checkpoint) and the standard
library.  Checkpoints may be either a bare state dict or a dict holding one
under a 'state_dict' key.

Usage:
    python export_conv_weights.py checkpoint.pt --filter 'conv' --out-dir weights/
"""

import argparse
import json
import re
import struct
import sys
from pathlib import Path

import torch


class NoMatchingLayers(Exception):
    """No rank-4 weight tensor matched the layer filter."""


_DTYPES = {
    torch.float32: ("<f4", "f"),
    torch.float64: ("<f8", "d"),
}


def _npy_bytes(tensor: torch.Tensor) -> bytes:
    descr, pack_char = _DTYPES[tensor.dtype]
    shape = tuple(tensor.shape)
    header = "{'descr': '%s', 'fortran_order': False, 'shape': %r, }" % (descr, shape)
    pad = (-(6 + 2 + 2 + len(header) + 1)) % 64
    header = (header + " " * pad + "\n").encode("latin1")
    flat = tensor.detach().contiguous().reshape(-1).tolist()
    payload = struct.pack(f"<{len(flat)}{pack_char}", *flat)
    return b"\x93NUMPY\x01\x00" + struct.pack("<H", len(header)) + header + payload


def _load_state_dict(checkpoint_path):
    blob = torch.load(checkpoint_path, map_location="cpu", weights_only=True)
    if isinstance(blob, dict) and "state_dict" in blob:
        blob = blob["state_dict"]
    if not isinstance(blob, dict):
        raise ValueError(f"{checkpoint_path}: expected a state dict")
    return blob


def _safe_filename(layer_name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", layer_name) + ".npy"


def export_weights(checkpoint_path, layer_name_filter, out_dir):
    """Write one NPY per matching conv layer; returns the written paths."""
    state = _load_state_dict(checkpoint_path)
    pattern = re.compile(layer_name_filter)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    manifest = {}
    written = []
    for name, tensor in state.items():
        if not pattern.search(name):
            continue
        if not isinstance(tensor, torch.Tensor):
            continue
        if tensor.ndim != 4:
            print(f"warning: skipping {name}: rank {tensor.ndim} != 4",
                  file=sys.stderr)
            continue
        if tensor.dtype not in _DTYPES:
            print(f"warning: skipping {name}: dtype {tensor.dtype} not f32/f64",
                  file=sys.stderr)
            continue
        path = out_dir / _safe_filename(name)
        path.write_bytes(_npy_bytes(tensor))
        manifest[name] = {"file": path.name, "shape": list(tensor.shape),
                          "dtype": str(tensor.dtype).replace("torch.", "")}
        written.append(path)

    if not written:
        raise NoMatchingLayers(
            f"no rank-4 tensors matching {layer_name_filter!r} in {checkpoint_path}"
        )
    manifest_path = out_dir / "manifest.json"
    with open(manifest_path, "w", encoding="ascii") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return written


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("checkpoint", help="PyTorch checkpoint (.pt/.pth)")
    parser.add_argument("--filter", default=r"weight$",
                        help="regex matched against state-dict keys")
    parser.add_argument("--out-dir", default="exported_weights")
    args = parser.parse_args(argv)
    try:
        written = export_weights(args.checkpoint, args.filter, args.out_dir)
    except NoMatchingLayers as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    print(f"{len(written)} tensors -> {args.out_dir}/manifest.json")
    return 0


if __name__ == "__main__":
    sys.exit(main())
