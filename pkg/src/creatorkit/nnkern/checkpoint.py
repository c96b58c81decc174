"""Binary parameter checkpoints.

Layout: magic "NNK1", then per tensor:
  name length (u32 LE), UTF-8 name bytes, rank (u32 LE),
  extents (u32 LE each), values (f64 LE, row-major).
"""
from __future__ import annotations

import struct

import numpy as np

from ..errors import FormatError

MAGIC = b"NNK1"


def save_checkpoint(path, params: dict[str, np.ndarray]) -> None:
    with open(path, "wb") as f:
        f.write(MAGIC)
        for name in sorted(params):
            arr = np.ascontiguousarray(params[name], dtype=np.float64)
            nb = name.encode("utf-8")
            f.write(struct.pack("<I", len(nb)))
            f.write(nb)
            f.write(struct.pack("<I", arr.ndim))
            f.write(struct.pack(f"<{arr.ndim}I", *arr.shape))
            f.write(arr.astype("<f8").tobytes())


def load_checkpoint(path) -> dict[str, np.ndarray]:
    with open(path, "rb") as f:
        blob = f.read()
    if blob[:4] != MAGIC:
        raise FormatError(f"bad checkpoint magic {blob[:4]!r}")
    pos = 4
    params: dict[str, np.ndarray] = {}

    def take(n: int) -> bytes:
        nonlocal pos
        if pos + n > len(blob):
            raise FormatError("truncated checkpoint")
        out = blob[pos : pos + n]
        pos += n
        return out

    while pos < len(blob):
        (name_len,) = struct.unpack("<I", take(4))
        name = take(name_len).decode("utf-8")
        (rank,) = struct.unpack("<I", take(4))
        shape = struct.unpack(f"<{rank}I", take(4 * rank))
        count = int(np.prod(shape)) if rank else 1
        values = np.frombuffer(take(8 * count), dtype="<f8")
        params[name] = values.reshape(shape).astype(np.float64)
    return params
