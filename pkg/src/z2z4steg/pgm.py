"""Binary PGM (P5) reading and writing."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import ParameterError

BIT_DEPTHS = {255: 8, 4095: 12, 65535: 16}


@dataclass
class PGMImage:
    width: int
    height: int
    maxval: int
    symbols: np.ndarray  # row-major, length width * height
    header: bytes | None = None  # original header, reused on write

    @property
    def bitdepth(self) -> int:
        return BIT_DEPTHS[self.maxval]

    def grid(self) -> np.ndarray:
        return self.symbols.reshape(self.height, self.width)


def _header_tokens(data: bytes) -> tuple[list[bytes], int]:
    tokens: list[bytes] = []
    i = 0
    while len(tokens) < 4:
        if i >= len(data):
            raise ParameterError("truncated PGM header")
        c = data[i : i + 1]
        if c == b"#":
            while i < len(data) and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < len(data) and not data[j : j + 1].isspace() and data[j : j + 1] != b"#":
                j += 1
            tokens.append(data[i:j])
            i = j
    if i >= len(data) or not data[i : i + 1].isspace():
        raise ParameterError("malformed PGM header")
    return tokens, i + 1


def parse_pgm(data: bytes) -> PGMImage:
    if data[:2] != b"P5":
        raise ParameterError(f"unsupported image format {data[:2]!r}; only binary PGM (P5) is read")
    tokens, start = _header_tokens(data)
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError as exc:
        raise ParameterError("malformed PGM header") from exc
    if width < 1 or height < 1:
        raise ParameterError(f"bad PGM size {width}x{height}")
    if maxval not in BIT_DEPTHS:
        raise ParameterError(f"unsupported maxval {maxval}; expected one of {sorted(BIT_DEPTHS)}")
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    size = width * height * dtype.itemsize
    payload = data[start : start + size]
    if len(payload) < size:
        raise ParameterError(f"truncated PGM payload: {len(payload)} of {size} bytes")
    symbols = np.frombuffer(payload, dtype=dtype).astype(np.int64)
    if symbols.max(initial=0) > maxval:
        raise ParameterError("PGM sample exceeds maxval")
    return PGMImage(width, height, maxval, symbols, data[:start])


def format_pgm(img: PGMImage) -> bytes:
    if img.maxval not in BIT_DEPTHS:
        raise ParameterError(f"unsupported maxval {img.maxval}")
    sym = np.asarray(img.symbols).reshape(-1)
    if sym.size != img.width * img.height or sym.min(initial=0) < 0 or sym.max(initial=0) > img.maxval:
        raise ParameterError("symbols do not fit the PGM header")
    dtype = ">u2" if img.maxval > 255 else "u1"
    header = img.header or f"P5\n{img.width} {img.height}\n{img.maxval}\n".encode()
    return header + sym.astype(dtype).tobytes()


def read_pgm(path: str | Path) -> PGMImage:
    return parse_pgm(Path(path).read_bytes())


def write_pgm(path: str | Path, img: PGMImage) -> None:
    Path(path).write_bytes(format_pgm(img))
