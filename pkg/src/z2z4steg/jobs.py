"""Embedding whole images: block tiling, message framing and capacity.

Single-block schemes take consecutive runs of symbols in row-major order
(``n`` for f5, ``N`` for z2z4).  Product schemes take rectangles
(``n**(l-1) x n`` for kp, ``n x N`` for z2z4-product) tiled left to right,
top to bottom.  Leftover symbols are never touched.  Message bits are read
most significant bit first within each byte, and the last block is padded
with zero bits.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .codes import build_z2z4_check, z2z4_params
from .embed import EmbedOutcome, f5_embed_symbols, f5_extract_symbols, z2z4_embed, z2z4_extract
from .exceptions import CapacityError, ParameterError
from .pgm import PGMImage, read_pgm, write_pgm
from .product import (
    kp_embed_symbols,
    kp_extract_symbols,
    kp_message_bits,
    product_check,
    z2z4_product_embed,
    z2z4_product_extract,
)

SCHEMES = ("f5", "z2z4", "kp", "z2z4-product")
PREFIX_BITS = 32


@dataclass(frozen=True)
class BlockScheme:
    """How one scheme cuts an image into blocks and what each block carries."""

    name: str
    shape: tuple[int, int]
    rectangular: bool
    bits: int
    embed: Callable[[np.ndarray, list[int]], EmbedOutcome]
    extract: Callable[[np.ndarray], list[int]]

    @property
    def size(self) -> int:
        return self.shape[0] * self.shape[1]


def block_scheme(name: str, m: int, delta: int = 1, level: int = 2, B: int = 8, optimize: bool = True) -> BlockScheme:
    if m < 2:
        raise ParameterError(f"m must be >= 2, got {m}")
    n, N = 2**m - 1, 2 ** (m - 1)
    if name == "f5":
        return BlockScheme(name, (1, n), False, m, lambda x, b: f5_embed_symbols(x, b), f5_extract_symbols)
    if name == "z2z4":
        H = build_z2z4_check(z2z4_params(m, delta))
        return BlockScheme(name, (1, N), False, m, lambda x, b: z2z4_embed(x, b, H, B), lambda x: z2z4_extract(x, H))
    if name == "kp":
        if level < 1:
            raise ParameterError(f"level must be >= 1, got {level}")
        return BlockScheme(
            name,
            (n ** (level - 1), n),
            True,
            kp_message_bits(m, level),
            lambda x, b: kp_embed_symbols(x, b, m, level, optimize),
            lambda x: kp_extract_symbols(x, m, level),
        )
    if name == "z2z4-product":
        if level != 2:
            raise ParameterError("z2z4-product embedding is implemented for level 2 only")
        H = product_check(m, delta)
        return BlockScheme(
            name,
            (n, N),
            True,
            (n + 1) * m,
            lambda x, b: z2z4_product_embed(x, b, H, B, optimize),
            lambda x: z2z4_product_extract(x, H),
        )
    raise ParameterError(f"unknown scheme {name!r}; expected one of {SCHEMES}")


def block_indices(height: int, width: int, scheme: BlockScheme) -> np.ndarray:
    """Flat symbol indices of every block, shape ``(blocks, block size)``."""
    if not scheme.rectangular:
        count = height * width // scheme.size
        return np.arange(count * scheme.size).reshape(count, scheme.size)
    h, w = scheme.shape
    ty, tx = np.meshgrid(np.arange(height // h), np.arange(width // w), indexing="ij")
    r, c = np.meshgrid(np.arange(h), np.arange(w), indexing="ij")
    rows = ty.reshape(-1, 1) * h + r.reshape(1, -1)
    cols = tx.reshape(-1, 1) * w + c.reshape(1, -1)
    return rows * width + cols


def capacity(height: int, width: int, scheme: BlockScheme) -> int:
    """Embeddable message bits."""
    return len(block_indices(height, width, scheme)) * scheme.bits


def bytes_to_bits(data: bytes) -> list[int]:
    return np.unpackbits(np.frombuffer(data, dtype=np.uint8)).tolist()


def bits_to_bytes(bits) -> bytes:
    return np.packbits(np.asarray(bits, dtype=np.uint8)).tobytes()


def frame(message: bytes, length_prefix: bool) -> bytes:
    return struct.pack(">I", len(message)) + message if length_prefix else message


@dataclass
class EmbedReport:
    scheme: str
    blocks_used: int
    capacity_bits: int
    message_bits: int
    changes: int
    extreme_events: int


def embed_grid(grid: np.ndarray, payload: bytes, scheme: BlockScheme) -> tuple[np.ndarray, EmbedReport]:
    """Hide ``payload`` in a 2-D array of symbols; returns the stego array and a report."""
    grid = np.asarray(grid, dtype=np.int64)
    idx = block_indices(*grid.shape, scheme)
    bits = bytes_to_bits(payload)
    cap = len(idx) * scheme.bits
    if len(bits) > cap:
        raise CapacityError(f"message needs {len(bits)} bits, cover holds {cap}")
    used = -(-len(bits) // scheme.bits)
    bits += [0] * (used * scheme.bits - len(bits))
    flat = grid.reshape(-1).copy()
    changes = extreme = 0
    for k in range(used):
        block = flat[idx[k]].reshape(scheme.shape)
        res = scheme.embed(block if scheme.rectangular else block[0], bits[k * scheme.bits : (k + 1) * scheme.bits])
        flat[idx[k]] = np.asarray(res.stego).reshape(-1)
        changes += res.change_count
        extreme += int(res.extreme)
    report = EmbedReport(scheme.name, used, cap, len(payload) * 8, changes, extreme)
    return flat.reshape(grid.shape), report


def extract_grid(grid: np.ndarray, nbits: int, scheme: BlockScheme) -> list[int]:
    grid = np.asarray(grid, dtype=np.int64)
    idx = block_indices(*grid.shape, scheme)
    if nbits > len(idx) * scheme.bits:
        raise CapacityError(f"cover holds only {len(idx) * scheme.bits} bits, {nbits} requested")
    flat = grid.reshape(-1)
    out: list[int] = []
    k = 0
    while len(out) < nbits:
        block = flat[idx[k]].reshape(scheme.shape)
        out += scheme.extract(block if scheme.rectangular else block[0])
        k += 1
    return out[:nbits]


def extract_message(grid: np.ndarray, scheme: BlockScheme, length: int | None = None) -> bytes:
    """Recover ``length`` bytes, or read a 32-bit length prefix when ``length`` is None."""
    if length is None:
        n = int.from_bytes(bits_to_bytes(extract_grid(grid, PREFIX_BITS, scheme)), "big")
        bits = extract_grid(grid, PREFIX_BITS + 8 * n, scheme)[PREFIX_BITS:]
    else:
        if length < 0:
            raise ParameterError("message length must be non-negative")
        bits = extract_grid(grid, 8 * length, scheme)
    return bits_to_bytes(bits)


@dataclass
class StegoJob:
    cover: Path
    scheme: str
    m: int
    delta: int = 1
    level: int = 2
    B: int | None = None
    message: Path | None = None
    out: Path | None = None
    length: int | None = None
    length_prefix: bool = False
    optimize: bool = True

    def _load(self) -> tuple[PGMImage, BlockScheme]:
        img = read_pgm(self.cover)
        if self.B is not None and self.B != img.bitdepth:
            raise ParameterError(f"bit depth {self.B} does not match the image (maxval {img.maxval})")
        return img, block_scheme(self.scheme, self.m, self.delta, self.level, img.bitdepth, self.optimize)


def run_embed(job: StegoJob) -> EmbedReport:
    """Embed the message file into the cover and write the stego image.

    Nothing is written if the message does not fit or a block cannot be
    embedded.
    """
    img, scheme = job._load()
    if job.message is None or job.out is None:
        raise ParameterError("embedding needs a message file and an output path")
    payload = frame(Path(job.message).read_bytes(), job.length_prefix)
    stego, report = embed_grid(img.grid(), payload, scheme)
    write_pgm(job.out, PGMImage(img.width, img.height, img.maxval, stego.reshape(-1), img.header))
    return report


def run_extract(job: StegoJob) -> bytes:
    img, scheme = job._load()
    if job.length is None and not job.length_prefix:
        raise ParameterError("extraction needs --length or --length-prefix")
    data = extract_message(img.grid(), scheme, None if job.length_prefix else job.length)
    if job.out is not None:
        Path(job.out).write_bytes(data)
    return data



def run_job(job: StegoJob) -> EmbedReport | bytes:
    """Embed when the job names a message file, extract otherwise."""
    return run_embed(job) if job.message is not None else run_extract(job)
