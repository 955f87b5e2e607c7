"""Single-block embedders.

``f5_*`` is binary matrix encoding with a Hamming code: ``m`` bits ride in
``2**m - 1`` LSBs with at most one flip.  ``z2z4_*`` is +-1 embedding with a
perfect Z2Z4-linear code in ``N = 2**(m-1)`` grayscale symbols, including
the fallback used when a symbol at 0 or ``2**B - 1`` would leave the range.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .codes import BinaryCheck, Move, Syndrome, Z2Z4ParityCheck, build_hamming_check
from .exceptions import EmbeddingError, InfeasibleError, ParameterError
from .graymap import is_realizable, move_delta, pack_block


@dataclass
class EmbedOutcome:
    """Stego block plus the list of ``(index, delta)`` changes made to the cover."""

    stego: np.ndarray
    changes: list[tuple[int, int]] = field(default_factory=list)
    extreme: bool = False

    @property
    def change_count(self) -> int:
        return len(self.changes)


def int_to_bits(v: int, m: int) -> list[int]:
    return [(v >> (m - 1 - i)) & 1 for i in range(m)]


def bits_to_int(bits: Sequence[int]) -> int:
    v = 0
    for b in bits:
        v = (v << 1) | int(b)
    return v


def _hamming_for(n: int, H: BinaryCheck | None) -> BinaryCheck:
    if H is None:
        m = (n + 1).bit_length() - 1
        if 2**m - 1 != n:
            raise ParameterError(f"row length {n} is not of the form 2**m - 1")
        H = build_hamming_check(m)
    if H.n != n:
        raise ParameterError(f"row length {n} does not match n={H.n}")
    return H


def f5_embed(row: Sequence[int], s: Sequence[int] | int, H: BinaryCheck | None = None) -> np.ndarray:
    """Flip at most one bit of ``row`` so that its Hamming syndrome equals ``s``."""
    out = np.array(row, dtype=np.uint8)
    H = _hamming_for(out.size, H)
    target = s if isinstance(s, (int, np.integer)) else bits_to_int(s)
    if not 0 <= target <= H.n:
        raise ParameterError(f"message chunk {s!r} does not fit in {H.m} bits")
    d = int(target) ^ H.syndrome(out)
    if d:
        out[d - 1] ^= 1
    return out


def f5_extract(row: Sequence[int], H: BinaryCheck | None = None) -> list[int]:
    H = _hamming_for(len(row), H)
    return int_to_bits(H.syndrome(row), H.m)


def f5_embed_symbols(block: Sequence[int], s: Sequence[int] | int, H: BinaryCheck | None = None) -> EmbedOutcome:
    """F5 on the plain LSBs of grayscale symbols; a flip is +1 on even values, -1 on odd ones."""
    x = np.asarray(block, dtype=np.int64)
    lsb = f5_embed(x & 1, s, H)
    changed = np.flatnonzero(lsb != (x & 1))
    y = x.copy()
    changes = []
    for i in changed:
        delta = 1 if x[i] % 2 == 0 else -1
        y[i] += delta
        changes.append((int(i), delta))
    return EmbedOutcome(y, changes)


def f5_extract_symbols(block: Sequence[int], H: BinaryCheck | None = None) -> list[int]:
    return f5_extract(np.asarray(block, dtype=np.int64) & 1, H)


def as_target(s: Sequence[int] | Syndrome, H: Z2Z4ParityCheck) -> Syndrome:
    if isinstance(s, Syndrome):
        return s
    return Syndrome.from_bits(s, H.code_type.gamma, H.code_type.delta)


def apply_moves(block: Sequence[int], moves: Sequence[Move], H: Z2Z4ParityCheck) -> tuple[list[int], list[tuple[int, int]]]:
    """Realize moves that touch distinct symbols; range checks are the caller's job."""
    y = list(block)
    changes = []
    for mv in moves:
        sym, delta = move_delta(block, mv, H.code_type)
        y[sym] += delta
        changes.append((sym, delta))
    return y, changes


def z2z4_embed(block: Sequence[int], s: Sequence[int] | Syndrome, H: Z2Z4ParityCheck, B: int = 8) -> EmbedOutcome:
    """Embed one chunk into ``N`` grayscale symbols with +-1 changes.

    The single move ``eps * h_i`` closing the syndrome gap is applied when the
    symbol can take the step.  Otherwise the Gray LSB of the first symbol is
    flipped together with one other step; if that pair is blocked too, any
    admissible pair of moves is used.
    """
    p = H.code_type
    x = [int(v) for v in block]
    if len(x) != p.N or any(not 0 <= v < 2**B for v in x):
        raise ParameterError(f"block must hold {p.N} symbols in [0, {2**B - 1}]")
    d = as_target(s, H) - H.syndrome(pack_block(x, p))
    mv = H.decode_delta(d)
    if mv is None:
        return EmbedOutcome(np.array(x, dtype=np.int64))
    if is_realizable(x, mv, p, B):
        y, changes = apply_moves(x, [mv], H)
        return EmbedOutcome(np.array(y, dtype=np.int64), changes)

    def ok(m: Move) -> bool:
        return is_realizable(x, m, p, B)

    try:
        pair = H.solve_two_moves(d, {mv}, first=Move.flip(0), allowed=ok)
    except InfeasibleError:
        try:
            pair = H.solve_two_moves(d, {mv}, allowed=ok)
        except InfeasibleError as exc:
            raise EmbeddingError(f"no +-1 realization of {d} in block {x}") from exc
    y, changes = apply_moves(x, pair, H)
    return EmbedOutcome(np.array(y, dtype=np.int64), changes, extreme=True)


def z2z4_extract(block: Sequence[int], H: Z2Z4ParityCheck) -> list[int]:
    return H.syndrome(pack_block([int(v) for v in block], H.code_type)).to_bits()
