"""Gray map, grayscale packing into Z2Z4 words and +-1 realization of moves."""

from __future__ import annotations

from typing import Sequence

from .codes import CodeType, Move, Z2Z4Vector
from .exceptions import ParameterError

GRAY = ((0, 0), (0, 1), (1, 1), (1, 0))
_GRAY_INV = {bits: q for q, bits in enumerate(GRAY)}


def gray(q: int) -> tuple[int, int]:
    return GRAY[q]


def gray_inv(bits: Sequence[int]) -> int:
    return _GRAY_INV[tuple(int(b) for b in bits)]


def symbol_to_graybits(x: int, B: int = 8) -> tuple[int, ...]:
    """Gray bits ``(v_{B-1}, ..., v_1, v_0)`` of a grayscale value.

    The value is written in base 4, most significant digit first, and each
    digit goes through the Gray map.
    """
    if B % 2 or B < 2:
        raise ParameterError(f"bit depth must be even, got {B}")
    if not 0 <= x < 2**B:
        raise ParameterError(f"value {x} out of range for B={B}")
    bits: list[int] = []
    for shift in range(B - 2, -1, -2):
        bits += GRAY[(x >> shift) & 3]
    return tuple(bits)


def graybits_to_symbol(bits: Sequence[int]) -> int:
    x = 0
    for i in range(0, len(bits), 2):
        x = 4 * x + gray_inv(bits[i : i + 2])
    return x


def lsb0(x: int) -> int:
    """Gray LSB ``v_0`` of ``x``; it depends on ``x mod 4`` only."""
    return GRAY[x & 3][1]


def lsb1(x: int) -> int:
    return GRAY[x & 3][0]


def flip_direction(x: int, role: str) -> int:
    """The single +-1 step that toggles Gray bit ``role`` (``"v0"`` or ``"v1"``) of ``x``."""
    up = 1 if x & 1 == 0 else -1
    return up if role == "v0" else -up


def pack_block(block: Sequence[int], params: CodeType) -> Z2Z4Vector:
    """Read the Z2Z4 word carried by ``N`` grayscale symbols."""
    if len(block) != params.N:
        raise ParameterError(f"block of {len(block)} symbols, expected N={params.N}")
    bin_ = [lsb0(block[0])]
    for x in block[1 : (params.alpha + 1) // 2]:
        bin_ += GRAY[x & 3]
    # gray_inv of the two Gray LSBs is just x mod 4
    quat = tuple(x & 3 for x in block[(params.alpha + 1) // 2 :])
    return Z2Z4Vector(tuple(bin_), quat)


def move_delta(block: Sequence[int], move: Move, params: CodeType) -> tuple[int, int]:
    """``(symbol index, +-1)`` that realizes ``move`` on ``block``, ignoring range limits."""
    sym, role = params.symbol_of(move.coord)
    if role == "q":
        return sym, 1 if move.eps == 1 else -1
    return sym, flip_direction(block[sym], role)


def realize_move(
    block: Sequence[int], move: Move, params: CodeType, B: int = 8
) -> tuple[list[int], list[int], bool]:
    """Apply ``move`` as a +-1 change of one symbol.

    Returns ``(new block, changed symbol indices, blocked)``.  When the
    forced direction leaves ``[0, 2**B - 1]`` nothing changes and
    ``blocked`` is true.
    """
    sym, delta = move_delta(block, move, params)
    out = list(block)
    y = out[sym] + delta
    if not 0 <= y < 2**B:
        return out, [], True
    out[sym] = y
    return out, [sym], False


def is_realizable(block: Sequence[int], move: Move, params: CodeType, B: int = 8) -> bool:
    sym, delta = move_delta(block, move, params)
    return 0 <= block[sym] + delta < 2**B
