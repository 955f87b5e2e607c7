"""Product-code embedding.

Binary Kronecker-product (KP) embedding works on LSB blocks of ``n**l``
bits with ``n = 2**m - 1``.  A level-``l`` block is an ``n**(l-1) x n``
matrix: every row is a Hamming row carrying ``m`` bits, and its first column
(``n**(l-1)`` bits) is itself a level-``l-1`` block.  Whenever the column
step flips the first bit of a row, that row is re-embedded with the bit
pinned, which costs one extra change if the row had already been modified
and three otherwise.

The Z2Z4 product works on ``n x N`` grayscale blocks.  Each row is a
single-block +-1 embedding.  The Gray LSBs of the first symbol of every row
form a length-``n`` binary word which, read through the inverse Gray map, is
embedded with the same parity check.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .codes import CodeType, Move, Syndrome, Z2Z4ParityCheck, Z2Z4Vector, build_z2z4_check, z2z4_params
from .embed import EmbedOutcome, apply_moves, bits_to_int, int_to_bits, z2z4_embed
from .exceptions import EmbeddingError, InfeasibleError, ParameterError
from .graymap import GRAY, flip_direction, is_realizable, lsb0, pack_block

Level = int | float


def kp_message_bits(m: int, level: int) -> int:
    """``m (1 + n + ... + n**(level-1))`` bits fit in a level-``level`` block."""
    n = 2**m - 1
    return m * (n**level - 1) // (n - 1)


def _chunks(msg: Sequence[int], m: int) -> list[int]:
    return [bits_to_int(msg[i : i + m]) for i in range(0, len(msg), m)]


def _row_syndromes(rows: np.ndarray) -> np.ndarray:
    return np.bitwise_xor.reduce(rows.astype(np.int64) * np.arange(1, rows.shape[1] + 1), axis=1)


def _cheapest_flips(d: int, n: int, cost: np.ndarray | None = None, pinned_first: bool = False) -> list[int]:
    """1-based positions whose XOR is ``d``: the single position ``d`` or a pair.

    Without costs the single flip wins whenever allowed, else the first pair
    in ascending order.  With costs the cheapest option wins; ties go to the
    single flip, then to the earliest pair.
    """
    if d == 0:
        return []
    options = []
    if not (pinned_first and d == 1):
        options.append([d])
        if cost is None:
            return [d]
    for a in range(2 if pinned_first else 1, n + 1):
        b = a ^ d
        if b > a and not (pinned_first and b == 1):
            options.append([a, b])
            if cost is None:
                break
    if cost is None:
        return options[0]
    return min(options, key=lambda ps: sum(int(cost[p - 1]) for p in ps))


def _kp_embed_vec(u: np.ndarray, chunks: list[int], m: int, level: int, cost: np.ndarray | None) -> np.ndarray:
    n = 2**m - 1
    if level == 1:
        out = u.copy()
        d = chunks[0] ^ int(_row_syndromes(u[None, :])[0])
        for p in _cheapest_flips(d, n, cost):
            out[p - 1] ^= 1
        return out

    R = n ** (level - 1)
    rows_in = u.reshape(R, n)
    out = rows_in.copy()
    row_costs = None if cost is None else cost.reshape(R, n)
    gaps = np.asarray(chunks[:R]) ^ _row_syndromes(rows_in)
    for r in np.flatnonzero(gaps):
        for p in _cheapest_flips(int(gaps[r]), n, None if row_costs is None else row_costs[r]):
            out[r, p - 1] ^= 1

    col_in = out[:, 0].copy()
    col_cost = None
    if cost is not None:
        # a first-column flip costs +1 in a modified row, +3 in a clean one
        col_cost = np.where((out != rows_in).any(axis=1), 1, 3)
    col_out = _kp_embed_vec(col_in, chunks[R:], m, level - 1, col_cost)

    for r in np.flatnonzero(col_out != col_in):
        z = rows_in[r].copy()
        z[0] = col_out[r]
        d = chunks[r] ^ int(_row_syndromes(z[None, :])[0])
        for p in _cheapest_flips(d, n, None if row_costs is None else row_costs[r], pinned_first=True):
            z[p - 1] ^= 1
        out[r] = z
    return out.reshape(-1)


def _kp_extract_vec(u: np.ndarray, m: int, level: int) -> list[int]:
    n = 2**m - 1
    rows = u.reshape(-1, n)
    synd = [int(s) for s in _row_syndromes(rows)]
    if level == 1:
        return synd
    return synd + _kp_extract_vec(rows[:, 0], m, level - 1)


def _check_kp(block, m: int, level: int) -> np.ndarray:
    if level < 1 or m < 2:
        raise ParameterError(f"need m >= 2 and level >= 1, got m={m}, level={level}")
    u = np.asarray(block, dtype=np.uint8).reshape(-1)
    n = 2**m - 1
    if u.size != n**level or np.any(u > 1):
        raise ParameterError(f"a level-{level} block holds {n**level} bits")
    return u


def kp_embed(block, msg: Sequence[int], m: int, level: int, optimize: bool = True) -> EmbedOutcome:
    """Embed ``kp_message_bits(m, level)`` bits in an LSB block of ``n**level`` bits.

    ``optimize`` enables the two-flip shortcut: a column flip landing on an
    unmodified row is replaced by two flips on modified rows when their
    columns add up to the same syndrome.
    """
    u = _check_kp(block, m, level)
    if len(msg) != kp_message_bits(m, level):
        raise ParameterError(f"message must have {kp_message_bits(m, level)} bits, got {len(msg)}")
    cost = np.ones(u.size, dtype=np.int64) if optimize else None
    out = _kp_embed_vec(u, _chunks(msg, m), m, level, cost)
    changes = [(int(i), int(out[i]) - int(u[i])) for i in np.flatnonzero(out != u)]
    return EmbedOutcome(out, changes)


def kp_extract(block, m: int, level: int) -> list[int]:
    u = _check_kp(block, m, level)
    return [b for s in _kp_extract_vec(u, m, level) for b in int_to_bits(s, m)]


def kp_embed_symbols(block, msg: Sequence[int], m: int, level: int, optimize: bool = True) -> EmbedOutcome:
    """KP embedding on the plain LSBs of grayscale symbols (+1 on even, -1 on odd)."""
    x = np.asarray(block, dtype=np.int64).reshape(-1)
    res = kp_embed(x & 1, msg, m, level, optimize)
    y = x.copy()
    changes = []
    for i, _ in res.changes:
        delta = 1 if x[i] % 2 == 0 else -1
        y[i] += delta
        changes.append((i, delta))
    return EmbedOutcome(y.reshape(np.shape(block)), changes)


def kp_extract_symbols(block, m: int, level: int) -> list[int]:
    return kp_extract(np.asarray(block, dtype=np.int64).reshape(-1) & 1, m, level)


def kp_distortion_bound(m: int, level: Level) -> Fraction:
    """Upper bound ``D_l = 1/(n+1) + xi D_{l-1}``, ``xi = (n+3)/(n(n+1))``; ``level=math.inf`` gives the limit."""
    n = 2**m - 1
    d1 = Fraction(1, n + 1)
    xi = Fraction(n + 3, n * (n + 1))
    return _geometric(d1, xi, level)


def kp_rate(m: int, level: Level) -> Fraction:
    n = 2**m - 1
    if level == math.inf:
        return Fraction(m, n - 1)
    return Fraction(kp_message_bits(m, int(level)), n**level)


def _geometric(first: Fraction, ratio: Fraction, level: Level) -> Fraction:
    if level == math.inf:
        return first / (1 - ratio)
    if level < 1 or int(level) != level:
        raise ParameterError(f"level must be a positive integer or math.inf, got {level!r}")
    return first * sum(ratio**k for k in range(int(level)))


# -- product of Z2Z4 perfect codes --------------------------------------------


def product_check(m: int, delta: int) -> Z2Z4ParityCheck:
    """Row/column parity check for the Z2Z4 product: first-symbol column chosen to be compensable."""
    return build_z2z4_check(z2z4_params(m, delta), x1_column="compensable")


def column_word(bits: Sequence[int], p: CodeType) -> Z2Z4Vector:
    """Inverse extended Gray map of a length-``n`` binary word."""
    a = p.alpha
    quat = tuple(GRAY.index((bits[a + 2 * j], bits[a + 2 * j + 1])) for j in range(p.beta))
    return Z2Z4Vector(tuple(int(b) for b in bits[:a]), quat)


def _column_move_row(mv: Move, w: Z2Z4Vector, p: CodeType) -> int:
    """Row whose first-symbol LSB a column move flips."""
    if mv.kind == "flip":
        return mv.coord
    j = mv.coord - p.alpha
    old, new = GRAY[w.quat[j]], GRAY[(w.quat[j] + mv.eps) & 3]
    return p.alpha + 2 * j + (0 if old[0] != new[0] else 1)


def _exhaustive_row(z: list[int], target: Syndrome, H: Z2Z4ParityCheck, B: int, max_changes: int = 4) -> list[int] | None:
    p = H.code_type
    for k in range(1, min(p.N - 1, max_changes) + 1):
        for syms in itertools.combinations(range(1, p.N), k):
            for signs in itertools.product((1, -1), repeat=k):
                y = list(z)
                for s, e in zip(syms, signs):
                    y[s] += e
                if all(0 <= y[s] < 2**B for s in syms) and H.syndrome(pack_block(y, p)) == target:
                    return y
    return None


def repair_row(cover: Sequence[int], target: Syndrome, first_lsb: int, H: Z2Z4ParityCheck, B: int = 8) -> list[int] | None:
    """Re-embed a row from its cover with the Gray LSB of symbol 0 pinned to ``first_lsb``.

    Tries the single closing move, then two +-1 moves away from symbol 0,
    then a small exhaustive search.  Returns ``None`` if nothing fits.
    """
    p = H.code_type
    z = [int(v) for v in cover]
    if lsb0(z[0]) != first_lsb:
        z[0] += flip_direction(z[0], "v0")
    d = target - H.syndrome(pack_block(z, p))
    mv = H.decode_delta(d)
    if mv is None:
        return z

    def ok(m: Move) -> bool:
        return m.coord != 0 and is_realizable(z, m, p, B)

    if ok(mv):
        return apply_moves(z, [mv], H)[0]
    try:
        pair = H.solve_two_moves(d, {0}, allowed=ok)
    except InfeasibleError:
        return _exhaustive_row(z, target, H, B)
    return apply_moves(z, pair, H)[0]


def _changes(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(int(x) != int(y) for x, y in zip(a, b))


def z2z4_product_embed(
    block, msg: Sequence[int], H: Z2Z4ParityCheck, B: int = 8, optimize: bool = True
) -> EmbedOutcome:
    """Embed ``(n+1) m`` bits in an ``n x N`` grayscale block.

    Rows go first, one chunk each.  The last chunk goes into the first-symbol
    column.  Every column move flips one first-symbol Gray LSB, and the
    affected row is then re-embedded with that bit pinned.  With
    ``optimize``, pairs of column moves on cheaper rows are considered too.
    If no candidate can be repaired, every column word carrying the chunk is
    searched.
    """
    p = H.code_type
    x = np.asarray(block, dtype=np.int64)
    if x.shape != (p.n, p.N) or x.min() < 0 or x.max() >= 2**B:
        raise ParameterError(f"block must be {p.n} x {p.N} symbols in [0, {2**B - 1}]")
    if len(msg) != (p.n + 1) * p.m:
        raise ParameterError(f"message must have {(p.n + 1) * p.m} bits, got {len(msg)}")
    targets = [Syndrome.from_bits(msg[i * p.m : (i + 1) * p.m], p.gamma, p.delta) for i in range(p.n + 1)]

    y = x.copy()
    extreme = False
    for i in range(p.n):
        res = z2z4_embed(x[i], targets[i], H, B)
        y[i] = res.stego
        extreme |= res.extreme

    bits = [lsb0(int(v)) for v in y[:, 0]]
    w = column_word(bits, p)
    d = targets[p.n] - H.syndrome(w)
    if d:
        repaired: dict[int, tuple[list[int] | None, int]] = {}

        def repair(i: int) -> tuple[list[int] | None, int]:
            if i not in repaired:
                row = repair_row(x[i], targets[i], bits[i] ^ 1, H, B)
                cost = math.inf if row is None else _changes(row, x[i]) - _changes(y[i], x[i])
                repaired[i] = (row, cost)
            return repaired[i]

        candidates = [[_column_move_row(H.decode_delta(d), w, p)]]
        if optimize:
            for k, a in enumerate(H.moves):
                b = H.decode_delta(d - H.contribution(a))
                if b is not None and b in H.moves[k + 1 :] and b.coord != a.coord:
                    candidates.append([_column_move_row(a, w, p), _column_move_row(b, w, p)])
        best = min(candidates, key=lambda rows: sum(repair(r)[1] for r in rows))
        if sum(repair(r)[1] for r in best) == math.inf:
            best = _exhaustive_column(bits, targets[p.n], H, repair)
        for r in best:
            y[r] = repair(r)[0]

    changes = [(int(i * p.N + j), int(y[i, j] - x[i, j])) for i, j in zip(*np.nonzero(y != x))]
    return EmbedOutcome(y, changes, extreme)


def _exhaustive_column(bits: list[int], target: Syndrome, H: Z2Z4ParityCheck, repair, max_rows: int = 15) -> list[int]:
    p = H.code_type
    if p.n > max_rows:
        raise EmbeddingError("no repairable column change and the block is too large for exhaustive search")
    best, best_cost = None, math.inf
    for flips in itertools.product((0, 1), repeat=p.n):
        cand = [b ^ f for b, f in zip(bits, flips)]
        if H.syndrome(column_word(cand, p)) != target:
            continue
        rows = [i for i, f in enumerate(flips) if f]
        cost = sum(repair(r)[1] for r in rows)
        if cost < best_cost:
            best, best_cost = rows, cost
    if best is None:
        raise EmbeddingError("no +-1 stego block carries this message")
    return best


def z2z4_product_extract(block, H: Z2Z4ParityCheck) -> list[int]:
    p = H.code_type
    x = np.asarray(block, dtype=np.int64)
    if x.shape != (p.n, p.N):
        raise ParameterError(f"block must be {p.n} x {p.N} symbols")
    out: list[int] = []
    for row in x:
        out += H.syndrome(pack_block([int(v) for v in row], p)).to_bits()
    out += H.syndrome(column_word([lsb0(int(v)) for v in x[:, 0]], p)).to_bits()
    return out


def z2z4_product_bounds(m: int, B: int = 8, level: Level = 2) -> tuple[Fraction, Fraction]:
    """``(D, E)`` for the Z2Z4 product at ``level`` (``math.inf`` for the limit)."""
    n, N = 2**m - 1, 2 ** (m - 1)
    d1 = Fraction(2 * n, (n + 1) ** 2) + Fraction(n - 1, 2 ** (B - 2) * (n + 1) ** 2)
    xi = Fraction(n + 3, n + 1) / (n + Fraction(n - 1, 2 ** (B - 1)))
    D = _geometric(d1, xi, level)
    if level == math.inf:
        return D, Fraction(m * n, N * (n - 1))
    return D, Fraction(m * (n**level - 1) // (n - 1), N * n ** (level - 1))
