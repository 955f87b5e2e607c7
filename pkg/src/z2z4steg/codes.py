"""Parity-check matrices, syndromes and small-code utilities.

Two code families are covered here:

* binary Hamming codes of length ``2**m - 1`` whose parity-check column ``i``
  is the binary expansion of ``i``;
* Z2Z4-additive perfect codes of binary length ``2**m - 1``.  Their parity
  checks have ``gamma`` order-two rows and ``delta`` order-four rows and take
  as columns every element of ``Z2^gamma x Z4^delta`` up to sign.

Coordinates, symbols and rows are 0-based throughout the package.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property, reduce
from operator import xor
from typing import Callable, Collection, Literal, Sequence

import numpy as np

from .exceptions import CapacityError, InfeasibleError, ParameterError

MoveKind = Literal["flip", "step"]


@dataclass(frozen=True)
class CodeType:
    """Parameters of a perfect Z2Z4-linear code of binary length ``2**m - 1``."""

    m: int
    delta: int

    def __post_init__(self) -> None:
        if not isinstance(self.m, (int, np.integer)) or self.m < 2:
            raise ParameterError(f"m must be an integer >= 2, got {self.m!r}")
        if not isinstance(self.delta, (int, np.integer)) or not 0 <= self.delta <= self.m // 2:
            raise ParameterError(f"delta must lie in [0, {self.m // 2}] for m={self.m}, got {self.delta!r}")

    @property
    def alpha(self) -> int:
        return 2 ** (self.m - self.delta) - 1

    @property
    def beta(self) -> int:
        return 2 ** (self.m - 1) - 2 ** (self.m - self.delta - 1)

    @property
    def gamma(self) -> int:
        return self.m - 2 * self.delta

    @property
    def n(self) -> int:
        return 2**self.m - 1

    @property
    def N(self) -> int:
        return 2 ** (self.m - 1)

    @property
    def ncoords(self) -> int:
        return self.alpha + self.beta

    def symbol_of(self, coord: int) -> tuple[int, str]:
        """Return ``(symbol index, role)`` of a coordinate.

        Coordinate 0 is the Gray LSB ``v0`` of symbol 0.  The remaining binary
        coordinates come in ``(v1, v0)`` pairs, one pair per following symbol,
        and each quaternary coordinate owns one symbol (role ``"q"``).
        """
        if not 0 <= coord < self.ncoords:
            raise ParameterError(f"coordinate {coord} out of range for {self}")
        if coord == 0:
            return 0, "v0"
        if coord < self.alpha:
            return 1 + (coord - 1) // 2, "v1" if (coord - 1) % 2 == 0 else "v0"
        return (self.alpha + 1) // 2 + (coord - self.alpha), "q"


def z2z4_params(m: int, delta: int) -> CodeType:
    return CodeType(m, delta)


@dataclass(frozen=True, slots=True)
class Syndrome:
    """Element of ``Z2^gamma x Z4^delta``.

    Also used for parity-check columns; binary-part columns keep their
    order-four entries in ``{0, 2}``.
    """

    bin: tuple[int, ...]
    quat: tuple[int, ...]

    @classmethod
    def zero(cls, gamma: int, delta: int) -> Syndrome:
        return cls((0,) * gamma, (0,) * delta)

    @classmethod
    def twos(cls, gamma: int, delta: int) -> Syndrome:
        return cls((0,) * gamma, (2,) * delta)

    def __add__(self, other: Syndrome) -> Syndrome:
        return Syndrome(
            tuple(a ^ b for a, b in zip(self.bin, other.bin)),
            tuple((a + b) & 3 for a, b in zip(self.quat, other.quat)),
        )

    def __neg__(self) -> Syndrome:
        return Syndrome(self.bin, tuple(-a & 3 for a in self.quat))

    def __sub__(self, other: Syndrome) -> Syndrome:
        return self + (-other)

    def __mul__(self, k: int) -> Syndrome:
        return Syndrome(tuple(a * k & 1 for a in self.bin), tuple(a * k & 3 for a in self.quat))

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.bin) or any(self.quat)

    @property
    def order(self) -> int:
        if any(q & 1 for q in self.quat):
            return 4
        return 2 if self else 1

    def to_bits(self) -> list[int]:
        """Chunk codec: binary entries first, then each quaternary entry as two plain-binary bits."""
        bits = list(self.bin)
        for q in self.quat:
            bits += [q >> 1, q & 1]
        return bits

    @classmethod
    def from_bits(cls, bits: Sequence[int], gamma: int, delta: int) -> Syndrome:
        bits = [int(b) for b in bits]
        if len(bits) != gamma + 2 * delta or any(b not in (0, 1) for b in bits):
            raise ParameterError(f"expected {gamma + 2 * delta} bits, got {bits!r}")
        quat = tuple(2 * bits[gamma + 2 * i] + bits[gamma + 2 * i + 1] for i in range(delta))
        return cls(tuple(bits[:gamma]), quat)

    def __str__(self) -> str:
        return f"({''.join(map(str, self.bin))}|{''.join(map(str, self.quat))})"


@dataclass(frozen=True, slots=True)
class Z2Z4Vector:
    bin: tuple[int, ...]
    quat: tuple[int, ...]

    @classmethod
    def zero(cls, params: CodeType) -> Z2Z4Vector:
        return cls((0,) * params.alpha, (0,) * params.beta)

    def apply(self, move: Move, params: CodeType) -> Z2Z4Vector:
        """Return the word with ``move`` applied to it."""
        if move.kind == "flip":
            b = list(self.bin)
            b[move.coord] ^= 1
            return Z2Z4Vector(tuple(b), self.quat)
        q = list(self.quat)
        j = move.coord - params.alpha
        q[j] = (q[j] + move.eps) & 3
        return Z2Z4Vector(self.bin, tuple(q))


@dataclass(frozen=True, slots=True)
class Move:
    """Elementary change of one coordinate.

    ``"flip"`` toggles a binary coordinate; ``"step"`` adds ``eps`` (1 or 3,
    i.e. +1 or -1 mod 4) to a quaternary coordinate.
    """

    kind: MoveKind
    coord: int
    eps: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "flip" and self.eps is not None:
            raise ParameterError("binary flips carry no eps")
        if self.kind == "step" and self.eps not in (1, 3):
            raise ParameterError(f"quaternary steps need eps in {{1, 3}}, got {self.eps!r}")
        if self.kind not in ("flip", "step"):
            raise ParameterError(f"unknown move kind {self.kind!r}")

    @classmethod
    def flip(cls, coord: int) -> Move:
        return cls("flip", coord)

    @classmethod
    def step(cls, coord: int, eps: int) -> Move:
        return cls("step", coord, eps)


def _binary_columns(gamma: int, delta: int) -> list[Syndrome]:
    cols = []
    for digits in itertools.product((0, 1), repeat=gamma + delta):
        if any(digits):
            cols.append(Syndrome(digits[:gamma], tuple(2 * d for d in digits[gamma:])))
    return cols


def _quaternary_columns(gamma: int, delta: int) -> list[Syndrome]:
    cols = []
    for b in itertools.product((0, 1), repeat=gamma):
        for q in itertools.product(range(4), repeat=delta):
            odd = [x for x in q if x & 1]
            # one representative per sign class: first odd entry equal to 1
            if odd and odd[0] == 1:
                cols.append(Syndrome(b, q))
    return cols


class Z2Z4ParityCheck:
    """Parity-check matrix of a perfect Z2Z4-additive code, with its decode table."""

    def __init__(self, code_type: CodeType, columns: Sequence[Syndrome]) -> None:
        p = code_type
        self.code_type = p
        self.columns: tuple[Syndrome, ...] = tuple(columns)
        if len(self.columns) != p.ncoords:
            raise ParameterError(f"expected {p.ncoords} columns, got {len(self.columns)}")
        binary, quaternary = self.columns[: p.alpha], self.columns[p.alpha :]
        if any(h.order != 2 for h in binary) or any(h.order != 4 for h in quaternary):
            raise ParameterError("column orders do not match the code type")

        table: dict[Syndrome, Move] = {}
        for c, h in enumerate(self.columns):
            if c < p.alpha:
                entries = [(h, Move.flip(c))]
            else:
                entries = [(h, Move.step(c, 1)), (-h, Move.step(c, 3))]
            for s, mv in entries:
                if s in table:
                    raise ParameterError(f"syndrome {s} is reached by two moves")
                table[s] = mv
        if len(table) != 2**p.m - 1:
            raise ParameterError("decode table is not total")
        self.decode_table = table
        self._zero = Syndrome.zero(p.gamma, p.delta)

    def __repr__(self) -> str:
        p = self.code_type
        return f"Z2Z4ParityCheck(m={p.m}, delta={p.delta}, x1={self.columns[0]})"

    @cached_property
    def matrix(self) -> np.ndarray:
        """Integer matrix with ``gamma`` order-two rows above ``delta`` order-four rows."""
        return np.array([list(h.bin) + list(h.quat) for h in self.columns], dtype=np.int64).T.reshape(
            self.code_type.gamma + self.code_type.delta, len(self.columns)
        )

    @cached_property
    def moves(self) -> tuple[Move, ...]:
        """Every elementary move in ascending ``(coord, eps)`` order."""
        out = []
        for c in range(self.code_type.ncoords):
            if c < self.code_type.alpha:
                out.append(Move.flip(c))
            else:
                out += [Move.step(c, 1), Move.step(c, 3)]
        return tuple(out)

    def contribution(self, move: Move) -> Syndrome:
        h = self.columns[move.coord]
        return h if move.kind == "flip" else h * move.eps

    def syndrome(self, w: Z2Z4Vector) -> Syndrome:
        p = self.code_type
        if len(w.bin) != p.alpha or len(w.quat) != p.beta:
            raise ParameterError(f"word of shape ({len(w.bin)}, {len(w.quat)}) does not match {p}")
        b = [0] * p.gamma
        q = [0] * p.delta
        for h, x in zip(self.columns, itertools.chain(w.bin, w.quat)):
            if x:
                for i, v in enumerate(h.bin):
                    b[i] += v * x
                for i, v in enumerate(h.quat):
                    q[i] += v * x
        return Syndrome(tuple(v & 1 for v in b), tuple(v & 3 for v in q))

    def decode_delta(self, d: Syndrome) -> Move | None:
        """Unique elementary move whose syndrome contribution is ``d``; ``None`` for zero."""
        if not d:
            return None
        return self.decode_table[d]

    def is_complementary(self, j: int, k: int) -> bool:
        """Whether columns ``j`` and ``k`` differ by the all-twos vector, up to sign."""
        p = self.code_type
        shifted = self.columns[k] + Syndrome.twos(p.gamma, p.delta)
        return self.columns[j] in (shifted, -shifted)

    def solve_two_moves(
        self,
        d: Syndrome,
        forbidden: Collection[int | Move] = (),
        *,
        first: Move | None = None,
        allowed: Callable[[Move], bool] | None = None,
        distinct_symbols: bool = True,
    ) -> tuple[Move, Move]:
        """Two moves on distinct coordinates whose contributions add up to ``d``.

        ``forbidden`` may hold coordinate indices (every move on them is
        excluded) or individual moves.  ``first`` pins the first move of the
        pair.  ``allowed`` filters moves, e.g. those a cover block cannot
        realize.  With ``distinct_symbols`` the two moves must touch different
        grayscale symbols, since two flips on one symbol would need a step
        of two.

        Pairs of quaternary steps are preferred, complementary ones first,
        then pairs in ascending ``(coord, eps)`` order.
        """
        if not d:
            raise ParameterError("two-move search needs a nonzero syndrome")
        p = self.code_type

        def ok(mv: Move) -> bool:
            if mv.coord in forbidden or mv in forbidden:
                return False
            return allowed is None or allowed(mv)

        def compatible(a: Move, b: Move) -> bool:
            if a.coord == b.coord:
                return False
            return not distinct_symbols or p.symbol_of(a.coord)[0] != p.symbol_of(b.coord)[0]

        candidates = []
        if first is not None:
            if not ok(first):
                raise InfeasibleError(f"pinned move {first} is not allowed")
            mv = self.decode_delta(d - self.contribution(first))
            if mv is not None and ok(mv) and compatible(first, mv):
                candidates.append((first, mv))
        else:
            usable = [mv for mv in self.moves if ok(mv)]
            for i, a in enumerate(usable):
                mv = self.decode_delta(d - self.contribution(a))
                if mv is None or mv not in usable[i + 1 :] or not compatible(a, mv):
                    continue
                candidates.append((a, mv))
        if not candidates:
            raise InfeasibleError(f"no admissible pair of moves reaches {d}")

        def rank(pair: tuple[Move, Move]) -> tuple:
            a, b = pair
            n_flips = (a.kind == "flip") + (b.kind == "flip")
            comp = n_flips == 0 and self.is_complementary(a.coord, b.coord)
            return (n_flips, not comp)

        return min(candidates, key=rank)

    def dumps(self) -> str:
        """Plain-text serialization: header line then one matrix row per line."""
        p = self.code_type
        lines = [f"z2z4 m={p.m} delta={p.delta} alpha={p.alpha} beta={p.beta} gamma={p.gamma}"]
        lines += [" ".join(str(int(v)) for v in row) for row in self.matrix]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> Z2Z4ParityCheck:
        lines = [ln.split() for ln in text.strip().splitlines()]
        if not lines or lines[0][0] != "z2z4":
            raise ParameterError("missing z2z4 header line")
        try:
            header = dict(tok.split("=") for tok in lines[0][1:])
            p = CodeType(int(header["m"]), int(header["delta"]))
            rows = np.array([[int(v) for v in ln] for ln in lines[1:]], dtype=np.int64)
        except (KeyError, ValueError) as exc:
            raise ParameterError(f"malformed matrix text: {exc}") from exc
        if rows.shape != (p.gamma + p.delta, p.ncoords):
            raise ParameterError(f"matrix shape {rows.shape} does not match {p}")
        cols = [Syndrome(tuple(col[: p.gamma]), tuple(col[p.gamma :])) for col in rows.T.tolist()]
        return cls(p, cols)


def build_z2z4_check(
    params: CodeType, x1_column: Literal["smallest", "compensable"] = "smallest"
) -> Z2Z4ParityCheck:
    """Canonical parity-check matrix for ``params``.

    Binary columns come first in ascending mixed-radix order, then the
    sign-normalized order-four columns in ascending order.  Coordinate 0 is
    carried by the Gray LSB of the first symbol of a block.  With
    ``x1_column="smallest"`` it gets the smallest binary column.  With
    ``"compensable"`` it gets the smallest binary column that two quaternary
    +-1 steps on distinct coordinates can cancel, which the product scheme
    needs for cheap column compensation.  If there is no such column, the
    smallest one is used.
    """
    binary = _binary_columns(params.gamma, params.delta)
    quaternary = _quaternary_columns(params.gamma, params.delta)
    x1 = binary[0]
    if x1_column == "compensable":
        sums = set()
        for j, k in itertools.combinations(quaternary, 2):
            for ej, ek in itertools.product((1, 3), repeat=2):
                sums.add(j * ej + k * ek)
        x1 = next((h for h in binary if h in sums), binary[0])
    elif x1_column != "smallest":
        raise ParameterError(f"unknown x1_column policy {x1_column!r}")
    rest = [h for h in binary if h != x1]
    return Z2Z4ParityCheck(params, [x1, *rest, *quaternary])


def syndrome(H: Z2Z4ParityCheck, w: Z2Z4Vector) -> Syndrome:
    return H.syndrome(w)


def decode_delta(H: Z2Z4ParityCheck, d: Syndrome) -> Move | None:
    return H.decode_delta(d)


def solve_two_moves(H: Z2Z4ParityCheck, d: Syndrome, forbidden: Collection[int | Move] = (), **kw) -> tuple[Move, Move]:
    return H.solve_two_moves(d, forbidden, **kw)


# -- binary Hamming codes ---------------------------------------------------


@dataclass(frozen=True)
class BinaryCheck:
    """Parity check of the binary Hamming code; column ``i`` (1-based) reads ``i``."""

    m: int

    @property
    def n(self) -> int:
        return 2**self.m - 1

    @cached_property
    def matrix(self) -> np.ndarray:
        cols = np.arange(1, self.n + 1)
        shifts = np.arange(self.m - 1, -1, -1)[:, None]
        return ((cols[None, :] >> shifts) & 1).astype(np.uint8)

    def syndrome(self, bits: Sequence[int]) -> int:
        if len(bits) != self.n:
            raise ParameterError(f"expected {self.n} bits, got {len(bits)}")
        return reduce(xor, (i + 1 for i, b in enumerate(bits) if b), 0)


def build_hamming_check(m: int) -> BinaryCheck:
    if not isinstance(m, (int, np.integer)) or not 2 <= m <= 16:
        raise ParameterError(f"m must be an integer in [2, 16], got {m!r}")
    return BinaryCheck(int(m))


def kronecker(A, B) -> np.ndarray:
    """Kronecker product over GF(2)."""
    return (np.kron(np.asarray(A, dtype=np.int64) % 2, np.asarray(B, dtype=np.int64) % 2) % 2).astype(np.uint8)


def gf2_rref(M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2) and the pivot columns."""
    A = np.array(M, dtype=np.uint8) % 2
    pivots = []
    r = 0
    for c in range(A.shape[1]):
        hits = np.flatnonzero(A[r:, c])
        if hits.size == 0:
            continue
        p = r + hits[0]
        A[[r, p]] = A[[p, r]]
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        A[others] ^= A[r]
        pivots.append(c)
        r += 1
        if r == A.shape[0]:
            break
    return A[:r], pivots


def gf2_nullspace(M) -> np.ndarray:
    """Basis (as rows) of ``{x : M x = 0}`` over GF(2)."""
    M = np.atleast_2d(np.asarray(M, dtype=np.uint8) % 2)
    R, pivots = gf2_rref(M)
    n = M.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in zip(R, pivots):
            basis[i, pc] = row[f]
    return basis


def hamming_generator(m: int) -> np.ndarray:
    return gf2_nullspace(build_hamming_check(m).matrix)


def dual_product_check(m: int) -> np.ndarray:
    """Check matrix ``H (x) H`` of the code whose words have every row and column in the Hamming code."""
    H = build_hamming_check(m).matrix
    return kronecker(H, H)


def product_code_check(m: int) -> np.ndarray:
    """Check matrix of the product code generated by ``G (x) G``."""
    G = hamming_generator(m)
    return gf2_nullspace(kronecker(G, G))


def row_column_check(m: int) -> np.ndarray:
    """Check matrix of the code of ``n x n`` words whose rows and first column are Hamming codewords."""
    H = build_hamming_check(m).matrix
    n = H.shape[1]
    first = np.zeros((1, n), dtype=np.uint8)
    first[0, 0] = 1
    return np.vstack([kronecker(np.eye(n, dtype=np.uint8), H), kronecker(H, first)])


def covering_radius_bruteforce(check_matrix, max_length: int = 25, max_redundancy: int = 20) -> int:
    """Exact covering radius by breadth-first search over the syndrome space.

    The BFS depth at which a syndrome is first reached is its coset-leader
    weight; the covering radius is the largest such depth.
    """
    H = np.atleast_2d(np.asarray(check_matrix, dtype=np.int64) % 2)
    r, n = H.shape
    if n > max_length or r > max_redundancy:
        raise CapacityError(f"[{n}, {n}-{r}] code exceeds the exhaustive-search limits ({max_length}, {max_redundancy})")
    weights = 1 << np.arange(r - 1, -1, -1, dtype=np.int64)
    cols = sorted({int(v) for v in (H * weights[:, None]).sum(axis=0)} - {0})
    depth = {0: 0}
    queue = deque([0])
    radius = 0
    while queue:
        s = queue.popleft()
        for c in cols:
            t = s ^ c
            if t not in depth:
                depth[t] = depth[s] + 1
                radius = depth[t]
                queue.append(t)
    return radius
