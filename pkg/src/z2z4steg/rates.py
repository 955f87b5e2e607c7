"""Entropy helpers, CI-rates of every scheme and normalized-rate curves.

A CI-rate is the pair ``(D, E)``: expected changes per symbol and message
bits per symbol.  The normalized rate ``e = H_q^{-1}(E / log2 q) / D`` is at
most 1, with ``q = 2`` for LSB schemes and ``q = 3`` for +-1 schemes.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from scipy.optimize import brentq

from .exceptions import ParameterError
from .product import kp_distortion_bound, kp_rate, z2z4_product_bounds

SCHEMES = ("f5", "ternary-hamming", "z2z4-single", "kp", "z2z4-product")
_ALIASES = {"z2z4": "z2z4-single", "ternary": "ternary-hamming"}
CSV_HEADER = ("label", "D", "E_bits", "q", "e")


def entropy(x: float) -> float:
    """Binary entropy in bits, with ``H(0) = H(1) = 0``."""
    if not 0 <= x <= 1:
        raise ParameterError(f"entropy argument {x} outside [0, 1]")
    if x in (0, 1):
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def q_entropy(x: float, q: int = 2) -> float:
    """``(H(x) + x log2(q-1)) / log2 q`` on ``[0, (q-1)/q]``; 1 at the right end."""
    if q < 2:
        raise ParameterError(f"alphabet size must be >= 2, got {q}")
    top = (q - 1) / q
    if not 0 <= x <= top + 1e-15:
        raise ParameterError(f"q-ary entropy argument {x} outside [0, {top}]")
    return (entropy(min(x, top)) + x * math.log2(q - 1)) / math.log2(q)


def q_entropy_inv(y: float, q: int = 2) -> float:
    """Inverse of ``q_entropy`` on its increasing branch."""
    if not 0 <= y <= 1:
        raise ParameterError(f"q-ary entropy value {y} outside [0, 1]")
    top = (q - 1) / q
    if y == 0:
        return 0.0
    if y == 1:
        return top
    return brentq(lambda x: q_entropy(x, q) - y, 0.0, top, xtol=1e-16, rtol=4 * 2.0**-52, maxiter=200)


def normalized_rate(D: float, E_bits: float, q: int = 2) -> float:
    if D <= 0:
        raise ParameterError(f"distortion must be positive, got {D}")
    y = E_bits / math.log2(q)
    if not 0 <= y <= 1 + 1e-12:
        raise ParameterError(f"rate {E_bits} bits exceeds log2({q})")
    return q_entropy_inv(min(y, 1.0), q) / D


@dataclass(frozen=True)
class CIRatePoint:
    D: float
    E: float
    q: int
    e: float
    label: str

    @classmethod
    def make(cls, D, E, q: int, label: str) -> CIRatePoint:
        D, E = float(D), float(E)
        return cls(D, E, q, normalized_rate(D, E, q), label)


def _level_label(level) -> str:
    return "inf" if level == math.inf else str(level)


def z2z4_single_distortion(m: int, B: int = 8) -> Fraction:
    """Expected changes per symbol of single-block +-1 embedding, as the closed form states it."""
    N = 2 ** (m - 1)
    return (2 * N - 1 + Fraction(N - 1, 2 ** (B - 2))) / (2 * N * N)


def z2z4_single_exact_distortion(m: int, B: int = 8) -> Fraction:
    """True expectation over uniform covers and messages.

    A blocked step needs the extreme value and the wrong direction, which
    happens with probability ``1 / 2**B`` per changed symbol, not ``2 / 2**B``,
    so the extreme-value term is half the one in the closed form above.
    """
    N = 2 ** (m - 1)
    return (2 * N - 1 + Fraction(N - 1, 2 ** (B - 1))) / (2 * N * N)


def ternary_hamming_ci(t: int) -> tuple[Fraction, float]:
    """Ternary Hamming matrix encoding: ``t log2 3`` bits in ``(3**t - 1)/2`` symbols."""
    if t < 1:
        raise ParameterError(f"t must be >= 1, got {t}")
    n = (3**t - 1) // 2
    return (1 - Fraction(1, 3**t)) / n, t * math.log2(3) / n


def scheme_ci(scheme: str, m: int | None = None, *, t: int | None = None, B: int = 8, level=1) -> CIRatePoint:
    """Exact CI-rate of a scheme, with ``e`` filled in.

    ``f5`` and ``kp`` are LSB schemes (``q = 2``); the rest are +-1 schemes
    (``q = 3``).
    """
    scheme = _ALIASES.get(scheme, scheme)
    if scheme == "ternary-hamming":
        D, E = ternary_hamming_ci(t if t is not None else m)
        return CIRatePoint.make(D, E, 3, f"ternary-hamming(t={t if t is not None else m})")
    if m is None or m < 2:
        raise ParameterError(f"scheme {scheme} needs m >= 2")
    n = 2**m - 1
    if scheme == "f5":
        return CIRatePoint.make(Fraction(1, n + 1), Fraction(m, n), 2, f"f5(m={m})")
    if scheme == "z2z4-single":
        return CIRatePoint.make(z2z4_single_distortion(m, B), Fraction(m, 2 ** (m - 1)), 3, f"z2z4-single(m={m},B={B})")
    if scheme == "kp":
        return CIRatePoint.make(kp_distortion_bound(m, level), kp_rate(m, level), 2, f"kp(m={m},l={_level_label(level)})")
    if scheme == "z2z4-product":
        D, E = z2z4_product_bounds(m, B, level)
        return CIRatePoint.make(D, E, 3, f"z2z4-product(m={m},B={B},l={_level_label(level)})")
    raise ParameterError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")


def direct_sum(p1: CIRatePoint, p2: CIRatePoint, lam: float) -> CIRatePoint:
    """Time-share two codes: ``lam`` of the symbols use ``p1``, the rest ``p2``."""
    if p1.q != p2.q:
        raise ParameterError(f"cannot mix alphabets q={p1.q} and q={p2.q}")
    if not 0 <= lam <= 1:
        raise ParameterError(f"lambda must lie in [0, 1], got {lam}")
    if lam == 1:
        return p1
    if lam == 0:
        return p2
    D = lam * p1.D + (1 - lam) * p2.D
    E = lam * p1.E + (1 - lam) * p2.E
    return CIRatePoint.make(D, E, p1.q, f"{p1.label}+{p2.label}@{lam:.6g}")


def anchors(family: str, params: Iterable[int], *, B: int = 8, level=1) -> list[CIRatePoint]:
    family = _ALIASES.get(family, family)
    if family == "ternary-hamming":
        pts = [scheme_ci(family, t=t) for t in params]
    else:
        pts = [scheme_ci(family, m, B=B, level=level) for m in params]
    if not pts:
        raise ParameterError("empty parameter range")
    return sorted(pts, key=lambda p: p.D)


def curve(family: str, params: Iterable[int], *, B: int = 8, level=1, samples: int = 64) -> list[CIRatePoint]:
    """Anchors sorted by ``D`` with ``samples`` direct-sum points inside each gap."""
    pts = anchors(family, params, B=B, level=level)
    out = [pts[0]]
    for a, b in zip(pts, pts[1:]):
        for k in range(1, samples + 1):
            lam = 1 - k / (samples + 1)
            out.append(direct_sum(a, b, lam))
        out.append(b)
    return out


def value_at(points: Sequence[CIRatePoint], D: float) -> float | None:
    """Normalized rate of the direct-sum curve through ``points`` at distortion ``D``."""
    pts = sorted(points, key=lambda p: p.D)
    for a, b in zip(pts, pts[1:]):
        if a.D <= D <= b.D and a.D < b.D:
            lam = (b.D - D) / (b.D - a.D)
            return direct_sum(a, b, lam).e
    for p in pts:
        if p.D == D:
            return p.e
    return None


def to_csv(points: Sequence[CIRatePoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for p in points:
        w.writerow([p.label, repr(p.D), repr(p.E), p.q, repr(p.e)])
    return buf.getvalue()


def to_json(points: Sequence[CIRatePoint]) -> str:
    return json.dumps([asdict(p) for p in points], indent=1)
