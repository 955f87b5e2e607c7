"""Monte-Carlo distortion estimates against the analytic bounds.

Each trial draws a uniform cover block and a uniform message, embeds, and
counts changed symbols.  Trials are grouped in chunks; chunk ``c`` draws
from its own Philox stream keyed by ``(seed, c)``, so the result does not
depend on how chunks are spread over worker processes.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .codes import build_z2z4_check, z2z4_params
from .embed import f5_embed_symbols, z2z4_embed
from .exceptions import ParameterError
from .product import (
    kp_distortion_bound,
    kp_embed_symbols,
    kp_message_bits,
    kp_rate,
    product_check,
    z2z4_product_bounds,
    z2z4_product_embed,
)
from .rates import z2z4_single_distortion

CHUNK = 1000
SCHEMES = ("f5", "z2z4", "kp", "z2z4-product")


@dataclass
class SimReport:
    scheme: str
    params: dict
    trials: int
    seed: int
    D_hat: float
    E: float
    stderr_D: float
    bound_D: float
    extreme_events: int
    verdict: str = field(init=False)

    def __post_init__(self) -> None:
        self.verdict = "pass" if self.D_hat <= self.bound_D + 3 * self.stderr_D else "fail"

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=1, sort_keys=True)


@dataclass(frozen=True)
class _Setup:
    scheme: str
    m: int
    delta: int
    level: int
    B: int
    optimize: bool

    @property
    def shape(self) -> tuple[int, int]:
        n, N = 2**self.m - 1, 2 ** (self.m - 1)
        return {
            "f5": (1, n),
            "z2z4": (1, N),
            "kp": (n ** (self.level - 1), n),
            "z2z4-product": (n, N),
        }[self.scheme]

    @property
    def message_bits(self) -> int:
        n = 2**self.m - 1
        if self.scheme == "kp":
            return kp_message_bits(self.m, self.level)
        if self.scheme == "z2z4-product":
            return (n + 1) * self.m
        return self.m

    def rate_and_bound(self) -> tuple[Fraction, Fraction]:
        n = 2**self.m - 1
        if self.scheme == "f5":
            return Fraction(self.m, n), Fraction(1, n + 1)
        if self.scheme == "z2z4":
            return Fraction(self.m, 2 ** (self.m - 1)), z2z4_single_distortion(self.m, self.B)
        if self.scheme == "kp":
            return kp_rate(self.m, self.level), kp_distortion_bound(self.m, self.level)
        D, E = z2z4_product_bounds(self.m, self.B, self.level)
        return E, D


def _setup(scheme: str, m: int, delta: int, level: int, B: int, optimize: bool) -> _Setup:
    if scheme not in SCHEMES:
        raise ParameterError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    if m < 2 or B % 2 or not 2 <= B <= 16:
        raise ParameterError(f"need m >= 2 and an even bit depth in [2, 16], got m={m}, B={B}")
    if scheme in ("z2z4", "z2z4-product"):
        z2z4_params(m, delta)
    if scheme == "kp" and level < 1:
        raise ParameterError(f"level must be >= 1, got {level}")
    if scheme == "z2z4-product" and level != 2:
        raise ParameterError("z2z4-product embedding is implemented for level 2 only")
    return _Setup(scheme, m, delta, level if scheme in ("kp", "z2z4-product") else 1, B, optimize)


def _run_chunk(args: tuple[_Setup, int, int, int]) -> tuple[int, int, int]:
    """Sum of changes, sum of squared changes and extreme events for one chunk."""
    s, seed, chunk, count = args
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))
    if s.scheme == "z2z4":
        embed = _z2z4_single(s)
    elif s.scheme == "z2z4-product":
        H = product_check(s.m, s.delta)

        def embed(x, msg):
            return z2z4_product_embed(x, msg, H, s.B, s.optimize)

    elif s.scheme == "kp":

        def embed(x, msg):
            return kp_embed_symbols(x, msg, s.m, s.level, s.optimize)

    else:

        def embed(x, msg):
            return f5_embed_symbols(x, msg)

    tot = sq = ext = 0
    for _ in range(count):
        x = rng.integers(0, 2**s.B, size=s.shape, dtype=np.int64)
        msg = rng.integers(0, 2, size=s.message_bits).tolist()
        res = embed(x if s.shape[0] > 1 else x[0], msg)
        c = res.change_count
        tot += c
        sq += c * c
        ext += int(res.extreme)
    return tot, sq, ext


def _z2z4_single(s: _Setup):
    H = build_z2z4_check(z2z4_params(s.m, s.delta))

    def embed(x, msg):
        return z2z4_embed(x, msg, H, s.B)

    return embed


def simulate(
    scheme: str,
    m: int,
    trials: int,
    seed: int,
    *,
    delta: int = 1,
    level: int = 2,
    B: int = 8,
    optimize: bool = True,
    workers: int = 1,
) -> SimReport:
    """Estimate changes per symbol over ``trials`` random blocks."""
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    s = _setup(scheme, m, delta, level, B, optimize)
    jobs = [(s, seed, c, min(CHUNK, trials - c * CHUNK)) for c in range(math.ceil(trials / CHUNK))]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_run_chunk, jobs))
    else:
        parts = [_run_chunk(j) for j in jobs]
    tot = sum(p[0] for p in parts)
    sq = sum(p[1] for p in parts)
    ext = sum(p[2] for p in parts)

    size = s.shape[0] * s.shape[1]
    mean = tot / trials
    var = (sq - trials * mean * mean) / (trials - 1) if trials > 1 else 0.0
    E, bound = s.rate_and_bound()
    params = {"m": m, "B": B}
    if scheme in ("z2z4", "z2z4-product"):
        params["delta"] = delta
    if scheme in ("kp", "z2z4-product"):
        params["level"] = s.level
        params["optimize"] = optimize
    return SimReport(
        scheme=scheme,
        params=params,
        trials=trials,
        seed=seed,
        D_hat=mean / size,
        E=float(E),
        stderr_D=math.sqrt(max(var, 0.0) / trials) / size,
        bound_D=float(bound),
        extreme_events=ext,
    )
