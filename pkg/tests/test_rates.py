from __future__ import annotations

import csv
import io
import itertools
import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from z2z4steg.exceptions import ParameterError
from z2z4steg.rates import (
    CSV_HEADER,
    CIRatePoint,
    curve,
    direct_sum,
    entropy,
    normalized_rate,
    q_entropy,
    q_entropy_inv,
    scheme_ci,
    to_csv,
    to_json,
    value_at,
)


def bisect_inverse(y: float, q: int) -> float:
    """Independent oracle: plain bisection on the increasing branch."""
    lo, hi = 0.0, (q - 1) / q
    for _ in range(200):
        mid = (lo + hi) / 2
        if q_entropy(mid, q) < y:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def test_entropy_maxima():
    assert entropy(0) == entropy(1) == 0
    assert q_entropy(0.5, 2) == pytest.approx(1.0)
    assert q_entropy(2 / 3, 3) == pytest.approx(1.0)
    assert q_entropy_inv(1, 3) == pytest.approx(2 / 3, abs=1e-9)
    assert q_entropy_inv(0.5, 2) == pytest.approx(0.1100278, abs=1e-6)


@pytest.mark.parametrize("q", [2, 3])
def test_inverse_round_trip(q):
    for k in range(11):
        y = k / 10
        x = q_entropy_inv(y, q)
        assert q_entropy(x, q) == pytest.approx(y, abs=1e-10)
        if y < 1:  # bisection crawls on the flat maximum
            assert x == pytest.approx(bisect_inverse(y, q), abs=1e-9)
    assert q_entropy_inv(1.0, q) == (q - 1) / q


@given(st.floats(0, 1), st.sampled_from([2, 3, 4]))
def test_inverse_property(y, q):
    assert abs(q_entropy(q_entropy_inv(y, q), q) - y) <= 1e-12


@pytest.mark.parametrize("bad", [(-0.1, 2), (0.6, 2), (0.7, 3)])
def test_entropy_domain(bad):
    with pytest.raises(ParameterError):
        q_entropy(*bad)
    with pytest.raises(ParameterError):
        q_entropy_inv(1.5, 2)


def test_normalized_rate_spot_values():
    assert normalized_rate(7 / 46, 0.5, 2) == pytest.approx(0.72305, abs=1e-4)
    assert normalized_rate(0.2202148, 0.75, 3) == pytest.approx(0.669, abs=0.002)
    D = 0.2
    assert normalized_rate(D, math.log2(3) * q_entropy(D, 3), 3) == pytest.approx(1.0)
    with pytest.raises(ParameterError):
        normalized_rate(0, 0.5)
    with pytest.raises(ParameterError):
        normalized_rate(0.1, 1.2, 2)


def test_scheme_ci_examples():
    f5 = scheme_ci("f5", 3)
    assert (f5.D, f5.E, f5.q) == (1 / 8, 3 / 7, 2)
    z = scheme_ci("z2z4-single", 3, B=8)
    assert z.D == pytest.approx(0.2202148, abs=1e-7) and z.E == 0.75 and z.q == 3
    t = scheme_ci("ternary-hamming", t=2)
    assert t.D == pytest.approx(0.2222, abs=1e-4) and t.E == pytest.approx(0.7925, abs=1e-4)
    one, single = scheme_ci("z2z4-product", 3, level=1), scheme_ci("z2z4-single", 3)
    assert (one.D, one.E, one.q, one.e) == (single.D, single.E, single.q, single.e)
    with pytest.raises(ParameterError):
        scheme_ci("nope", 3)
    with pytest.raises(ParameterError):
        scheme_ci("f5", 1)


def test_ternary_hamming_matches_brute_force():
    # t = 2: 4 symbols, parity check columns (1,0),(0,1),(1,1),(1,2) over GF(3)
    cols = [(1, 0), (0, 1), (1, 1), (1, 2)]
    total = 0
    count = 0
    for x in itertools.product(range(3), repeat=4):
        for s in itertools.product(range(3), repeat=2):
            syn = tuple(sum(c[i] * v for c, v in zip(cols, x)) % 3 for i in range(2))
            d = tuple((a - b) % 3 for a, b in zip(s, syn))
            total += 0 if d == (0, 0) else 1
            count += 1
    assert scheme_ci("ternary-hamming", t=2).D == pytest.approx(total / count / 4)


def test_direct_sum():
    a, b = scheme_ci("f5", 3), scheme_ci("f5", 2)
    assert direct_sum(a, b, 1) == a and direct_sum(a, b, 0) == b
    mid = direct_sum(a, b, 0.5)
    assert (mid.D, mid.E) == pytest.approx((0.1875, 0.547619), abs=1e-6)
    assert mid.e == pytest.approx(normalized_rate(mid.D, mid.E, 2))
    Ds = [direct_sum(a, b, lam / 10).D for lam in range(10, -1, -1)]
    assert all(x < y for x, y in zip(Ds, Ds[1:]))
    with pytest.raises(ParameterError):
        direct_sum(a, scheme_ci("z2z4", 3), 0.5)


@pytest.mark.parametrize(
    "family,params,level",
    [
        ("f5", range(2, 10), 1),
        ("kp", range(2, 7), math.inf),
        ("kp", range(2, 7), 2),
        ("kp", range(2, 7), 3),
        ("z2z4-single", range(2, 8), 1),
        ("z2z4-product", range(2, 7), 2),
        ("z2z4-product", range(2, 7), math.inf),
        ("ternary-hamming", range(1, 6), 1),
    ],
)
def test_curves_respect_rate_bound(family, params, level):
    pts = curve(family, params, level=level)
    assert len(pts) == 1 + 65 * (len(params) - 1)
    assert all(p.e <= 1 + 1e-9 for p in pts)
    assert [p.D for p in pts] == sorted(p.D for p in pts)


def test_kp_anchors_descend_in_m():
    pts = [scheme_ci("kp", m, level=math.inf) for m in range(2, 7)]
    assert all(a.D > b.D for a, b in zip(pts, pts[1:]))


@pytest.mark.parametrize("level", [2, 3, math.inf])
def test_kp_dominates_f5(level):
    f5 = curve("f5", range(2, 12), samples=0)
    for m in range(3, 7):
        kp = scheme_ci("kp", m, level=level)
        assert value_at(f5, kp.D) < kp.e


@pytest.mark.parametrize("m", [4, 5, 6, 7])
def test_z2z4_single_beats_ternary_direct_sum(m):
    ternary = curve("ternary-hamming", range(1, 9), samples=0)
    z = scheme_ci("z2z4-single", m)
    assert value_at(ternary, z.D) < z.e


def test_ternary_anchor_beats_z2z4_near_it():
    # t = 2 sits at D = 0.2222, right next to the m = 3 single-block point
    ternary = curve("ternary-hamming", range(1, 9), samples=0)
    z = scheme_ci("z2z4-single", 3)
    assert value_at(ternary, z.D) > z.e


@pytest.mark.parametrize("level", [2, math.inf])
def test_product_dominates_single_block_curve(level):
    single = curve("z2z4-single", range(2, 12), samples=0)
    for m in range(3, 9):
        pr = scheme_ci("z2z4-product", m, level=level)
        assert value_at(single, pr.D) < pr.e


def test_product_improves_on_single_block():
    for m in range(3, 7):
        assert scheme_ci("z2z4-product", m, level=2).e > scheme_ci("z2z4-single", m).e


def test_exports():
    pts = curve("f5", [2, 3], samples=2)
    rows = list(csv.reader(io.StringIO(to_csv(pts))))
    assert tuple(rows[0]) == CSV_HEADER and len(rows) == 5
    assert float(rows[1][1]) == pts[0].D
    data = json.loads(to_json(pts))
    assert CIRatePoint(**data[0]) == pts[0]
