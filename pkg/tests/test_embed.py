from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import block_syndrome, min_pm1_changes
from z2z4steg.codes import Syndrome, build_hamming_check, build_z2z4_check, z2z4_params
from z2z4steg.embed import (
    bits_to_int,
    f5_embed,
    f5_embed_symbols,
    f5_extract,
    f5_extract_symbols,
    int_to_bits,
    z2z4_embed,
    z2z4_extract,
)
from z2z4steg.exceptions import ParameterError
from z2z4steg.rates import z2z4_single_distortion, z2z4_single_exact_distortion

TYPES = [(2, 1), (3, 1), (4, 2), (3, 0), (4, 1)]
EDGE_VALUES = [0, 1, 2, 3, 126, 127, 128, 129, 252, 253, 254, 255]


def test_bit_codec():
    assert int_to_bits(5, 3) == [1, 0, 1]
    assert bits_to_int([1, 0, 1]) == 5
    assert all(bits_to_int(int_to_bits(v, 6)) == v for v in range(64))


def test_f5_examples():
    out = f5_embed([0] * 7, 5)
    assert list(np.flatnonzero(out)) == [4]
    assert list(f5_embed([1, 0, 0, 0, 0, 0, 0], 1)) == [1, 0, 0, 0, 0, 0, 0]
    assert f5_extract([0] * 7) == [0, 0, 0]
    assert f5_extract([0, 0, 1, 0, 0, 0, 0]) == [0, 1, 1]
    with pytest.raises(ParameterError):
        f5_embed([0] * 6, 1)
    with pytest.raises(ParameterError):
        f5_embed([0] * 7, 8)


@settings(max_examples=300)
@given(st.integers(2, 6), st.data())
def test_f5_round_trip(m, data):
    n = 2**m - 1
    row = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    msg = data.draw(st.lists(st.integers(0, 1), min_size=m, max_size=m))
    out = f5_embed(row, msg, build_hamming_check(m))
    assert f5_extract(out) == msg
    assert int(np.sum(out != np.array(row))) <= 1


@given(st.lists(st.integers(0, 255), min_size=7, max_size=7), st.lists(st.integers(0, 1), min_size=3, max_size=3))
def test_f5_symbols_change_by_one(block, msg):
    res = f5_embed_symbols(block, msg)
    assert f5_extract_symbols(res.stego) == msg
    assert res.change_count <= 1
    assert all(abs(d) == 1 for _, d in res.changes)
    assert 0 <= res.stego.min() and res.stego.max() <= 255


def test_z2z4_examples():
    H = build_z2z4_check(z2z4_params(2, 1))
    res = z2z4_embed([239, 100], [1, 1], H)
    assert list(res.stego) == [239, 99] and res.change_count == 1 and not res.extreme
    res = z2z4_embed([239, 0], [1, 1], H)
    assert list(res.stego) == [238, 1] and res.change_count == 2 and res.extreme
    assert z2z4_extract([239, 99], H) == [1, 1]
    res = z2z4_embed([10, 20], z2z4_extract([10, 20], H), H)
    assert res.change_count == 0


def test_z2z4_chunk_codec():
    assert Syndrome.from_bits([1, 1, 0], 1, 1) == Syndrome((1,), (2,))
    assert Syndrome((1,), (3,)).to_bits() == [1, 1, 1]


@settings(max_examples=400, deadline=None)
@given(st.sampled_from(TYPES), st.data())
def test_z2z4_embed_against_oracle(md, data):
    p = z2z4_params(*md)
    H = build_z2z4_check(p)
    block = data.draw(st.lists(st.sampled_from(EDGE_VALUES), min_size=p.N, max_size=p.N))
    msg = data.draw(st.lists(st.integers(0, 1), min_size=p.m, max_size=p.m))
    res = z2z4_embed(block, msg, H)
    y = [int(v) for v in res.stego]
    assert z2z4_extract(y, H) == msg
    assert all(0 <= v <= 255 for v in y)
    assert all(abs(a - b) <= 1 for a, b in zip(y, block))
    assert res.change_count == sum(a != b for a, b in zip(y, block))
    assert res.change_count <= 2
    if res.change_count == 2:
        assert res.extreme and y[0] != block[0]
    s = Syndrome.from_bits(msg, p.gamma, p.delta)
    target = (s.bin, s.quat)
    assert block_syndrome(H, y) == target
    if p.N <= 4:
        best = min_pm1_changes(H, block, target)
        assert res.change_count == best or (res.extreme and res.change_count == best + 1)


@given(st.lists(st.integers(0, 251), min_size=4, max_size=4), st.integers(0, 3))
def test_extraction_ignores_multiples_of_four(block, k):
    H = build_z2z4_check(z2z4_params(3, 1))
    bumped = list(block)
    bumped[k] += 4
    assert z2z4_extract(block, H) == z2z4_extract(bumped, H)


def test_carries_do_not_corrupt():
    H = build_z2z4_check(z2z4_params(3, 1))
    for base in (3, 4, 63, 64, 127, 128):
        for msg in itertools.product((0, 1), repeat=3):
            res = z2z4_embed([base] * 4, list(msg), H)
            assert z2z4_extract(res.stego, H) == list(msg)


def test_z2z4_embed_rejects_bad_blocks():
    H = build_z2z4_check(z2z4_params(3, 1))
    with pytest.raises(ParameterError):
        z2z4_embed([1, 2, 3], [0, 0, 0], H)
    with pytest.raises(ParameterError):
        z2z4_embed([1, 2, 3, 256], [0, 0, 0], H)


@pytest.mark.parametrize("m,B", [(2, 2), (2, 4), (2, 6), (3, 2), (3, 4)])
def test_exact_expected_distortion(m, B):
    """Exhaustive average over every cover and message equals the exact formula."""
    p = z2z4_params(m, 1)
    H = build_z2z4_check(p)
    total = count = 0
    for x in itertools.product(range(2**B), repeat=p.N):
        for s in itertools.product((0, 1), repeat=m):
            total += z2z4_embed(x, list(s), H, B).change_count
            count += 1
    D = Fraction(total, count * p.N)
    assert D == z2z4_single_exact_distortion(m, B)
    N = p.N
    # the closed form counts the extreme-value term twice
    assert z2z4_single_distortion(m, B) - D == Fraction(N - 1, 2**B * N * N)


def test_exact_and_closed_form_values():
    assert float(z2z4_single_distortion(3, 8)) == pytest.approx(0.2202148, abs=1e-7)
    assert float(z2z4_single_exact_distortion(3, 8)) == pytest.approx(0.2194824, abs=1e-7)
