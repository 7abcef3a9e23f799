import itertools
import random

import pytest
from hypothesis import given, strategies as st

from hypercube_cubicity.core import (
    canonical_orientation,
    deposit_bits,
    diff_positions,
    extract_bits,
    from_bitstring,
    hamming_distance,
    is_adjacent,
    lex_key,
    nonadjacent_pair_count,
    nonadjacent_pairs,
    pattern_string,
    to_bitstring,
    u_bit_count,
)

from conftest import brute_nonadjacent


def test_diff_positions():
    assert diff_positions(0b0000, 0b0000) == 0
    assert diff_positions(0b0101, 0b0110) == 0b0011
    assert diff_positions(0, 2**7 - 1) == 2**7 - 1


def test_hamming_distance():
    assert hamming_distance(0b0101, 0b0110) == 2
    assert hamming_distance(13, 13) == 0
    assert hamming_distance(0, 2**10 - 1) == 10


def test_is_adjacent():
    assert is_adjacent(0b000, 0b001)
    assert not is_adjacent(0b000, 0b011)
    assert not is_adjacent(5, 5)


def test_u_bit_count_examples():
    assert u_bit_count(0b0100, 0b0000, 0b0110) == 1
    assert u_bit_count(0b0100, 0b0110, 0b0000) == 1
    u, v = 0b1010, 0b0111
    assert u_bit_count(u, u, v) == 0
    assert u_bit_count(v, u, v) == hamming_distance(u, v)


def test_canonical_orientation_examples():
    assert canonical_orientation(0b01, 0b10) == (0b10, 0b01)
    assert canonical_orientation(0b0, 0b1) == (0b0, 0b1)
    with pytest.raises(ValueError):
        canonical_orientation(3, 3)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_orientation_matches_string_comparison(d):
    for u, v in itertools.permutations(range(1 << d), 2):
        m = u ^ v
        su, sv = pattern_string(u, m), pattern_string(v, m)
        expected = (u, v) if su < sv else (v, u)
        assert canonical_orientation(u, v) == expected
        # integer rule: extracted bits with position 1 as most significant digit
        w = m.bit_count()
        assert (lex_key(extract_bits(u, m), w) < lex_key(extract_bits(v, m), w)) == (su < sv)


def test_nonadjacent_pairs_small():
    assert list(nonadjacent_pairs(1)) == []
    assert {frozenset(p) for p in nonadjacent_pairs(2)} == {frozenset((0, 3)), frozenset((1, 2))}
    assert len(list(nonadjacent_pairs(3))) == len(brute_nonadjacent(3)) == 16


@pytest.mark.parametrize("d", range(1, 13))
def test_nonadjacent_pair_count(d):
    expected = 2 ** (d - 1) * (2**d - 1) - d * 2 ** (d - 1)
    if d <= 9:
        assert sum(1 for _ in nonadjacent_pairs(d)) == expected
    assert nonadjacent_pair_count(d) == expected


@pytest.mark.parametrize("d", [3, 4, 5])
def test_nonadjacent_pairs_order_and_orientation(d):
    pairs = list(nonadjacent_pairs(d))
    keys = [(min(p), max(p)) for p in pairs]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)
    assert all(canonical_orientation(*p) == p for p in pairs)
    brute = {frozenset(from_bitstring(s) for s in p) for p in brute_nonadjacent(d)}
    assert {frozenset(p) for p in pairs} == brute


@pytest.mark.parametrize("d", range(1, 7))
def test_bit_count_identities_exhaustive(d):
    n = 1 << d
    for x, u, v in itertools.product(range(n), repeat=3):
        nu, nv = u_bit_count(x, u, v), u_bit_count(x, v, u)
        assert hamming_distance(u, v) == nu + nv
        assert abs(hamming_distance(x, u) - hamming_distance(x, v)) == abs(nu - nv)


def test_bit_count_identities_random_d20():
    rng = random.Random(20)
    for _ in range(100_000):
        x, u, v = (rng.getrandbits(20) for _ in range(3))
        nu, nv = u_bit_count(x, u, v), u_bit_count(x, v, u)
        assert hamming_distance(u, v) == nu + nv
        assert abs(hamming_distance(x, u) - hamming_distance(x, v)) == abs(nu - nv)


@given(st.integers(0, 2**16 - 1), st.integers(0, 2**16 - 1))
def test_orientation_symmetric_and_idempotent(u, v):
    if u == v:
        return
    a = canonical_orientation(u, v)
    assert a == canonical_orientation(v, u)
    assert canonical_orientation(*a) == a


@given(st.integers(0, 2**12 - 1), st.integers(0, 2**12 - 1))
def test_extract_deposit_roundtrip(v, mask):
    p = extract_bits(v, mask)
    assert deposit_bits(p, mask) == v & mask
    assert extract_bits(deposit_bits(p, mask), mask) == p


@given(st.integers(1, 30).flatmap(lambda d: st.tuples(st.just(d), st.integers(0, 2**d - 1))))
def test_bitstring_roundtrip(dv):
    d, v = dv
    s = to_bitstring(v, d)
    assert len(s) == d and from_bitstring(s) == v


def test_bitstring_position_one_is_leftmost():
    assert to_bitstring(0b001, 3) == "100"
    assert from_bitstring("01") == 0b10
