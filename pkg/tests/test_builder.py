import itertools
import math
import random
from collections import defaultdict

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypercube_cubicity.analysis import cmo_lower_bound
from hypercube_cubicity.builder import (
    CLASSWISE_MAX_D,
    PAIRWISE_MAX_D,
    NonAdjacencyClass,
    SeedSet,
    _class_blocks,
    attempt_rng,
    build_representation,
    check_property_P_classwise,
    check_property_P_pairwise,
    empirical_min_size,
    enumerate_classes,
    find_working_c,
    minimize_seed_set,
    sample_seed_set,
    seed_count,
    separates,
)
from hypercube_cubicity.core import CapacityError, canonical_orientation, nonadjacent_pairs
from hypercube_cubicity.intervals import Ix_adjacent, intersection_adjacent
from hypercube_cubicity.oracle import certify_upper_bound


def brute_classes(d):
    """Group non-adjacent pairs by (difference set, written pattern of the first vertex)."""
    groups = defaultdict(list)
    for a, b in itertools.combinations(range(1 << d), 2):
        m = a ^ b
        if m.bit_count() < 2:
            continue
        pa = "".join(str(a >> i & 1) for i in range(d) if m >> i & 1)
        pb = "".join(str(b >> i & 1) for i in range(d) if m >> i & 1)
        groups[(m, min(pa, pb))].append((a, b))
    return groups


# wider than the default grid so every small d finds a working c
EXT_GRID = [1.0 + 0.5 * k for k in range(23)]


def random_instance(rng, max_d=8, max_k=6):
    d = rng.randint(1, max_d)
    k = rng.randint(1, max_k)
    return SeedSet(d, tuple(rng.getrandbits(d) for _ in range(k)))


class TestSampling:
    def test_deterministic(self):
        a = sample_seed_set(4, 3, attempt_rng(7, 0), 7)
        b = sample_seed_set(4, 3, attempt_rng(7, 0), 7)
        assert a == b and len(a) == 3 and a.rng_seed == 7

    def test_singleton_and_empty(self):
        assert len(sample_seed_set(5, 1, attempt_rng(1, 0))) == 1
        with pytest.raises(ValueError):
            sample_seed_set(5, 0, attempt_rng(1, 0))

    def test_bit_frequencies(self):
        d = 12
        S = sample_seed_set(d, 100_000, attempt_rng(3, 0))
        arr = np.array(S.seeds)
        for i in range(d):
            freq = ((arr >> i) & 1).mean()
            assert 0.49 <= freq <= 0.51

    def test_duplicates_kept(self):
        S = sample_seed_set(2, 50, attempt_rng(0, 0))
        assert len(S) == 50 and S.duplicate_count >= 46


class TestSeparates:
    def test_examples(self):
        assert separates(0b00, 0b00, 0b11)
        assert not separates(0b00, 0b01, 0b10)
        u, v = 0b000, 0b111
        assert separates(v, u, v)  # n_u = 3, n_v = 0

    def test_adjacent_pair_rejected(self):
        with pytest.raises(ValueError):
            separates(0, 0b01, 0b11)


class TestPairwise:
    def test_h2_satisfied(self):
        r = check_property_P_pairwise(SeedSet(2, (0b00, 0b01)))
        assert r.satisfied and r.counterexample is None and r.checked == 2

    def test_h2_single_apex(self):
        r = check_property_P_pairwise(SeedSet(2, (0b00,)))
        assert not r.satisfied
        # written "01", "10": position-2 vertex first
        assert r.counterexample == (0b10, 0b01)

    def test_d1_vacuous(self):
        assert check_property_P_pairwise(SeedSet(1, (0,))).satisfied
        assert check_property_P_classwise(SeedSet(1, (1,))).satisfied

    def test_capacity_guard(self):
        with pytest.raises(CapacityError):
            check_property_P_pairwise(SeedSet(PAIRWISE_MAX_D + 1, (0,)))
        with pytest.raises(CapacityError):
            check_property_P_classwise(SeedSet(CLASSWISE_MAX_D + 1, (0,)))

    def test_first_counterexample_in_enumeration_order(self):
        rng = random.Random(11)
        for _ in range(30):
            S = random_instance(rng, max_d=6, max_k=3)
            unseparated = [p for p in nonadjacent_pairs(S.d) if intersection_adjacent(S.seeds, *p)]
            r = check_property_P_pairwise(S)
            if unseparated:
                assert r.counterexample == unseparated[0]
            else:
                assert r.satisfied


class TestClasses:
    def test_h3_counts(self):
        classes = list(enumerate_classes(3, 3))
        assert len(classes) == 10
        assert sum(c.distance == 2 for c in classes) == 6
        assert sum(c.distance == 3 for c in classes) == 4
        assert len(brute_classes(3)) == 10

    @pytest.mark.parametrize("d", range(2, 7))
    def test_per_distance_count_matches_brute_force(self, d):
        brute = brute_classes(d)
        for i in range(2, d + 1):
            ours = [c for c in enumerate_classes(d, i) if c.distance == i]
            assert len(ours) == math.comb(d, i) * 2 ** (i - 1)
            assert len(ours) == sum(1 for (m, _) in brute if m.bit_count() == i)

    @pytest.mark.parametrize("d", range(2, 7))
    def test_pairs_partitioned_by_classes(self, d):
        classes = set(enumerate_classes(d))
        assert len(classes) == len(brute_classes(d))
        hits = defaultdict(int)
        for u, v in nonadjacent_pairs(d):
            cls = NonAdjacencyClass.of_pair(u, v)
            assert cls in classes
            assert cls == NonAdjacencyClass.of_pair(v, u)
            hits[cls] += 1
        assert set(hits) == classes
        # every class has 2^(d - |D|) members
        assert all(hits[c] == 2 ** (d - c.distance) for c in classes)

    @pytest.mark.parametrize("d", range(2, 5))
    def test_members_behave_identically(self, d):
        groups = brute_classes(d)
        for pairs in groups.values():
            for x in range(1 << d):
                assert len({Ix_adjacent(x, u, v) for u, v in pairs}) == 1

    def test_representative_is_canonical(self):
        for c in enumerate_classes(5):
            u, v = c.representative()
            assert canonical_orientation(u, v) == (u, v)
            assert NonAdjacencyClass.of_pair(u, v) == c

    @pytest.mark.parametrize("d", range(2, 8))
    def test_vector_blocks_follow_enumeration_order(self, d):
        flat = []
        for i, masks, reps in _class_blocks(d, d):
            for r in range(reps.shape[0]):
                flat.extend((int(masks[r, 0]), int(x)) for x in reps[r])
        expected = [(c.positions, c.representative()[0]) for c in enumerate_classes(d)]
        assert flat == expected

    def test_bad_max_dist(self):
        with pytest.raises(ValueError):
            list(enumerate_classes(4, 1))
        with pytest.raises(ValueError):
            list(enumerate_classes(4, 5))

    @settings(max_examples=200, deadline=None)
    @given(st.integers(2, 10).flatmap(
        lambda d: st.tuples(st.just(d), st.integers(0, 2**d - 1), st.integers(0, 2**d - 1),
                            st.integers(0, d - 1))))
    def test_off_mask_bits_do_not_matter(self, args):
        d, seed, mask_seed, bit = args
        classes = list(enumerate_classes(d))
        cls = classes[mask_seed % len(classes)]
        if cls.positions >> bit & 1:
            return
        assert cls.separated_by(seed) == cls.separated_by(seed ^ 1 << bit)


class TestClasswise:
    def test_h2(self):
        r = check_property_P_classwise(SeedSet(2, (0b00, 0b01)))
        assert r.satisfied and r.checked == 2

    def test_counterexample_is_unseparated(self):
        rng = random.Random(4)
        for _ in range(50):
            S = random_instance(rng)
            for check in (check_property_P_classwise, check_property_P_pairwise):
                r = check(S)
                if not r.satisfied:
                    u, v = r.counterexample
                    assert all(Ix_adjacent(x, u, v) for x in S.seeds)
                    assert r.counterexample_class == NonAdjacencyClass.of_pair(u, v)

    def test_agrees_with_pairwise(self):
        rng = random.Random(8)
        outcomes = set()
        for _ in range(100):
            S = random_instance(rng)
            a = check_property_P_pairwise(S).satisfied
            b = check_property_P_classwise(S).satisfied
            assert a == b
            outcomes.add(a)
        assert outcomes == {True, False}

    def test_agrees_on_built_sets(self):
        for d in (9, 10):
            c, result = find_working_c(d, rng_seed=2, grid=EXT_GRID)
            assert result.success
            assert check_property_P_pairwise(result.seed_set).satisfied

    def test_max_dist_restriction(self):
        _, r = find_working_c(6, rng_seed=0, grid=EXT_GRID)
        full = check_property_P_classwise(r.seed_set)
        short = check_property_P_classwise(r.seed_set, max_dist=2)
        assert full.satisfied and short.satisfied
        assert short.checked == math.comb(6, 2) * 2 < full.checked


class TestBuild:
    def test_seed_count(self):
        assert seed_count(2, 2) == 4
        assert seed_count(16, 1) == 4
        assert seed_count(8, 1.5) == 4
        with pytest.raises(ValueError):
            seed_count(1, 2)
        with pytest.raises(ValueError):
            seed_count(4, 0)

    def test_d2(self):
        r = build_representation(2, 2.0, rng_seed=0)
        assert r.success and len(r.seed_set) == 4
        assert r.attempts == 2  # frozen from a run with rng_seed=0
        assert r.representation.dimension == 4

    def test_deterministic(self):
        a = build_representation(8, 3.0, rng_seed=1)
        b = build_representation(8, 3.0, rng_seed=1)
        assert a.seed_set == b.seed_set and a.attempts == b.attempts
        assert a.success == b.success

    def test_exhaustion_reports_class(self):
        r = build_representation(8, 1.0, rng_seed=1, max_restarts=3)
        assert not r.success and r.attempts == 3
        cls = r.last_counterexample
        assert cls is not None
        u, v = cls.representative()
        assert all(Ix_adjacent(x, u, v) for x in r.seed_set.seeds)

    @pytest.mark.parametrize("d", range(2, 11))
    def test_success_certifies_hypercube(self, d):
        c, r = find_working_c(d, rng_seed=d, grid=EXT_GRID)
        assert r.success
        cert = certify_upper_bound(r.seed_set)
        assert cert.ok
        rep = r.representation
        n = 1 << d
        sample = random.Random(d)
        for _ in range(2000):
            u, v = sample.sample(range(n), 2)
            assert rep.cubes_intersect(u, v) == ((u ^ v).bit_count() == 1)


class TestMinimize:
    def test_duplicates_removed(self):
        S = SeedSet(2, (0b00, 0b10, 0b00))
        M = minimize_seed_set(S)
        assert len(M) == 2 and M.duplicate_count == 0

    def test_four_apexes_on_c4(self):
        M = minimize_seed_set(SeedSet(2, (0b00, 0b10, 0b11, 0b01)))
        assert len(M) == 2
        assert check_property_P_pairwise(M).satisfied

    def test_idempotent_and_valid(self):
        for d in (5, 7, 9):
            _, r = find_working_c(d, rng_seed=3, grid=EXT_GRID)
            M = minimize_seed_set(r.seed_set)
            assert len(M) <= len(r.seed_set)
            assert check_property_P_pairwise(M).satisfied
            assert minimize_seed_set(M) == M
            # inclusion-minimal: every seed is needed
            for i in range(len(M)):
                rest = M.seeds[:i] + M.seeds[i + 1:]
                assert not rest or not check_property_P_classwise(SeedSet(d, rest)).satisfied

    def test_rejects_invalid_input(self):
        with pytest.raises(ValueError):
            minimize_seed_set(SeedSet(2, (0,)))


class TestEmpirical:
    def test_d2_floor(self):
        stats = empirical_min_size(2, rng_seed=0, trials=10)
        assert stats.min == 2 and all(s == 2 for s in stats.samples)

    def test_deterministic(self):
        assert empirical_min_size(6, 5, 4) == empirical_min_size(6, 5, 4)

    @pytest.mark.parametrize("d", range(4, 10))
    def test_between_floor_and_build_size(self, d):
        stats = empirical_min_size(d, rng_seed=1, trials=3)
        c, r = find_working_c(d, rng_seed=1, grid=EXT_GRID)
        assert math.ceil(cmo_lower_bound(d)) <= stats.min <= len(r.seed_set)


@pytest.mark.parametrize("d", range(2, 9))
def test_sets_below_lower_bound_fail(d):
    size = math.ceil(cmo_lower_bound(d)) - 1
    if size < 1:
        pytest.skip("floor is 1")
    rng = random.Random(d)
    for _ in range(30):
        S = SeedSet(d, tuple(rng.getrandbits(d) for _ in range(size)))
        assert not check_property_P_classwise(S).satisfied
