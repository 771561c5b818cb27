"""Enumeration of maximal Schreier sets against exhaustive generation."""

import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wbslab.errors import InvalidInputError
from wbslab.schreier import (
    CanonicalEnumeration,
    ReversedGradeEnumeration,
    SchreierSet,
    count_max_at_most,
    get_enumeration,
    is_maximal_schreier,
)

from oracles import brute_force_schreier, brute_force_schreier_alt

CANONICAL = get_enumeration("canonical")
ALT = get_enumeration("alt")


class TestMembership:
    def test_singleton_one(self):
        assert is_maximal_schreier({1})

    def test_direct_check(self):
        assert is_maximal_schreier({2, 3})
        assert not is_maximal_schreier({2, 3, 4})

    def test_empty_excluded(self):
        assert not is_maximal_schreier(set())

    def test_nonpositive_rejected(self):
        with pytest.raises(InvalidInputError):
            is_maximal_schreier({0, 1})
        with pytest.raises(InvalidInputError):
            is_maximal_schreier({-3})

    def test_type_invariants(self):
        with pytest.raises(InvalidInputError):
            SchreierSet(())
        with pytest.raises(InvalidInputError):
            SchreierSet((3, 2, 1))
        with pytest.raises(InvalidInputError):
            SchreierSet((2, 3, 4))


class TestCanonicalOrder:
    # frozen from the exhaustive generation below
    FIRST_THIRTEEN = [
        (1,), (2, 3), (2, 4), (2, 5), (3, 4, 5), (2, 6), (3, 4, 6),
        (3, 5, 6), (2, 7), (3, 4, 7), (3, 5, 7), (3, 6, 7), (4, 5, 6, 7),
    ]

    def test_first_ranks(self):
        for rank, expected in enumerate(self.FIRST_THIRTEEN, start=1):
            assert CANONICAL.unrank(rank).elements == expected

    def test_rank_examples(self):
        assert CANONICAL.rank_of(SchreierSet((1,))) == 1
        assert CANONICAL.rank_of(SchreierSet((3, 4, 5))) == 5

    def test_matches_brute_force(self):
        expected = brute_force_schreier(15)
        for i, elems in enumerate(expected):
            assert CANONICAL.unrank(i + 1).elements == elems
            assert CANONICAL.rank_of(SchreierSet(elems)) == i + 1

    def test_monotone_in_order_key(self):
        previous = CANONICAL.unrank(1)
        for rank in range(2, 3000):
            current = CANONICAL.unrank(rank)
            assert previous.order_key() < current.order_key()
            previous = current

    def test_unrank_outputs_are_members(self):
        for rank in range(1, 500):
            assert is_maximal_schreier(CANONICAL.unrank(rank).elements)

    def test_rank_zero_rejected(self):
        with pytest.raises(InvalidInputError):
            CANONICAL.unrank(0)


class TestRoundTrip:
    def test_small_ranks(self):
        for rank in range(1, 5001):
            assert CANONICAL.rank_of(CANONICAL.unrank(rank)) == rank

    def test_random_big_ranks(self):
        rng = random.Random(90125)
        for _ in range(100):
            rank = rng.randrange(10**6, 10**30)
            assert CANONICAL.rank_of(CANONICAL.unrank(rank)) == rank

    def test_huge_sparse_set(self):
        s = SchreierSet((2, 10**6))
        assert CANONICAL.unrank(CANONICAL.rank_of(s)) == s

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_random_sets_round_trip(self, data):
        m = data.draw(st.integers(min_value=1, max_value=8))
        tail = data.draw(
            st.lists(
                st.integers(min_value=m + 1, max_value=m + 40),
                min_size=m - 1,
                max_size=m - 1,
                unique=True,
            )
        )
        s = SchreierSet((m, *sorted(tail)))
        assert CANONICAL.unrank(CANONICAL.rank_of(s)) == s
        assert ALT.unrank(ALT.rank_of(s)) == s


class TestCounts:
    def test_small_values(self):
        assert [count_max_at_most(n) for n in range(1, 6)] == [1, 1, 2, 3, 5]

    def test_matches_brute_force(self):
        for n in range(1, 16):
            assert count_max_at_most(n) == len(brute_force_schreier(n))

    def test_matches_binomial_sum(self):
        for n in range(1, 200):
            assert count_max_at_most(n) == sum(
                comb(n - m, m - 1) for m in range(1, n + 1)
            )

    def test_fibonacci_recurrence(self):
        for n in range(3, 501):
            assert count_max_at_most(n) == count_max_at_most(n - 1) + count_max_at_most(n - 2)

    def test_invalid(self):
        with pytest.raises(InvalidInputError):
            count_max_at_most(0)


class TestAlternativeEnumeration:
    def test_is_a_bijection_on_prefix(self):
        expected = brute_force_schreier_alt(15)
        for i, elems in enumerate(expected):
            assert ALT.unrank(i + 1).elements == elems
            assert ALT.rank_of(SchreierSet(elems)) == i + 1

    def test_differs_from_canonical(self):
        assert ALT.rank_of(SchreierSet((3, 4, 5))) == 4
        assert CANONICAL.rank_of(SchreierSet((3, 4, 5))) == 5

    def test_registry(self):
        assert isinstance(get_enumeration("canonical"), CanonicalEnumeration)
        assert isinstance(get_enumeration("alt"), ReversedGradeEnumeration)
        with pytest.raises(InvalidInputError):
            get_enumeration("nope")
