"""Maximal Schreier sets and computable enumerations of their family.

A maximal Schreier set is a nonempty finite set A of positive integers
with ``|A| = min(A)``.  The family of all such sets is countable; this
module fixes a canonical bijection with the positive integers (and one
alternative, used to confirm that downstream certificates do not depend
on the enumeration choice).

Canonical order: sets are graded by their maximum, ascending; inside a
grade they are sorted lexicographically as increasing tuples.  Each grade
is finite, the grade sizes follow the Fibonacci recurrence, and both
ranking and unranking run in time polynomial in ``max(A)``.  Ranks grow
like ``phi**max(A)`` and are therefore plain Python integers, never
fixed-width.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator

from .errors import InvalidInputError

__all__ = [
    "SchreierSet",
    "is_maximal_schreier",
    "count_max_at_most",
    "CanonicalEnumeration",
    "ReversedGradeEnumeration",
    "get_enumeration",
    "ENUMERATION_NAMES",
]


@dataclass(frozen=True)
class SchreierSet:
    """A maximal Schreier set, stored as a strictly increasing tuple."""

    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(int(e) for e in self.elements)
        object.__setattr__(self, "elements", elems)
        if not elems:
            raise InvalidInputError("a maximal Schreier set is nonempty")
        if any(e < 1 for e in elems):
            raise InvalidInputError(f"elements must be positive integers: {elems}")
        if any(a >= b for a, b in zip(elems, elems[1:])):
            raise InvalidInputError(f"elements must be strictly increasing: {elems}")
        if len(elems) != elems[0]:
            raise InvalidInputError(
                f"cardinality {len(elems)} != minimum {elems[0]}: not maximal Schreier"
            )

    @classmethod
    def from_iterable(cls, values: Iterable[int]) -> "SchreierSet":
        return cls(tuple(sorted(set(int(v) for v in values))))

    @property
    def minimum(self) -> int:
        return self.elements[0]

    @property
    def maximum(self) -> int:
        return self.elements[-1]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, k: int) -> bool:
        return k in self.elements

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def order_key(self) -> tuple[int, tuple[int, ...]]:
        """Sort key realizing the canonical (grade, lex) order."""
        return (self.maximum, self.elements)

    def to_json(self) -> list[int]:
        return list(self.elements)


def is_maximal_schreier(candidate: Iterable[int]) -> bool:
    """True iff the candidate is nonempty and its size equals its minimum.

    Raises InvalidInputError when any element is not a positive integer;
    an empty candidate is simply not a member of the family.
    """
    values = sorted(set(int(v) for v in candidate))
    if any(v < 1 for v in values):
        raise InvalidInputError(f"elements must be positive integers: {values}")
    if not values:
        return False
    return len(values) == values[0]


def _fib_pair(n: int) -> tuple[int, int]:
    """(F(n), F(n+1)) by fast doubling, with F(0)=0, F(1)=1."""
    if n == 0:
        return (0, 1)
    a, b = _fib_pair(n >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    if n & 1:
        return (d, c + d)
    return (c, d)


@lru_cache(maxsize=4096)
def count_max_at_most(n: int) -> int:
    """Number of maximal Schreier sets whose maximum is at most n.

    Equals ``sum(comb(n - m, m - 1) for m in 1..n)``, which satisfies the
    Fibonacci recurrence; computed via fast doubling so that ranking stays
    cheap even when n is large.
    """
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    return _fib_pair(int(n))[0]


def count_with_max(n: int) -> int:
    """Number of maximal Schreier sets whose maximum is exactly n."""
    if n == 1:
        return 1
    return count_max_at_most(n) - count_max_at_most(n - 1)


def _comb_lex_rank(lo: int, hi: int, chosen: tuple[int, ...]) -> int:
    """0-based lex rank of a sorted subset of the interval [lo, hi].

    Uses the hockey-stick identity to charge each gap between chosen
    elements with two binomials instead of one per skipped value.
    """
    rank = 0
    k = len(chosen)
    prev = lo - 1
    for idx, c in enumerate(chosen):
        j = k - idx - 1
        a, b = prev + 1, c - 1
        if a <= b:
            rank += comb(hi - a + 1, j + 1) - comb(hi - b, j + 1)
        prev = c
    return rank


def _comb_lex_unrank(lo: int, hi: int, k: int, index: int) -> tuple[int, ...]:
    """Inverse of _comb_lex_rank."""
    out = []
    v = lo
    while k > 0:
        if v > hi:
            raise InvalidInputError("combination index out of range")
        block = comb(hi - v, k - 1)
        if index < block:
            out.append(v)
            k -= 1
        else:
            index -= block
        v += 1
    return tuple(out)


def _grade_of_rank(rank: int) -> int:
    """Smallest n with count_max_at_most(n) >= rank."""
    hi = 2
    while count_max_at_most(hi) < rank:
        hi *= 2
    lo = hi // 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if count_max_at_most(mid) < rank:
            lo = mid
        else:
            hi = mid
    return hi if count_max_at_most(lo) < rank else lo


def _max_min_in_grade(n: int) -> int:
    # a set {m, ..., n} with min m needs m - 2 elements strictly between
    return (n + 1) // 2


def _rank_in_grade(s: SchreierSet) -> int:
    """0-based position of s among sets sharing its maximum, in lex order."""
    n = s.maximum
    if n == 1:
        return 0
    m = s.minimum
    prior = sum(comb(n - 1 - mm, mm - 2) for mm in range(2, m))
    middle = s.elements[1:-1]
    return prior + _comb_lex_rank(m + 1, n - 1, middle)


def _unrank_in_grade(n: int, index: int) -> SchreierSet:
    if n == 1:
        if index != 0:
            raise InvalidInputError("grade 1 holds a single set")
        return SchreierSet((1,))
    for m in range(2, _max_min_in_grade(n) + 1):
        block = comb(n - 1 - m, m - 2)
        if index < block:
            middle = _comb_lex_unrank(m + 1, n - 1, m - 2, index)
            return SchreierSet((m,) + middle + (n,))
        index -= block
    raise InvalidInputError(f"index exceeds grade {n}")


class CanonicalEnumeration:
    """Grade by maximum ascending, lexicographic inside each grade."""

    name = "canonical"

    def unrank(self, rank: int) -> SchreierSet:
        """The rank-th maximal Schreier set (1-based)."""
        rank = int(rank)
        if rank < 1:
            raise InvalidInputError(f"rank must be >= 1, got {rank}")
        n = _grade_of_rank(rank)
        within = rank - 1 if n == 1 else rank - count_max_at_most(n - 1) - 1
        return self._unrank_in_grade(n, within)

    def rank_of(self, s: SchreierSet) -> int:
        """1-based position of s in this enumeration; inverse of unrank."""
        n = s.maximum
        below = 0 if n == 1 else count_max_at_most(n - 1)
        return below + self._rank_in_grade(s) + 1

    # grade-local pieces, overridden by the alternative order below
    def _rank_in_grade(self, s: SchreierSet) -> int:
        return _rank_in_grade(s)

    def _unrank_in_grade(self, n: int, index: int) -> SchreierSet:
        return _unrank_in_grade(n, index)


class ReversedGradeEnumeration(CanonicalEnumeration):
    """Same grading by maximum, but each grade is walked in reverse.

    Any bijection with the positive integers is admissible; keeping the
    grades but flipping their interior order is the cheapest genuinely
    different choice, and it relocates every witness coordinate in grades
    with more than one set.
    """

    name = "alt"

    def _rank_in_grade(self, s: SchreierSet) -> int:
        return count_with_max(s.maximum) - 1 - _rank_in_grade(s)

    def _unrank_in_grade(self, n: int, index: int) -> SchreierSet:
        return _unrank_in_grade(n, count_with_max(n) - 1 - index)


_ENUMERATIONS = {
    "canonical": CanonicalEnumeration(),
    "alt": ReversedGradeEnumeration(),
}

ENUMERATION_NAMES = tuple(_ENUMERATIONS)


def get_enumeration(name: str) -> CanonicalEnumeration:
    try:
        return _ENUMERATIONS[name]
    except KeyError:
        raise InvalidInputError(
            f"unknown enumeration {name!r}; choose from {ENUMERATION_NAMES}"
        ) from None
