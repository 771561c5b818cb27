"""The 0/1 sequence indexed by maximal Schreier sets and its certificates.

Fixing an enumeration T of the maximal Schreier sets defines a sequence
of bounded functions ``u_k(i) = 1 if k in T(i) else 0``.  Each coordinate
is eventually zero (every T(i) is finite), yet no subsequence has Cesaro
means converging to zero in the sup norm: for every strictly increasing
index sequence and every N there is an explicit witness coordinate where
the mean of the first 2N terms is at least 1/2.  This module computes
those witnesses exactly.

Two caveats are inherent to a finite artifact and documented here rather
than papered over:

* weak convergence itself is not decidable from finite data; what this
  module certifies is (a) coordinatewise nullity with an explicit
  threshold per coordinate and (b) refutations of finitely presented
  challenges in the challenge-response reading of the sequential
  criterion (see `find_weak_witness`);
* quantification over all infinite subsequences is replaced by finite
  prefixes plus optional closed-form extension rules, and every
  certificate records exactly how much prefix it consumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (
    CertificateViolationError,
    InvalidInputError,
    NeedsMoreDataError,
)
from .schreier import CanonicalEnumeration, SchreierSet, get_enumeration

__all__ = [
    "SequenceOracle",
    "Subsequence",
    "CesaroCertificate",
    "WeakConvergenceChallenge",
    "WeakWitness",
    "certify_not_cesaro_null",
    "sup_cesaro_norm_lower_bound",
    "find_weak_witness",
]

# materializing more terms than this is almost certainly a runaway rule
# (e.g. a geometric subsequence with a large N); fail loudly instead
DEFAULT_MAX_TERMS = 1_000_000


class SequenceOracle:
    """Entries of the 0/1 sequence under a fixed enumeration.

    Deterministic: the same (k, i) always yields the same entry.  The
    unranked set for each queried coordinate is cached, so repeated
    entries along one coordinate cost one unranking total.
    """

    def __init__(self, enumeration: CanonicalEnumeration | str = "canonical"):
        if isinstance(enumeration, str):
            enumeration = get_enumeration(enumeration)
        self.enumeration = enumeration
        self._sets: dict[int, frozenset[int]] = {}

    def coordinate_set(self, i: int) -> frozenset[int]:
        if i < 1:
            raise InvalidInputError(f"coordinate must be >= 1, got {i}")
        cached = self._sets.get(i)
        if cached is None:
            cached = frozenset(self.enumeration.unrank(i).elements)
            if len(self._sets) > 4096:
                self._sets.clear()
            self._sets[i] = cached
        return cached

    def entry(self, k: int, i: int) -> int:
        """1 iff k belongs to the i-th set of the enumeration."""
        if k < 1:
            raise InvalidInputError(f"index must be >= 1, got {k}")
        return 1 if k in self.coordinate_set(i) else 0

    def coordinatewise_null_check(self, i: int) -> int:
        """Threshold t with entry(k, i) == 0 for every k > t.

        The i-th set is finite, so its maximum works.
        """
        return max(self.coordinate_set(i))


class Subsequence:
    """A strictly increasing sequence of positive integers.

    Represented by an explicit finite prefix plus an optional rule that
    extends it on demand.  Without a rule, requests beyond the prefix
    raise NeedsMoreDataError carrying the required length.
    """

    def __init__(
        self,
        prefix: Sequence[int] = (),
        rule: Callable[[int], int] | None = None,
        description: str = "explicit",
    ):
        self._terms: list[int] = []
        self._rule = rule
        self.description = description
        for v in prefix:
            self._append(int(v))

    def _append(self, value: int) -> None:
        if value < 1:
            raise InvalidInputError(f"terms must be positive, got {value}")
        if self._terms and value <= self._terms[-1]:
            raise InvalidInputError(
                f"terms must be strictly increasing: {self._terms[-1]} then {value}"
            )
        self._terms.append(value)

    def __len__(self) -> int:
        return len(self._terms)

    def term(self, j: int, max_terms: int = DEFAULT_MAX_TERMS) -> int:
        """The j-th term, 1-based, extending via the rule if present."""
        if j < 1:
            raise InvalidInputError(f"term index must be >= 1, got {j}")
        if j > max_terms:
            raise InvalidInputError(
                f"term index {j} exceeds the materialization cap {max_terms}; "
                "the rule grows too fast for this request"
            )
        if j > len(self._terms):
            if self._rule is None:
                raise NeedsMoreDataError(
                    "subsequence prefix too short and no extension rule",
                    required=j,
                    available=len(self._terms),
                )
            while len(self._terms) < j:
                self._append(int(self._rule(len(self._terms) + 1)))
        return self._terms[j - 1]

    def terms(self, n: int, max_terms: int = DEFAULT_MAX_TERMS) -> tuple[int, ...]:
        """The first n terms as a tuple."""
        self.term(n, max_terms=max_terms)
        return tuple(self._terms[:n])

    # ---- constructors -------------------------------------------------

    @classmethod
    def from_terms(cls, values: Sequence[int]) -> "Subsequence":
        return cls(prefix=values, description="explicit")

    @classmethod
    def identity(cls) -> "Subsequence":
        return cls(rule=lambda j: j, description="identity")

    @classmethod
    def affine(cls, step: int, offset: int = 0) -> "Subsequence":
        step, offset = int(step), int(offset)
        if step < 1 or offset < 0:
            raise InvalidInputError(
                f"affine rule needs step >= 1 and offset >= 0, got {step}, {offset}"
            )
        return cls(rule=lambda j: step * j + offset, description=f"affine:{step},{offset}")

    @classmethod
    def geometric(cls, base: int = 1, ratio: int = 2) -> "Subsequence":
        base, ratio = int(base), int(ratio)
        if base < 1 or ratio < 2:
            raise InvalidInputError(
                f"geometric rule needs base >= 1 and ratio >= 2, got {base}, {ratio}"
            )
        return cls(rule=lambda j: base * ratio ** (j - 1), description=f"geometric:{base},{ratio}")

    @classmethod
    def seeded_increments(cls, seed: int, max_step: int = 3) -> "Subsequence":
        """Random strictly increasing sequence with steps in 1..max_step."""
        import random

        if max_step < 1:
            raise InvalidInputError(f"max_step must be >= 1, got {max_step}")
        rng = random.Random(int(seed))
        state = {"last": 0}

        def rule(_j: int) -> int:
            state["last"] += rng.randint(1, max_step)
            return state["last"]

        return cls(rule=rule, description=f"random:{seed},{max_step}")

    @classmethod
    def parse(cls, text: str) -> "Subsequence":
        """Parse a rule string or a comma-separated list of terms.

        Accepted rules: ``identity``, ``affine:STEP[,OFFSET]``,
        ``geometric:BASE,RATIO``, ``random:SEED[,MAX_STEP]``.
        """
        text = text.strip()
        if text == "identity":
            return cls.identity()
        for name, maker, arity in (
            ("affine", cls.affine, 2),
            ("geometric", cls.geometric, 2),
            ("random", cls.seeded_increments, 2),
        ):
            if text.startswith(name + ":"):
                args = [int(p) for p in text[len(name) + 1 :].split(",") if p.strip()]
                if not 1 <= len(args) <= arity:
                    raise InvalidInputError(f"bad rule arguments in {text!r}")
                return maker(*args)
        try:
            values = [int(p) for p in text.split(",") if p.strip()]
        except ValueError:
            raise InvalidInputError(f"unrecognized subsequence spec {text!r}") from None
        if not values:
            raise InvalidInputError("empty subsequence spec")
        return cls.from_terms(values)


@dataclass(frozen=True)
class CesaroCertificate:
    """Witness that a subsequence's Cesaro means stay >= 1/2 in sup norm.

    ``witness_set`` has the first 2N tail terms of the subsequence inside
    it, ``witness_coordinate`` is its rank in the enumeration in use, and
    ``mean`` is the exact rational average of the first 2N entries along
    that coordinate.
    """

    N: int
    witness_set: SchreierSet
    witness_coordinate: int
    mean: Fraction
    prefix: tuple[int, ...]
    prefix_len: int
    enumeration: str

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "A_N": self.witness_set.to_json(),
            "i0": str(self.witness_coordinate),
            "mean": f"{self.mean.numerator}/{self.mean.denominator}",
            "prefix_len": self.prefix_len,
            "enumeration": self.enumeration,
        }


def certify_not_cesaro_null(
    sub: Subsequence,
    N: int,
    oracle: SequenceOracle | None = None,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> CesaroCertificate:
    """Build the exact Cesaro-mean certificate for the given N.

    The witness set collects the subsequence values at positions
    N+1 .. N+k_{N+1}; strict monotonicity forces k_{N+1} > N, so the set
    has cardinality equal to its minimum and is maximal Schreier.  Its
    rank is the witness coordinate, and the certified mean over the first
    2N positions is computed entrywise in exact rational arithmetic.

    Raises NeedsMoreDataError when the prefix cannot cover index
    N + k_{N+1}, and CertificateViolationError if the mean ever fell
    below 1/2 (which no valid input can trigger).
    """
    if N < 1:
        raise InvalidInputError(f"N must be >= 1, got {N}")
    if oracle is None:
        oracle = SequenceOracle()
    k_next = sub.term(N + 1, max_terms=max_terms)
    need = N + k_next
    tail = sub.terms(need, max_terms=max_terms)[N:]
    witness = SchreierSet(tail)
    if len(witness) != k_next or witness.minimum != k_next:
        raise CertificateViolationError(
            "witness set is not maximal Schreier", witness=witness
        )
    coord = oracle.enumeration.rank_of(witness)

    first = sub.terms(2 * N, max_terms=max_terms)
    hits = sum(oracle.entry(k, coord) for k in first)
    mean = Fraction(hits, 2 * N)
    if mean < Fraction(1, 2):
        raise CertificateViolationError(
            f"certified mean {mean} fell below 1/2", witness=witness
        )
    return CesaroCertificate(
        N=N,
        witness_set=witness,
        witness_coordinate=coord,
        mean=mean,
        prefix=first,
        prefix_len=need,
        enumeration=oracle.enumeration.name,
    )


def sup_cesaro_norm_lower_bound(
    sub: Subsequence,
    N: int,
    oracle: SequenceOracle | None = None,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> Fraction:
    """Certified lower bound on the sup norm of the 2N-term Cesaro mean.

    Returns the certificate's exact mean: the mean vector attains at
    least this value at the witness coordinate, hence the sup norm does.
    """
    return certify_not_cesaro_null(sub, N, oracle=oracle, max_terms=max_terms).mean


@dataclass(frozen=True)
class WeakConvergenceChallenge:
    """A finitely presented challenge to coordinatewise smallness.

    Holds a positive threshold and finite prefixes of three strictly
    increasing index sequences.  A refutation is a pair (n, j) with
    j <= J_n whose entry is at most the threshold.
    """

    alpha: Fraction
    k_seq: tuple[int, ...]
    i_seq: tuple[int, ...]
    J_seq: tuple[int, ...]

    def __post_init__(self):
        alpha = Fraction(self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if alpha <= 0:
            raise InvalidInputError(f"threshold must be positive, got {alpha}")
        for name in ("k_seq", "i_seq", "J_seq"):
            seq = tuple(int(v) for v in getattr(self, name))
            object.__setattr__(self, name, seq)
            if not seq:
                raise InvalidInputError(f"{name} must be nonempty")
            if seq[0] < 1 or any(a >= b for a, b in zip(seq, seq[1:])):
                raise InvalidInputError(f"{name} must be strictly increasing and positive")


@dataclass(frozen=True)
class WeakWitness:
    n: int
    j: int
    coordinate: int
    index: int
    value: int


def find_weak_witness(
    challenge: WeakConvergenceChallenge,
    oracle: SequenceOracle | None = None,
) -> WeakWitness:
    """Refute a challenge: find (n, j) with j <= J_n and a small entry.

    Search strategy: take the first n exceeding k_1.  If k_1 is outside
    the n-th set the refutation is (n, 1).  Otherwise that set has at
    most k_1 elements while the challenge supplies J_n > k_1 distinct
    candidates, so scanning j = 1..J_n must find an index outside the
    set.  Either way the witnessed entry is exactly 0.

    Raises NeedsMoreDataError when a prefix is too short to reach the
    required position, with the length that would suffice.
    """
    if oracle is None:
        oracle = SequenceOracle()
    k1 = challenge.k_seq[0]
    n = k1 + 1
    for name in ("i_seq", "J_seq"):
        seq = getattr(challenge, name)
        if len(seq) < n:
            raise NeedsMoreDataError(
                f"{name} prefix too short to pick n > k_1", required=n, available=len(seq)
            )
    coord = challenge.i_seq[n - 1]
    members = oracle.coordinate_set(coord)
    if k1 not in members:
        return WeakWitness(n=n, j=1, coordinate=coord, index=k1, value=0)
    J_n = challenge.J_seq[n - 1]
    if len(challenge.k_seq) < J_n:
        raise NeedsMoreDataError(
            "k_seq prefix too short to scan up to J_n",
            required=J_n,
            available=len(challenge.k_seq),
        )
    for j in range(1, J_n + 1):
        k_j = challenge.k_seq[j - 1]
        if k_j not in members:
            return WeakWitness(n=n, j=j, coordinate=coord, index=k_j, value=0)
    raise CertificateViolationError(
        f"no escaping index found although the set has {len(members)} <= {k1} "
        f"elements and {J_n} candidates were scanned"
    )
