"""Gcd identities of the L-sequences and generic gcd-insularity checking.

A sequence R is insular on an index set M when gcd(R(n), R(m)) equals
R(gcd(n, m)) for all n, m in M.  The L1 sequence is insular on index sets of
the shape 3^k * t (t odd, not divisible by 3) with k fixed, L3 on sets of
the shape 3^m * 2^n * t with (m, n) fixed, and indices drawn from sets with
different fixed exponents are coprime.  Every check returns a record with
both the computed and the predicted gcd so mismatches are auditable.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable

from .lfamily import LFamily, eval_exact

__all__ = [
    "GcdCheckRecord",
    "IndexSetSpec",
    "gcd_l1",
    "gcd_l1_cross",
    "gcd_l3",
    "gcd_l3_cross",
    "corollary2_divisor",
    "insularity_harness",
]


@dataclass(frozen=True)
class GcdCheckRecord:
    """Computed-versus-predicted gcd for one index pair."""

    index_pair: tuple[int, int]
    computed: int
    predicted: int

    @property
    def match(self) -> bool:
        return self.computed == self.predicted


def _require_admissible_t(t: int, name: str) -> None:
    if t < 1:
        raise ValueError(f"{name} must be >= 1, got {t}")
    if t % 2 == 0:
        raise ValueError(f"{name} must be odd, got {t}")
    if t % 3 == 0:
        raise ValueError(f"{name} must not be divisible by 3, got {t}")


def gcd_l1(k: int, t1: int, t2: int) -> tuple[int, GcdCheckRecord]:
    """gcd of L1 at indices 3^k*t1 and 3^k*t2, predicted L1(3^k*gcd(t1,t2))."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    _require_admissible_t(t1, "t1")
    _require_admissible_t(t2, "t2")
    base = 3**k
    n1, n2 = base * t1, base * t2
    computed = math.gcd(eval_exact(LFamily.L1, n1), eval_exact(LFamily.L1, n2))
    predicted = eval_exact(LFamily.L1, base * math.gcd(t1, t2))
    return computed, GcdCheckRecord((n1, n2), computed, predicted)


def gcd_l1_cross(k1: int, t1: int, k2: int, t2: int) -> tuple[int, GcdCheckRecord]:
    """gcd of L1 at indices 3^k1*t1 and 3^k2*t2 with k1 != k2, predicted 1."""
    if k1 < 0 or k2 < 0:
        raise ValueError(f"exponents must be >= 0, got {k1} and {k2}")
    if k1 == k2:
        raise ValueError(f"exponents must differ (got k1 = k2 = {k1}); use gcd_l1")
    _require_admissible_t(t1, "t1")
    _require_admissible_t(t2, "t2")
    n1, n2 = 3**k1 * t1, 3**k2 * t2
    computed = math.gcd(eval_exact(LFamily.L1, n1), eval_exact(LFamily.L1, n2))
    return computed, GcdCheckRecord((n1, n2), computed, 1)


def gcd_l3(m: int, n: int, t1: int, t2: int) -> tuple[int, GcdCheckRecord]:
    """gcd of L3 at indices 3^m*2^n*t1 and 3^m*2^n*t2, predicted at the gcd index."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    _require_admissible_t(t1, "t1")
    _require_admissible_t(t2, "t2")
    base = 3**m * 2**n
    n1, n2 = base * t1, base * t2
    computed = math.gcd(eval_exact(LFamily.L3, n1), eval_exact(LFamily.L3, n2))
    predicted = eval_exact(LFamily.L3, base * math.gcd(t1, t2))
    return computed, GcdCheckRecord((n1, n2), computed, predicted)


def gcd_l3_cross(
    m1: int, n1: int, t1: int, m2: int, n2: int, t2: int
) -> tuple[int, GcdCheckRecord]:
    """gcd of L3 at indices 3^m1*2^n1*t1 and 3^m2*2^n2*t2 with distinct
    exponent pairs, predicted 1."""
    if m1 < 0 or m2 < 0:
        raise ValueError(f"3-adic exponents must be >= 0, got {m1} and {m2}")
    if n1 < 1 or n2 < 1:
        raise ValueError(f"2-adic exponents must be >= 1, got {n1} and {n2}")
    if (m1, n1) == (m2, n2):
        raise ValueError(
            f"exponent pairs must differ (got ({m1}, {n1}) twice); use gcd_l3"
        )
    _require_admissible_t(t1, "t1")
    _require_admissible_t(t2, "t2")
    i1, i2 = 3**m1 * 2**n1 * t1, 3**m2 * 2**n2 * t2
    computed = math.gcd(eval_exact(LFamily.L3, i1), eval_exact(LFamily.L3, i2))
    return computed, GcdCheckRecord((i1, i2), computed, 1)


def corollary2_divisor(n: int, t: int) -> bool:
    """Divisor relation between L3(2^n) and L3(2^n * t) for odd t > 1.

    For t not divisible by 3, checks that L3(2^n) is a proper nontrivial
    divisor of L3(2^n * t); for t divisible by 3, checks that the two values
    are coprime.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if t <= 1:
        raise ValueError(f"t must be > 1, got {t}")
    if t % 2 == 0:
        raise ValueError(f"t must be odd, got {t}")
    small = eval_exact(LFamily.L3, 2**n)
    large = eval_exact(LFamily.L3, 2**n * t)
    if t % 3 != 0:
        return large % small == 0 and 1 < small < large
    return math.gcd(large, small) == 1


@dataclass(frozen=True)
class IndexSetSpec:
    """Bounded enumeration of an index set for insularity sampling.

    kind "structured" generates 3^pow3 * 2^pow2 * t with t odd and not
    divisible by 3; "all" generates every index and "odd" every odd index.
    Only indices <= bound are enumerated.
    """

    kind: str
    pow3: int = 0
    pow2: int = 0
    bound: int = 10_000

    def __post_init__(self) -> None:
        if self.kind not in ("structured", "all", "odd"):
            raise ValueError(f"unknown index-set kind {self.kind!r}")
        if self.pow3 < 0 or self.pow2 < 0:
            raise ValueError("exponents must be >= 0")
        if self.bound < 1:
            raise ValueError(f"bound must be >= 1, got {self.bound}")

    def indices(self) -> list[int]:
        if self.kind == "all":
            return list(range(1, self.bound + 1))
        if self.kind == "odd":
            return list(range(1, self.bound + 1, 2))
        base = 3**self.pow3 * 2**self.pow2
        return [
            base * t
            for t in range(1, self.bound // base + 1)
            if t % 2 == 1 and t % 3 != 0
        ]


def insularity_harness(
    sequence: Callable[[int], int],
    index_set: IndexSetSpec,
    sample_pairs: int,
    seed: int = 0,
) -> list[GcdCheckRecord]:
    """Sample index pairs and check gcd(R(n), R(m)) == R(gcd(n, m)).

    Pairs are drawn uniformly (with the given seed) from the bounded
    enumeration of the index set; records come back sorted by index pair and
    mismatches are reported in the records rather than raised.
    """
    if sample_pairs < 1:
        raise ValueError(f"sample_pairs must be >= 1, got {sample_pairs}")
    candidates = index_set.indices()
    if not candidates:
        raise ValueError(f"index set {index_set} is empty")
    rng = random.Random(seed)
    pairs = []
    for _ in range(sample_pairs):
        n = rng.choice(candidates)
        m = rng.choice(candidates)
        pairs.append((min(n, m), max(n, m)))
    pairs.sort()
    records = []
    for n, m in pairs:
        computed = math.gcd(sequence(n), sequence(m))
        predicted = sequence(math.gcd(n, m))
        records.append(GcdCheckRecord((n, m), computed, predicted))
    return records
