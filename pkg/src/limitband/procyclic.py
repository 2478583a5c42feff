"""Finite-depth model of procyclic groups (odometers).

A procyclic group is modelled, up to a chosen truncation depth K, by a
divisibility chain n_1 | n_2 | ... | n_K of cyclic-group orders (a
*frequency integer set*).  Group elements are compatible residue vectors
(odometer points), the translation is "add b at every level", and the
metric is the standard product-topology metric

    dist(x, y) = sum_j 2^{-j} * d_j / (1 + d_j),

with d_j the discrete metric on the level-j cyclic group.  Since d_j is
0/1-valued the metric reduces to a sum of the dyadic weights 2^{-j-1}
over the levels where the residues disagree; all values are therefore
exact in binary floating point.

Levels and residues are plain Python integers: chains with cubic growth
(n_{k+1} >= n_k**3) overflow 64-bit words within a handful of levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DepthError, DivisibilityError, ParentMismatch

__all__ = [
    "FrequencyIntegerSet",
    "OdometerPoint",
    "SamplingFunction",
    "make_frequency_set",
    "maximal_refinement",
    "hulls_isomorphic",
    "odometer_translate",
    "group_metric",
    "is_generator",
    "periodize",
]


@dataclass(frozen=True)
class FrequencyIntegerSet:
    """Strictly increasing divisibility chain [n_1, ..., n_K], all levels >= 2."""

    levels: tuple[int, ...]

    def __post_init__(self):
        if not self.levels:
            raise ValueError("frequency integer set must be nonempty")
        for n in self.levels:
            if n < 2:
                raise ValueError(f"levels must be >= 2, got {n}")
        for a, b in zip(self.levels, self.levels[1:]):
            if b % a != 0:
                raise DivisibilityError(f"{a} does not divide {b}")

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def top(self) -> int:
        """n_K, the finest resolved period."""
        return self.levels[-1]

    def identity(self) -> "OdometerPoint":
        return OdometerPoint.from_integer(self, 0)

    def generator(self) -> "OdometerPoint":
        """The canonical topological generator (1, 1, ..., 1)."""
        return OdometerPoint.from_integer(self, 1)


@dataclass(frozen=True)
class OdometerPoint:
    """Compatible residue vector (r_1, ..., r_K), r_{k+1} = r_k (mod n_k)."""

    residues: tuple[int, ...]
    parent: FrequencyIntegerSet

    def __post_init__(self):
        levels = self.parent.levels
        if len(self.residues) != len(levels):
            raise ValueError("residue vector length must match chain depth")
        for r, n in zip(self.residues, levels):
            if not 0 <= r < n:
                raise ValueError(f"residue {r} out of range [0, {n})")
        for k in range(len(levels) - 1):
            if self.residues[k + 1] % levels[k] != self.residues[k]:
                raise ValueError(
                    f"incompatible residues at levels {k + 1}, {k + 2}: "
                    f"{self.residues[k + 1]} != {self.residues[k]} (mod {levels[k]})"
                )

    @classmethod
    def from_integer(cls, parent: FrequencyIntegerSet, n: int) -> "OdometerPoint":
        """The image of the integer n under the dense embedding Z -> group."""
        return cls(tuple(n % level for level in parent.levels), parent)


def make_frequency_set(chain: list[int]) -> FrequencyIntegerSet:
    """Validate a divisibility chain; input order is irrelevant, duplicates collapse."""
    if not chain:
        raise ValueError("frequency integer set must be nonempty")
    return FrequencyIntegerSet(tuple(sorted(set(chain))))


def _prime_factors(n: int) -> list[int]:
    """Prime factors of n with multiplicity, nondecreasing (trial division)."""
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def maximal_refinement(s: FrequencyIntegerSet) -> FrequencyIntegerSet:
    """Refine a chain so that every consecutive ratio is prime.

    Intermediate chains are not unique; the canonical form inserts the
    smallest prime factors first between consecutive original levels
    (and below the first level, starting from 1, which itself is dropped).
    Divisibility-based isomorphism tests do not depend on this choice.
    """
    refined = []
    prev = 1
    for level in s.levels:
        for p in _prime_factors(level // prev):
            prev *= p
            refined.append(prev)
    return FrequencyIntegerSet(tuple(refined))


def hulls_isomorphic(s1: FrequencyIntegerSet, s2: FrequencyIntegerSet) -> bool:
    """True iff every level of either chain divides some level of the other.

    This is a truncation-level criterion: it compares the two chains as
    given, not the completed (infinite-depth) groups they truncate.
    """

    def dominated(a: FrequencyIntegerSet, b: FrequencyIntegerSet) -> bool:
        return all(any(m % n == 0 for m in b.levels) for n in a.levels)

    return dominated(s1, s2) and dominated(s2, s1)


def odometer_translate(x: OdometerPoint, b: OdometerPoint, steps: int) -> OdometerPoint:
    """Translate x by steps * b, componentwise mod n_k."""
    if x.parent != b.parent:
        raise ParentMismatch("points belong to different frequency integer sets")
    levels = x.parent.levels
    residues = tuple(
        (r + steps * t) % n for r, t, n in zip(x.residues, b.residues, levels)
    )
    return OdometerPoint(residues, x.parent)


def group_metric(x: OdometerPoint, y: OdometerPoint) -> float:
    """Product-topology metric; exact dyadic value sum(2^{-j-1} over differing levels)."""
    if x.parent != y.parent:
        raise ParentMismatch("points belong to different frequency integer sets")
    return float(sum(
        Fraction(1, 2 ** (j + 1))
        for j, (a, b) in enumerate(zip(x.residues, y.residues), start=1)
        if a != b
    ))


def is_generator(k: int, s: FrequencyIntegerSet) -> bool:
    """Whether translation by (k, ..., k) has a full orbit at every level.

    By divisibility it suffices to check coprimality against the top level.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    return math.gcd(k, s.top) == 1


@dataclass(frozen=True)
class SamplingFunction:
    """Depth-K table of a continuous function on the group.

    ``table[r]`` is the value on the cylinder set of points whose top-level
    residue is r; ``tail_bound`` dominates the sup-norm error against the
    ideal infinite-depth function (0 means exactly n_K-periodic).
    """

    parent: FrequencyIntegerSet
    table: tuple[float, ...]
    tail_bound: float = 0.0

    def __post_init__(self):
        if len(self.table) != self.parent.top:
            raise ValueError(
                f"table length {len(self.table)} != top level {self.parent.top}"
            )
        if self.tail_bound < 0:
            raise ValueError("tail_bound must be nonnegative")

    @property
    def depth(self) -> int:
        return self.parent.depth

    def value_at_point(self, x: OdometerPoint) -> float:
        if x.parent != self.parent:
            raise ParentMismatch("point belongs to a different frequency integer set")
        return self.table[x.residues[-1]]


def periodize(f: SamplingFunction, k: int) -> SamplingFunction:
    """Average f over the cosets of the level-k subgroup.

    The result is the n_k-periodic function whose value at residue r is the
    mean of f's table over all top-level residues congruent to r mod n_k.
    Constant cosets are passed through bit-identically, which also makes the
    operation exactly idempotent.
    """
    if not 1 <= k <= f.depth:
        raise DepthError(f"depth {k} outside [1, {f.depth}]")
    n_k = f.parent.levels[k - 1]
    n_top = f.parent.top
    coset_means = []
    for r in range(n_k):
        values = [f.table[q] for q in range(r, n_top, n_k)]
        if all(v == values[0] for v in values):
            coset_means.append(values[0])
        else:
            coset_means.append(math.fsum(values) / len(values))
    table = tuple(coset_means[q % n_k] for q in range(n_top))
    return SamplingFunction(f.parent, table, 0.0)
