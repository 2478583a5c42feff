"""Potential constructors, the periodic-series representation, and certificates.

A limit-periodic potential is stored as a finite series of periodic terms
whose periods form a divisibility chain, plus a sup-norm ``tail_bound``
dominating everything that was truncated away.  Constructors whose term
values are rational (the distal staircase and the alternating-indicator
example) keep exact ``Fraction`` entries; conversion to floating point
happens only at consumer boundaries (transfer matrices, eigensolves).

Site indices are two-sided; evaluation always uses the nonnegative
remainder ``n % p``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable, Sequence

import mpmath

from .errors import ConditionAError, GrowthConditionError, PrecisionError
from .procyclic import FrequencyIntegerSet

__all__ = [
    "PeriodicPotential",
    "LimitPeriodicPotential",
    "GordonScale",
    "GordonCertificate",
    "FrequencyEntry",
    "FrequencySpectrumReport",
    "evaluate",
    "hull_metric_potential",
    "select_distal_subset",
    "distal_potential",
    "poschel_potential",
    "estimate_frequency_module",
    "gordon_check",
]


@dataclass(frozen=True)
class PeriodicPotential:
    """A p-periodic two-sided sequence given by one period of values."""

    period: int
    values: tuple

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be >= 1")
        if len(self.values) != self.period:
            raise ValueError(
                f"got {len(self.values)} values for period {self.period}"
            )

    def value_at(self, n: int):
        return self.values[n % self.period]

    def sup_norm(self) -> float:
        return max(abs(float(v)) for v in self.values)

    def float_values(self) -> tuple[float, ...]:
        return tuple(float(v) for v in self.values)

    def scaled(self, coupling: float) -> "PeriodicPotential":
        return PeriodicPotential(self.period, tuple(coupling * v for v in self.values))


@dataclass(frozen=True)
class LimitPeriodicPotential:
    """Finite series of periodic terms with periods forming a divisibility chain."""

    terms: tuple[PeriodicPotential, ...]
    tail_bound: float = 0.0

    def __post_init__(self):
        for a, b in zip(self.terms, self.terms[1:]):
            if b.period % a.period != 0:
                raise ValueError(
                    f"term periods must form a divisibility chain: "
                    f"{a.period} does not divide {b.period}"
                )
        if self.tail_bound < 0:
            raise ValueError("tail_bound must be nonnegative")

    @property
    def depth(self) -> int:
        return len(self.terms)

    def value_at(self, n: int):
        """Sum of the stored terms at site n (exact when the terms are rational)."""
        total = 0
        for term in self.terms:
            total = total + term.value_at(n)
        return total

    def approximant(self, depth: int) -> PeriodicPotential:
        """Partial sum of the first ``depth`` terms, as a single periodic potential."""
        if not 1 <= depth <= self.depth:
            raise ValueError(f"depth {depth} outside [1, {self.depth}]")
        period = self.terms[depth - 1].period
        values = []
        for i in range(period):
            total = 0
            for term in self.terms[:depth]:
                total = total + term.value_at(i)
            values.append(total)
        return PeriodicPotential(period, tuple(values))

    def sup_norm(self) -> float:
        period = self.terms[-1].period if self.terms else 1
        return max(abs(float(self.value_at(i))) for i in range(period)) if self.terms else 0.0

    def scaled(self, coupling: float) -> "LimitPeriodicPotential":
        return LimitPeriodicPotential(
            tuple(t.scaled(coupling) for t in self.terms),
            abs(coupling) * self.tail_bound,
        )


def evaluate(v: LimitPeriodicPotential, n: int):
    """Value of the stored series at site n; within ``tail_bound`` of the ideal limit."""
    return v.value_at(n)


# ---------------------------------------------------------------- constructors

def hull_metric_potential(s: FrequencyIntegerSet) -> LimitPeriodicPotential:
    """Distance-to-identity sampled along the canonical generator orbit.

    Term j is the n_j-periodic sequence taking 2^{-j-1} at sites not
    divisible by n_j and 0 otherwise, so the site-k value equals the group
    metric between the k-step translate of the identity and the identity,
    exactly, level for level.
    """
    terms = []
    for j, n_j in enumerate(s.levels, start=1):
        weight = 2.0 ** -(j + 1)
        values = tuple(0.0 if r == 0 else weight for r in range(n_j))
        terms.append(PeriodicPotential(n_j, values))
    return LimitPeriodicPotential(tuple(terms), 2.0 ** -s.depth)


def select_distal_subset(s_max: FrequencyIntegerSet, m: int) -> FrequencyIntegerSet:
    """Greedily thin a chain to one with cubic growth n_k**3 <= n_{k+1} <= n_k**(3m).

    From each selected level the smallest admissible next level is taken.
    When no admissible next level exists the subchain built so far is
    returned if it already has at least two levels; otherwise the chain
    cannot support the construction and ``ConditionAError`` is raised.
    """
    if m < 2:
        raise ValueError("exponent m must be >= 2")
    levels = s_max.levels
    chain = [levels[0]]
    while True:
        cur = chain[-1]
        lo, hi = cur ** 3, cur ** (3 * m)
        candidates = [n for n in levels if lo <= n <= hi]
        if not candidates:
            if len(chain) >= 2:
                return FrequencyIntegerSet(tuple(chain))
            raise ConditionAError(
                f"no level in [{lo}, {hi}] to continue the chain from {cur}"
            )
        chain.append(candidates[0])


def distal_potential(s: FrequencyIntegerSet, m: int | None = None) -> LimitPeriodicPotential:
    """Staircase series V_i = sum_v (i mod n_v) / (n_{v-1}^2 n_v), with n_0 = 1.

    Shifted copies of the ideal series stay uniformly separated:
    |V_i - V_{i+k}| >= (2/3) * max(|k|, n_1)^{-(3m+1)} whenever the chain
    satisfies n_v**3 <= n_{v+1} <= n_v**(3m).  Note the n_1 cutoff: for
    0 < |k| < n_1 the separation does not improve beyond its value at n_1.

    Term values are exact rationals.  The lower growth bound is always
    enforced; the upper bound is enforced when ``m`` is given.
    """
    levels = (1,) + s.levels
    for a, b in zip(levels[1:], levels[2:]):
        if b < a ** 3:
            raise GrowthConditionError(f"{b} < {a}**3 violates the cubic lower bound")
        if m is not None and b > a ** (3 * m):
            raise GrowthConditionError(f"{b} > {a}**{3 * m} violates the upper bound")
    terms = []
    for v in range(1, len(levels)):
        n_prev, n_v = levels[v - 1], levels[v]
        denom = n_prev * n_prev * n_v
        values = tuple(Fraction(r, denom) for r in range(n_v))
        terms.append(PeriodicPotential(n_v, values))
    return LimitPeriodicPotential(tuple(terms), 2.0 / s.top ** 2)


def poschel_potential(depth: int) -> LimitPeriodicPotential:
    """Alternating binary-indicator series of 2^v-periodic terms, v = 1..depth.

    The v-th term is 2^{-v} times the indicator of the lower half of each
    2^v-block for even v and of the upper half for odd v.  Values are exact
    dyadic rationals; shifted copies of the ideal series satisfy
    |V_i - V_{i+k}| >= 1/(16 |k|) for k != 0.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    terms = []
    for v in range(1, depth + 1):
        p = 2 ** v
        half = p // 2
        weight = Fraction(1, p)
        if v % 2 == 0:
            values = tuple(weight if r < half else Fraction(0) for r in range(p))
        else:
            values = tuple(weight if r >= half else Fraction(0) for r in range(p))
        terms.append(PeriodicPotential(p, values))
    return LimitPeriodicPotential(tuple(terms), 2.0 ** -depth)


# ---------------------------------------------------------------- estimators

@dataclass(frozen=True)
class FrequencyEntry:
    alpha: float
    amplitude_modulus: float
    window: int


@dataclass(frozen=True)
class FrequencySpectrumReport:
    """Finite-window Fourier-Bohr moduli; no thresholding is applied."""

    entries: tuple[FrequencyEntry, ...]

    def exceeding(self, threshold: float) -> tuple[FrequencyEntry, ...]:
        """Entries whose modulus exceeds a caller-supplied threshold."""
        return tuple(e for e in self.entries if e.amplitude_modulus > threshold)


def estimate_frequency_module(
    v: LimitPeriodicPotential | PeriodicPotential,
    alphas: Sequence[float],
    window: int,
) -> FrequencySpectrumReport:
    """Moduli of symmetric Fourier-Bohr averages over 2*window + 1 sites.

    For each frequency alpha (in cycles per site) the reported value is

        | (1/(2n+1)) * sum_{k=-n..n} V(k) exp(-2 pi i k alpha) |,

    the mean over the window.  The window is finite and visible to the
    caller: membership of alpha in the frequency module is not certified,
    only the finite-window modulus is reported.  When 2*window + 1 is a
    multiple of the period of an exactly periodic input, the value equals
    the discrete Fourier coefficient modulus exactly.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    sites = range(-window, window + 1)
    values = [float(v.value_at(k)) for k in sites]
    count = 2 * window + 1
    entries = []
    for alpha in alphas:
        acc = 0j
        for k, val in zip(sites, values):
            acc += val * cmath.exp(-2j * math.pi * k * alpha)
        entries.append(FrequencyEntry(float(alpha), abs(acc) / count, window))
    return FrequencySpectrumReport(tuple(entries))


# ---------------------------------------------------------------- certificates

@dataclass(frozen=True)
class GordonScale:
    q: int
    defect: float
    bound: float
    passed: bool


@dataclass(frozen=True)
class GordonCertificate:
    """Per-scale repetition defects against the bounds k^{-q_k}.

    ``defect`` and ``bound`` are float snapshots for reporting; ``passed``
    records the comparison done at full working precision.
    """

    scales: tuple[GordonScale, ...]
    precision_bits: int

    @property
    def valid(self) -> bool:
        return all(s.passed for s in self.scales)


def _all_rational(v) -> bool:
    return all(isinstance(x, Rational) for t in v.terms for x in t.values)


def gordon_check(
    v: LimitPeriodicPotential,
    scales: Sequence[int],
    window_rule: Callable[[int], int] | None = None,
    precision_bits: int = 256,
) -> GordonCertificate:
    """Certify repetition defects: max_{1<=n<=q_k} |V(n) - V(n +- q_k)| <= k^{-q_k}.

    The k-th listed scale is checked against the bound k^{-q_k} (k 1-based).
    ``window_rule`` maps a scale to the largest n scanned (default: the scale
    itself).  Exactly rational potentials are checked in exact rational
    arithmetic; otherwise differences are formed in ``precision_bits``-bit
    floating point, which is exact for binary64 inputs.  A bound below the
    working-precision resolution would make a "pass" meaningless, so it
    raises ``PrecisionError`` instead.
    """
    if not scales:
        raise ValueError("scales must be nonempty")
    if any(q <= 0 for q in scales):
        raise ValueError("scales must be positive")
    if list(scales) != sorted(set(scales)):
        raise ValueError("scales must be strictly increasing")
    if window_rule is None:
        window_rule = lambda q: q

    for k, q in enumerate(scales, start=1):
        # bound k^{-q} < 2^{-precision_bits} cannot be certified
        if k >= 2 and k ** q > 2 ** precision_bits:
            raise PrecisionError(
                f"bound {k}^-{q} underflows {precision_bits}-bit precision"
            )

    exact = _all_rational(v)
    checked = []
    with mpmath.workprec(precision_bits):
        for k, q in enumerate(scales, start=1):
            n_max = window_rule(q)
            if exact:
                defect = Fraction(0)
                for n in range(1, n_max + 1):
                    center = v.value_at(n)
                    defect = max(
                        defect,
                        abs(center - v.value_at(n + q)),
                        abs(center - v.value_at(n - q)),
                    )
                bound = Fraction(1, k ** q)
                passed = defect <= bound
            else:
                defect = mpmath.mpf(0)
                for n in range(1, n_max + 1):
                    center = mpmath.mpf(float(v.value_at(n)))
                    defect = max(
                        defect,
                        abs(center - mpmath.mpf(float(v.value_at(n + q)))),
                        abs(center - mpmath.mpf(float(v.value_at(n - q)))),
                    )
                bound = mpmath.mpf(k) ** (-q)
                passed = defect <= bound
            checked.append(GordonScale(q, float(defect), float(bound), bool(passed)))
    return GordonCertificate(tuple(checked), precision_bits)
