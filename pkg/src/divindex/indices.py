"""Base diversity indices over categorized count distributions.

Implements the four classic indices used by the conference-level
indicators: Shannon entropy H', Pielou evenness J', Simpson dominance D
(with its complement 1-D), and the disparity-weighted Rao-Stirling sum.
All logarithms are natural. Every function is a pure function of its
inputs; values are immutable and safe to share across threads.
"""

from __future__ import annotations

import math
import warnings
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DiversityError, EmptyCommunityError

#: |sum(proportions) - 1| stays below this for any non-empty distribution.
PROPORTION_TOLERANCE = 1e-12


class RenormalizationWarning(UserWarning):
    """A percentage row did not sum to 100 and was renormalized."""


def _as_pairs(items) -> list[tuple[str, float]]:
    if isinstance(items, Mapping):
        return [(str(k), float(v)) for k, v in items.items()]
    return [(str(k), float(v)) for k, v in items]


@dataclass(frozen=True)
class CategoryDistribution:
    """Counts per category within one community.

    ``categories`` and ``counts`` are aligned; counts are non-negative and
    at least one must be positive before any index can be computed.
    Distributions built from published percentages carry
    ``from_proportions=True``: they hold proportions instead of raw counts,
    their total is meaningless, and Simpson's finite-sample index rejects
    them.
    """

    categories: tuple[str, ...]
    counts: tuple[float, ...]
    from_proportions: bool = False

    def __post_init__(self):
        object.__setattr__(self, "categories", tuple(str(c) for c in self.categories))
        object.__setattr__(self, "counts", tuple(float(c) for c in self.counts))
        if len(self.categories) != len(self.counts):
            raise DiversityError(
                f"{len(self.categories)} categories but {len(self.counts)} counts"
            )
        if len(set(self.categories)) != len(self.categories):
            raise DiversityError("category labels must be unique")
        for label, count in zip(self.categories, self.counts):
            if not math.isfinite(count) or count < 0:
                raise DiversityError(f"negative or non-finite count for {label!r}: {count}")

    @classmethod
    def from_counts(cls, items: Mapping[str, float] | Iterable[tuple[str, float]]):
        """Build a distribution from ``{category: count}`` pairs."""
        pairs = _as_pairs(items)
        return cls(tuple(k for k, _ in pairs), tuple(v for _, v in pairs))

    @classmethod
    def from_percentages(cls, items: Mapping[str, float] | Iterable[tuple[str, float]]):
        """Build a distribution from a published percentage row.

        The row is renormalized to proportions summing to 1. Rows whose sum
        differs from 100 trigger a :class:`RenormalizationWarning`, since
        published tables occasionally print percentages that do not add up.
        """
        pairs = _as_pairs(items)
        total = sum(v for _, v in pairs)
        if total <= 0:
            raise DiversityError("percentage row sums to zero")
        if abs(total - 100.0) > 1e-6:
            warnings.warn(
                f"percentages sum to {total:g}, renormalizing to 1",
                RenormalizationWarning,
                stacklevel=2,
            )
        return cls(
            tuple(k for k, _ in pairs),
            tuple(v / total for _, v in pairs),
            from_proportions=True,
        )

    @classmethod
    def from_proportions_row(cls, items: Mapping[str, float] | Iterable[tuple[str, float]]):
        """Build a distribution from proportions that already sum to ~1."""
        pairs = _as_pairs(items)
        total = sum(v for _, v in pairs)
        if total <= 0:
            raise DiversityError("proportion row sums to zero")
        if abs(total - 1.0) > 1e-6:
            warnings.warn(
                f"proportions sum to {total:g}, renormalizing to 1",
                RenormalizationWarning,
                stacklevel=2,
            )
        return cls(
            tuple(k for k, _ in pairs),
            tuple(v / total for _, v in pairs),
            from_proportions=True,
        )

    @property
    def total(self) -> float:
        """N, the number of individuals (or 1.0 for proportion rows)."""
        return sum(self.counts)

    @property
    def proportions(self) -> tuple[float, ...]:
        """p_i = n_i / N for every category."""
        n = self.total
        if n <= 0:
            raise EmptyCommunityError("empty community")
        return tuple(c / n for c in self.counts)

    @property
    def observed_richness(self) -> int:
        """S, the number of categories with a positive count."""
        return sum(1 for c in self.counts if c > 0)

    def is_empty(self) -> bool:
        return self.total <= 0


@dataclass(frozen=True)
class DisparityMatrix:
    """Pairwise disparities d_ij >= 0 with exponents alpha and beta.

    The matrix is square, indexed consistently with a distribution's
    categories, and has a zero diagonal. Both exponents must be
    non-negative (zero disparity raised to a negative power is undefined).
    """

    values: tuple[tuple[float, ...], ...]
    alpha: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        rows = tuple(tuple(float(v) for v in row) for row in self.values)
        object.__setattr__(self, "values", rows)
        side = len(rows)
        for i, row in enumerate(rows):
            if len(row) != side:
                raise DiversityError(f"disparity matrix is not square at row {i}")
            if row[i] != 0.0:
                raise DiversityError(f"disparity d[{i}][{i}] must be 0, got {row[i]}")
            for j, v in enumerate(row):
                if not math.isfinite(v) or v < 0:
                    raise DiversityError(f"disparity d[{i}][{j}] must be finite and >= 0")
        if self.alpha < 0 or self.beta < 0:
            raise DiversityError("disparity exponents must be non-negative")

    @property
    def side(self) -> int:
        return len(self.values)

    @classmethod
    def uniform(cls, side: int, value: float = 1.0, alpha: float = 1.0, beta: float = 1.0):
        """Constant off-diagonal disparity, handy for tests and defaults."""
        rows = tuple(
            tuple(0.0 if i == j else float(value) for j in range(side)) for i in range(side)
        )
        return cls(rows, alpha=alpha, beta=beta)


class SimpsonIndex(NamedTuple):
    dominance: float
    complement: float


def _require_nonempty(dist: CategoryDistribution) -> None:
    if dist.is_empty():
        raise EmptyCommunityError("empty community")


def shannon_index(dist: CategoryDistribution) -> float:
    """Shannon entropy H' = -sum p_i ln p_i.

    Zero-count categories contribute nothing (0 ln 0 := 0). The result
    lies in [0, ln S] where S is the observed richness.
    """
    _require_nonempty(dist)
    acc = 0.0
    for p in dist.proportions:
        if p > 0.0:
            acc += p * math.log(p)
    return -acc if acc != 0.0 else 0.0


def h_max(s: int) -> float:
    """Maximum Shannon entropy ln(s) reached by the uniform distribution over s categories."""
    if s < 1:
        raise DiversityError(f"richness must be a positive integer, got {s}")
    return math.log(s)


def pielou_index(dist: CategoryDistribution, s_reference: int) -> float:
    """Pielou evenness J' = H' / ln(s_reference), in [0, 1].

    ``s_reference`` is the reference richness used for the denominator and
    must be at least the observed richness. With ``s_reference == 1`` the
    maximum entropy is 0 and J' is defined as 0 rather than 0/0, so a
    single-category community scores zero evenness.
    """
    _require_nonempty(dist)
    if s_reference < 1:
        raise DiversityError(f"reference richness must be >= 1, got {s_reference}")
    if s_reference < dist.observed_richness:
        raise DiversityError(
            f"reference richness below observed richness "
            f"({s_reference} < {dist.observed_richness})"
        )
    if s_reference == 1:
        return 0.0
    return min(shannon_index(dist) / math.log(s_reference), 1.0)


def simpson_index(dist: CategoryDistribution) -> SimpsonIndex:
    """Simpson dominance D = sum n_i(n_i - 1) / (N(N - 1)) and its complement.

    D is the probability that two individuals drawn without replacement
    belong to the same category; it approaches 1 in the limit of a
    mono-culture, so diversity is usually reported as 1 - D. The
    finite-sample form needs integer counts and at least two individuals.
    """
    _require_nonempty(dist)
    if dist.from_proportions:
        raise DiversityError("Simpson needs integer counts, not a proportion row")
    for label, count in zip(dist.categories, dist.counts):
        if not float(count).is_integer():
            raise DiversityError(f"Simpson needs integer counts; {label!r} has {count}")
    n_total = round(dist.total)
    if n_total < 2:
        raise DiversityError("Simpson undefined below two individuals")
    same_pairs = sum(round(c) * (round(c) - 1) for c in dist.counts)
    dominance = same_pairs / (n_total * (n_total - 1))
    return SimpsonIndex(dominance, 1.0 - dominance)


def rao_stirling(dist: CategoryDistribution, disparity: DisparityMatrix) -> float:
    """Rao-Stirling diversity: sum over ordered pairs i != j of d_ij^alpha (p_i p_j)^beta.

    The sum runs over ordered pairs, so a symmetric two-category system
    with unit disparity scores 0.5, twice the unordered reading. Categories
    with zero proportion are absent from the community and contribute no
    pair, whatever the exponents.
    """
    _require_nonempty(dist)
    if disparity.side != len(dist.categories):
        raise DiversityError(
            f"disparity matrix side {disparity.side} does not match "
            f"{len(dist.categories)} categories"
        )
    p = dist.proportions
    alpha, beta = disparity.alpha, disparity.beta
    acc = 0.0
    for i in range(len(p)):
        if p[i] <= 0.0:
            continue
        for j in range(len(p)):
            if i == j or p[j] <= 0.0:
                continue
            acc += disparity.values[i][j] ** alpha * (p[i] * p[j]) ** beta
    return acc
