"""Closed-form path-length distribution model for tries of random keys.

For a trie holding ``n`` uniform 40-nibble keys, the probability that a
key's path length equals ``k`` is

    pmf(k, n) = (1 - (1/16)^k * 15/16)^n - (1 - (1/16)^(k-1) * 15/16)^n

Powers of near-one bases are evaluated as ``exp(n * log1p(-x))``; naive
powering loses every significant digit once x drops toward 16^-41.

The model treats per-key prefix-sharing events as independent, so it is
an approximation: it is accurate to Monte-Carlo tolerance for n >= 100
but is not exact for tiny n (exact divergence probability for n = 2 is
15/16, while pmf(1, 2) is about 0.8824).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

MAX_PATH_LENGTH = 41  # 40 nibbles + root


class ModelDomainError(ValueError):
    """Argument outside the model's domain."""


def _no_match_power(k: int, n: int) -> float:
    """(1 - (1/16)^k * 15/16)^n, stably."""
    x = (16.0 ** -k) * (15.0 / 16.0)
    return math.exp(n * math.log1p(-x))


def pmf(k: int, n: int) -> float:
    """Probability of path length exactly ``k`` among ``n`` keys."""
    if k < 1:
        raise ModelDomainError("path length k must be >= 1")
    if n < 1:
        raise ModelDomainError("key count n must be >= 1")
    return _no_match_power(k, n) - _no_match_power(k - 1, n)


def cdf(k: int, n: int) -> float:
    """P(path length <= k): the telescoped partial sum of :func:`pmf`.

    Equals (1 - (1/16)^k * 15/16)^n - (1/16)^n and is monotone
    non-decreasing in k, unlike :func:`cdf_paper_literal`.
    """
    if k < 1:
        raise ModelDomainError("path length k must be >= 1")
    if n < 1:
        raise ModelDomainError("key count n must be >= 1")
    return _no_match_power(k, n) - _no_match_power(0, n)


def cdf_paper_literal(k: int, n: int) -> float:
    """The published closed-form CDF expression, verbatim:

        F(k) = 1 - (1 - (1/16)^k * 15/16)^n

    Exposed for side-by-side comparison only. It decreases in k and is
    therefore not actually a CDF; use :func:`cdf` for real work.
    """
    if k < 1:
        raise ModelDomainError("path length k must be >= 1")
    if n < 1:
        raise ModelDomainError("key count n must be >= 1")
    return 1.0 - _no_match_power(k, n)


def expected_path_length(n: int) -> float:
    """Mean path length: sum of k * pmf(k, n) for k in [1, 41].

    Truncation at 41 discards less than n * 16^-41 of mass.
    """
    if n < 1:
        raise ModelDomainError("key count n must be >= 1")
    return sum(k * pmf(k, n) for k in range(1, MAX_PATH_LENGTH + 1))


def asymptotic_ratio(n: int) -> float:
    """expected_path_length(n) / log16(n); tends to 1 from above."""
    if n < 2:
        raise ModelDomainError("asymptotic ratio needs n >= 2")
    return expected_path_length(n) / (math.log(n) / math.log(16))


def prefix_share_probability(k: int) -> float:
    """Probability that two random keys share a prefix of length k:
    16^-k. Doubles as the probability of any specific k-nibble sequence.
    """
    if k < 0:
        raise ModelDomainError("prefix length must be >= 0")
    return 16.0 ** -k


@dataclass(frozen=True)
class ModelParams:
    n: int
    k_max: int = MAX_PATH_LENGTH

    def __post_init__(self):
        if self.n < 1:
            raise ModelDomainError("key count n must be >= 1")
        if not 1 <= self.k_max <= MAX_PATH_LENGTH:
            raise ModelDomainError(f"k_max must be in [1, {MAX_PATH_LENGTH}]")


@dataclass(frozen=True)
class ModelDistribution:
    n: int
    probabilities: dict[int, float] = field(repr=False)  # k -> pmf(k, n)

    @property
    def mode(self) -> int:
        """Most probable path length."""
        return max(self.probabilities, key=self.probabilities.__getitem__)


def distribution(params: ModelParams) -> ModelDistribution:
    """Evaluate the PMF over k in [1, params.k_max]."""
    probs = {k: pmf(k, params.n) for k in range(1, params.k_max + 1)}
    return ModelDistribution(n=params.n, probabilities=probs)
