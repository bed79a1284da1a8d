"""Exact Condorcet winner probabilities: weighted enumeration over a culture's
support, the closed-form minimum over all cultures, and the marginal lower
bound.  Everything here is exact rational arithmetic.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, islice
from typing import List, Optional, Sequence, Tuple

from .model import (
    MAX_EXPLICIT_SUPPORT,
    CapExceededError,
    Culture,
    SupportTooLargeError,
)
from .special import majority_tail_exact

MAX_WINNER_CHECKS = 10 ** 8

_ENUM_CHUNK = 4096


@dataclass(frozen=True)
class ExactProbability:
    """An exact probability with its provenance.

    ``method`` is "enumeration" for support enumeration, "closed_form" for
    the minimum-probability formula, "marginal_bound" for the sum of
    majority tails of the top-choice marginals (a lower bound, not the
    probability itself).  ``per_alternative`` decomposes the total by
    winning alternative; the winner is unique, so it sums to ``value``.
    """

    value: Fraction
    method: str
    per_alternative: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self) -> None:
        if not 0 <= self.value <= 1:
            raise ValueError(f"probability {self.value} outside [0, 1]")
        if self.per_alternative is not None and sum(self.per_alternative) != self.value:
            raise ValueError("per-alternative decomposition does not sum to the total")

    @property
    def as_float(self) -> float:
        return float(self.value)


def _multiset_winner(
    positions: Sequence[Sequence[int]],
    items: Tuple[int, ...],
    counts: Sequence[int],
    n: int,
    k: int,
) -> Optional[int]:
    """Condorcet winner of a voter multiset given per-support position tables.

    ``items`` are the distinct support indices present, ``counts`` their
    multiplicities (summing to 2k-1).  Candidate elimination plus one
    verification pass, with each pairwise tally weighted by multiplicity.
    """

    def prefers(a: int, b: int) -> bool:
        votes = 0
        for idx, mult in zip(items, counts):
            pos = positions[idx]
            if pos[a] < pos[b]:
                votes += mult
                if votes >= k:
                    return True
        return False

    champion = 0
    for challenger in range(1, n):
        if prefers(challenger, champion):
            champion = challenger
    for other in range(n):
        if other != champion and not prefers(champion, other):
            return None
    return champion


def _enumerate_range(
    culture: Culture,
    k: int,
    start: int,
    stop: int,
) -> List[Fraction]:
    """Winner mass per alternative over multisets [start, stop) in the fixed
    combinations-with-replacement order."""
    entries = culture.entries
    n = culture.n
    voters = 2 * k - 1
    positions = [r.positions for r, _ in entries]
    weights = [w for _, w in entries]
    fact = [math.factorial(i) for i in range(voters + 1)]
    per_alt = [Fraction(0)] * n

    stream = islice(
        combinations_with_replacement(range(len(entries)), voters), start, stop
    )
    for combo in stream:
        items: List[int] = []
        counts: List[int] = []
        for idx in combo:
            if items and items[-1] == idx:
                counts[-1] += 1
            else:
                items.append(idx)
                counts.append(1)
        winner = _multiset_winner(positions, tuple(items), counts, n, k)
        if winner is None:
            continue
        coeff = fact[voters]
        prob = Fraction(1)
        for idx, mult in zip(items, counts):
            coeff //= fact[mult]
            prob *= weights[idx] ** mult
        per_alt[winner] += coeff * prob
    return per_alt


def condorcet_probability(
    culture: Culture,
    k: int,
    max_winner_checks: int = MAX_WINNER_CHECKS,
    max_support: int = MAX_EXPLICIT_SUPPORT,
    workers: int = 1,
) -> ExactProbability:
    """Exact probability that a Condorcet winner exists under the culture.

    Enumerates unordered voter multisets over the explicit support with
    multinomial weights, which cuts the work by up to (2k-1)! against
    ordered tuples while keeping the arithmetic exact.  The enumeration is
    partitioned into index ranges whose partial sums merge associatively,
    so the result is independent of ``workers``.

    Raises :class:`SupportTooLargeError` when the explicit support would
    exceed ``max_support`` and :class:`CapExceededError` when the multiset
    count exceeds ``max_winner_checks``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    explicit = culture.expand(max_support)
    support = len(explicit.entries)
    if support > max_support:
        raise SupportTooLargeError(support, max_support)
    voters = 2 * k - 1
    multisets = math.comb(support + voters - 1, voters)
    if multisets > max_winner_checks:
        raise CapExceededError("max_winner_checks", multisets, max_winner_checks)

    ranges = [
        (lo, min(lo + _ENUM_CHUNK, multisets))
        for lo in range(0, multisets, _ENUM_CHUNK)
    ]
    n = explicit.n
    per_alt = [Fraction(0)] * n
    if workers <= 1 or len(ranges) == 1:
        partials = [_enumerate_range(explicit, k, lo, hi) for lo, hi in ranges]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_enumerate_range, explicit, k, lo, hi)
                for lo, hi in ranges
            ]
            partials = [f.result() for f in futures]
    for part in partials:
        for j in range(n):
            per_alt[j] += part[j]
    total = sum(per_alt, Fraction(0))
    return ExactProbability(total, "enumeration", tuple(per_alt))


def min_condorcet_probability(n: int, k: int) -> Fraction:
    """The minimum Condorcet winner probability over all cultures on n
    alternatives with 2k-1 voters, as an exact rational:

        n^-(2k-2) * sum_{l=0}^{k-1} C(2k-1, l) (n-1)^l

    The cyclic rotation culture attains it.  For n <= 2 the value is 1.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be at least 1")
    acc = sum(math.comb(2 * k - 1, l) * (n - 1) ** l for l in range(k))
    return Fraction(acc, n ** (2 * k - 2))


def marginal_lower_bound(culture: Culture, k: int) -> Fraction:
    """Sum of majority tails of the top-choice marginals.

    Each alternative is a Condorcet winner whenever at least k voters rank
    it first, so this sum is a certified lower bound on the exact winner
    probability.  Exact rational since culture marginals are rational.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    return sum(
        (majority_tail_exact(k, x) for x in culture.top_marginals()), Fraction(0)
    )
