"""Pairwise majority decisions and Condorcet winner detection.

The hot path is ``find_condorcet_winner``: a linear candidate-elimination
scan (current champion against the next alternative) followed by one full
verification pass.  That is O(n * k) preference tests per profile once the
position arrays exist, which is what the Monte Carlo estimator needs at
n in the hundreds.  The naive all-pairs check is kept as a test oracle and
debug fallback.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import Profile


@dataclass(frozen=True)
class CondorcetOutcome:
    """Result of winner detection; ``winner`` is None when no alternative
    beats all others (a Condorcet cycle).  At most one winner can exist."""

    winner: Optional[int]

    @property
    def exists(self) -> bool:
        return self.winner is not None


def majority_prefers(profile: Profile, a: int, b: int) -> bool:
    """True iff at least k of the 2k-1 voters rank ``a`` above ``b``.

    With an odd voter count exactly one of (a over b), (b over a) holds.
    """
    n = profile.n
    if a == b:
        raise ValueError("alternatives must differ")
    if not (0 <= a < n and 0 <= b < n):
        raise ValueError(f"alternative out of range for n={n}")
    k = profile.k
    votes = 0
    for pos in profile.positions:
        if pos[a] < pos[b]:
            votes += 1
            if votes >= k:
                return True
    return False


def _beats_all(profile: Profile, candidate: int) -> bool:
    return all(
        majority_prefers(profile, candidate, other)
        for other in range(profile.n)
        if other != candidate
    )


def find_condorcet_winner(profile: Profile, naive: bool = False) -> CondorcetOutcome:
    """Find the unique alternative that wins every pairwise majority, if any.

    The scan keeps a champion and replaces it whenever the next alternative
    beats it; only the surviving champion can possibly beat everyone, so one
    verification pass settles it.  ``naive=True`` checks every alternative
    against all others instead (O(n^2 k), oracle use only).
    """
    n = profile.n
    if naive:
        for candidate in range(n):
            if _beats_all(profile, candidate):
                return CondorcetOutcome(candidate)
        return CondorcetOutcome(None)

    champion = 0
    for challenger in range(1, n):
        if majority_prefers(profile, challenger, champion):
            champion = challenger
    if _beats_all(profile, champion):
        return CondorcetOutcome(champion)
    return CondorcetOutcome(None)
