"""Core domain types: rankings, cultures, profiles, exact rational weights.

Everything here is immutable after construction and validated eagerly, so the
rest of the package can assume well-formed inputs.  Probabilities are stored
as exact ``fractions.Fraction`` values; floating point enters only in the
sampling and quadrature modules.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Tuple

# Exact rational probability type used across the package.
Rational = Fraction

# Default resource caps.  They are arguments with defaults, not constants
# baked into the algorithms, so callers can raise or lower them.
MAX_EXPLICIT_SUPPORT = 10 ** 6


class CapExceededError(RuntimeError):
    """A configured resource cap would be exceeded.

    ``cap_name`` identifies which cap, so callers (the CLI in particular)
    can report it without parsing the message.
    """

    def __init__(self, cap_name: str, needed, cap) -> None:
        self.cap_name = cap_name
        self.needed = needed
        self.cap = cap
        super().__init__(f"cap '{cap_name}' exceeded: needed {needed}, cap {cap}")


class SupportTooLargeError(CapExceededError):
    """A culture's explicit support would exceed the support cap."""

    def __init__(self, needed, cap) -> None:
        super().__init__("max_support", needed, cap)


def parse_probability(text: str) -> Fraction:
    """Parse a probability string, either decimal ("0.25") or "num/den" ("1/6").

    Decimals are read exactly (over a power of ten), never through a float.
    """
    value = Fraction(str(text).strip())
    if value < 0:
        raise ValueError(f"negative weight {text!r}")
    if value > 1:
        raise ValueError(f"weight {text!r} exceeds 1")
    return value


@dataclass(frozen=True)
class Ranking:
    """A strict preference order: ``order[0]`` is the most preferred alternative.

    Alternatives are 0-based indices.  ``order`` must be a permutation of
    ``range(n)``.
    """

    order: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(int(a) for a in self.order))
        n = len(self.order)
        if n < 1:
            raise ValueError("ranking must cover at least one alternative")
        if sorted(self.order) != list(range(n)):
            raise ValueError(f"order {self.order} is not a permutation of 0..{n - 1}")

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def top(self) -> int:
        return self.order[0]

    @cached_property
    def positions(self) -> Tuple[int, ...]:
        """Inverse permutation: ``positions[a]`` is the rank of alternative ``a``
        (0 = most preferred).  Lets a preference test be two array reads."""
        pos = [0] * len(self.order)
        for rank, alt in enumerate(self.order):
            pos[alt] = rank
        return tuple(pos)

    def prefers(self, a: int, b: int) -> bool:
        """True if this ranking places ``a`` strictly above ``b``."""
        return self.positions[a] < self.positions[b]


def ranking_from_order(order: Sequence[int]) -> Ranking:
    """Validate an index sequence and wrap it as a :class:`Ranking`."""
    return Ranking(tuple(order))


def rotation_ranking(n: int, start: int) -> Ranking:
    """The cyclic order (start, start+1, ..., n-1, 0, ..., start-1)."""
    return Ranking(tuple((start + i) % n for i in range(n)))


@dataclass(frozen=True)
class Culture:
    """A probability distribution over rankings of ``n`` alternatives.

    ``kind`` is one of:

    * ``"explicit"``: finite support given by ``entries``.
    * ``"impartial"``: uniform over all n! rankings, kept symbolic (entries
      is None); expand only when n! fits under a support cap.
    * ``"cyclic"``: the n rotations of (0, 1, ..., n-1), each with weight
      1/n.  Entries are materialized since the support is only n rankings.

    Entries are (ranking, weight) pairs with exact rational weights summing
    to exactly 1.
    """

    n: int
    kind: str
    entries: Optional[Tuple[Tuple[Ranking, Fraction], ...]] = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("culture needs at least one alternative")
        if self.kind not in ("explicit", "impartial", "cyclic"):
            raise ValueError(f"unknown culture kind {self.kind!r}")
        if self.kind == "impartial":
            if self.entries is not None:
                raise ValueError("impartial culture keeps no explicit entries")
            return
        if not self.entries:
            raise ValueError(f"{self.kind} culture requires entries")
        object.__setattr__(
            self,
            "entries",
            tuple((r, Fraction(w)) for r, w in self.entries),
        )
        seen = set()
        total = Fraction(0)
        for ranking, weight in self.entries:
            if ranking.n != self.n:
                raise ValueError(
                    f"ranking {ranking.order} has {ranking.n} alternatives, culture has {self.n}"
                )
            if ranking.order in seen:
                raise ValueError(f"duplicate ranking {ranking.order}")
            seen.add(ranking.order)
            if weight < 0:
                raise ValueError(f"negative weight {weight} for ranking {ranking.order}")
            total += weight
        if total != 1:
            raise ValueError(f"weights sum to {total} != 1")
        if self.kind == "cyclic":
            expected = {rotation_ranking(self.n, s).order for s in range(self.n)}
            got = {r.order for r, _ in self.entries}
            share = Fraction(1, self.n)
            if got != expected or any(w != share for _, w in self.entries):
                raise ValueError("cyclic culture must hold exactly the n rotations, each 1/n")

    @property
    def support_size(self) -> int:
        if self.kind == "impartial":
            return math.factorial(self.n)
        return len(self.entries)

    def expand(self, max_support: int = MAX_EXPLICIT_SUPPORT) -> "Culture":
        """Materialize the support as an explicit culture.

        Impartial cultures expand to all n! rankings, which is refused when
        n! exceeds ``max_support``.
        """
        if self.kind == "explicit":
            return self
        if self.kind == "cyclic":
            return Culture(self.n, "explicit", self.entries)
        size = math.factorial(self.n)
        if size > max_support:
            raise SupportTooLargeError(size, max_support)
        from itertools import permutations

        w = Fraction(1, size)
        entries = tuple((Ranking(p), w) for p in permutations(range(self.n)))
        return Culture(self.n, "explicit", entries)

    def top_marginals(self) -> Tuple[Fraction, ...]:
        """x_j = P(ranking places alternative j first), exact, summing to 1."""
        if self.kind == "impartial":
            return (Fraction(1, self.n),) * self.n
        marginals = [Fraction(0)] * self.n
        for ranking, weight in self.entries:
            marginals[ranking.top] += weight
        return tuple(marginals)


def culture_from_entries(
    n: int, entries: Iterable[Tuple[Sequence[int], str]]
) -> Culture:
    """Build an explicit culture from (order, weight-string) pairs.

    Weight strings may be decimal ("0.25") or rational ("1/6"); both parse
    exactly.  Weights must sum to exactly 1.
    """
    built = tuple(
        (ranking_from_order(order), parse_probability(weight))
        for order, weight in entries
    )
    return Culture(n, "explicit", built)


def culture_to_json_obj(culture: Culture) -> dict:
    """Serializable form: ``{"n": ..., "entries": [...]}`` for explicit
    cultures, plus a ``"kind"`` tag for the symbolic ones."""
    obj: dict = {"n": culture.n}
    if culture.kind != "explicit":
        obj["kind"] = culture.kind
    if culture.entries is not None:
        obj["entries"] = [
            {"ranking": list(r.order), "p": str(w)} for r, w in culture.entries
        ]
    return obj


def culture_from_json_obj(obj: dict) -> Culture:
    if not isinstance(obj, dict) or "n" not in obj:
        raise ValueError("culture object must have an 'n' field")
    n = int(obj["n"])
    kind = obj.get("kind", "explicit")
    if kind == "impartial":
        return Culture(n, "impartial")
    raw = obj.get("entries")
    if not raw:
        raise ValueError("explicit culture object must have non-empty 'entries'")
    entries = tuple(
        (ranking_from_order(e["ranking"]), parse_probability(e["p"])) for e in raw
    )
    return Culture(n, kind, entries)


def save_culture(culture: Culture, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(culture_to_json_obj(culture), fh, indent=2)
        fh.write("\n")


def load_culture(path: str) -> Culture:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid culture file {path}: {exc}") from exc
    return culture_from_json_obj(obj)


@dataclass(frozen=True)
class Profile:
    """The realized rankings of one election: 2k-1 voters over n alternatives."""

    voters: Tuple[Ranking, ...]
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "voters", tuple(self.voters))
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if len(self.voters) != 2 * self.k - 1:
            raise ValueError(
                f"profile has {len(self.voters)} voters, expected 2k-1 = {2 * self.k - 1}"
            )
        n = self.voters[0].n
        if any(v.n != n for v in self.voters):
            raise ValueError("all rankings in a profile must cover the same alternatives")

    @property
    def n(self) -> int:
        return self.voters[0].n

    @property
    def voter_count(self) -> int:
        return len(self.voters)

    @cached_property
    def positions(self) -> Tuple[Tuple[int, ...], ...]:
        """Per-voter position arrays, computed once per profile."""
        return tuple(v.positions for v in self.voters)
