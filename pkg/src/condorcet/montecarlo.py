"""Monte Carlo estimation of Condorcet winner probability.

The sample space is split into fixed-size chunks; chunk i is generated by a
fresh PCG64 generator seeded with mix64(seed, n, k, i, STREAM_VERSION).
Workers only decide which thread evaluates a chunk, and the merge is an
integer sum of winner counts, so p_hat depends on (seed, version) alone and
is identical for any worker count.

The winner kernel is the candidate-elimination scan, vectorized over a whole
chunk of profiles at once on position arrays: O(n) numpy passes for the
elimination, one tensor pass for verification.
"""

from __future__ import annotations

import math
import secrets
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .engine import find_condorcet_winner
from .model import Culture, Profile, Ranking
from .cultures import STREAM_VERSION, cyclic_culture, impartial_culture, mix64

CHUNK_SAMPLES = 1 << 14

_Z95 = 1.96


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo estimate with binomial error and clamped normal 95% CI."""

    p_hat: float
    samples: int
    std_error: float
    ci_low: float
    ci_high: float
    seed: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_hat <= 1.0:
            raise ValueError(f"p_hat {self.p_hat} outside [0, 1]")


def _position_dtype(n: int):
    return np.int16 if n <= 2 ** 15 - 1 else np.int32


def _sample_positions(
    culture: Culture, k: int, size: int, rng: np.random.Generator
) -> np.ndarray:
    """Position tensors for ``size`` profiles: out[b, v, a] is the rank voter
    v of profile b gives alternative a."""
    n = culture.n
    voters = 2 * k - 1
    dtype = _position_dtype(n)
    if culture.kind == "impartial":
        # A uniform permutation's inverse is uniform, so the generated
        # permutation can serve directly as the position array.
        flat = np.tile(np.arange(n, dtype=dtype), (size * voters, 1))
        flat = rng.permuted(flat, axis=1)
        return flat.reshape(size, voters, n)
    if culture.kind == "cyclic":
        starts = rng.integers(0, n, size=(size, voters), dtype=np.int32)
        alts = np.arange(n, dtype=np.int32)[None, None, :]
        return np.mod(alts - starts[:, :, None], n).astype(dtype)
    weights = np.array([float(w) for _, w in culture.entries])
    cum = np.cumsum(weights)
    cum[-1] = 1.0
    table = np.array([r.positions for r, _ in culture.entries], dtype=dtype)
    idx = np.searchsorted(cum, rng.random((size, voters)), side="right")
    np.clip(idx, 0, len(culture.entries) - 1, out=idx)
    return table[idx]


def _count_winners_vectorized(pos: np.ndarray, k: int) -> int:
    """Number of profiles in the chunk that have a Condorcet winner."""
    size, voters, n = pos.shape
    champion = np.zeros(size, dtype=np.int64)
    champion_pos = pos[:, :, 0].copy()
    for challenger in range(1, n):
        cand = pos[:, :, challenger]
        beats = (cand < champion_pos).sum(axis=1) >= k
        champion = np.where(beats, challenger, champion)
        champion_pos = np.where(beats[:, None], cand, champion_pos)
    champ_col = np.take_along_axis(pos, champion[:, None, None], axis=2)
    pairwise_wins = (champ_col < pos).sum(axis=1) >= k
    return int((pairwise_wins.sum(axis=1) == n - 1).sum())


def _count_winners_naive(pos: np.ndarray, k: int) -> int:
    """Debug path: route every profile through the all-pairs engine check."""
    count = 0
    for block in pos:
        voters = tuple(
            Ranking(tuple(int(a) for a in np.argsort(row, kind="stable")))
            for row in block
        )
        if find_condorcet_winner(Profile(voters, k), naive=True).exists:
            count += 1
    return count


def _chunk_layout(samples: int, chunk: int) -> List[Tuple[int, int]]:
    return [(i, min(chunk, samples - lo)) for i, lo in enumerate(range(0, samples, chunk))]


def estimate_condorcet_probability(
    culture: Culture,
    k: int,
    samples: int,
    seed: Optional[int] = None,
    workers: int = 1,
    chunk: int = CHUNK_SAMPLES,
    naive: bool = False,
) -> Estimate:
    """Estimate P(Condorcet winner exists) from i.i.d. sampled profiles.

    Unbiased indicator mean; deterministic for a fixed (seed, version)
    regardless of ``workers``.  ``naive=True`` swaps in the per-profile
    all-pairs winner check (slow, for cross-validation).
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if k < 1:
        raise ValueError("k must be at least 1")
    if seed is None:
        seed = secrets.randbits(63)
    counter = _count_winners_naive if naive else _count_winners_vectorized

    def run_chunk(task: Tuple[int, int]) -> int:
        index, size = task
        rng = np.random.default_rng(mix64(seed, culture.n, k, index, STREAM_VERSION))
        pos = _sample_positions(culture, k, size, rng)
        return counter(pos, k)

    tasks = _chunk_layout(samples, chunk)
    if workers <= 1 or len(tasks) == 1:
        wins = sum(run_chunk(t) for t in tasks)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            wins = sum(pool.map(run_chunk, tasks))

    p_hat = wins / samples
    std_error = math.sqrt(p_hat * (1.0 - p_hat) / samples)
    ci_low = max(0.0, p_hat - _Z95 * std_error)
    ci_high = min(1.0, p_hat + _Z95 * std_error)
    return Estimate(p_hat, samples, std_error, ci_low, ci_high, seed)


_FAMILIES = {"impartial": impartial_culture, "cyclic": cyclic_culture}


def sweep(
    family: str,
    k: int,
    n_values: Sequence[int],
    samples: int,
    seed: Optional[int] = None,
    workers: int = 1,
) -> List[Tuple[int, Estimate]]:
    """One estimate per n for a named culture family.

    Each cell runs with its own seed mix64(master, n, k), recorded in the
    cell's Estimate, so any cell can be reproduced in isolation.
    """
    if family not in _FAMILIES:
        raise ValueError(f"unknown culture family {family!r}")
    if seed is None:
        seed = secrets.randbits(63)
    build = _FAMILIES[family]
    results = []
    for n in n_values:
        cell_seed = mix64(seed, n, k)
        estimate = estimate_condorcet_probability(
            build(n), k, samples, seed=cell_seed, workers=workers
        )
        results.append((int(n), estimate))
    return results
