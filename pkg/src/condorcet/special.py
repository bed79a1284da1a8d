"""Analytic kernel: elementary symmetric polynomials, Poisson binomial tails,
and the majority tail of an odd binomial with its closed-form derivative.

``majority_tail(k, x)`` is the probability that a coin with heads
probability x shows at least k heads in 2k-1 tosses.  It drives both the
minimum-probability closed form and the marginal lower bound, so it comes
in a float version and an exact rational twin.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence, Union

Number = Union[int, float, Fraction]


def elementary_symmetric(ell: int, xs: Sequence[float]):
    """The ell-th elementary symmetric polynomial of ``xs``.

    One-pass dynamic program over prefix polynomials: after absorbing x the
    coefficient e[j] becomes e[j] + x * e[j-1].  O(len(xs) * ell) time, all
    additions of non-negative terms for non-negative inputs, so no
    cancellation blow-up.  Works for floats and Fractions alike.
    """
    m = len(xs)
    if not 1 <= ell <= m:
        raise ValueError(f"order {ell} out of range for {m} inputs")
    zero = xs[0] * 0
    e: List = [zero] * (ell + 1)
    e[0] = zero + 1
    for i, x in enumerate(xs):
        for j in range(min(i + 1, ell), 0, -1):
            e[j] = e[j] + x * e[j - 1]
    return e[ell]


def poisson_binomial_tail(xs: Sequence[float], k: int) -> float:
    """P(at least k successes) for independent Bernoulli(x_i) trials.

    Count-distribution dynamic program: dp[j] = P(j successes among the
    trials absorbed so far).  O(m^2) time, every term non-negative, exact up
    to rounding.  The trial count must be 2k-1 (the odd-election setting).
    """
    m = len(xs)
    if m != 2 * k - 1:
        raise ValueError(f"expected 2k-1 = {2 * k - 1} coordinates, got {m}")
    for x in xs:
        if not 0.0 <= x <= 1.0:
            raise ValueError(f"coordinate {x} outside [0, 1]")
    dp = [0.0] * (m + 1)
    dp[0] = 1.0
    for i, x in enumerate(xs):
        q = 1.0 - x
        for j in range(i + 1, 0, -1):
            dp[j] = dp[j] * q + dp[j - 1] * x
        dp[0] = dp[0] * q
    return float(sum(dp[k:]))


def majority_tail(k: int, x: float) -> float:
    """P(at least k heads in 2k-1 tosses of a coin with heads probability x).

    Direct evaluation of sum_{l=0}^{k-1} C(2k-1, l) x^(2k-1-l) (1-x)^l;
    all terms are non-negative, so the sum is stable.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x={x} outside [0, 1]")
    m = 2 * k - 1
    one_minus = 1.0 - x
    total = 0.0
    for l in range(k):
        total += math.comb(m, l) * x ** (m - l) * one_minus ** l
    return total


def majority_tail_exact(k: int, x: Number) -> Fraction:
    """Exact rational twin of :func:`majority_tail` for rational x."""
    if k < 1:
        raise ValueError("k must be at least 1")
    xf = Fraction(x)
    if not 0 <= xf <= 1:
        raise ValueError(f"x={x} outside [0, 1]")
    m = 2 * k - 1
    one_minus = 1 - xf
    total = Fraction(0)
    for l in range(k):
        total += math.comb(m, l) * xf ** (m - l) * one_minus ** l
    return total


def majority_tail_derivative(k: int, x: float) -> float:
    """d/dx of :func:`majority_tail`: (2k-1)! / ((k-1)!)^2 * (x(1-x))^(k-1).

    The coefficient is computed in log space for large k to avoid factorial
    overflow; for k=1 the derivative is identically 1.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x={x} outside [0, 1]")
    if k == 1:
        return 1.0
    if k <= 20:
        coeff = float(math.factorial(2 * k - 1) // (math.factorial(k - 1) ** 2))
    else:
        coeff = math.exp(math.lgamma(2 * k) - 2.0 * math.lgamma(k))
    return coeff * (x * (1.0 - x)) ** (k - 1)
