import math
from fractions import Fraction

import pytest

from condorcet.cultures import cyclic_culture, impartial_culture
from condorcet.exact import (
    condorcet_probability,
    marginal_lower_bound,
    min_condorcet_probability,
)
from condorcet.model import CapExceededError, SupportTooLargeError, culture_from_entries
from condorcet.special import majority_tail_exact


def test_impartial_three_alternatives_three_voters():
    result = condorcet_probability(impartial_culture(3), 2)
    assert result.value == Fraction(17, 18)
    assert result.method == "enumeration"


def test_two_alternatives_always_have_a_winner():
    # with n=2 the majority direction is the winner, whatever the culture
    for k in (1, 2, 3):
        assert condorcet_probability(impartial_culture(2), k).value == 1
    assert condorcet_probability(cyclic_culture(2), 2).value == 1
    biased = culture_from_entries(2, [((0, 1), "0.9"), ((1, 0), "0.1")])
    assert condorcet_probability(biased, 2).value == 1


def test_single_alternative_trivially_wins():
    assert condorcet_probability(impartial_culture(1), 3).value == 1


def test_per_alternative_decomposition():
    result = condorcet_probability(impartial_culture(4), 2)
    assert result.value == Fraction(8, 9)
    # symmetry of the uniform culture: every alternative wins equally often
    assert result.per_alternative == (Fraction(2, 9),) * 4
    assert sum(result.per_alternative) == result.value

    skew = culture_from_entries(
        3, [((0, 1, 2), "2/3"), ((1, 2, 0), "1/6"), ((2, 0, 1), "1/6")]
    )
    skewed = condorcet_probability(skew, 2)
    assert sum(skewed.per_alternative) == skewed.value
    assert skewed.per_alternative[0] > skewed.per_alternative[1]


def test_result_independent_of_workers():
    culture = impartial_culture(4)
    alone = condorcet_probability(culture, 2, workers=1)
    pooled = condorcet_probability(culture, 2, workers=4)
    assert alone == pooled


def test_winner_check_cap():
    with pytest.raises(CapExceededError) as exc:
        condorcet_probability(impartial_culture(4), 2, max_winner_checks=100)
    assert exc.value.cap_name == "max_winner_checks"
    assert exc.value.needed == math.comb(24 + 2, 3)


def test_support_cap():
    with pytest.raises(SupportTooLargeError):
        condorcet_probability(impartial_culture(10), 2)
    with pytest.raises(SupportTooLargeError):
        condorcet_probability(impartial_culture(4), 2, max_support=10)


def test_rejects_bad_k():
    with pytest.raises(ValueError):
        condorcet_probability(impartial_culture(3), 0)
    with pytest.raises(ValueError):
        min_condorcet_probability(3, 0)
    with pytest.raises(ValueError):
        marginal_lower_bound(impartial_culture(3), -1)


def test_min_probability_closed_form_values():
    assert min_condorcet_probability(3, 2) == Fraction(7, 9)
    assert min_condorcet_probability(5, 3) == Fraction(181, 625)
    # n <= 2 or k = 1: some alternative always wins
    for k in (1, 2, 5):
        assert min_condorcet_probability(1, k) == 1
        assert min_condorcet_probability(2, k) == 1
    for n in (3, 10, 41):
        assert min_condorcet_probability(n, 1) == 1


def test_cyclic_culture_attains_the_minimum():
    for n in (3, 4, 5):
        for k in (1, 2):
            enumerated = condorcet_probability(cyclic_culture(n), k).value
            assert enumerated == min_condorcet_probability(n, k)


def test_min_probability_equals_scaled_tail():
    # the closed form is n times the majority tail at 1/n, exactly
    for n in range(1, 13):
        for k in range(1, 5):
            assert min_condorcet_probability(n, k) == n * majority_tail_exact(
                k, Fraction(1, n)
            )


def test_marginal_bound_uniform_case():
    for n in (3, 4, 6):
        for k in (1, 2, 3):
            bound = marginal_lower_bound(impartial_culture(n), k)
            assert bound == n * majority_tail_exact(k, Fraction(1, n))


def test_marginal_bound_is_a_lower_bound():
    culture = culture_from_entries(
        3, [((0, 1, 2), "1/2"), ((1, 0, 2), "1/2")]
    )
    # both top marginals are 1/2, so the bound is 2 * tail(k, 1/2) = 1, and
    # alternative 2 never wins: one of 0, 1 holds the majority and beats both
    for k in (1, 2, 3):
        assert marginal_lower_bound(culture, k) == 1
        assert condorcet_probability(culture, k).value == 1

    point_mass = culture_from_entries(3, [((2, 0, 1), "1")])
    assert marginal_lower_bound(point_mass, 2) == 1
    assert condorcet_probability(point_mass, 2).value == 1


def test_marginal_bound_below_exact_on_skewed_culture():
    culture = culture_from_entries(
        4,
        [
            ((0, 1, 2, 3), "1/3"),
            ((1, 2, 3, 0), "1/4"),
            ((2, 3, 0, 1), "1/4"),
            ((3, 0, 1, 2), "1/6"),
        ],
    )
    for k in (1, 2):
        bound = marginal_lower_bound(culture, k)
        exact = condorcet_probability(culture, k).value
        assert bound <= exact
