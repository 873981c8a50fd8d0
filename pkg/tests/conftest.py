"""
Shared shift fixtures.
"""

import itertools

import pytest

from shifts.language import RunWord, ShiftSpec, Variant, is_in_language
from shifts.sets import BoundedExplicitSet, CofiniteSet, FiniteSet, PeriodicDeltaSet

NATURALS = CofiniteSet(())
EVENS = PeriodicDeltaSet((2,), (2,))
ODDS = PeriodicDeltaSet((1,), (2,))
PRIMES_TO_100 = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
)


def brute_force_words(shift, n):
    """Every word of {1..p}^n accepted by is_in_language."""
    return [
        RunWord.from_letters(letters)
        for letters in itertools.product(shift.letters, repeat=n)
        if is_in_language(shift, RunWord.from_letters(letters))
    ]


@pytest.fixture
def golden():
    return ShiftSpec(2, (FiniteSet((1,)), NATURALS), name="golden")


@pytest.fixture
def even():
    return ShiftSpec(2, (NATURALS, EVENS), name="even")


@pytest.fixture
def odds():
    return ShiftSpec(2, (ODDS, ODDS), name="odds")


@pytest.fixture
def full2():
    return ShiftSpec(2, (NATURALS, NATURALS), name="full2")


@pytest.fixture
def full3():
    return ShiftSpec(3, (NATURALS, NATURALS, NATURALS), name="full3")


@pytest.fixture
def full_generalized():
    return ShiftSpec(2, (NATURALS, NATURALS), Variant.GENERALIZED, name="full_generalized")


@pytest.fixture
def single_orbit():
    return ShiftSpec(2, (FiniteSet((2,)), FiniteSet((3,))), name="single_orbit")


@pytest.fixture
def ex51_S():
    return ShiftSpec(3, (NATURALS, EVENS, FiniteSet((3, 5))), name="ex51_S")


@pytest.fixture
def ex51_T():
    return ShiftSpec(3, (NATURALS, PeriodicDeltaSet((3,), (2,)), FiniteSet((2, 4))), name="ex51_T")


@pytest.fixture
def primes():
    return ShiftSpec(2, (FiniteSet((1,)), BoundedExplicitSet(PRIMES_TO_100, 100)), name="primes")


@pytest.fixture
def finite3():
    return ShiftSpec(3, (FiniteSet((1, 2)), FiniteSet((2,)), FiniteSet((1, 3))), name="finite3")


@pytest.fixture
def brute_force():
    return brute_force_words
