"""
Unit tests for the shift language module.
"""

import itertools
import math

import numpy as np
import pytest

from shifts.errors import (
    EnumerationCapExceeded,
    ParseError,
    SetSpecError,
    UnknownMembership,
    VariantMismatch,
    WordNotInLanguage,
)
from shifts.language import (
    CoreBlock,
    RunWord,
    ShiftSpec,
    boundary_growth,
    boundary_word_counts,
    core_blocks_up_to,
    count_words,
    decompose,
    enumerate_words,
    find_connector,
    in_prefix_class,
    in_suffix_class,
    is_in_language,
    is_periodic_word,
    length_spectrum,
    periodic_points,
    periodic_words,
    split_core_blocks,
)
from shifts.sets import CofiniteSet

FIXTURES = ['golden', 'even', 'odds', 'single_orbit', 'full3', 'ex51_S', 'full_generalized', 'finite3']


def w(text):
    return RunWord.parse(text)


class TestRunWord:
    """Test cases for the RunWord type."""

    def test_parse_flat_and_runs(self):
        """Test that both text forms give the same word."""
        assert w("1221") == w("1^1 2^2 1^1")
        assert w("1221").runs == ((1, 1), (2, 2), (1, 1))

    def test_length_and_letters(self):
        """Test length and letter expansion."""
        word = w("3122")
        assert len(word) == 4
        assert word.letters() == (3, 1, 2, 2)

    def test_concatenation_merges_runs(self):
        """Test that concatenation merges equal neighbouring letters."""
        assert (w("12") + w("21")).runs == ((1, 1), (2, 2), (1, 1))

    def test_format_large_alphabet(self):
        """Test run form for alphabets past 9."""
        word = RunWord(((10, 2), (1, 1)))
        assert word.format(10) == "10^2 1^1"
        assert word.format() == "10^2 1^1"

    def test_parse_errors(self):
        """Test that malformed text raises ParseError."""
        with pytest.raises(ParseError):
            RunWord.parse("12a")
        with pytest.raises(ParseError):
            RunWord.parse("1^x")

    def test_empty_word(self):
        """Test the empty word."""
        assert RunWord.parse("").is_empty
        assert len(RunWord()) == 0


class TestShiftSpec:
    """Test cases for ShiftSpec construction."""

    def test_alphabet_of_one_rejected(self):
        """Test that p = 1 is rejected."""
        with pytest.raises(SetSpecError):
            ShiftSpec(1, (CofiniteSet(()),))

    def test_set_count_must_match(self):
        """Test that one set per letter is required."""
        with pytest.raises(SetSpecError):
            ShiftSpec(3, (CofiniteSet(()), CofiniteSet(())))

    def test_cyclic_order(self, full3):
        """Test successor letters in the ordered variant."""
        assert full3.successors(1) == [2]
        assert full3.successors(3) == [1]
        assert full3.predecessors(1) == [3]

    def test_generalized_order(self, full_generalized):
        """Test that any different letter may follow in the generalized variant."""
        assert full_generalized.successors(2) == [1]
        assert full_generalized.allows(1, 2) and full_generalized.allows(2, 1)
        assert not full_generalized.allows(1, 1)


class TestMembership:
    """Test cases for is_in_language."""

    def test_golden_words(self, golden):
        """Test words with and without adjacent 1s."""
        assert is_in_language(golden, w("21212"))
        assert not is_in_language(golden, w("2112"))

    def test_boundary_runs_only_extendable(self, even):
        """Test that cut runs at the ends need not be members."""
        assert is_in_language(even, w("2221"))
        assert is_in_language(even, w("1222"))
        assert not is_in_language(even, w("12221"))
        assert is_in_language(even, w("122221"))

    def test_ordered_letter_order(self, full3):
        """Test that letters must follow the cyclic order."""
        assert is_in_language(full3, w("123312"))
        assert not is_in_language(full3, w("132"))

    def test_bounded_unknown(self, primes):
        """Test that membership past the bound is unknown."""
        assert is_in_language(primes, w("1221"))
        assert not is_in_language(primes, w("122221"))
        long_run = RunWord(((1, 1), (2, 101), (1, 1)))
        with pytest.raises(UnknownMembership):
            is_in_language(primes, long_run)

    def test_definite_no_wins_over_unknown(self, primes):
        """Test that a failing run settles the answer before an unknown one."""
        word = RunWord(((2, 101), (1, 1), (2, 4), (1, 1)))
        assert not is_in_language(primes, word)


class TestCounting:
    """Test cases for count_words and enumerate_words."""

    def test_golden_counts(self, golden):
        """Test the Fibonacci word counts of the golden mean shift."""
        assert count_words(golden, 2) == 3
        assert count_words(golden, 4) == 8
        assert count_words(golden, 10) == 144

    def test_golden_enumeration(self, golden):
        """Test the listed words of length 1 and 2."""
        assert enumerate_words(golden, 1) == [w("1"), w("2")]
        assert enumerate_words(golden, 2) == [w("12"), w("21"), w("22")]

    @pytest.mark.parametrize("name", FIXTURES)
    def test_count_matches_brute_force(self, name, request, brute_force):
        """Test count_words against filtering every word of {1..p}^n."""
        shift = request.getfixturevalue(name)
        top = 12 if shift.p == 2 else 9
        for n in range(1, top + 1):
            assert count_words(shift, n) == len(brute_force(shift, n))

    @pytest.mark.parametrize("name", ['full3', 'ex51_S', 'finite3'])
    def test_count_matches_enumeration_to_twelve(self, name, request):
        """Test count_words against the listed words for p = 3 up to n = 12."""
        shift = request.getfixturevalue(name)
        for n in range(1, 13):
            assert count_words(shift, n) == len(enumerate_words(shift, n)), n

    @pytest.mark.parametrize("name", FIXTURES)
    def test_enumeration_matches_brute_force(self, name, request, brute_force):
        """Test enumerate_words against the brute-force list, in order."""
        shift = request.getfixturevalue(name)
        for n in range(1, 7):
            assert enumerate_words(shift, n) == brute_force(shift, n)

    @pytest.mark.parametrize("name", ['golden', 'even', 'ex51_S'])
    def test_subword_closed(self, name, request):
        """Test that both length-(n-1) subwords of each word are listed."""
        shift = request.getfixturevalue(name)
        for n in range(2, 9):
            shorter = set(enumerate_words(shift, n - 1))
            for word in enumerate_words(shift, n):
                assert word.slice(0, n - 1) in shorter
                assert word.slice(1, n) in shorter

    def test_enumeration_cap(self, golden):
        """Test that lengths past the cap are refused."""
        with pytest.raises(EnumerationCapExceeded):
            enumerate_words(golden, 25)
        assert len(enumerate_words(golden, 5, cap=5)) == 13

    def test_generalized_full_shift(self, full_generalized):
        """Test that the generalized full 2-shift has 2^n words."""
        assert count_words(full_generalized, 8) == 256


class TestCoreBlocks:
    """Test cases for core blocks and the length spectrum."""

    def test_golden_blocks(self, golden):
        """Test the blocks 12 and 122."""
        assert core_blocks_up_to(golden, 3) == [CoreBlock((1, 1)), CoreBlock((1, 2))]

    def test_even_blocks(self, even):
        """Test the blocks of length at most 4 of the even shift."""
        assert core_blocks_up_to(even, 4) == [CoreBlock((1, 2)), CoreBlock((2, 2))]

    def test_golden_spectrum(self, golden):
        """Test one block per length from 2 on."""
        spectrum = length_spectrum(golden, 10)
        assert spectrum.count(1) == 0
        assert spectrum.count(2) == 1
        assert spectrum.count(3) == 1
        assert spectrum.count(10) == 1

    def test_even_spectrum(self, even):
        """Test c_3 = 1, c_4 = 1, c_5 = 2 for the even shift."""
        spectrum = length_spectrum(even, 5)
        assert spectrum.counts == (0, 0, 1, 1, 2)

    @pytest.mark.parametrize("name", ['golden', 'even', 'odds', 'ex51_S', 'full3', 'finite3'])
    def test_spectrum_matches_blocks(self, name, request):
        """Test the spectrum against bucketed core blocks."""
        shift = request.getfixturevalue(name)
        spectrum = length_spectrum(shift, 40)
        buckets = [0] * 40
        for block in core_blocks_up_to(shift, 40):
            buckets[block.length - 1] += 1
        assert list(spectrum.counts) == buckets

    @pytest.mark.parametrize("name", ['full3', 'ex51_S'])
    def test_spectrum_below_binomial(self, name, request):
        """Test c_l ≤ C(l-1, p-1)."""
        shift = request.getfixturevalue(name)
        for l, c in length_spectrum(shift, 60).as_dict().items():
            assert c <= math.comb(l - 1, shift.p - 1)

    def test_large_counts_stay_exact(self):
        """Test exact counts past the int64 range."""
        shift = ShiftSpec(12, tuple(CofiniteSet(()) for _ in range(12)))
        spectrum = length_spectrum(shift, 400)
        assert spectrum.count(400) == math.comb(399, 11)
        assert spectrum.count(400) > 2 ** 63

    def test_generalized_rejected(self, full_generalized):
        """Test that core blocks need the ordered variant."""
        with pytest.raises(VariantMismatch):
            length_spectrum(full_generalized, 5)


class TestPeriodicPoints:
    """Test cases for periodic point counting."""

    def test_golden_lucas_numbers(self, golden):
        """Test counts 1, 3, 4, 7, 11, 18."""
        assert [periodic_points(golden, n) for n in range(1, 7)] == [1, 3, 4, 7, 11, 18]

    def test_golden_matrix_traces(self, golden):
        """Test counts against traces of powers of the golden mean matrix."""
        matrix = np.array([[1, 1], [1, 0]])
        for n in range(1, 11):
            assert periodic_points(golden, n) == int(np.trace(np.linalg.matrix_power(matrix, n)))

    @pytest.mark.parametrize("name", FIXTURES)
    def test_matches_necklace_brute_force(self, name, request):
        """Test counts against filtering every cyclic word."""
        shift = request.getfixturevalue(name)
        top = 10 if shift.p == 2 else 7
        for n in range(1, top + 1):
            brute = sum(
                1 for letters in itertools.product(shift.letters, repeat=n)
                if is_periodic_word(shift, RunWord.from_letters(letters))
            )
            assert periodic_points(shift, n) == brute
            assert len(periodic_words(shift, n)) == brute

    def test_single_orbit(self, single_orbit):
        """Test that one block of length 5 gives five points of period 5."""
        assert [periodic_points(single_orbit, n) for n in range(1, 11)] == [0, 0, 0, 0, 5, 0, 0, 0, 0, 5]

    def test_run_across_seam(self, golden):
        """Test that a run may wrap around the period."""
        assert is_periodic_word(golden, w("2122"))
        assert not is_periodic_word(golden, w("1221"))

    def test_constant_point_needs_infinite_set(self, golden):
        """Test constant points."""
        assert is_periodic_word(golden, w("222"))
        assert not is_periodic_word(golden, w("11"))


class TestConnectors:
    """Test cases for find_connector."""

    def test_golden_connector(self, golden):
        """Test the connector 2 between 21 and 12."""
        assert find_connector(golden, w("21"), w("12"), 1) == w("2")

    def test_odd_runs_need_odd_connectors(self, odds):
        """Test that no even-length connector joins 21 to 12 when runs are odd."""
        for n in range(0, 21, 2):
            assert find_connector(odds, w("21"), w("12"), n) is None, n
        assert find_connector(odds, w("21"), w("12"), 1) is not None

    def test_word_outside_language(self, golden):
        """Test that endpoints must be in the language."""
        with pytest.raises(WordNotInLanguage):
            find_connector(golden, w("11"), w("2"), 1)

    def test_irreducibility_witness(self, ex51_S):
        """Test that sampled pairs of words are joined by short connectors."""
        sample = enumerate_words(ex51_S, 6)[::9]
        for u in sample[:4]:
            for v in sample[:4]:
                assert any(find_connector(ex51_S, u, v, n) is not None for n in range(20))


class TestDecomposition:
    """Test cases for the prefix · core · suffix factoring."""

    def test_pure_core(self, golden):
        """Test a concatenation of core blocks."""
        parts = decompose(golden, w("1212"))
        assert (parts.prefix, parts.core, parts.suffix) == (RunWord(), w("1212"), RunWord())
        assert parts.blocks == (CoreBlock((1, 1)), CoreBlock((1, 1)))

    def test_leading_tail(self, golden):
        """Test 2212 = 22 · 12 · ε."""
        parts = decompose(golden, w("2212"))
        assert (parts.prefix, parts.core, parts.suffix) == (w("22"), w("12"), RunWord())

    def test_trailing_start(self, golden):
        """Test 1221 = ε · 122 · 1."""
        parts = decompose(golden, w("1221"))
        assert (parts.prefix, parts.core, parts.suffix) == (RunWord(), w("122"), w("1"))

    def test_word_outside_language(self, golden):
        """Test that words outside the language are rejected."""
        with pytest.raises(WordNotInLanguage):
            decompose(golden, w("11"))

    @pytest.mark.parametrize("name", ['golden', 'full3', 'ex51_S'])
    def test_every_word_factors(self, name, request):
        """Test that each word factors into valid parts that re-concatenate."""
        shift = request.getfixturevalue(name)
        for n in range(1, 13):
            for word in enumerate_words(shift, n):
                parts = decompose(shift, word)
                assert parts.prefix + parts.core + parts.suffix == word
                assert split_core_blocks(shift, parts.core) == list(parts.blocks)
                assert parts.prefix.is_empty or in_prefix_class(shift, parts.prefix)
                assert parts.suffix.is_empty or in_suffix_class(shift, parts.suffix)


class TestBoundaryClasses:
    """Test cases for the prefix and suffix classes."""

    def test_prefix_class_members(self, golden):
        """Test tails of blocks that end with a complete 2-run."""
        assert in_prefix_class(golden, w("22"))
        assert not in_prefix_class(golden, w("12"))
        assert not in_prefix_class(golden, w("21"))

    def test_suffix_class_members(self, full3):
        """Test words sitting strictly inside one block."""
        assert in_suffix_class(full3, w("2"))
        assert in_suffix_class(full3, w("1223"))
        assert not in_suffix_class(full3, w("31"))

    def test_full_shift_prefix_growth(self, full2):
        """Test |B_n(C^P)| = n for the full shift on two ordered letters."""
        for n in range(1, 31):
            assert boundary_word_counts(full2, n)[0] == n

    @pytest.mark.parametrize("name", ['golden', 'full3', 'ex51_S'])
    def test_counts_match_enumeration(self, name, request):
        """Test boundary counts against filtering the language."""
        shift = request.getfixturevalue(name)
        for n in range(1, 7):
            words = enumerate_words(shift, n)
            prefixes = sum(1 for word in words if in_prefix_class(shift, word))
            suffixes = sum(1 for word in words if in_suffix_class(shift, word))
            assert boundary_word_counts(shift, n) == (prefixes, suffixes)

    def test_growth_table(self, golden):
        """Test the growth table records."""
        table = boundary_growth(golden, 4)
        assert [row['n'] for row in table] == [1, 2, 3, 4]
        assert table[3]['words'] == 8
