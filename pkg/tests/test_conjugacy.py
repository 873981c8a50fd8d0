"""
Unit tests for the conjugacy module.
"""

import numpy as np
import pytest

from dynamics.conjugacy import (
    BlockMap,
    CoreBijection,
    OffsetVector,
    Refutation,
    TransitionKind,
    apply_block_map,
    apply_block_map_cyclic,
    build_psi,
    compute_pi,
    length_spectra_equal,
    periodic_counts_equal,
    sufficient_offsets,
    synthesize_block_map,
    transition_points,
    verify_conjugacy_evidence,
)
from shifts.errors import (
    AlphabetSizeMismatch,
    BlockMapError,
    InvalidOffsets,
    UnknownMembership,
    WordTooShort,
)
from shifts.generator import random_sofic_specs
from shifts.language import CoreBlock, RunWord, ShiftSpec, core_blocks_up_to, periodic_words
from shifts.sets import CofiniteSet, FiniteSet, PeriodicDeltaSet

NATURALS = CofiniteSet(())


def w(text):
    return RunWord.parse(text)


class TestNecessaryConditions:
    """Test cases for spectrum and periodic point comparisons."""

    def test_conjugate_pair_spectra(self, ex51_S, ex51_T):
        """Test equal spectra for a pair related by offsets."""
        assert length_spectra_equal(ex51_S, ex51_T, 30).equal

    def test_conjugate_pair_periodic_counts(self, ex51_S, ex51_T):
        """Test equal periodic counts for a pair related by offsets."""
        assert periodic_counts_equal(ex51_S, ex51_T, 12).equal

    def test_spectrum_mismatch(self):
        """Test the first differing block length."""
        S = ShiftSpec(2, (FiniteSet((1,)), NATURALS))
        T = ShiftSpec(2, (FiniteSet((2,)), NATURALS))
        result = length_spectra_equal(S, T, 10)
        assert (result.equal, result.first_mismatch, result.left, result.right) == (False, 2, 1, 0)

    def test_periodic_mismatch(self, golden, single_orbit):
        """Test the first differing period."""
        result = periodic_counts_equal(golden, single_orbit, 5)
        assert (result.equal, result.first_mismatch, result.left, result.right) == (False, 1, 1, 0)

    def test_spectra_across_alphabets(self, golden, full3):
        """Test that spectra may be compared across alphabet sizes."""
        assert not length_spectra_equal(golden, full3, 5).equal


class TestSufficientOffsets:
    """Test cases for sufficient_offsets."""

    def test_example_pair(self, ex51_S, ex51_T):
        """Test d = (0, 1, -1)."""
        assert sufficient_offsets(ex51_S, ex51_T) == OffsetVector((0, 1, -1))
        assert OffsetVector((0, 1, -1)).partial_sums() == (0, 1)

    def test_self_pair(self, golden):
        """Test zero offsets between a shift and itself."""
        assert sufficient_offsets(golden, golden) == OffsetVector((0, 0))

    def test_sum_refutation(self):
        """Test that offsets must sum to zero."""
        S = ShiftSpec(2, (FiniteSet((1,)), NATURALS))
        T = ShiftSpec(2, (FiniteSet((2,)), NATURALS))
        result = sufficient_offsets(S, T)
        assert isinstance(result, Refutation)
        assert result.letter is None

    def test_cardinality_refutation(self):
        """Test a finite set against a larger finite set."""
        S = ShiftSpec(2, (NATURALS, FiniteSet((1,))))
        T = ShiftSpec(2, (NATURALS, FiniteSet((1, 2))))
        result = sufficient_offsets(S, T)
        assert (result.letter, result.index) == (2, 2)

    def test_infinite_against_finite(self):
        """Test an infinite set against a finite one."""
        S = ShiftSpec(2, (NATURALS, NATURALS))
        T = ShiftSpec(2, (NATURALS, FiniteSet((1,))))
        result = sufficient_offsets(S, T)
        assert (result.letter, result.index) == (2, 2)

    def test_element_refutation(self):
        """Test the first element that breaks a constant offset."""
        S = ShiftSpec(2, (NATURALS, PeriodicDeltaSet((2,), (2,))))
        T = ShiftSpec(2, (NATURALS, CofiniteSet((1,))))
        result = sufficient_offsets(S, T)
        assert (result.letter, result.index) == (2, 2)

    def test_alphabet_mismatch(self, golden, full3):
        """Test that offsets need equal alphabets."""
        with pytest.raises(AlphabetSizeMismatch):
            sufficient_offsets(golden, full3)

    def test_explicit_sets_refused(self, primes, golden):
        """Test that bounded explicit sets are refused."""
        with pytest.raises(UnknownMembership):
            sufficient_offsets(primes, golden)


class TestCoreBijection:
    """Test cases for ψ."""

    def test_example_images(self, ex51_S, ex51_T):
        """Test that ψ adds the offsets to every exponent."""
        psi = build_psi(ex51_S, ex51_T, (0, 1, -1))
        assert isinstance(psi, CoreBijection)
        assert psi(CoreBlock((1, 2, 3))) == CoreBlock((1, 3, 2))
        assert psi(CoreBlock((2, 4, 5))) == CoreBlock((2, 5, 4))

    def test_preserves_lengths(self, ex51_S, ex51_T):
        """Test that ψ is a length-preserving injection on blocks up to 20."""
        pairs = build_psi(ex51_S, ex51_T, (0, 1, -1)).table(20)
        assert all(b.length == image.length for b, image in pairs)
        assert len({image for _, image in pairs}) == len(pairs)

    def test_wrong_offsets(self, ex51_S, ex51_T):
        """Test that offsets other than the valid ones are refused."""
        with pytest.raises(InvalidOffsets):
            build_psi(ex51_S, ex51_T, (1, 0, -1))
        with pytest.raises(InvalidOffsets):
            build_psi(ex51_S, ex51_T, (0, 1))


class TestTransitionPoints:
    """Test cases for transition_points."""

    def test_internal_and_external(self):
        """Test the kind and index of each transition."""
        points = transition_points((1, 2, 2, 3, 1), 3)
        assert [(t.index, t.kind) for t in points] == [
            (0, TransitionKind.INTERNAL),
            (2, TransitionKind.INTERNAL),
            (3, TransitionKind.EXTERNAL),
        ]

    def test_origin(self):
        """Test indices relative to an origin."""
        assert [t.index for t in transition_points((3, 1, 1), 3, origin=1)] == [-1]


class TestBlockMap:
    """Test cases for block maps."""

    def test_two_block_map(self):
        """Test a 2-block map that moves the 2 → 3 transition right."""
        phi = BlockMap.from_function(1, 0, 3, lambda v: v[0] if v == (2, 3) else v[-1])
        assert apply_block_map(phi, w("3122333122")) == w("122233122")

    def test_identity(self, golden):
        """Test the 1-block identity."""
        assert apply_block_map(BlockMap.identity(2), w("21221")) == w("21221")

    def test_word_too_short(self, ex51_S, ex51_T):
        """Test that a word needs at least one full window."""
        phi = synthesize_block_map(ex51_S, ex51_T, (0, 1, -1))
        with pytest.raises(WordTooShort):
            apply_block_map(phi, w("1223"))

    def test_table_round_trip(self):
        """Test rebuilding a table map from its dictionary."""
        phi = BlockMap.identity(3)
        again = BlockMap.from_dict(phi.to_dict())
        assert again.table == phi.table
        assert again.window == 1

    def test_transition_round_trip(self, ex51_S, ex51_T):
        """Test rebuilding a transition map from its dictionary."""
        phi = synthesize_block_map(ex51_S, ex51_T, (0, 1, -1))
        assert BlockMap.from_dict(phi.to_dict()) == phi

    def test_malformed_dictionary(self):
        """Test that missing fields raise BlockMapError."""
        with pytest.raises(BlockMapError):
            BlockMap.from_dict({'memory': 1})

    def test_needs_one_rule(self):
        """Test that a map has a table or offsets but not both."""
        with pytest.raises(BlockMapError):
            BlockMap(0, 0)
        with pytest.raises(BlockMapError):
            BlockMap(-1, 0, table={})

    def test_undefined_window(self):
        """Test that a table map refuses windows it lacks."""
        phi = BlockMap.from_table(0, 0, {'1': 1})
        with pytest.raises(BlockMapError):
            phi.evaluate((2,))


class TestSynthesis:
    """Test cases for synthesize_block_map."""

    def test_radius(self, ex51_S, ex51_T):
        """Test memory and anticipation for partial sums (0, 1)."""
        phi = synthesize_block_map(ex51_S, ex51_T, (0, 1, -1))
        assert (phi.memory, phi.anticipation, phi.radius) == (2, 2, 2)
        assert phi.shifts == (0, 1)
        assert phi.rule == "transition"

    def test_moves_block_boundary(self, ex51_S, ex51_T):
        """Test the image of the periodic point (122333)^∞."""
        phi = synthesize_block_map(ex51_S, ex51_T, (0, 1, -1))
        assert apply_block_map_cyclic(phi, w("122333")) == w("122233")

    def test_periodic_points_land_in_target(self, ex51_S, ex51_T):
        """Test that every periodic word maps to a distinct periodic word of T."""
        phi = synthesize_block_map(ex51_S, ex51_T, (0, 1, -1))
        for n in range(1, 11):
            images = {apply_block_map_cyclic(phi, word) for word in periodic_words(ex51_S, n)}
            assert images == set(periodic_words(ex51_T, n))

    def test_identity_offsets(self, golden):
        """Test that zero offsets give a map acting as the identity."""
        phi = synthesize_block_map(golden, golden, (0, 0))
        word = w("2122121221")
        assert apply_block_map(phi, word) == word.slice(1, len(word) - 1)


class TestPi:
    """Test cases for compute_pi."""

    def test_synthesized_map(self, ex51_S, ex51_T):
        """Test that π fixes the infinite-set letters."""
        check = compute_pi(synthesize_block_map(ex51_S, ex51_T, (0, 1, -1)), ex51_S, ex51_T)
        assert check.mapping == {1: 1, 2: 2}
        assert check.ok

    def test_corrupted_map(self, ex51_S, ex51_T):
        """Test that a map sending 2 to 3 fails the π check."""
        phi = BlockMap.from_function(0, 0, 3, lambda v: 3 if v[0] == 2 else v[0])
        assert not compute_pi(phi, ex51_S, ex51_T).ok


class TestEvidence:
    """Test cases for verify_conjugacy_evidence."""

    def test_synthesized_map_passes(self, ex51_S, ex51_T):
        """Test that the synthesized map passes every check."""
        phi = synthesize_block_map(ex51_S, ex51_T, (0, 1, -1))
        report = verify_conjugacy_evidence(phi, ex51_S, ex51_T, 10, 10, 20)
        assert report.passed
        assert [c.name for c in report.checks] == ['induction', 'image_containment', 'periodic_points', 'pi']
        assert report.to_dict()['grade'] == 'evidence'
        assert report.params == {'n': 10, 'N': 10, 'L': 20}

    def test_identity_passes(self, golden):
        """Test the identity on the golden mean shift."""
        assert verify_conjugacy_evidence(BlockMap.identity(2), golden, golden, 8, 8, 12).passed

    def test_wrong_target_fails(self, ex51_S):
        """Test that the map is rejected as a self-map of S."""
        phi = BlockMap.from_dict({
            'memory': 2, 'anticipation': 2, 'rule': 'transition',
            'offsets': [0, 1, -1], 'shifts': [0, 1], 'radius': 2,
        })
        report = verify_conjugacy_evidence(phi, ex51_S, ex51_S, 8, 8, 12)
        assert not report.passed
        assert not report.check('image_containment').passed

    def test_corrupted_map_fails(self, ex51_S, ex51_T):
        """Test that a corrupted 1-block map fails."""
        phi = BlockMap.from_function(0, 0, 3, lambda v: 3 if v[0] == 2 else v[0])
        report = verify_conjugacy_evidence(phi, ex51_S, ex51_T, 6, 6, 10)
        assert not report.passed
        assert not report.check('pi').passed


def shifted_set(spec, offset):
    """The set {m + offset : m in spec}, kept finite or eventually periodic."""
    if isinstance(spec, FiniteSet):
        return FiniteSet(tuple(m + offset for m in spec.elements))
    head = spec.enumerate_up_to(spec.head_end())
    return PeriodicDeltaSet(tuple(m + offset for m in head), spec.delta_sequence().eventual_period)


def offset_pairs(count, seed):
    """Pairs (S, T, d): S raises a random base by u, T by a permutation v of u, so d = v - u."""
    rng = np.random.default_rng(seed)
    pairs = []
    for base in random_sofic_specs(count, seed=seed):
        u = [int(k) for k in rng.integers(0, 2, size=base.p)]
        v = [int(k) for k in rng.permutation(u)]
        S = base.with_sets([shifted_set(s, k) for s, k in zip(base.sets, u)], name=f"{base.name}/S")
        T = base.with_sets([shifted_set(s, k) for s, k in zip(base.sets, v)], name=f"{base.name}/T")
        pairs.append((S, T, tuple(b - a for a, b in zip(u, v))))
    return pairs


def random_word(rng, shift, length):
    """A factor of a random concatenation of short core blocks."""
    blocks = core_blocks_up_to(shift, sum(s.minimum for s in shift.sets) + 6)
    letters = []
    while len(letters) < 2 * length:
        letters.extend(blocks[int(rng.integers(len(blocks)))].to_word().letters())
    start = int(rng.integers(0, len(letters) - length + 1))
    return RunWord.from_letters(letters[start:start + length])


def framed_images(phi, S, psi, limit):
    """(Φ over each block framed by repetitions of the shortest block, ψ of the block)."""
    shortest = core_blocks_up_to(S, sum(s.minimum for s in S.sets))[0]
    period = list(shortest.to_word().letters())
    repeated = period * (phi.window // len(period) + 1)
    left = repeated[len(repeated) - phi.memory:]
    right = repeated[:phi.anticipation]
    for block in core_blocks_up_to(S, limit):
        framed = RunWord.from_letters(left + list(block.to_word().letters()) + right)
        yield apply_block_map(phi, framed), psi(block).to_word()


def assert_psi_bijective(S, T, d, limit):
    psi = build_psi(S, T, d)
    source, target = core_blocks_up_to(S, limit), core_blocks_up_to(T, limit)
    for length in range(1, limit + 1):
        images = [psi(b) for b in source if b.length == length]
        assert len(set(images)) == len(images), length
        assert set(images) == {b for b in target if b.length == length}, length


class TestShiftCommutation:
    """Test cases for apply_block_map commuting with the shift."""

    def _check(self, phi, shift, rng, rounds):
        for _ in range(rounds):
            length = int(rng.integers(phi.window + 1, 41))
            word = random_word(rng, shift, length)
            image = apply_block_map(phi, word)
            assert apply_block_map(phi, word.slice(1, length)) == image.slice(1, len(image))
            assert apply_block_map(phi, word.slice(0, length - 1)) == image.slice(0, len(image) - 1)

    def test_example_pair(self, ex51_S, ex51_T):
        """Test dropping an end letter of random words of length ≤ 40."""
        phi = synthesize_block_map(ex51_S, ex51_T, (0, 1, -1))
        self._check(phi, ex51_S, np.random.default_rng(21), 50)

    def test_generated_pairs(self):
        """Test the same property for maps built from generated offsets."""
        rng = np.random.default_rng(22)
        for S, T, d in offset_pairs(10, seed=13):
            self._check(synthesize_block_map(S, T, d), S, rng, 10)


class TestGeneratedOffsets:
    """Test cases on pairs related by generated offset vectors."""

    def test_offsets_recovered(self):
        """Test that sufficient_offsets finds d = v - u."""
        for S, T, d in offset_pairs(12, seed=13):
            assert sufficient_offsets(S, T) == OffsetVector(d), S.name

    def test_necessary_conditions_follow(self):
        """Test equal spectra to 30 and equal periodic counts to 10 whenever offsets exist."""
        for S, T, d in offset_pairs(12, seed=13):
            assert isinstance(sufficient_offsets(S, T), OffsetVector)
            assert length_spectra_equal(S, T, 30).equal, S.name
            assert periodic_counts_equal(S, T, 10).equal, S.name

    def test_psi_bijective_per_length(self, ex51_S, ex51_T):
        """Test that ψ is a bijection between blocks of each length."""
        assert_psi_bijective(ex51_S, ex51_T, (0, 1, -1), 30)
        for S, T, d in offset_pairs(8, seed=17):
            assert_psi_bijective(S, T, d, 20)

    def test_map_induces_psi(self, ex51_S, ex51_T):
        """Test that the synthesized map sends each framed block to its ψ image."""
        phi = synthesize_block_map(ex51_S, ex51_T, (0, 1, -1))
        for image, expected in framed_images(phi, ex51_S, build_psi(ex51_S, ex51_T, (0, 1, -1)), 30):
            assert image == expected
        for S, T, d in offset_pairs(8, seed=17):
            phi = synthesize_block_map(S, T, d)
            for image, expected in framed_images(phi, S, build_psi(S, T, d), 16):
                assert image == expected, S.name
