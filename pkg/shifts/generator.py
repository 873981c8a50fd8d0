"""
Random Spec Generator

This module draws random closed-form shifts for property tests and
cross-checks. Sets are drawn from the three closed forms (finite,
cofinite, eventually periodic Δ) with small elements so that every
derived object (automaton, spectrum, word lists) stays desk-sized.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

import config
from .language import ShiftSpec, Variant
from .sets import CofiniteSet, FiniteSet, PeriodicDeltaSet, SetSpec

logger = logging.getLogger(__name__)

SET_KINDS = ('finite', 'cofinite', 'epd')


def _increasing(rng: np.random.Generator, max_element: int) -> Tuple[int, ...]:
    size = int(rng.integers(1, max_element + 1))
    chosen = rng.choice(np.arange(1, max_element + 1), size=size, replace=False)
    return tuple(sorted(int(v) for v in chosen))


def random_set_spec(
    rng: np.random.Generator,
    kind: Optional[str] = None,
    max_element: int = None,
    max_diff: int = None
) -> SetSpec:
    """
    Draw one closed-form set.

    Args:
        rng: numpy random generator
        kind: 'finite', 'cofinite' or 'epd' (drawn uniformly if None)
        max_element: Largest listed element (defaults to config)
        max_diff: Largest periodic difference (defaults to config)

    Returns:
        A FiniteSet, CofiniteSet or PeriodicDeltaSet
    """
    max_element = max_element or config.RANDOM_MAX_ELEMENT
    max_diff = max_diff or config.RANDOM_MAX_DIFF
    kind = kind or SET_KINDS[int(rng.integers(len(SET_KINDS)))]

    if kind == 'finite':
        return FiniteSet(_increasing(rng, max_element))
    if kind == 'cofinite':
        excluded = _increasing(rng, max_element)
        keep = int(rng.integers(0, len(excluded) + 1))
        return CofiniteSet(excluded[:keep])
    if kind == 'epd':
        period = int(rng.integers(1, 3))
        diffs = tuple(int(d) for d in rng.integers(1, max_diff + 1, size=period))
        return PeriodicDeltaSet(_increasing(rng, max_element), diffs)
    raise ValueError(f"Unknown set kind: {kind!r}")


def random_shift_spec(
    rng: np.random.Generator,
    p: Optional[int] = None,
    variant: Variant = Variant.ORDERED,
    kinds: Sequence[str] = SET_KINDS
) -> ShiftSpec:
    """
    Draw a shift whose sets are all closed-form (hence sofic).

    Args:
        rng: numpy random generator
        p: Alphabet size (drawn from config.RANDOM_ALPHABET_SIZES if None)
        variant: Letter-order rule
        kinds: Set forms to draw from

    Returns:
        Random ShiftSpec
    """
    if p is None:
        p = int(rng.choice(config.RANDOM_ALPHABET_SIZES))
    sets = [random_set_spec(rng, kind=kinds[int(rng.integers(len(kinds)))]) for _ in range(p)]
    return ShiftSpec(p, tuple(sets), variant)


def random_sofic_specs(count: int, seed: int = None, variant: Variant = Variant.ORDERED) -> List[ShiftSpec]:
    """
    A reproducible batch of random closed-form shifts.

    Args:
        count: Number of shifts
        seed: Random seed (defaults to config)
        variant: Letter-order rule

    Returns:
        List of ShiftSpec named random-0, random-1, ...
    """
    rng = np.random.default_rng(config.RANDOM_SEED if seed is None else seed)
    specs = []
    for k in range(count):
        shift = random_shift_spec(rng, variant=variant)
        specs.append(shift.with_sets(shift.sets, name=f"random-{k}"))
    logger.debug(f"Drew {count} random shifts (seed {seed})")
    return specs


def _missing_element(rng: np.random.Generator, spec: SetSpec) -> Optional[int]:
    if isinstance(spec, CofiniteSet):
        if not spec.excluded:
            return None
        return int(rng.choice(spec.excluded))
    horizon = spec.head_end() + spec.period_sum() + 3
    gaps = [n for n in range(1, horizon + 1) if not spec.contains(n)]
    return int(rng.choice(gaps)) if gaps else None


def insertion_pair(rng: np.random.Generator, shift: ShiftSpec) -> Tuple[ShiftSpec, ShiftSpec]:
    """
    Pair a shift with a copy that has one more run length allowed.

    A letter whose set has a gap is chosen at random and one missing
    element is added to its set. If every set is ℕ the shift is paired
    with itself.

    Args:
        rng: numpy random generator
        shift: Shift to enlarge

    Returns:
        (shift, enlarged shift)
    """
    letters = [int(i) for i in rng.permutation(shift.p)]
    for index in letters:
        element = _missing_element(rng, shift.sets[index])
        if element is None:
            continue
        sets = list(shift.sets)
        sets[index] = sets[index].with_element(element)
        return shift, shift.with_sets(sets, name=shift.name)
    return shift, shift
