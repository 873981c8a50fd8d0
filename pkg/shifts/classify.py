"""
Shift Classification Module

This module decides the structural class of an S-limited shift:

- Finite type (SFT), with the forbidden-word list as witness
- Sofic
- Mixing, with the gcd of cycle lengths as witness
- Irreducible, with a synchronizing word

Verdicts are three-valued. Bounded explicit sets only ever produce
"unknown" unless another set already settles the question.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Dict, List, Optional, Tuple

from .errors import NotSFT
from .language import RunWord, ShiftSpec, length_spectrum, members_up_to
from .sets import (
    BoundedExplicitSet,
    FiniteSet,
    SetSpec,
    SetKind,
    Verdict,
    is_cofinite,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MixingVerdict:
    """
    Outcome of the mixing test.

    Attributes:
        verdict: yes/no/unknown
        gcd_value: gcd of the cycle lengths, present when decided
        stabilization_bound: Largest cycle length inspected
    """

    verdict: Verdict
    gcd_value: Optional[int]
    stabilization_bound: int


@dataclass
class ClassificationReport:
    """
    Every classification verdict of a shift with its witnesses.

    Attributes:
        sft: Finite type verdict
        sofic: Sofic verdict
        mixing: Mixing verdict
        irreducible: Always True for S-limited shifts
        gcd_value: gcd of cycle lengths (present iff mixing is decided)
        stabilization_bound: Cycle lengths inspected by the mixing test
        synchronizing_example: A synchronizing word
        forbidden_words: Forbidden-word list (present iff sft is yes)
    """

    sft: Verdict
    sofic: Verdict
    mixing: Verdict
    irreducible: bool
    gcd_value: Optional[int] = None
    stabilization_bound: Optional[int] = None
    synchronizing_example: Optional[RunWord] = None
    forbidden_words: Optional[List[RunWord]] = field(default=None)

    @property
    def has_unknown(self) -> bool:
        return Verdict.UNKNOWN in (self.sft, self.sofic, self.mixing)

    def to_dict(self, p: Optional[int] = None) -> Dict[str, Any]:
        return {
            'sft': self.sft.value,
            'sofic': self.sofic.value,
            'mixing': self.mixing.value,
            'irreducible': self.irreducible,
            'gcd_value': self.gcd_value,
            'stabilization_bound': self.stabilization_bound,
            'synchronizing_example': (
                self.synchronizing_example.format(p) if self.synchronizing_example else None
            ),
            'forbidden_words': (
                [w.format(p) for w in self.forbidden_words]
                if self.forbidden_words is not None else None
            ),
        }


def _finite_type_verdict(spec: SetSpec) -> Verdict:
    if spec.classify() is SetKind.UNKNOWN:
        return Verdict.UNKNOWN
    if spec.classify() is SetKind.FINITE:
        return Verdict.YES
    return is_cofinite(spec)


def is_sft(shift: ShiftSpec) -> Tuple[Verdict, Optional[List[RunWord]]]:
    """
    Decide whether the shift is of finite type.

    The shift is an SFT iff every S_i is finite or cofinite. A closed-form
    set that is neither settles "no" even if another set is undecidable.

    Args:
        shift: The shift

    Returns:
        (verdict, forbidden words when the verdict is yes)
    """
    verdicts = [_finite_type_verdict(s) for s in shift.sets]
    if Verdict.NO in verdicts:
        return Verdict.NO, None
    if Verdict.UNKNOWN in verdicts:
        return Verdict.UNKNOWN, None
    return Verdict.YES, _forbidden_list(shift)


def forbidden_words(shift: ShiftSpec) -> List[RunWord]:
    """
    Forbidden-word list F = F_0 ∪ F_1 ∪ ... ∪ F_p of an SFT.

    F_0 rules out letter transitions against the cyclic order (ordered
    variant only). F_i rules out runs of letter i with a length outside S_i:
    a·iⁿ·b for each excluded n, and i^{max+1} when S_i is finite.

    Args:
        shift: A shift whose sets are all finite or cofinite

    Returns:
        Deduplicated forbidden words sorted by (length, letters)

    Raises:
        NotSFT: If the shift is not (provably) of finite type
    """
    verdict, words = is_sft(shift)
    if verdict is not Verdict.YES:
        raise NotSFT(f"Shift is not of finite type (verdict: {verdict.value})")
    return words


def _forbidden_list(shift: ShiftSpec) -> List[RunWord]:
    p = shift.p
    found = set()
    if shift.is_ordered:
        for n in range(1, p):
            for m in shift.letters:
                if m not in (n, n + 1):
                    found.add((n, m))
        for i in range(2, p):
            found.add((p, i))

    for i in shift.letters:
        spec = shift.set_for(i)
        if isinstance(spec, FiniteSet):
            excluded = [n for n in range(1, spec.maximum + 1) if not spec.contains(n)]
            found.add((i,) * (spec.maximum + 1))
        else:
            excluded = [n for n in range(1, spec.head_end() + 1) if not spec.contains(n)]
        for n in excluded:
            for a in shift.predecessors(i):
                for b in shift.successors(i):
                    found.add((a,) + (i,) * n + (b,))

    ordered = sorted(found, key=lambda letters: (len(letters), letters))
    return [RunWord.from_letters(letters) for letters in ordered]


def is_sofic(shift: ShiftSpec) -> Verdict:
    """
    Decide soficity: every Δ(S_i) must be eventually periodic.

    Every closed form qualifies (finite sets count as having an empty
    tail), so "no" is never returned; bounded explicit sets give unknown.
    """
    if any(s.classify() is SetKind.UNKNOWN for s in shift.sets):
        return Verdict.UNKNOWN
    return Verdict.YES


def stabilization_bound(shift: ShiftSpec) -> int:
    """
    Block length L* up to which the gcd of block lengths is settled.

    L* = Σ_i (head end of S_i + Δ period sum of S_i) + p · (largest period sum)
    """
    heads = sum(s.head_end() + s.period_sum() for s in shift.sets)
    return heads + shift.p * max(s.period_sum() for s in shift.sets)


def _sample(spec: SetSpec) -> List[int]:
    if isinstance(spec, BoundedExplicitSet):
        return list(spec.elements)
    return members_up_to(spec, spec.head_end() + spec.period_sum())


def is_mixing(shift: ShiftSpec) -> MixingVerdict:
    """
    Decide mixing through the gcd of cycle lengths.

    Ordered shifts take the gcd of the core block lengths up to the
    stabilization bound; generalized shifts take the gcd of the sums over
    selections of at least two distinct letters. Bounded explicit sets leave
    the verdict unknown.

    Args:
        shift: The shift

    Returns:
        MixingVerdict with the gcd when decided
    """
    bounded = any(isinstance(s, BoundedExplicitSet) for s in shift.sets)
    if shift.is_ordered:
        known = shift.with_sets([
            FiniteSet(s.elements) if isinstance(s, BoundedExplicitSet) else s
            for s in shift.sets
        ])
        bound = stabilization_bound(known)
        g = reduce(math.gcd, length_spectrum(known, bound).support(), 0)
    else:
        samples = [_sample(s) for s in shift.sets]
        minima = [sample[0] for sample in samples]
        g = 0
        for size in range(2, shift.p + 1):
            for chosen in itertools.combinations(range(shift.p), size):
                g = math.gcd(g, sum(minima[i] for i in chosen))
        for sample in samples:
            for s in sample:
                g = math.gcd(g, s - sample[0])
        bound = sum(max(sample) for sample in samples)

    if bounded:
        logger.info(f"Mixing undecided: listed elements alone give gcd {g}")
        return MixingVerdict(Verdict.UNKNOWN, None, bound)
    return MixingVerdict(Verdict.of(g == 1), g, bound)


def irreducibility_and_sync(shift: ShiftSpec) -> Tuple[bool, RunWord]:
    """
    Irreducibility with a synchronizing word.

    Ordered shifts are synchronized by p·1 (a block boundary), generalized
    shifts by 1·2 (any two distinct letters).

    Returns:
        (True, synchronizing word)
    """
    if shift.is_ordered:
        return True, RunWord(((shift.p, 1), (1, 1)))
    return True, RunWord(((1, 1), (2, 1)))


def classify_shift(shift: ShiftSpec) -> ClassificationReport:
    """
    Run every classification and collect the witnesses.

    Args:
        shift: The shift

    Returns:
        ClassificationReport
    """
    sft, words = is_sft(shift)
    mixing = is_mixing(shift)
    irreducible, sync = irreducibility_and_sync(shift)
    report = ClassificationReport(
        sft=sft,
        sofic=is_sofic(shift),
        mixing=mixing.verdict,
        irreducible=irreducible,
        gcd_value=mixing.gcd_value,
        stabilization_bound=mixing.stabilization_bound,
        synchronizing_example=sync,
        forbidden_words=words,
    )
    logger.debug(f"Classified {shift.name or 'shift'}: sft={sft.value}, mixing={mixing.verdict.value}")
    return report
