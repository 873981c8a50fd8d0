"""
Conjugacy Module

This module compares two ordered S-limited shifts X(S) and X(T):

- Necessary conditions: equal core length spectra and equal periodic
  point counts
- The sufficient condition: a per-letter offset vector d with
  t_i^m = s_i^m + d_i for every i and m, and Σ d_i = 0
- The core bijection ψ that adds d to block exponents, and a sliding
  block code that induces it by moving transition points
- Desk-scale evidence that a block map is a conjugacy

Block maps are either explicit window tables or the transition-point rule
parameterized by the offsets.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import config
from shifts.errors import (
    AlphabetSizeMismatch,
    BlockMapError,
    InvalidOffsets,
    UnknownMembership,
    WordTooShort,
)
from shifts.language import (
    CoreBlock,
    RunWord,
    ShiftSpec,
    core_blocks_up_to,
    enumerate_words,
    is_in_language,
    is_periodic_word,
    length_spectrum,
    members_up_to,
    periodic_points,
    periodic_words,
)
from shifts.sets import BoundedExplicitSet, SetSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OffsetVector:
    """
    Per-letter offsets d_1..d_p relating the sets of two shifts.

    Attributes:
        d: Offsets, one per letter
    """

    d: Tuple[int, ...]

    def partial_sums(self) -> Tuple[int, ...]:
        """r_k = d_1 + ... + d_k for k = 1..p-1."""
        return tuple(itertools.accumulate(self.d))[:-1]

    def to_dict(self) -> Dict[str, Any]:
        return {'d': list(self.d)}


@dataclass(frozen=True)
class Refutation:
    """
    Why the offset condition fails.

    Attributes:
        reason: Human-readable explanation
        letter: Letter whose sets disagree, if any
        index: Element index m where they disagree, if any
    """

    reason: str
    letter: Optional[int] = None
    index: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {'reason': self.reason, 'letter': self.letter, 'index': self.index}


class TransitionKind(str, Enum):
    INTERNAL = "internal"
    EXTERNAL = "external"


@dataclass(frozen=True)
class TransitionPoint:
    """
    Index j with x_j ≠ x_{j+1}.

    Attributes:
        index: Position j (relative to the window center when evaluating)
        kind: Internal (k → k+1) or external (→ 1)
        from_letter: x_j
        to_letter: x_{j+1}
    """

    index: int
    kind: TransitionKind
    from_letter: int
    to_letter: int


@dataclass(frozen=True)
class Comparison:
    """
    Outcome of comparing two integer sequences term by term.

    Attributes:
        equal: Whether every compared term agrees
        first_mismatch: First index that differs
        left: Term of the first shift at the mismatch
        right: Term of the second shift at the mismatch
    """

    equal: bool
    first_mismatch: Optional[int] = None
    left: Optional[int] = None
    right: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'equal': self.equal,
            'first_mismatch': self.first_mismatch,
            'left': self.left,
            'right': self.right,
        }


def _window_key(window: Sequence[int]) -> str:
    if all(a <= 9 for a in window):
        return ''.join(map(str, window))
    return ' '.join(map(str, window))


def transition_points(letters: Sequence[int], p: int, origin: int = 0) -> List[TransitionPoint]:
    """
    Transition points of a word.

    Args:
        letters: Letter sequence
        p: Alphabet size
        origin: Position that gets index 0

    Returns:
        Transition points in increasing index order
    """
    points = []
    for j in range(len(letters) - 1):
        a, b = letters[j], letters[j + 1]
        if a == b:
            continue
        kind = TransitionKind.INTERNAL if b == a + 1 and a < p else TransitionKind.EXTERNAL
        points.append(TransitionPoint(j - origin, kind, a, b))
    return points


@dataclass(frozen=True)
class BlockMap:
    """
    Sliding block code Φ with memory m and anticipation a.

    y_i = Φ(x_{i-m} ... x_{i+a}). The rule is either an explicit table from
    windows (digit strings) to letters, or the transition-point rule with
    offsets d, partial sums r_k and radius r.

    Attributes:
        memory: m ≥ 0
        anticipation: a ≥ 0
        table: Window table, for table rules
        offsets: d, for transition rules
        shifts: r_1..r_{p-1}, for transition rules
        radius: r, for transition rules
    """

    memory: int
    anticipation: int
    table: Optional[Dict[str, int]] = field(default=None, compare=False, hash=False)
    offsets: Optional[Tuple[int, ...]] = None
    shifts: Optional[Tuple[int, ...]] = None
    radius: Optional[int] = None

    def __post_init__(self):
        if self.memory < 0 or self.anticipation < 0:
            raise BlockMapError("Memory and anticipation must be nonnegative")
        if (self.table is None) == (self.offsets is None):
            raise BlockMapError("A block map needs exactly one of a table or offsets")

    @property
    def window(self) -> int:
        return self.memory + self.anticipation + 1

    @property
    def rule(self) -> str:
        return "table" if self.table is not None else "transition"

    @classmethod
    def from_table(cls, memory: int, anticipation: int, table: Dict[str, int]) -> "BlockMap":
        return cls(memory, anticipation, table=dict(table))

    @classmethod
    def from_function(
        cls,
        memory: int,
        anticipation: int,
        p: int,
        rule: Callable[[Tuple[int, ...]], int]
    ) -> "BlockMap":
        """Tabulate a window function over every window on {1..p}."""
        table = {
            _window_key(window): rule(window)
            for window in itertools.product(range(1, p + 1), repeat=memory + anticipation + 1)
        }
        return cls(memory, anticipation, table=table)

    @classmethod
    def identity(cls, p: int) -> "BlockMap":
        """The 1-block identity map on {1..p}."""
        return cls.from_function(0, 0, p, lambda window: window[0])

    def evaluate(self, window: Sequence[int]) -> int:
        """
        Image letter of one window.

        Args:
            window: m + a + 1 letters

        Returns:
            Φ(window)
        """
        if len(window) != self.window:
            raise BlockMapError(f"Window of length {len(window)}, expected {self.window}")
        if self.table is not None:
            key = _window_key(window)
            if key not in self.table:
                raise BlockMapError(f"Block map undefined on window {key}")
            return self.table[key]
        return self._transition_rule(window)

    def _transition_rule(self, window: Sequence[int]) -> int:
        p = len(self.offsets)
        center = self.memory
        images = []
        for point in transition_points(window, p, origin=center):
            moved = point.index
            if point.kind is TransitionKind.INTERNAL:
                moved += self.shifts[point.from_letter - 1]
            images.append((moved, point))
        if not images:
            return window[center]
        # The image transition sits between moved and moved + 1; the nearest
        # one wins and ties go to the negative side.
        moved, point = min(images, key=lambda item: (abs(2 * item[0] + 1), item[0]))
        return point.to_letter if moved <= -1 else point.from_letter

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'memory': self.memory,
            'anticipation': self.anticipation,
            'rule': self.rule,
        }
        if self.table is not None:
            data['table'] = dict(sorted(self.table.items()))
        else:
            data['offsets'] = list(self.offsets)
            data['shifts'] = list(self.shifts)
            data['radius'] = self.radius
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BlockMap":
        """
        Rebuild a block map from its to_dict form.

        Raises:
            BlockMapError: If required fields are missing
        """
        try:
            memory, anticipation = int(data['memory']), int(data['anticipation'])
            if data.get('rule', 'table') == 'table':
                table = {str(k): int(v) for k, v in data['table'].items()}
                return cls(memory, anticipation, table=table)
            return cls(
                memory,
                anticipation,
                offsets=tuple(int(v) for v in data['offsets']),
                shifts=tuple(int(v) for v in data['shifts']),
                radius=int(data['radius']),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise BlockMapError(f"Malformed block map description: {exc}") from exc


def _require_comparable(S: ShiftSpec, T: ShiftSpec, same_alphabet: bool = True) -> None:
    S.require_ordered("conjugacy")
    T.require_ordered("conjugacy")
    if same_alphabet and S.p != T.p:
        raise AlphabetSizeMismatch(f"Alphabet sizes differ: {S.p} vs {T.p}")


def length_spectra_equal(S: ShiftSpec, T: ShiftSpec, limit: int = None) -> Comparison:
    """
    Compare core length spectra c_l for l ≤ L.

    The alphabets may differ in size.

    Args:
        S: First ordered shift
        T: Second ordered shift
        limit: L (defaults to config)

    Returns:
        Comparison with the first differing length
    """
    limit = limit or config.DEFAULT_SPECTRUM_LENGTH
    _require_comparable(S, T, same_alphabet=False)
    left = length_spectrum(S, limit).counts
    right = length_spectrum(T, limit).counts
    for l, (a, b) in enumerate(zip(left, right), start=1):
        if a != b:
            return Comparison(False, l, a, b)
    return Comparison(True)


def periodic_counts_equal(S: ShiftSpec, T: ShiftSpec, bound: int = None) -> Comparison:
    """
    Compare the numbers of period-n points for n ≤ N.

    Args:
        S: First shift
        T: Second shift
        bound: N (defaults to config)

    Returns:
        Comparison with the first differing period
    """
    bound = bound or config.DEFAULT_PERIOD_BOUND
    for n in range(1, bound + 1):
        a, b = periodic_points(S, n), periodic_points(T, n)
        if a != b:
            return Comparison(False, n, a, b)
    return Comparison(True)


def _head_count(spec: SetSpec) -> int:
    return len(members_up_to(spec, spec.head_end()))


def _period_length(spec: SetSpec) -> int:
    period = spec.delta_sequence().eventual_period
    return len(period) if period else 0


def sufficient_offsets(S: ShiftSpec, T: ShiftSpec) -> Union[OffsetVector, Refutation]:
    """
    Find d with t_i^m = s_i^m + d_i for all i, m and Σ d_i = 0.

    d_i is fixed by the minima. Finite sets are compared elementwise;
    infinite sets are compared past both heads for one common period of
    their Δ cycles, after which both enumerations repeat.

    Args:
        S: Domain shift
        T: Target shift

    Returns:
        OffsetVector, or a Refutation naming the failing letter and index

    Raises:
        AlphabetSizeMismatch: If p differs
        UnknownMembership: If either shift has bounded explicit sets
    """
    _require_comparable(S, T)
    if any(isinstance(s, BoundedExplicitSet) for s in S.sets + T.sets):
        raise UnknownMembership("Offsets cannot be checked on bounded explicit sets")

    d = tuple(t.minimum - s.minimum for s, t in zip(S.sets, T.sets))
    if sum(d):
        return Refutation(f"offsets {list(d)} sum to {sum(d)}, not 0")

    for letter, (s, t, offset) in enumerate(zip(S.sets, T.sets, d), start=1):
        s_infinite, t_infinite = s.is_infinite(), t.is_infinite()
        if s_infinite != t_infinite:
            finite = t if s_infinite else s
            index = len(finite.first_elements(finite.head_end())) + 1
            return Refutation(f"S_{letter} and T_{letter} differ in cardinality", letter, index)
        if not s_infinite:
            size_s, size_t = len(s.first_elements(s.head_end())), len(t.first_elements(t.head_end()))
            checked = min(size_s, size_t)
        else:
            period = math.lcm(_period_length(s), _period_length(t))
            checked = max(_head_count(s), _head_count(t)) + period + 1
        for m in range(1, checked + 1):
            if t.nth_element(m) != s.nth_element(m) + offset:
                return Refutation(
                    f"t_{letter}^{m} = {t.nth_element(m)} but s_{letter}^{m} + d_{letter} = "
                    f"{s.nth_element(m) + offset}",
                    letter,
                    m,
                )
        if not s_infinite and size_s != size_t:
            return Refutation(f"S_{letter} and T_{letter} differ in cardinality", letter, checked + 1)
    return OffsetVector(d)


def _validated_offsets(S: ShiftSpec, T: ShiftSpec, d: Union[OffsetVector, Sequence[int]]) -> OffsetVector:
    offsets = d if isinstance(d, OffsetVector) else OffsetVector(tuple(d))
    if len(offsets.d) != S.p:
        raise InvalidOffsets(f"Expected {S.p} offsets, got {len(offsets.d)}")
    found = sufficient_offsets(S, T)
    if isinstance(found, Refutation):
        raise InvalidOffsets(f"No valid offsets: {found.reason}")
    if found.d != offsets.d:
        raise InvalidOffsets(f"Offsets {list(offsets.d)} do not match {list(found.d)}")
    return offsets


class CoreBijection:
    """
    ψ: G_S → G_T adding the offsets to every block exponent.

    Attributes:
        S: Domain shift
        T: Target shift
        offsets: Offset vector d
    """

    def __init__(self, S: ShiftSpec, T: ShiftSpec, offsets: OffsetVector):
        self.S = S
        self.T = T
        self.offsets = offsets

    def __call__(self, block: CoreBlock) -> CoreBlock:
        """
        Image of a core block.

        Raises:
            InvalidOffsets: If the image exponents are not members of T's sets
        """
        image = CoreBlock(tuple(m + d for m, d in zip(block.exponents, self.offsets.d)))
        for letter, m in enumerate(image.exponents, start=1):
            if m < 1 or not self.T.set_for(letter).contains(m):
                raise InvalidOffsets(f"ψ({block}) has exponent {m} outside T_{letter}")
        return image

    def table(self, limit: int) -> List[Tuple[CoreBlock, CoreBlock]]:
        """(block, image) pairs for every block of length ≤ limit."""
        return [(block, self(block)) for block in core_blocks_up_to(self.S, limit)]


def build_psi(S: ShiftSpec, T: ShiftSpec, d: Union[OffsetVector, Sequence[int]]) -> CoreBijection:
    """
    Core bijection ψ(1^{s_1} ... p^{s_p}) = 1^{s_1 + d_1} ... p^{s_p + d_p}.

    Args:
        S: Domain shift
        T: Target shift
        d: Offsets accepted by sufficient_offsets

    Returns:
        CoreBijection
    """
    return CoreBijection(S, T, _validated_offsets(S, T, d))


def synthesize_block_map(S: ShiftSpec, T: ShiftSpec, d: Union[OffsetVector, Sequence[int]]) -> BlockMap:
    """
    Sliding block code inducing ψ by moving transition points.

    An internal transition k → k+1 moves by r_k = d_1 + ... + d_k, an
    external transition p → 1 stays put. With r = 1 + max(0, max_k |r_k|)
    and memory = anticipation = r, the window sees every transition whose
    image can land next to the center.

    Args:
        S: Domain shift
        T: Target shift
        d: Offsets accepted by sufficient_offsets

    Returns:
        BlockMap with the transition rule

    Raises:
        InvalidOffsets: If d does not relate S and T
    """
    offsets = _validated_offsets(S, T, d)
    shifts = offsets.partial_sums()
    radius = 1 + max([0] + [abs(r) for r in shifts])
    logger.info(f"Synthesized block map: r_k={list(shifts)}, radius {radius}")
    return BlockMap(radius, radius, offsets=offsets.d, shifts=shifts, radius=radius)


def apply_block_map(phi: BlockMap, w: RunWord) -> RunWord:
    """
    Apply Φ to every full window of w.

    Args:
        phi: Block map
        w: Word longer than memory + anticipation

    Returns:
        Word of length |w| - memory - anticipation

    Raises:
        WordTooShort: If w has no full window
    """
    letters = w.letters()
    if len(letters) <= phi.memory + phi.anticipation:
        raise WordTooShort(
            f"Word of length {len(letters)} needs more than {phi.memory + phi.anticipation} letters"
        )
    out = [
        phi.evaluate(letters[i - phi.memory:i + phi.anticipation + 1])
        for i in range(phi.memory, len(letters) - phi.anticipation)
    ]
    return RunWord.from_letters(out)


def apply_block_map_cyclic(phi: BlockMap, w: RunWord) -> RunWord:
    """
    Apply Φ to the periodic point w^∞ and return one period of the image.

    Args:
        phi: Block map
        w: Nonempty word read as a necklace

    Returns:
        Word of length |w|
    """
    letters = w.letters()
    n = len(letters)
    out = [
        phi.evaluate([letters[(i + k) % n] for k in range(-phi.memory, phi.anticipation + 1)])
        for i in range(n)
    ]
    return RunWord.from_letters(out)


@dataclass(frozen=True)
class PiCheck:
    """
    Letter map π(i) = Φ(i^window) on letters with infinite sets.

    Attributes:
        mapping: π on the infinite-set letters of S
        source: Letters I with S_i infinite
        target: Letters J with T_j infinite
        ok: Whether π(I) = J
    """

    mapping: Dict[int, int]
    source: Tuple[int, ...]
    target: Tuple[int, ...]
    ok: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'mapping': {str(k): v for k, v in sorted(self.mapping.items())},
            'source': list(self.source),
            'target': list(self.target),
            'ok': self.ok,
        }


def compute_pi(phi: BlockMap, S: ShiftSpec, T: ShiftSpec) -> PiCheck:
    """
    Evaluate Φ on constant windows and check π(I) = J.

    Args:
        phi: Block map
        S: Domain shift
        T: Target shift

    Returns:
        PiCheck; ok is False when the image of I is not J
    """
    source = tuple(i for i in S.letters if S.set_for(i).is_infinite())
    target = tuple(j for j in T.letters if T.set_for(j).is_infinite())
    mapping = {i: phi.evaluate([i] * phi.window) for i in source}
    ok = set(mapping.values()) == set(target)
    if not ok:
        logger.info(f"π maps {list(source)} onto {sorted(set(mapping.values()))}, expected {list(target)}")
    return PiCheck(mapping, source, target, ok)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class EvidenceReport:
    """
    Desk-scale conjugacy evidence.

    Passing every check is evidence, not proof, that Φ is a conjugacy.

    Attributes:
        checks: Individual check outcomes
        params: Sizes used (n, N, L)
    """

    checks: Tuple[CheckResult, ...]
    params: Dict[str, int]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'grade': 'evidence',
            'passed': self.passed,
            'params': dict(self.params),
            'checks': {c.name: {'passed': c.passed, 'detail': c.detail} for c in self.checks},
        }


def _contexts(S: ShiftSpec, length: int, left: bool) -> List[Tuple[int, ...]]:
    """Left (or right) contexts of a block boundary, taken from periodic block repetitions."""
    if length == 0:
        return [()]
    shortest = core_blocks_up_to(S, sum(s.minimum for s in S.sets) + S.p)[:4]
    contexts = set()
    for block in shortest:
        word = block.to_word().letters()
        repeated = word * (length // len(word) + 1)
        contexts.add(repeated[-length:] if left else repeated[:length])
    edge_letter = S.p if left else 1
    if S.set_for(edge_letter).is_infinite():
        contexts.add((edge_letter,) * length)
    return sorted(contexts)


def _check_induction(phi: BlockMap, S: ShiftSpec, T: ShiftSpec, core_length: int) -> CheckResult:
    offsets = sufficient_offsets(S, T)
    if isinstance(offsets, Refutation):
        return CheckResult('induction', False, f"no core bijection: {offsets.reason}")
    psi = CoreBijection(S, T, offsets)
    lefts = _contexts(S, phi.memory, left=True)
    rights = _contexts(S, phi.anticipation, left=False)
    checked = 0
    for block in core_blocks_up_to(S, core_length):
        expected = psi(block).to_word()
        body = block.to_word().letters()
        for x, y in itertools.product(lefts, rights):
            framed = RunWord.from_letters(x + body + y)
            if not is_in_language(S, framed):
                continue
            image = apply_block_map(phi, framed)
            checked += 1
            if image != expected:
                return CheckResult(
                    'induction', False,
                    f"Φ over {block} in context {_window_key(x)}|{_window_key(y)} gives "
                    f"{image.format(T.p)}, ψ gives {expected.format(T.p)}",
                )
    return CheckResult('induction', True, f"{checked} framed blocks of length ≤ {core_length} map to ψ")


def _check_image(phi: BlockMap, S: ShiftSpec, T: ShiftSpec, word_length: int) -> CheckResult:
    framed_length = word_length + phi.memory + phi.anticipation
    words = enumerate_words(S, framed_length)
    for w in words:
        image = apply_block_map(phi, w)
        if not is_in_language(T, image):
            return CheckResult(
                'image_containment', False,
                f"Φ({w.format(S.p)}) = {image.format(T.p)} is not in the target language",
            )
    return CheckResult('image_containment', True, f"{len(words)} words of length {framed_length} map into the target")


def _check_periodic(phi: BlockMap, S: ShiftSpec, T: ShiftSpec, period_bound: int) -> CheckResult:
    for n in range(1, period_bound + 1):
        words = periodic_words(S, n)
        images = [apply_block_map_cyclic(phi, w) for w in words]
        for w, image in zip(words, images):
            if not is_periodic_word(T, image):
                return CheckResult(
                    'periodic_points', False,
                    f"image of ({w.format(S.p)})^∞ is not a point of the target",
                )
        if len(set(images)) != len(images):
            return CheckResult('periodic_points', False, f"two period-{n} points share an image")
        target_count = periodic_points(T, n)
        if len(images) != target_count:
            return CheckResult(
                'periodic_points', False,
                f"{len(images)} period-{n} points map into {target_count}",
            )
    return CheckResult('periodic_points', True, f"injective and count-preserving for periods ≤ {period_bound}")


def verify_conjugacy_evidence(
    phi: BlockMap,
    S: ShiftSpec,
    T: ShiftSpec,
    word_length: int = None,
    period_bound: int = None,
    core_length: int = None
) -> EvidenceReport:
    """
    Check a block map against the conjugacy criteria at desk scale.

    (a) induction: every core block up to length L, framed by sampled block
        boundary contexts, maps to its ψ image
    (b) image containment: every word of B_{n+m+a}(S) maps into L(T)
    (c) periodic points: images of period-n points (n ≤ N) are distinct
        points of T and exhaust them
    (d) π: constant windows on infinite-set letters map I onto J

    Args:
        phi: Block map
        S: Domain shift
        T: Target shift
        word_length: n (defaults to config)
        period_bound: N (defaults to config)
        core_length: L (defaults to config)

    Returns:
        EvidenceReport
    """
    word_length = word_length or config.DEFAULT_EVIDENCE_WORD_LENGTH
    period_bound = period_bound or config.DEFAULT_PERIOD_BOUND
    core_length = core_length or config.DEFAULT_EVIDENCE_CORE_LENGTH
    _require_comparable(S, T)

    pi = compute_pi(phi, S, T)
    checks = (
        _check_induction(phi, S, T, core_length),
        _check_image(phi, S, T, word_length),
        _check_periodic(phi, S, T, period_bound),
        CheckResult('pi', pi.ok, f"π = {pi.mapping}, I = {list(pi.source)}, J = {list(pi.target)}"),
    )
    for check in checks:
        logger.info(f"Evidence check {check.name}: {'pass' if check.passed else 'FAIL'} ({check.detail})")
    return EvidenceReport(checks, {'n': word_length, 'N': period_bound, 'L': core_length})
