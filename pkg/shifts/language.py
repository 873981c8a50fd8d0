"""
Shift Language Module

This module is the word-level engine of the toolkit. Given a ShiftSpec it
answers questions about the language B(X) of the shift:

- Membership of finite words (is_in_language)
- Counting and enumerating B_n (count_words, enumerate_words)
- Core blocks 1^{m_1}...p^{m_p} and their length spectrum
- Periodic points and the periodic words that describe them
- Connectors between words (irreducibility and mixing witnesses)
- Factoring a word as prefix · core blocks · suffix (decompose)

Words are RunWord values: run-length pairs over the letters 1..p.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

import config
from .errors import (
    BoundBreached,
    EnumerationCapExceeded,
    ParseError,
    SetSpecError,
    ShiftError,
    UnknownMembership,
    VariantMismatch,
    WordNotInLanguage,
)
from .sets import SetSpec, Verdict, contains

logger = logging.getLogger(__name__)


class Variant(str, Enum):
    """Letter-order rule of the shift."""

    ORDERED = "ordered"
    GENERALIZED = "generalized"


@dataclass(frozen=True)
class ShiftSpec:
    """
    An S-limited shift X(S) (ordered) or X_S (generalized).

    Attributes:
        p: Alphabet size, at least 2
        sets: One run-length set per letter; sets[i - 1] belongs to letter i
        variant: Ordered (cyclic letter order 1 → 2 → ... → p → 1) or generalized
        name: Optional label carried into reports
    """

    p: int
    sets: Tuple[SetSpec, ...]
    variant: Variant = Variant.ORDERED
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'sets', tuple(self.sets))
        object.__setattr__(self, 'variant', Variant(self.variant))
        if self.p < 2:
            raise SetSpecError(f"Alphabet size must be at least 2, got {self.p}")
        if len(self.sets) != self.p:
            raise SetSpecError(f"Expected {self.p} sets, got {len(self.sets)}")

    @property
    def is_ordered(self) -> bool:
        return self.variant is Variant.ORDERED

    @property
    def letters(self) -> range:
        return range(1, self.p + 1)

    def set_for(self, letter: int) -> SetSpec:
        """Run-length set of a letter (1-indexed)."""
        return self.sets[letter - 1]

    def next_letter(self, letter: int) -> int:
        """Successor in the cyclic order."""
        return letter % self.p + 1

    def allows(self, a: int, b: int) -> bool:
        """Whether a run of b may directly follow a run of a."""
        if a == b:
            return False
        return not self.is_ordered or b == self.next_letter(a)

    def successors(self, a: int) -> List[int]:
        return [b for b in self.letters if self.allows(a, b)]

    def predecessors(self, b: int) -> List[int]:
        return [a for a in self.letters if self.allows(a, b)]

    def with_sets(self, sets: Sequence[SetSpec], name: Optional[str] = None) -> "ShiftSpec":
        """Same alphabet and variant with different sets."""
        return ShiftSpec(self.p, tuple(sets), self.variant, name)

    def require_ordered(self, operation: str) -> None:
        if not self.is_ordered:
            raise VariantMismatch(f"{operation} is defined for ordered shifts only")

    def to_dict(self) -> Dict:
        return {
            'name': self.name,
            'alphabet': self.p,
            'variant': self.variant.value,
            'sets': [s.to_dict() for s in self.sets],
        }


@dataclass(frozen=True)
class RunWord:
    """
    Finite word stored as runs.

    Attributes:
        runs: (letter, length) pairs with positive lengths and adjacent
            letters distinct; the empty tuple is the empty word
    """

    runs: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        runs = tuple((int(a), int(k)) for a, k in self.runs)
        for a, k in runs:
            if a < 1 or k < 1:
                raise ValueError(f"Invalid run {a}^{k}")
        for (a, _), (b, _) in zip(runs, runs[1:]):
            if a == b:
                raise ValueError(f"Adjacent runs share letter {a}")
        object.__setattr__(self, 'runs', runs)

    @classmethod
    def from_letters(cls, letters: Sequence[int]) -> "RunWord":
        """Build a word from a letter sequence, merging equal neighbours."""
        runs: List[List[int]] = []
        for a in letters:
            if runs and runs[-1][0] == a:
                runs[-1][1] += 1
            else:
                runs.append([a, 1])
        return cls(tuple((a, k) for a, k in runs))

    @classmethod
    def parse(cls, text: str) -> "RunWord":
        """
        Parse flat digit form ("1221") or run form ("1^1 2^2 1^1").

        Args:
            text: Word text; blank text is the empty word

        Returns:
            Parsed word

        Raises:
            ParseError: If the text is in neither form
        """
        text = text.strip()
        if not text:
            return cls()
        if '^' in text:
            letters: List[int] = []
            for token in text.split():
                base, _, exponent = token.partition('^')
                if not base.isdigit() or not exponent.isdigit():
                    raise ParseError(f"Bad run token {token!r}")
                letters.extend([int(base)] * int(exponent))
        else:
            compact = text.replace(' ', '')
            if not compact.isdigit() or '0' in compact:
                raise ParseError(f"Bad word {text!r}; expected digits 1-9")
            letters = [int(ch) for ch in compact]
        try:
            return cls.from_letters(letters)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def __len__(self) -> int:
        return sum(k for _, k in self.runs)

    def __add__(self, other: "RunWord") -> "RunWord":
        return RunWord.from_letters(self.letters() + other.letters())

    def __str__(self) -> str:
        return self.format()

    @property
    def is_empty(self) -> bool:
        return not self.runs

    def letters(self) -> Tuple[int, ...]:
        """Expanded letter sequence."""
        return tuple(a for a, k in self.runs for _ in range(k))

    def slice(self, start: int, stop: int) -> "RunWord":
        return RunWord.from_letters(self.letters()[start:stop])

    def format(self, p: Optional[int] = None) -> str:
        """
        Render the word.

        Args:
            p: Alphabet size; flat digit form is used when p ≤ 9
                (or, without p, when every letter is a single digit)

        Returns:
            Text form of the word
        """
        flat = p <= 9 if p is not None else all(a <= 9 for a, _ in self.runs)
        if flat:
            return ''.join(str(a) * k for a, k in self.runs)
        return ' '.join(f"{a}^{k}" for a, k in self.runs)


@dataclass(frozen=True)
class CoreBlock:
    """
    Element 1^{m_1} 2^{m_2} ... p^{m_p} of the core set G_S.

    Attributes:
        exponents: (m_1, ..., m_p), each m_i a member of S_i
    """

    exponents: Tuple[int, ...]

    @property
    def length(self) -> int:
        return sum(self.exponents)

    def to_word(self) -> RunWord:
        return RunWord(tuple((i + 1, m) for i, m in enumerate(self.exponents)))

    def __str__(self) -> str:
        return self.to_word().format()


@dataclass(frozen=True)
class CoreLengthSpectrum:
    """
    Number of core blocks of each length.

    Attributes:
        counts: counts[l - 1] = c_l for l = 1..truncation
        truncation: Largest length covered
    """

    counts: Tuple[int, ...]
    truncation: int

    def count(self, length: int) -> int:
        if length < 1 or length > self.truncation:
            return 0
        return self.counts[length - 1]

    def support(self) -> List[int]:
        """Lengths l with c_l > 0."""
        return [l for l, c in enumerate(self.counts, start=1) if c > 0]

    def as_dict(self) -> Dict[int, int]:
        return {l: c for l, c in enumerate(self.counts, start=1)}


@dataclass(frozen=True)
class Decomposition:
    """
    Factoring w = prefix · core · suffix.

    Attributes:
        prefix: Element of the prefix class, or empty
        core: Concatenation of core blocks, possibly empty
        suffix: Element of the suffix class, or empty
        blocks: The core blocks making up core
    """

    prefix: RunWord
    core: RunWord
    suffix: RunWord
    blocks: Tuple[CoreBlock, ...] = ()

    def to_dict(self, p: Optional[int] = None) -> Dict:
        return {
            'prefix': self.prefix.format(p),
            'core': self.core.format(p),
            'suffix': self.suffix.format(p),
            'blocks': [b.to_word().format(p) for b in self.blocks],
        }


def _decided(verdict: Verdict, what: str) -> bool:
    if verdict is Verdict.UNKNOWN:
        raise UnknownMembership(f"Membership beyond a declared bound needed for {what}")
    return verdict is Verdict.YES


def _member(shift: ShiftSpec, letter: int, n: int) -> bool:
    return _decided(contains(shift.set_for(letter), n), f"{n} ∈ S_{letter}")


def _extendable(shift: ShiftSpec, letter: int, n: int) -> bool:
    return _decided(shift.set_for(letter).at_least(n), f"some s ≥ {n} in S_{letter}")


def _exceeds(shift: ShiftSpec, letter: int, n: int) -> bool:
    return _decided(shift.set_for(letter).exceeds(n), f"some s > {n} in S_{letter}")


def members_up_to(spec: SetSpec, limit: int) -> List[int]:
    """Members ≤ limit, converting a bound breach into UnknownMembership."""
    if limit < 1:
        return []
    try:
        return spec.enumerate_up_to(limit)
    except BoundBreached as exc:
        raise UnknownMembership(str(exc)) from exc


def check_enumeration_cap(n: int, cap: Optional[int]) -> None:
    cap = cap or config.ENUMERATION_CAP
    if n > cap:
        raise EnumerationCapExceeded(f"Length {n} exceeds the enumeration cap {cap}")


def _letters_valid(shift: ShiftSpec, w: RunWord) -> bool:
    return all(1 <= a <= shift.p for a, _ in w.runs)


def is_in_language(shift: ShiftSpec, w: RunWord) -> bool:
    """
    Whether w occurs in some point of the shift.

    Interior runs must have lengths in their sets exactly; the first and last
    runs only need to be extendable to some legal run.

    Args:
        shift: The shift
        w: Word to test

    Returns:
        True iff w belongs to the language

    Raises:
        UnknownMembership: If the answer depends on a bounded set beyond its bound
    """
    if w.is_empty:
        return True
    if not _letters_valid(shift, w):
        return False
    runs = w.runs
    for (a, _), (b, _) in zip(runs, runs[1:]):
        if not shift.allows(a, b):
            return False

    checks: List[Tuple[Verdict, str]] = []
    if len(runs) == 1:
        a, k = runs[0]
        checks.append((shift.set_for(a).at_least(k), f"run {a}^{k}"))
    else:
        first, last = runs[0], runs[-1]
        checks.append((shift.set_for(first[0]).at_least(first[1]), f"run {first[0]}^{first[1]}"))
        checks.append((shift.set_for(last[0]).at_least(last[1]), f"run {last[0]}^{last[1]}"))
        for a, k in runs[1:-1]:
            checks.append((contains(shift.set_for(a), k), f"run {a}^{k}"))

    # A definite "no" settles the question even when another run is undecidable.
    if any(v is Verdict.NO for v, _ in checks):
        return False
    for verdict, what in checks:
        _decided(verdict, what)
    return True


def count_words(shift: ShiftSpec, n: int) -> int:
    """
    Count |B_n| by dynamic programming over runs.

    fill[b][r] counts the ways to write r letters that start a fresh run of
    b: every run is exact except the last, which only needs to be
    extendable. The first run of the word is cut on the left and so is also
    only required to be extendable.

    Args:
        shift: The shift
        n: Word length

    Returns:
        Number of words of length n in the language
    """
    if n < 1:
        raise ValueError(f"Word length must be positive, got {n}")
    letters = list(shift.letters)
    fill: Dict[int, List[int]] = {b: [0] * (n + 1) for b in letters}
    for r in range(1, n + 1):
        for b in letters:
            total = 0
            if _extendable(shift, b, r):
                total += 1
            for k in range(1, r):
                after = sum(fill[c][r - k] for c in shift.successors(b))
                if after and _member(shift, b, k):
                    total += after
            fill[b][r] = total

    count = 0
    for a in letters:
        if _extendable(shift, a, n):
            count += 1
        for k in range(1, n):
            after = sum(fill[c][n - k] for c in shift.successors(a))
            if after and _extendable(shift, a, k):
                count += after
    return count


def enumerate_words(shift: ShiftSpec, n: int, cap: Optional[int] = None) -> List[RunWord]:
    """
    List B_n in lexicographic order.

    Args:
        shift: The shift
        n: Word length
        cap: Largest n accepted (defaults to config)

    Returns:
        All words of length n in the language

    Raises:
        EnumerationCapExceeded: If n is above the cap
    """
    check_enumeration_cap(n, cap)
    if n < 1:
        return []
    return [RunWord.from_letters(letters) for letters in _extensions(shift, (), n)]


def _extensions(shift: ShiftSpec, prefix: Tuple[int, ...], n: int) -> Iterator[Tuple[int, ...]]:
    # Languages of shifts are extendable, so pruning on prefix membership
    # never cuts a branch that could still reach length n.
    if len(prefix) == n:
        yield prefix
        return
    for a in shift.letters:
        candidate = prefix + (a,)
        if is_in_language(shift, RunWord.from_letters(candidate)):
            yield from _extensions(shift, candidate, n)


def core_blocks_up_to(shift: ShiftSpec, limit: int) -> List[CoreBlock]:
    """
    All core blocks of length ≤ limit, sorted by (length, exponents).

    Args:
        shift: Ordered shift
        limit: Largest block length

    Returns:
        Sorted list of core blocks
    """
    shift.require_ordered("core_blocks_up_to")
    options = _exponent_options(shift, limit)
    if options is None:
        return []
    minima = [opts[0] for opts in options]
    blocks: List[CoreBlock] = []

    def extend(index: int, chosen: Tuple[int, ...], used: int) -> None:
        if index == shift.p:
            blocks.append(CoreBlock(chosen))
            return
        room = limit - used - sum(minima[index + 1:])
        for m in options[index]:
            if m > room:
                break
            extend(index + 1, chosen + (m,), used + m)

    extend(0, (), 0)
    blocks.sort(key=lambda b: (b.length, b.exponents))
    return blocks


def _exponent_options(shift: ShiftSpec, limit: int) -> Optional[List[List[int]]]:
    minima = [s.minimum for s in shift.sets]
    if sum(minima) > limit:
        return None
    options = []
    for i, spec in enumerate(shift.sets):
        largest = limit - (sum(minima) - minima[i])
        options.append(members_up_to(spec, largest))
    return options


def _indicator(spec: SetSpec, limit: int, dtype) -> np.ndarray:
    vector = np.zeros(limit + 1, dtype=dtype)
    for m in members_up_to(spec, limit):
        vector[m] = 1
    return vector


def length_spectrum(shift: ShiftSpec, limit: int) -> CoreLengthSpectrum:
    """
    Core length spectrum c_1..c_L.

    Computed as the p-fold convolution of the sets' indicator sequences.
    Counts stay exact: int64 is used while C(L-1, p-1) fits, Python
    integers beyond that.

    Args:
        shift: Ordered shift
        limit: Truncation L

    Returns:
        CoreLengthSpectrum of the shift up to L
    """
    shift.require_ordered("length_spectrum")
    if limit < 1:
        raise ValueError(f"Truncation must be positive, got {limit}")
    minima = [s.minimum for s in shift.sets]
    if sum(minima) > limit:
        return CoreLengthSpectrum(tuple([0] * limit), limit)

    exact_int64 = math.comb(limit - 1, shift.p - 1) < (1 << 62)
    dtype = np.int64 if exact_int64 else object
    result = None
    for i, spec in enumerate(shift.sets):
        largest = limit - (sum(minima) - minima[i])
        vector = _indicator(spec, largest, dtype)
        if result is None:
            result = vector
        elif exact_int64:
            result = np.convolve(result, vector)[:limit + 1]
        else:
            result = _convolve_exact(result, vector, limit)
    counts = [int(c) for c in result[1:limit + 1]]
    counts += [0] * (limit - len(counts))
    return CoreLengthSpectrum(tuple(counts), limit)


def _convolve_exact(left: np.ndarray, right: np.ndarray, limit: int) -> np.ndarray:
    out = np.zeros(min(limit, len(left) + len(right) - 2) + 1, dtype=object)
    nonzero = [j for j in range(len(right)) if right[j]]
    for i in range(len(left)):
        if not left[i]:
            continue
        for j in nonzero:
            if i + j >= len(out):
                break
            out[i + j] += left[i] * right[j]
    return out


def _cyclic_runs(letters: Sequence[int]) -> Optional[List[Tuple[int, int]]]:
    """Runs of a cyclic word rotated to start at a run boundary; None if constant."""
    n = len(letters)
    start = next((j for j in range(n) if letters[j - 1] != letters[j]), None)
    if start is None:
        return None
    rotated = list(letters[start:]) + list(letters[:start])
    return list(RunWord.from_letters(rotated).runs)


def is_periodic_word(shift: ShiftSpec, w: RunWord) -> bool:
    """
    Whether the bi-infinite repetition of w is a point of the shift.

    Runs are read cyclically, so a run may wrap the seam; every run must be
    exact. A constant word i^n is valid iff S_i is infinite.

    Args:
        shift: The shift
        w: Nonempty word, read as a necklace

    Returns:
        True iff w^∞ belongs to the shift
    """
    if w.is_empty or not _letters_valid(shift, w):
        return False
    runs = _cyclic_runs(w.letters())
    if runs is None:
        return shift.set_for(w.runs[0][0]).is_infinite()
    for (a, _), (b, _) in zip(runs, runs[1:] + runs[:1]):
        if not shift.allows(a, b):
            return False
    return all(_member(shift, a, k) for a, k in runs)


def periodic_points(shift: ShiftSpec, n: int) -> int:
    """
    Number of points x with σⁿ(x) = x.

    Non-constant points are counted by the run that covers coordinate 0:
    its letter a, its length ℓ and the ℓ possible offsets, times the number
    of exact run sequences filling the other n - ℓ coordinates between a
    and a again. Constant points i^∞ are added for every infinite S_i.

    Args:
        shift: The shift
        n: Period

    Returns:
        Number of period-n points

    Raises:
        InfinitudeUnknown: If some set is a bounded explicit list
    """
    if n < 1:
        raise ValueError(f"Period must be positive, got {n}")
    letters = list(shift.letters)
    constant_points = sum(1 for s in shift.sets if s.is_infinite())
    members = {a: set(members_up_to(shift.set_for(a), n)) for a in letters}

    total = 0
    for a in letters:
        lengths = [l for l in sorted(members[a]) if l < n]
        if not lengths:
            continue
        # between[r][b]: exact run sequences of length r leaving a and ending in b
        between = [dict.fromkeys(letters, 0) for _ in range(n)]
        for r in range(1, n):
            for b in letters:
                ways = 0
                for k in members[b]:
                    if k > r:
                        continue
                    if k == r:
                        ways += 1 if shift.allows(a, b) else 0
                    else:
                        ways += sum(between[r - k][c] for c in shift.predecessors(b))
                between[r][b] = ways
        for l in lengths:
            total += l * sum(between[n - l][b] for b in shift.predecessors(a))

    return total + constant_points


def periodic_words(shift: ShiftSpec, n: int, cap: Optional[int] = None) -> List[RunWord]:
    """
    The words w of length n whose repetition is a point of the shift.

    There is exactly one such word per period-n point (its coordinates
    0..n-1), so the list has periodic_points(shift, n) entries.

    Args:
        shift: The shift
        n: Period
        cap: Largest n accepted (defaults to config)

    Returns:
        Lexicographically sorted words
    """
    return [w for w in enumerate_words(shift, n, cap) if is_periodic_word(shift, w)]


def find_connector(
    shift: ShiftSpec,
    u: RunWord,
    v: RunWord,
    n: int,
    cap: Optional[int] = None
) -> Optional[RunWord]:
    """
    Find a word ξ of length exactly n with uξv in the language.

    The search is exhaustive and returns the lexicographically first
    connector.

    Args:
        shift: The shift
        u: Left word, in the language
        v: Right word, in the language
        n: Connector length (0 checks uv itself)
        cap: Largest n accepted (defaults to config)

    Returns:
        A connector, or None if none of length n exists

    Raises:
        WordNotInLanguage: If u or v is not in the language
    """
    for word in (u, v):
        if not is_in_language(shift, word):
            raise WordNotInLanguage(f"{word.format(shift.p)} is not in the language")
    check_enumeration_cap(n, cap)
    left = u.letters()
    right = v.letters()

    def search(middle: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        if len(middle) == n:
            whole = RunWord.from_letters(left + middle + right)
            return middle if is_in_language(shift, whole) else None
        for a in shift.letters:
            candidate = middle + (a,)
            if is_in_language(shift, RunWord.from_letters(left + candidate)):
                found = search(candidate)
                if found is not None:
                    return found
        return None

    found = search(())
    return None if found is None else RunWord.from_letters(found)


def _climbs(shift: ShiftSpec, runs: Sequence[Tuple[int, int]]) -> bool:
    """Whether run letters go l, l+1, ..., k without wrapping past p."""
    return all(b == a + 1 for (a, _), (b, _) in zip(runs, runs[1:]))


def in_prefix_class(shift: ShiftSpec, w: RunWord) -> bool:
    """
    Membership in the prefix class C^P.

    C^P holds the proper tails l^n (l+1)^{s_{l+1}} ... p^{s_p} of core
    blocks: the word ends with a complete p-run, every run after the first
    is exact, and the first run is a tail of a legal run. When the word
    starts with letter 1 the tail must be proper (some s ∈ S_1 with s > n).

    Args:
        shift: Ordered shift
        w: Nonempty word

    Returns:
        True iff w ∈ C^P
    """
    shift.require_ordered("in_prefix_class")
    runs = w.runs
    if not runs or not _letters_valid(shift, w):
        return False
    if not _climbs(shift, runs) or runs[-1][0] != shift.p:
        return False
    if not all(_member(shift, a, k) for a, k in runs[1:]):
        return False
    first_letter, first_length = runs[0]
    if first_letter == 1:
        return _exceeds(shift, 1, first_length)
    return _extendable(shift, first_letter, first_length)


def in_suffix_class(shift: ShiftSpec, w: RunWord) -> bool:
    """
    Membership in the suffix class C^S.

    C^S holds the words that sit inside a single core block and stop before
    its end: run letters climb l, ..., k without wrapping, interior runs are
    exact, the first run is extendable, and the last run is extendable (or,
    for k = p, strictly shorter than some member of S_p).

    Args:
        shift: Ordered shift
        w: Nonempty word

    Returns:
        True iff w ∈ C^S
    """
    shift.require_ordered("in_suffix_class")
    runs = w.runs
    if not runs or not _letters_valid(shift, w):
        return False
    if not _climbs(shift, runs):
        return False
    if any(not _member(shift, a, k) for a, k in runs[1:-1]):
        return False
    first_letter, first_length = runs[0]
    last_letter, last_length = runs[-1]
    if not _extendable(shift, first_letter, first_length):
        return False
    if last_letter == shift.p:
        return _exceeds(shift, last_letter, last_length)
    return _extendable(shift, last_letter, last_length)


def split_core_blocks(shift: ShiftSpec, w: RunWord) -> Optional[List[CoreBlock]]:
    """
    Split w into core blocks.

    Args:
        shift: Ordered shift
        w: Word to split

    Returns:
        The blocks (empty for the empty word), or None if w is not a
        concatenation of core blocks
    """
    runs = w.runs
    p = shift.p
    if len(runs) % p:
        return None
    blocks = []
    for start in range(0, len(runs), p):
        group = runs[start:start + p]
        if [a for a, _ in group] != list(shift.letters):
            return None
        if not all(_member(shift, a, k) for a, k in group):
            return None
        blocks.append(CoreBlock(tuple(k for _, k in group)))
    return blocks


def decompose(shift: ShiftSpec, w: RunWord) -> Decomposition:
    """
    Factor w as prefix · core · suffix.

    The prefix lies in C^P or is empty, the core is a concatenation of core
    blocks and the suffix lies in C^S or is empty. Splits are tried at run
    boundaries only; the shortest prefix wins, then the longest core.

    Args:
        shift: Ordered shift
        w: Word in the language

    Returns:
        The canonical decomposition

    Raises:
        WordNotInLanguage: If w is not in the language
    """
    shift.require_ordered("decompose")
    if not is_in_language(shift, w):
        raise WordNotInLanguage(f"{w.format(shift.p)} is not in the language")
    runs = w.runs
    for i in range(len(runs) + 1):
        prefix = RunWord(runs[:i])
        if i and not in_prefix_class(shift, prefix):
            continue
        rest = runs[i:]
        full_groups = len(rest) // shift.p
        for groups in range(full_groups, -1, -1):
            core = RunWord(rest[:groups * shift.p])
            blocks = split_core_blocks(shift, core)
            if blocks is None:
                continue
            suffix = RunWord(rest[groups * shift.p:])
            if suffix.is_empty or in_suffix_class(shift, suffix):
                return Decomposition(prefix, core, suffix, tuple(blocks))
    raise ShiftError(f"No decomposition found for {w.format(shift.p)}")


def _composition_counts(shift: ShiftSpec, letters: Sequence[int], total: int) -> List[int]:
    """ways[r] = number of exact run-length choices for letters summing to r."""
    ways = [1] + [0] * total
    for a in letters:
        options = members_up_to(shift.set_for(a), total)
        step = [0] * (total + 1)
        for r, count in enumerate(ways):
            if not count:
                continue
            for k in options:
                if r + k > total:
                    break
                step[r + k] += count
        ways = step
    return ways


def boundary_word_counts(shift: ShiftSpec, n: int) -> Tuple[int, int]:
    """
    Sizes of B_n(C^P) and B_n(C^S).

    Args:
        shift: Ordered shift
        n: Word length

    Returns:
        (number of length-n words in C^P, number in C^S)
    """
    shift.require_ordered("boundary_word_counts")
    p = shift.p
    prefix_count = 0
    for l in shift.letters:
        tail = _composition_counts(shift, range(l + 1, p + 1), n)
        for k in range(1, n + 1):
            if not tail[n - k]:
                continue
            if l == 1:
                ok = _exceeds(shift, 1, k)
            else:
                ok = _extendable(shift, l, k)
            if ok:
                prefix_count += tail[n - k]

    suffix_count = 0
    for l in shift.letters:
        for last in range(l, p + 1):
            closes = _exceeds if last == p else _extendable
            if last == l:
                if _extendable(shift, l, n) and closes(shift, l, n):
                    suffix_count += 1
                continue
            middle = _composition_counts(shift, range(l + 1, last), n)
            for k in range(1, n):
                if not _extendable(shift, l, k):
                    continue
                for j in range(1, n - k + 1):
                    if middle[n - k - j] and closes(shift, last, j):
                        suffix_count += middle[n - k - j]
    return prefix_count, suffix_count


def boundary_growth(shift: ShiftSpec, n_max: int) -> List[Dict[str, int]]:
    """
    Growth table of the boundary classes for n = 1..n_max.

    Returns:
        One record per n with keys n, prefix_words, suffix_words, words
    """
    table = []
    for n in range(1, n_max + 1):
        prefix_count, suffix_count = boundary_word_counts(shift, n)
        table.append({
            'n': n,
            'prefix_words': prefix_count,
            'suffix_words': suffix_count,
            'words': count_words(shift, n),
        })
    logger.debug(f"Boundary growth computed up to n={n_max}")
    return table
