"""
Limiting Sets Module

This module represents the run-length sets S_i ⊆ ℕ of an S-limited shift in
four finitely-describable forms and answers the queries the rest of the
toolkit needs: membership, enumeration, the m-th smallest element and the
difference sequence Δ(S).

- FiniteSet: an explicit finite list
- CofiniteSet: ℕ minus an explicit finite list
- PeriodicDeltaSet: an initial list continued forever by cycling a list of
  differences (Δ eventually periodic)
- BoundedExplicitSet: an explicit list whose membership beyond a declared
  bound is unknown

Three-valued answers are reported with Verdict rather than Optional[bool].
"""

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import (
    BoundBreached,
    IndexBeyondSet,
    InfinitudeUnknown,
    SetSpecError,
    UnknownMembership,
)


class Verdict(str, Enum):
    """Three-valued answer: yes, no or unknown."""

    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: bool) -> "Verdict":
        """Convert a decided boolean into a Verdict."""
        return cls.YES if value else cls.NO

    def __bool__(self) -> bool:
        if self is Verdict.UNKNOWN:
            raise UnknownMembership("An unknown verdict has no truth value; compare with `is`")
        return self is Verdict.YES


class SetKind(str, Enum):
    """Declared form of a set, as reported by classify_set."""

    FINITE = "finite"
    COFINITE = "cofinite"
    EVENTUALLY_PERIODIC_DELTA = "eventuallyPeriodicDelta"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class DeltaSequence:
    """
    Difference sequence Δ(S) of a set.

    Attributes:
        head: Minimum element followed by consecutive differences
        eventual_period: Repeating difference cycle after the head, if any
    """

    head: Tuple[int, ...]
    eventual_period: Optional[Tuple[int, ...]] = None

    def rebuild(self, limit: int) -> List[int]:
        """
        Rebuild the sorted members ≤ limit from the partial sums.

        Args:
            limit: Largest value of interest

        Returns:
            Sorted list of members not exceeding limit
        """
        members: List[int] = []
        total = 0
        for step in self.head:
            total += step
            if total > limit:
                return members
            members.append(total)
        if not self.eventual_period:
            return members
        for step in itertools.cycle(self.eventual_period):
            total += step
            if total > limit:
                return members
            members.append(total)
        return members

    def to_dict(self) -> Dict[str, Any]:
        return {
            'head': list(self.head),
            'eventual_period': list(self.eventual_period) if self.eventual_period else None,
        }


def _as_tuple(values: Sequence[int]) -> Tuple[int, ...]:
    try:
        return tuple(int(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise SetSpecError(f"Set elements must be integers: {values!r}") from exc


def _check_increasing(values: Tuple[int, ...], what: str, allow_empty: bool = False) -> None:
    if not values and not allow_empty:
        raise SetSpecError(f"{what} must be nonempty")
    if any(v < 1 for v in values):
        raise SetSpecError(f"{what} must contain positive integers only: {list(values)}")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise SetSpecError(f"{what} must be strictly increasing: {list(values)}")


def _differences(elements: Sequence[int]) -> Tuple[int, ...]:
    if not elements:
        return ()
    return (elements[0],) + tuple(b - a for a, b in zip(elements, elements[1:]))


class SetSpec(ABC):
    """
    Common interface of the four set forms.

    Subclasses are immutable; every query is a pure function of the
    declared data.
    """

    @abstractmethod
    def contains(self, n: int) -> Verdict:
        """Membership of n (unknown only beyond a declared bound)."""

    @abstractmethod
    def enumerate_up_to(self, limit: int) -> List[int]:
        """All members ≤ limit in increasing order."""

    @abstractmethod
    def nth_element(self, m: int) -> int:
        """The m-th smallest member, 1-indexed."""

    @abstractmethod
    def delta_sequence(self) -> DeltaSequence:
        """Difference sequence of the set."""

    @abstractmethod
    def classify(self) -> SetKind:
        """Declared form of the set."""

    @abstractmethod
    def at_least(self, n: int) -> Verdict:
        """Whether some member s satisfies s ≥ n."""

    @abstractmethod
    def is_infinite(self) -> bool:
        """Whether the set is infinite; raises InfinitudeUnknown if undecidable."""

    @abstractmethod
    def head_end(self) -> int:
        """Largest member of the irregular head of Δ (or the last listed member)."""

    @abstractmethod
    def period_sum(self) -> int:
        """Sum of the eventual Δ period, 0 when there is none."""

    @abstractmethod
    def with_element(self, n: int) -> "SetSpec":
        """A set of the same form with n added."""

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """Structured description used in JSON reports."""

    @property
    def minimum(self) -> int:
        return self.nth_element(1)

    @property
    def is_closed_form(self) -> bool:
        return self.classify() is not SetKind.UNKNOWN

    def exceeds(self, n: int) -> Verdict:
        """Whether some member s satisfies s > n."""
        return self.at_least(n + 1)

    def first_elements(self, count: int) -> List[int]:
        """
        The first min(count, |S|) members.

        Args:
            count: Number of members wanted

        Returns:
            Increasing list of members
        """
        result: List[int] = []
        for m in range(1, count + 1):
            try:
                result.append(self.nth_element(m))
            except IndexBeyondSet:
                break
        return result

    def truncate(self, count: int) -> "FiniteSet":
        """The finite set of the first min(count, |S|) members."""
        return FiniteSet(tuple(self.first_elements(count)))


@dataclass(frozen=True)
class FiniteSet(SetSpec):
    """
    Explicit finite set.

    Attributes:
        elements: Strictly increasing positive integers
    """

    elements: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'elements', _as_tuple(self.elements))
        _check_increasing(self.elements, "Finite set")

    def contains(self, n: int) -> Verdict:
        return Verdict.of(n in self.elements)

    def enumerate_up_to(self, limit: int) -> List[int]:
        return [e for e in self.elements if e <= limit]

    def nth_element(self, m: int) -> int:
        if m < 1 or m > len(self.elements):
            raise IndexBeyondSet(f"Finite set has {len(self.elements)} elements, asked for #{m}")
        return self.elements[m - 1]

    def delta_sequence(self) -> DeltaSequence:
        return DeltaSequence(_differences(self.elements), None)

    def classify(self) -> SetKind:
        return SetKind.FINITE

    def at_least(self, n: int) -> Verdict:
        return Verdict.of(self.elements[-1] >= n)

    def is_infinite(self) -> bool:
        return False

    def head_end(self) -> int:
        return self.elements[-1]

    def period_sum(self) -> int:
        return 0

    @property
    def maximum(self) -> int:
        return self.elements[-1]

    def with_element(self, n: int) -> "FiniteSet":
        return FiniteSet(tuple(sorted(set(self.elements) | {n})))

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': 'finite', 'elements': list(self.elements)}


@dataclass(frozen=True)
class CofiniteSet(SetSpec):
    """
    ℕ minus a finite exclusion list.

    Attributes:
        excluded: Excluded positive integers; sorted on construction,
            duplicates rejected
    """

    excluded: Tuple[int, ...] = ()

    def __post_init__(self):
        values = _as_tuple(self.excluded)
        if len(set(values)) != len(values):
            raise SetSpecError(f"Cofinite exclusion list has duplicates: {list(values)}")
        values = tuple(sorted(values))
        _check_increasing(values, "Cofinite exclusion list", allow_empty=True)
        object.__setattr__(self, 'excluded', values)

    def contains(self, n: int) -> Verdict:
        return Verdict.of(n >= 1 and n not in self.excluded)

    def enumerate_up_to(self, limit: int) -> List[int]:
        skip = set(self.excluded)
        return [k for k in range(1, limit + 1) if k not in skip]

    def nth_element(self, m: int) -> int:
        if m < 1:
            raise IndexBeyondSet(f"Index must be ≥ 1, got {m}")
        candidate = m
        for e in self.excluded:
            if e <= candidate:
                candidate += 1
        return candidate

    def delta_sequence(self) -> DeltaSequence:
        return DeltaSequence(_differences(self.enumerate_up_to(self.head_end())), (1,))

    def classify(self) -> SetKind:
        return SetKind.COFINITE

    def at_least(self, n: int) -> Verdict:
        return Verdict.YES

    def is_infinite(self) -> bool:
        return True

    def head_end(self) -> int:
        return self.excluded[-1] + 1 if self.excluded else 1

    def period_sum(self) -> int:
        return 1

    def with_element(self, n: int) -> "CofiniteSet":
        return CofiniteSet(tuple(e for e in self.excluded if e != n))

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': 'cofinite', 'excluded': list(self.excluded)}


@dataclass(frozen=True)
class PeriodicDeltaSet(SetSpec):
    """
    Set whose difference sequence is eventually periodic.

    The set is the initial list followed by last + d_1, last + d_1 + d_2, ...
    cycling through diffs forever.

    Attributes:
        initial: Strictly increasing positive integers
        diffs: Positive differences of the repeating cycle
    """

    initial: Tuple[int, ...]
    diffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'initial', _as_tuple(self.initial))
        object.__setattr__(self, 'diffs', _as_tuple(self.diffs))
        _check_increasing(self.initial, "Initial list")
        if not self.diffs or any(d < 1 for d in self.diffs):
            raise SetSpecError(f"Period differences must be positive and nonempty: {list(self.diffs)}")

    @property
    def _offsets(self) -> List[int]:
        return [0] + list(itertools.accumulate(self.diffs))

    def _iter_members(self) -> Iterator[int]:
        yield from self.initial
        total = self.initial[-1]
        for step in itertools.cycle(self.diffs):
            total += step
            yield total

    def contains(self, n: int) -> Verdict:
        last = self.initial[-1]
        if n <= last:
            return Verdict.of(n in self.initial)
        residues = {o % self.period_sum() for o in self._offsets[1:]}
        return Verdict.of((n - last) % self.period_sum() in residues)

    def enumerate_up_to(self, limit: int) -> List[int]:
        return list(itertools.takewhile(lambda s: s <= limit, self._iter_members()))

    def nth_element(self, m: int) -> int:
        if m < 1:
            raise IndexBeyondSet(f"Index must be ≥ 1, got {m}")
        if m <= len(self.initial):
            return self.initial[m - 1]
        cycles, rest = divmod(m - len(self.initial), len(self.diffs))
        return self.initial[-1] + cycles * self.period_sum() + self._offsets[rest]

    def delta_sequence(self) -> DeltaSequence:
        return DeltaSequence(_differences(self.initial), self.diffs)

    def classify(self) -> SetKind:
        return SetKind.EVENTUALLY_PERIODIC_DELTA

    def at_least(self, n: int) -> Verdict:
        return Verdict.YES

    def is_infinite(self) -> bool:
        return True

    def is_cofinite(self) -> bool:
        """Whether the eventual period is all ones (the set is cofinite)."""
        return all(d == 1 for d in self.diffs)

    def head_end(self) -> int:
        return self.initial[-1]

    def period_sum(self) -> int:
        return sum(self.diffs)

    def with_element(self, n: int) -> "PeriodicDeltaSet":
        if self.contains(n):
            return self
        if n < self.initial[-1]:
            return PeriodicDeltaSet(tuple(sorted(self.initial + (n,))), self.diffs)
        # Re-anchor the cycle at the first member past n.
        members = []
        for steps, member in enumerate(self._iter_members()):
            members.append(member)
            if member > n:
                break
        phase = (steps - len(self.initial) + 1) % len(self.diffs)
        rotated = self.diffs[phase:] + self.diffs[:phase]
        return PeriodicDeltaSet(tuple(sorted(members + [n])), rotated)

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': 'epd', 'initial': list(self.initial), 'diffs': list(self.diffs)}


@dataclass(frozen=True)
class BoundedExplicitSet(SetSpec):
    """
    Explicit list with membership declared unknown beyond a bound.

    Attributes:
        elements: Strictly increasing positive integers
        bound: Largest integer whose membership is known; ≥ last element
    """

    elements: Tuple[int, ...]
    bound: int

    def __post_init__(self):
        object.__setattr__(self, 'elements', _as_tuple(self.elements))
        _check_increasing(self.elements, "Explicit set")
        if self.bound < self.elements[-1]:
            raise SetSpecError(f"Bound {self.bound} is below the largest element {self.elements[-1]}")

    def contains(self, n: int) -> Verdict:
        if n > self.bound:
            return Verdict.UNKNOWN
        return Verdict.of(n in self.elements)

    def enumerate_up_to(self, limit: int) -> List[int]:
        if limit > self.bound:
            raise BoundBreached(f"Cannot enumerate up to {limit}; membership is known only up to {self.bound}")
        return [e for e in self.elements if e <= limit]

    def nth_element(self, m: int) -> int:
        if m < 1 or m > len(self.elements):
            raise IndexBeyondSet(f"Only {len(self.elements)} elements are known, asked for #{m}")
        return self.elements[m - 1]

    def delta_sequence(self) -> DeltaSequence:
        return DeltaSequence(_differences(self.elements), None)

    def classify(self) -> SetKind:
        return SetKind.UNKNOWN

    def at_least(self, n: int) -> Verdict:
        return Verdict.YES if self.elements[-1] >= n else Verdict.UNKNOWN

    def is_infinite(self) -> bool:
        raise InfinitudeUnknown(f"Infinitude of an explicit set known up to {self.bound} is undecidable")

    def head_end(self) -> int:
        return self.elements[-1]

    def period_sum(self) -> int:
        return 0

    def with_element(self, n: int) -> "BoundedExplicitSet":
        return BoundedExplicitSet(tuple(sorted(set(self.elements) | {n})), max(self.bound, n))

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': 'explicit', 'elements': list(self.elements), 'bound': self.bound}


def natural_numbers() -> CofiniteSet:
    """The set ℕ of all positive integers."""
    return CofiniteSet(())


def contains(spec: SetSpec, n: int) -> Verdict:
    """
    Membership query.

    Args:
        spec: Set to query
        n: Positive integer

    Returns:
        yes/no, or unknown for bounded sets beyond their bound
    """
    if n < 1:
        return Verdict.NO
    return spec.contains(n)


def enumerate_up_to(spec: SetSpec, limit: int) -> List[int]:
    """Sorted members ≤ limit; BoundBreached past a bounded set's bound."""
    if limit < 1:
        return []
    return spec.enumerate_up_to(limit)


def nth_element(spec: SetSpec, m: int) -> int:
    """The m-th smallest member (1-indexed); IndexBeyondSet if absent."""
    return spec.nth_element(m)


def delta_sequence(spec: SetSpec) -> DeltaSequence:
    """Difference sequence of the set."""
    return spec.delta_sequence()


def classify_set(spec: SetSpec) -> SetKind:
    """Declared form of the set; bounded explicit sets report unknown."""
    return spec.classify()


def is_cofinite(spec: SetSpec) -> Verdict:
    """
    Whether the set is cofinite.

    Periodic-Δ sets whose cycle is all ones count as cofinite.
    """
    if isinstance(spec, CofiniteSet):
        return Verdict.YES
    if isinstance(spec, PeriodicDeltaSet):
        return Verdict.of(spec.is_cofinite())
    if isinstance(spec, FiniteSet):
        return Verdict.NO
    return Verdict.UNKNOWN


def set_from_dict(data: Dict[str, Any]) -> SetSpec:
    """
    Rebuild a set from its to_dict form.

    Args:
        data: Dictionary with a 'kind' key

    Returns:
        The described set
    """
    kind = data.get('kind')
    if kind == 'finite':
        return FiniteSet(tuple(data['elements']))
    if kind == 'cofinite':
        return CofiniteSet(tuple(data.get('excluded', ())))
    if kind == 'epd':
        return PeriodicDeltaSet(tuple(data['initial']), tuple(data['diffs']))
    if kind == 'explicit':
        return BoundedExplicitSet(tuple(data['elements']), int(data['bound']))
    raise SetSpecError(f"Unknown set kind: {kind!r}")
