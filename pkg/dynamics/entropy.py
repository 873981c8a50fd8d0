"""
Entropy Module

This module computes the topological entropy of an ordered S-limited shift.
The entropy is log(1/λ), where λ ∈ (0, 1] is the unique positive root of

    F_1(x) = Σ_{ω ∈ G_S} x^{|ω|} = Σ_l c_l x^l = 1

and c_l counts the core blocks of length l. F_1 is evaluated from a
truncated length spectrum with a rigorous tail bound, and λ is found by
bisection so that the result comes with a certified bracket.

Also provided:
- truncated_shift: the SFT subsystems that approximate the entropy from below
- empirical_entropy: log|B_n| / n from exact word counts
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

import config
from shifts.errors import UnknownMembership
from shifts.language import (
    CoreLengthSpectrum,
    ShiftSpec,
    check_enumeration_cap,
    count_words,
    length_spectrum,
)
from shifts.sets import BoundedExplicitSet, FiniteSet

logger = logging.getLogger(__name__)

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class EntropyResult:
    """
    Certified entropy value.

    Attributes:
        value: Entropy in natural log units, -ln(lam)
        lam: Root of F_1(x) = 1
        tolerance: Requested absolute tolerance on value
        truncation: Largest spectrum length L used
        certificate: (upper bound of F_1 at the lower end of the λ bracket,
            lower bound of F_1 at the upper end); brackets 1
        lambda_bracket: Interval known to contain λ
        converged: False if the truncation cap stopped refinement early
    """

    value: float
    lam: float
    tolerance: float
    truncation: int
    certificate: Tuple[float, float]
    lambda_bracket: Tuple[float, float]
    converged: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            'value': self.value,
            'lambda': self.lam,
            'tolerance': self.tolerance,
            'truncation': self.truncation,
            'certificate': list(self.certificate),
            'lambda_bracket': list(self.lambda_bracket),
            'converged': self.converged,
            'log_base': config.LOG_BASE,
        }


class _SpectrumCache:
    """Length spectrum of one shift, grown by doubling on demand."""

    def __init__(self, shift: ShiftSpec, initial: int):
        self.shift = shift
        self.spectrum: Optional[CoreLengthSpectrum] = None
        self.floats: Optional[np.ndarray] = None
        self.grow(initial)

    @property
    def truncation(self) -> int:
        return self.spectrum.truncation

    def grow(self, limit: int) -> None:
        self.spectrum = length_spectrum(self.shift, limit)
        self.floats = np.array([float(c) for c in self.spectrum.counts])


def _all_finite_bound(shift: ShiftSpec) -> Optional[int]:
    """Σ max S_i when every set is finite (no block is longer), else None."""
    if all(isinstance(s, FiniteSet) for s in shift.sets):
        return sum(s.maximum for s in shift.sets)
    return None


def _tail_bound(p: int, x: float, truncation: int) -> float:
    """Bound on Σ_{l > L} C(l-1, p-1) x^l; infinite until term ratios fall below 1."""
    if truncation + 2 - p <= 0:
        return math.inf
    ratio = x * (truncation + 1) / (truncation + 2 - p)
    if ratio >= 1.0:
        return math.inf
    log_first = (
        math.lgamma(truncation + 1) - math.lgamma(p) - math.lgamma(truncation - p + 2)
        + (truncation + 1) * math.log(x)
    )
    return math.exp(log_first) / (1.0 - ratio)


def _bounds_from(shift: ShiftSpec, counts: np.ndarray, x: float) -> Tuple[float, float]:
    truncation = len(counts)
    powers = np.power(x, np.arange(1, truncation + 1, dtype=float))
    partial = math.fsum(counts * powers)
    slack = 8 * truncation * _EPS * partial
    finite_bound = _all_finite_bound(shift)
    if finite_bound is not None and truncation >= finite_bound:
        tail = 0.0
    else:
        tail = _tail_bound(shift.p, x, truncation)
    return max(0.0, partial - slack), partial + slack + tail


def _require_closed_form(shift: ShiftSpec, operation: str) -> None:
    shift.require_ordered(operation)
    if any(isinstance(s, BoundedExplicitSet) for s in shift.sets):
        raise UnknownMembership(
            f"{operation} needs closed-form sets; truncate bounded explicit sets first"
        )


def genfun_bounds(shift: ShiftSpec, x: float, truncation: int) -> Tuple[float, float]:
    """
    Lower and upper bounds on F_1(x).

    The lower bound is the partial sum Σ_{l ≤ L} c_l x^l. The upper bound
    adds a bound on the remaining terms using c_l ≤ C(l-1, p-1): term ratios
    of that binomial series decrease, so the tail is at most a geometric
    series started at l = L + 1. Both ends are padded for rounding.

    Args:
        shift: Ordered shift with closed-form sets
        x: Evaluation point, 0 < x < 1
        truncation: Spectrum length L

    Returns:
        (lower, upper) with lower ≤ F_1(x) ≤ upper
    """
    _require_closed_form(shift, "genfun_bounds")
    if not 0.0 < x < 1.0:
        raise ValueError(f"x must lie in (0, 1), got {x}")
    spectrum = length_spectrum(shift, truncation)
    counts = np.array([float(c) for c in spectrum.counts])
    return _bounds_from(shift, counts, x)


def _bounds_at(cache: _SpectrumCache, x: float, tol: float) -> Tuple[float, float, bool]:
    """Bounds at x, growing the spectrum until the sign of F_1 - 1 is clear or the tail is below tol/4."""
    while True:
        lower, upper = _bounds_from(cache.shift, cache.floats, x)
        tail_small = upper - lower < tol / 4
        decided = upper < 1.0 or lower > 1.0
        if decided or tail_small or cache.truncation >= config.MAX_TRUNCATION:
            return lower, upper, decided
        cache.grow(min(2 * cache.truncation, config.MAX_TRUNCATION))


def solve_entropy(shift: ShiftSpec, tol: float = None) -> EntropyResult:
    """
    Entropy log(1/λ) with F_1(λ) = 1, to absolute tolerance tol.

    Bisection runs on λ ∈ (0, 1]. F_1 is increasing, so a certified upper
    bound below 1 moves the lower end and a certified lower bound above 1
    moves the upper end. Iteration stops once ln(hi / lo) ≤ tol.

    Args:
        shift: Ordered shift with closed-form sets
        tol: Absolute tolerance on the entropy (defaults to config)

    Returns:
        EntropyResult

    Raises:
        UnknownMembership: If some set is a bounded explicit list
    """
    tol = tol or config.DEFAULT_ENTROPY_TOL
    _require_closed_form(shift, "solve_entropy")

    if all(isinstance(s, FiniteSet) and len(s.elements) == 1 for s in shift.sets):
        # A single core block: one periodic orbit, zero entropy.
        length = sum(s.elements[0] for s in shift.sets)
        return EntropyResult(0.0, 1.0, tol, length, (1.0, 1.0), (1.0, 1.0))

    cache = _SpectrumCache(shift, config.INITIAL_TRUNCATION)
    lo, hi = 0.0, 1.0
    # At x = 1 the partial sum counts blocks; two or more put F_1(1) above 1.
    cert_lo, cert_hi = 0.0, float(sum(cache.spectrum.counts))
    converged = True
    for _ in range(config.MAX_BISECTION_STEPS):
        if lo > 0.0 and math.log(hi / lo) <= tol:
            break
        mid = 0.5 * (lo + hi)
        lower, upper, decided = _bounds_at(cache, mid, tol)
        if not decided:
            # F_1(mid) is within the bound width of 1, so mid is the root.
            lo, hi = mid, mid
            cert_lo, cert_hi = lower, upper
            converged = upper - lower < tol
            if not converged:
                logger.warning(
                    f"F_1({mid}) not separated from 1 at truncation {cache.truncation}; "
                    f"bounds [{lower}, {upper}]"
                )
            break
        if upper < 1.0:
            lo, cert_lo = mid, upper
        else:
            hi, cert_hi = mid, lower
    else:
        converged = False
        logger.warning(f"Bisection step limit reached with bracket [{lo}, {hi}]")

    lam = math.sqrt(lo * hi)
    return EntropyResult(
        value=-math.log(lam),
        lam=lam,
        tolerance=tol,
        truncation=cache.truncation,
        certificate=(cert_lo, cert_hi),
        lambda_bracket=(lo, hi),
        converged=converged,
    )


def truncated_shift(shift: ShiftSpec, n: int) -> ShiftSpec:
    """
    Keep only the first n members of every set.

    The result has finite sets only, hence is an SFT, and its entropy
    increases to that of the original shift as n grows.

    Args:
        shift: Ordered shift
        n: Number of members kept per set

    Returns:
        The truncated shift
    """
    shift.require_ordered("truncated_shift")
    if n < 1:
        raise ValueError(f"Truncation must be positive, got {n}")
    name = f"{shift.name}|{n}" if shift.name else None
    return shift.with_sets([s.truncate(n) for s in shift.sets], name=name)


def empirical_entropy(shift: ShiftSpec, n: int, cap: Optional[int] = None) -> float:
    """
    Finite-length estimate ln|B_n| / n.

    Args:
        shift: The shift
        n: Word length, within the enumeration cap
        cap: Largest n accepted (defaults to config)

    Returns:
        Natural log of the word count divided by n
    """
    check_enumeration_cap(n, cap)
    return math.log(count_words(shift, n)) / n
