"""
Shift modules for limiting sets, languages, classification and spec files.
"""

from .sets import (
    SetSpec,
    FiniteSet,
    CofiniteSet,
    PeriodicDeltaSet,
    BoundedExplicitSet,
    Verdict,
    SetKind,
    DeltaSequence,
    natural_numbers,
)
from .language import ShiftSpec, Variant, RunWord, CoreBlock, CoreLengthSpectrum, Decomposition
from .classify import ClassificationReport, classify_shift
from .specfile import SpecDocument, parse_spec, render_spec, load_spec

__all__ = [
    'SetSpec',
    'FiniteSet',
    'CofiniteSet',
    'PeriodicDeltaSet',
    'BoundedExplicitSet',
    'Verdict',
    'SetKind',
    'DeltaSequence',
    'natural_numbers',
    'ShiftSpec',
    'Variant',
    'RunWord',
    'CoreBlock',
    'CoreLengthSpectrum',
    'Decomposition',
    'ClassificationReport',
    'classify_shift',
    'SpecDocument',
    'parse_spec',
    'render_spec',
    'load_spec',
]
