"""
Reports Module

This module shapes analysis results for output:

- JSON-ready report dictionaries, each tagged with the schema version
- pandas DataFrames for word lists, length spectra and periodic counts
- CSV export of those frames

Every report lists its keys in a fixed order and the command line dumps
them with sorted keys, so identical inputs give identical bytes.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import pandas as pd

import config
from dynamics.conjugacy import Comparison, EvidenceReport, OffsetVector, Refutation
from dynamics.entropy import EntropyResult
from dynamics.presentation import GraphPresentation
from shifts.classify import ClassificationReport
from shifts.language import CoreLengthSpectrum, Decomposition, RunWord, ShiftSpec

logger = logging.getLogger(__name__)


def _envelope(command: str, payload: Dict[str, Any]) -> Dict[str, Any]:
    report = {'schema': config.SCHEMA_VERSION, 'command': command}
    report.update(payload)
    return report


def classification_report(shift: ShiftSpec, report: ClassificationReport) -> Dict[str, Any]:
    """JSON payload of the classify command."""
    return _envelope('classify', {'shift': shift.name, **report.to_dict(shift.p)})


def entropy_report(
    shift: ShiftSpec,
    genfun: Optional[EntropyResult] = None,
    perron: Optional[float] = None,
    truncated_at: Optional[int] = None
) -> Dict[str, Any]:
    """
    JSON payload of the entropy command.

    Args:
        shift: Analyzed shift (already truncated when truncated_at is set)
        genfun: Result of the generating-function solver
        perron: Spectral entropy of the follower automaton
        truncated_at: Truncation n when bounded sets were cut down

    Returns:
        Report dictionary
    """
    payload: Dict[str, Any] = {'shift': shift.name, 'log_base': config.LOG_BASE}
    if genfun is not None:
        payload['genfun'] = genfun.to_dict()
    if perron is not None:
        payload['perron'] = {'value': perron, 'log_base': config.LOG_BASE}
    if genfun is not None and perron is not None:
        payload['difference'] = abs(genfun.value - perron)
    if truncated_at is not None:
        payload['truncated_at'] = truncated_at
        payload['bound'] = 'lower'
    return _envelope('entropy', payload)


def words_report(shift: ShiftSpec, n: int, words: Optional[Sequence[RunWord]], count: int) -> Dict[str, Any]:
    """JSON payload of the words command; words is None for --count-only."""
    payload: Dict[str, Any] = {'shift': shift.name, 'n': n, 'count': count}
    if words is not None:
        payload['words'] = [w.format(shift.p) for w in words]
    return _envelope('words', payload)


def spectrum_report(shift: ShiftSpec, spectrum: CoreLengthSpectrum) -> Dict[str, Any]:
    return _envelope('spectrum', {
        'shift': shift.name,
        'truncation': spectrum.truncation,
        'counts': list(spectrum.counts),
    })


def periodic_report(shift: ShiftSpec, counts: Sequence[int]) -> Dict[str, Any]:
    return _envelope('periodic', {
        'shift': shift.name,
        'counts': {str(n): c for n, c in enumerate(counts, start=1)},
    })


def graph_report(shift: ShiftSpec, graph: GraphPresentation, dot_path: Optional[Path]) -> Dict[str, Any]:
    payload = {'shift': shift.name, **graph.to_dict()}
    payload['dot'] = str(dot_path) if dot_path else None
    return _envelope('graph', payload)


def decomposition_report(shift: ShiftSpec, word: RunWord, parts: Decomposition) -> Dict[str, Any]:
    return _envelope('decompose', {
        'shift': shift.name,
        'word': word.format(shift.p),
        **parts.to_dict(shift.p),
    })


def conjugacy_check_report(
    source: ShiftSpec,
    target: ShiftSpec,
    spectra: Comparison,
    periodic: Comparison,
    offsets: Optional[Any]
) -> Dict[str, Any]:
    """
    JSON payload of `conjugacy check`.

    Args:
        source: Domain shift
        target: Target shift
        spectra: Length-spectrum comparison
        periodic: Periodic-count comparison
        offsets: OffsetVector, Refutation, or None when the alphabets differ

    Returns:
        Report dictionary
    """
    payload: Dict[str, Any] = {
        'source': source.name,
        'target': target.name,
        'length_spectrum': spectra.to_dict(),
        'periodic_points': periodic.to_dict(),
        'offsets': None,
        'refutation': None,
    }
    if isinstance(offsets, OffsetVector):
        payload['offsets'] = list(offsets.d)
    elif isinstance(offsets, Refutation):
        payload['refutation'] = offsets.to_dict()
    return _envelope('conjugacy check', payload)


def evidence_report(source: ShiftSpec, target: ShiftSpec, evidence: EvidenceReport) -> Dict[str, Any]:
    return _envelope('conjugacy verify', {
        'source': source.name,
        'target': target.name,
        **evidence.to_dict(),
    })


def words_frame(words: Sequence[RunWord], p: Optional[int] = None) -> pd.DataFrame:
    """One row per word with its text and length."""
    return pd.DataFrame({
        'word': [w.format(p) for w in words],
        'length': [len(w) for w in words],
    }, columns=['word', 'length'])


def spectrum_frame(spectrum: CoreLengthSpectrum) -> pd.DataFrame:
    """One row per length l with the core block count c_l."""
    lengths = list(range(1, spectrum.truncation + 1))
    return pd.DataFrame({'length': lengths, 'count': list(spectrum.counts)})


def periodic_frame(counts: Sequence[int]) -> pd.DataFrame:
    """One row per period n with the number of period-n points."""
    return pd.DataFrame({'n': list(range(1, len(counts) + 1)), 'points': list(counts)})


def save_frame(frame: pd.DataFrame, path: Path) -> Path:
    """
    Write a frame to CSV.

    Args:
        frame: Data to write
        path: Destination file; parent directories are created

    Returns:
        The path written
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False)
    logger.info(f"Saved {len(frame)} rows to {path}")
    return path
