"""
Analysis modules for report shaping and tabular export.
"""

from .reports import (
    classification_report,
    entropy_report,
    words_report,
    spectrum_report,
    periodic_report,
    graph_report,
    decomposition_report,
    conjugacy_check_report,
    evidence_report,
    words_frame,
    spectrum_frame,
    periodic_frame,
    save_frame
)

__all__ = [
    'classification_report',
    'entropy_report',
    'words_report',
    'spectrum_report',
    'periodic_report',
    'graph_report',
    'decomposition_report',
    'conjugacy_check_report',
    'evidence_report',
    'words_frame',
    'spectrum_frame',
    'periodic_frame',
    'save_frame'
]
