"""
Dynamics modules for graph presentations, entropy and conjugacy.
"""

from .presentation import GraphPresentation, build_follower_automaton, spectral_entropy
from .entropy import EntropyResult, solve_entropy
from .conjugacy import BlockMap, OffsetVector, Refutation, EvidenceReport

__all__ = [
    'GraphPresentation',
    'build_follower_automaton',
    'spectral_entropy',
    'EntropyResult',
    'solve_entropy',
    'BlockMap',
    'OffsetVector',
    'Refutation',
    'EvidenceReport',
]
