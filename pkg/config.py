"""
Configuration module for the S-limited shift toolkit.

This module contains all configurable parameters for the analyses,
including enumeration caps, entropy solver settings, conjugacy evidence
defaults, random spec generation, and data paths.
"""

from pathlib import Path
from typing import Dict, Any

# Project paths
PROJECT_ROOT = Path(__file__).parent
DATA_DIR = PROJECT_ROOT / "data"

# Language Configuration
ENUMERATION_CAP = 24  # Largest word length accepted by explicit enumeration

# Entropy Configuration
DEFAULT_ENTROPY_TOL = 1e-9  # Absolute tolerance on h(X), natural log
INITIAL_TRUNCATION = 64  # Starting truncation L for the core length spectrum
MAX_TRUNCATION = 1 << 15  # Truncation L is never doubled past this
MAX_BISECTION_STEPS = 200
LOG_BASE = "e"

# Presentation Configuration
POWER_ITERATION_MAX_STEPS = 200000

# Default analysis sizes used by the command line
DEFAULT_SPECTRUM_LENGTH = 30  # L for length spectra
DEFAULT_PERIOD_BOUND = 10  # N for periodic point comparisons
DEFAULT_EVIDENCE_WORD_LENGTH = 10  # n for image containment checks
DEFAULT_EVIDENCE_CORE_LENGTH = 20  # L for block induction checks

# Report Configuration
SCHEMA_VERSION = 1

# Random Spec Generation Parameters
RANDOM_SEED = 7
RANDOM_ALPHABET_SIZES = (2, 3, 4)
RANDOM_MAX_ELEMENT = 6  # Largest element drawn for finite sets and heads
RANDOM_MAX_DIFF = 3  # Largest difference drawn for periodic Δ tails


def get_config() -> Dict[str, Any]:
    """
    Get all configuration parameters as a dictionary.

    Returns:
        Dictionary containing all configuration parameters
    """
    return {
        'enumeration_cap': ENUMERATION_CAP,
        'default_entropy_tol': DEFAULT_ENTROPY_TOL,
        'initial_truncation': INITIAL_TRUNCATION,
        'max_truncation': MAX_TRUNCATION,
        'max_bisection_steps': MAX_BISECTION_STEPS,
        'log_base': LOG_BASE,
        'power_iteration_max_steps': POWER_ITERATION_MAX_STEPS,
        'default_spectrum_length': DEFAULT_SPECTRUM_LENGTH,
        'default_period_bound': DEFAULT_PERIOD_BOUND,
        'default_evidence_word_length': DEFAULT_EVIDENCE_WORD_LENGTH,
        'default_evidence_core_length': DEFAULT_EVIDENCE_CORE_LENGTH,
        'schema_version': SCHEMA_VERSION,
        'random_seed': RANDOM_SEED,
        'data_dir': str(DATA_DIR),
    }
