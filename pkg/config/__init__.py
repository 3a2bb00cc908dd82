"""
Módulo de configuración del solver de Eberlein por bloques.
"""

from .env_config import (
    get_seed,
    get_rng,
    get_default_tolerance,
    get_default_max_cycles,
    verify_environment
)
from .logging_config import configure_logging, get_logger
from .settings import (
    DEFAULT_TOLERANCE,
    DEFAULT_MAX_CYCLES,
    DEFAULT_BLOCK_THRESHOLD,
    INNER_JACOBI_TOL,
    INNER_JACOBI_MAX_SWEEPS,
    TRACE_COLUMNS,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_NUMERICAL,
    EXIT_IO
)

__all__ = [
    'get_seed',
    'get_rng',
    'get_default_tolerance',
    'get_default_max_cycles',
    'verify_environment',
    'configure_logging',
    'get_logger',
    'DEFAULT_TOLERANCE',
    'DEFAULT_MAX_CYCLES',
    'DEFAULT_BLOCK_THRESHOLD',
    'INNER_JACOBI_TOL',
    'INNER_JACOBI_MAX_SWEEPS',
    'TRACE_COLUMNS',
    'EXIT_OK',
    'EXIT_USAGE',
    'EXIT_NUMERICAL',
    'EXIT_IO'
]
