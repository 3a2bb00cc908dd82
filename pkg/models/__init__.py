"""
Modelos de datos del solver de Eberlein por bloques.
"""

from .errors import (
    EberleinError,
    InvalidArgumentError,
    ConvergenceFailure,
    NumericalFailure,
    MatrixMarketParseError,
    OutputError
)
from .schemas import (
    SolveOptions,
    CycleRecord,
    StepRecord,
    ConvergenceLog,
    EigenPair,
    EberleinResult,
    TestMatrixSpec,
    RunConfig
)

__all__ = [
    'EberleinError',
    'InvalidArgumentError',
    'ConvergenceFailure',
    'NumericalFailure',
    'MatrixMarketParseError',
    'OutputError',
    'SolveOptions',
    'CycleRecord',
    'StepRecord',
    'ConvergenceLog',
    'EigenPair',
    'EberleinResult',
    'TestMatrixSpec',
    'RunConfig'
]
