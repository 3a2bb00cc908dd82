"""
Registros de datos del solver: opciones, bitácora de convergencia y resultados.
"""

from dataclasses import asdict, dataclass, field
from typing import TYPE_CHECKING, Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import (
    DEFAULT_BLOCK_THRESHOLD,
    DEFAULT_MAX_CYCLES,
    DEFAULT_TOLERANCE,
    INNER_JACOBI_MAX_SWEEPS,
    INNER_JACOBI_TOL,
    MATRIX_KINDS,
)
from .errors import InvalidArgumentError

if TYPE_CHECKING:
    from eberlein.pivot import PivotOrdering


@dataclass(frozen=True)
class SolveOptions:
    """
    Opciones de eberlein_solve.

    ordering=None significa ordenamiento por filas (row-cyclic) sobre la
    partición recibida.
    """

    tolerance: float = DEFAULT_TOLERANCE
    max_cycles: int = DEFAULT_MAX_CYCLES
    ordering: Optional["PivotOrdering"] = None
    enforce_ubc: bool = True
    inner_jacobi_tol: float = INNER_JACOBI_TOL
    inner_jacobi_max_sweeps: int = INNER_JACOBI_MAX_SWEEPS
    record_trace: bool = False
    precondition: bool = False
    precondition_scalar: Optional[complex] = None
    seed: Optional[int] = None
    block_threshold: float = DEFAULT_BLOCK_THRESHOLD
    absolute_tolerance: bool = False
    shear_sweeps: int = 1
    post_precondition: bool = False
    diagnostics: bool = False
    extract: bool = True
    verbose: bool = False
    callback: Optional[Callable[["CycleRecord"], None]] = None

    def __post_init__(self):
        if not self.tolerance > 0:
            raise InvalidArgumentError(f"La tolerancia debe ser positiva: {self.tolerance}")
        if self.max_cycles < 1:
            raise InvalidArgumentError(f"max_cycles debe ser >= 1: {self.max_cycles}")
        if self.shear_sweeps < 1:
            raise InvalidArgumentError(f"shear_sweeps debe ser >= 1: {self.shear_sweeps}")
        if self.precondition_scalar is not None and complex(self.precondition_scalar).imag == 0:
            raise InvalidArgumentError(
                f"El escalar de precondicionamiento debe tener Im(d) != 0: {self.precondition_scalar}"
            )


@dataclass(frozen=True)
class CycleRecord:
    """Métricas al final de un ciclo completo."""

    cycle: int
    off_a: float
    off_b: float
    norm_c: float
    frob_a: float
    cum_delta: float

    def to_row(self) -> List[Any]:
        return [self.cycle, self.off_a, self.off_b, self.norm_c, self.frob_a, self.cum_delta]


@dataclass(frozen=True)
class StepRecord:
    """Métricas de un paso externo (par pivote)."""

    cycle: int
    step: int
    p: int
    q: int
    delta: float
    sum_c2: float
    lower_bound: float
    shear_deviation: float
    cond_estimate: float


@dataclass
class ConvergenceLog:
    """Bitácora de convergencia: un registro por ciclo y, opcionalmente, por paso."""

    cycles: List[CycleRecord] = field(default_factory=list)
    steps: List[StepRecord] = field(default_factory=list)
    violations: List[str] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        """Devuelve una columna de los registros por ciclo como arreglo."""
        return np.array([getattr(rec, name) for rec in self.cycles], dtype=float)

    def __len__(self):
        return len(self.cycles)


@dataclass
class EigenPair:
    """Par propio extraído: autovalor, vector unitario y residuo ||A t - lambda t||_2."""

    value: complex
    vector: np.ndarray
    residual: float
    component: Tuple[int, ...] = ()


@dataclass
class EberleinResult:
    """
    Resultado de eberlein_solve.

    lambda_matrix es la matriz final A^(K) (de d*A si hubo precondicionamiento);
    los autovalores en eigenpairs ya están divididos por d.
    """

    lambda_matrix: np.ndarray
    t_accum: np.ndarray
    t_inv: np.ndarray
    log: ConvergenceLog
    status: str
    cycles: int
    eigenpairs: List[EigenPair] = field(default_factory=list)
    real_parts: np.ndarray = field(default_factory=lambda: np.zeros(0))
    block_structure: List[Tuple[int, ...]] = field(default_factory=list)
    scalar: Optional[complex] = None
    failures: List[Tuple[Tuple[int, ...], str]] = field(default_factory=list)

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([pair.value for pair in self.eigenpairs], dtype=complex)

    @property
    def residuals(self) -> np.ndarray:
        return np.array([pair.residual for pair in self.eigenpairs], dtype=float)

    @property
    def converged(self) -> bool:
        return self.status in ("converged", "stalled")


@dataclass(frozen=True)
class TestMatrixSpec:
    """Especificación de una matriz de prueba (a0, a1, a2 o archivo)."""

    __test__ = False  # evita que pytest intente recolectarla

    kind: str
    n: int = 0
    multiplicities: Optional[Tuple[int, ...]] = None
    seed: Optional[int] = None
    file: Optional[str] = None

    def __post_init__(self):
        if self.kind not in MATRIX_KINDS:
            raise InvalidArgumentError(f"Tipo de matriz desconocido: {self.kind}")
        if self.kind == "from_file":
            if not self.file:
                raise InvalidArgumentError("from_file requiere la ruta del archivo")
            return
        if self.n < 1:
            raise InvalidArgumentError(f"La dimensión debe ser >= 1: {self.n}")
        if self.kind == "a2_repeated":
            mult = self.multiplicities
            if mult is None or len(mult) != 5 or any(m_i < 1 for m_i in mult):
                raise InvalidArgumentError(
                    f"a2_repeated requiere cinco multiplicidades positivas: {mult}"
                )
            total = mult[0] + 2 * sum(mult[1:])
            if total != self.n:
                raise InvalidArgumentError(
                    f"Las multiplicidades suman {total} (m1 + 2(m2+...+m5)) y n = {self.n}"
                )


@dataclass
class RunConfig:
    """Configuración de una ejecución de la CLI (se copia en el JSON de resultados)."""

    input: TestMatrixSpec
    block_size: Optional[int] = None
    partition: Optional[Sequence[int]] = None
    ordering: str = "row"
    tolerance: float = DEFAULT_TOLERANCE
    max_cycles: int = DEFAULT_MAX_CYCLES
    precondition: bool = False
    post_precondition: bool = False
    shear_sweeps: int = 1
    absolute_tolerance: bool = False
    seed: Optional[int] = None
    out_result: Optional[str] = None
    out_trace: Optional[str] = None
    out_structure: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        if data["partition"] is not None:
            data["partition"] = [int(n_i) for n_i in data["partition"]]
        if data["input"]["multiplicities"] is not None:
            data["input"]["multiplicities"] = list(data["input"]["multiplicities"])
        return data
