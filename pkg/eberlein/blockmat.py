"""
Matrices complejas densas por bloques: particiones, matrices elementales por
bloques y los funcionales (off-norma, parte hermítica, operador C) que usa el
resto del solver.

Convenciones de índices:
    - Los índices de bloque p, q son 1-based (1 <= p < q <= m), igual que en
      los ordenamientos pivote y en los archivos de texto.
    - Los índices globales de fila/columna r, s son 0-based (numpy).
"""

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple

import numpy as np

from models.errors import InvalidArgumentError

ComplexDenseMatrix = np.ndarray


@dataclass(frozen=True)
class BlockPartition:
    """
    Composición entera pi = (n_1, ..., n_m) de n.

    Es inmutable durante toda una resolución.
    """

    sizes: Tuple[int, ...]
    offsets: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        sizes = tuple(int(n_i) for n_i in self.sizes)
        if not sizes:
            raise InvalidArgumentError("La partición no puede estar vacía")
        if any(n_i < 1 for n_i in sizes):
            raise InvalidArgumentError(f"Todos los tamaños de bloque deben ser >= 1: {sizes}")
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "offsets", tuple(int(o) for o in np.cumsum((0,) + sizes[:-1])))

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def m(self) -> int:
        return len(self.sizes)

    def block_size(self, p: int) -> int:
        self._check_block(p)
        return self.sizes[p - 1]

    def indices(self, p: int) -> np.ndarray:
        """Índices globales (0-based) del bloque p (1-based)."""
        self._check_block(p)
        start = self.offsets[p - 1]
        return np.arange(start, start + self.sizes[p - 1])

    def pivot_indices(self, p: int, q: int) -> np.ndarray:
        """Índices globales de los bloques p y q, concatenados en ese orden."""
        if not p < q:
            raise InvalidArgumentError(f"Se requiere p < q, se recibió ({p}, {q})")
        return np.concatenate([self.indices(p), self.indices(q)])

    def _check_block(self, p: int):
        if not 1 <= p <= self.m:
            raise InvalidArgumentError(f"Índice de bloque fuera de rango: {p} (m = {self.m})")


def unit_partition(n: int) -> BlockPartition:
    """Partición pi_1 = (1, 1, ..., 1): el método elemento a elemento."""
    if n < 1:
        raise InvalidArgumentError(f"La dimensión debe ser >= 1: {n}")
    return BlockPartition((1,) * n)


def partition_from_block_size(n: int, block_size: int) -> BlockPartition:
    """
    Partición (B, ..., B, r) con 0 < r <= B y suma n.

    Raises:
        InvalidArgumentError: Si B < 1 o B > n
    """
    if block_size < 1 or block_size > n:
        raise InvalidArgumentError(
            f"El tamaño de bloque debe estar entre 1 y n = {n}, se recibió {block_size}"
        )
    full, rest = divmod(n, block_size)
    sizes = [block_size] * full
    if rest:
        sizes.append(rest)
    return BlockPartition(tuple(sizes))


@dataclass(frozen=True)
class PivotPair:
    """Par pivote (p, q) de índices de bloque, 1 <= p < q."""

    p: int
    q: int

    def __post_init__(self):
        if not 1 <= self.p < self.q:
            raise InvalidArgumentError(f"Par pivote inválido: ({self.p}, {self.q})")

    def __iter__(self):
        return iter((self.p, self.q))


@dataclass(frozen=True)
class ElementaryBlockTransform:
    """
    Par pivote (p, q) y núcleo de dimensión n_p + n_q.

    Al incrustarlo es la identidad fuera de los cuatro bloques (p, q).
    """

    p: int
    q: int
    core: np.ndarray
    partition: BlockPartition

    def __post_init__(self):
        PivotPair(self.p, self.q)
        if self.q > self.partition.m:
            raise InvalidArgumentError(
                f"Bloque q = {self.q} fuera de la partición (m = {self.partition.m})"
            )
        dim = self.partition.block_size(self.p) + self.partition.block_size(self.q)
        if self.core.shape != (dim, dim):
            raise InvalidArgumentError(
                f"El núcleo debe ser {dim}x{dim} para ({self.p}, {self.q}), "
                f"se recibió {self.core.shape}"
            )

    @property
    def indices(self) -> np.ndarray:
        return self.partition.pivot_indices(self.p, self.q)


def as_complex_matrix(A, name: str = "A") -> ComplexDenseMatrix:
    """
    Convierte la entrada externa en una matriz compleja cuadrada y finita.

    Raises:
        InvalidArgumentError: Si no es cuadrada o contiene NaN/Inf
    """
    M = np.array(A, dtype=np.complex128, order="C")
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise InvalidArgumentError(f"{name} debe ser una matriz cuadrada no vacía, forma {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidArgumentError(f"{name} contiene entradas NaN o Inf")
    return M


def embed(t: ElementaryBlockTransform) -> ComplexDenseMatrix:
    """Aplicación E_pi: coloca el núcleo en los bloques (p, q) de la identidad n x n."""
    E = np.eye(t.partition.n, dtype=np.complex128)
    idx = t.indices
    E[np.ix_(idx, idx)] = t.core
    return E


def similarity_inplace(A: np.ndarray, idx: Sequence[int], core: np.ndarray, inverse_core: np.ndarray):
    """
    A <- T^{-1} A T para T elemental sobre los índices idx, modificando A.

    Sólo cambian las filas y columnas idx.
    """
    A[:, idx] = A[:, idx] @ core
    A[idx, :] = inverse_core @ A[idx, :]


def apply_elementary_similarity(
    A: ComplexDenseMatrix,
    t: ElementaryBlockTransform,
    inverse_core: ComplexDenseMatrix
) -> ComplexDenseMatrix:
    """
    Calcula T^{-1} A T con T = embed(t) actualizando sólo las filas/columnas pivote.

    Args:
        A: Matriz n x n
        t: Transformación elemental por bloques
        inverse_core: Inversa del núcleo (no se invierte numéricamente)

    Returns:
        Nueva matriz; fuera de las filas/columnas pivote coincide bit a bit con A

    Raises:
        InvalidArgumentError: Si las dimensiones no concuerdan o inverse_core no es la inversa
    """
    if A.shape != (t.partition.n, t.partition.n):
        raise InvalidArgumentError(
            f"A es {A.shape} pero la partición tiene n = {t.partition.n}"
        )
    dim = t.core.shape[0]
    if inverse_core.shape != (dim, dim):
        raise InvalidArgumentError(f"inverse_core debe ser {dim}x{dim}, es {inverse_core.shape}")
    defect = np.linalg.norm(inverse_core @ t.core - np.eye(dim))
    if defect > 1e-12 * dim:
        raise InvalidArgumentError(f"inverse_core no es la inversa del núcleo (defecto {defect:.2e})")

    out = np.array(A, dtype=np.complex128, copy=True)
    similarity_inplace(out, t.indices, t.core, inverse_core)
    return out


def frobenius_norm(A: ComplexDenseMatrix) -> float:
    return float(np.linalg.norm(A))


def off_norm(A: ComplexDenseMatrix) -> float:
    """off(A) = ||A - diag(A)||_F."""
    off = np.array(A, copy=True)
    np.fill_diagonal(off, 0)
    return float(np.linalg.norm(off))


def hermitian_part(A: ComplexDenseMatrix) -> ComplexDenseMatrix:
    """
    B = (A + A*)/2, exactamente hermítica por construcción.

    h_ij = (a_ij + conj(a_ji))/2, de modo que la diagonal tiene parte imaginaria nula.
    """
    return (A + A.conj().T) / 2


def skew_part(A: ComplexDenseMatrix) -> ComplexDenseMatrix:
    """Z = (A - A*)/2."""
    return (A - A.conj().T) / 2


def c_operator(A: ComplexDenseMatrix) -> ComplexDenseMatrix:
    """C(A) = A A* - A* A; se anula exactamente para matrices normales."""
    A_h = A.conj().T
    return A @ A_h - A_h @ A


def block_off_norm_squared(A: ComplexDenseMatrix, partition: BlockPartition) -> float:
    """
    off^2(A) por la descomposición en bloques:
    suma de ||A_ij||_F^2 (i != j) más suma de off^2(A_ii).
    """
    total = 0.0
    for i in range(1, partition.m + 1):
        rows = partition.indices(i)
        for j in range(1, partition.m + 1):
            block = A[np.ix_(rows, partition.indices(j))]
            norm = off_norm(block) if i == j else frobenius_norm(block)
            total += norm * norm
    return total


def pivot_hermitian_core(A: ComplexDenseMatrix, idx: Iterable[int]) -> ComplexDenseMatrix:
    """Submatriz pivote de B = hermitian_part(A) sin formar B completa."""
    sub = A[np.ix_(idx, idx)]
    return hermitian_part(sub)
