"""
Extracción de pares propios a partir de la matriz final Lambda y de T.

Lambda puede ser diagonal o diagonal por bloques (autovalores repetidos con
igual parte real). Cada componente conexa del grafo de acoplamientos se
resuelve por separado.
"""

import cmath
from typing import List, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from config.logging_config import get_logger
from config.settings import DEFAULT_BLOCK_THRESHOLD, MAX_RECURSION_DEPTH
from models.errors import EberleinError
from models.schemas import EigenPair
from .blockmat import frobenius_norm

logger = get_logger(__name__)


def detect_block_structure(lam: np.ndarray, threshold: float = DEFAULT_BLOCK_THRESHOLD) -> List[Tuple[int, ...]]:
    """
    Componentes conexas del grafo i ~ j si |Lambda_ij| o |Lambda_ji| supera
    threshold * ||Lambda||_F. Se devuelven ordenadas por su menor índice.
    """
    n = lam.shape[0]
    cutoff = threshold * frobenius_norm(lam)
    coupled = (np.abs(lam) > cutoff) | (np.abs(lam.T) > cutoff)
    np.fill_diagonal(coupled, False)

    n_components, labels = connected_components(csr_matrix(coupled), directed=False)
    groups = [tuple(int(i) for i in np.flatnonzero(labels == c)) for c in range(n_components)]
    return sorted(groups, key=lambda g: g[0]) if n else []


def eig2x2(block: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Autovalores (a+d)/2 ± sqrt(((a-d)/2)^2 + bc) y autovectores de [[a, b], [c, d]].

    Returns:
        (valores, vectores por columnas sin normalizar)
    """
    # se trabaja con el bloque normalizado por max|entrada|
    scale = float(np.max(np.abs(block)))
    if scale == 0.0:
        return np.zeros(2, dtype=complex), np.eye(2, dtype=complex)
    a, b = complex(block[0, 0]) / scale, complex(block[0, 1]) / scale
    c, d = complex(block[1, 0]) / scale, complex(block[1, 1]) / scale
    mean = (a + d) / 2
    root = cmath.sqrt(((a - d) / 2) ** 2 + b * c)
    values = np.array([mean + root, mean - root], dtype=complex)

    vectors = np.zeros((2, 2), dtype=complex)
    for k, lam in enumerate(values):
        if b == 0 and c == 0:
            vectors[k, k] = 1.0
        elif abs(b) >= abs(c):
            vectors[:, k] = [b, lam - a]
        else:
            vectors[:, k] = [lam - d, c]
    return values * scale, vectors


def _finish(A0: np.ndarray, value: complex, vector: np.ndarray, component) -> EigenPair:
    vector = vector / np.linalg.norm(vector)
    residual = float(np.linalg.norm(A0 @ vector - value * vector))
    return EigenPair(value=complex(value), vector=vector, residual=residual, component=tuple(component))


def extract_eigenpairs(
    A0: np.ndarray,
    lam: np.ndarray,
    T: np.ndarray,
    threshold: float = DEFAULT_BLOCK_THRESHOLD,
    scalar: Optional[complex] = None,
    depth: int = 0,
    seed: Optional[int] = None
) -> Tuple[List[EigenPair], List[Tuple[Tuple[int, ...], str]]]:
    """
    Pares propios de A0 = (T Lambda T^{-1}) / d.

    Componentes de tamaño 1 usan Lambda_ii y la columna de T; de tamaño 2 la
    fórmula cerrada; mayores se precondicionan y se resuelven recursivamente con
    la partición unitaria (profundidad máxima MAX_RECURSION_DEPTH). Las
    componentes que fallan se registran y no abortan el resto.

    Returns:
        (pares propios, fallas [(componente, motivo)])
    """
    # import diferido: driver también importa este módulo
    from .driver import eberlein_solve
    from .blockmat import unit_partition
    from models.schemas import SolveOptions

    divisor = complex(scalar) if scalar is not None else 1.0
    pairs: List[EigenPair] = []
    failures: List[Tuple[Tuple[int, ...], str]] = []

    for comp in detect_block_structure(lam, threshold):
        ix = np.array(comp)
        if len(comp) == 1:
            i = comp[0]
            pairs.append(_finish(A0, lam[i, i] / divisor, T[:, i], comp))
            continue

        if len(comp) == 2:
            values, vectors = eig2x2(lam[np.ix_(ix, ix)])
            for value, y in zip(values, vectors.T):
                pairs.append(_finish(A0, value / divisor, T[:, ix] @ y, comp))
            continue

        if depth >= MAX_RECURSION_DEPTH:
            reason = f"profundidad de recursión {depth} alcanzada"
            logger.warning(f"Componente {comp} sin resolver: {reason}")
            failures.append((comp, reason))
            continue

        G = lam[np.ix_(ix, ix)]
        try:
            inner = eberlein_solve(
                G, unit_partition(len(comp)),
                SolveOptions(precondition=True, seed=seed, extract=False, post_precondition=False),
            )
            sub_pairs, sub_failures = extract_eigenpairs(
                G, inner.lambda_matrix, inner.t_accum, threshold,
                scalar=inner.scalar, depth=depth + 1, seed=seed,
            )
        except EberleinError as e:
            logger.warning(f"Componente {comp} sin resolver: {e}")
            failures.append((comp, str(e)))
            continue

        for sub_comp, reason in sub_failures:
            failures.append((tuple(comp[k] for k in sub_comp), reason))
        for sub in sub_pairs:
            pairs.append(_finish(A0, sub.value / divisor, T[:, ix] @ sub.vector, comp))

    return pairs, failures
