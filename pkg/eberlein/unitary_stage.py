"""
Etapa unitaria: el núcleo R_pq que diagonaliza la submatriz pivote de la
parte hermítica, mediante Jacobi complejo cíclico por filas, con permutación
opcional de columnas para obtener una matriz UBC.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.linalg import qr

from config.settings import INNER_JACOBI_MAX_SWEEPS, INNER_JACOBI_TOL, UBC_MIN_GAIN
from models.errors import ConvergenceFailure, InvalidArgumentError
from .blockmat import off_norm


@dataclass(frozen=True)
class RotationParams:
    """Ángulo phi en (-pi/4, pi/4] y fase alpha en (-pi, pi]."""

    phi: float
    alpha: float


@dataclass
class UnitaryStageResult:
    r_core: np.ndarray
    diag: np.ndarray
    permutation: np.ndarray
    sweeps_used: int


def jacobi_rotation_2x2(b_pp: float, b_pq: complex, b_qq: float) -> RotationParams:
    """
    Rotación compleja de Jacobi para la matriz hermítica [[b_pp, b_pq], [conj(b_pq), b_qq]].

    alpha = arg(b_pq) y tan(2 phi) = 2|b_pq| / (b_pp - b_qq); con b_pp = b_qq se toma
    phi = pi/4. Así cos(phi) >= 1/sqrt(2) siempre.
    """
    magnitude = abs(b_pq)
    if magnitude == 0.0:
        return RotationParams(0.0, 0.0)

    alpha = math.atan2(b_pq.imag, b_pq.real)
    gap = b_pp - b_qq
    if gap == 0.0:
        phi = math.pi / 4
    else:
        phi = 0.5 * math.atan(2.0 * magnitude / gap)
    return RotationParams(phi, alpha)


def rotation_core(params: RotationParams) -> np.ndarray:
    """Matriz 2x2 [[cos, -e^{i alpha} sin], [e^{-i alpha} sin, cos]]."""
    c = math.cos(params.phi)
    s = math.sin(params.phi)
    phase = complex(math.cos(params.alpha), math.sin(params.alpha))
    return np.array([[c, -phase * s], [phase.conjugate() * s, c]], dtype=np.complex128)


def diagonalize_hermitian_core(
    H: np.ndarray,
    tol: float = INNER_JACOBI_TOL,
    max_sweeps: int = INNER_JACOBI_MAX_SWEEPS
) -> UnitaryStageResult:
    """
    Diagonaliza un núcleo hermítico con Jacobi complejo cíclico por filas.

    Args:
        H: Núcleo hermítico de dimensión n_p + n_q
        tol: Tolerancia relativa para off(R* H R) / ||H||_F
        max_sweeps: Barridos máximos

    Returns:
        UnitaryStageResult con r_core unitario y diag = valores propios (sin ordenar)

    Raises:
        InvalidArgumentError: Si H no es hermítica
        ConvergenceFailure: Si se agotan los barridos
    """
    dim = H.shape[0]
    scale = float(np.linalg.norm(H))
    if np.linalg.norm(H - H.conj().T) > 1e-12 * max(scale, 1.0):
        raise InvalidArgumentError("El núcleo de la etapa unitaria no es hermítico")

    work = np.array(H, dtype=np.complex128, copy=True)
    V = np.eye(dim, dtype=np.complex128)
    threshold = tol * scale
    sweeps = 0

    while off_norm(work) > threshold:
        if sweeps == max_sweeps:
            raise ConvergenceFailure(
                f"Jacobi interno sin converger tras {max_sweeps} barridos "
                f"(off = {off_norm(work):.3e}, objetivo {threshold:.3e})",
                best=V,
                sweeps=sweeps,
            )
        for i in range(dim - 1):
            for j in range(i + 1, dim):
                b_ij = complex(work[i, j])
                if b_ij == 0:
                    continue
                R = rotation_core(jacobi_rotation_2x2(work[i, i].real, b_ij, work[j, j].real))
                pair = [i, j]
                work[:, pair] = work[:, pair] @ R
                work[pair, :] = R.conj().T @ work[pair, :]
                # El par anulado queda exactamente en cero y la diagonal real
                work[i, j] = 0
                work[j, i] = 0
                work[i, i] = work[i, i].real
                work[j, j] = work[j, j].real
                V[:, pair] = V[:, pair] @ R
        sweeps += 1

    return UnitaryStageResult(
        r_core=V,
        diag=np.real(np.diag(work)).copy(),
        permutation=np.arange(dim),
        sweeps_used=sweeps,
    )


def _leading_sigma_min(u: np.ndarray, columns: np.ndarray, n_p: int) -> float:
    block = u[:n_p, columns[:n_p]]
    return float(np.linalg.svd(block, compute_uv=False)[-1])


def ubc_permute(u: np.ndarray, split: Tuple[int, int]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Permutación de columnas que maximiza sigma_min del bloque líder n_p x n_p.

    La selección es voraz por volumen (QR con pivoteo de columnas sobre las
    primeras n_p filas); sólo se permuta si mejora a la identidad por más del
    margen relativo UBC_MIN_GAIN.
    Las columnas elegidas y las restantes conservan su orden relativo.

    Returns:
        (u @ P, perm) con P la permutación dada por u[:, perm]
    """
    n_p, n_q = split
    dim = u.shape[0]
    if n_p + n_q != dim:
        raise InvalidArgumentError(f"split {split} no suma la dimensión {dim}")

    identity = np.arange(dim)
    _, pivots = qr(u[:n_p, :], mode="r", pivoting=True)
    chosen = np.sort(pivots[:n_p])
    rest = np.setdiff1d(identity, chosen)
    greedy = np.concatenate([chosen, rest])

    if _leading_sigma_min(u, greedy, n_p) > (1 + UBC_MIN_GAIN) * _leading_sigma_min(u, identity, n_p):
        return u[:, greedy], greedy
    return u, identity


def unitary_stage(
    H: np.ndarray,
    split: Tuple[int, int],
    enforce_ubc: bool = True,
    tol: float = INNER_JACOBI_TOL,
    max_sweeps: int = INNER_JACOBI_MAX_SWEEPS
) -> UnitaryStageResult:
    """
    Núcleo R_pq completo: diagonalización y, si se pide, permutación UBC incorporada
    (R <- R P, con diag permutada en consecuencia).
    """
    result = diagonalize_hermitian_core(H, tol=tol, max_sweeps=max_sweeps)
    if enforce_ubc and result.sweeps_used > 0:
        r_core, perm = ubc_permute(result.r_core, split)
        result = UnitaryStageResult(
            r_core=r_core,
            diag=result.diag[perm],
            permutation=perm,
            sweeps_used=result.sweeps_used,
        )
    return result
