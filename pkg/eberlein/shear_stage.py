"""
Etapa de cizallas: el núcleo no unitario S_pq que reduce la norma de Frobenius.

Se recorren los pares internos (r, s) de la franja pivote, y en cada uno se
calculan los ángulos beta y psi de la cizalla hiperbólica unimodular
    S = [[cosh psi, -i e^{i beta} sinh psi], [i e^{-i beta} sinh psi, cosh psi]].
"""

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Tuple

import numpy as np

from config.logging_config import get_logger
from config.settings import COND_WARNING_LEVEL, SHEAR_SKIP_TOL, TANH_PSI_LIMIT
from models.errors import InvalidArgumentError, NumericalFailure
from .blockmat import BlockPartition

logger = get_logger(__name__)


@dataclass(frozen=True)
class ShearParams:
    """Ángulos de una cizalla; c_rs es la entrada de C usada para elegir beta."""

    beta: float
    psi: float
    tanh_psi: float
    c_rs: complex = 0j


@dataclass(frozen=True)
class ShearAuxiliaries:
    d_rs: complex
    t_rs: complex
    v_rs: float
    w_rs: float
    xi_rs: complex
    c_rs: complex


@dataclass
class ShearStageResult:
    s_core: np.ndarray
    s_core_inv: np.ndarray
    a_next: np.ndarray
    norm_reduction: float
    inner_steps: int
    step_deltas: List[float] = field(default_factory=list)
    sum_c2: float = 0.0
    sum_c_abs: float = 0.0

    @property
    def cond_estimate(self) -> float:
        return float(np.linalg.norm(self.s_core) * np.linalg.norm(self.s_core_inv))


IDENTITY_SHEAR = ShearParams(0.0, 0.0, 0.0)


def enumerate_inner_pairs(partition: BlockPartition, p: int, q: int) -> List[Tuple[int, int]]:
    """
    Pares internos (r, s), r < s, del triángulo superior de la submatriz pivote.

    Devuelve los L = (n_p+n_q)(n_p+n_q-1)/2 pares en orden lexicográfico,
    con índices globales 0-based.
    """
    if q > partition.m:
        raise InvalidArgumentError(f"Bloque q = {q} fuera de la partición (m = {partition.m})")
    idx = partition.pivot_indices(p, q)
    return [(int(r), int(s)) for r, s in combinations(idx, 2)]


def _c_entry(A: np.ndarray, r: int, s: int) -> complex:
    # (A A* - A* A)_rs con productos internos de filas y columnas
    return complex(A[r, :] @ A[s, :].conj() - A[:, r].conj() @ A[:, s])


def shear_auxiliaries(A: np.ndarray, r: int, s: int, beta: float) -> ShearAuxiliaries:
    """
    Cantidades auxiliares d, t, v, w, xi y c para el par (r, s) y el ángulo beta.

    t = (a_rs + a_sr) cos(beta) - i (a_rs - a_sr) sin(beta).
    """
    if not r < s:
        raise InvalidArgumentError(f"Se requiere r < s, se recibió ({r}, {s})")

    others = np.ones(A.shape[0], dtype=bool)
    others[[r, s]] = False

    a_rs = complex(A[r, s])
    a_sr = complex(A[s, r])
    d = complex(A[r, r] - A[s, s])
    t = (a_rs + a_sr) * math.cos(beta) - 1j * (a_rs - a_sr) * math.sin(beta)

    col_r, col_s = A[others, r], A[others, s]
    row_r, row_s = A[r, others], A[s, others]
    v = float(
        np.sum(np.abs(col_r) ** 2) + np.sum(np.abs(row_r) ** 2)
        + np.sum(np.abs(col_s) ** 2) + np.sum(np.abs(row_s) ** 2)
    )
    xi = complex(2 * (row_r @ row_s.conj() - col_r.conj() @ col_s))
    w = -xi.real * math.sin(beta) + xi.imag * math.cos(beta)

    return ShearAuxiliaries(d_rs=d, t_rs=t, v_rs=v, w_rs=w, xi_rs=xi, c_rs=_c_entry(A, r, s))


def shear_matrices(params: ShearParams) -> Tuple[np.ndarray, np.ndarray]:
    """Núcleo 2x2 de la cizalla y su inversa cerrada (det = 1)."""
    ch = math.cosh(params.psi)
    sh = math.sinh(params.psi)
    phase = complex(math.cos(params.beta), math.sin(params.beta))
    S = np.array([[ch, -1j * phase * sh], [1j * phase.conjugate() * sh, ch]], dtype=np.complex128)
    S_inv = np.array([[ch, 1j * phase * sh], [-1j * phase.conjugate() * sh, ch]], dtype=np.complex128)
    return S, S_inv


def _shear_update(A: np.ndarray, r: int, s: int, params: ShearParams):
    """Nuevas columnas y filas r, s tras S^{-1} A S, y la reducción local de ||A||_F^2."""
    pair = [r, s]
    S, S_inv = shear_matrices(params)

    others = np.ones(A.shape[0], dtype=bool)
    others[pair] = False

    cols = A[:, pair] @ S
    rows = A[pair, :].copy()
    rows[:, pair] = cols[pair, :]
    rows = S_inv @ rows

    before = np.sum(np.abs(A[pair, :]) ** 2) + np.sum(np.abs(A[others][:, pair]) ** 2)
    after = np.sum(np.abs(rows) ** 2) + np.sum(np.abs(cols[others, :]) ** 2)
    return cols, rows, float(before - after)


def _tanh_psi(aux: ShearAuxiliaries) -> float:
    numerator = (aux.t_rs * aux.d_rs.conjugate()).imag - aux.w_rs / 2
    t_abs, d_abs = abs(aux.t_rs), abs(aux.d_rs)
    denominator = aux.v_rs + 2 * (t_abs * t_abs + d_abs * d_abs)
    if denominator == 0.0:
        return 0.0
    value = numerator / denominator
    if not abs(value) <= TANH_PSI_LIMIT:
        raise NumericalFailure(f"|tanh psi| fuera de rango: {value}")
    return value


def _wrap_angle(angle: float) -> float:
    """Lleva un ángulo a (-pi, pi]."""
    wrapped = math.remainder(angle, 2 * math.pi)
    return math.pi if wrapped == -math.pi else wrapped


def shear_angles(A: np.ndarray, r: int, s: int) -> ShearParams:
    """
    Ángulos beta y psi para el par (r, s).

    tan(beta) = -Re(c_rs)/Im(c_rs); de las dos ramas (beta_0 y beta_0 + pi) se
    conserva la de mayor reducción de norma, y ante empate beta_0. Con c_rs = 0
    se usa beta = 0.
    """
    c_rs = _c_entry(A, r, s)
    if c_rs == 0:
        candidates = [0.0]
    else:
        beta0 = math.atan2(-c_rs.real, c_rs.imag)
        candidates = [beta0, _wrap_angle(beta0 + math.pi)]

    best = None
    best_delta = -math.inf
    for beta in candidates:
        tanh_psi = _tanh_psi(shear_auxiliaries(A, r, s, beta))
        params = ShearParams(beta=beta, psi=math.atanh(tanh_psi), tanh_psi=tanh_psi, c_rs=c_rs)
        if len(candidates) == 1:
            return params
        _, _, delta = _shear_update(A, r, s, params)
        if delta > best_delta:
            best, best_delta = params, delta
    return best


def apply_shear(A: np.ndarray, r: int, s: int, params: ShearParams) -> Tuple[np.ndarray, float]:
    """
    Aplica S^{-1} A S; sólo cambian las filas y columnas r, s.

    Returns:
        (nueva matriz, delta = ||A||_F^2 - ||A'||_F^2)
    """
    if not abs(params.tanh_psi) < 1:
        raise InvalidArgumentError(f"|tanh psi| debe ser < 1: {params.tanh_psi}")
    out = np.array(A, dtype=np.complex128, copy=True)
    if params.psi == 0.0:
        return out, 0.0
    cols, rows, delta = _shear_update(out, r, s, params)
    out[:, [r, s]] = cols
    out[[r, s], :] = rows
    return out, delta


def shear_step(A: np.ndarray, r: int, s: int, scale2: float):
    """
    Un paso interno completo sobre A (se modifica en sitio).

    Se omite la actualización cuando |c_rs| <= 1e-15 * scale2 y |tanh psi| <= 1e-15.

    Args:
        A: Iterado actual
        r, s: Par interno global (0-based)
        scale2: ||A||_F^2 de referencia para el umbral de omisión

    Returns:
        (params, delta, aplicada)
    """
    try:
        params = shear_angles(A, r, s)
    except (OverflowError, FloatingPointError, ValueError) as e:
        raise NumericalFailure(f"Desborde al calcular la cizalla del par ({r}, {s}): {e}") from e
    if (abs(params.c_rs) <= SHEAR_SKIP_TOL * scale2 and abs(params.tanh_psi) <= SHEAR_SKIP_TOL) \
            or params.psi == 0.0:
        return params, 0.0, False
    cols, rows, delta = _shear_update(A, r, s, params)
    A[:, [r, s]] = cols
    A[[r, s], :] = rows
    return params, delta, True


def compute_shear_block(
    A: np.ndarray,
    partition: BlockPartition,
    p: int,
    q: int,
    sweeps: int = 1
) -> ShearStageResult:
    """
    Algoritmo de la etapa de cizallas para el par pivote (p, q).

    Recorre cada par interno exactamente una vez por barrido, acumula S_pq y
    su inversa con inversas cerradas de 2x2, y devuelve A^(k+1) = S^{-1} A S.

    Args:
        A: Iterado tras la rotación
        partition: Partición por bloques
        p, q: Par pivote (1-based)
        sweeps: Pasadas sobre los L pares (1 por defecto)

    Returns:
        ShearStageResult
    """
    work = np.array(A, dtype=np.complex128, copy=True)
    idx = partition.pivot_indices(p, q)
    dim = len(idx)
    local = {int(g): k for k, g in enumerate(idx)}
    pairs = enumerate_inner_pairs(partition, p, q)

    s_core = np.eye(dim, dtype=np.complex128)
    s_core_inv = np.eye(dim, dtype=np.complex128)
    start = float(np.linalg.norm(work))
    start2 = start * start
    result = ShearStageResult(s_core, s_core_inv, work, 0.0, 0)

    for _ in range(sweeps):
        for r, s in pairs:
            params, delta, applied = shear_step(work, r, s, start2)
            result.inner_steps += 1
            c_abs = abs(params.c_rs)
            result.sum_c2 += c_abs * c_abs
            result.sum_c_abs += c_abs
            result.step_deltas.append(delta)
            if applied:
                S, S_inv = shear_matrices(params)
                lp = [local[r], local[s]]
                s_core[:, lp] = s_core[:, lp] @ S
                s_core_inv[lp, :] = S_inv @ s_core_inv[lp, :]

    end = float(np.linalg.norm(work))
    result.norm_reduction = start2 - end * end
    cond = result.cond_estimate
    if cond > COND_WARNING_LEVEL:
        logger.warning(f"Cizalla acumulada mal condicionada en ({p}, {q}): cond ~ {cond:.2e}")
    return result
