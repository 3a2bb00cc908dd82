"""
Diagnósticos numéricos: residuos de similitud, condicionamiento de T,
cotas de perturbación por paso y precisión frente a un espectro conocido.
"""

from typing import Dict, Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from config.settings import DIAGNOSTIC_SLACK
from .blockmat import hermitian_part


def similarity_residual(
    A: np.ndarray,
    T: np.ndarray,
    lam: np.ndarray,
    T_inv: Optional[np.ndarray] = None
) -> float:
    """||T^{-1} A T - Lambda||_F; si no se da T^{-1}, se resuelve el sistema T X = A T."""
    if T_inv is not None:
        transformed = T_inv @ A @ T
    else:
        transformed = np.linalg.solve(T, A @ T)
    return float(np.linalg.norm(transformed - lam))


def cond_estimate(T: np.ndarray, T_inv: Optional[np.ndarray] = None) -> float:
    """Estimación ||T||_F ||T^{-1}||_F / n del número de condición de T."""
    if T_inv is None:
        T_inv = np.linalg.inv(T)
    return float(np.linalg.norm(T) * np.linalg.norm(T_inv) / T.shape[0])


def perturbation_bounds(
    rotated: np.ndarray,
    sheared: np.ndarray,
    sum_c_abs: float,
    slack: float = DIAGNOSTIC_SLACK
) -> Dict[str, float]:
    """
    Compara el efecto de la cizalla con la cota 1.5 n^2 sum|c_rs|.

    Args:
        rotated: R* A R (antes de las cizallas)
        sheared: S^{-1} R* A R S
        sum_c_abs: suma de |c_rs| sobre los pasos internos
        slack: Holgura multiplicativa tolerada

    Returns:
        dict con lhs_a, lhs_b, bound y violated
    """
    n = rotated.shape[0]
    lhs_a = float(np.linalg.norm(sheared - rotated) ** 2)
    lhs_b = float(np.linalg.norm(hermitian_part(sheared) - hermitian_part(rotated)) ** 2)
    bound = 1.5 * n * n * sum_c_abs
    tiny = 1e-12 * float(np.linalg.norm(rotated) ** 2)
    return {
        "lhs_a": lhs_a,
        "lhs_b": lhs_b,
        "bound": bound,
        "violated": max(lhs_a, lhs_b) > slack * bound + tiny,
    }


def match_spectra(computed: Sequence[complex], reference: Sequence[complex]) -> np.ndarray:
    """
    Emparejamiento óptimo (Hungarian) que minimiza sum |computed_i - reference_j|.

    Returns:
        Índices j de reference asignados a cada computed i
    """
    computed = np.asarray(computed, dtype=complex)
    reference = np.asarray(reference, dtype=complex)
    cost = np.abs(computed[:, None] - reference[None, :])
    rows, cols = linear_sum_assignment(cost)
    assignment = np.empty(len(computed), dtype=int)
    assignment[rows] = cols
    return assignment


def accuracy_report(
    computed: Sequence[complex],
    reference: Sequence[complex],
    residuals: Optional[Sequence[float]] = None
) -> Dict[str, float]:
    """Errores absolutos y relativos (autovalor y parte real) tras el emparejamiento."""
    computed = np.asarray(computed, dtype=complex)
    reference = np.asarray(reference, dtype=complex)
    if len(computed) != len(reference):
        raise ValueError(f"Se comparan {len(computed)} autovalores con {len(reference)} de referencia")

    matched = reference[match_spectra(computed, reference)]
    abs_err = np.abs(computed - matched)
    rel_err = abs_err / np.maximum(np.abs(matched), np.finfo(float).tiny)
    real_err = np.abs(computed.real - matched.real)
    floor = np.maximum(np.finfo(float).eps * np.abs(matched), np.finfo(float).tiny)
    real_rel = real_err / np.maximum(np.abs(matched.real), floor)

    report = {
        "n": int(len(computed)),
        "max_abs_error": float(abs_err.max(initial=0.0)),
        "max_rel_error": float(rel_err.max(initial=0.0)),
        "max_real_part_rel_error": float(real_rel.max(initial=0.0)),
        "mean_rel_error": float(rel_err.mean()) if len(rel_err) else 0.0,
    }
    if residuals is not None and len(residuals):
        report["max_residual"] = float(np.max(residuals))
    return report
