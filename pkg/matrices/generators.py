"""
Generadores de matrices de prueba reproducibles por semilla.

- a0_normal: Q diag(sigma) Q* con Q unitaria aleatoria
- a1_random: entradas gaussianas complejas independientes
- a2_repeated: normal con a_1 repetido y cuatro pares conjugados repetidos
- from_file: lectura Matrix Market
"""

from typing import Optional, Tuple

import numpy as np
from scipy.linalg import qr

from config.env_config import get_rng
from models.errors import InvalidArgumentError
from models.schemas import TestMatrixSpec
from .matrix_market import read_matrix_market


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Partes real e imaginaria normales estándar independientes."""
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unitary(n: int, seed: Optional[int] = None, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """
    Matriz unitaria aleatoria: QR de una gaussiana compleja, con las fases de
    diag(R) absorbidas en Q para que la distribución sea uniforme (Haar).

    Args:
        n: Dimensión (>= 1)
        seed: Semilla, si no se pasa rng
        rng: Generador a usar (tiene prioridad sobre seed)
    """
    if n < 1:
        raise InvalidArgumentError(f"La dimensión debe ser >= 1: {n}")
    rng = rng if rng is not None else get_rng(seed)
    Z = complex_gaussian(rng, (n, n))
    Q, R = qr(Z)
    diag = np.diag(R)
    phases = diag / np.abs(diag)
    return Q * phases[np.newaxis, :]


def _embed_spectrum(spectrum: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    Q = random_unitary(len(spectrum), rng=rng)
    return (Q * spectrum[np.newaxis, :]) @ Q.conj().T


def gen_test_matrix(spec: TestMatrixSpec) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """
    Construye la matriz de prueba descrita por spec.

    Returns:
        (A, espectro conocido o None)
    """
    if spec.kind == "from_file":
        return read_matrix_market(spec.file), None

    rng = get_rng(spec.seed)
    n = spec.n

    if spec.kind == "a0_normal":
        spectrum = complex_gaussian(rng, n)
        return _embed_spectrum(spectrum, rng), spectrum

    if spec.kind == "a1_random":
        return complex_gaussian(rng, (n, n)), None

    # a2_repeated
    a_1 = complex_gaussian(rng, 1)
    a_pairs = complex_gaussian(rng, 4)
    values = np.concatenate([a_1, a_pairs, a_pairs.conj()])
    m = spec.multiplicities
    counts = [m[0], *m[1:], *m[1:]]
    spectrum = np.repeat(values, counts)
    return _embed_spectrum(spectrum, rng), spectrum
