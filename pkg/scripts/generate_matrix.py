"""
Script para generar matrices de prueba y guardarlas en formato Matrix Market.
"""

import json
from typing import Optional, Sequence

from config import get_logger
from matrices import gen_test_matrix, write_matrix_market
from models import TestMatrixSpec
from .solve import atomic_write_text, resolve_input, sidecar_path

logger = get_logger(__name__)


def run_gen(kind: str, n: int, out: str, multiplicities: Optional[Sequence[int]] = None, seed: Optional[int] = None) -> TestMatrixSpec:
    """
    Genera la matriz y la escribe en out; para a0 y a2 escribe además el
    espectro conocido en <out>.spectrum.json.

    Args:
        kind: a0, a1 o a2
        n: Dimensión
        out: Ruta del archivo .mtx
        multiplicities: Multiplicidades para a2
        seed: Semilla
    """
    spec = resolve_input(f"gen:{kind}", n=n, multiplicities=multiplicities, seed=seed)
    A, spectrum = gen_test_matrix(spec)

    print(f"\n🎲 Generando matriz {spec.kind} de {n}x{n} (semilla {seed})")
    write_matrix_market(out, A, comment=f"{spec.kind} n={n} seed={seed}")
    print(f"  ✓ Matriz guardada en {out}")

    if spectrum is not None:
        payload = {
            "kind": spec.kind,
            "n": n,
            "seed": seed,
            "multiplicities": list(spec.multiplicities) if spec.multiplicities else None,
            "eigenvalues": [[float(v.real), float(v.imag)] for v in spectrum],
        }
        atomic_write_text(sidecar_path(out), json.dumps(payload, indent=2) + "\n")
        print(f"  ✓ Espectro guardado en {sidecar_path(out)}")

    return spec
