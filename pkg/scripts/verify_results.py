"""
Script para verificar un resultado guardado: estado, residuos, precisión
frente a un espectro conocido y cola de la traza de convergencia.
"""

import csv
import json
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from eberlein import accuracy_report
from models import OutputError
from .solve import load_spectrum


def _read_json(path) -> Dict[str, Any]:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as e:
        raise OutputError(f"No se pudo leer {path}: {e}") from e


def read_trace(path):
    """Filas de la traza como diccionarios con valores numéricos."""
    try:
        with open(path, newline="", encoding="utf-8") as f:
            return [{k: float(v) for k, v in row.items()} for row in csv.DictReader(f)]
    except (OSError, ValueError) as e:
        raise OutputError(f"No se pudo leer la traza {path}: {e}") from e


def verify_result(result_path, spectrum_path=None, trace_path=None) -> Dict[str, Any]:
    """
    Resume un archivo de resultados.

    Returns:
        dict con status, n, cycles, max_residual y, si hay espectro, accuracy
    """
    data = _read_json(result_path)
    eigenvalues = np.array([complex(re, im) for re, im in data["eigenvalues"]])
    residuals = np.array(data["residuals"], dtype=float)

    summary: Dict[str, Any] = {
        "status": data["status"],
        "n": data["n"],
        "cycles": data["cycles"],
        "eigenvalues": len(eigenvalues),
        "max_residual": float(residuals.max()) if len(residuals) else None,
        "failures": len(data.get("failures", [])),
    }

    print("\n📊 VERIFICACIÓN DE RESULTADOS")
    print("-" * 60)
    print(f"  Estado:          {summary['status']}")
    print(f"  Ciclos:          {summary['cycles']}")
    print(f"  Autovalores:     {summary['eigenvalues']} de {summary['n']}")
    if summary["max_residual"] is not None:
        print(f"  Residuo máximo:  {summary['max_residual']:.3e}")

    if spectrum_path is not None:
        reference = load_spectrum(spectrum_path)
        if len(reference) == len(eigenvalues):
            summary["accuracy"] = accuracy_report(eigenvalues, reference, residuals)
            print(f"  Error relativo:  {summary['accuracy']['max_rel_error']:.3e}")
        else:
            print(f"  ⚠ El espectro tiene {len(reference)} valores y se calcularon {len(eigenvalues)}")

    if trace_path is not None:
        rows = read_trace(trace_path)
        summary["trace_rows"] = len(rows)
        if rows:
            last = rows[-1]
            print(f"  Último ciclo:    off(A)={last['off_A']:.3e} off(B)={last['off_B']:.3e} ||C||={last['normC']:.3e}")
        off_b = np.array([row["off_B"] for row in rows])
        summary["off_b_monotone"] = bool(np.all(np.diff(off_b) <= 0))
        marker = "✓" if summary["off_b_monotone"] else "⚠"
        print(f"  {marker} off(B) no creciente: {summary['off_b_monotone']}")

    if summary["eigenvalues"] == summary["n"] and not summary["failures"]:
        print("  ✓ Todos los pares propios extraídos")
    else:
        print("  ✗ Faltan pares propios")
    print("-" * 60)
    return summary
