"""
Lectura y escritura de matrices densas en formato Matrix Market.

Se aceptan los dialectos `matrix coordinate|array real|complex general`.
Los errores de formato indican archivo y número de línea.
"""

import os
import tempfile
from pathlib import Path
from typing import Iterator, List, Tuple

import numpy as np
from scipy.io import mmwrite

from config.logging_config import get_logger
from config.settings import MM_DIGITS
from models.errors import MatrixMarketParseError, OutputError

logger = get_logger(__name__)

_FORMATS = ("coordinate", "array")
_FIELDS = ("real", "complex")


def _data_lines(lines: List[str], start: int) -> Iterator[Tuple[int, List[str]]]:
    """Líneas de datos (número de línea 1-based, tokens), sin comentarios ni vacías."""
    for lineno in range(start, len(lines) + 1):
        stripped = lines[lineno - 1].strip()
        if stripped and not stripped.startswith("%"):
            yield lineno, stripped.split()


def _parse_value(tokens: List[str], field: str, path, lineno: int) -> complex:
    expected = 2 if field == "complex" else 1
    if len(tokens) != expected:
        raise MatrixMarketParseError(
            f"se esperaban {expected} valores {field}, se leyeron {len(tokens)}", path, lineno
        )
    try:
        values = [float(tok) for tok in tokens]
    except ValueError:
        raise MatrixMarketParseError(f"valor numérico inválido: {' '.join(tokens)}", path, lineno)
    return complex(values[0], values[1]) if field == "complex" else complex(values[0])


def read_matrix_market(path) -> np.ndarray:
    """
    Lee una matriz cuadrada en formato Matrix Market.

    Las entradas no listadas en formato coordinate son cero; las entradas
    repetidas se suman. El formato array se lee por columnas.

    Raises:
        OutputError: Si el archivo no se puede leer
        MatrixMarketParseError: Encabezado, índices o dimensiones inválidos
    """
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise OutputError(f"No se pudo leer {path}: {e}") from e

    if not lines:
        raise MatrixMarketParseError("archivo vacío", path, 1)

    header = lines[0].split()
    if len(header) != 5 or header[0].lower() != "%%matrixmarket":
        raise MatrixMarketParseError("encabezado '%%MatrixMarket' ausente o incompleto", path, 1)
    obj, fmt, field, symmetry = (tok.lower() for tok in header[1:])
    if obj != "matrix":
        raise MatrixMarketParseError(f"objeto no soportado: {obj}", path, 1)
    if fmt not in _FORMATS:
        raise MatrixMarketParseError(f"formato no soportado: {fmt}", path, 1)
    if field not in _FIELDS:
        raise MatrixMarketParseError(
            f"campo no soportado: {field} (sólo real o complex; pattern/integer no se aceptan)", path, 1
        )
    if symmetry != "general":
        raise MatrixMarketParseError(
            f"simetría no soportada: {symmetry} (sólo general)", path, 1
        )

    data = _data_lines(lines, 2)
    try:
        size_line, size_tokens = next(data)
    except StopIteration:
        raise MatrixMarketParseError("falta la línea de dimensiones", path, len(lines))

    expected_sizes = 3 if fmt == "coordinate" else 2
    if len(size_tokens) != expected_sizes:
        raise MatrixMarketParseError(
            f"la línea de dimensiones debe tener {expected_sizes} enteros", path, size_line
        )
    try:
        sizes = [int(tok) for tok in size_tokens]
    except ValueError:
        raise MatrixMarketParseError("dimensiones no enteras", path, size_line)
    rows, cols = sizes[0], sizes[1]
    if rows != cols or rows < 1:
        raise MatrixMarketParseError(f"la matriz debe ser cuadrada y no vacía: {rows}x{cols}", path, size_line)

    A = np.zeros((rows, cols), dtype=np.complex128)
    count = 0

    if fmt == "coordinate":
        nnz = sizes[2]
        for lineno, tokens in data:
            if count == nnz:
                raise MatrixMarketParseError(f"hay más de {nnz} entradas", path, lineno)
            if len(tokens) < 3:
                raise MatrixMarketParseError("entrada incompleta", path, lineno)
            try:
                i, j = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise MatrixMarketParseError("índices no enteros", path, lineno)
            if not (1 <= i <= rows and 1 <= j <= cols):
                raise MatrixMarketParseError(f"índice fuera de rango: ({i}, {j})", path, lineno)
            A[i - 1, j - 1] += _parse_value(tokens[2:], field, path, lineno)
            count += 1
        expected = nnz
    else:
        expected = rows * cols
        for lineno, tokens in data:
            if count == expected:
                raise MatrixMarketParseError(f"hay más de {expected} entradas", path, lineno)
            # orden por columnas
            A[count % rows, count // rows] = _parse_value(tokens, field, path, lineno)
            count += 1

    if count != expected:
        raise MatrixMarketParseError(f"se leyeron {count} entradas de {expected}", path, len(lines))

    logger.info(f"Leída matriz {rows}x{cols} ({fmt} {field}) desde {path}")
    return A


def write_matrix_market(path, A: np.ndarray, comment: str = "") -> None:
    """
    Escribe A en formato array general con 17 dígitos significativos.

    La escritura es atómica: se escribe un temporal en el mismo directorio y
    se renombra.
    """
    A = np.asarray(A)
    field = "real" if not np.iscomplexobj(A) or not np.any(A.imag) else "complex"
    data = A.real if field == "real" else A
    target = Path(path)

    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(suffix=".mtx", dir=target.parent)
        os.close(fd)
        try:
            mmwrite(tmp, data, comment=comment, field=field, precision=MM_DIGITS, symmetry="general")
            os.replace(tmp, target)
        finally:
            if os.path.exists(tmp):
                os.remove(tmp)
    except OSError as e:
        raise OutputError(f"No se pudo escribir {path}: {e}") from e
