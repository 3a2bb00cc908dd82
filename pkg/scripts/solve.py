"""
Script para ejecutar el solver sobre una matriz generada o leída de archivo
y guardar la traza de convergencia y los resultados.
"""

import csv
import io
import json
import os
import tempfile
import time
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from config import get_logger, TRACE_COLUMNS
from config.settings import DEFAULT_A2_MULTIPLICITIES
from eberlein import (
    BlockPartition,
    PivotOrdering,
    accuracy_report,
    col_cyclic,
    eberlein_solve,
    load_ordering,
    partition_from_block_size,
    row_cyclic,
    serial_with_permutations,
)
from matrices import gen_test_matrix
from models import EberleinResult, InvalidArgumentError, OutputError, RunConfig, SolveOptions, TestMatrixSpec

logger = get_logger(__name__)

GEN_KINDS = {"a0": "a0_normal", "a1": "a1_random", "a2": "a2_repeated"}


def atomic_write_text(path, text: str):
    """Escribe el archivo completo en un temporal del mismo directorio y lo renombra."""
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            os.replace(tmp, target)
        finally:
            if os.path.exists(tmp):
                os.remove(tmp)
    except OSError as e:
        raise OutputError(f"No se pudo escribir {path}: {e}") from e


def parse_int_list(text: str, what: str) -> Tuple[int, ...]:
    """'8,4,4' -> (8, 4, 4)."""
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise InvalidArgumentError(f"{what} debe ser una lista de enteros separados por comas: {text!r}")


def sidecar_path(matrix_path) -> Path:
    """matrix.mtx -> matrix.spectrum.json"""
    return Path(matrix_path).with_suffix(".spectrum.json")


def load_spectrum(path) -> np.ndarray:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as e:
        raise OutputError(f"No se pudo leer el espectro {path}: {e}") from e
    return np.array([complex(re, im) for re, im in data["eigenvalues"]])


def resolve_input(
    source: str,
    n: Optional[int] = None,
    multiplicities: Optional[Sequence[int]] = None,
    seed: Optional[int] = None
) -> TestMatrixSpec:
    """
    Traduce --input (gen:a0 | gen:a1 | gen:a2 | ruta .mtx) a un TestMatrixSpec.
    """
    if source.startswith("gen:"):
        kind = GEN_KINDS.get(source[4:])
        if kind is None:
            raise InvalidArgumentError(f"Generador desconocido: {source} (use gen:a0, gen:a1 o gen:a2)")
        if not n:
            raise InvalidArgumentError(f"{source} requiere --n")
        if kind == "a2_repeated" and multiplicities is None:
            multiplicities = DEFAULT_A2_MULTIPLICITIES
        mult = tuple(multiplicities) if multiplicities is not None and kind == "a2_repeated" else None
        return TestMatrixSpec(kind=kind, n=n, multiplicities=mult, seed=seed)
    return TestMatrixSpec(kind="from_file", file=source, seed=seed)


def build_partition(n: int, block_size: Optional[int] = None, sizes: Optional[Sequence[int]] = None) -> BlockPartition:
    if sizes:
        partition = BlockPartition(tuple(int(s) for s in sizes))
        if partition.n != n:
            raise InvalidArgumentError(f"La partición suma {partition.n} y la matriz es {n}x{n}")
        return partition
    if block_size is None:
        raise InvalidArgumentError("Se requiere --block-size o --partition")
    return partition_from_block_size(n, block_size)


def build_ordering(spec: str, m: int) -> PivotOrdering:
    """
    row | col | serial-perm:SEED | serial-perm-row:SEED | file:PATH
    """
    if spec == "row":
        return row_cyclic(m)
    if spec == "col":
        return col_cyclic(m)
    if spec.startswith("file:"):
        ordering = load_ordering(spec[5:], m)
        return ordering
    for prefix, direction in (("serial-perm-row", "row"), ("serial-perm", "col")):
        if spec == prefix or spec.startswith(prefix + ":"):
            raw_seed = spec[len(prefix) + 1:]
            try:
                seed = int(raw_seed) if raw_seed else None
            except ValueError:
                raise InvalidArgumentError(f"Semilla inválida en el ordenamiento: {spec}")
            return serial_with_permutations(m, seed, direction)
    raise InvalidArgumentError(f"Ordenamiento desconocido: {spec}")


def run_solve(config: RunConfig, verbose: bool = False):
    """
    Genera o lee la matriz y ejecuta el solver.

    Returns:
        (resultado, matriz, espectro conocido o None, tiempo en segundos)
    """
    A, spectrum = gen_test_matrix(config.input)
    if spectrum is None and config.input.kind == "from_file" and sidecar_path(config.input.file).exists():
        spectrum = load_spectrum(sidecar_path(config.input.file))

    n = A.shape[0]
    partition = build_partition(n, config.block_size, config.partition)
    options = SolveOptions(
        tolerance=config.tolerance,
        max_cycles=config.max_cycles,
        ordering=build_ordering(config.ordering, partition.m),
        record_trace=True,
        precondition=config.precondition,
        post_precondition=config.post_precondition,
        shear_sweeps=config.shear_sweeps,
        absolute_tolerance=config.absolute_tolerance,
        seed=config.seed,
        verbose=verbose,
    )
    logger.info(f"Resolviendo n = {n} con {partition.m} bloques, ordenamiento {options.ordering.provenance}")

    start = time.perf_counter()
    result = eberlein_solve(A, partition, options)
    elapsed = time.perf_counter() - start
    return result, A, spectrum, elapsed


def _trace_csv(result: EberleinResult) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(TRACE_COLUMNS)
    for record in result.log.cycles:
        writer.writerow([record.cycle] + [repr(float(v)) for v in record.to_row()[1:]])
    return buffer.getvalue()


def _structure_csv(result: EberleinResult) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["component", "size", "indices", "real_part"])
    for k, comp in enumerate(result.block_structure):
        mean = float(np.mean(result.real_parts[list(comp)]))
        writer.writerow([k, len(comp), " ".join(str(i) for i in comp), repr(mean)])
    return buffer.getvalue()


def result_to_dict(
    result: EberleinResult,
    config: RunConfig,
    wall_time: float,
    accuracy: Optional[Dict[str, Any]] = None
) -> Dict[str, Any]:
    scalar = None if result.scalar is None else [result.scalar.real, result.scalar.imag]
    return {
        "status": result.status,
        "cycles": result.cycles,
        "n": int(result.lambda_matrix.shape[0]),
        "eigenvalues": [[float(v.real), float(v.imag)] for v in result.eigenvalues],
        "residuals": [float(r) for r in result.residuals],
        "real_parts": [float(x) for x in result.real_parts],
        "block_structure": [list(comp) for comp in result.block_structure],
        "failures": [{"component": list(comp), "reason": reason} for comp, reason in result.failures],
        "scalar": scalar,
        "violations": list(result.log.violations),
        "accuracy": accuracy,
        "wall_time_s": wall_time,
        "config": config.to_dict(),
    }


def write_outputs(
    result: EberleinResult,
    config: RunConfig,
    wall_time: float = 0.0,
    accuracy: Optional[Dict[str, Any]] = None
):
    """Escribe traza CSV, resultado JSON y, si se pidió, la estructura de bloques."""
    if config.out_trace:
        atomic_write_text(config.out_trace, _trace_csv(result))
        logger.info(f"Traza guardada en {config.out_trace}")
    if config.out_result:
        payload = result_to_dict(result, config, wall_time, accuracy)
        atomic_write_text(config.out_result, json.dumps(payload, indent=2) + "\n")
        logger.info(f"Resultado guardado en {config.out_result}")
    if config.out_structure:
        atomic_write_text(config.out_structure, _structure_csv(result))


def solve_and_save(config: RunConfig, verbose: bool = False) -> EberleinResult:
    """Flujo completo del subcomando solve."""
    print("\n🧮 SOLVER DE EBERLEIN POR BLOQUES")
    print("-" * 60)
    result, A, spectrum, elapsed = run_solve(config, verbose=verbose)

    accuracy = None
    if spectrum is not None and len(result.eigenpairs) == len(spectrum):
        accuracy = accuracy_report(result.eigenvalues, spectrum, result.residuals)

    print(f"  Dimensión:        {A.shape[0]}")
    print(f"  Estado:           {result.status}")
    print(f"  Ciclos:           {result.cycles}")
    print(f"  Bloques en Λ:     {sum(1 for c in result.block_structure if len(c) > 1)} no triviales")
    if len(result.residuals):
        print(f"  Residuo máximo:   {result.residuals.max():.3e}")
    if accuracy is not None:
        print(f"  Error relativo:   {accuracy['max_rel_error']:.3e}")
    if result.failures:
        print(f"  ⚠ Componentes sin resolver: {len(result.failures)}")
    print(f"  Tiempo:           {elapsed:.2f} s")
    print("-" * 60)

    write_outputs(result, config, elapsed, accuracy)
    return result
