"""
Script para medir el tiempo por ciclo según el tamaño de bloque.
"""

import time
from typing import Dict, List, Optional, Sequence

from tqdm import tqdm

from eberlein import eberlein_solve, partition_from_block_size
from matrices import gen_test_matrix
from models import SolveOptions, TestMatrixSpec


def time_sweeps(
    n: int,
    block_sizes: Sequence[int],
    cycles: int = 3,
    seed: Optional[int] = None
) -> List[Dict[str, float]]:
    """
    Ejecuta `cycles` ciclos sobre una matriz a1 para cada tamaño de bloque.

    Returns:
        Lista de dicts con block_size, cycles, seconds y seconds_per_cycle
    """
    A, _ = gen_test_matrix(TestMatrixSpec(kind="a1_random", n=n, seed=seed))
    rows = []
    for block_size in tqdm(block_sizes, desc="Tamaños de bloque"):
        partition = partition_from_block_size(n, block_size)
        opts = SolveOptions(max_cycles=cycles, tolerance=1e-300, absolute_tolerance=True, extract=False)
        start = time.perf_counter()
        result = eberlein_solve(A, partition, opts)
        elapsed = time.perf_counter() - start
        rows.append({
            "block_size": block_size,
            "cycles": result.cycles,
            "seconds": elapsed,
            "seconds_per_cycle": elapsed / max(result.cycles, 1),
        })

    print(f"\n⏱ TIEMPO POR CICLO (n = {n})")
    print("-" * 60)
    for row in rows:
        print(f"  B = {row['block_size']:4d}: {row['seconds_per_cycle']:.3f} s/ciclo ({row['cycles']} ciclos)")
    print("-" * 60)
    return rows
