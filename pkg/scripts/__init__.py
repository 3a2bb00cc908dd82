"""
Scripts de línea de comandos: resolver, generar matrices, mostrar
ordenamientos, verificar resultados y medir tiempos.
"""

from .solve import solve_and_save, run_solve, write_outputs
from .generate_matrix import run_gen
from .show_orderings import show_ordering
from .verify_results import verify_result
from .benchmark_sweeps import time_sweeps

__all__ = [
    'solve_and_save',
    'run_solve',
    'write_outputs',
    'run_gen',
    'show_ordering',
    'verify_result',
    'time_sweeps'
]
