"""
Matrices de prueba y lectura/escritura en formato Matrix Market.
"""

from .generators import complex_gaussian, random_unitary, gen_test_matrix
from .matrix_market import read_matrix_market, write_matrix_market

__all__ = [
    'complex_gaussian',
    'random_unitary',
    'gen_test_matrix',
    'read_matrix_market',
    'write_matrix_market'
]
