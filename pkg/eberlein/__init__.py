"""
Método de Eberlein por bloques para el problema de autovalores no simétrico.
"""

from .blockmat import (
    BlockPartition,
    PivotPair,
    ElementaryBlockTransform,
    unit_partition,
    partition_from_block_size,
    embed,
    apply_elementary_similarity,
    frobenius_norm,
    off_norm,
    hermitian_part,
    skew_part,
    c_operator,
    block_off_norm_squared
)
from .unitary_stage import jacobi_rotation_2x2, diagonalize_hermitian_core, ubc_permute, unitary_stage
from .shear_stage import enumerate_inner_pairs, shear_auxiliaries, shear_angles, apply_shear, compute_shear_block
from .pivot import (
    PivotOrdering,
    row_cyclic,
    col_cyclic,
    serial_with_permutations,
    serial_from_permutations,
    derive,
    is_serial_member,
    load_ordering
)
from .driver import eberlein_solve, elementwise_cycle, precondition
from .eigenpairs import detect_block_structure, extract_eigenpairs
from .diagnostics import similarity_residual, cond_estimate, accuracy_report

__all__ = [
    'BlockPartition',
    'PivotPair',
    'ElementaryBlockTransform',
    'unit_partition',
    'partition_from_block_size',
    'embed',
    'apply_elementary_similarity',
    'frobenius_norm',
    'off_norm',
    'hermitian_part',
    'skew_part',
    'c_operator',
    'block_off_norm_squared',
    'jacobi_rotation_2x2',
    'diagonalize_hermitian_core',
    'ubc_permute',
    'unitary_stage',
    'enumerate_inner_pairs',
    'shear_auxiliaries',
    'shear_angles',
    'apply_shear',
    'compute_shear_block',
    'PivotOrdering',
    'row_cyclic',
    'col_cyclic',
    'serial_with_permutations',
    'serial_from_permutations',
    'derive',
    'is_serial_member',
    'load_ordering',
    'eberlein_solve',
    'elementwise_cycle',
    'precondition',
    'detect_block_structure',
    'extract_eigenpairs',
    'similarity_residual',
    'cond_estimate',
    'accuracy_report'
]
