import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eberlein import (
    BlockPartition,
    apply_shear,
    compute_shear_block,
    enumerate_inner_pairs,
    shear_angles,
    shear_auxiliaries,
    unit_partition,
)
from eberlein.shear_stage import ShearParams, shear_matrices, shear_step
from matrices import complex_gaussian
from models import NumericalFailure


def test_inner_pairs_unit_partition():
    assert enumerate_inner_pairs(unit_partition(2), 1, 2) == [(0, 1)]


def test_inner_pairs_two_by_two_blocks():
    pairs = enumerate_inner_pairs(BlockPartition((2, 2)), 1, 2)
    assert pairs == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_inner_pairs_skip_middle_block():
    pairs = enumerate_inner_pairs(BlockPartition((2, 3, 2)), 1, 3)
    assert pairs == [(0, 1), (0, 5), (0, 6), (1, 5), (1, 6), (5, 6)]


def test_auxiliaries_hermitian(generate_hermitian_matrix):
    H = generate_hermitian_matrix(5)
    aux = shear_auxiliaries(H, 1, 3, 0.7)
    assert abs(aux.xi_rs) <= 1e-14 * np.linalg.norm(H) ** 2
    assert abs(aux.w_rs) <= 1e-14 * np.linalg.norm(H) ** 2
    assert abs((aux.t_rs * aux.d_rs.conjugate()).imag) <= 1e-14 * np.linalg.norm(H) ** 2


def test_auxiliaries_diagonal():
    A = np.diag([1 + 2j, -3j])
    aux = shear_auxiliaries(A, 0, 1, 0.3)
    assert aux.d_rs == pytest.approx(1 + 5j)
    assert aux.t_rs == 0
    assert aux.v_rs == 0
    assert aux.xi_rs == 0


def test_auxiliaries_match_definitions(generate_complex_matrix):
    A = generate_complex_matrix(5)
    r, s, beta = 1, 3, 0.4
    aux = shear_auxiliaries(A, r, s, beta)

    others = [i for i in range(5) if i not in (r, s)]
    v = sum(abs(A[i, r]) ** 2 + abs(A[r, i]) ** 2 + abs(A[i, s]) ** 2 + abs(A[s, i]) ** 2 for i in others)
    xi = 2 * sum(A[r, i] * np.conj(A[s, i]) - np.conj(A[i, r]) * A[i, s] for i in others)
    t = (A[r, s] + A[s, r]) * math.cos(beta) - 1j * (A[r, s] - A[s, r]) * math.sin(beta)
    C = A @ A.conj().T - A.conj().T @ A

    scale = np.linalg.norm(A) ** 2
    assert aux.d_rs == pytest.approx(A[r, r] - A[s, s])
    assert aux.t_rs == pytest.approx(t)
    assert aux.v_rs == pytest.approx(v, rel=1e-12)
    assert abs(aux.xi_rs - xi) <= 1e-13 * scale
    assert aux.w_rs == pytest.approx(-xi.real * math.sin(beta) + xi.imag * math.cos(beta), abs=1e-13 * scale)
    assert abs(aux.c_rs - C[r, s]) <= 1e-13 * scale


def test_angles_normal_matrix_give_identity(generate_normal_matrix):
    A, _ = generate_normal_matrix(6)
    params = shear_angles(A, 0, 4)
    assert abs(params.tanh_psi) <= 1e-13


def test_angles_nilpotent_two_by_two():
    A = np.array([[0, 1], [0, 0]], dtype=complex)
    params = shear_angles(A, 0, 1)
    assert params.tanh_psi == 0.0

    def norm_after(psi):
        out, _ = apply_shear(A, 0, 1, ShearParams(beta=params.beta, psi=psi, tanh_psi=math.tanh(psi)))
        return np.linalg.norm(out)

    scan = [norm_after(psi) for psi in np.linspace(-2, 2, 81)]
    assert min(scan) == pytest.approx(norm_after(0.0))


def test_shear_matrices_are_inverse_pair():
    S, S_inv = shear_matrices(ShearParams(beta=0.9, psi=0.6, tanh_psi=math.tanh(0.6)))
    assert np.linalg.norm(S @ S_inv - np.eye(2)) < 1e-14
    assert abs(np.linalg.det(S) - 1) < 1e-14
    assert np.allclose(S, S.conj().T)


def test_apply_shear_zero_angle(generate_complex_matrix):
    A = generate_complex_matrix(4)
    out, delta = apply_shear(A, 1, 2, ShearParams(0.3, 0.0, 0.0))
    assert np.array_equal(out, A)
    assert delta == 0.0


def test_apply_shear_matches_dense_product(generate_complex_matrix):
    A = generate_complex_matrix(6)
    params = ShearParams(beta=-1.1, psi=0.35, tanh_psi=math.tanh(0.35))
    out, delta = apply_shear(A, 1, 4, params)

    S, _ = shear_matrices(params)
    E = np.eye(6, dtype=complex)
    E[np.ix_([1, 4], [1, 4])] = S
    reference = np.linalg.inv(E) @ A @ E
    scale = np.linalg.norm(A)
    assert np.linalg.norm(out - reference) <= 1e-12 * scale
    assert delta == pytest.approx(scale ** 2 - np.linalg.norm(out) ** 2, abs=1e-12 * scale ** 2)


def test_apply_shear_reduction_lower_bound(generate_complex_matrix):
    for _ in range(20):
        A = generate_complex_matrix(6)
        scale2 = np.linalg.norm(A) ** 2
        for r, s in [(0, 1), (2, 5), (3, 4)]:
            params = shear_angles(A, r, s)
            _, delta = apply_shear(A, r, s, params)
            assert delta >= abs(params.c_rs) ** 2 / (3 * scale2) - 1e-10 * scale2


def test_tanh_psi_bounded(generate_complex_matrix):
    for _ in range(20):
        A = generate_complex_matrix(5)
        assert abs(shear_angles(A, 0, 3).tanh_psi) <= 0.5 + 1e-12


def test_shear_block_hermitian_input(generate_hermitian_matrix):
    H = generate_hermitian_matrix(6)
    result = compute_shear_block(H, BlockPartition((3, 3)), 1, 2)
    assert np.array_equal(result.s_core, np.eye(6))
    assert np.array_equal(result.a_next, H)
    assert result.norm_reduction == 0.0


def test_shear_block_unit_partition_matches_single_step(generate_complex_matrix):
    A = generate_complex_matrix(4)
    result = compute_shear_block(A, unit_partition(4), 2, 4)

    reference = A.copy()
    shear_step(reference, 1, 3, float(np.linalg.norm(A)) ** 2)
    assert np.array_equal(result.a_next, reference)
    assert result.inner_steps == 1


def test_shear_block_telescoping(generate_complex_matrix):
    A = generate_complex_matrix(8)
    result = compute_shear_block(A, BlockPartition((4, 4)), 1, 2)
    scale2 = np.linalg.norm(A) ** 2

    assert np.linalg.norm(result.a_next) <= np.linalg.norm(A) * (1 + 1e-14)
    assert result.inner_steps == 28
    assert sum(result.step_deltas) == pytest.approx(result.norm_reduction, abs=1e-10 * scale2)
    assert np.linalg.norm(result.s_core @ result.s_core_inv - np.eye(8)) <= 1e-12 * result.cond_estimate


def test_shear_block_is_similarity(generate_complex_matrix):
    A = generate_complex_matrix(7)
    pi = BlockPartition((2, 3, 2))
    result = compute_shear_block(A, pi, 1, 3)
    idx = pi.pivot_indices(1, 3)

    E = np.eye(7, dtype=complex)
    E[np.ix_(idx, idx)] = result.s_core
    reference = np.linalg.solve(E, A @ E)
    assert np.linalg.norm(result.a_next - reference) <= 1e-11 * np.linalg.norm(A)


def test_multiple_sweeps_reduce_more(generate_complex_matrix):
    A = generate_complex_matrix(8)
    pi = BlockPartition((4, 4))
    once = compute_shear_block(A, pi, 1, 2, sweeps=1)
    twice = compute_shear_block(A, pi, 1, 2, sweeps=2)
    assert twice.inner_steps == 2 * once.inner_steps
    assert twice.norm_reduction >= once.norm_reduction - 1e-12 * np.linalg.norm(A) ** 2


@st.composite
def pivot_problems(draw):
    """Partición de 2 a 4 bloques, par pivote p < q y una matriz compleja sembrada."""
    sizes = tuple(draw(st.lists(st.integers(min_value=1, max_value=3), min_size=2, max_size=4)))
    p = draw(st.integers(min_value=1, max_value=len(sizes) - 1))
    q = draw(st.integers(min_value=p + 1, max_value=len(sizes)))
    seed = draw(st.integers(min_value=0, max_value=2 ** 32 - 1))
    n = sum(sizes)
    A = complex_gaussian(np.random.default_rng(seed), (n, n))
    return BlockPartition(sizes), p, q, A


@given(pivot_problems())
def test_accumulated_shear_is_unimodular(problem):
    pi, p, q, A = problem
    result = compute_shear_block(A, pi, p, q)
    dim = len(pi.pivot_indices(p, q))

    assert abs(np.linalg.det(result.s_core) - 1) <= 1e-10
    scale = np.linalg.norm(result.s_core) * np.linalg.norm(result.s_core_inv)
    assert np.linalg.norm(result.s_core @ result.s_core_inv - np.eye(dim)) <= 1e-12 * scale


@given(pivot_problems())
def test_shear_block_touches_only_pivot_strips(problem):
    pi, p, q, A = problem
    result = compute_shear_block(A, pi, p, q)
    idx = pi.pivot_indices(p, q)

    outside = np.ones(A.shape, dtype=bool)
    outside[idx, :] = False
    outside[:, idx] = False
    assert np.array_equal(result.a_next[outside], A[outside])


def test_overflowing_entries_raise_numerical_failure(generate_complex_matrix):
    A = generate_complex_matrix(6) * 1e200
    with pytest.raises(NumericalFailure):
        compute_shear_block(A, BlockPartition((3, 3)), 1, 2)
