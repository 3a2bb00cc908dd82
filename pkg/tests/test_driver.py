import numpy as np
import pytest

from eberlein import (
    BlockPartition,
    c_operator,
    eberlein_solve,
    elementwise_cycle,
    frobenius_norm,
    off_norm,
    precondition,
    row_cyclic,
    unit_partition,
)
from eberlein.diagnostics import match_spectra
from models import InvalidArgumentError, SolveOptions


def test_diagonal_input_converges_in_one_cycle():
    A = np.diag([1 + 1j, -2.0, 3 - 0.5j, 0.25j])
    result = eberlein_solve(A, BlockPartition((2, 2)), SolveOptions(record_trace=True))
    assert result.status == "converged"
    assert result.cycles == 1
    assert np.array_equal(result.lambda_matrix, A)
    assert len(result.log) == 1
    assert result.log.cycles[0].off_a == 0.0
    assert sorted(result.eigenvalues, key=lambda z: (z.real, z.imag)) == \
        sorted(np.diag(A), key=lambda z: (z.real, z.imag))


def test_hermitian_input(generate_hermitian_matrix, assert_similarity):
    H = generate_hermitian_matrix(12)
    result = eberlein_solve(H, BlockPartition((4, 4, 4)), SolveOptions(record_trace=True))
    assert result.status == "converged"
    assert max(step.shear_deviation for step in result.log.steps) <= 1e-12
    assert off_norm(result.lambda_matrix) <= 1e-8 * frobenius_norm(H)

    expected = np.sort(np.linalg.eigvalsh(H))
    assert np.sort(result.real_parts) == pytest.approx(expected, abs=1e-8 * frobenius_norm(H))
    assert_similarity(H, result)


def test_normal_input_recovers_spectrum(generate_normal_matrix, assert_similarity):
    A, spectrum = generate_normal_matrix(20)
    result = eberlein_solve(A, BlockPartition((5, 5, 5, 5)))
    assert off_norm(result.lambda_matrix) <= 1e-8 * frobenius_norm(A)

    diag = np.diag(result.lambda_matrix)
    matched = spectrum[match_spectra(diag, spectrum)]
    assert np.max(np.abs(diag - matched) / np.abs(matched)) <= 1e-7
    assert_similarity(A, result)


def test_general_input_becomes_normal(generate_complex_matrix, assert_similarity):
    A = generate_complex_matrix(16)
    scale = frobenius_norm(A)
    result = eberlein_solve(A, BlockPartition((4, 4, 4, 4)), SolveOptions(record_trace=True))
    assert result.status == "converged"
    assert frobenius_norm(c_operator(result.lambda_matrix)) <= 1e-7 * scale ** 2

    frob = result.log.column("frob_a")
    assert np.all(np.diff(frob) <= 1e-12 * scale)
    assert result.residuals.max() <= 1e-6 * scale
    assert_similarity(A, result)


def test_norm_is_monotone_per_step(generate_complex_matrix):
    A = generate_complex_matrix(10)
    result = eberlein_solve(A, BlockPartition((2, 3, 5)), SolveOptions(record_trace=True, max_cycles=3))
    scale2 = frobenius_norm(A) ** 2
    for step in result.log.steps:
        assert step.delta >= -1e-12 * scale2
        assert step.delta >= step.lower_bound - 1e-9 * scale2


def test_unit_partition_matches_elementwise_cycle(generate_complex_matrix):
    A = generate_complex_matrix(8)
    result = eberlein_solve(A, unit_partition(8), SolveOptions(max_cycles=1, extract=False))
    assert np.array_equal(result.lambda_matrix, elementwise_cycle(A, row_cyclic(8)))


def test_callback_called_once_per_cycle(generate_complex_matrix):
    records = []
    A = generate_complex_matrix(6)
    result = eberlein_solve(A, BlockPartition((3, 3)), SolveOptions(callback=records.append, extract=False))
    assert [rec.cycle for rec in records] == list(range(1, result.cycles + 1))


def test_max_cycles_status(generate_complex_matrix):
    A = generate_complex_matrix(12)
    result = eberlein_solve(A, BlockPartition((4, 4, 4)), SolveOptions(max_cycles=1, extract=False))
    assert result.status == "max_cycles"
    assert result.cycles == 1


def test_rejects_mismatched_partition(generate_complex_matrix):
    with pytest.raises(InvalidArgumentError):
        eberlein_solve(generate_complex_matrix(5), BlockPartition((2, 2)))
    with pytest.raises(InvalidArgumentError):
        eberlein_solve(generate_complex_matrix(4), BlockPartition((2, 2)), SolveOptions(ordering=row_cyclic(3)))
    with pytest.raises(InvalidArgumentError):
        eberlein_solve(np.ones((3, 4)), BlockPartition((3,)))


def test_rejects_non_finite_input():
    A = np.eye(3, dtype=complex)
    A[1, 2] = np.nan
    with pytest.raises(InvalidArgumentError):
        eberlein_solve(A, unit_partition(3))


def test_precondition_scalar():
    A = np.array([[1, 2], [3, 4]], dtype=complex)
    dA, d = precondition(A, 1j)
    assert d == 1j
    assert np.array_equal(dA, 1j * A)

    _, d1 = precondition(A, seed=11)
    _, d2 = precondition(A, seed=11)
    assert d1 == d2
    assert abs(d1.imag) >= 0.1 * abs(d1)

    with pytest.raises(InvalidArgumentError):
        precondition(A, 2.0)
    with pytest.raises(InvalidArgumentError):
        SolveOptions(precondition_scalar=3.0)


def test_precondition_recovers_eigenvalues(generate_normal_matrix):
    A, spectrum = generate_normal_matrix(6)
    dA, d = precondition(A, seed=4)
    values = np.linalg.eigvals(dA) / d
    matched = spectrum[match_spectra(values, spectrum)]
    assert np.max(np.abs(values - matched) / np.abs(matched)) <= 1e-12 * 100


def test_preconditioned_solve_divides_eigenvalues(generate_normal_matrix):
    A, spectrum = generate_normal_matrix(8)
    result = eberlein_solve(A, BlockPartition((4, 4)), SolveOptions(precondition=True, seed=2))
    assert result.scalar is not None
    matched = spectrum[match_spectra(result.eigenvalues, spectrum)]
    assert np.max(np.abs(result.eigenvalues - matched) / np.abs(matched)) <= 1e-7


def test_repeated_real_parts_stall_and_rescue(generate_normal_matrix):
    pair = np.array([0.5 + 2j, 0.5 - 2j])
    spectrum = np.concatenate([pair, pair, [1.5 + 0.3j, -1 + 1j]])
    A, _ = generate_normal_matrix(6, spectrum)

    stalled = eberlein_solve(A, unit_partition(6), SolveOptions(seed=1))
    assert stalled.status == "stalled"
    assert any(len(comp) > 1 for comp in stalled.block_structure)
    assert not stalled.failures
    matched = spectrum[match_spectra(stalled.eigenvalues, spectrum)]
    assert np.max(np.abs(stalled.eigenvalues - matched)) <= 1e-6

    rescued = eberlein_solve(A, unit_partition(6), SolveOptions(seed=1, post_precondition=True))
    assert rescued.status == "converged"
    assert all(len(comp) == 1 for comp in rescued.block_structure)


def test_diagnostics_record_no_violations(generate_complex_matrix):
    A = generate_complex_matrix(8)
    result = eberlein_solve(A, BlockPartition((4, 4)), SolveOptions(diagnostics=True, max_cycles=5, extract=False))
    assert isinstance(result.log.violations, list)
    assert not [v for v in result.log.violations if "creció" in v]


@pytest.mark.parametrize("factor", [1e200, 1e-200])
def test_extreme_magnitudes_are_rescaled(generate_complex_matrix, factor):
    A = generate_complex_matrix(6) * factor
    result = eberlein_solve(A, BlockPartition((3, 3)), SolveOptions(record_trace=True))

    assert result.status in ("converged", "stalled")
    reference = np.linalg.eigvals(A)
    matched = reference[match_spectra(result.eigenvalues, reference)]
    scale = np.linalg.norm(A)
    assert np.max(np.abs(result.eigenvalues - matched)) <= 1e-8 * scale
    assert np.max(result.residuals) <= 1e-8 * scale
    assert result.log.cycles[-1].frob_a == pytest.approx(np.linalg.norm(result.lambda_matrix), rel=1e-12)


def test_rescue_continues_cycle_numbering_of_steps(generate_normal_matrix):
    pair = np.array([0.5 + 2j, 0.5 - 2j])
    spectrum = np.concatenate([pair, pair, [1.5 + 0.3j, -1 + 1j]])
    A, _ = generate_normal_matrix(6, spectrum)

    opts = SolveOptions(seed=1, post_precondition=True, record_trace=True)
    result = eberlein_solve(A, unit_partition(6), opts)
    keys = [(rec.cycle, rec.step) for rec in result.log.steps]
    assert len(keys) == len(set(keys))
    cycles = [rec.cycle for rec in result.log.cycles]
    assert cycles == list(range(1, result.cycles + 1))
