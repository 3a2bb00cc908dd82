import os
import sys

import hypothesis
import numpy as np
import pytest

# Agregar el directorio raíz al path para imports
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from eberlein import BlockPartition, frobenius_norm  # noqa: E402
from matrices import complex_gaussian, random_unitary  # noqa: E402

hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=200, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "fast"))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: pruebas de aceptación de varios segundos")


@pytest.fixture(scope="session")
def tolerance():
    return 1E-12


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240601))


@pytest.fixture
def generate_complex_matrix(rng):
    def func(N):
        return complex_gaussian(rng, (N, N))

    return func


@pytest.fixture
def generate_hermitian_matrix(generate_complex_matrix):
    def func(N):
        A = generate_complex_matrix(N)

        return (A + A.conj().T) / 2

    return func


@pytest.fixture
def generate_unitary_matrix(rng):
    def func(N):
        return random_unitary(N, rng=rng)

    return func


@pytest.fixture
def generate_normal_matrix(rng, generate_unitary_matrix):
    def func(N, spectrum=None):
        if spectrum is None:
            spectrum = complex_gaussian(rng, N)
        Q = generate_unitary_matrix(N)

        return (Q * spectrum[np.newaxis, :]) @ Q.conj().T, spectrum

    return func


@pytest.fixture
def assert_similarity():
    """T^{-1} A T = Lambda dentro de 1e-8 ||A||_F cond(T)."""
    from eberlein import cond_estimate, similarity_residual

    def func(A, result):
        residual = similarity_residual(A if result.scalar is None else result.scalar * A,
                                       result.t_accum, result.lambda_matrix, result.t_inv)
        bound = 1e-8 * frobenius_norm(A if result.scalar is None else result.scalar * A)
        assert residual <= bound * max(cond_estimate(result.t_accum, result.t_inv), 1.0)

    return func


def partition(*sizes):
    return BlockPartition(tuple(sizes))
