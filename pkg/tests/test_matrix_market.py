import numpy as np
import pytest

from matrices import read_matrix_market, write_matrix_market
from models import MatrixMarketParseError, OutputError


def _write(tmp_path, text, name="m.mtx"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_coordinate_real_identity(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix coordinate real general\n% comentario\n2 2 2\n1 1 1\n2 2 1\n")
    assert np.array_equal(read_matrix_market(path), np.eye(2))


def test_coordinate_complex(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix coordinate complex general\n2 2 1\n1 2 1.5 -2\n")
    A = read_matrix_market(path)
    assert A[0, 1] == 1.5 - 2j
    assert A[1, 0] == 0


def test_array_is_column_major(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n")
    assert np.array_equal(read_matrix_market(path), np.array([[1, 3], [2, 4]]))


def test_array_complex(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix array complex general\n1 1\n0.5 0.25\n")
    assert read_matrix_market(path)[0, 0] == 0.5 + 0.25j


@pytest.mark.parametrize("header", [
    "%%MatrixMarket matrix coordinate pattern general",
    "%%MatrixMarket matrix coordinate real symmetric",
    "%%MatrixMarket matrix coordinate complex hermitian",
])
def test_unsupported_dialects_rejected(tmp_path, header):
    path = _write(tmp_path, header + "\n2 2 1\n1 1 1\n")
    with pytest.raises(MatrixMarketParseError) as excinfo:
        read_matrix_market(path)
    assert excinfo.value.line == 1


def test_malformed_header(tmp_path):
    path = _write(tmp_path, "MatrixMarket matrix\n")
    with pytest.raises(MatrixMarketParseError, match=":1:"):
        read_matrix_market(path)


def test_out_of_range_index_reports_line(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix coordinate real general\n% c\n2 2 2\n1 1 1\n3 1 1\n")
    with pytest.raises(MatrixMarketParseError) as excinfo:
        read_matrix_market(path)
    assert excinfo.value.line == 5


def test_non_square_rejected(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix array real general\n2 3\n")
    with pytest.raises(MatrixMarketParseError) as excinfo:
        read_matrix_market(path)
    assert excinfo.value.line == 2


def test_missing_entries(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n")
    with pytest.raises(MatrixMarketParseError):
        read_matrix_market(path)


def test_missing_file(tmp_path):
    with pytest.raises(OutputError):
        read_matrix_market(tmp_path / "no_existe.mtx")


def test_round_trip_is_exact(tmp_path, generate_complex_matrix):
    A = generate_complex_matrix(6) * 1e-3
    path = tmp_path / "a.mtx"
    write_matrix_market(path, A)
    assert np.array_equal(read_matrix_market(path), A)

    R = A.real.copy()
    write_matrix_market(tmp_path / "r.mtx", R)
    assert "real" in (tmp_path / "r.mtx").read_text().splitlines()[0]
    assert np.array_equal(read_matrix_market(tmp_path / "r.mtx"), R)


def test_ck104_fixture_if_present():
    from pathlib import Path

    fixture = Path(__file__).parent / "data" / "ck104.mtx"
    if not fixture.exists():
        pytest.skip("CK104 no está disponible en tests/data")
    A = read_matrix_market(fixture)
    assert A.shape == (104, 104)
    assert not np.any(A.imag)
