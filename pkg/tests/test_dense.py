import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import spec
from nrmschur.dense import (
    EPS,
    BlockSchur,
    as_matrix,
    assemble_schur_matrix,
    frobenius_norm,
    hausdorff_distance,
    normality_defect,
    orthogonality_defect,
    read_matrix,
    relative_residual,
    schur_to_eigen,
    skew_part,
    sym_part,
    tol_orth,
    write_matrix,
)
from nrmschur.errors import NonFiniteError, ShapeError
from nrmschur.sampling import haar_orthogonal, random_normal_matrix

finite = st.floats(-1e6, 1e6, allow_nan=False)
square = st.integers(1, 8).flatmap(lambda n: arrays(np.float64, (n, n), elements=finite))


@pytest.mark.parametrize(
    "a, expected",
    [(np.zeros((3, 3)), 0.0), (np.eye(4), 2.0), (np.array([[3.0, 4.0], [0.0, 0.0]]), 5.0)],
)
def test_frobenius_norm(a, expected):
    assert frobenius_norm(a) == expected


def test_skew_part_of_symmetric_is_zero(rng):
    g = rng.standard_normal((5, 5))
    assert np.array_equal(skew_part(g + g.T), np.zeros((5, 5)))


def test_skew_part_example():
    np.testing.assert_array_equal(skew_part([[1.0, 2.0], [0.0, 1.0]]), [[0.0, 1.0], [-1.0, 0.0]])


def test_sym_skew_reconstruct(rng):
    a = rng.standard_normal((5, 5))
    assert np.abs(sym_part(a) + skew_part(a) - a).max() <= 2 * EPS * np.abs(a).max()


@given(square)
def test_parts_exactly_structured(a):
    s, k = sym_part(a), skew_part(a)
    assert np.array_equal(s, s.T)
    assert np.array_equal(k, -k.T)


def test_parts_reject_non_square():
    with pytest.raises(ShapeError):
        sym_part(np.zeros((2, 3)))


def test_normality_defect_examples(rng):
    assert normality_defect(haar_orthogonal(7, rng)) <= 64 * EPS
    # AA^T - A^TA = diag(1, -1) and ||A||_F^2 = 3
    assert normality_defect([[1.0, 1.0], [0.0, 1.0]]) == pytest.approx(np.sqrt(2) / 3, rel=1e-15)
    assert normality_defect(np.diag([1.0, 2.0, 3.0])) == 0.0


def test_tolerances():
    assert tol_orth(16) == pytest.approx(32 * EPS * 4)


def test_as_matrix_rejects_non_finite():
    with pytest.raises(NonFiniteError):
        as_matrix([[1.0, np.nan]])
    with pytest.raises(NonFiniteError):
        as_matrix([[np.inf, 0.0]])
    # large but finite entries whose sum overflows are fine
    as_matrix([[1e308, 1e308]])


def test_as_matrix_shape():
    with pytest.raises(ShapeError):
        as_matrix(np.zeros(3))
    with pytest.raises(ShapeError):
        as_matrix(np.zeros((2, 3)), square=True)


def _bs(lam, theta, lam_real, q=None):
    n = 2 * len(lam) + len(lam_real)
    return BlockSchur(np.eye(n) if q is None else q, np.array(lam, float), np.array(theta, float),
                      np.array(lam_real, float))


def test_assemble_examples():
    np.testing.assert_allclose(assemble_schur_matrix(_bs([1], [np.pi / 2], [])), [[0, -1], [1, 0]], atol=1e-16)
    np.testing.assert_array_equal(assemble_schur_matrix(_bs([], [], [2, -3])), np.diag([2.0, -3.0]))
    r3 = np.sqrt(3.0)
    expected = [[1, 0, -r3], [0, 5, 0], [r3, 0, 1]]
    np.testing.assert_allclose(assemble_schur_matrix(_bs([2], [np.pi / 3], [5])), expected, rtol=1e-15)


def test_schur_to_eigen_real():
    ed = schur_to_eigen(_bs([], [], [1, -1]))
    np.testing.assert_array_equal(ed.values, [1, -1])
    np.testing.assert_array_equal(ed.vectors, np.eye(2))


def test_schur_to_eigen_rotation():
    ed = schur_to_eigen(_bs([1], [np.pi / 2], []))
    np.testing.assert_allclose(ed.values, [1j, -1j], atol=1e-16)
    c = np.sqrt(0.5)
    # S v = i v for v = (e1 - i e2) / sqrt(2)
    np.testing.assert_allclose(ed.vectors, c * np.array([[1, 1], [-1j, 1j]]))


def test_schur_to_eigen_residual(rng):
    a, truth = random_normal_matrix(spec("random_normal", 6), rng)
    ed = schur_to_eigen(truth)
    res = np.linalg.norm(a @ ed.vectors - ed.vectors * ed.values)
    assert res <= 1e-12 * frobenius_norm(a)
    vals = np.sort_complex(ed.values)
    np.testing.assert_allclose(vals, np.sort_complex(np.conj(ed.values)))


@pytest.mark.parametrize("n", [5, 40, 200])
def test_reconstruction_of_ground_truth(n, rng):
    a, truth = random_normal_matrix(spec("random_normal", n), rng)
    assert relative_residual(a, truth.q, truth.schur_matrix()) <= 1e-12
    assert orthogonality_defect(truth.q) <= tol_orth(n)


def test_hausdorff():
    assert hausdorff_distance([1, 2], [2, 1]) == 0.0
    assert hausdorff_distance([0], [1j, -1j]) == 1.0
    assert hausdorff_distance([], []) == 0.0
    assert hausdorff_distance([1], []) == np.inf


def test_matrix_file_round_trip(tmp_path, rng):
    a = rng.standard_normal((4, 3))
    path = tmp_path / "a.txt"
    write_matrix(path, a)
    assert path.read_text().splitlines()[0] == "4 3"
    np.testing.assert_array_equal(read_matrix(path), a)
