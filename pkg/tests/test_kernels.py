import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import jacobi_eigenvalues, jacobi_singular_values, spec
from nrmschur import normal_schur
from nrmschur.dense import frobenius_norm, hausdorff_distance, orthogonality_defect
from nrmschur.errors import NotSymmetricError
from nrmschur.kernels import ENV_VAR, NATIVE, REFERENCE, Bidiagonal, get_provider
from nrmschur.sampling import random_normal_matrix

PROVIDERS = [REFERENCE, NATIVE]
ids = [kp.name for kp in PROVIDERS]


def _svd_residual(b, u, s, v):
    return frobenius_norm(b.dense() - (u * s) @ v.T)


def test_get_provider(monkeypatch):
    assert get_provider("reference") is REFERENCE
    assert get_provider(NATIVE) is NATIVE
    monkeypatch.delenv(ENV_VAR, raising=False)
    assert get_provider() is NATIVE
    monkeypatch.setenv(ENV_VAR, "reference")
    assert get_provider() is REFERENCE
    with pytest.raises(ValueError, match="unknown kernel provider"):
        get_provider("mkl")


def test_bidiagonal_validates_lengths():
    with pytest.raises(ValueError):
        Bidiagonal([1.0, 2.0], [1.0, 2.0])


@pytest.mark.parametrize("kp", PROVIDERS, ids=ids)
class TestBidiagonalSVD:
    def test_one_by_one(self, kp):
        for d in (3.0, -3.0):
            u, s, v = kp.bidiagonal_svd(Bidiagonal([d], []))
            assert s[0] == 3.0
            assert u[0, 0] * s[0] * v[0, 0] == d

    def test_zero(self, kp):
        b = Bidiagonal([0.0, 0.0], [0.0])
        u, s, v = kp.bidiagonal_svd(b)
        np.testing.assert_array_equal(s, [0.0, 0.0])
        assert orthogonality_defect(u) < 1e-15 and orthogonality_defect(v) < 1e-15

    def test_golden_ratio(self, kp):
        # B^T B has characteristic polynomial x^2 - 3x + 1
        u, s, v = kp.bidiagonal_svd(Bidiagonal([1.0, 1.0], [1.0]))
        expected = np.sqrt([(3 + np.sqrt(5)) / 2, (3 - np.sqrt(5)) / 2])
        np.testing.assert_allclose(s, expected, rtol=1e-15)

    @pytest.mark.parametrize("p", [3, 17, 50])
    def test_against_jacobi(self, kp, p, rng):
        b = Bidiagonal(rng.standard_normal(p), rng.standard_normal(p - 1))
        u, s, v = kp.bidiagonal_svd(b)
        np.testing.assert_allclose(s, jacobi_singular_values(b.dense()), rtol=1e-12, atol=1e-12 * s[0])
        assert _svd_residual(b, u, s, v) <= 1e-13 * frobenius_norm(b.dense())
        assert np.all(np.diff(s) <= 0)

    def test_tiny_entries(self, kp, rng):
        # graded bidiagonal with many negligible entries
        p = 200
        d = rng.standard_normal(p) * 10.0 ** rng.integers(-20, 1, p)
        e = rng.standard_normal(p - 1) * 10.0 ** rng.integers(-20, 1, p - 1)
        b = Bidiagonal(d, e)
        u, s, v = kp.bidiagonal_svd(b)
        assert _svd_residual(b, u, s, v) <= 1e-13 * frobenius_norm(b.dense())
        assert max(orthogonality_defect(u), orthogonality_defect(v)) <= 1e-13


@pytest.mark.parametrize("kp", PROVIDERS, ids=ids)
class TestSymmetricEVD:
    def test_diagonal(self, kp):
        r, lam = kp.symmetric_evd(np.diag([1.0, 5.0]))
        np.testing.assert_array_equal(lam, [5.0, 1.0])
        np.testing.assert_array_equal(np.abs(r), [[0, 1], [1, 0]])

    def test_swap(self, kp):
        r, lam = kp.symmetric_evd(np.array([[0.0, 1.0], [1.0, 0.0]]))
        np.testing.assert_allclose(lam, [1.0, -1.0], rtol=1e-15)
        c = np.sqrt(0.5)
        np.testing.assert_allclose(np.abs(r), [[c, c], [c, c]], rtol=1e-15)
        assert np.sign(r[0, 0]) == np.sign(r[1, 0])
        assert np.sign(r[0, 1]) != np.sign(r[1, 1])

    def test_against_jacobi(self, kp, rng):
        g = rng.standard_normal((8, 8))
        h = g + g.T
        r, lam = kp.symmetric_evd(h)
        assert frobenius_norm(h @ r - r * lam) <= 1e-13 * frobenius_norm(h)
        np.testing.assert_allclose(lam, jacobi_eigenvalues(h), rtol=0, atol=1e-12 * np.abs(lam).max())

    def test_rejects_asymmetric(self, kp):
        with pytest.raises(NotSymmetricError):
            kp.symmetric_evd(np.array([[1.0, 2.0], [0.0, 1.0]]))


@pytest.mark.parametrize("kp", PROVIDERS, ids=ids)
class TestGeneralSchur:
    def test_upper_triangular(self, kp):
        a = np.triu(np.arange(1.0, 10.0).reshape(3, 3))
        q, s = kp.general_real_schur(a)
        np.testing.assert_allclose(np.abs(q), np.eye(3), atol=1e-15)
        np.testing.assert_allclose(np.abs(s), np.abs(a), atol=1e-14)

    def test_rotation(self, kp):
        q, s = kp.general_real_schur(np.array([[0.0, -1.0], [1.0, 0.0]]))
        assert s[1, 0] != 0.0
        np.testing.assert_allclose(np.sort_complex(sla.eigvals(s)), [-1j, 1j], atol=1e-15)

    def test_normal_matrix_oracle(self, kp, rng):
        a, _ = random_normal_matrix(spec("random_normal", 10), rng)
        q, s = kp.general_real_schur(a)
        assert frobenius_norm(a @ q - q @ s) <= 1e-13 * frobenius_norm(a)
        assert np.abs(np.tril(s, -2)).max() == 0.0
        mine = normal_schur(a, kp).eigenvalues()
        assert hausdorff_distance(sla.eigvals(s), mine) <= 1e-10

    def test_hessenberg(self, kp, rng):
        a = rng.standard_normal((12, 12))
        h, q = kp.hessenberg(a)
        assert np.abs(np.tril(h, -2)).max() <= 1e-15 * frobenius_norm(a)
        assert frobenius_norm(q @ h @ q.T - a) <= 1e-13 * frobenius_norm(a)
        assert orthogonality_defect(q) <= 1e-14


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 100))
def test_providers_interchangeable(seed, n):
    rng = np.random.default_rng(seed)
    a, truth = random_normal_matrix(spec("uniform_so", n), rng)
    ref = normal_schur(a, REFERENCE).eigenvalues()
    nat = normal_schur(a, NATIVE).eigenvalues()
    assert hausdorff_distance(ref, nat) <= 1e-10
