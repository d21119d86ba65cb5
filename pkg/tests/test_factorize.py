"""Cholesky, inverse Grams, and the two eigenvalue routes."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import kernel_forge as kf


def random_psd(rng, n):
    a = rng.standard_normal((n, n))
    return a @ a.T


# ---------------------------------------------------------------------------
# cholesky


def test_cholesky_identity():
    f = kf.cholesky(np.eye(3))
    np.testing.assert_array_equal(f.L, np.eye(3))
    assert f.ridge_used == 0.0


def test_cholesky_brownian_1_3_4():
    g = kf.gram(kf.brownian_min(), [1.0, 3.0, 4.0])
    f = kf.cholesky(g)
    expected = np.array(
        [
            [1.0, 0.0, 0.0],
            [1.0, np.sqrt(2.0), 0.0],
            [1.0, np.sqrt(2.0), 1.0],
        ]
    )
    np.testing.assert_allclose(f.L, expected, rtol=1e-15)
    np.testing.assert_allclose(f.L @ f.L.T, g.entries, rtol=1e-15)


def test_cholesky_rejects_indefinite():
    with pytest.raises(kf.NotPositiveDefiniteError):
        kf.cholesky(np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_cholesky_ridge():
    g = np.array([[1.0, 1.0], [1.0, 1.0]])  # singular
    f = kf.cholesky(g, ridge=1e-8)
    assert f.ridge_used == 1e-8
    np.testing.assert_allclose(f.reconstruct(), g + 1e-8 * np.eye(2), rtol=1e-12)
    with pytest.raises(ValueError):
        kf.cholesky(g, ridge=-1.0)


def test_cholesky_complex_hermitian_embeds():
    # complex input factors through the real 2n x 2n block embedding
    from kernel_forge.factorize import real_embedding

    g = kf.gram(kf.szego(), [0.1 + 0.2j, -0.3j, 0.4])
    f = kf.cholesky(g)
    n = g.n
    assert f.L.shape == (2 * n, 2 * n)
    assert not np.iscomplexobj(f.L)
    np.testing.assert_allclose(f.L @ f.L.T, real_embedding(g.entries), atol=1e-14)
    rebuilt = (f.L @ f.L.T)[:n, :n] + 1j * (f.L @ f.L.T)[n:, :n]
    np.testing.assert_allclose(rebuilt, g.entries, atol=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=2**31))
def test_cholesky_reconstructs(n, seed):
    g = random_psd(np.random.default_rng(seed), n) + 1e-6 * np.eye(n)
    f = kf.cholesky(g)
    np.testing.assert_allclose(f.L @ f.L.T, g, atol=1e-10 * np.abs(g).max())
    assert np.all(np.triu(f.L, 1) == 0.0)


# ---------------------------------------------------------------------------
# closed-form brownian factor


def test_closed_form_singleton():
    np.testing.assert_array_equal(kf.brownian_cholesky_closed_form([1.0]).L, [[1.0]])


def test_closed_form_half_two():
    got = kf.brownian_cholesky_closed_form([0.5, 2.0]).L
    expected = np.array([[np.sqrt(0.5), 0.0], [np.sqrt(0.5), np.sqrt(1.5)]])
    np.testing.assert_allclose(got, expected, rtol=1e-15)
    # det(G) = x1 * (x2 - x1), read off the factor diagonal
    det = np.prod(np.diag(got)) ** 2
    assert det == pytest.approx(0.75, rel=1e-15)


def test_closed_form_requires_increasing_positive():
    with pytest.raises(kf.NotIncreasingError):
        kf.brownian_cholesky_closed_form([1.0, 1.0])
    with pytest.raises(kf.NotIncreasingError):
        kf.brownian_cholesky_closed_form([-1.0, 2.0])
    with pytest.raises(kf.NotIncreasingError):
        kf.brownian_cholesky_closed_form([2.0, 1.0])


def test_closed_form_matches_generic():
    rng = np.random.default_rng(5)
    for _ in range(25):
        n = int(rng.integers(1, 15))
        pts = np.sort(rng.uniform(0.05, 10.0, size=n))
        pts = np.unique(pts)
        closed = kf.brownian_cholesky_closed_form(pts).L
        generic = kf.cholesky(kf.gram(kf.brownian_min(), list(pts))).L
        np.testing.assert_allclose(closed, generic, atol=1e-12)


# ---------------------------------------------------------------------------
# inverse


def test_inverse_identity():
    np.testing.assert_array_equal(kf.inverse_gram(np.eye(4)), np.eye(4))


def test_inverse_shannon_integers():
    g = kf.gram(kf.shannon(), [0.0, 1.0, 2.0, 3.0, 4.0])
    np.testing.assert_allclose(kf.inverse_gram(g), np.eye(5), atol=1e-12)


def test_inverse_singular_raises():
    with pytest.raises(kf.SingularMatrixError):
        kf.inverse_gram(np.array([[1.0, 1.0], [1.0, 1.0]]))


def test_inverse_roundtrip_complex():
    g = kf.gram(kf.szego(), [0.2, 0.1 + 0.4j, -0.5j])
    inv = kf.inverse_gram(g)
    np.testing.assert_allclose(inv @ g.entries, np.eye(3), atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=10), st.integers(min_value=0, max_value=2**31))
def test_inverse_roundtrip(n, seed):
    g = random_psd(np.random.default_rng(seed), n) + 1e-3 * np.eye(n)
    inv = kf.inverse_gram(g)
    np.testing.assert_allclose(inv @ g, np.eye(n), atol=1e-8)


# ---------------------------------------------------------------------------
# eigenvalues: alternating-Cholesky route


def test_alt_eigs_diagonal_is_immediate():
    res = kf.alt_cholesky_eigs(np.diag([3.0, 1.0]))
    np.testing.assert_allclose(res.eigenvalues, [3.0, 1.0], rtol=1e-12)
    assert res.iterations <= 1
    assert res.converged


def test_alt_eigs_2x2():
    res = kf.alt_cholesky_eigs(np.array([[2.0, 1.0], [1.0, 2.0]]))
    np.testing.assert_allclose(res.eigenvalues, [3.0, 1.0], rtol=1e-10)
    assert res.converged


def test_alt_eigs_brownian_golden():
    # roots of t^2 - 3t + 1
    g = kf.gram(kf.brownian_min(), [1.0, 2.0])
    res = kf.alt_cholesky_eigs(g)
    expected = [(3.0 + np.sqrt(5.0)) / 2.0, (3.0 - np.sqrt(5.0)) / 2.0]
    np.testing.assert_allclose(res.eigenvalues, expected, rtol=1e-10)


def test_alt_eigs_trace_preserved():
    g = kf.gram(kf.brownian_min(), [1.0, 2.0, 3.0])
    res = kf.alt_cholesky_eigs(g, max_iter=50000)
    assert np.sum(res.eigenvalues) == pytest.approx(6.0, rel=1e-12)


def test_alt_eigs_rejects_indefinite():
    with pytest.raises(kf.NotPositiveDefiniteError):
        kf.alt_cholesky_eigs(np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_alt_eigs_reports_nonconvergence_honestly():
    # near-degenerate spectrum converges slowly; a tiny budget must be
    # reported as converged=False, never papered over
    g = np.array([[1.0, 0.999], [0.999, 1.0]])
    g = g @ g
    res = kf.alt_cholesky_eigs(g, max_iter=1)
    assert not res.converged


# ---------------------------------------------------------------------------
# eigenvalues: Jacobi route


def test_jacobi_diagonal():
    res = kf.jacobi_eigs(np.diag([5.0, 2.0, 1.0]))
    np.testing.assert_array_equal(res.eigenvalues, [5.0, 2.0, 1.0])
    assert res.converged


def test_jacobi_2x2():
    res = kf.jacobi_eigs(np.array([[2.0, 1.0], [1.0, 2.0]]))
    np.testing.assert_allclose(res.eigenvalues, [3.0, 1.0], rtol=1e-12)


def test_jacobi_complex_hermitian():
    g = kf.gram(kf.szego(), [0.1 + 0.2j, -0.3j, 0.4, 0.25 - 0.5j])
    res = kf.jacobi_eigs(g)
    expected = np.sort(np.linalg.eigvalsh(g.entries))[::-1]
    np.testing.assert_allclose(res.eigenvalues, expected, atol=1e-10)


def test_two_routes_agree():
    rng = np.random.default_rng(17)
    for _ in range(10):
        n = int(rng.integers(2, 12))
        g = random_psd(rng, n)
        a = kf.alt_cholesky_eigs(g, max_iter=200000).eigenvalues
        j = kf.jacobi_eigs(g).eigenvalues
        np.testing.assert_allclose(a, j, atol=1e-9 * max(1.0, np.abs(g).max()))


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=14), st.integers(min_value=0, max_value=2**31))
def test_jacobi_matches_lapack(n, seed):
    g = random_psd(np.random.default_rng(seed), n)
    res = kf.jacobi_eigs(g)
    expected = np.sort(np.linalg.eigvalsh(g))[::-1]
    np.testing.assert_allclose(res.eigenvalues, expected, atol=1e-9 * max(1.0, g.max()))
    assert list(res.eigenvalues) == sorted(res.eigenvalues, reverse=True)
