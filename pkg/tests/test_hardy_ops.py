import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import complexes, hardy_series, laurent_series, random_symbol
from hardy_toeplitz.circle_fourier import (CircleGrid, HardyCoeffs, LaurentSeries,
                                           coeffs_from_grid, evaluate_on_grid, inner_product,
                                           riesz_project)
from hardy_toeplitz.errors import DenominatorVanishes, DimensionTooSmall, TableTooShort
from hardy_toeplitz.hardy_ops import (GammaUpperTriangular, SmirnovRatio, TrigPolynomial,
                                      TruncatedOperator, adjoint, apply,
                                      diagonal_symbol_recovery, frobenius_distance,
                                      gamma_upper_triangular, is_toeplitz_algebraic, realize,
                                      shift_compress, toeplitz_from_symbol)


def entry_oracle(phi, N):
    """A[m, n] = <P(phi z^n), z^m> computed on a grid, one column at a time."""
    M = 4 * (N + phi.width) + 1
    g = CircleGrid(M)
    pv = evaluate_on_grid(phi, g)
    A = np.zeros((N, N), dtype=complex)
    for n in range(N):
        col = coeffs_from_grid(pv * g.z ** n, phi.n_min + n, phi.n_max + n, g)
        proj = riesz_project(col)
        for m in range(N):
            A[m, n] = inner_product(proj, HardyCoeffs.monomial(m))
    return A


# -- constructors ---------------------------------------------------------------

def test_symbol_one_is_identity():
    T = toeplitz_from_symbol(LaurentSeries([1.0]), 5)
    np.testing.assert_array_equal(T.entries, np.eye(5))
    assert T.exact_band == (0, 0)


def test_symbol_z_is_the_shift():
    T = toeplitz_from_symbol(LaurentSeries.from_dict({1: 1}), 5)
    np.testing.assert_array_equal(T.entries, np.eye(5, k=-1))


def test_zbar_plus_z_matches_grid_oracle():
    phi = LaurentSeries.from_dict({-1: 1, 1: 1})
    T = toeplitz_from_symbol(phi, 6)
    np.testing.assert_allclose(T.entries, entry_oracle(phi, 6), atol=1e-12)
    np.testing.assert_array_equal(T.entries, np.eye(6, k=1) + np.eye(6, k=-1))


def test_random_symbol_matches_grid_oracle(rng):
    phi = random_symbol(rng, 4)
    np.testing.assert_allclose(toeplitz_from_symbol(phi, 9).entries, entry_oracle(phi, 9),
                               atol=1e-12)


@given(laurent_series(max_width=7, n_min_range=(-4, 2)), st.integers(2, 12))
def test_entries_vanish_outside_symbol_band(phi, N):
    T = toeplitz_from_symbol(phi, N)
    k = np.subtract.outer(np.arange(N), np.arange(N))
    outside = (k < phi.n_min) | (k > phi.n_max)
    assert np.all(T.entries[outside] == 0)


def test_gamma_unit_table_is_identity():
    T = gamma_upper_triangular([1, 0, 0, 0], 4)
    np.testing.assert_array_equal(T.entries, np.eye(4))


def test_gamma_factorial_rows():
    T = gamma_upper_triangular([math.factorial(n) for n in range(4)], 4)
    expected = [[1, 1, 2, 6], [0, 1, 1, 2], [0, 0, 1, 1], [0, 0, 0, 1]]
    np.testing.assert_array_equal(T.entries, expected)


def test_gamma_delta1_is_superdiagonal():
    T = gamma_upper_triangular([0, 1, 0, 0, 0], 5)
    np.testing.assert_array_equal(T.entries, np.eye(5, k=1))


def test_gamma_table_too_short():
    with pytest.raises(TableTooShort):
        gamma_upper_triangular([1, 1], 3)


@given(st.lists(complexes, min_size=1, max_size=6), st.integers(1, 8))
def test_gamma_equals_toeplitz_of_reflected_symbol(gamma, N):
    # A[m, j] = gamma_(j - m) puts gamma_n on diagonal m - n = -n
    table = list(gamma) + [0] * max(0, N - len(gamma))
    phi = LaurentSeries(gamma)
    G = gamma_upper_triangular(table, N)
    np.testing.assert_array_equal(G.entries, toeplitz_from_symbol(phi.reflect(), N).entries)


# -- apply ------------------------------------------------------------------------------

def test_apply_examples():
    ident = toeplitz_from_symbol(LaurentSeries([1.0]), 4)
    v = HardyCoeffs([1, 2j, 3])
    np.testing.assert_array_equal(apply(ident, v).coeffs, [1, 2j, 3, 0])
    S = toeplitz_from_symbol(LaurentSeries.from_dict({1: 1}), 4)
    assert apply(S, HardyCoeffs([1])).to_dict() == {1: 1}
    F = gamma_upper_triangular([1, 1, 2, 6], 4)
    assert apply(F, HardyCoeffs([0, 1])).to_dict() == {0: 1, 1: 1}


def test_apply_rejects_too_long_vector():
    T = toeplitz_from_symbol(LaurentSeries([1.0]), 3)
    with pytest.raises(ValueError):
        apply(T, HardyCoeffs([0, 0, 0, 1]))


@given(hardy_series(), hardy_series(), complexes, complexes)
def test_apply_is_linear(u, v, alpha, beta):
    rng = np.random.default_rng(abs(hash((u.width, v.width))) % 2 ** 32)
    T = TruncatedOperator(rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8)))
    lhs = apply(T, alpha * u + beta * v).coeffs
    rhs = alpha * apply(T, u).coeffs + beta * apply(T, v).coeffs
    np.testing.assert_allclose(lhs, rhs, atol=1e-12 * (1 + np.abs(rhs).max()) * 10)


# -- shift compression and the Toeplitz test ------------------------------------------------

def test_shift_compress_examples(rng):
    phi = random_symbol(rng)
    T = toeplitz_from_symbol(phi, 10)
    np.testing.assert_array_equal(shift_compress(T).entries, T.entries[:-1, :-1])
    D = TruncatedOperator(np.diag([1.0, 0, 0, 0]))
    np.testing.assert_array_equal(shift_compress(D).entries, np.zeros((3, 3)))
    R = TruncatedOperator(rng.standard_normal((5, 5)))
    assert shift_compress(R).entries[0, 0] == R.entries[1, 1]
    with pytest.raises(DimensionTooSmall):
        shift_compress(TruncatedOperator([[1.0]]))


def test_shift_compress_keeps_band():
    T = toeplitz_from_symbol(LaurentSeries([1, 2, 3], -1), 5)
    assert shift_compress(T).exact_band == (-1, 1)


@given(laurent_series(max_width=9, n_min_range=(-5, 3)), st.integers(2, 14))
def test_toeplitz_invariants(phi, N):
    T = toeplitz_from_symbol(phi, N)
    check = is_toeplitz_algebraic(T)
    assert check.is_toeplitz and check.deviation == 0
    np.testing.assert_array_equal(shift_compress(T).entries,
                                  toeplitz_from_symbol(phi, N - 1).entries)


def test_diag_one_is_not_toeplitz():
    check = is_toeplitz_algebraic(TruncatedOperator(np.diag([1.0, 0, 0, 0])))
    assert not check.is_toeplitz
    assert check.deviation == 1.0 and check.location == (0, 0)


def test_small_perturbation_is_located():
    A = toeplitz_from_symbol(LaurentSeries([0.5, 1, 0.25], -1), 8).entries.copy()
    A[2, 3] += 1e-6
    check = is_toeplitz_algebraic(TruncatedOperator(A), tol=1e-8)
    assert not check.is_toeplitz
    assert check.deviation == pytest.approx(1e-6, rel=1e-9)
    # the bad entry shows up both as A[2,3]-A[1,2] and as A[3,4]-A[2,3]
    assert check.location in ((1, 2), (2, 3))


# -- diagonal recovery --------------------------------------------------------------------------

@given(laurent_series(max_width=7, n_min_range=(-4, 2)), st.integers(4, 12), st.data())
def test_recovery_is_exact_for_toeplitz(phi, N, data):
    margin = data.draw(st.integers(0, (N - 1) // 2))
    rec = diagonal_symbol_recovery(toeplitz_from_symbol(phi, N), margin)
    w = N - 1 - margin
    assert rec.band == (-w, w)
    n = np.arange(-w, w + 1)
    np.testing.assert_array_equal(rec[n], phi[n])


def test_recovery_examples():
    rec = diagonal_symbol_recovery(toeplitz_from_symbol(LaurentSeries([1.0]), 6))
    assert rec.trim().to_dict() == {0: 1}
    rec = diagonal_symbol_recovery(TruncatedOperator(np.diag([1.0] + [0] * 7)), 0)
    assert rec[0] == pytest.approx(1 / 8)
    with pytest.raises(ValueError):
        diagonal_symbol_recovery(TruncatedOperator(np.eye(6)), 3)


# -- adjoint -----------------------------------------------------------------------------------

def test_adjoint_of_shift_is_coshift():
    S = toeplitz_from_symbol(LaurentSeries.from_dict({1: 1}), 5)
    np.testing.assert_array_equal(adjoint(S).entries, np.eye(5, k=1))
    assert adjoint(S).exact_band == (-1, -1)


@given(laurent_series(max_width=7, n_min_range=(-4, 2)), st.integers(1, 10))
def test_adjoint_is_toeplitz_of_conj_reflected_symbol(phi, N):
    T = toeplitz_from_symbol(phi, N)
    np.testing.assert_array_equal(adjoint(T).entries,
                                  toeplitz_from_symbol(phi.conj_reflect(), N).entries)
    assert frobenius_distance(adjoint(adjoint(T)), T) == 0


def test_adjoint_reflects_open_band():
    T = TruncatedOperator(np.eye(3), exact_band=(0, None))
    assert adjoint(T).exact_band == (None, 0)


# -- symbol variants ------------------------------------------------------------------------------

def test_realize_trig_and_gamma():
    phi = LaurentSeries([1, 2], 0)
    np.testing.assert_array_equal(realize(TrigPolynomial(phi), 4).entries,
                                  toeplitz_from_symbol(phi, 4).entries)
    G = realize(GammaUpperTriangular((1, 1, 2, 6)), 4)
    assert G.entries[0, 3] == 6


def test_smirnov_taylor_matches_geometric_series():
    # 1 / (1 - z/2) = sum 2^-n z^n
    spec = SmirnovRatio(HardyCoeffs([1.0]), HardyCoeffs([1.0, -0.5]))
    np.testing.assert_allclose(spec.taylor(20), 0.5 ** np.arange(20), rtol=1e-15)
    T = realize(spec, 6)
    assert T.exact_band == (0, None)
    assert is_toeplitz_algebraic(T).is_toeplitz


def test_smirnov_unit_norm_flag():
    c = math.sqrt(0.4)
    assert SmirnovRatio(HardyCoeffs([c, c / 2]), HardyCoeffs([c, -c / 2])).unit_norm
    assert not SmirnovRatio(HardyCoeffs([1.0]), HardyCoeffs([2.0])).unit_norm


def test_smirnov_denominator_must_not_vanish():
    with pytest.raises(DenominatorVanishes):
        SmirnovRatio(HardyCoeffs([1.0]), HardyCoeffs([0.5, 0.5]))
    with pytest.raises(DenominatorVanishes):
        SmirnovRatio(HardyCoeffs([1.0]), HardyCoeffs([0.0, 1.0]))
