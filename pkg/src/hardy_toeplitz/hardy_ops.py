"""Finite compressions of operators on H^2.

A :class:`TruncatedOperator` holds the N x N matrix ``A[m, n] = <T z^n, z^m>``.
Compressions of an infinite matrix to the first N basis vectors are exact
entry by entry, so nothing here is an approximation of those entries.
What a truncation loses is everything outside the window.  The optional
``exact_band = (lo, hi)`` records what is known about the *infinite*
matrix: ``A[m, n] == 0`` unless ``lo <= m - n <= hi``.  ``None`` on either
side means unbounded or unknown.  Consumers use it to decide whether a
truncated computation is complete.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

import numpy as np
from scipy.signal import lfilter

from .circle_fourier import (CircleGrid, HardyCoeffs, LaurentSeries, as_hardy,
                             evaluate_on_grid)
from .errors import DenominatorVanishes, DimensionTooSmall, TableTooShort

Band = tuple[Optional[int], Optional[int]]


@dataclass(frozen=True, eq=False)
class TruncatedOperator:
    entries: np.ndarray
    exact_band: Optional[Band] = None
    label: str = ""

    def __post_init__(self):
        A = np.array(self.entries, dtype=complex, ndmin=2)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
            raise ValueError(f"entries must be a non-empty square matrix, got {A.shape}")
        A.setflags(write=False)
        object.__setattr__(self, "entries", A)
        if self.exact_band is not None:
            lo, hi = self.exact_band
            object.__setattr__(self, "exact_band", (
                None if lo is None else int(lo), None if hi is None else int(hi)))

    @property
    def N(self) -> int:
        return self.entries.shape[0]

    def __repr__(self):
        name = f" {self.label!r}" if self.label else ""
        return f"TruncatedOperator{name}(N={self.N}, exact_band={self.exact_band})"


def toeplitz_from_symbol(phi: LaurentSeries, N: int) -> TruncatedOperator:
    """Compression of ``P M_phi`` to ``span{1, z, ..., z^(N-1)}``.

    ``A[m, n] = phi_hat(m - n)``, zero where ``m - n`` falls outside the
    symbol's band.
    """
    k = np.subtract.outer(np.arange(N), np.arange(N))
    return TruncatedOperator(phi[k], exact_band=phi.band, label="toeplitz")


def gamma_upper_triangular(gamma, N: int) -> TruncatedOperator:
    """Upper triangular Toeplitz compression ``A[m, j] = gamma[j - m]`` for ``j >= m``."""
    gamma = np.asarray(gamma, dtype=complex)
    if gamma.size < N:
        raise TableTooShort(f"gamma table has {gamma.size} entries, need {N}")
    k = np.subtract.outer(np.arange(N), np.arange(N))
    A = np.where(k <= 0, gamma[np.clip(-k, 0, N - 1)], 0)
    # Lower edge of the infinite matrix is unknown from a finite table.
    return TruncatedOperator(A, exact_band=(None, 0), label="gamma")


def apply(T: TruncatedOperator, v) -> HardyCoeffs:
    """Matrix-vector product; ``v`` is zero-padded up to N."""
    v = as_hardy(v).padded(T.N)
    return HardyCoeffs(T.entries @ v)


def shift_compress(T: TruncatedOperator) -> TruncatedOperator:
    """``S* T S`` at truncation: ``B[m, n] = A[m + 1, n + 1]``, size N - 1."""
    if T.N < 2:
        raise DimensionTooSmall("shift compression needs N >= 2")
    return TruncatedOperator(T.entries[1:, 1:], exact_band=T.exact_band, label=T.label)


class ToeplitzCheck(NamedTuple):
    is_toeplitz: bool
    deviation: float
    # (m, n) such that |A[m+1, n+1] - A[m, n]| is maximal
    location: tuple[int, int]


def is_toeplitz_algebraic(T: TruncatedOperator, tol: float = 1e-10) -> ToeplitzCheck:
    """Test ``S* T S = T`` on the overlap of the two windows."""
    if T.N < 2:
        raise DimensionTooSmall("Toeplitz test needs N >= 2")
    A = T.entries
    diff = np.abs(A[1:, 1:] - A[:-1, :-1])
    m, n = np.unravel_index(int(np.argmax(diff)), diff.shape)
    dev = float(diff[m, n])
    return ToeplitzCheck(dev <= tol, dev, (int(m), int(n)))


def diagonal_symbol_recovery(T: TruncatedOperator, margin: int = 0) -> LaurentSeries:
    """Mean along each diagonal, skipping the first ``margin`` rows and columns.

    Returns coefficients on ``[-(N-1-margin), N-1-margin]``; diagonal ``k``
    collects ``A[m + k, m]``.  For a Toeplitz matrix this is exact.
    """
    N = T.N
    if not 0 <= margin < N / 2:
        raise ValueError(f"margin must satisfy 0 <= margin < N/2, got {margin}")
    A = T.entries
    width = N - 1 - margin
    out = np.empty(2 * width + 1, dtype=complex)
    for i, k in enumerate(range(-width, width + 1)):
        # d[j] is A[j+k, j] for k >= 0 and A[j, j-k] for k < 0; in both
        # cases the smaller of row/column index is j
        d = np.diagonal(A, offset=-k)[margin:]
        # anchored mean: exact when the diagonal is constant
        out[i] = d[0] + np.mean(d - d[0])
    return LaurentSeries(out, -width)


def adjoint(T: TruncatedOperator) -> TruncatedOperator:
    band = None
    if T.exact_band is not None:
        lo, hi = T.exact_band
        band = (None if hi is None else -hi, None if lo is None else -lo)
    return TruncatedOperator(T.entries.conj().T, exact_band=band, label=T.label)


def frobenius_distance(S: TruncatedOperator, T: TruncatedOperator) -> float:
    return float(np.linalg.norm(S.entries - T.entries))


# -- symbol specifications ---------------------------------------------------

@dataclass(frozen=True)
class TrigPolynomial:
    symbol: LaurentSeries


@dataclass(frozen=True)
class SmirnovRatio:
    """Analytic symbol ``b / a`` with ``a`` outer (checked only as
    nonvanishing on a validation grid)."""

    numerator: HardyCoeffs
    denominator: HardyCoeffs
    validation_M: int = 1024
    eps_zero: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, "numerator", as_hardy(self.numerator))
        object.__setattr__(self, "denominator", as_hardy(self.denominator))
        grid = CircleGrid(self.validation_M)
        amin = float(np.min(np.abs(evaluate_on_grid(self.denominator, grid))))
        if amin <= self.eps_zero:
            raise DenominatorVanishes(
                f"|a| drops to {amin:.3g} on the {self.validation_M}-point grid")
        if self.denominator.coeffs[0] == 0:
            raise DenominatorVanishes("a(0) = 0, so a is not outer")

    @property
    def unit_norm(self) -> bool:
        """True when ``|a|^2 + |b|^2 = 1`` on the validation grid to 1e-8."""
        return canonical_deviation(self.numerator, self.denominator,
                                   CircleGrid(self.validation_M)) < 1e-8

    def taylor(self, n: int) -> np.ndarray:
        """First ``n`` Taylor coefficients of ``b / a`` (power series division)."""
        impulse = np.zeros(n, dtype=complex)
        impulse[0] = 1.0
        return lfilter(self.numerator.coeffs, self.denominator.coeffs, impulse)


@dataclass(frozen=True)
class GammaUpperTriangular:
    gamma: tuple


SymbolSpec = Union[TrigPolynomial, SmirnovRatio, GammaUpperTriangular]


def canonical_deviation(b: HardyCoeffs, a: HardyCoeffs, grid: CircleGrid) -> float:
    """``max | |a|^2 + |b|^2 - 1 |`` over the grid."""
    av = evaluate_on_grid(a, grid)
    bv = evaluate_on_grid(b, grid)
    return float(np.max(np.abs(np.abs(av) ** 2 + np.abs(bv) ** 2 - 1.0)))


def realize(spec: SymbolSpec, N: int) -> TruncatedOperator:
    """Build the N x N compression for any symbol variant."""
    if isinstance(spec, TrigPolynomial):
        return toeplitz_from_symbol(spec.symbol, N)
    if isinstance(spec, SmirnovRatio):
        T = toeplitz_from_symbol(LaurentSeries(spec.taylor(N)), N)
        return TruncatedOperator(T.entries, exact_band=(0, None), label="smirnov")
    if isinstance(spec, GammaUpperTriangular):
        return gamma_upper_triangular(spec.gamma, N)
    raise TypeError(f"unknown symbol spec {spec!r}")
