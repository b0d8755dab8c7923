"""Band-limited Laurent series on the unit circle.

A :class:`LaurentSeries` stores the coefficients ``c[n]`` of
``sum_n c[n] * exp(i n theta)`` densely over an index band
``[n_min, n_max]``.  :class:`HardyCoeffs` is the one-sided special case
``n_min == 0`` used for truncated elements of H^2.

Grid transforms go through the FFT.  Evaluating on a grid is always exact
(aliasing only folds coefficients onto the same grid values), but
recovering coefficients is only well defined when the grid has at least as
many points as the band is wide; :func:`coeffs_from_grid` raises
:class:`~hardy_toeplitz.errors.BandTooWide` instead of silently wrapping.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BandTooWide

DEFAULT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class LaurentSeries:
    """Finite bilateral coefficient table.

    Parameters
    ----------
    coeffs : array_like of complex
        Coefficients for indices ``n_min, n_min + 1, ..., n_max``.
    n_min : int
        Index of ``coeffs[0]``.
    """

    coeffs: np.ndarray
    n_min: int = 0

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex, ndmin=1)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficient table must be a non-empty 1-D array")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "n_min", int(self.n_min))

    @classmethod
    def from_dict(cls, mapping):
        """Build a series from ``{index: coefficient}``; gaps are zero."""
        if not mapping:
            return cls([0.0])
        lo, hi = min(mapping), max(mapping)
        c = np.zeros(hi - lo + 1, dtype=complex)
        for n, v in mapping.items():
            c[n - lo] = v
        return cls(c, lo)

    @classmethod
    def monomial(cls, n, value=1.0):
        return cls([value], n)

    @property
    def n_max(self) -> int:
        return self.n_min + self.coeffs.size - 1

    @property
    def band(self) -> tuple[int, int]:
        return self.n_min, self.n_max

    @property
    def width(self) -> int:
        return self.coeffs.size

    def __getitem__(self, n):
        """Coefficient at index ``n`` (zero outside the band).

        ``n`` may be an integer array, in which case an array is returned.
        """
        idx = np.asarray(n) - self.n_min
        inside = (idx >= 0) & (idx < self.width)
        if idx.ndim == 0:
            return self.coeffs[int(idx)] if inside else 0j
        out = np.zeros(idx.shape, dtype=complex)
        out[inside] = self.coeffs[idx[inside]]
        return out

    def restrict(self, n_min, n_max):
        """Re-band to ``[n_min, n_max]``, dropping or zero-padding as needed."""
        if n_max < n_min:
            raise ValueError(f"empty band [{n_min}, {n_max}]")
        return LaurentSeries(self[np.arange(n_min, n_max + 1)], n_min)

    def trim(self, tol=0.0):
        """Drop edge coefficients with modulus <= tol (keeps at least one)."""
        big = np.flatnonzero(np.abs(self.coeffs) > tol)
        if big.size == 0:
            return LaurentSeries([0.0], max(self.n_min, min(0, self.n_max)))
        return LaurentSeries(self.coeffs[big[0]:big[-1] + 1], self.n_min + big[0])

    def reflect(self):
        """Coefficient map n -> -n, i.e. theta -> -theta."""
        return LaurentSeries(self.coeffs[::-1], -self.n_max)

    def conj_reflect(self):
        """Series of the pointwise conjugate: coefficient k is conj(c[-k])."""
        return LaurentSeries(np.conj(self.coeffs[::-1]), -self.n_max)

    def to_dict(self, tol=0.0):
        return {self.n_min + i: complex(v) for i, v in enumerate(self.coeffs)
                if abs(v) > tol}

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def max_abs_diff(self, other) -> float:
        """Max coefficient deviation over the union of both bands."""
        lo = min(self.n_min, other.n_min)
        hi = max(self.n_max, other.n_max)
        n = np.arange(lo, hi + 1)
        return float(np.max(np.abs(self[n] - other[n])))

    def allclose(self, other, atol=DEFAULT_TOL) -> bool:
        return self.max_abs_diff(other) <= atol

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries([other])
        lo = min(self.n_min, other.n_min)
        hi = max(self.n_max, other.n_max)
        n = np.arange(lo, hi + 1)
        return _same_kind(self, other)(self[n] + other[n], lo)

    def __neg__(self):
        return type(self)(-self.coeffs, self.n_min)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            return multiply(self, other)
        return type(self)(self.coeffs * other, self.n_min)

    __rmul__ = __mul__

    def __repr__(self):
        return f"{type(self).__name__}(band=[{self.n_min}, {self.n_max}], coeffs={self.coeffs!r})"


class HardyCoeffs(LaurentSeries):
    """One-sided coefficient table ``f = sum_{n>=0} coeffs[n] z**n``."""

    def __init__(self, coeffs, n_min=0):
        super().__init__(coeffs, n_min)

    def __post_init__(self):
        super().__post_init__()
        if self.n_min != 0:
            raise ValueError("HardyCoeffs must start at index 0")

    @classmethod
    def from_dict(cls, mapping):
        if any(n < 0 for n in mapping):
            raise ValueError("HardyCoeffs cannot hold negative indices")
        return cls(LaurentSeries.from_dict({0: 0, **mapping}).coeffs)

    @classmethod
    def monomial(cls, n, value=1.0):
        c = np.zeros(n + 1, dtype=complex)
        c[n] = value
        return cls(c)

    @property
    def degree(self) -> int:
        """Index of the highest nonzero coefficient (0 for the zero series)."""
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    def shift(self, k=1):
        """Multiply by ``z**k``."""
        return HardyCoeffs(np.concatenate([np.zeros(k, dtype=complex), self.coeffs]))

    def coshift(self):
        """Backward shift S*: drop the constant term and move down one index."""
        if self.width == 1:
            return HardyCoeffs([0.0])
        return HardyCoeffs(self.coeffs[1:])

    def padded(self, N):
        """Coefficient vector of length N (raises if nonzero entries would be cut)."""
        if self.width > N:
            if np.any(self.coeffs[N:] != 0):
                raise ValueError(f"degree {self.degree} does not fit in dimension {N}")
            return np.array(self.coeffs[:N])
        out = np.zeros(N, dtype=complex)
        out[:self.width] = self.coeffs
        return out


def _same_kind(a, b):
    if isinstance(a, HardyCoeffs) and isinstance(b, HardyCoeffs):
        return HardyCoeffs
    return LaurentSeries


def as_hardy(f) -> HardyCoeffs:
    """Coerce an array, dict or nonnegative-band series to :class:`HardyCoeffs`."""
    if isinstance(f, HardyCoeffs):
        return f
    if isinstance(f, LaurentSeries):
        if f.n_min < 0 and np.any(f.coeffs[:min(-f.n_min, f.width)] != 0):
            raise ValueError("series has nonzero negative-index coefficients")
        return HardyCoeffs(f.restrict(0, max(f.n_max, 0)).coeffs)
    if isinstance(f, dict):
        return HardyCoeffs.from_dict(f)
    return HardyCoeffs(f)


@dataclass(frozen=True)
class CircleGrid:
    """Uniform grid ``theta_j = 2 pi j / M`` on the circle."""

    M: int

    def __post_init__(self):
        if int(self.M) < 1:
            raise ValueError("grid needs at least one point")
        object.__setattr__(self, "M", int(self.M))

    @property
    def points(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.M) / self.M

    @property
    def z(self) -> np.ndarray:
        return np.exp(1j * self.points)

    def resolves(self, width) -> bool:
        return self.M >= width


def evaluate_on_grid(s: LaurentSeries, g: CircleGrid) -> np.ndarray:
    """Values ``sum_n c[n] exp(i n theta_j)`` at every grid point."""
    folded = np.zeros(g.M, dtype=complex)
    np.add.at(folded, np.arange(s.n_min, s.n_max + 1) % g.M, s.coeffs)
    return np.fft.ifft(folded) * g.M


def coeffs_from_grid(values, n_min: int, n_max: int, g: CircleGrid) -> LaurentSeries:
    """Discrete inverse of :func:`evaluate_on_grid` on the band ``[n_min, n_max]``.

    Raises
    ------
    BandTooWide
        If the grid has fewer points than the band has indices.
    """
    values = np.asarray(values, dtype=complex)
    if values.shape != (g.M,):
        raise ValueError(f"expected {g.M} grid values, got shape {values.shape}")
    width = n_max - n_min + 1
    if width < 1:
        raise ValueError(f"empty band [{n_min}, {n_max}]")
    if width > g.M:
        raise BandTooWide(f"band [{n_min}, {n_max}] needs M >= {width}, grid has M = {g.M}")
    c = np.fft.fft(values) / g.M
    return LaurentSeries(c[np.arange(n_min, n_max + 1) % g.M], n_min)


def evaluate_at(s: LaurentSeries, z) -> np.ndarray:
    """Evaluate ``sum_n c[n] z**n`` at arbitrary nonzero complex points."""
    z = np.asarray(z, dtype=complex)
    vals = np.polyval(s.coeffs[::-1], z)
    if s.n_min:
        vals = vals * z ** s.n_min
    return vals


def multiply(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Cauchy product; the result band is the sum of the input bands."""
    return _same_kind(a, b)(np.convolve(a.coeffs, b.coeffs), a.n_min + b.n_min)


def inner_product(a: LaurentSeries, b: LaurentSeries) -> complex:
    """``sum_n a[n] * conj(b[n])`` over the indices both tables cover."""
    lo = max(a.n_min, b.n_min)
    hi = min(a.n_max, b.n_max)
    if hi < lo:
        return 0j
    n = np.arange(lo, hi + 1)
    return complex(np.sum(a[n] * np.conj(b[n])))


def riesz_project(s: LaurentSeries) -> HardyCoeffs:
    """Drop every coefficient with negative index."""
    if s.n_max < 0:
        return HardyCoeffs([0.0])
    return HardyCoeffs(s[np.arange(0, s.n_max + 1)])


def grid_l2_norm(values) -> float:
    """Discrete L^2 norm ``sqrt(mean |v|^2)``; equals the coefficient norm
    for series the grid resolves."""
    values = np.asarray(values)
    return float(np.sqrt(np.mean(np.abs(values) ** 2)))
