"""Reproducing kernels of H^2 and the Berezin transform at truncation.

The kernel ``k_w(z) = 1 / (1 - conj(w) z)`` has Taylor coefficients
``conj(w)**n``.  Truncating to N terms loses
``||k_w - k_w^N||^2 = |w|^(2N) / (1 - |w|^2)``.

The transform is computed in the direct form
``(1 - |w|^2) <T k_w, k_w>``.  By ``<T k, k> = conj(<T* k, k>) = <k, T* k>``
this equals ``(1 - |w|^2) <k_w, T* k_w>``, so there is one code path.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .circle_fourier import HardyCoeffs
from .errors import DiskViolation
from .hardy_ops import TruncatedOperator

DIAGNOSTIC_RADII = (0.5, 0.7, 0.9)


@dataclass(frozen=True, eq=False)
class KernelVector:
    w: complex
    N: int
    coeffs: np.ndarray

    @property
    def tail_norm_sq(self) -> float:
        """Squared norm of the discarded part of the kernel."""
        r2 = abs(self.w) ** 2
        return r2 ** self.N / (1.0 - r2)

    def as_hardy(self) -> HardyCoeffs:
        return HardyCoeffs(self.coeffs)


def _check_disk(w):
    if abs(w) >= 1:
        raise DiskViolation(f"|w| = {abs(w):.17g} is not inside the unit disk")


def kernel_at(w, N: int) -> KernelVector:
    """Truncated kernel vector ``(1, conj(w), conj(w)^2, ...)``."""
    w = complex(w)
    _check_disk(w)
    cw = w.conjugate()
    vals = [1 + 0j]
    # scalar recursion: vectorized complex products may round differently
    for _ in range(N - 1):
        vals.append(cw * vals[-1])
    c = np.array(vals, dtype=complex)
    c.setflags(write=False)
    return KernelVector(w, N, c)


@dataclass(frozen=True)
class BerezinValue:
    w: complex
    value: complex
    # (1 - |w|^2) * ||k_w - k_w^N||^2 = |w|^(2N): mass of the normalized kernel
    # that the truncation cannot see
    tail_bound: float
    # (re, im) as exact rationals, only from berezin_transform(..., exact=True)
    exact: Optional[tuple] = None


def berezin_transform(T: TruncatedOperator, w, exact: bool = False) -> BerezinValue:
    """``(1 - |w|^2) <T k_w, k_w>`` with the truncated kernel.

    In floating point the result carries rounding error of order
    ``eps * |value|``, which swamps the truncation error ``|w|^(2N)`` for
    moderate ``|w|``.  ``exact=True`` evaluates the same finite sum in
    rational arithmetic on the binary values of ``w`` and the entries, so
    the only remaining error is truncation; ``value`` is then the rounded
    exact result.
    """
    k = kernel_at(w, T.N)
    r2 = abs(k.w) ** 2
    tail = (1.0 - r2) * k.tail_norm_sq
    if exact:
        re, im = _exact_form(T.entries, k.w)
        return BerezinValue(k.w, complex(float(re), float(im)), tail, (re, im))
    value = (1.0 - r2) * np.vdot(k.coeffs, T.entries @ k.coeffs)
    return BerezinValue(k.w, complex(value), tail)


def _exact_form(A: np.ndarray, w: complex) -> tuple:
    wr, wi = Fraction(w.real), Fraction(w.imag)
    N = A.shape[0]
    # kernel coefficients conj(w)^n as exact (re, im) pairs
    ker = [(Fraction(1), Fraction(0))]
    for _ in range(N - 1):
        a, b = ker[-1]
        ker.append((a * wr + b * wi, b * wr - a * wi))
    total_re, total_im = Fraction(0), Fraction(0)
    rows, cols = np.nonzero(A)
    for m, n in zip(rows.tolist(), cols.tolist()):
        er, ei = Fraction(A[m, n].real), Fraction(A[m, n].imag)
        kr, ki = ker[n]
        # A[m, n] * k_n * conj(k_m)
        pr, pi = er * kr - ei * ki, er * ki + ei * kr
        cr, ci = ker[m]
        total_re += pr * cr + pi * ci
        total_im += pi * cr - pr * ci
    scale = 1 - (wr * wr + wi * wi)
    return total_re * scale, total_im * scale


def berezin_on_points(T: TruncatedOperator, points) -> list[BerezinValue]:
    return [berezin_transform(T, w) for w in np.ravel(points)]


def circle_points(r: float, count: int) -> np.ndarray:
    """``count`` equally spaced points on the circle of radius ``r``."""
    return r * np.exp(2j * np.pi * np.arange(count) / count)


def radial_sweep(T: TruncatedOperator, theta: float, radii=DIAGNOSTIC_RADII) -> list[BerezinValue]:
    """Berezin values along a ray; a diagnostic only, nothing is extrapolated."""
    return [berezin_transform(T, r * np.exp(1j * theta)) for r in radii]
