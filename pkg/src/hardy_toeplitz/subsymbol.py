"""Sarason sub-symbols of truncated operators.

For a probe ``f`` the numerator ``h_f`` collects the moments

* ``<T f z^n, 1>`` as the coefficient of ``exp(-i n theta)``, ``1 <= n <= K``
* ``<T f, z^n>`` as the coefficient of ``exp(i n theta)``, ``n >= 0``

and the sub-symbol is the pointwise ratio ``R_f = h_f / f`` on a circle
grid.  At truncation the negative side stops at depth ``K`` (the partial
sub-symbol) and the positive side at ``N - 1``.

Everything here is built on :func:`~hardy_toeplitz.hardy_ops.apply`, so the
numbers are literally the matrix moments of the truncated operator.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .circle_fourier import (CircleGrid, HardyCoeffs, LaurentSeries, as_hardy,
                             coeffs_from_grid, evaluate_on_grid, multiply,
                             riesz_project)
from .errors import (AllPointsMasked, NoComparablePoints, NoStabilization,
                     OuterProbeRequired, ProbeTooDeep)
from .hardy_ops import TruncatedOperator, apply

EPS_ZERO_REL = 1e-6


def _max_depth(T: TruncatedOperator, f: HardyCoeffs) -> int:
    return T.N - 1 - f.degree


def h_support(T: TruncatedOperator, f: HardyCoeffs, K: int) -> tuple[int, int]:
    """Index window of ``h_f`` that the truncation reports.

    Without band information this is ``[-K, N-1]``.  When ``T.exact_band``
    bounds the infinite matrix, coefficients outside the window are known
    to vanish and the window is trimmed to the true support.
    """
    lower, upper = -K, T.N - 1
    if T.exact_band is not None:
        lo, hi = T.exact_band
        if lo is not None:
            lower = max(lower, min(lo, 0))
        if hi is not None:
            upper = min(upper, max(f.degree + hi, 0))
    return lower, upper


def h_is_complete(T: TruncatedOperator, f, K: int) -> bool:
    """True when the truncated ``h_f`` equals the full one (needs ``exact_band``)."""
    f = as_hardy(f)
    if T.exact_band is None:
        return False
    lo, hi = T.exact_band
    if lo is None or hi is None:
        return False
    return -K <= min(lo, 0) and f.degree + hi <= T.N - 1


def compute_h(T: TruncatedOperator, f, K: int) -> LaurentSeries:
    """Numerator ``h_f`` with negative depth ``K``.

    Raises
    ------
    ProbeTooDeep
        When ``deg f + K > N - 1``: some shifted probe would leave the window.
    """
    f = as_hardy(f)
    if K < 0:
        raise ProbeTooDeep(f"negative depth K = {K}")
    if f.degree + K > T.N - 1:
        raise ProbeTooDeep(
            f"deg f + K = {f.degree} + {K} exceeds N - 1 = {T.N - 1}")
    neg = [apply(T, f.shift(n)).coeffs[0] for n in range(K, 0, -1)]
    pos = apply(T, f).coeffs
    h = LaurentSeries(np.concatenate([np.asarray(neg, dtype=complex), pos]), -K)
    return h.restrict(*h_support(T, f, K))


def compute_partial_h(T: TruncatedOperator, f, N_cut: int) -> LaurentSeries:
    """Partial numerator: negative sum stopped at ``n = N_cut``."""
    return compute_h(T, f, N_cut)


@dataclass(frozen=True, eq=False)
class SubSymbol:
    f: HardyCoeffs
    h: LaurentSeries
    grid: CircleGrid
    r_values: np.ndarray
    valid_mask: np.ndarray
    eps_zero: float
    warnings: tuple = ()

    @property
    def valid_fraction(self) -> float:
        return float(np.mean(self.valid_mask))

    def coefficients(self, n_min: int, n_max: int) -> LaurentSeries:
        """Fourier coefficients of ``R_f`` from its grid values.

        Only meaningful when every grid point is valid.
        """
        if not np.all(self.valid_mask):
            raise AllPointsMasked("R_f has masked grid points; coefficients undefined")
        return coeffs_from_grid(self.r_values, n_min, n_max, self.grid)


def _resolve_grid(grid: Optional[CircleGrid], width: int, warnings: list) -> CircleGrid:
    if grid is None:
        return CircleGrid(2 * width + 1)
    if grid.M < width:
        warnings.append(f"grid M={grid.M} cannot resolve band width {width}; "
                        f"raised to M={2 * width + 1}")
        return CircleGrid(2 * width + 1)
    return grid


def sub_symbol(T: TruncatedOperator, f, grid: Optional[CircleGrid] = None,
               K: Optional[int] = None, eps_zero: Optional[float] = None) -> SubSymbol:
    """``R_f = h_f / f`` on a grid, masked where ``|f| <= eps_zero``.

    ``K`` defaults to the deepest admissible value ``N - 1 - deg f``.
    ``eps_zero`` defaults to ``1e-6 * max |f|`` on the grid.  Masked points
    carry NaN.
    """
    f = as_hardy(f)
    if K is None:
        K = _max_depth(T, f)
    h = compute_h(T, f, K)
    warnings: list = []
    grid = _resolve_grid(grid, h.width, warnings)
    fv = evaluate_on_grid(f, grid)
    hv = evaluate_on_grid(h, grid)
    if eps_zero is None:
        eps_zero = EPS_ZERO_REL * float(np.max(np.abs(fv)))
    valid = np.abs(fv) > eps_zero
    if not np.any(valid):
        raise AllPointsMasked("probe vanishes on the whole grid")
    r = np.full(grid.M, np.nan + 1j * np.nan)
    r[valid] = hv[valid] / fv[valid]
    valid.setflags(write=False)
    r.setflags(write=False)
    return SubSymbol(f, h, grid, r, valid, eps_zero, tuple(warnings))


@dataclass(frozen=True)
class PairDeviation:
    first: str
    second: str
    max_dev: float
    theta: float  # grid angle attaining max_dev (nan if no joint points)
    joint_points: int


@dataclass(frozen=True)
class UniquenessReport:
    probes: tuple
    pairs: tuple
    verdict: str  # "unique" | "not_unique"
    witness: Optional[PairDeviation]
    tol: float
    bands: dict = field(default_factory=dict)
    warnings: tuple = ()

    @property
    def pairwise_max_dev(self) -> dict:
        return {(p.first, p.second): p.max_dev for p in self.pairs}

    @property
    def max_deviation(self) -> float:
        devs = [p.max_dev for p in self.pairs if p.joint_points]
        return max(devs) if devs else float("nan")


def _named_probes(probes) -> list[tuple[str, HardyCoeffs]]:
    if isinstance(probes, Mapping):
        return [(str(k), as_hardy(v)) for k, v in probes.items()]
    return [(probe_label(as_hardy(p)), as_hardy(p)) for p in probes]


def probe_label(f: HardyCoeffs) -> str:
    """Short polynomial label such as ``1+z`` or ``2+z^3``."""
    terms = []
    for n, c in enumerate(f.coeffs):
        if c == 0:
            continue
        cs = _fmt_coef(c)
        mono = "" if n == 0 else ("z" if n == 1 else f"z^{n}")
        if not mono:
            terms.append(cs)
        elif cs in ("1", "-1"):
            terms.append(cs[:-1] + mono)
        else:
            terms.append(f"{cs}*{mono}")
    if not terms:
        return "0"
    return "".join(t if i == 0 or t.startswith("-") else "+" + t for i, t in enumerate(terms))


def _fmt_coef(c) -> str:
    c = complex(c)
    if c.imag == 0:
        return f"{c.real:g}"
    return f"({c.real:g}{c.imag:+g}j)"


def default_probes(outer=None) -> dict:
    """Monomials 1, z, z^2, the polynomial 1 + z and an outer candidate."""
    outer = as_hardy(outer) if outer is not None else HardyCoeffs([2.0, 1.0])
    family = {"1": HardyCoeffs([1.0]), "z": HardyCoeffs([0, 1.0]),
              "z^2": HardyCoeffs([0, 0, 1.0]), "1+z": HardyCoeffs([1.0, 1.0])}
    family.setdefault(probe_label(outer), outer)
    return family


def uniqueness_probe(T: TruncatedOperator, probes=None, grid: Optional[CircleGrid] = None,
                     K: Optional[int] = None, tol: float = 1e-9) -> UniquenessReport:
    """Compare sub-symbols of several probes pointwise.

    With ``K=None`` every probe uses its own deepest admissible depth
    ``N - 1 - deg f``, so all sub-symbols reach down to index ``-(N-1)``.

    Raises
    ------
    NoComparablePoints
        If no pair of probes shares a valid grid point.
    """
    named = _named_probes(default_probes() if probes is None else probes)
    depth = {name: (_max_depth(T, f) if K is None else K) for name, f in named}
    hs = {name: compute_h(T, f, depth[name]) for name, f in named}
    width = max(h.width for h in hs.values())
    warnings: list = []
    grid = _resolve_grid(grid, width, warnings)
    subs = {name: sub_symbol(T, f, grid, depth[name]) for name, f in named}
    for s in subs.values():
        warnings.extend(w for w in s.warnings if w not in warnings)

    theta = grid.points
    pairs = []
    for (a, _), (b, _) in itertools.combinations(named, 2):
        joint = subs[a].valid_mask & subs[b].valid_mask
        if not np.any(joint):
            pairs.append(PairDeviation(a, b, float("nan"), float("nan"), 0))
            continue
        diff = np.where(joint, np.abs(subs[a].r_values - subs[b].r_values), -1.0)
        j = int(np.argmax(diff))
        pairs.append(PairDeviation(a, b, float(diff[j]), float(theta[j]), int(joint.sum())))
    if pairs and not any(p.joint_points for p in pairs):
        raise NoComparablePoints("no probe pair has a jointly valid grid point")
    compared = [p for p in pairs if p.joint_points]
    witness = max(compared, key=lambda p: p.max_dev) if compared else None
    unique = all(p.max_dev <= tol for p in compared)
    bands = {name: hs[name].band for name, _ in named}
    return UniquenessReport(tuple(n for n, _ in named), tuple(pairs),
                            "unique" if unique else "not_unique", witness, tol,
                            bands, tuple(warnings))


def witness_probes(m: int, n: int) -> dict:
    """Monomial pair exposing a broken diagonal at entry ``(m, n)``.

    Pairs ``1`` with ``z^n``; when the entry sits in row 0 or column 0 that
    pair compares the entry with itself, so ``z^(n+1)`` is used instead.
    Each pair compares ``A[m, n]`` with another entry on the same diagonal.
    """
    k = n if (m > 0 and n > 0) else n + 1
    return {"1": HardyCoeffs([1.0]), f"z^{k}": HardyCoeffs.monomial(k)}


@dataclass(frozen=True)
class AnalyticityResult:
    analytic: bool
    values: tuple  # <T(z f), 1> per probe
    probes: tuple
    tol: float


def analyticity_test(T: TruncatedOperator, probes=None, tol: float = 1e-10) -> AnalyticityResult:
    """Check ``<T z f, 1> = 0`` for every probe.

    The default probe family is every monomial ``z^k`` with ``k <= N - 2``,
    which by linearity covers the whole truncated domain.
    """
    if probes is None:
        probes = [HardyCoeffs.monomial(k) for k in range(T.N - 1)]
    named = _named_probes(probes)
    values = []
    for name, f in named:
        if f.degree + 1 > T.N - 1:
            raise ProbeTooDeep(f"probe {name}: deg f + 1 exceeds N - 1")
        values.append(complex(apply(T, f.shift(1)).coeffs[0]))
    ok = all(abs(v) <= tol for v in values)
    return AnalyticityResult(ok, tuple(values), tuple(n for n, _ in named), tol)


@dataclass(frozen=True)
class ExtensionRow:
    poly: str
    band: tuple[int, int]
    max_dev: float


@dataclass(frozen=True)
class ExtensionReport:
    f: str
    K: int
    rows: tuple
    tol: float
    valid_fraction: float

    @property
    def max_deviation(self) -> float:
        return max(r.max_dev for r in self.rows)

    @property
    def agrees(self) -> bool:
        return self.max_deviation <= self.tol


def _certified_lower(T: TruncatedOperator, K: int, deg_p: int) -> int:
    # P(h p)_n needs h down to index n - deg p
    if K >= deg_p:
        return 0
    if T.exact_band is not None and T.exact_band[0] is not None and T.exact_band[0] >= -K:
        return 0
    return deg_p - K


def extension_agreement(T: TruncatedOperator, f, polys: Sequence, grid: Optional[CircleGrid] = None,
                        K: Optional[int] = None, tol: float = 1e-8,
                        min_valid_fraction: float = 0.9) -> ExtensionReport:
    """Compare ``P(h_f p)`` with ``T(f p)`` on the certified band.

    ``K`` defaults to the largest depth with ``deg(f p) + K <= N - 1`` for
    every ``p``.  The certified band is ``[lo, N - 1]``; ``lo`` is 0 unless
    ``h_f`` was cut above the depth the projection needs.
    """
    f = as_hardy(f)
    polys = [as_hardy(p) for p in polys]
    max_deg = max(multiply(f, p).degree for p in polys)
    if K is None:
        K = T.N - 1 - max_deg
    if K < 0 or max_deg + K > T.N - 1:
        raise ProbeTooDeep(f"deg(f p) + K = {max_deg} + {K} exceeds N - 1 = {T.N - 1}")
    grid = grid or CircleGrid(4 * T.N + 1)
    fv = np.abs(evaluate_on_grid(f, grid))
    frac = float(np.mean(fv > EPS_ZERO_REL * fv.max()))
    if frac < min_valid_fraction:
        raise OuterProbeRequired(f"probe valid on only {frac:.1%} of the grid")

    h = compute_h(T, f, K)
    rows = []
    for p in polys:
        lo, hi = _certified_lower(T, K, p.degree), T.N - 1
        lhs = riesz_project(multiply(h, p))
        rhs = apply(T, multiply(f, p))
        n = np.arange(lo, hi + 1)
        dev = float(np.max(np.abs(lhs[n] - rhs[n]))) if n.size else 0.0
        rows.append(ExtensionRow(probe_label(p), (lo, hi), dev))
    return ExtensionReport(probe_label(f), K, tuple(rows), tol, frac)


def _projected_product(h: LaurentSeries, p: HardyCoeffs, N: int) -> np.ndarray:
    """``P(h p)`` on ``[0, N-1]`` with a summation order independent of h's band."""
    n = np.arange(N)
    out = np.zeros(N, dtype=complex)
    for j in range(p.degree + 1):
        out = out + p.coeffs[j] * h[n - j]
    return out


@dataclass(frozen=True)
class StabilizationResult:
    n_star: Optional[int]
    vector: Optional[HardyCoeffs]
    changes: tuple  # max |v_{N+1} - v_N| for each N in the scanned range
    apply_deviation: float
    band: tuple[int, int]
    n_range: tuple

    @property
    def stabilized(self) -> bool:
        return self.n_star is not None


def partial_stabilization(T: TruncatedOperator, f, p, N_range=None,
                          strict: bool = False) -> StabilizationResult:
    """First depth ``N*`` after which ``P(h_{f,N} p)`` stops changing.

    Consecutive depths are compared for exact equality on ``[0, N-1]``.
    The stabilized vector is compared with ``apply(T, f p)``; the maximum
    deviation is reported, not judged.  ``strict=True`` raises
    :class:`NoStabilization` instead of returning ``n_star=None``.
    """
    f, p = as_hardy(f), as_hardy(p)
    fp = multiply(f, p)
    if fp.degree > T.N - 1:
        raise ProbeTooDeep(f"deg(f p) = {fp.degree} exceeds N - 1")
    if N_range is None:
        N_range = range(0, min(p.degree + 3, _max_depth(T, f) + 1))
    N_range = list(N_range)
    vectors = [_projected_product(compute_partial_h(T, f, n), p, T.N) for n in N_range]
    changes = tuple(float(np.max(np.abs(b - a))) for a, b in zip(vectors, vectors[1:]))
    n_star = None
    for i in range(len(vectors) - 1):
        if np.array_equal(vectors[i], vectors[i + 1]):
            n_star = N_range[i]
            break
    band = (0, T.N - 1)
    if n_star is None:
        if strict:
            raise NoStabilization(f"no depth in {N_range[0]}..{N_range[-1]} stabilizes")
        return StabilizationResult(None, None, changes, float("nan"), band, tuple(N_range))
    v = vectors[N_range.index(n_star)]
    dev = float(np.max(np.abs(v - apply(T, fp).coeffs)))
    return StabilizationResult(n_star, HardyCoeffs(v), changes, dev, band, tuple(N_range))
