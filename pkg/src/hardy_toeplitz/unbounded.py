"""Densely defined examples: factorial and gamma operators, Smirnov ratios.

The factorial operator is the extension of the upper triangular Toeplitz
matrix with entries ``gamma_n = n!``::

    (T f)_m = d_m = sum_n n! f_hat(n + m)

Writing ``f = sum_n a_n z^n / n!`` turns this into
``d_m = sum_n a_{n+m} / ((n+1) (n+2) ... (n+m))``, and ``f`` is in the
domain exactly when ``sum a_n`` converges.  Convergence of a series is not
decidable from finitely many terms, so :func:`domain_membership` returns a
three-way heuristic verdict and never claims a proof.

Every conditionally convergent sum here is accumulated in increasing index
order with :func:`math.fsum` (error-free accumulation), never reordered or
split across workers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Optional

import numpy as np

from .circle_fourier import (CircleGrid, HardyCoeffs, as_hardy, evaluate_on_grid,
                             grid_l2_norm)
from .errors import DenominatorVanishes, DomainRefused, GrowthViolation, TableTooShort
from .hardy_ops import (SmirnovRatio, TruncatedOperator, canonical_deviation,
                        gamma_upper_triangular, is_toeplitz_algebraic, realize)

DEFAULT_K_MAX = 2 ** 20
DEFAULT_WINDOW = 8
DEFAULT_TAU = 1e-6
TERM_THRESHOLD = 1e-3
# a doubling block "fails to decrease" when its oscillation keeps at least
# this fraction of the previous block's
CONTRACTION = 0.9
GROWTH_BOUND = 1e100


def fsum_complex(values) -> complex:
    v = np.asarray(values, dtype=complex)
    re = math.fsum(v.real.tolist())
    im = math.fsum(v.imag.tolist()) if np.any(v.imag) else 0.0
    return complex(re, im)


# -- coefficient rules --------------------------------------------------------

@dataclass(frozen=True)
class CoeffRule:
    """Closed-form coefficient rule ``n -> a_n``, vectorized over integer arrays."""

    name: str
    fn: Callable[[np.ndarray], Any]

    def values(self, stop: int, start: int = 0) -> np.ndarray:
        n = np.arange(start, stop, dtype=np.int64)
        return np.broadcast_to(np.asarray(self.fn(n), dtype=complex), n.shape).copy()

    def __call__(self, n: int) -> complex:
        return complex(self.values(n + 1, n)[0])

    @classmethod
    def from_table(cls, values, name="table"):
        """Finite table, zero beyond its end."""
        table = np.asarray(values, dtype=complex)

        def fn(n):
            out = np.zeros(n.shape, dtype=complex)
            inside = (n >= 0) & (n < table.size)
            out[inside] = table[n[inside]]
            return out
        return cls(name, fn)


def _sign(n):
    return np.where(n % 2 == 0, 1.0, -1.0)


def alternating_harmonic() -> CoeffRule:
    """``a_0 = 0``, ``a_n = (-1)^n / n``."""
    def fn(n):
        return np.where(n >= 1, _sign(n) / np.maximum(n, 1), 0.0)
    return CoeffRule("alternating-harmonic", fn)


def geometric(ratio: float = 0.5) -> CoeffRule:
    return CoeffRule("geometric" if ratio == 0.5 else f"geometric({ratio:g})",
                     lambda n: ratio ** n.astype(float))


def delta(k: int, value: complex = 1.0) -> CoeffRule:
    return CoeffRule(f"delta({k})", lambda n: np.where(n == k, value, 0.0))


def zero_rule() -> CoeffRule:
    return CoeffRule("zero", lambda n: np.zeros(n.shape))


def absolute(rule: CoeffRule) -> CoeffRule:
    return CoeffRule(f"abs({rule.name})", lambda n: np.abs(rule.fn(n)))


@dataclass(frozen=True)
class GammaSequence:
    """Weights ``gamma_n`` given by ``gamma_0`` and the ratio rule
    ``rho_n = gamma_n / gamma_{n-1}``.

    The growth condition ``|gamma_{n+1}| > (n+1) |gamma_n|`` is the ratio
    condition ``|rho_{n+1}| > n + 1``, which avoids overflowing ``gamma_n``.
    """

    name: str
    ratio: Callable[[np.ndarray], Any]
    gamma0: complex = 1.0
    check_horizon: int = 1000
    rtol: float = 1e-12

    @classmethod
    def factorial(cls):
        return cls("factorial", lambda n: n.astype(float))

    @classmethod
    def factorial_geometric(cls, base: float = 2.0):
        """``gamma_n = n! * base^n``."""
        return cls(f"factorial*{base:g}^n", lambda n: base * n.astype(float))

    @classmethod
    def from_table(cls, values, name="table"):
        table = np.asarray(values, dtype=complex)
        if table.size < 2:
            raise TableTooShort("gamma table needs at least two entries")

        def ratio(n):
            if np.any(n >= table.size):
                raise TableTooShort(f"gamma table has {table.size} entries")
            return table[n] / table[n - 1]
        return cls(name, ratio, complex(table[0]), table.size - 1)

    def ratios(self, stop: int) -> np.ndarray:
        """``rho_1 .. rho_{stop-1}``."""
        n = np.arange(1, stop, dtype=np.int64)
        return np.broadcast_to(np.asarray(self.ratio(n), dtype=complex), n.shape)

    def values(self, count: int) -> np.ndarray:
        return np.cumprod(np.concatenate([[complex(self.gamma0)], self.ratios(count)]))

    def _growth(self) -> np.ndarray:
        n = np.arange(self.check_horizon)
        return np.abs(self.ratios(self.check_horizon + 1)) / (n + 1)

    @property
    def growth_ok(self) -> bool:
        return bool(np.all(self._growth() > 1.0 + self.rtol))

    @property
    def boundary_ok(self) -> bool:
        """Growth holds with equality allowed (the factorial case)."""
        return bool(np.all(self._growth() >= 1.0 - self.rtol))


FACTORIAL = GammaSequence.factorial()


def shift_rule(rule: CoeffRule, gamma: GammaSequence = FACTORIAL) -> CoeffRule:
    """Rule for ``z f`` when ``f = sum a_n z^n / gamma_n``: ``a'_n = rho_n a_{n-1}``."""
    def fn(n):
        prev = np.asarray(rule.fn(np.maximum(n - 1, 0)), dtype=complex)
        rho = gamma.ratio(np.maximum(n, 1))
        return np.where(n >= 1, rho * prev, 0.0)
    return CoeffRule(f"shift({rule.name})", fn)


def coshift_rule(rule: CoeffRule, gamma: GammaSequence = FACTORIAL) -> CoeffRule:
    """Rule for ``S* f``: ``a'_n = a_{n+1} / rho_{n+1}``."""
    def fn(n):
        return np.asarray(rule.fn(n + 1), dtype=complex) / gamma.ratio(n + 1)
    return CoeffRule(f"coshift({rule.name})", fn)


def rule_from_polynomial(f, gamma: GammaSequence = FACTORIAL) -> CoeffRule:
    """Normalized coefficients ``a_n = gamma_n f_hat(n)`` of a polynomial."""
    f = as_hardy(f)
    a = gamma.values(f.width) * f.coeffs
    return CoeffRule.from_table(a, name=f"poly(deg {f.degree})")


NAMED_RULES = {
    "alternating-harmonic": alternating_harmonic,
    "geometric": geometric,
    "shifted-alternating-harmonic": lambda: shift_rule(alternating_harmonic()),
    "zero": zero_rule,
}
# long-standing alias kept for existing configs
NAMED_RULES["paper-counterexample-shifted"] = NAMED_RULES["shifted-alternating-harmonic"]


def named_rule(name: str) -> CoeffRule:
    if name.startswith("delta:"):
        return delta(int(name.split(":", 1)[1]))
    try:
        return NAMED_RULES[name]()
    except KeyError:
        raise KeyError(f"unknown rule {name!r}; known: {sorted(NAMED_RULES)} or delta:<k>") from None


# -- convergence heuristic ---------------------------------------------------

@dataclass(frozen=True)
class DomainVerdict:
    decision: str  # "in_domain" | "out_of_domain" | "inconclusive"
    partial_sums: tuple  # (k, S_k) with S_k = a_0 + ... + a_{k-1}
    window_oscillation: float
    block_oscillations: tuple
    block_term_max: tuple
    limit_estimate: complex
    parameters: dict
    witness: Optional[dict] = None
    rule: str = ""


def _sample_points(K_max: int) -> list[int]:
    ks = [1 << j for j in range(K_max.bit_length()) if (1 << j) <= K_max]
    if ks[-1] != K_max:
        ks.append(K_max)
    return ks


def _spread(x: np.ndarray) -> float:
    # diameter of a complex point set, up to a factor sqrt(2)
    return float(math.hypot(np.ptp(x.real), np.ptp(x.imag)))


def domain_membership(rule: CoeffRule, K_max: int = DEFAULT_K_MAX, W: int = DEFAULT_WINDOW,
                      tau: float = DEFAULT_TAU, term_threshold: float = TERM_THRESHOLD) -> DomainVerdict:
    """Heuristic Cauchy test for convergence of ``sum a_n``.

    Partial sums ``S_k`` are sampled at ``k = 1, 2, 4, ..., K_max``.  Between
    samples every partial sum is tracked so that oscillation inside a
    doubling block is seen, not only its endpoints.  The Cauchy test runs on
    the averaged partial sums ``(S_n + S_{n+1}) / 2``, which converge iff the
    ``S_n`` do once the terms tend to zero, and which damp the +-a_n/2
    oscillation of alternating series.

    * ``in_domain``: last block's terms are below ``term_threshold`` and the
      averaged sums over the last ``W`` samples spread by at most ``tau``.
    * ``out_of_domain``: terms stay above ``term_threshold`` in each of the
      last three blocks while the raw block oscillation fails to decrease
      across three doublings, or ``|S_k|`` exceeds a growth bound.
    * ``inconclusive`` otherwise.
    """
    a = rule.values(K_max)
    ks = _sample_points(K_max)
    vals_re = a.real.tolist()
    vals_im = a.imag.tolist() if np.any(a.imag) else None

    def exact_prefix(k):
        im = math.fsum(vals_im[:k]) if vals_im is not None else 0.0
        return complex(math.fsum(vals_re[:k]), im)

    anchors = [exact_prefix(k) for k in ks]
    starts = [0] + ks[:-1]
    start_sums = [0j] + anchors[:-1]
    block_osc, block_terms, smoothed = [], [], []
    max_abs_sum = 0.0
    for k0, k1, s0 in zip(starts, ks, start_sums):
        seg = a[k0:k1]
        # anchored at an exact prefix, so cumsum error stays block-local
        sums = s0 + np.concatenate([[0j], np.cumsum(seg)])  # S_k0 .. S_k1
        block_osc.append(_spread(sums))
        block_terms.append(float(np.max(np.abs(seg))))
        smoothed.append(sums[:-1] + seg / 2)  # (S_n + S_{n+1}) / 2, n in [k0, k1)
        max_abs_sum = max(max_abs_sum, float(np.max(np.abs(sums))))

    window = np.concatenate(smoothed[-(W - 1):]) if W > 1 else smoothed[-1]
    window_osc = _spread(window)
    limit = complex(window[-1])

    params = {"K_max": K_max, "W": W, "tau": tau, "term_threshold": term_threshold}
    witness = None
    if block_terms[-1] <= term_threshold and window_osc <= tau:
        decision = "in_domain"
    else:
        last_osc = block_osc[-4:]
        last_terms = block_terms[-3:]
        not_vanishing = len(last_terms) == 3 and min(last_terms) > term_threshold
        non_contracting = len(last_osc) == 4 and all(
            last_osc[i + 1] >= CONTRACTION * last_osc[i] for i in range(3))
        if not_vanishing and non_contracting:
            decision = "out_of_domain"
            witness = {"kind": "terms_not_vanishing",
                       "blocks": [(s, k) for s, k in zip(starts[-3:], ks[-3:])],
                       "min_term": min(last_terms),
                       "oscillations": last_osc}
        elif max_abs_sum > GROWTH_BOUND:
            decision = "out_of_domain"
            witness = {"kind": "growth", "max_abs_partial_sum": max_abs_sum}
        else:
            decision = "inconclusive"
    return DomainVerdict(decision, tuple(zip(ks, anchors)), window_osc, tuple(block_osc),
                         tuple(block_terms), limit, params, witness, rule.name)


def gamma_domain_membership(gamma: GammaSequence, rule: CoeffRule, K_max: int = DEFAULT_K_MAX,
                            W: int = DEFAULT_WINDOW, tau: float = DEFAULT_TAU,
                            allow_boundary: bool = False) -> DomainVerdict:
    """Sufficient-condition test for ``f = sum a_n z^n / gamma_n``.

    ``in_domain`` when ``sum |a_n|`` passes the convergence heuristic,
    ``inconclusive`` otherwise: only sufficiency is known for general
    ``gamma``, so this never reports ``out_of_domain``.

    Raises
    ------
    GrowthViolation
        If ``|gamma_{n+1}| > (n+1) |gamma_n|`` fails.  ``allow_boundary``
        admits the equality case ``gamma_n = n!``.
    """
    if not gamma.growth_ok:
        if not (allow_boundary and gamma.boundary_ok):
            raise GrowthViolation(f"{gamma.name} violates |gamma_(n+1)| > (n+1)|gamma_n|")
    v = domain_membership(absolute(rule), K_max, W, tau)
    decision = "in_domain" if v.decision == "in_domain" else "inconclusive"
    return DomainVerdict(decision, v.partial_sums, v.window_oscillation, v.block_oscillations,
                         v.block_term_max, v.limit_estimate, {**v.parameters, "gamma": gamma.name},
                         None, rule.name)


# -- the factorial operator ---------------------------------------------------

def _weighted_terms(a: np.ndarray, m: int, K: int) -> np.ndarray:
    """``a_{n+m} / ((n+1) ... (n+m))`` for ``n < K``.

    Dividing one factor at a time keeps every intermediate exact whenever
    the final quotient is an integer (e.g. ``k! / (k-m+1) ... k``), and it
    never overflows.
    """
    n = np.arange(K, dtype=float)
    terms = a[m:m + K].copy()
    for i in range(1, m + 1):
        terms /= n + i
    return terms


@dataclass(frozen=True)
class FactorialSeries:
    d: np.ndarray
    tail: np.ndarray  # per-term truncation estimates
    verdict: DomainVerdict
    K_max: int


def factorial_apply(rule: CoeffRule, m_max: int, K_max: int = DEFAULT_K_MAX,
                    verdict: Optional[DomainVerdict] = None, m_min: int = 0) -> FactorialSeries:
    """Coefficients ``d_m_min .. d_m_max`` of ``T f``, summed over ``n < K_max``.

    Tail estimates: for ``m >= 2`` the majorant
    ``sup |a_n| * sum_{n >= K_max} (n+1)^(-m) <= sup |a_n| K_max^(1-m) / (m-1)``
    with the sup taken over the last sampled doubling block; for ``m < 2``
    the first omitted term (a bound for alternating monotone tails only).

    Raises
    ------
    DomainRefused
        For ``m_min == 0`` when ``sum a_n`` is judged divergent.
    """
    if verdict is None:
        verdict = domain_membership(rule, K_max)
    if m_min == 0 and verdict.decision == "out_of_domain":
        raise DomainRefused(f"sum of a_n for {rule.name} diverges; d_0 is undefined")
    a = rule.values(K_max + m_max + 1)
    sup_tail = float(np.max(np.abs(a[K_max // 2:])))
    d, tail = [], []
    for m in range(m_min, m_max + 1):
        d.append(fsum_complex(_weighted_terms(a, m, K_max)))
        if m >= 2:
            tail.append(sup_tail * float(K_max) ** (1 - m) / (m - 1))
        else:
            tail.append(float(abs(_weighted_terms(a, m, K_max + 1)[-1])))
    return FactorialSeries(np.array(d), np.array(tail), verdict, K_max)


def split_d_m(rule: CoeffRule, m: int, K_max: int = DEFAULT_K_MAX) -> tuple[complex, complex]:
    """``d_m = s_m + t_m`` with ``s_m = a_m / m!`` the ``n = 0`` term."""
    if m < 1:
        raise ValueError("split_d_m needs m >= 1")
    terms = _weighted_terms(rule.values(K_max + m + 1), m, K_max)
    return complex(terms[0]), fsum_complex(terms[1:])


@dataclass(frozen=True)
class CmRow:
    m: int
    c_m: float
    bound: float  # 1 / (m - 1)
    lower: float
    upper: float
    n_terms: int
    cumulative_sq: float

    @property
    def bound_ok(self) -> bool:
        return self.upper <= self.bound


def c_m(m: int, tail_tol: float = 1e-12) -> tuple[float, float, int]:
    """Bracket ``[lower, upper]`` for ``sum_{n>=1} (n+1)^(-m)``.

    After ``K`` terms the tail lies between the integrals of ``(1+x)^(-m)``
    over ``[K+1, inf)`` and ``[K, inf)``; ``K`` grows until the bracket is
    narrower than ``tail_tol``.
    """
    if m < 2:
        raise ValueError("c_m diverges for m < 2")
    K = max(1, math.ceil(tail_tol ** (-1.0 / m)))
    j = np.arange(K + 1, 1, -1, dtype=float)  # smallest terms first
    head = math.fsum((j ** -float(m)).tolist())
    lower = head + (K + 2.0) ** (1 - m) / (m - 1)
    upper = head + (K + 1.0) ** (1 - m) / (m - 1)
    return lower, upper, K


def c_m_table(m_max: int = 50, tail_tol: float = 1e-12) -> list[CmRow]:
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    rows, acc = [], []
    for m in range(2, m_max + 1):
        lo, hi, K = c_m(m, tail_tol)
        value = 0.5 * (lo + hi)
        acc.append(value * value)
        row = CmRow(m, value, 1.0 / (m - 1), lo, hi, K, math.fsum(acc))
        if not row.bound_ok:
            raise AssertionError(f"c_{m} = {value!r} exceeds 1/(m-1)")
        rows.append(row)
    return rows


# -- Smirnov ratios -------------------------------------------------------------

@dataclass(frozen=True)
class SmirnovDomainResult:
    member: bool
    norm: float  # discrete L^2 norm of phi * f
    bound: float
    canonical_deviation: Optional[float] = None


def smirnov_domain_test(b, a, f, grid: Optional[CircleGrid] = None,
                        eps_zero: Optional[float] = None, bound: float = math.inf,
                        canonical: bool = False) -> SmirnovDomainResult:
    """Grid norm of ``(b / a) f`` and membership against ``bound``.

    At truncation the norm is always finite; ``bound`` stands in for the
    domain constraint.  With ``canonical=True`` the identity
    ``|a|^2 + |b|^2 = 1`` is also measured on the grid.
    """
    b, a, f = as_hardy(b), as_hardy(a), as_hardy(f)
    if grid is None:
        grid = CircleGrid(max(1024, 4 * max(a.width, b.width, f.width)) + 1)
    av = evaluate_on_grid(a, grid)
    if eps_zero is None:
        eps_zero = 1e-6 * float(np.max(np.abs(av)))
    if np.min(np.abs(av)) <= eps_zero:
        raise DenominatorVanishes(f"|a| <= {eps_zero:.3g} somewhere on the grid")
    phi_f = evaluate_on_grid(b, grid) / av * evaluate_on_grid(f, grid)
    norm = grid_l2_norm(phi_f)
    dev = canonical_deviation(b, a, grid) if canonical else None
    return SmirnovDomainResult(bool(norm <= bound), norm, bound, dev)


def canonical_pair() -> tuple[HardyCoeffs, HardyCoeffs]:
    """``(b, a)`` with ``a = c (1 - z/2)``, ``b = c (1 + z/2)``, ``c^2 = 2/5``.

    ``|a|^2 + |b|^2 = (2/5)(5/2) = 1`` on the circle and ``a`` has its only
    zero at ``z = 2``, so it is outer.
    """
    c = math.sqrt(0.4)
    return HardyCoeffs([c, c / 2]), HardyCoeffs([c, -c / 2])


def cayley_pair() -> tuple[HardyCoeffs, HardyCoeffs]:
    """``(b, a) = ((1 - z)/2, (1 + z)/2)``; ``b / a`` is unbounded near ``z = -1``."""
    return HardyCoeffs([0.5, -0.5]), HardyCoeffs([0.5, 0.5])


# -- the three algebraic conditions --------------------------------------------

@dataclass(frozen=True)
class OperatorFamily:
    """Domain oracle plus matrix realization for :func:`sarason_conditions_probe`.

    ``member`` returns ``(decision, evidence)`` with decision True, False, or
    None when undecided.
    """

    name: str
    operator: TruncatedOperator
    member: Callable[[Any], tuple]
    shift: Callable[[Any], Any]
    coshift: Callable[[Any], Any]
    vanishes_at_origin: Callable[[Any], bool]
    describe: Callable[[Any], str] = str


def toeplitz_family(T: TruncatedOperator, name: str = "toeplitz_matrix") -> OperatorFamily:
    def member(f):
        f = as_hardy(f)
        ok = f.degree <= T.N - 1
        return ok, f"degree {f.degree} {'within' if ok else 'outside'} truncation N={T.N}"
    return OperatorFamily(name, T, member, lambda f: as_hardy(f).shift(1),
                          lambda f: as_hardy(f).coshift(),
                          lambda f: as_hardy(f).coeffs[0] == 0, _poly_name)


def _poly_name(f):
    from .subsymbol import probe_label
    return probe_label(as_hardy(f))


def _verdict_member(v: DomainVerdict):
    decision = {"in_domain": True, "out_of_domain": False}.get(v.decision)
    evidence = f"{v.decision}, window oscillation {v.window_oscillation:.3g}"
    if v.witness:
        evidence += f", witness {v.witness['kind']}"
        if "min_term" in v.witness:
            evidence += f" (|a_n| >= {v.witness['min_term']:.3g} in the last 3 blocks)"
    return decision, evidence


def factorial_family(N: int = 16, K_max: int = DEFAULT_K_MAX) -> OperatorFamily:
    T = gamma_upper_triangular(FACTORIAL.values(N), N)
    return OperatorFamily(
        "factorial", T,
        lambda r: _verdict_member(domain_membership(r, K_max)),
        shift_rule, coshift_rule, lambda r: r(0) == 0, lambda r: r.name)


def gamma_family(gamma: GammaSequence, N: int = 16, K_max: int = DEFAULT_K_MAX,
                 allow_boundary: bool = False) -> OperatorFamily:
    T = gamma_upper_triangular(gamma.values(N), N)
    return OperatorFamily(
        f"gamma[{gamma.name}]", T,
        lambda r: _verdict_member(gamma_domain_membership(gamma, r, K_max,
                                                          allow_boundary=allow_boundary)),
        lambda r: shift_rule(r, gamma), lambda r: coshift_rule(r, gamma),
        lambda r: r(0) == 0, lambda r: r.name)


def smirnov_family(b, a, N: int = 32, bound: float = 1e8,
                   grid: Optional[CircleGrid] = None) -> OperatorFamily:
    spec = SmirnovRatio(as_hardy(b), as_hardy(a))
    T = realize(spec, N)

    def member(f):
        res = smirnov_domain_test(b, a, f, grid, bound=bound)
        return res.member, f"||phi f|| = {res.norm:.6g} (bound {bound:g})"
    return OperatorFamily("smirnov", T, member, lambda f: as_hardy(f).shift(1),
                          lambda f: as_hardy(f).coshift(),
                          lambda f: as_hardy(f).coeffs[0] == 0, _poly_name)


@dataclass(frozen=True)
class ConditionRow:
    condition: int
    sample: str
    status: str  # "pass" | "fail" | "inconclusive" | "n/a"
    detail: str


@dataclass(frozen=True)
class SarasonReport:
    family: str
    rows: tuple

    def status(self, condition: int) -> str:
        got = [r.status for r in self.rows if r.condition == condition and r.status != "n/a"]
        if not got:
            return "n/a"
        if "fail" in got:
            return "fail"
        if "inconclusive" in got:
            return "inconclusive"
        return "pass"

    @property
    def all_pass(self) -> bool:
        return all(self.status(c) in ("pass", "n/a") for c in (1, 2, 3))

    def failures(self) -> list[ConditionRow]:
        return [r for r in self.rows if r.status == "fail"]


def _status(decision) -> str:
    return {True: "pass", False: "fail"}.get(decision, "inconclusive")


def sarason_conditions_probe(family: OperatorFamily, samples, tol: float = 1e-12) -> SarasonReport:
    """Check the three algebraic conditions on sampled domain elements.

    1. ``z f`` stays in the domain;
    2. ``S* T S = T`` on the matrix realization;
    3. ``S* f`` stays in the domain when ``f(0) = 0``.
    """
    rows = []
    for f in samples:
        label = family.describe(f)
        inside, evidence = family.member(f)
        if inside is not True:
            # a sample outside the domain says nothing; an undecided one leaves the
            # conditions undecided too
            status = "n/a" if inside is False else "inconclusive"
            note = "not in domain" if inside is False else "membership undecided"
            rows.append(ConditionRow(1, label, status, f"sample {note}: {evidence}"))
            rows.append(ConditionRow(3, label, status, f"sample {note}: {evidence}"))
            continue
        zf = family.shift(f)
        dec, ev = family.member(zf)
        rows.append(ConditionRow(1, label, _status(dec), f"z*f = {family.describe(zf)}: {ev}"))
        if family.vanishes_at_origin(f):
            sf = family.coshift(f)
            dec, ev = family.member(sf)
            rows.append(ConditionRow(3, label, _status(dec), f"S*f = {family.describe(sf)}: {ev}"))
        else:
            rows.append(ConditionRow(3, label, "n/a", "f(0) != 0"))
    check = is_toeplitz_algebraic(family.operator, tol)
    rows.append(ConditionRow(
        2, "matrix", "pass" if check.is_toeplitz else "fail",
        f"max |(S*TS - T)[m,n]| = {check.deviation:.3g} at {check.location}"))
    rows.sort(key=lambda r: r.condition)
    return SarasonReport(family.name, tuple(rows))
