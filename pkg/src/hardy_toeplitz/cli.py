"""Command-line front end.

Exit codes
----------
0  success; the probe reached a positive verdict
1  error: bad config, missing file, refused input
2  negative verdict (not unique, not Toeplitz, condition failure,
   out of domain, disagreement, no stabilization)
3  inconclusive verdict

Reports carry a ``# generated <UTC time>`` first line unless
``--no-timestamp`` is given; CSV files never do, so they are
byte-identical across runs.  ``HS_SEED`` seeds every randomized input
(``kind = random-trig``, ``probes = random:<k>``); it defaults to 0.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import berezin as bz
from . import unbounded as ub
from .builtins import BUILTINS, builtin
from .circle_fourier import CircleGrid, HardyCoeffs, LaurentSeries, multiply
from .errors import ConfigError, DomainRefused, HardyError
from .formats import (ConfigFile, Report, csv_text, literal, load_config,
                      parse_config, read_matrix, read_series)
from .hardy_ops import (SmirnovRatio, TruncatedOperator, diagonal_symbol_recovery,
                        gamma_upper_triangular, is_toeplitz_algebraic, realize,
                        toeplitz_from_symbol)
from .subsymbol import (analyticity_test, default_probes, extension_agreement,
                        h_is_complete, partial_stabilization, probe_label, sub_symbol,
                        uniqueness_probe)

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

_TOEPLITZ_KINDS = {"trig", "random-trig", "shift", "coshift", "identity",
                   "rank-one", "matrix", "perturbed"}
_GAMMA_KINDS = {"factorial", "gamma"}


def seed() -> int:
    return int(os.environ.get("HS_SEED", "0"))


# -- config interpretation ------------------------------------------------------

def _series(text) -> LaurentSeries:
    value = literal(text)
    if not isinstance(value, dict):
        raise ValueError("expected a {index: coefficient} dict")
    return LaurentSeries.from_dict(value)


def _hardy(text) -> HardyCoeffs:
    s = _series(text)
    if s.n_min < 0:
        raise ValueError("negative indices in an analytic polynomial")
    return HardyCoeffs.from_dict(s.to_dict())


def _hardy_list(text) -> list:
    value = literal(text)
    if not isinstance(value, (list, tuple)):
        raise ValueError("expected a list of {index: coefficient} dicts")
    return [_hardy(repr(v)) for v in value]


def _bool(text) -> bool:
    t = text.strip().lower()
    if t in ("true", "yes", "1"):
        return True
    if t in ("false", "no", "0"):
        return False
    raise ValueError(f"expected true/false, got {text!r}")


@dataclass
class Operator:
    kind: str
    T: TruncatedOperator
    smirnov: SmirnovRatio | None = None
    gamma: ub.GammaSequence | None = None


def _random_symbol(band: int) -> LaurentSeries:
    rng = np.random.default_rng(seed())
    r = np.sqrt(rng.uniform(0, 1, 2 * band + 1))
    return LaurentSeries(r * np.exp(2j * np.pi * rng.uniform(0, 1, 2 * band + 1)), -band)


def _gamma(text) -> ub.GammaSequence:
    t = text.strip()
    if t == "factorial":
        return ub.GammaSequence.factorial()
    if t.startswith("factorial-geometric"):
        base = float(t.split(":", 1)[1]) if ":" in t else 2.0
        return ub.GammaSequence.factorial_geometric(base)
    return ub.GammaSequence.from_table(literal(t))


def _smirnov_pair(cfg: ConfigFile):
    pair = cfg.get("operator", "pair")
    if pair is not None:
        table = {"canonical": ub.canonical_pair, "cayley": ub.cayley_pair}
        if pair not in table:
            raise cfg.error(f"unknown pair {pair!r}; use canonical or cayley", "operator", "pair")
        return table[pair]()
    for key in ("numerator", "denominator"):
        if not cfg.has("operator", key):
            raise cfg.error(f"smirnov operator needs 'pair' or '{key}'")
    return (cfg.get("operator", "numerator", convert=_hardy),
            cfg.get("operator", "denominator", convert=_hardy))


def build_operator(cfg: ConfigFile, N: int) -> Operator:
    kind = cfg.get("operator", "kind")
    if kind is None:
        raise cfg.error("missing [operator] kind")
    if kind in ("shift", "coshift", "identity"):
        sym = {"shift": {1: 1.0}, "coshift": {-1: 1.0}, "identity": {0: 1.0}}[kind]
        T = toeplitz_from_symbol(LaurentSeries.from_dict(sym), N)
        return Operator(kind, TruncatedOperator(T.entries, T.exact_band, kind))
    if kind == "trig":
        if not cfg.has("operator", "symbol"):
            raise cfg.error("trig operator needs 'symbol'")
        return Operator(kind, toeplitz_from_symbol(cfg.get("operator", "symbol", convert=_series), N))
    if kind == "random-trig":
        band = cfg.get("operator", "band", 4, int)
        return Operator(kind, toeplitz_from_symbol(_random_symbol(band), N))
    if kind == "perturbed":
        if not cfg.has("operator", "symbol") or not cfg.has("operator", "perturb"):
            raise cfg.error("perturbed operator needs 'symbol' and 'perturb = (m, n, delta)'")
        base = toeplitz_from_symbol(cfg.get("operator", "symbol", convert=_series), N)
        m, n, delta = cfg.get("operator", "perturb", convert=literal)
        if not (0 <= m < N and 0 <= n < N):
            raise cfg.error(f"perturbation ({m}, {n}) outside the {N}x{N} window",
                            "operator", "perturb")
        A = base.entries.copy()
        A[m, n] += delta
        return Operator(kind, TruncatedOperator(A, label="perturbed"))
    if kind == "rank-one":
        A = np.zeros((N, N), dtype=complex)
        A[0, 0] = 1.0
        return Operator(kind, TruncatedOperator(A, label="rank-one"))
    if kind == "matrix":
        path = _resolve_path(cfg, "operator", "file")
        T = read_matrix(path)
        return Operator(kind, T)
    if kind == "smirnov":
        b, a = _smirnov_pair(cfg)
        spec = SmirnovRatio(b, a)
        return Operator(kind, realize(spec, N), smirnov=spec)
    if kind in _GAMMA_KINDS:
        text = "factorial" if kind == "factorial" else cfg.get("operator", "gamma")
        if text is None:
            raise cfg.error("gamma operator needs 'gamma'")
        g = _gamma(text)
        return Operator(kind, realize_gamma(g, N), gamma=g)
    raise cfg.error(f"unknown operator kind {kind!r}", "operator", "kind")


def realize_gamma(g: ub.GammaSequence, N: int) -> TruncatedOperator:
    return gamma_upper_triangular(g.values(N), N)


def _resolve_path(cfg: ConfigFile, section, key) -> Path:
    raw = cfg.get(section, key)
    if raw is None:
        raise cfg.error(f"missing [{section}] {key}")
    p = Path(raw)
    if not p.is_absolute() and cfg.path:
        p = Path(cfg.path).parent / p
    if not p.is_file():
        raise cfg.error(f"file not found: {p}", section, key)
    return p


@dataclass
class RunParams:
    N: int
    M: int | None
    tol: float


def run_params(cfg: ConfigFile, default_tol: float, default_N: int = 64) -> RunParams:
    """Common ``[run]`` keys with their invariants checked."""
    N = cfg.get("run", "N", default_N, int)
    if N < 4:
        raise cfg.error(f"N must be at least 4, got {N}", "run", "N")
    M = cfg.get("run", "M", None, int)
    if M is not None and M < 2 * N + 1 and not cfg.get("run", "allow_coarse_grid", False, _bool):
        raise cfg.error(f"M = {M} is below 2N + 1 = {2 * N + 1}; "
                        "set allow_coarse_grid = true to override", "run", "M")
    tol = cfg.get("run", "tol", default_tol, float)
    return RunParams(N, M, tol)


def validate(cfg: ConfigFile) -> None:
    """Parse-time checks that do not depend on the command."""
    if cfg.has("operator", "kind") and cfg.get("operator", "kind") == "matrix":
        _resolve_path(cfg, "operator", "file")


def _probes(cfg: ConfigFile):
    raw = cfg.get("run", "probes")
    if raw is None or raw == "default":
        outer = cfg.get("run", "outer", None, _hardy)
        return default_probes(outer)
    if raw.startswith("random:"):
        count = cfg.get("run", "probes", convert=lambda t: int(t.split(":", 1)[1]))
        rng = np.random.default_rng(seed())
        out = {}
        for i in range(count):
            c = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            out[f"random{i}"] = HardyCoeffs(c)
        return out
    return cfg.get("run", "probes", convert=_hardy_list)


# -- commands ---------------------------------------------------------------------

@dataclass
class Result:
    code: int
    text: str
    ext: str  # "txt" | "csv"


def cmd_subsymbol(cfg: ConfigFile, ts: bool) -> Result:
    p = run_params(cfg, 1e-9)
    op = build_operator(cfg, p.N)
    probes = _probes(cfg)
    K = cfg.get("run", "K", None, lambda t: None if t == "auto" else int(t))
    grid = CircleGrid(p.M) if p.M else None
    rep = uniqueness_probe(op.T, probes, grid, K, p.tol)

    r = Report("sub-symbol uniqueness")
    sec = r.section("run")
    sec += [("operator", op.kind), ("N", p.N), ("M", p.M or "auto"),
            ("K", "auto" if K is None else K), ("tol", p.tol)]
    named = probes.items() if isinstance(probes, dict) else ((probe_label(f), f) for f in probes)
    for name, f in named:
        depth = op.T.N - 1 - f.degree if K is None else K
        s = sub_symbol(op.T, f, grid, depth)
        sec = r.section(f"probe {name}")
        sec += [("band", rep.bands[name]), ("depth", depth),
                ("h_complete", h_is_complete(op.T, f, depth)),
                ("grid_M", s.grid.M), ("valid_fraction", s.valid_fraction)]
    for pair in rep.pairs:
        sec = r.section(f"pair {pair.first} | {pair.second}")
        sec += [("max_deviation", pair.max_dev), ("theta", pair.theta),
                ("joint_points", pair.joint_points)]
    sec = r.section("verdict")
    sec.append(("verdict", rep.verdict))
    sec.append(("max_deviation", rep.max_deviation))
    if rep.witness is not None:
        sec += [("witness_pair", f"{rep.witness.first} | {rep.witness.second}"),
                ("witness_theta", rep.witness.theta),
                ("witness_deviation", rep.witness.max_dev)]
    for i, w in enumerate(rep.warnings):
        sec.append((f"warning_{i}", w))
    code = EXIT_OK if rep.verdict == "unique" else EXIT_NEGATIVE
    return Result(code, r.render(ts), "txt")


def _family_and_samples(cfg: ConfigFile, op: Operator):
    if op.kind in _TOEPLITZ_KINDS:
        samples = cfg.get("run", "samples", None, _hardy_list)
        if samples is None:
            samples = [HardyCoeffs([1.0]), HardyCoeffs([0, 1.0]),
                       HardyCoeffs([0, 0, 1.0]), HardyCoeffs([1.0, 1.0])]
        return ub.toeplitz_family(op.T), samples
    if op.kind == "smirnov":
        b, a = op.smirnov.numerator, op.smirnov.denominator
        polys = cfg.get("run", "samples", None, _hardy_list) or [
            HardyCoeffs([1.0]), HardyCoeffs([0, 1.0]), HardyCoeffs([0, 0, 1.0])]
        fam = ub.smirnov_family(b, a, op.T.N)
        return fam, [multiply(a, q) for q in polys]
    names = cfg.get("run", "samples", "alternating-harmonic, geometric, delta:1")
    try:
        rules = [ub.named_rule(n.strip()) for n in names.split(",") if n.strip()]
    except KeyError as exc:
        raise cfg.error(str(exc.args[0]), "run", "samples") from None
    K_max = cfg.get("run", "K_max", ub.DEFAULT_K_MAX, int)
    if op.kind == "factorial":
        return ub.factorial_family(op.T.N, K_max), rules
    allow = cfg.get("run", "allow_boundary", False, _bool)
    return ub.gamma_family(op.gamma, op.T.N, K_max, allow), rules


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_check(cfg: ConfigFile, ts: bool) -> Result:
    p = run_params(cfg, 1e-10, default_N=32)
    op = build_operator(cfg, p.N)
    T = op.T
    r = Report("operator check")
    sec = r.section("operator")
    sec += [("kind", op.kind), ("N", T.N), ("exact_band", _band_text(T.exact_band))]

    tc = is_toeplitz_algebraic(T, p.tol)
    sec = r.section("toeplitz")
    sec += [("toeplitz", _yes(tc.is_toeplitz)), ("deviation", tc.deviation),
            ("location", tc.location)]

    an = analyticity_test(T, tol=p.tol)
    worst = int(np.argmax(np.abs(an.values)))
    sec = r.section("analyticity")
    sec += [("analytic", _yes(an.analytic)), ("max_abs_moment", abs(an.values[worst])),
            ("worst_probe", an.probes[worst])]

    margin = cfg.get("run", "margin", 0, int)
    rec = diagonal_symbol_recovery(T, margin)
    sec = r.section("recovered_symbol")
    sec.append(("margin", margin))
    sec.append(("band", rec.band))
    show = min(4, -rec.n_min)
    for k in range(-show, show + 1):
        sec.append((f"coef[{k}]", complex(rec[k])))

    family, samples = _family_and_samples(cfg, op)
    sr = ub.sarason_conditions_probe(family, samples, p.tol)
    sec = r.section("conditions")
    sec.append(("family", sr.family))
    for c in (1, 2, 3):
        sec.append((f"condition_{c}", sr.status(c)))
    for i, row in enumerate(sr.rows):
        sec = r.section(f"condition_row {i}")
        sec += [("condition", row.condition), ("sample", row.sample),
                ("status", row.status), ("detail", row.detail)]

    statuses = [sr.status(c) for c in (1, 2, 3)]
    if not tc.is_toeplitz or "fail" in statuses:
        verdict, code = "not_sarason", EXIT_NEGATIVE
    elif "inconclusive" in statuses:
        verdict, code = "inconclusive", EXIT_INCONCLUSIVE
    else:
        verdict, code = "consistent", EXIT_OK
    r.section("verdict").append(("verdict", verdict))
    return Result(code, r.render(ts), "txt")


def _band_text(band) -> str:
    if band is None:
        return "unknown"
    return " ".join("inf" if b is None else str(b) for b in band)


def _points(cfg: ConfigFile):
    if cfg.has("run", "points"):
        return [complex(w) for w in cfg.get("run", "points", convert=literal)]
    radius = cfg.get("run", "radius", 0.3, float)
    count = cfg.get("run", "count", 8, int)
    return list(bz.circle_points(radius, count))


def cmd_berezin_eval(cfg: ConfigFile, ts: bool) -> Result:
    p = run_params(cfg, 0.0)
    T = build_operator(cfg, p.N).T
    exact = cfg.get("run", "exact", False, _bool)
    rows = []
    for w in _points(cfg):
        v = bz.berezin_transform(T, w, exact=exact)
        rows.append((v.w.real, v.w.imag, v.value.real, v.value.imag, v.tail_bound))
    return Result(EXIT_OK, csv_text(["re_w", "im_w", "re_value", "im_value", "tail_bound"], rows),
                  "csv")


def cmd_berezin_sweep(cfg: ConfigFile, ts: bool) -> Result:
    p = run_params(cfg, 0.0)
    T = build_operator(cfg, p.N).T
    thetas = cfg.get("run", "theta", [0.0], literal)
    radii = cfg.get("run", "radii", bz.DIAGNOSTIC_RADII, literal)
    rows = []
    for th in thetas:
        for r, v in zip(radii, bz.radial_sweep(T, float(th), radii)):
            rows.append((float(th), float(r), v.value.real, v.value.imag, v.tail_bound))
    return Result(EXIT_OK, csv_text(["theta", "r", "re_value", "im_value", "tail_bound"], rows),
                  "csv")


def _rule(cfg: ConfigFile) -> ub.CoeffRule:
    name = cfg.get("run", "rule")
    if name is None:
        raise cfg.error("missing [run] rule (or --rule)")
    p = Path(name)
    if p.is_file():
        s = read_series(p)
        if s.n_min < 0:
            raise cfg.error("rule file must start at n_min >= 0", "run", "rule")
        table = np.concatenate([np.zeros(s.n_min, dtype=complex), s.coeffs])
        return ub.CoeffRule.from_table(table, name=p.name)
    try:
        return ub.named_rule(name)
    except KeyError as exc:
        raise cfg.error(str(exc.args[0]), "run", "rule") from None


def cmd_factorial_domain(cfg: ConfigFile, ts: bool) -> Result:
    rule = _rule(cfg)
    v = ub.domain_membership(
        rule, cfg.get("run", "K_max", ub.DEFAULT_K_MAX, int),
        cfg.get("run", "W", ub.DEFAULT_WINDOW, int), cfg.get("run", "tau", ub.DEFAULT_TAU, float))
    r = Report("factorial domain membership (numerical heuristic, not a proof)")
    sec = r.section("rule")
    sec.append(("name", v.rule))
    sec = r.section("parameters")
    sec += list(v.parameters.items())
    sec = r.section("verdict")
    sec += [("decision", v.decision), ("window_oscillation", v.window_oscillation),
            ("limit_estimate", v.limit_estimate)]
    if v.witness:
        sec = r.section("witness")
        for k, val in v.witness.items():
            sec.append((k, _flatten(val)))
    sec = r.section("partial_sums")
    for k, s in v.partial_sums:
        sec.append((f"S[{k}]", s))
    sec = r.section("blocks")
    starts = [0] + [k for k, _ in v.partial_sums[:-1]]
    for k0, (k1, _), osc, term in zip(starts, v.partial_sums, v.block_oscillations,
                                     v.block_term_max):
        sec.append((f"block[{k0},{k1})", (osc, term)))
    code = {"in_domain": EXIT_OK, "out_of_domain": EXIT_NEGATIVE}.get(v.decision,
                                                                       EXIT_INCONCLUSIVE)
    return Result(code, r.render(ts), "txt")


def _flatten(val):
    if isinstance(val, (list, tuple)):
        return [x for item in val for x in (item if isinstance(item, tuple) else (item,))]
    return val


def cmd_factorial_apply(cfg: ConfigFile, ts: bool) -> Result:
    rule = _rule(cfg)
    mmax = cfg.get("run", "mmax", 8, int)
    K_max = cfg.get("run", "K_max", ub.DEFAULT_K_MAX, int)
    try:
        series = ub.factorial_apply(rule, mmax, K_max)
    except DomainRefused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return Result(EXIT_NEGATIVE, "", "csv")
    rows = [(m, d.real, d.imag, t) for m, (d, t) in enumerate(zip(series.d, series.tail))]
    code = EXIT_OK if series.verdict.decision == "in_domain" else EXIT_INCONCLUSIVE
    return Result(code, csv_text(["m", "re_d", "im_d", "tail"], rows), "csv")


def cmd_lemma62_table(cfg: ConfigFile, ts: bool) -> Result:
    mmax = cfg.get("run", "mmax", 50, int)
    rows = ub.c_m_table(mmax, cfg.get("run", "tail_tol", 1e-12, float))
    ok = all(r.bound_ok for r in rows) and rows[-1].cumulative_sq <= math.pi ** 2 / 6
    out = [(r.m, r.c_m, r.bound, r.cumulative_sq) for r in rows]
    return Result(EXIT_OK if ok else EXIT_NEGATIVE,
                  csv_text(["m", "c_m", "bound", "cumulative_sq"], out), "csv")


def _probe_f(cfg: ConfigFile, op: Operator) -> HardyCoeffs:
    raw = cfg.get("run", "f")
    if raw == "denominator":
        if op.smirnov is None:
            raise cfg.error("f = denominator needs a smirnov operator", "run", "f")
        return op.smirnov.denominator
    if raw is None:
        return HardyCoeffs([2.0, 1.0])
    return cfg.get("run", "f", convert=_hardy)


def cmd_extension(cfg: ConfigFile, ts: bool) -> Result:
    p = run_params(cfg, 1e-8)
    op = build_operator(cfg, p.N)
    f = _probe_f(cfg, op)
    polys = cfg.get("run", "polys", None, _hardy_list) or [HardyCoeffs.monomial(k) for k in range(4)]
    K = cfg.get("run", "K", None, int)
    rep = extension_agreement(op.T, f, polys, CircleGrid(p.M) if p.M else None, K, p.tol)
    r = Report("extension agreement")
    sec = r.section("run")
    sec += [("operator", op.kind), ("N", p.N), ("f", rep.f), ("K", rep.K),
            ("valid_fraction", rep.valid_fraction), ("tol", p.tol)]
    for row in rep.rows:
        sec = r.section(f"poly {row.poly}")
        sec += [("band", row.band), ("max_deviation", row.max_dev)]
    sec = r.section("verdict")
    sec += [("agrees", _yes(rep.agrees)), ("max_deviation", rep.max_deviation)]
    return Result(EXIT_OK if rep.agrees else EXIT_NEGATIVE, r.render(ts), "txt")


def cmd_stabilize(cfg: ConfigFile, ts: bool) -> Result:
    p = run_params(cfg, 0.0, default_N=32)
    op = build_operator(cfg, p.N)
    f = _probe_f(cfg, op)
    polys = cfg.get("run", "polys", None, _hardy_list) or [HardyCoeffs.monomial(k) for k in range(5)]
    rows, ok = [], True
    for q in polys:
        res = partial_stabilization(op.T, f, q)
        within = res.stabilized and res.n_star <= q.degree + 1
        ok &= within
        rows.append((probe_label(q), q.degree, "none" if res.n_star is None else res.n_star,
                     q.degree + 1, _yes(within), res.apply_deviation))
    header = ["poly", "degree", "n_star", "bound", "within_bound", "apply_deviation"]
    return Result(EXIT_OK if ok else EXIT_NEGATIVE, csv_text(header, rows), "csv")


COMMANDS = {
    "subsymbol": cmd_subsymbol,
    "check": cmd_check,
    "berezin eval": cmd_berezin_eval,
    "berezin sweep": cmd_berezin_sweep,
    "factorial domain": cmd_factorial_domain,
    "factorial apply": cmd_factorial_apply,
    "lemma62 table": cmd_lemma62_table,
    "extension": cmd_extension,
    "stabilize": cmd_stabilize,
}


# -- driver ------------------------------------------------------------------------

def run_command(command: str, cfg: ConfigFile, timestamp: bool = True) -> Result:
    """Run one command on a parsed config; library errors become exit 1."""
    try:
        validate(cfg)
        return COMMANDS[command](cfg, timestamp)
    except (HardyError, KeyError, ValueError, OSError) as exc:
        return Result(EXIT_ERROR, f"error: {exc}\n", "err")



def _as_config(config) -> tuple[ConfigFile, str]:
    if isinstance(config, ConfigFile):
        return config, Path(config.path).stem if config.path else "run"
    if isinstance(config, str) and "\n" in config:
        return parse_config(config), "run"
    return load_config(config), Path(config).stem


def _run_to(command: str, config, out, timestamp: bool) -> int:
    try:
        cfg, stem = _as_config(config)
    except ConfigError as exc:
        _emit(Result(EXIT_ERROR, f"error: {exc}\n", "err"), out, "")
        return EXIT_ERROR
    result = run_command(command, cfg, timestamp)
    _emit(result, out, stem)
    return result.code


def run_subsymbol(config, out: str | None = None, timestamp: bool = True) -> int:
    """Uniqueness report for a config (path, text, or parsed); returns the exit code."""
    return _run_to("subsymbol", config, out, timestamp)


def run_check(config, out: str | None = None, timestamp: bool = True) -> int:
    """Consolidated Toeplitz / analyticity / domain verdicts; returns the exit code."""
    return _run_to("check", config, out, timestamp)


TABLES = {"lemma62": "lemma62 table", "berezin": "berezin sweep", "stabilize": "stabilize"}


def run_tables(config, table: str = "lemma62", out: str | None = None,
               timestamp: bool = True) -> int:
    """CSV table: ``lemma62`` (c_m), ``berezin`` (radial sweep) or ``stabilize``."""
    if table not in TABLES:
        raise ValueError(f"unknown table {table!r}; choose from {', '.join(TABLES)}")
    return _run_to(TABLES[table], config, out, timestamp)

def _apply_overrides(cfg: ConfigFile, args) -> None:
    for key in ("N", "M", "tol", "rule", "mmax"):
        val = getattr(args, key, None)
        if val is not None:
            cfg.override("run", key, val)


def _emit(result: Result, out: str | None, stem: str) -> None:
    if result.ext == "err":
        sys.stderr.write(result.text)
        return
    if out is None:
        sys.stdout.write(result.text)
        return
    d = Path(out)
    d.mkdir(parents=True, exist_ok=True)
    target = d / f"{stem}.{result.ext}"
    with open(target, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(result.text)
    print(f"wrote {target} (exit {result.code})")


def run_suite(out: str | None, timestamp: bool) -> int:
    """Run every built-in example; exit 0 iff each matches its expected code."""
    rows = []
    for b in BUILTINS.values():
        res = run_command(b.command, parse_config(b.config, f"<example {b.name}>"), timestamp)
        if out is not None and res.ext != "err":
            _emit(res, out, b.name)
        status = "ok" if res.code == b.expected_exit else "MISMATCH"
        rows.append((b.name, b.command, res.code, b.expected_exit, status))
    text = csv_text(["example", "command", "exit", "expected", "status"], rows)
    _emit(Result(0, text, "csv"), out, "suite")
    return EXIT_OK if all(r[-1] == "ok" for r in rows) else EXIT_NEGATIVE


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="config file (key = value sections)")
    p.add_argument("--example", help="named built-in config; see 'examples'")
    p.add_argument("--out", help="output directory (default: stdout)")
    p.add_argument("--no-timestamp", action="store_true", help="omit the '# generated' line")
    p.add_argument("--tol", type=float)
    p.add_argument("--N", type=int)
    p.add_argument("--M", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hardy-toeplitz",
        description="Sub-symbols and domain probes for truncated Toeplitz operators.",
        epilog="exit codes: 0 ok, 1 error, 2 negative verdict, 3 inconclusive",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("subsymbol", "compare sub-symbols of several probes"),
                       ("check", "Toeplitz, analyticity and domain checks"),
                       ("extension", "compare h_f p with T(f p)"),
                       ("stabilize", "stabilization index of partial sub-symbols")):
        _add_common(sub.add_parser(name, help=text))
    for group, text, actions in (
            ("berezin", "Berezin transform at points or along rays", ("eval", "sweep")),
            ("factorial", "domain heuristic and action of the factorial operator",
             ("domain", "apply")),
            ("lemma62", "table of the constants c_m", ("table",))):
        g = sub.add_parser(group, help=text).add_subparsers(dest="action", required=True)
        for action in actions:
            p = g.add_parser(action)
            _add_common(p)
            if group in ("factorial", "lemma62"):
                p.add_argument("--rule", help="named rule, delta:<k>, or series file")
                p.add_argument("--mmax", type=int)
    s = sub.add_parser("suite", help="run all built-in examples")
    s.add_argument("--out")
    s.add_argument("--no-timestamp", action="store_true")
    sub.add_parser("examples", help="list built-in examples")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "examples":
        for b in BUILTINS.values():
            print(f"{b.name:28s} {b.command:18s} exit {b.expected_exit}  {b.note}")
        return EXIT_OK
    if args.command == "suite":
        return run_suite(args.out, not args.no_timestamp)

    command = args.command + (f" {args.action}" if getattr(args, "action", None) else "")
    try:
        if args.config and args.example:
            raise ConfigError("use either --config or --example, not both")
        if args.config:
            cfg, stem = load_config(args.config), Path(args.config).stem
        elif args.example:
            b = builtin(args.example)
            if b.command != command:
                raise ConfigError(f"example {b.name!r} belongs to '{b.command}'")
            cfg, stem = parse_config(b.config, f"<example {b.name}>"), b.name
        else:
            cfg, stem = ConfigFile(), command.replace(" ", "-")
    except (ConfigError, KeyError) as exc:
        print(f"error: {exc.args[0] if isinstance(exc, KeyError) else exc}", file=sys.stderr)
        return EXIT_ERROR
    _apply_overrides(cfg, args)
    result = run_command(command, cfg, not args.no_timestamp)
    _emit(result, args.out, stem)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
