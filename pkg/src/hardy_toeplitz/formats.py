"""Text formats: series and matrix files, run configs, reports.

All numbers are written with 17 significant digits, which round-trips
IEEE doubles exactly; Python's float formatting ignores the locale.
"""
from __future__ import annotations

import ast
import datetime as _dt
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .circle_fourier import LaurentSeries
from .errors import ConfigError
from .hardy_ops import TruncatedOperator


def fmt(x) -> str:
    """17-significant-digit decimal; complex as ``re im``."""
    if isinstance(x, (complex, np.complexfloating)):
        return f"{x.real:.17g} {x.imag:.17g}"
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.17g}"
    if isinstance(x, (tuple, list)):
        return " ".join(fmt(v) for v in x)
    return str(x)


def _open_text(path_or_stream, mode):
    if hasattr(path_or_stream, "read" if "r" in mode else "write"):
        return path_or_stream, False
    return open(path_or_stream, mode, encoding="utf-8", newline="\n"), True


# -- series files ---------------------------------------------------------------

def write_series(dest, s: LaurentSeries) -> None:
    """``n_min = k``, ``count = w``, then one ``re im`` pair per line."""
    fh, close = _open_text(dest, "w")
    try:
        fh.write(f"n_min = {s.n_min}\ncount = {s.width}\n")
        for c in s.coeffs:
            fh.write(fmt(complex(c)) + "\n")
    finally:
        if close:
            fh.close()


def read_series(src) -> LaurentSeries:
    fh, close = _open_text(src, "r")
    try:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    finally:
        if close:
            fh.close()
    header = {}
    for ln in lines[:2]:
        key, _, val = ln.partition("=")
        header[key.strip()] = int(val)
    if set(header) != {"n_min", "count"}:
        raise ValueError("series file needs 'n_min = ' and 'count = ' header lines")
    pairs = [ln.split() for ln in lines[2:]]
    if len(pairs) != header["count"] or any(len(p) != 2 for p in pairs):
        raise ValueError(f"expected {header['count']} 're im' lines")
    return LaurentSeries([complex(float(r), float(i)) for r, i in pairs], header["n_min"])


# -- matrix files ---------------------------------------------------------------

def write_matrix(dest, T: TruncatedOperator) -> None:
    """Header line ``N``, then N rows of N ``re im`` pairs."""
    fh, close = _open_text(dest, "w")
    try:
        fh.write(f"{T.N}\n")
        for row in T.entries:
            fh.write(" ".join(fmt(complex(c)) for c in row) + "\n")
    finally:
        if close:
            fh.close()


def read_matrix(src, exact_band=None) -> TruncatedOperator:
    fh, close = _open_text(src, "r")
    try:
        lines = [ln.split() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    finally:
        if close:
            fh.close()
    if not lines or len(lines[0]) != 1:
        raise ValueError("matrix file must start with a line holding N")
    N = int(lines[0][0])
    rows = lines[1:]
    if len(rows) != N or any(len(r) != 2 * N for r in rows):
        raise ValueError(f"expected {N} rows of {2 * N} numbers")
    vals = np.array(rows, dtype=float)
    return TruncatedOperator(vals[:, 0::2] + 1j * vals[:, 1::2], exact_band=exact_band,
                             label="matrix-file")


# -- config files ---------------------------------------------------------------

@dataclass
class ConfigValue:
    text: str
    lineno: int


@dataclass
class ConfigFile:
    """Flat ``[section]`` / ``key = value`` file with line numbers kept per key."""

    sections: dict = field(default_factory=dict)
    path: str | None = None

    def has(self, section, key) -> bool:
        return key in self.sections.get(section, {})

    def raw(self, section, key) -> ConfigValue | None:
        return self.sections.get(section, {}).get(key)

    def error(self, message, section=None, key=None) -> ConfigError:
        v = self.raw(section, key) if section else None
        return ConfigError(message, v.lineno if v else None, self.path)

    def get(self, section, key, default=None, convert=str):
        v = self.raw(section, key)
        if v is None:
            return default
        try:
            return convert(v.text)
        except (ValueError, SyntaxError, TypeError, KeyError) as exc:
            raise ConfigError(f"bad value for {section}.{key}: {exc}", v.lineno, self.path) from None

    def set_default(self, section, key, text):
        self.sections.setdefault(section, {}).setdefault(key, ConfigValue(str(text), 0))

    def override(self, section, key, text):
        self.sections.setdefault(section, {})[key] = ConfigValue(str(text), 0)


def parse_config(text: str, path: str | None = None) -> ConfigFile:
    cfg = ConfigFile(path=path)
    section = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            section = stripped[1:-1].strip()
            if not section:
                raise ConfigError("empty section name", lineno, path)
            cfg.sections.setdefault(section, {})
            continue
        if "=" not in stripped:
            raise ConfigError(f"expected 'key = value', got {stripped!r}", lineno, path)
        if section is None:
            raise ConfigError("key outside of any [section]", lineno, path)
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key in cfg.sections[section]:
            raise ConfigError(f"duplicate key {section}.{key}", lineno, path)
        cfg.sections[section][key] = ConfigValue(value.strip(), lineno)
    return cfg


def load_config(path) -> ConfigFile:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    return parse_config(p.read_text(encoding="utf-8"), str(p))


def literal(text: str):
    """Python literal (dicts, lists, complex numbers) via :func:`ast.literal_eval`."""
    return ast.literal_eval(text)


# -- reports ---------------------------------------------------------------------

@dataclass
class Report:
    """Ordered sections of ``key = value`` lines, rendered deterministically."""

    title: str
    sections: list = field(default_factory=list)

    def section(self, name: str) -> list:
        entries: list = []
        self.sections.append((name, entries))
        return entries

    def render(self, timestamp: bool = True) -> str:
        out = []
        if timestamp:
            now = _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()
            out.append(f"# generated {now}")
        out.append(f"# {self.title}")
        for name, entries in self.sections:
            out.append(f"[{name}]")
            out.extend(f"{k} = {fmt(v)}" for k, v in entries)
        return "\n".join(out) + "\n"


def csv_text(header, rows) -> str:
    lines = [",".join(header)]
    for r in rows:
        lines.append(",".join(fmt(v) for v in r))
    return "\n".join(lines) + "\n"
