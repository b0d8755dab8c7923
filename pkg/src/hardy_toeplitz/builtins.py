"""Named example configurations, runnable with ``--example <name>``.

Each entry is ordinary config text, so built-ins exercise the same parser
as user files.  ``expected_exit`` is what ``suite`` checks against.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Builtin:
    name: str
    command: str  # e.g. "subsymbol" or "berezin eval"
    config: str
    expected_exit: int
    note: str = ""


_TRIG_SYMBOL = "{-2: 0.25, -1: -0.5j, 0: 1, 1: 0.5, 3: 0.125+0.25j}"

_ENTRIES = [
    Builtin("trig", "subsymbol", f"""
[operator]
kind = trig
symbol = {_TRIG_SYMBOL}
[run]
N = 64
""", 0, "banded symbol: every probe recovers the same sub-symbol"),
    Builtin("rank-one", "subsymbol", """
[operator]
kind = rank-one
[run]
N = 16
probes = [{0: 1}, {1: 1}]
""", 2, "diag(1, 0, ...): R_1 = 1 but R_z = 0"),
    Builtin("smirnov", "subsymbol", """
[operator]
kind = smirnov
pair = canonical
[run]
N = 64
""", 0, "analytic ratio b/a with geometrically decaying coefficients"),
    Builtin("shift", "check", """
[operator]
kind = shift
[run]
N = 16
""", 0, "T_z: Toeplitz and analytic"),
    Builtin("coshift", "check", """
[operator]
kind = coshift
[run]
N = 16
""", 0, "T_conj(z): Toeplitz, not analytic"),
    Builtin("perturbed", "check", f"""
[operator]
kind = perturbed
symbol = {_TRIG_SYMBOL}
perturb = (5, 9, 0.001)
[run]
N = 32
""", 2, "one entry moved off its diagonal"),
    Builtin("factorial", "check", """
[operator]
kind = factorial
[run]
N = 16
samples = alternating-harmonic, geometric, delta:1
""", 2, "z f leaves the domain for the alternating harmonic rule"),
    Builtin("smirnov-check", "check", """
[operator]
kind = smirnov
pair = canonical
[run]
N = 32
""", 0, "multiplication by b/a with samples a p"),
    Builtin("cayley", "check", """
[operator]
kind = smirnov
pair = cayley
[run]
N = 32
""", 1, "denominator vanishes at z = -1: refused"),
    Builtin("shift-circle", "berezin eval", """
[operator]
kind = shift
[run]
N = 64
radius = 0.3
count = 8
""", 0, "Berezin transform of T_z equals w"),
    Builtin("trig-sweep", "berezin sweep", f"""
[operator]
kind = trig
symbol = {_TRIG_SYMBOL}
[run]
N = 64
theta = [0.0, 1.5707963267948966, 3.141592653589793]
""", 0, "radial diagnostic at r = 0.5, 0.7, 0.9"),
    Builtin("alternating-harmonic", "factorial domain", """
[run]
rule = alternating-harmonic
""", 0),
    Builtin("shifted-counterexample", "factorial domain", """
[run]
rule = shifted-alternating-harmonic
""", 2, "terms do not tend to zero"),
    Builtin("geometric", "factorial domain", """
[run]
rule = geometric
""", 0),
    Builtin("alternating-harmonic-apply", "factorial apply", """
[run]
rule = alternating-harmonic
mmax = 8
""", 0),
    Builtin("table", "lemma62 table", """
[run]
mmax = 50
""", 0),
    Builtin("trig-extension", "extension", f"""
[operator]
kind = trig
symbol = {_TRIG_SYMBOL}
[run]
N = 64
f = {{0: 2, 1: 1}}
polys = [{{0: 1}}, {{1: 1}}, {{2: 1}}, {{3: 1}}]
""", 0),
    Builtin("smirnov-extension", "extension", """
[operator]
kind = smirnov
pair = canonical
[run]
N = 64
f = denominator
polys = [{0: 1}, {1: 1}, {2: 1}, {3: 1}]
""", 0),
    Builtin("trig-stabilize", "stabilize", f"""
[operator]
kind = trig
symbol = {_TRIG_SYMBOL}
[run]
N = 32
f = {{0: 2, 1: 1}}
polys = [{{0: 1}}, {{0: 1, 1: 1}}, {{0: 1, 2: -0.5}}, {{3: 1, 0: 0.25}}, {{0: 1, 1: 1, 2: 1, 3: 1, 4: 1}}]
""", 0, "N* <= deg p + 1 for deg p = 0..4"),
]

BUILTINS = {b.name: b for b in _ENTRIES}


def builtin(name: str) -> Builtin:
    try:
        return BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(BUILTINS)}") from None
