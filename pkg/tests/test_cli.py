import os
import subprocess
import sys

import numpy as np
import pytest

from hardy_toeplitz.builtins import BUILTINS
from hardy_toeplitz.cli import main, run_check, run_subsymbol, run_tables
from hardy_toeplitz.formats import write_matrix
from hardy_toeplitz.hardy_ops import TruncatedOperator


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


TRIG = "[operator]\nkind = trig\nsymbol = {-1: 0.5, 0: 1, 2: 0.25j}\n[run]\nN = 32\n"


def test_subsymbol_trig_exit_0(tmp_path, capsys):
    code, out, _ = run(["subsymbol", "--config", write(tmp_path, "t.cfg", TRIG),
                        "--no-timestamp"], capsys)
    assert code == 0
    assert "verdict = unique" in out
    assert not out.startswith("# generated")


def test_subsymbol_rank_one_matrix_file_exit_2(tmp_path, capsys):
    A = np.zeros((8, 8))
    A[0, 0] = 1
    write_matrix(tmp_path / "r1.txt", TruncatedOperator(A))
    cfg = write(tmp_path, "r.cfg", "[operator]\nkind = matrix\nfile = r1.txt\n[run]\nN = 8\n"
                                  "probes = [{0: 1}, {1: 1}]\n")
    code, _, _ = run(["subsymbol", "--config", cfg, "--out", str(tmp_path / "o"),
                      "--no-timestamp"], capsys)
    assert code == 2
    report = (tmp_path / "o" / "r.txt").read_text()
    assert "verdict = not_unique" in report
    assert "witness_pair = 1 | z" in report


def test_missing_matrix_file_exit_1(tmp_path, capsys):
    cfg = write(tmp_path, "m.cfg", "[operator]\nkind = matrix\nfile = nope.txt\n")
    code, _, err = run(["subsymbol", "--config", cfg], capsys)
    assert code == 1
    assert "m.cfg:3:" in err and "not found" in err


def test_missing_config_exit_1(tmp_path, capsys):
    code, _, err = run(["check", "--config", str(tmp_path / "none.cfg")], capsys)
    assert code == 1 and "not found" in err


def test_config_parse_error_is_line_numbered(tmp_path, capsys):
    cfg = write(tmp_path, "bad.cfg", "[operator]\nkind = trig\nsymbol {0: 1}\n")
    code, _, err = run(["check", "--config", cfg], capsys)
    assert code == 1
    assert "bad.cfg:3:" in err


def test_bad_value_is_line_numbered(tmp_path, capsys):
    cfg = write(tmp_path, "bad.cfg", "[operator]\nkind = trig\nsymbol = {0: 1\n")
    code, _, err = run(["check", "--config", cfg], capsys)
    assert code == 1 and "bad.cfg:3:" in err


def test_run_config_invariants(tmp_path, capsys):
    small = write(tmp_path, "s.cfg", "[operator]\nkind = shift\n[run]\nN = 3\n")
    code, _, err = run(["check", "--config", small], capsys)
    assert code == 1 and "s.cfg:4:" in err
    coarse = write(tmp_path, "c.cfg", "[operator]\nkind = shift\n[run]\nN = 8\nM = 10\n")
    code, _, err = run(["subsymbol", "--config", coarse], capsys)
    assert code == 1 and "c.cfg:5:" in err
    ok = write(tmp_path, "o.cfg", "[operator]\nkind = shift\n[run]\nN = 8\nM = 10\n"
                                  "allow_coarse_grid = true\n")
    assert run(["subsymbol", "--config", ok], capsys)[0] == 0


def test_check_shift(capsys):
    code, out, _ = run(["check", "--example", "shift", "--no-timestamp"], capsys)
    assert code == 0
    assert "toeplitz = yes" in out and "analytic = yes" in out


def test_check_factorial_condition_one_fails(capsys):
    code, out, _ = run(["check", "--example", "factorial", "--no-timestamp"], capsys)
    assert code == 2
    assert "condition_1 = fail" in out
    assert "terms_not_vanishing" in out


def test_check_perturbed_reports_location(capsys):
    code, out, _ = run(["check", "--example", "perturbed", "--no-timestamp"], capsys)
    assert code == 2
    assert "toeplitz = no" in out
    assert "location = 4 8" in out or "location = 5 9" in out


def test_check_inconclusive_exit_3(tmp_path, capsys):
    cfg = write(tmp_path, "g.cfg", "[operator]\nkind = gamma\ngamma = factorial-geometric:2\n"
                                   "[run]\nN = 8\nK_max = 16384\nsamples = alternating-harmonic\n")
    code, out, _ = run(["check", "--config", cfg, "--no-timestamp"], capsys)
    assert code == 3
    assert "verdict = inconclusive" in out


def test_example_command_mismatch(capsys):
    code, _, err = run(["check", "--example", "trig"], capsys)
    assert code == 1 and "belongs to" in err


def test_config_and_example_are_exclusive(tmp_path, capsys):
    cfg = write(tmp_path, "t.cfg", TRIG)
    assert run(["check", "--config", cfg, "--example", "shift"], capsys)[0] == 1


def test_berezin_eval_csv(capsys):
    code, out, _ = run(["berezin", "eval", "--example", "shift-circle"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "re_w,im_w,re_value,im_value,tail_bound"
    assert len(lines) == 9
    for line in lines[1:]:
        rw, iw, rv, iv, _ = map(float, line.split(","))
        assert abs(complex(rv, iv) - complex(rw, iw)) <= 1e-15


def test_berezin_sweep(capsys):
    code, out, _ = run(["berezin", "sweep", "--example", "trig-sweep"], capsys)
    assert code == 0 and len(out.strip().splitlines()) == 10


def test_berezin_disk_violation_exit_1(tmp_path, capsys):
    cfg = write(tmp_path, "b.cfg", "[operator]\nkind = shift\n[run]\nN = 8\npoints = [1.5]\n")
    assert run(["berezin", "eval", "--config", cfg], capsys)[0] == 1


def test_factorial_domain_exit_codes(capsys):
    assert run(["factorial", "domain", "--rule", "alternating-harmonic"], capsys)[0] == 0
    code, out, _ = run(["factorial", "domain", "--rule", "paper-counterexample-shifted",
                        "--no-timestamp"], capsys)
    assert code == 2 and "decision = out_of_domain" in out and "[witness]" in out
    assert run(["factorial", "domain", "--rule", "delta:0"], capsys)[0] == 0


def test_factorial_domain_from_file(tmp_path, capsys):
    # a finite table is zero past its end, so the series converges to its total
    from hardy_toeplitz.circle_fourier import LaurentSeries
    from hardy_toeplitz.formats import write_series
    write_series(tmp_path / "rule.txt", LaurentSeries([0.5, 0.25, -1.0], 1))
    code, out, _ = run(["factorial", "domain", "--rule", str(tmp_path / "rule.txt"),
                        "--no-timestamp"], capsys)
    assert code == 0
    assert "limit_estimate = -0.25 0" in out


def test_unknown_rule_exit_1(capsys):
    code, _, err = run(["factorial", "domain", "--rule", "no-such-rule"], capsys)
    assert code == 1 and "unknown rule" in err


def test_factorial_apply_refusal_exit_2(capsys):
    code, _, err = run(["factorial", "apply", "--rule", "paper-counterexample-shifted",
                        "--mmax", "3"], capsys)
    assert code == 2 and "refused" in err


def test_lemma62_table(capsys):
    code, out, _ = run(["lemma62", "table", "--mmax", "50"], capsys)
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert len(rows) == 49
    assert all(float(c) <= float(b) for _, c, b, _ in rows)


def test_extension_and_stabilize(capsys):
    code, out, _ = run(["extension", "--example", "trig-extension", "--no-timestamp"], capsys)
    assert code == 0 and "agrees = yes" in out
    code, out, _ = run(["stabilize", "--example", "trig-stabilize"], capsys)
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert [int(r[1]) for r in rows] == [0, 1, 2, 3, 4]
    assert all(r[4] == "yes" and int(r[2]) <= int(r[3]) for r in rows)


def test_stabilize_negative_exit_2(tmp_path, capsys):
    # N = 4 caps the depth at 2 while h_(-1) and h_(-2) both feed P(h p) for deg p = 2
    cfg = write(tmp_path, "f.cfg", "[operator]\nkind = trig\nsymbol = {-2: 1, -1: 1, 0: 1}\n"
                                   "[run]\nN = 4\nf = {0: 1, 1: 1}\npolys = [{0: 1, 1: 1, 2: 1}]\n")
    code, out, _ = run(["stabilize", "--config", cfg], capsys)
    assert code == 2
    assert out.strip().splitlines()[1].split(",")[2:5] == ["none", "3", "no"]


def test_overrides(capsys):
    code, out, _ = run(["check", "--example", "shift", "--N", "6", "--no-timestamp"], capsys)
    assert code == 0 and "N = 6" in out


def test_hs_seed_controls_random_inputs(tmp_path, monkeypatch, capsys):
    cfg = write(tmp_path, "r.cfg", "[operator]\nkind = random-trig\nband = 3\n[run]\nN = 16\n"
                                   "probes = random:3\n")
    monkeypatch.setenv("HS_SEED", "7")
    a = run(["subsymbol", "--config", cfg, "--no-timestamp"], capsys)
    b = run(["subsymbol", "--config", cfg, "--no-timestamp"], capsys)
    monkeypatch.setenv("HS_SEED", "8")
    c = run(["subsymbol", "--config", cfg, "--no-timestamp"], capsys)
    assert a == b and a[0] == 0
    assert a[1] != c[1]


def test_timestamp_header(capsys):
    _, out, _ = run(["check", "--example", "shift"], capsys)
    assert out.startswith("# generated ")


def test_examples_listing(capsys):
    code, out, _ = run(["examples"], capsys)
    assert code == 0
    assert all(name in out for name in BUILTINS)


def test_suite_matches_expected_exits(tmp_path, capsys):
    code, _, _ = run(["suite", "--out", str(tmp_path), "--no-timestamp"], capsys)
    assert code == 0
    summary = (tmp_path / "suite.csv").read_text()
    assert "MISMATCH" not in summary


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hardy_toeplitz", "lemma62", "table",
                          "--mmax", "5"], capture_output=True, text=True,
                         env={**os.environ, "LC_ALL": "de_DE.UTF-8"})
    assert res.returncode == 0
    assert res.stdout.splitlines()[1].startswith("2,0.64493406684822")


def test_run_functions_write_reports(tmp_path, capsys):
    cfg = tmp_path / "toep.cfg"
    cfg.write_text("[operator]\nkind = shift\n[run]\nN = 16\n")
    assert run_check(str(cfg), str(tmp_path / "out"), timestamp=False) == 0
    assert (tmp_path / "out" / "toep.txt").read_text().startswith("# ")
    text = "[operator]\nkind = rank-one\n[run]\nN = 16\nprobes = [{0: 1}, {1: 1}]\n"
    assert run_subsymbol(text, timestamp=False) == 2
    assert "not_unique" in capsys.readouterr().out


def test_run_tables_byte_identical(tmp_path):
    text = "[run]\nmmax = 50\n"
    assert run_tables(text, "lemma62", str(tmp_path / "a"), timestamp=False) == 0
    assert run_tables(text, "lemma62", str(tmp_path / "b"), timestamp=False) == 0
    first = (tmp_path / "a" / "run.csv").read_bytes()
    assert first == (tmp_path / "b" / "run.csv").read_bytes()
    assert len(first.decode().splitlines()) == 50  # header + 49 rows


def test_run_tables_rejects_unknown_table():
    with pytest.raises(ValueError):
        run_tables("[run]\n", "nope")


def test_run_functions_missing_config(tmp_path, capsys):
    assert run_check(str(tmp_path / "absent.cfg")) == 1
    assert "not found" in capsys.readouterr().err
