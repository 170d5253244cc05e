import csv
import io
import json
import math
from pathlib import Path

import pytest

from bayes_pricer.cli import EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_CONSISTENCY, main
from bayes_pricer.config import ConfigError, parse_config
from bayes_pricer.core import MarketParams
from bayes_pricer.measures import DiscretePriceLaw
from bayes_pricer.models.mixture import mixture_price
from bayes_pricer.models.specs import GbmSpec, HyperbolicSpec, MixtureSpec
from bayes_pricer.tables import (N_WEIGHTS, compute_table, format_table, table_cell,
                                 thread_count)

TOY = """# two-point law
model = discrete
atoms = 2:0.3333333333333333; 0.5:0.6666666666666667
s0 = 1
strike = 1
interest = 0
T = 1
"""
MIXTURE = "model = mixture\nweights = 0.5, 0.5\nscales = 1, 2\ns0 = 60\nstrike = 70\n" \
          "interest = 0.04\nT = 0.1\n"
GBM = "model = gbm\nsigma = 0.2\ns0 = 100\nstrike = 100\ninterest = 0.05\nT = 1\n"


def write(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_config_models():
    assert isinstance(parse_config(TOY).model, DiscretePriceLaw)
    cfg = parse_config(MIXTURE)
    assert cfg.model == MixtureSpec((0.5, 0.5), (1.0, 2.0))
    assert cfg.market == MarketParams(60, 70, 0.04, 0.0, 0.1)
    assert parse_config(GBM + "abs_tol = 1e-12\nmax_subdivisions = 50\n").quadrature.abs_tol == 1e-12
    assert parse_config("model = hyperbolic\nzeta = 2\ndelta = 1\ns0=1\nstrike=1\ninterest=0\n"
                        "T=1\n").model == HyperbolicSpec(2.0, 1.0)


@pytest.mark.parametrize("text,line,fragment", [
    (GBM + "colour = red\n", 7, "unknown key"),
    (GBM + "sigma = 0.3\n", 7, "duplicate"),
    ("model = gbm\nsigma = abc\n", 2, "not a number"),
    ("model = gbm\njust text\n", 2, "expected 'key = value'"),
    ("model = gbm\nsigma = -1\ns0=1\nstrike=1\ninterest=0\nT=1\n", 2, "sigma"),
    ("model = warp\n", 1, "model must be"),
    ("model = gbm\nsigma = 1\n", 0, "missing required key"),
    (GBM + "zeta = 2\n", 7, "does not apply"),
    (MIXTURE.replace("0.5, 0.5", "0.5, 0.6"), 2, "sum to 1"),
    (TOY.replace("2:0.33", "2-0.33"), 3, "price:prob"),
    (GBM + "abs_tol = 0\n", 7, "abs_tol"),
])
def test_config_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ConfigError) as info:
        parse_config(text, "cfg")
    assert info.value.line == line
    assert str(info.value).startswith(f"cfg:{line}:")
    assert fragment in str(info.value)


def test_price_toy_json(tmp_path, capsys):
    code, out, _ = run(capsys, "price", "--config", write(tmp_path, TOY))
    assert code == 0
    record = json.loads(out)
    assert record["price"] == pytest.approx(1 / 3, abs=1e-10)
    assert (record["barrier_interval_lo"], record["barrier_interval_hi"]) == (0.5, 2.0)


def test_price_toy_unbounded_interval_is_null(tmp_path, capsys):
    code, out, _ = run(capsys, "price", "--config",
                       write(tmp_path, TOY.replace("strike = 1", "strike = 2.5")))
    assert code == 0
    assert json.loads(out)["barrier_interval_hi"] is None


def test_price_deterministic_gbm(tmp_path, capsys):
    text = "model = gbm\nsigma = 1e-6\ns0 = 100\nstrike = 80\ninterest = 0\nT = 1\n"
    code, out, _ = run(capsys, "price", "--config", write(tmp_path, text))
    assert code == 0 and json.loads(out)["price"] == pytest.approx(20.0, abs=1e-4)


def test_price_mixture_matches_library(tmp_path, capsys):
    code, out, _ = run(capsys, "price", "--config", write(tmp_path, MIXTURE))
    rec = json.loads(out)
    lib = mixture_price(MixtureSpec((0.5, 0.5), (1.0, 2.0)), MarketParams(60, 70, 0.04, 0.0, 0.1))
    assert code == 0 and rec["closed_form"] == lib
    assert rec["price"] == pytest.approx(lib, abs=1e-10)


def test_csv_and_json_agree(tmp_path, capsys):
    path = write(tmp_path, MIXTURE)
    _, js, _ = run(capsys, "price", "--config", path, "--format", "json")
    _, cs, _ = run(capsys, "price", "--config", path, "--format", "csv")
    assert "\r" not in cs
    rows = list(csv.DictReader(io.StringIO(cs)))
    assert len(rows) == 1
    for key, value in json.loads(js).items():
        if isinstance(value, float):
            assert float(rows[0][key]) == pytest.approx(value, rel=1e-12)


def test_config_error_exit_code(tmp_path, capsys):
    code, _, err = run(capsys, "price", "--config", write(tmp_path, GBM + "bogus = 1\n"))
    assert code == EXIT_CONFIG and ":7:" in err
    code, _, _ = run(capsys, "price", "--config", str(tmp_path / "missing.cfg"))
    assert code == EXIT_CONFIG


def test_mixture_with_nonzero_origin_is_config_error(tmp_path, capsys):
    code, _, err = run(capsys, "price", "--config", write(tmp_path, MIXTURE + "t0 = 0.01\nT2=1"
                                                          .replace("T2=1", "")))
    assert code == EXIT_CONFIG and "t0 = 0" in err


def test_consistency_error_exit_code(tmp_path, capsys, monkeypatch):
    import bayes_pricer.cli as cli

    monkeypatch.setattr(cli, "hyperbolic_price", lambda *a, **k: -1.0)
    text = "model = hyperbolic\nzeta = 3\ndelta = 0.5\ns0 = 100\nstrike = 100\ninterest = 0\nT = 1\n"
    code, _, err = run(capsys, "price", "--config", write(tmp_path, text))
    assert code == EXIT_CONSISTENCY and "differ" in err


def test_american_json_roundtrip(tmp_path, capsys):
    code, out, _ = run(capsys, "american", "--config", write(tmp_path, GBM + "grid_size = 32\n"))
    assert code == 0
    rec = json.loads(out)
    assert rec["price"] >= rec["european_price"] - 1e-10
    again = json.loads(json.dumps(rec))
    assert again["price"] == pytest.approx(rec["price"], rel=1e-12)
    assert len(rec["risk_curve_samples"]) == 32


def test_american_vanishing_strike(tmp_path, capsys):
    code, out, _ = run(capsys, "american", "--config",
                       write(tmp_path, GBM.replace("strike = 100", "strike = 1e-9")))
    assert code == 0 and json.loads(out)["price"] == pytest.approx(100.0, abs=1e-6)


def test_american_rejects_discrete(tmp_path, capsys):
    code, _, _ = run(capsys, "american", "--config", write(tmp_path, TOY))
    assert code == EXIT_CONFIG


@pytest.mark.parametrize("suite", ["hellinger", "fairgame", "consistency", "martingale"])
def test_check_suites_pass(capsys, suite):
    code, out, _ = run(capsys, "check", "--suite", suite)
    assert code == 0
    assert "FAIL" not in out


def test_check_failure_exit_code(capsys, monkeypatch):
    import bayes_pricer.cli as cli
    from bayes_pricer.checks import CheckResult

    monkeypatch.setattr(cli, "run_suite", lambda name: [CheckResult("broken", 1.0, 1e-8)])
    code, out, _ = run(capsys, "check", "--suite", "all")
    assert code == EXIT_CHECK_FAILED and "FAIL" in out


def test_table_cells_are_51sts():
    cells = compute_table(1, threads=1)
    assert len(cells) == 24
    assert all(0 <= c.count <= N_WEIGHTS for c in cells)
    assert [(c.T, c.a2) for c in cells] == [(c.T, c.a2) for c in compute_table(1, threads=4)]
    assert [c.count for c in cells] == [c.count for c in compute_table(1, threads=4)]


def test_table_robust_cells():
    assert table_cell(0.04, 0.1, 2.0).fraction == pytest.approx(0.7647059, abs=5e-8)
    assert table_cell(0.04, 0.2, 4.0).fraction == 0.0


def test_table_outputs(capsys):
    code, out, _ = run(capsys, "table", "--which", "1")
    assert code == 0 and "51 values" in out and "0.7647059" in out
    code, out, _ = run(capsys, "table", "--which", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 24 and float(rows[0]["interest"]) == 0.08
    code, out, _ = run(capsys, "table", "--which", "2", "--format", "json")
    assert len(json.loads(out)["cells"]) == 24


def test_format_table_seven_digits():
    text = format_table(1, compute_table(1, threads=1))
    assert "0.01960784" in text or "0.9607843" in text


@pytest.mark.parametrize("value,expected", [("3", 3), ("1", 1)])
def test_thread_env(monkeypatch, value, expected):
    monkeypatch.setenv("BAYES_PRICER_THREADS", value)
    assert thread_count() == expected


def test_thread_env_auto_and_invalid(monkeypatch):
    monkeypatch.setenv("BAYES_PRICER_THREADS", "0")
    assert thread_count() >= 1
    monkeypatch.setenv("BAYES_PRICER_THREADS", "many")
    with pytest.raises(ValueError):
        thread_count()


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "bayes_pricer", "check", "--suite", "hellinger"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
