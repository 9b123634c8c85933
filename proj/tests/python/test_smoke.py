import json
import math
import os
import subprocess
from pathlib import Path

import pytest

import relifit

SCHEMA_DIR = Path(os.environ.get("RELIFIT_SCHEMA_DIR", Path(__file__).parents[2] / "schema"))
CLI = os.environ.get("RELIFIT_CLI")


def test_gamma_mu():
    assert relifit.gamma_from_mu(0.5) == 1.5
    assert relifit.mu_from_gamma(1.5) == pytest.approx(0.5, abs=1e-15)
    assert abs(relifit.gamma_from_mu(0.6787) - 1.1521) < 1e-4
    with pytest.raises(ValueError):
        relifit.gamma_from_mu(1.5)


def test_hazard_and_llf():
    spec = relifit.ModelSpec("jm", phi=0.1, n_initial=3)
    assert relifit.hazard(spec, relifit.IntervalContext(1)) == pytest.approx(0.3)
    series = relifit.FailureSeries("r", [1.0, 1.0])
    expected = math.log(0.3) - 0.3 + math.log(0.2) - 0.2
    assert relifit.log_likelihood(spec, series) == pytest.approx(expected, abs=1e-14)
    assert relifit.llf_gradient(spec, series)["phi"] == pytest.approx(15.0)
    assert relifit.log_likelihood(relifit.ModelSpec("jm", 0.1, 1.0), series) is None


def test_proposed_hazard():
    spec = relifit.ModelSpec(
        relifit.ModelKind.Proposed, 0.01, 10,
        debug=relifit.DebugProbs(0.95, 0.03), modulation=relifit.Modulation.from_gamma(2.0))
    assert relifit.hazard(spec, relifit.IntervalContext(3, 2, 1.0)) == pytest.approx(0.0816)


def test_debug_probs_order():
    with pytest.raises(ValueError, match="p > r"):
        relifit.DebugProbs(0.03, 0.95)


def test_minimize_python_objective():
    cfg = relifit.SwarmConfig()
    cfg.seed = 4
    cfg.max_iters = 300
    res = relifit.minimize(lambda x: (x[0] - 1) ** 2 + (x[1] - 2) ** 2,
                           [(-5, 5, "linear"), (-5, 5, "linear")], cfg)
    assert res["best_x"] == pytest.approx([1, 2], abs=1e-2)
    assert all(b <= a for a, b in zip(res["trace"], res["trace"][1:]))
    assert relifit.mass_distribution([1, 2, 3]) == pytest.approx([2 / 3, 1 / 3, 0])


def test_simulate_fit_schema():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((SCHEMA_DIR / "fitresult.schema.json").read_text())
    series = relifit.simulate_series(relifit.ModelSpec("jm", 0.001, 50), 40, 7, "4.1")
    assert len(series) == 40
    for model in ["jm", "sw", "goi", "mahapatra", "msw", "proposed"]:
        doc = relifit.fit_result(series, model, seed=1, iters=150)
        jsonschema.validate(doc, schema)
        assert doc["feasible"]
        assert doc["release"] == "4.1"
    a = relifit.fit(series, "proposed", seed=9, iters=100)
    b = relifit.fit(series, "proposed", seed=9, iters=100)
    assert a == b


def test_compare_and_csv(tmp_path):
    releases = [relifit.simulate_series(relifit.ModelSpec("jm", 0.002, 30), 20, s, f"1.{s}")
                for s in (1, 2)]
    report = json.loads(relifit.compare(releases, ["jm", "sw"], iters=100))
    assert [r["release"] for r in report["releases"]] == ["1.1", "1.2"]
    assert sum(w["wins"] for w in report["win_rates"]) == 2
    md = relifit.compare(releases, ["jm"], format="md", iters=50)
    assert "| Sr. No. | Model | Estimated Parameter values | SSE | MSE |" in md

    path = tmp_path / "data.csv"
    text = relifit.failure_csv(releases, unit="hours")
    path.write_text(text)
    loaded = relifit.load_failure_csv(str(path))
    assert relifit.failure_csv(loaded, unit="hours") == text
    assert loaded[1].t == releases[1].t


@pytest.mark.skipif(not CLI, reason="CLI path not provided")
def test_cli_outputs_are_deterministic_and_valid(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((SCHEMA_DIR / "fitresult.schema.json").read_text())
    data = tmp_path / "d.csv"
    subprocess.run([CLI, "simulate", "--model", "jm", "--phi", "0.001", "--N", "50",
                    "--count", "30", "--seed", "5", "--out", str(data)], check=True)
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        subprocess.run([CLI, "fit", "--data", str(data), "--model", "proposed",
                        "--estimate-gamma", "--seed", "42", "--iters", "200", "--out", str(out)],
                       check=True)
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    jsonschema.validate(json.loads(outs[0]), schema)

    bad = subprocess.run([CLI, "gamma", "--mu", "1.5"], capture_output=True, text=True)
    assert bad.returncode == 2
    assert "error[E_USAGE]" in bad.stderr
