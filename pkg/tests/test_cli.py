import json
import subprocess
import sys

import jsonschema
import pytest

from oyang.cli import (SUITES, ConfigError, RunConfig, _parser, build_config, control_delta, dumps, exit_code,
                       load_schema, main, run)


def report_for(argv, tmp_path, name="r.json"):
    out = tmp_path / name
    code = main(["check", *argv, "--out", str(out)])
    return code, out.read_text()


def test_small_suite_exit_zero(tmp_path):
    code, text = report_for(["--suite", "fusion"], tmp_path)
    assert code == 0
    rep = json.loads(text)
    jsonschema.validate(rep, load_schema())
    assert rep["summary"]["fail"] == 0
    assert all(c["elapsed_ms"] is None for c in rep["checks"])


def test_timings_flag_records_elapsed(tmp_path):
    _, text = report_for(["--suite", "fusion", "--timings"], tmp_path)
    assert all(isinstance(c["elapsed_ms"], (int, float)) for c in json.loads(text)["checks"])


@pytest.mark.parametrize("argv", [["--suite", "phi", "--beta", "1/0"], ["--suite", "phi", "--beta", "0.5"],
                                  ["--suite", "base", "--n", "0"], ["--suite", "base", "--jobs", "0"]])
def test_bad_flags_exit_two(argv, tmp_path, capsys):
    assert main(["check", *argv, "--out", str(tmp_path / "x.json")]) == 2
    assert "config error" in capsys.readouterr().err


def test_unknown_toml_key(tmp_path):
    cfg = tmp_path / "c.toml"
    cfg.write_text('suite = "fusion"\nbogus = 1\n')
    assert main(["check", "--config", str(cfg)]) == 2


def test_float_in_toml(tmp_path):
    cfg = tmp_path / "c.toml"
    cfg.write_text('suite = "phi"\nbeta = 0.5\n')
    assert main(["check", "--config", str(cfg)]) == 2


def test_flags_override_toml_and_env(tmp_path):
    cfg = tmp_path / "c.toml"
    cfg.write_text('[check]\nsuite = "phi"\nbeta = "2"\nseed = 4\nnegative-controls = true\n')
    args = _parser().parse_args(["check", "--config", str(cfg), "--beta", "1/2"])
    rc = build_config(args, environ={"OYANG_JOBS": "3"})
    assert rc.suite == "phi" and rc.seed == 4 and rc.jobs == 3 and rc.negative_controls
    assert str(rc.beta) == "1/2"
    args = _parser().parse_args(["check", "--config", str(cfg), "--jobs", "1"])
    assert build_config(args, environ={"OYANG_JOBS": "3"}).jobs == 1
    with pytest.raises(ConfigError):
        build_config(_parser().parse_args(["check"]), environ={"OYANG_JOBS": "many"})


def test_config_public_omits_runtime_knobs():
    pub = RunConfig(suite="ybe", jobs=2, timings=True).public()
    assert "jobs" not in pub and "timings" not in pub and "out" not in pub


def test_list_suites(capsys):
    assert main(["check", "--list"]) == 0
    assert capsys.readouterr().out.split() == list(SUITES) + ["all"]


@pytest.mark.parametrize("suite", ["ybe", "eval-auto", "dickson-rtt"])
def test_seeded_output_is_byte_identical(suite, tmp_path):
    _, a = report_for(["--suite", suite, "--seed", "7"], tmp_path, "a.json")
    _, b = report_for(["--suite", suite, "--seed", "7"], tmp_path, "b.json")
    _, c = report_for(["--suite", suite, "--seed", "8"], tmp_path, "c.json")
    assert a == b
    assert a != c


def test_parallel_matches_serial():
    a = dumps(run(RunConfig(suite="phi", jobs=1)))
    b = dumps(run(RunConfig(suite="phi", jobs=2)))
    assert a == b


def test_negative_controls_flip_exit_code(tmp_path):
    code, text = report_for(["--suite", "ybe", "--negative-controls"], tmp_path)
    rep = json.loads(text)
    assert code == 0
    assert rep["negative_controls"]["ybe"]["failed"]
    assert exit_code(rep) == 0


def test_control_delta_is_seeded():
    assert control_delta(0, "ybe") == control_delta(0, "ybe")
    assert 0 < control_delta(3, "base") < 1


def test_console_script_entry(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run([sys.executable, "-m", "oyang.cli", "check", "--suite", "fused-rtt", "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "fused-rtt:" in proc.stderr
