import json
import os
import subprocess
import sys

import pytest

from ribetor import __version__
from ribetor.cli import build_parser, main, make_config, write_atomic


def run_cli(tmp_path, *args, name="report.json"):
    out = tmp_path / name
    code = main([*args, "--out", str(out)])
    return code, out


def test_selftest_passes_and_is_deterministic(tmp_path):
    code, out = run_cli(tmp_path, "--mode", "selftest")
    assert code == 0
    code2, out2 = run_cli(tmp_path, "--mode", "selftest", name="again.json")
    assert code2 == 0
    assert out.read_bytes() == out2.read_bytes()
    report = json.loads(out.read_text())
    assert set(report) == {"config", "cases", "summary", "version"}
    assert report["version"] == __version__
    assert report["summary"]["failed"] == 0
    assert report["config"]["seed"] == 0x5EED
    ids = [c["id"] for c in report["cases"]]
    assert ids == sorted(ids)
    assert set(report["cases"][0]) == {"id", "kind", "inputs", "outputs", "pass", "detail"}


def test_algebraic_preset_j0(tmp_path):
    code, out = run_cli(tmp_path, "--mode", "verify-ribet-algebraic", "--preset", "j0",
                        "--endo", "omega", "--n", "5")
    assert code == 0
    report = json.loads(out.read_text())
    ident = [c for c in report["cases"] if c["kind"] == "ribet-identity"]
    assert len(ident) == 20 and all(c["pass"] for c in ident)
    value = ident[0]["outputs"]["n_times_t"]
    assert value == ident[0]["outputs"]["weil"]
    assert set(value) == {"p", "k", "coeffs"}


def test_hypothesis_violation_exits_2(tmp_path, capsys):
    code, out = run_cli(tmp_path, "--mode", "search-order-n2", "--preset", "j0", "--n", "3")
    assert code == 2
    assert "prime to deg(α)" in capsys.readouterr().err
    assert not out.exists()


def test_search_order_n2(tmp_path):
    code, out = run_cli(tmp_path, "--mode", "search-order-n2", "--preset", "j0", "--n", "5")
    assert code == 0
    [case] = json.loads(out.read_text())["cases"]
    assert case["outputs"]["order"] == 25


def test_orbit_sample_csv(tmp_path):
    code, out = run_cli(tmp_path, "--mode", "orbit-sample", "--n", "3", "--fz", "1,0,0,0",
                        "--format", "csv", name="orbit.csv")
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "k,fiber_num,fiber_den,base_num,base_den"
    assert len(lines) == 10
    assert lines[-1].startswith("9,0,1,")


def test_pairing_table_csv(tmp_path):
    code, out = run_cli(tmp_path, "--mode", "pairing-table", "--preset", "j0", "--n", "5",
                        "--format", "csv", name="table.csv")
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,k,a,b,c,d,value,order,agree"
    assert len(lines) == 17
    assert all(line.endswith(",1") for line in lines[1:])


@pytest.mark.parametrize(
    "args",
    [
        ["--mode", "selftest", "--format", "csv"],
        ["--mode", "pairing-table", "--p", "15"],
        ["--mode", "verify-ribet-algebraic", "--preset", "j0", "--endo", "i"],
        ["--mode", "verify-ribet-algebraic", "--endo", "2"],
        ["--mode", "verify-ribet-algebraic", "--p", "239", "--preset", "j0"],
        ["--mode", "orbit-sample", "--fz", "1,2,3"],
        ["--mode", "orbit-sample", "--fz", "1,0,0,0", "--d", "2"],
        ["--mode", "orbit-sample", "--n", "a,b"],
        ["--mode", "selftest", "--seed", "nope"],
        ["--mode", "selftest", "--seed", str(2**64)],
    ],
)
def test_config_errors_exit_2(tmp_path, args):
    code, out = run_cli(tmp_path, *args)
    assert code == 2
    assert not out.exists()


def test_env_seed_overrides_flag():
    args = build_parser().parse_args(["--seed", "5"])
    assert make_config(args, {}).seed == 5
    assert make_config(args, {"RIBETOR_SEED": "0x10"}).seed == 16


def test_defaults():
    cfg = make_config(build_parser().parse_args([]), {})
    assert cfg.mode == "selftest" and cfg.seed == 0x5EED
    cfg = make_config(build_parser().parse_args(["--preset", "j1728",
                                                 "--mode", "verify-ribet-algebraic"]), {})
    assert (cfg.p, cfg.a4, cfg.a6, cfg.endo) == (277, 1, 0, "i")
    assert cfg.n == (3, 5, 7, 9)


def test_check_failure_exits_1(tmp_path, monkeypatch):
    import ribetor.cli as cli
    from ribetor.suites import Case

    monkeypatch.setitem(cli.RUNNERS, "selftest",
                        lambda cfg: ([Case("x", "forced", {}, {}, False)], None))
    code, out = run_cli(tmp_path, "--mode", "selftest")
    assert code == 1
    assert json.loads(out.read_text())["summary"] == {"total": 1, "passed": 0, "failed": 1}


def test_atomic_write_leaves_no_temp_files(tmp_path):
    target = tmp_path / "r.json"
    write_atomic(str(target), "one")
    write_atomic(str(target), "two")
    assert target.read_text() == "two"
    assert os.listdir(tmp_path) == ["r.json"]


def test_module_entry_point(tmp_path):
    out = tmp_path / "o.json"
    res = subprocess.run([sys.executable, "-m", "ribetor", "--mode", "orbit-sample", "--out", str(out)],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(out.read_text())["summary"]["failed"] == 0
