import json

import pytest

from expsieve.cli import EXIT_MISMATCH, EXIT_MISSING, EXIT_OK, EXIT_RESOURCE, EXIT_VALIDATION, main, verify
from expsieve.config import ConfigError, ExperimentConfig
from expsieve.primes import OrderDatabase

VSUM = {
    "command": "vsum",
    "lambda": 2,
    "X": 100,
    "Delta": 10,
    "T": 32,
    "S": 1000,
    "sequence": {"kind": "random", "seed": 7},
    "weights": {"kind": "ones"},
}


def write(tmp_path, cfg, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


def run_cli(tmp_path, cfg, out="out", *extra):
    cmd = cfg["command"]
    return main([cmd, "--config", write(tmp_path, cfg), "--out", str(tmp_path / out), *extra])


def test_vsum_example(tmp_path):
    assert run_cli(tmp_path, VSUM) == EXIT_OK
    rep = json.loads((tmp_path / "out" / "vsum_report.json").read_text())
    assert rep["value_V"] <= rep["trivial_bound"] == rep["n_primes"] * 1024
    assert rep["per_prime_csv_path"] == "vsum_per_prime.csv"
    lines = (tmp_path / "out" / "vsum_per_prime.csv").read_text().splitlines()
    assert lines[0] == "# expsieve vsum v1"
    assert lines[1] == "p,t_p,tau_pm1,a_p,m_p"
    assert len(lines) == 2 + rep["n_primes"]
    assert {b["theorem"] for b in rep["bound_reports"]} == {"thm1", "thm2"}


def test_orders_example(tmp_path):
    cfg = {"command": "orders", "lambda": 2, "X": 10}
    assert run_cli(tmp_path, cfg) == EXIT_OK
    db = OrderDatabase.load(tmp_path / "out" / "orders_l2_X10.db")
    assert db.records == [(3, 2, 2), (5, 4, 3), (7, 3, 4)]


def test_missing_seed_names_field(tmp_path, capsys):
    cfg = dict(VSUM, sequence={"kind": "random"})
    assert run_cli(tmp_path, cfg) == EXIT_VALIDATION
    assert "sequence.seed" in capsys.readouterr().err
    with pytest.raises(ConfigError) as err:
        ExperimentConfig.from_dict(dict(VSUM, weights={"kind": "signs"}))
    assert any(e.startswith("weights.seed") for e in err.value.errors)


def test_validation_errors(tmp_path):
    with pytest.raises(ConfigError) as err:
        ExperimentConfig.from_dict({"command": "vsum", "lambda": 1, "X": "big"})
    fields = {e.split(":")[0] for e in err.value.errors}
    assert {"lambda", "X", "T", "sequence"} <= fields
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["orders", "--config", str(bad)]) == EXIT_VALIDATION


def test_resource_cap_exit_code(tmp_path):
    cfg = {"command": "orders", "lambda": 2, "X": 2 * 10**9}
    assert run_cli(tmp_path, cfg) == EXIT_RESOURCE


def test_verify_pass_edit_missing(tmp_path, capsys):
    assert run_cli(tmp_path, VSUM) == EXIT_OK
    out = tmp_path / "out"
    assert verify(out) == (EXIT_OK, [])
    assert verify(out, rerun=True) == (EXIT_OK, [])
    assert main(["verify", str(out)]) == EXIT_OK
    csv = out / "vsum_per_prime.csv"
    csv.write_text(csv.read_text().replace("\n3,", "\n3 ,", 1) + "\n")
    code, problems = verify(out)
    assert code == EXIT_MISMATCH and problems == ["checksum mismatch: vsum_per_prime.csv"]
    csv.unlink()
    code, problems = verify(out)
    assert code == EXIT_MISSING and "vsum_per_prime.csv" in problems[0]
    assert verify(tmp_path / "nowhere")[0] == EXIT_MISSING


def test_order_db_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("EXPSIEVE_CACHE", str(tmp_path / "cache"))
    assert run_cli(tmp_path, VSUM, "a") == EXIT_OK
    assert (tmp_path / "cache" / "orders_l2_X100.db").exists()
    assert run_cli(tmp_path, VSUM, "b") == EXIT_OK
    a = (tmp_path / "a" / "vsum_report.json").read_bytes()
    assert a == (tmp_path / "b" / "vsum_report.json").read_bytes()


def test_threads_do_not_change_outputs(tmp_path):
    outs = []
    for n in (1, 3):
        assert run_cli(tmp_path, VSUM, f"t{n}", "--threads", str(n)) == EXIT_OK
        outs.append(json.loads((tmp_path / f"t{n}" / "manifest.json").read_text())["output_checksums"])
    assert outs[0] == outs[1]


@pytest.mark.parametrize(
    "cfg,artifact",
    [
        ({"command": "admissible", "lambda": 2, "X": 200, "bounds": {"pair": "korobov", "C": 2}}, "admissible_scan.csv"),
        ({"command": "large-sieve", "T": 20, "S": 300, "K": 6, "sequence": {"kind": "random", "seed": 1},
          "weights": {"kind": "unit_complex", "seed": 2}}, "large_sieve.csv"),
        ({"command": "discrepancy", "lambda": 2, "X": 60, "T": 40, "sequence": {"kind": "arithmetic", "start": 1}},
         "discrepancy.csv"),
        ({"command": "digits", "digits": {"pattern": {"S": 12, "a_hex": "0", "free": [1, 3, 5, 7]}, "X": 50}},
         "digits.csv"),
        ({"command": "exceptional", "exceptional": {"t": 4, "k": 2, "U": 100, "ell_max": 500}}, "exceptional.json"),
        ({"command": "report", "X": 1000, "T": 1995, "S": 1000000}, "bounds.json"),
    ],
)
def test_every_command_runs(tmp_path, cfg, artifact):
    assert run_cli(tmp_path, cfg) == EXIT_OK
    assert (tmp_path / "out" / artifact).exists()
    assert verify(tmp_path / "out")[0] == EXIT_OK


def test_exceptional_empty_domain_notice(tmp_path):
    cfg = {"command": "exceptional", "exceptional": {"t": 100, "k": 2, "U": 10, "ell_max": 100}}
    assert run_cli(tmp_path, cfg) == EXIT_OK
    body = json.loads((tmp_path / "out" / "exceptional.json").read_text())
    assert body["total"] == 0 and "notice" in body
