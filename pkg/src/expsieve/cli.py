"""Batch experiment runner.

    expsieve <command> --config FILE [--order-db PATH] [--out DIR] [--threads N]
    expsieve verify MANIFEST [--rerun]

Every run writes its artifacts into the output directory and then, last,
a ``manifest.json`` carrying the config, tool version, wall time and
SHA-256 checksums of inputs and outputs.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import tempfile
import time
from pathlib import Path

from . import __version__
from .config import COMMANDS, ConfigError, ExperimentConfig
from .digits import DigitPattern, M_p, NumericalPrecisionError, Q_p_bound, count_divisible, omega_product
from .equidist import discrepancy_survey
from .expsums import DEFAULT_CROSSOVER, EmptyDomainError, admissible_scan, exceptional_count, get_pair
from .generators import make_sequence, make_weights
from .primes import OrderDatabase, ResourceCapError, build_order_db, count_small_orders, density_check
from .report import sha256_file, write_csv, write_json
from .stats import compute_V, large_sieve_lhs, large_sieve_rhs, thm1_bound, thm2_bound

log = logging.getLogger("expsieve")

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RESOURCE = 3
EXIT_NUMERICAL = 4
EXIT_MISMATCH = 5
EXIT_MISSING = 6

MANIFEST = "manifest.json"


def _sequence(cfg: ExperimentConfig):
    opts = dict(cfg.sequence)
    kind = opts.pop("kind")
    seed = opts.pop("seed", None)
    return make_sequence(kind, cfg.T, cfg.S, seed, **opts)


def _weights(cfg: ExperimentConfig, T: int):
    return make_weights(cfg.weights["kind"], T, cfg.weights.get("seed"))


def _crossover(cfg: ExperimentConfig) -> int:
    return cfg.crossover or DEFAULT_CROSSOVER


def order_db(cfg: ExperimentConfig, db_path: str | None, inputs: dict) -> OrderDatabase:
    """Load a matching database from --order-db / EXPSIEVE_CACHE, or build (and cache) one."""
    if db_path is None and os.environ.get("EXPSIEVE_CACHE"):
        db_path = str(Path(os.environ["EXPSIEVE_CACHE"]) / f"orders_l{cfg.lam}_X{cfg.X}.db")
    if db_path and Path(db_path).exists():
        db = OrderDatabase.load(db_path)
        if db.lam != cfg.lam or db.X < cfg.X:
            raise ConfigError([f"order_db: {db_path} holds lambda={db.lam}, X={db.X}; need lambda={cfg.lam}, X>={cfg.X}"])
        inputs[str(db_path)] = sha256_file(db_path)
        if db.X > cfg.X:
            db = db.subset(db.p <= cfg.X)
            db.X = cfg.X
        return db
    db = build_order_db(cfg.lam, cfg.X, workers=cfg.threads)
    if db_path:
        Path(db_path).parent.mkdir(parents=True, exist_ok=True)
        db.save(db_path)
    return db


# -- commands ------------------------------------------------------------------------


def cmd_orders(cfg, out: Path, db_path, inputs) -> list[Path]:
    db = order_db(cfg, db_path, inputs)
    dbfile = out / f"orders_l{cfg.lam}_X{cfg.X}.db"
    db.save(dbfile)
    zs = [z for z in (1, 2, 4, 8, 16, 32, 64) if z <= cfg.X]
    summary = {
        "params": cfg.params(),
        "count": len(db),
        "checksum": db.checksum(),
        "density_ratio": density_check(db) if cfg.X >= 100 else None,
        "delta_rounding": "t_p >= ceil(Delta)",
        "small_orders": {str(z): count_small_orders(db, z) for z in zs},
    }
    return [dbfile, write_json(out / "orders_summary.json", summary)]


def cmd_vsum(cfg, out: Path, db_path, inputs) -> list[Path]:
    db = order_db(cfg, db_path, inputs)
    seq = _sequence(cfg)
    gamma = _weights(cfg, seq.T)
    stat = compute_V(db, seq, gamma, cfg.Delta, workers=cfg.threads, crossover=_crossover(cfg))
    E = [r for r in db if r.t_p >= math.ceil(cfg.Delta)]
    rows = [(r.p, r.t_p, r.tau_pm1, rec.a_p, rec.m_p) for r, rec in zip(E, stat.per_prime)]
    csv_path = write_csv(out / "vsum_per_prime.csv", "vsum", ["p", "t_p", "tau_pm1", "a_p", "m_p"], rows)
    b = cfg.bounds
    reports = [thm2_bound(cfg.X, seq.T, seq.S, b["rho"], b["C"], b["eps"]).as_dict()]
    pair = get_pair(b["pair"], b.get("theta"), b.get("zeta"))
    if pair.alpha < 1:
        reports.insert(0, thm1_bound(cfg.X, seq.T, seq.S, cfg.Delta, pair, b["eta"], b["delta"], b["k"], b["C"]).as_dict())
    body = {
        "params": cfg.params(),
        "Delta_rounding": "t_p >= ceil(Delta)",
        "n_primes": len(stat.per_prime),
        "value_V": stat.value_V,
        "value_W": stat.value_W,
        "trivial_bound": stat.trivial_bound,
        "normalized_V": stat.normalized,
        "bound_reports": reports,
        "per_prime_csv_path": csv_path.name,
    }
    return [csv_path, write_json(out / "vsum_report.json", body)]


def cmd_admissible(cfg, out: Path, db_path, inputs) -> list[Path]:
    db = order_db(cfg, db_path, inputs)
    b = cfg.bounds
    pair = get_pair(b["pair"], b.get("theta"), b.get("zeta"))
    rows = admissible_scan(db, pair, b["C"], workers=cfg.threads, crossover=_crossover(cfg))
    csv_path = write_csv(
        out / "admissible_scan.csv",
        "admissible",
        ["p", "t_p", "a_p", "m_p", "bound", "ratio", "flag"],
        [(r.p, r.t_p, r.a_p, r.m_p, r.bound, r.ratio, r.flag) for r in rows],
    )
    body = {
        "params": cfg.params(),
        "pair": {"alpha": pair.alpha, "beta": pair.beta, "label": pair.label},
        "C": b["C"],
        "n_primes": len(rows),
        "n_flagged": sum(r.flag for r in rows),
        "max_ratio": max((r.ratio for r in rows), default=0.0),
        "scan_csv_path": csv_path.name,
    }
    return [csv_path, write_json(out / "admissible_summary.json", body)]


def cmd_large_sieve(cfg, out: Path, db_path, inputs) -> list[Path]:
    seq = _sequence(cfg)
    gamma = _weights(cfg, seq.T)
    rows = []
    for K in range(1, cfg.K + 1):
        lhs = large_sieve_lhs(seq, gamma, K)
        rhs = large_sieve_rhs(seq, gamma, K)
        rows.append((K, lhs, rhs, lhs / rhs if rhs else 0.0))
    csv_path = write_csv(out / "large_sieve.csv", "large-sieve", ["K", "lhs", "rhs", "ratio"], rows)
    K, lhs, rhs, ratio = rows[-1]
    body = {"params": cfg.params(), "K": K, "lhs": lhs, "rhs": rhs, "ratio": ratio,
            "holds": lhs <= rhs, "csv_path": csv_path.name}
    return [csv_path, write_json(out / "large_sieve.json", body)]


def cmd_discrepancy(cfg, out: Path, db_path, inputs) -> list[Path]:
    db = order_db(cfg, db_path, inputs)
    seq = _sequence(cfg)
    b = cfg.bounds
    res = discrepancy_survey(db, seq, b["delta"], H=b["H"], workers=cfg.threads)
    csv_path = write_csv(
        out / "discrepancy.csv",
        "discrepancy",
        ["p", "D", "witness_a", "witness_b", "ET_bound", "H"],
        [(r.p, r.D, r.witness_a, r.witness_b, r.et_bound, r.H) for r in res.rows],
    )
    body = {
        "params": cfg.params(),
        "erdos_turan_form": "D <= 1/(H+1) + 3 * sum_{h<=H} |T^-1 sum_n e(h x_n)| / h",
        "T": res.T,
        "delta": res.delta,
        "fraction_D_le_T^-delta": res.frac_power,
        "fraction_D_le_logT^-delta": res.frac_log,
        "delta_hat": res.delta_hat,
        "csv_path": csv_path.name,
    }
    return [csv_path, write_json(out / "discrepancy_summary.json", body)]


def cmd_digits(cfg, out: Path, db_path, inputs) -> list[Path]:
    pat = DigitPattern.from_json(cfg.digits["pattern"])
    X = cfg.digits["X"]
    C = cfg.bounds["C"]
    from .primes import sieve_primes

    rows = []
    for p in (int(q) for q in sieve_primes(X)):
        if p == 2:
            continue
        dc = count_divisible(pat, p)
        m = M_p(pat, p)
        rows.append((p, dc.N_p, dc.main_term, dc.deviation, Q_p_bound(min(m, pat.T), pat.T, C)))
    csv_path = write_csv(out / "digits.csv", "digits", ["p", "N_p", "main_term", "deviation", "Q_p_bound"], rows)
    survey = omega_product(pat, X, "survey")
    body = {
        "params": cfg.params(),
        "bit_positions": "0-indexed from the least significant bit",
        "T": pat.T,
        "omega_survey": survey.omega,
        "primes_considered": survey.n_candidates,
        "fraction": survey.fraction,
        "omega_over_T": survey.omega / pat.T if pat.T else None,
        "csv_path": csv_path.name,
    }
    if cfg.digits.get("exact") and pat.T <= 16:
        body["omega_exact"] = omega_product(pat, mode="exact").omega
    return [csv_path, write_json(out / "digits_summary.json", body)]


def cmd_exceptional(cfg, out: Path, db_path, inputs) -> list[Path]:
    e = cfg.exceptional
    header = "g_{t,l} = h^((l-1)/t) with h the smallest primitive root of l"
    try:
        rep = exceptional_count(int(e["t"]), int(e["k"]), float(e["U"]), float(e.get("C", 1.0)), int(e["ell_max"]))
        body = {"params": cfg.params(), "element_choice": header, "total": rep.total,
                "exceptional": rep.exceptional, "allowance_U_over_logU": rep.allowance,
                "exceptions": list(rep.exceptions)}
    except EmptyDomainError as exc:
        body = {"params": cfg.params(), "element_choice": header, "total": 0, "exceptional": 0,
                "notice": str(exc)}
        log.warning("%s", exc)
    return [write_json(out / "exceptional.json", body)]


def cmd_report(cfg, out: Path, db_path, inputs) -> list[Path]:
    b = cfg.bounds
    pair = get_pair(b["pair"], b.get("theta"), b.get("zeta"))
    reports = [
        thm1_bound(cfg.X, cfg.T, cfg.S, cfg.Delta, pair, b["eta"], b["delta"], b["k"], b["C"]).as_dict(),
        thm2_bound(cfg.X, cfg.T, cfg.S, b["rho"], b["C"], b["eps"]).as_dict(),
    ]
    body = {"params": cfg.params(), "garaev_range": cfg.S <= cfg.X ** (15 / 14), "bound_reports": reports}
    return [write_json(out / "bounds.json", body)]


HANDLERS = {
    "orders": cmd_orders,
    "vsum": cmd_vsum,
    "admissible": cmd_admissible,
    "large-sieve": cmd_large_sieve,
    "discrepancy": cmd_discrepancy,
    "digits": cmd_digits,
    "exceptional": cmd_exceptional,
    "report": cmd_report,
}


def run(cfg: ExperimentConfig, out: str | Path, db_path: str | None = None, config_path: str | None = None) -> dict:
    """Execute one experiment; returns the manifest (also written to out/manifest.json)."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    inputs: dict[str, str] = {}
    if config_path:
        inputs[str(config_path)] = sha256_file(config_path)
    t0 = time.perf_counter()
    paths = HANDLERS[cfg.command](cfg, out, db_path, inputs)
    manifest = {
        "command": cfg.command,
        "config": cfg.raw,
        "tool_version": __version__,
        "wall_time_s": round(time.perf_counter() - t0, 3),
        "threads": cfg.threads,
        "input_checksums": inputs,
        "output_checksums": {p.name: sha256_file(p) for p in paths},
    }
    write_json(out / MANIFEST, manifest)
    return manifest


def verify(manifest_path: str | Path, rerun: bool = False) -> tuple[int, list[str]]:
    """Recompute output checksums; with ``rerun``, also regenerate and compare."""
    manifest_path = Path(manifest_path)
    if manifest_path.is_dir():
        manifest_path = manifest_path / MANIFEST
    if not manifest_path.exists():
        return EXIT_MISSING, [f"missing: {manifest_path}"]
    man = json.loads(manifest_path.read_text())
    root = manifest_path.parent
    missing, bad = [], []
    for name, digest in man["output_checksums"].items():
        f = root / name
        if not f.exists():
            missing.append(f"missing: {name}")
        elif sha256_file(f) != digest:
            bad.append(f"checksum mismatch: {name}")
    if missing:
        return EXIT_MISSING, missing + bad
    if bad:
        return EXIT_MISMATCH, bad
    if rerun:
        cfg = ExperimentConfig.from_dict(man["config"], man["command"])
        with tempfile.TemporaryDirectory() as tmp:
            fresh = run(cfg, tmp)
        for name, digest in man["output_checksums"].items():
            if fresh["output_checksums"].get(name) != digest:
                bad.append(f"rerun differs: {name}")
        if bad:
            return EXIT_MISMATCH, bad
    return EXIT_OK, []


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="expsieve", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=f"expsieve {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, help=f"run the {name} experiment")
        sp.add_argument("--config", required=True, help="experiment config (JSON)")
        sp.add_argument("--order-db", default=None, help="order database to reuse (built and saved if absent)")
        sp.add_argument("--out", default=None, help="output directory (default: config 'out' or ./out)")
        sp.add_argument("--threads", type=int, default=None, help="worker processes")
    vp = sub.add_parser("verify", help="check a run directory against its manifest")
    vp.add_argument("manifest", help="manifest.json or the run directory")
    vp.add_argument("--rerun", action="store_true", help="also recompute and compare outputs")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command == "verify":
        code, problems = verify(args.manifest, args.rerun)
        for line in problems:
            print(line, file=sys.stderr)
        print("PASS" if code == EXIT_OK else "FAIL")
        return code
    try:
        cfg = ExperimentConfig.load(args.config, args.command)
        if args.threads is not None:
            if args.threads < 1:
                raise ConfigError([f"--threads: must be >= 1, got {args.threads}"])
            cfg.threads = args.threads
        out = args.out or cfg.raw.get("out") or "out"
        man = run(cfg, out, args.order_db, args.config)
    except ConfigError as exc:
        for e in exc.errors:
            print(f"config error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except NumericalPrecisionError as exc:
        print(f"numerical precision: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    print(json.dumps({k: man[k] for k in ("command", "output_checksums")}, indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
