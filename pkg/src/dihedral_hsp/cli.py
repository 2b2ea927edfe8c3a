"""Command-line experiments.

    dihedral-hsp irreps --n 8
    dihedral-hsp qft-check --n 16
    dihedral-hsp hsp --n 16 --a 3 --samples 100000
    dihedral-hsp eh --n 16 --a 5 --m 200 --seed 7
    dihedral-hsp clone --n 4 --a 1 --pairs 20 --trials 10000

Reports are JSON ``{config, results, checks, duration_ms}`` (or CSV rows)
and the exit status is 1 when any check fails.  Every random stream is
derived from ``--seed`` plus a fixed per-component offset.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time

import numpy as np

from . import __version__, cloning, dcp, ettinger_hoyer as eh, hsp, kernels, qft
from .group import identity, reflection
from .representations import TwoDim, irrep_list, schur_check

MAX_N = 4096
MAX_DENSE_N = 1024

STREAMS = {"slope": 0, "hsp": 1, "eh": 2, "eh_sweep": 3, "clone": 4, "refuter": 5, "qft": 6}


class ConfigError(ValueError):
    pass


def stream(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, STREAMS[name]])


# -- output ------------------------------------------------------------------

def _num(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    text = format(x, ".17g")
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def to_json(obj, indent: int = 2, level: int = 0) -> str:
    """JSON with floats written to 17 significant digits; non-finite -> null."""
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(to_json(v, indent, level + 1) for v in obj) + "]"
        items = [pad + to_json(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(float(obj))
    if obj is None:
        return "null"
    return json.dumps(str(obj), ensure_ascii=False)


def check(value, threshold, passed: bool) -> dict:
    return {"value": value, "threshold": threshold, "passed": bool(passed)}


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    rows = report.get("rows")
    writer = csv.writer(buf, lineterminator="\n")
    if rows:
        header = list(rows[0])
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(row[h]) for h in header])
    else:
        writer.writerow(["check", "value", "threshold", "passed"])
        for name, c in report["checks"].items():
            writer.writerow([name, _csv_cell(c["value"]), _csv_cell(c["threshold"]), c["passed"]])
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, (float, np.floating)):
        return _num(float(v)) if math.isfinite(v) else ""
    if v is None:
        return ""
    return v


# -- commands ----------------------------------------------------------------

def _resolve_slope(args) -> int:
    if args.a is None:
        return int(stream(args.seed, "slope").integers(args.n))
    if not 0 <= args.a < args.n:
        raise ConfigError(f"--a must lie in [0, {args.n})")
    return args.a


def cmd_irreps(args) -> dict:
    n = args.n
    labels = irrep_list(n)
    two = sum(isinstance(lbl, TwoDim) for lbl in labels)
    sum_d2 = sum(lbl.dim ** 2 for lbl in labels)
    schur = schur_check(n)
    rows = [{"label": str(lbl), "dim": lbl.dim,
             "u": getattr(lbl, "u", None), "v": getattr(lbl, "v", None),
             "k": getattr(lbl, "k", None)} for lbl in labels]
    return {
        "results": {
            "labels": [str(lbl) for lbl in labels],
            "dims": [lbl.dim for lbl in labels],
            "one_dim_count": len(labels) - two,
            "two_dim_count": two,
            "sum_dim_squared": sum_d2,
            "schur_max_deviation": schur.max_deviation,
        },
        "checks": {
            "sum_dim_squared_equals_group_order": check(sum_d2, 2 * n, sum_d2 == 2 * n),
            "two_dim_count_formula": check(two, (n - 1) // 2, two == (n - 1) // 2),
            "schur_orthogonality": check(schur.max_deviation, 1e-12, schur.passed),
        },
        "rows": rows,
    }


def cmd_qft_check(args) -> dict:
    n = args.n
    if n > MAX_DENSE_N:
        raise ConfigError(f"qft-check builds a dense transform; n must be <= {MAX_DENSE_N}")
    F = qft.build_qft(n)
    unit = F.unitarity_deviation()
    rng = stream(args.seed, "qft")
    count = args.samples if args.samples is not None else 100
    worst_norm = 0.0
    for _ in range(count):
        v = rng.normal(size=2 * n) + 1j * rng.normal(size=2 * n)
        v /= np.linalg.norm(v)
        out = qft.apply_qft(F, qft.StateVector(v))
        worst_norm = max(worst_norm, abs(out.norm - 1.0))
    flat_dev = 0.0
    consist = 0.0
    for a in range(n):
        for c in (identity(), elements_sample(n, a)):
            dist = hsp.exact_fourier_distribution(a, c, n)
            mask = hsp.two_dim_mask(dist.outcomes)
            if mask.any():
                flat_dev = max(flat_dev, float(np.max(np.abs(dist.probabilities[mask] - 1 / (2 * n)))))
            consist = max(consist, hsp.pipeline_consistency(a, c, n))
    return {
        "results": {
            "fourier_index_count": len(F.indices),
            "unitarity_deviation": unit,
            "plancherel_max_deviation": worst_norm,
            "plancherel_vectors": count,
            "complex_flatness_max_deviation": flat_dev,
            "pipeline_max_deviation": consist,
        },
        "checks": {
            "fourier_index_count": check(len(F.indices), 2 * n, len(F.indices) == 2 * n),
            "unitarity": check(unit, 1e-12, unit < 1e-12),
            "plancherel": check(worst_norm, 1e-12, worst_norm < 1e-12),
            "complex_flatness": check(flat_dev, 1e-12, flat_dev <= 1e-12),
            "pipeline_consistency": check(consist, 1e-12, consist <= 1e-12),
        },
    }


def elements_sample(n: int, a: int):
    """A fixed non-identity coset representative per slope."""
    return reflection(a * 7 + 1, n)


def cmd_hsp(args) -> dict:
    n = args.n
    a = _resolve_slope(args)
    samples = args.samples if args.samples is not None else 0
    rng = stream(args.seed, "hsp")
    dist = hsp.run_pipeline(a, n, samples, rng)
    flat = hsp.flatness(dist, n)
    real = qft.real_basis_distribution(n, a, identity())
    real_flat = hsp.flatness(real, n)
    mask = hsp.two_dim_mask(dist.outcomes)
    complex_dev = float(np.max(np.abs(dist.probabilities[mask] - 1 / (2 * n)))) if mask.any() else 0.0
    results = {
        "a": a,
        "outcomes": [str(o) for o in dist.outcomes],
        "exact": dist.probabilities.tolist(),
        "real_basis": real.probabilities.tolist(),
        "max_two_dim_probability": flat["max_two_dim_probability"],
        "real_basis_max_two_dim_probability": real_flat["max_two_dim_probability"],
        "flatness_bound": 4 / n,
        "flatness_ratio": flat["ratio"],
        "samples": samples,
    }
    checks = {
        "normalization": check(abs(dist.total - 1), 1e-10, abs(dist.total - 1) <= 1e-10),
        "complex_flatness": check(complex_dev, 1e-12, complex_dev <= 1e-12),
        "real_basis_bound": check(real_flat["max_two_dim_probability"], 4 / n + 1e-12,
                                  (real_flat["max_two_dim_probability"] or 0) <= 4 / n + 1e-12),
    }
    if n <= MAX_DENSE_N // 2:
        dev = hsp.pipeline_consistency(a, identity(), n)
        results["pipeline_max_deviation"] = dev
        checks["pipeline_consistency"] = check(dev, 1e-12, dev <= 1e-12)
    if samples:
        emp = dist.empirical()
        results["counts"] = dist.counts.tolist()
        results["tv_distance"] = dist.tv_distance(emp)
    rows = [{"outcome": str(o), "label": str(o.label), "i": o.i, "j": o.j,
             "probability": float(p), "real_basis_probability": float(r),
             "count": int(dist.counts[t]) if samples else None}
            for t, (o, p, r) in enumerate(zip(dist.outcomes, dist.probabilities, real.probabilities))]
    return {"results": results, "checks": checks, "rows": rows}


def _default_m(n: int) -> int:
    return 64 * max(1, math.ceil(math.log2(n)))


def cmd_eh(args) -> dict:
    n = args.n
    a = _resolve_slope(args)
    m = args.m if args.m is not None else _default_m(n)
    if m < 1:
        raise ConfigError("--m must be >= 1")
    samples = eh.eh_sample(a, n, m, stream(args.seed, "eh"), seed=args.seed)
    est = eh.recover_slope(samples)
    table = eh.eh_distribution(a, n)
    closed = set(est.candidates) == {(n - c) % n for c in est.candidates}
    consist = eh.consistency_check(a, n) if n <= MAX_DENSE_N else None
    results = {
        "a": a,
        "m": m,
        "candidates": list(est.candidates),
        "log_likelihood": [est.log_likelihood[c] for c in est.candidates],
        "margin_to_runner_up": est.margin(),
        "degenerate": est.degenerate,
        "success": est.contains(a),
        "counts": samples.counts().tolist(),
    }
    if args.sweep:
        trials = args.trials if args.trials is not None else 100
        sweep_seed = int(stream(args.seed, "eh_sweep").integers(2 ** 32))
        results["sweep"] = [
            {"m": mm, "trials": trials,
             "success_rate": eh.success_rate(n, mm, trials, sweep_seed, a=a, threads=args.threads)}
            for mm in args.sweep]
    checks = {
        "normalization": check(abs(table.sum() - 1), 1e-12, abs(table.sum() - 1) <= 1e-12),
        "candidates_closed_under_negation": check(closed, True, closed),
    }
    if consist is not None:
        results["consistency_max_deviation"] = consist.max_deviation
        checks["pipeline_consistency"] = check(consist.max_deviation, 1e-10, consist.passed)
    counts = samples.counts()
    rows = [{"k": k, "b": b, "probability": float(table[k, b]), "count": int(counts[k, b])}
            for k in range(n) for b in (0, 1)]
    return {"results": results, "checks": checks, "rows": rows}


def cmd_clone(args) -> dict:
    n = args.n
    if n < 3:
        raise ConfigError("clone needs n >= 3")
    a = _resolve_slope(args)
    pairs = args.pairs
    trials = args.trials if args.trials is not None else 10_000
    worst_fid = 1.0
    for alpha in range(n):
        sample = dcp.make_dcp_sample(a, alpha, n)
        worst_fid = min(worst_fid, cloning.clone_fidelity(a, sample, cloning.clone_known_a(a, sample)))
    wrong = (a + 1) % n
    probe = dcp.make_dcp_sample(a, 0, n)
    wrong_fid = cloning.pair_fidelity(cloning.clone_known_a(wrong, probe, validate=False),
                                      probe.state.amplitudes)
    clone_seed = int(stream(args.seed, "clone").integers(2 ** 32))
    rate = cloning.clone_recovery_rate(a, n, pairs, trials, clone_seed, threads=args.threads)
    witness = cloning.no_cloning_witness(n)
    refuter_rng = stream(args.seed, "refuter")
    refuter_trials = args.samples if args.samples is not None else 200
    refuted = {}
    if n <= 16:
        for name, U in (("known_slope_cloner", cloning.known_slope_cloner(a, n)),
                        ("identity", cloning.identity_cloner(n)),
                        ("basis_copy", cloning.basis_copy_cloner(n))):
            rep = cloning.unitary_cloner_refuter(U, n, refuter_trials, refuter_rng)
            refuted[name] = {"min_fidelity": rep.min_fidelity, "worst": list(rep.worst)}
    expected_rate = 1 - 2.0 ** -pairs
    results = {
        "a": a,
        "clone_min_fidelity": worst_fid,
        "wrong_slope": wrong,
        "wrong_slope_pair_fidelity": wrong_fid,
        "pairs": pairs,
        "trials": trials,
        "recovery_rate": rate,
        "expected_recovery_rate": expected_rate,
        "witness": {"inner_product": witness.inner_product, "left": witness.left,
                    "right_bound": witness.right_bound,
                    "ancilla_overlap_bound": witness.ancilla_overlap_bound,
                    "samples": [list(s) for s in witness.samples]},
        "refuter": refuted,
    }
    checks = {
        "clone_fidelity": check(worst_fid, 1 - 1e-12, worst_fid >= 1 - 1e-12),
        "witness_contradiction": check(witness.left - witness.right_bound, 0.0, witness.contradiction),
        "recovery_rate": check(rate, max(0.0, expected_rate - 0.02), rate >= expected_rate - 0.02),
    }
    for name, rep in refuted.items():
        checks[f"refuted_{name}"] = check(rep["min_fidelity"], 0.999, rep["min_fidelity"] < 0.999)
    return {"results": results, "checks": checks}


COMMANDS = {
    "irreps": cmd_irreps,
    "qft-check": cmd_qft_check,
    "hsp": cmd_hsp,
    "eh": cmd_eh,
    "clone": cmd_clone,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dihedral-hsp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--a", type=int, default=None, help="hidden slope (random if omitted)")
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--m", type=int, default=None, help="Ettinger-Hoyer sample count")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None)
        p.add_argument("--threads", type=int, default=1)
        if name == "eh":
            p.add_argument("--sweep", type=lambda s: [int(x) for x in s.split(",")], default=None,
                           help="comma-separated sample counts for a success-rate sweep")
            p.add_argument("--trials", type=int, default=None)
        if name == "clone":
            p.add_argument("--pairs", type=int, default=20)
            p.add_argument("--trials", type=int, default=None)
    return parser


def run(argv=None):
    """Parse ``argv`` and execute; returns ``(report, exit_status, args)``."""
    args = build_parser().parse_args(argv)
    if not 1 <= args.n <= MAX_N:
        raise ConfigError(f"--n must lie in [1, {MAX_N}]")
    if args.threads < 1:
        raise ConfigError("--threads must be >= 1")
    start = time.perf_counter()
    body = COMMANDS[args.command](args)
    config = {k: v for k, v in vars(args).items() if k not in ("out", "format")}
    report = {
        "config": config,
        "version": __version__,
        "backend": kernels.BACKEND,
        "results": body["results"],
        "checks": body["checks"],
        "duration_ms": (time.perf_counter() - start) * 1000.0,
    }
    if "rows" in body:
        report["rows"] = body["rows"]
    ok = all(c["passed"] for c in report["checks"].values())
    return report, 0 if ok else 1, args


def main(argv=None) -> int:
    try:
        report, status, args = run(argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = to_csv(report) if args.format == "csv" else to_json(
        {k: v for k, v in report.items() if k != "rows"}) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
