"""Seeded Monte Carlo driver, CSV emission, and runtime micro-benchmark.

Every replicate draws from its own counter-based substream keyed by
(base_seed, distribution index, sample-size index, replicate), so results are
byte-identical across runs and worker counts, and every estimator within a
cell sees the same samples (required for the variance-ratio columns).
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from functools import partial

import numpy as np

from .baselines import BASELINE_IDS, run_baseline
from .basis import second_exponent
from .distributions import DistributionSpec, parse_spec, sample
from .efficiency import g2_closed_form
from .errors import FracmomError
from .estimators import DEFAULT_SOLVER, SolverConfig, estimate_full, \
    estimate_proxy
from .moments import theoretical_moments

WORKERS_ENV = "FRACMOM_WORKERS"

MC_CSV_FIELDS = ("distribution", "n", "alpha", "estimator", "var", "bias",
                 "mse", "are", "g2_emp", "g2_theo", "replicates", "seed")


@dataclass(frozen=True)
class McDesign:
    """Full factorial Monte Carlo design."""

    distributions: tuple[DistributionSpec, ...]
    n_values: tuple[int, ...]
    alpha_values: tuple[float, ...]
    replicates: int = 1000
    base_seed: int = 1234
    estimators: tuple[str, ...] = ("ols", "proxy", "full")

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")


def default_design(replicates: int = 1000, base_seed: int = 1234) -> McDesign:
    """The desk-scale reference design used throughout the test battery."""
    dists = tuple(parse_spec(s) for s in ("laplace", "gg:1.5", "gg:4", "beta:2:5"))
    return McDesign(dists, (50, 100, 200, 500), (0.05, 0.30, 0.70, 0.95),
                    replicates, base_seed)


@dataclass(frozen=True)
class McRecord:
    """Aggregates of one (distribution, N, alpha, estimator) cell.

    ``replicates`` counts the successful replicates; estimator failures or
    by-design refusals leave the metric fields empty.  ``rel_mse`` is only
    populated by baseline runs (MSE relative to the sample mean).
    """

    distribution: str
    n: int
    alpha: float | None
    estimator: str
    var: float | None
    bias: float | None
    mse: float | None
    are: float | None
    g2_emp: float | None
    g2_theo: float | None
    replicates: int
    seed: int
    rel_mse: float | None = None


@dataclass(frozen=True)
class BenchRecord:
    """Median per-call wall time of one estimator at one sample size."""

    estimator: str
    n: int
    per_call_ms: float
    batch_size: int


_G2_THEO_CACHE: dict = {}


def _g2_theoretical(spec: DistributionSpec, alpha: float) -> float | None:
    key = (spec.name, spec.standardized, round(alpha, 12))
    if key not in _G2_THEO_CACHE:
        try:
            m = theoretical_moments(spec, second_exponent(alpha))
            _G2_THEO_CACHE[key] = g2_closed_form(m)
        except FracmomError:
            _G2_THEO_CACHE[key] = None
    return _G2_THEO_CACHE[key]


def _aggregate(spec: DistributionSpec, n: int, alpha: float | None,
               estimator: str, est: np.ndarray, ok: np.ndarray,
               ols_est: np.ndarray, base_seed: int) -> McRecord:
    good = int(ok.sum())
    if good == 0:
        return McRecord(spec.name, n, alpha, estimator, None, None, None,
                        None, None, None, 0, base_seed)
    e = est[ok]
    o = ols_est[ok]
    true_loc = spec.true_location
    # ddof=0 keeps mse = var + bias^2 an exact identity
    var = float(np.var(e))
    bias = float(np.mean(e) - true_loc)
    mse = float(np.mean((e - true_loc) ** 2))
    var_ols = float(np.var(o))
    are = var_ols / var if var > 0.0 else None
    g2_emp = var / var_ols if var_ols > 0.0 else None
    g2_theo = _g2_theoretical(spec, alpha) if alpha is not None else None
    return McRecord(spec.name, n, alpha, estimator, var, bias, mse, are,
                    g2_emp, g2_theo, good, base_seed)


def _draw_block(design: McDesign, di: int, ni: int) -> list[np.ndarray]:
    spec = design.distributions[di]
    n = design.n_values[ni]
    return [sample(spec, n, [design.base_seed, di, ni, r])
            for r in range(design.replicates)]


def _estimate_cell(samples: list[np.ndarray], estimator: str, alpha: float,
                   solver: SolverConfig) -> tuple[np.ndarray, np.ndarray]:
    m = len(samples)
    est = np.full(m, np.nan)
    ok = np.zeros(m, dtype=bool)
    for r, x in enumerate(samples):
        try:
            if estimator == "full":
                est[r] = estimate_full(x, alpha, solver).theta_hat
            else:
                est[r] = estimate_proxy(x, alpha, solver).theta_hat
            ok[r] = True
        except FracmomError:
            pass
    return est, ok


def _mc_block(design: McDesign, solver: SolverConfig,
              task: tuple[int, int]) -> list[McRecord]:
    di, ni = task
    spec = design.distributions[di]
    n = design.n_values[ni]
    samples = _draw_block(design, di, ni)
    ols_est = np.array([float(np.mean(x)) for x in samples])
    all_ok = np.ones(design.replicates, dtype=bool)
    records = []
    for estimator in design.estimators:
        if estimator == "ols":
            records.append(_aggregate(spec, n, None, "ols", ols_est, all_ok,
                                      ols_est, design.base_seed))
            continue
        for alpha in design.alpha_values:
            if estimator == "full" and spec.infinite_variance:
                # the weight system has no meaning without a second moment
                records.append(McRecord(spec.name, n, alpha, estimator, None,
                                        None, None, None, None, None, 0,
                                        design.base_seed))
                continue
            est, ok = _estimate_cell(samples, estimator, alpha, solver)
            records.append(_aggregate(spec, n, alpha, estimator, est, ok,
                                      ols_est, design.base_seed))
    return records


def _worker_count(workers: int | None) -> int:
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get(WORKERS_ENV)
    return max(1, int(env)) if env else 1


def _run_blocks(block_fn, tasks, workers: int | None) -> list:
    w = _worker_count(workers)
    if w > 1:
        with ThreadPoolExecutor(max_workers=w) as pool:
            blocks = list(pool.map(block_fn, tasks))
    else:
        blocks = [block_fn(t) for t in tasks]
    return [rec for block in blocks for rec in block]


def run_mc(design: McDesign, solver: SolverConfig = DEFAULT_SOLVER,
           workers: int | None = None) -> list[McRecord]:
    """Run the design cell by cell; per-replicate estimator failures are
    skipped and reflected in the replicates count, never aborting the run."""
    tasks = [(di, ni) for di in range(len(design.distributions))
             for ni in range(len(design.n_values))]
    return _run_blocks(partial(_mc_block, design, solver), tasks, workers)


def _baseline_block(design: McDesign, task: tuple[int, int]) -> list[McRecord]:
    di, ni = task
    spec = design.distributions[di]
    n = design.n_values[ni]
    samples = _draw_block(design, di, ni)
    ols_est = np.array([float(np.mean(x)) for x in samples])
    m = design.replicates
    records = []
    for name in BASELINE_IDS:
        est = np.full(m, np.nan)
        ok = np.zeros(m, dtype=bool)
        for r, x in enumerate(samples):
            try:
                est[r] = run_baseline(name, x)
                ok[r] = True
            except FracmomError:
                pass
        records.append(_aggregate(spec, n, None, name, est, ok, ols_est,
                                  design.base_seed))
    mean_mse = {(r.distribution, r.n): r.mse for r in records
                if r.estimator == "mean"}
    out = []
    for r in records:
        denom = mean_mse.get((r.distribution, r.n))
        rel = r.mse / denom if (r.mse is not None and denom) else None
        out.append(replace(r, rel_mse=rel))
    return out


def run_baseline_mc(design: McDesign, workers: int | None = None,
                    ) -> list[McRecord]:
    """Same design, six robust baselines, with MSE relative to the mean."""
    tasks = [(di, ni) for di in range(len(design.distributions))
             for ni in range(len(design.n_values))]
    return _run_blocks(partial(_baseline_block, design), tasks, workers)


# ---------------------------------------------------------------------------
# runtime micro-benchmark
# ---------------------------------------------------------------------------

BENCH_ESTIMATORS = ("mean", "median", "huber", "median_of_means", "proxy",
                    "full")
BENCH_ALPHA = 0.05


def _bench_call(name: str):
    if name == "proxy":
        return lambda x: estimate_proxy(x, BENCH_ALPHA).theta_hat
    if name == "full":
        return lambda x: estimate_full(x, BENCH_ALPHA).theta_hat
    return lambda x: run_baseline(name, x)


def run_bench(n_values, estimators=BENCH_ESTIMATORS, batch: int = 10,
              repeats: int = 5, seed: int = 1234) -> list[BenchRecord]:
    """Median per-call wall time on seeded two-sided-exponential samples."""
    if batch < 10:
        raise ValueError("batch must be >= 10")
    spec = parse_spec("laplace")
    records = []
    for n in n_values:
        x = sample(spec, int(n), [seed, int(n)])
        for name in estimators:
            call = _bench_call(name)
            call(x)  # warm-up
            per_call = []
            for _ in range(repeats):
                t0 = time.perf_counter()
                for _ in range(batch):
                    call(x)
                per_call.append(1e3 * (time.perf_counter() - t0) / batch)
            records.append(BenchRecord(name, int(n), float(np.median(per_call)),
                                       batch))
    return records


def bench_scaling_ratios(records: list[BenchRecord]) -> dict[str, list[float]]:
    """time(10N)/time(N) per estimator, for asserting near-linear cost."""
    ratios: dict[str, list[float]] = {}
    by_est: dict[str, dict[int, float]] = {}
    for r in records:
        by_est.setdefault(r.estimator, {})[r.n] = r.per_call_ms
    for name, times in by_est.items():
        for n, t in sorted(times.items()):
            if 10 * n in times and t > 0.0:
                ratios.setdefault(name, []).append(times[10 * n] / t)
    return ratios


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------

def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(float(v))  # plain-float repr even for numpy scalars
    return str(v)


def write_csv_rows(path, header, rows) -> None:
    """Write a deterministic CSV: repr floats, empty string for None."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def mc_record_row(r: McRecord) -> tuple:
    return (r.distribution, r.n, r.alpha, r.estimator, r.var, r.bias, r.mse,
            r.are, r.g2_emp, r.g2_theo, r.replicates, r.seed)


def write_mc_csv(records: list[McRecord], path) -> None:
    write_csv_rows(path, MC_CSV_FIELDS, (mc_record_row(r) for r in records))


def write_baseline_csv(records: list[McRecord], path) -> None:
    header = MC_CSV_FIELDS + ("rel_mse_vs_mean",)
    write_csv_rows(path, header,
                   (mc_record_row(r) + (r.rel_mse,) for r in records))


def write_bench_csv(records: list[BenchRecord], path) -> None:
    header = ("estimator", "n", "per_call_ms", "batch_size", "nondeterministic")
    write_csv_rows(path, header,
                   ((r.estimator, r.n, r.per_call_ms, r.batch_size, 1)
                    for r in records))


def write_sweep_csv(curve, path) -> None:
    write_csv_rows(path, ("alpha", "g2", "degenerate_flag"), curve.rows())


def write_calibration_csv(result, path) -> None:
    """Per-grid criterion values plus a one-line summary record."""
    rows = [(a, v, flag) for a, v, flag in result.curve.rows()]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("alpha,criterion_value,flag\n")
        for a, v, flag in rows:
            fh.write(f"{_fmt(a)},{_fmt(v)},{flag}\n")
        lo, hi = result.sensitivity_interval
        fh.write(f"# alpha_star={_fmt(result.alpha_star)}"
                 f" criterion={result.criterion}"
                 f" interval={_fmt(lo)}..{_fmt(hi)}"
                 f" ambiguous={int(result.ambiguous)}\n")
