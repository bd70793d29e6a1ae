"""Seeded Monte Carlo sweeps over the channel transition probability,
failure-rate and secret-key-rate estimation with Wilson intervals, and CSV
emission.

Per-trial random streams are derived from (base_seed, job, point, trial)
through numpy's SeedSequence, so results are independent of the worker
count and byte-identical across runs of the same configuration.
"""

from __future__ import annotations

import json
import math
import multiprocessing as mp
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from keyrec.channel import ChannelModel
from keyrec.decoder import DecoderConfig, SumProductDecoder, run_trial
from keyrec.qcldpc import QcCode, expand, load_code

CSV_HEADER = (
    "code,p,trials,fc_failures,msc_failures,undetected,"
    "fer_fc,fer_fc_lo,fer_fc_hi,fer_msc,fer_msc_lo,fer_msc_hi,"
    "skr_fc,skr_msc,mean_iters"
)

_WILSON_Z = 1.959963984540054  # two-sided 95%


def wilson_interval(k: int, n: int) -> tuple[float, float]:
    """Wilson 95% confidence interval for a binomial proportion k/n."""
    if n == 0:
        return 0.0, 1.0
    z2 = _WILSON_Z**2
    phat = k / n
    denom = 1.0 + z2 / n
    centre = phat + z2 / (2 * n)
    half = _WILSON_Z * math.sqrt(phat * (1 - phat) / n + z2 / (4 * n * n))
    return max(0.0, (centre - half) / denom), min(1.0, (centre + half) / denom)


def skr(success_prob: float, code: QcCode) -> float:
    """Secret key rate in bits per raw symbol.

    With no side information beyond the syndrome and a full-rank check
    matrix, the final key carries (N - M) * log2(q) bits, so the rate is
    success_prob * ((N - M)/N) * log2(q).  The multiplier is identical for
    the full-word and subset decoders; only the success probability moves.
    """
    if not 0.0 <= success_prob <= 1.0:
        raise ValueError(f"success probability {success_prob} outside [0, 1]")
    return success_prob * ((code.n - code.m_checks) / code.n) * code.field.m


@dataclass(frozen=True)
class SimJob:
    """One code swept over a list of transition probabilities."""

    code: str
    p_values: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.p_values:
            raise ValueError("p_values must be non-empty")
        if len(set(self.p_values)) != len(self.p_values):
            raise ValueError("p_values must be distinct")
        for p in self.p_values:
            if not 0.0 <= p < 1.0:
                raise ValueError(f"transition probability {p} outside [0, 1)")


@dataclass(frozen=True)
class SimConfig:
    jobs: tuple[SimJob, ...]
    trials: int = 10_000
    base_seed: int = 0
    max_iterations: int = 100
    epsilon: float = 1e-12
    workers: int = 0  # 0 means use all CPUs
    record_per_subset: bool = False

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.jobs:
            raise ValueError("at least one job required")

    def decoder_config(self) -> DecoderConfig:
        return DecoderConfig(max_iterations=self.max_iterations, epsilon=self.epsilon)

    @classmethod
    def from_dict(cls, d: dict) -> "SimConfig":
        d = dict(d)
        if "jobs" in d:
            jobs = tuple(SimJob(j["code"], tuple(j["p_values"])) for j in d.pop("jobs"))
        else:
            jobs = (SimJob(d.pop("code"), tuple(d.pop("p_values"))),)
        return cls(jobs=jobs, **d)

    @classmethod
    def from_file(cls, path: str | Path) -> "SimConfig":
        try:
            return cls.from_dict(json.loads(Path(path).read_text()))
        except json.JSONDecodeError as e:
            raise ValueError(f"malformed config file {path}: {e}") from e


@dataclass
class PointResult:
    """Aggregated counts and derived estimates for one (code, p) point."""

    code_name: str
    p: float
    trials: int
    fc_failures: int
    msc_failures: int
    undetected: int
    total_iterations: int
    subset_failures: dict[tuple[int, ...], int] | None = field(default=None)
    skr_fc: float = 0.0
    skr_msc: float = 0.0

    @property
    def fer_fc(self) -> float:
        return self.fc_failures / self.trials

    @property
    def fer_msc(self) -> float:
        return self.msc_failures / self.trials

    @property
    def mean_iters(self) -> float:
        return self.total_iterations / self.trials

    def csv_row(self) -> str:
        lo_fc, hi_fc = wilson_interval(self.fc_failures, self.trials)
        lo_m, hi_m = wilson_interval(self.msc_failures, self.trials)
        vals = [
            self.code_name,
            f"{self.p:g}",
            str(self.trials),
            str(self.fc_failures),
            str(self.msc_failures),
            str(self.undetected),
            f"{self.fer_fc:.6f}",
            f"{lo_fc:.6f}",
            f"{hi_fc:.6f}",
            f"{self.fer_msc:.6f}",
            f"{lo_m:.6f}",
            f"{hi_m:.6f}",
            f"{self.skr_fc:.6f}",
            f"{self.skr_msc:.6f}",
            f"{self.mean_iters:.4f}",
        ]
        return ",".join(vals)


@dataclass
class SimResult:
    config: SimConfig
    points: list[PointResult]

    def to_csv(self) -> str:
        return "\n".join([CSV_HEADER] + [pt.csv_row() for pt in self.points]) + "\n"

    def write_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv())


# ----------------------------------------------------------------------
# Worker plumbing: each process expands the code and builds one decoder.
# ----------------------------------------------------------------------

_WORKER: dict = {}


def _init_worker(code_dict: dict, cfg_kwargs: dict) -> None:
    code = QcCode.from_dict(code_dict)
    _WORKER["code"] = code
    _WORKER["decoder"] = SumProductDecoder(expand(code), DecoderConfig(**cfg_kwargs))
    _WORKER["cfg"] = DecoderConfig(**cfg_kwargs)


def _run_chunk(args: tuple) -> tuple[int, int, int, int, dict]:
    p, base_seed, job_idx, point_idx, trial_indices, record_per_subset = args
    code: QcCode = _WORKER["code"]
    model = ChannelModel(code.field.q, p)
    fc_fail = msc_fail = undetected = total_iters = 0
    subset_failures: dict[tuple[int, ...], int] = {}
    for t in trial_indices:
        rng = np.random.default_rng(
            np.random.SeedSequence((base_seed, job_idx, point_idx, t))
        )
        out = run_trial(
            code,
            model,
            _WORKER["cfg"],
            rng,
            decoder=_WORKER["decoder"],
            record_per_subset=record_per_subset,
        )
        fc_fail += not out.fc_success
        msc_fail += not out.msc_success
        undetected += out.undetected_error
        total_iters += out.iterations
        if out.per_subset_success is not None:
            for b, ok in out.per_subset_success.items():
                subset_failures[b] = subset_failures.get(b, 0) + (not ok)
    return fc_fail, msc_fail, undetected, total_iters, subset_failures


def _resolve_workers(requested: int) -> int:
    return requested if requested > 0 else (os.cpu_count() or 1)


def run_point(
    code: QcCode,
    code_name: str,
    p: float,
    trials: int,
    base_seed: int,
    cfg: DecoderConfig,
    workers: int = 1,
    job_idx: int = 0,
    point_idx: int = 0,
    record_per_subset: bool = False,
) -> PointResult:
    """Estimate failure rates at one transition probability.

    Trials are independent; per-trial seeds depend only on the identifying
    indices, so any worker split yields identical aggregates.
    """
    workers = _resolve_workers(workers)
    cfg_kwargs = {"max_iterations": cfg.max_iterations, "epsilon": cfg.epsilon}
    all_trials = list(range(trials))
    chunks = [
        (p, base_seed, job_idx, point_idx, all_trials[i::workers], record_per_subset)
        for i in range(workers)
        if all_trials[i::workers]
    ]
    if workers == 1 or len(chunks) <= 1:
        _init_worker(code.to_dict(), cfg_kwargs)
        parts = [_run_chunk(c) for c in chunks]
    else:
        ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
        with ctx.Pool(workers, initializer=_init_worker, initargs=(code.to_dict(), cfg_kwargs)) as pool:
            parts = pool.map(_run_chunk, chunks)

    fc_fail = sum(x[0] for x in parts)
    msc_fail = sum(x[1] for x in parts)
    undetected = sum(x[2] for x in parts)
    total_iters = sum(x[3] for x in parts)
    subset_failures: dict[tuple[int, ...], int] | None = None
    if record_per_subset:
        subset_failures = {}
        for part in parts:
            for b, k in part[4].items():
                subset_failures[b] = subset_failures.get(b, 0) + k
    point = PointResult(
        code_name=code_name,
        p=p,
        trials=trials,
        fc_failures=fc_fail,
        msc_failures=msc_fail,
        undetected=undetected,
        total_iterations=total_iters,
        subset_failures=subset_failures,
    )
    point.skr_fc = skr(1.0 - point.fer_fc, code)
    point.skr_msc = skr(1.0 - point.fer_msc, code)
    if msc_fail > fc_fail:
        raise AssertionError("subset failures exceeded full-word failures; dominance broken")
    return point


def resolve_code_path(name: str) -> Path:
    """Resolve a code reference: an existing path, or a shipped code name."""
    p = Path(name)
    if p.exists():
        return p
    builtin = Path(__file__).parent / "data" / "codes" / f"{name}.json"
    if builtin.exists():
        return builtin
    raise FileNotFoundError(f"code file or builtin name not found: {name}")


def sweep(config: SimConfig, csv_path: str | Path | None = None) -> SimResult:
    """Run every (code, p) point in the configuration; optionally write CSV."""
    points: list[PointResult] = []
    for job_idx, job in enumerate(config.jobs):
        path = resolve_code_path(job.code)
        code = load_code(path)
        code_name = path.stem
        for point_idx, p in enumerate(job.p_values):
            points.append(
                run_point(
                    code,
                    code_name,
                    p,
                    config.trials,
                    config.base_seed,
                    config.decoder_config(),
                    workers=config.workers,
                    job_idx=job_idx,
                    point_idx=point_idx,
                    record_per_subset=config.record_per_subset,
                )
            )
    result = SimResult(config, points)
    if csv_path is not None:
        result.write_csv(csv_path)
    return result
