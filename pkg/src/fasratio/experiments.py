"""Monte Carlo estimates of ``Pr(X/Y >= r)`` and ``Pr(X*/Y* >= r)`` on D(n, p).

Trial ``k`` at size ``n`` draws its digraph from Philox stream ``(k, n, 1)``
of the master seed, so a trial depends only on ``(seed, n, k)``: raising
``trials`` appends samples, and sweeping ``n`` never reshuffles an existing
size. Local-search restarts of trial ``k`` use stream ``k`` of the solver's
own stream family (see ``solve_local_search``).

``Y = 0`` trials count as hits (the ratio convention) but are left out of
the mean-ratio statistics, where the ratio is undefined; how many were left
out is reported alongside.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Iterator

from fasratio._rng import StreamFactory
from fasratio.bounds import (
    NA_CAPACITY,
    NA_HYPOTHESIS,
    BoundParams,
    amplify_by_permutations,
    bound_table_row,
    hoeffding_ratio_bound,
)
from fasratio.errors import CapacityError
from fasratio.fas import DP_MAX_N, solve_exact_dp, solve_local_search
from fasratio.graph import ArcSplit, _sample, arc_split, ratio_event

SOLVERS = ("exact-dp", "local-search", "none")


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    p: float
    epsilon: float
    trials: int
    seed: int = 0
    solver: str = "none"
    restarts: int = 10

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.solver not in SOLVERS:
            raise ValueError(f"solver must be one of {SOLVERS}, got {self.solver!r}")
        if self.solver == "exact-dp" and self.n > DP_MAX_N:
            raise CapacityError(f"exact-dp is capped at n={DP_MAX_N}, got n={self.n}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")

    @property
    def r(self) -> float:
        return 1.0 + self.epsilon


@dataclass(frozen=True)
class Trial:
    index: int
    m: int
    raw: ArcSplit
    opt: ArcSplit | None


@dataclass(frozen=True)
class ExperimentSummary:
    config: ExperimentConfig
    trials: int
    hits_raw: int
    mean_ratio_raw: float | None
    excluded_raw: int
    hits_opt: int | None = None
    mean_ratio_opt: float | None = None
    excluded_opt: int | None = None
    heuristic: bool = False

    @property
    def freq_raw(self) -> float:
        return self.hits_raw / self.trials

    @property
    def freq_opt(self) -> float | None:
        return None if self.hits_opt is None else self.hits_opt / self.trials

    @property
    def stderr_raw(self) -> float:
        return _binomial_stderr(self.freq_raw, self.trials)

    @property
    def stderr_opt(self) -> float | None:
        f = self.freq_opt
        return None if f is None else _binomial_stderr(f, self.trials)

    def to_dict(self) -> dict:
        out = asdict(self)
        out.update(
            freq_raw=self.freq_raw, stderr_raw=self.stderr_raw,
            freq_opt=self.freq_opt, stderr_opt=self.stderr_opt,
        )
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _binomial_stderr(freq, trials):
    return math.sqrt(freq * (1.0 - freq) / trials)


def iter_trials(config: ExperimentConfig) -> Iterator[Trial]:
    """Sample, split and (if a solver is set) solve each trial in turn."""
    factory = StreamFactory(config.seed)
    for k in range(config.trials):
        d = _sample(config.n, config.p, factory.stream(k, config.n, 1))
        raw = arc_split(d)
        opt = None
        if config.solver == "exact-dp":
            sol = solve_exact_dp(d)
            opt = ArcSplit(sol.x_star, sol.y_star)
        elif config.solver == "local-search":
            sol = solve_local_search(d, restarts=config.restarts, seed=config.seed, stream=k)
            opt = ArcSplit(sol.x_star, sol.y_star)
        yield Trial(k, raw.x + raw.y, raw, opt)


def _tally(splits, r):
    hits = 0
    excluded = 0
    ratio_sum = 0.0
    for split in splits:
        hits += ratio_event(split, r)
        if split.y == 0:
            excluded += 1
        else:
            ratio_sum += split.x / split.y
    kept = len(splits) - excluded
    mean = ratio_sum / kept if kept else None
    return hits, mean, excluded


def summarize(config: ExperimentConfig, trials: list[Trial]) -> ExperimentSummary:
    hits_raw, mean_raw, excl_raw = _tally([t.raw for t in trials], config.r)
    fields = dict(config=config, trials=len(trials), hits_raw=hits_raw,
                  mean_ratio_raw=mean_raw, excluded_raw=excl_raw)
    if config.solver != "none":
        hits_opt, mean_opt, excl_opt = _tally([t.opt for t in trials], config.r)
        fields.update(hits_opt=hits_opt, mean_ratio_opt=mean_opt, excluded_opt=excl_opt,
                      heuristic=config.solver == "local-search")
    return ExperimentSummary(**fields)


def run_ratio_trials(config: ExperimentConfig) -> ExperimentSummary:
    """Raw split under the identity ordering only; any solver setting is ignored."""
    if config.solver != "none":
        config = ExperimentConfig(**{**asdict(config), "solver": "none"})
    return summarize(config, list(iter_trials(config)))


def run_fas_trials(config: ExperimentConfig) -> ExperimentSummary:
    """Raw and optimised splits on the same samples.

    With ``solver="local-search"`` the optimised side is heuristic: its
    ``y_star`` can exceed the true minimum, so the ratio and hit frequency it
    yields are conservative (too small) and the summary says so.
    """
    if config.solver == "none":
        raise ValueError("run_fas_trials needs solver 'exact-dp' or 'local-search'")
    return summarize(config, list(iter_trials(config)))


COMPARISON_COLUMNS = (
    "n", "p", "epsilon", "r", "K", "trials", "solver",
    "freq_raw", "stderr_raw", "mean_ratio_raw", "excluded_raw",
    "freq_opt", "stderr_opt", "mean_ratio_opt", "excluded_opt",
    "exact_tail",
    "eq3", "log_eq3", "eq4", "log_eq4", "eq5", "log_eq5", "eq6", "log_eq6",
    "eq3_amplified", "log_eq3_amplified", "eq6_amplified", "log_eq6_amplified",
    "vacuous", "violations", "outlier", "opt_label",
)


def compare_to_bounds(summary: ExperimentSummary, params: BoundParams) -> dict:
    """One report row: empirical frequencies next to the exact tail and every bound.

    ``violations`` lists guaranteed bounds (Hoeffding, Bennett, direct
    Chernoff) that the exact tail exceeds, which should never happen.
    ``outlier`` is set when the raw frequency sits more than 4 standard
    errors from the exact tail. ``vacuous`` lists bounds above 1.
    """
    cfg = summary.config
    if (cfg.n, cfg.p, cfg.epsilon) != (params.n, params.p, params.epsilon):
        raise ValueError(
            f"summary is for (n, p, epsilon) = {(cfg.n, cfg.p, cfg.epsilon)}, "
            f"params are {(params.n, params.p, params.epsilon)}"
        )
    row = bound_table_row(params)
    amp3 = amplify_by_permutations(hoeffding_ratio_bound(params), params.n)
    row["eq3_amplified"] = math.inf if amp3 > 709 else math.exp(amp3)
    row["log_eq3_amplified"] = amp3
    row.update(
        trials=summary.trials, solver=cfg.solver,
        freq_raw=summary.freq_raw, stderr_raw=summary.stderr_raw,
        mean_ratio_raw=summary.mean_ratio_raw, excluded_raw=summary.excluded_raw,
        freq_opt=summary.freq_opt, stderr_opt=summary.stderr_opt,
        mean_ratio_opt=summary.mean_ratio_opt, excluded_opt=summary.excluded_opt,
    )

    vacuous = [b for b in ("eq3", "eq4", "eq5", "eq6")
               if isinstance(row["log_" + b], float) and row["log_" + b] > 0]
    violations = []
    outlier = False
    exact = row["exact_tail"]
    if exact != NA_CAPACITY:
        log_exact = math.log(exact) if exact > 0 else -math.inf
        for b in ("eq3", "eq4", "eq6"):
            bound = row["log_" + b]
            if bound != NA_HYPOTHESIS and log_exact > bound + 1e-12:
                violations.append(b)
        se = math.sqrt(exact * (1.0 - exact) / summary.trials)
        outlier = abs(summary.freq_raw - exact) > 4.0 * se + 1e-12
    row["vacuous"] = ";".join(vacuous)
    row["violations"] = ";".join(violations)
    row["outlier"] = outlier
    row["opt_label"] = {"none": "", "exact-dp": "exact", "local-search": "heuristic"}[cfg.solver]
    return {c: row.get(c) for c in COMPARISON_COLUMNS}
