"""
Monte Carlo: raw vs. optimised arc ratio
========================================

Empirical Pr(X/Y >= r) against the exact value, then the mean optimised
ratio X*/Y* drifting towards 1 as n grows at fixed p.
"""
from fasratio.bounds import BoundParams
from fasratio.experiments import ExperimentConfig, compare_to_bounds, run_fas_trials, run_ratio_trials

cfg = ExperimentConfig(n=3, p=0.5, epsilon=0.0, trials=100_000, seed=0)
summary = run_ratio_trials(cfg)
row = compare_to_bounds(summary, BoundParams(3, 0.5, 0.0))
print(f"Pr(X/Y >= 1), n=3: empirical {summary.freq_raw:.5f} +- {summary.stderr_raw:.5f}, "
      f"exact {row['exact_tail']:.5f}")

print("\nmean optimised ratio, p=0.5, 100 trials each (exact DP)")
for n in (8, 10, 12, 14, 16):
    s = run_fas_trials(ExperimentConfig(n=n, p=0.5, epsilon=0.5, trials=100, solver="exact-dp"))
    print(f"  n={n:2d}: mean X/Y = {s.mean_ratio_raw:.3f}  mean X*/Y* = {s.mean_ratio_opt:.3f}  "
          f"Pr(X*/Y* >= 1.5) ~ {s.freq_opt:.2f}")
