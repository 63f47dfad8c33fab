"""Tail bounds for ``Pr(X - rY >= 0)`` with ``X, Y ~ Binomial(K, p)`` independent.

Every bound is returned as the natural log of the bound's value. Vacuous
bounds (log > 0) are returned unchanged. Positive log values are legitimate
and callers decide how to present them.

Which bound is valid where:

* ``hoeffding_ratio_bound`` -- any ``0 < p < 1``; exponent ``-p^2 delta^2 K``
  with ``delta = eps / (2 + eps)``, kept exactly as printed although
  Hoeffding would allow twice that exponent.
* ``bennett_bound`` -- ``p <= 1/2`` and ``r p <= 1``.
* ``bennett_small_eps`` -- the small-eps form of the Bennett bound with the
  ``1 + O(eps)`` factor set to 1. An approximation, not a guaranteed bound.
* ``chernoff_direct_bound`` -- ``0 < p <= 1/2``, any ``eps >= 0``.

``exact_ratio_tail`` computes the probability itself by summing over the
values of ``Y``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from fasratio.errors import CapacityError, HypothesisError

EXACT_MAX_K = 10_000


@dataclass(frozen=True)
class BoundParams:
    n: int
    p: float
    epsilon: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"p must lie in (0, 1), got {self.p}")
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")

    @property
    def K(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def r(self) -> float:
        return 1.0 + self.epsilon

    @property
    def q(self) -> float:
        return 1.0 - self.p


def bennett_h(u: float) -> float:
    """``(1 + u) log(1 + u) - u``."""
    if u < 0:
        raise ValueError(f"h(u) needs u >= 0, got {u}")
    return (1.0 + u) * math.log1p(u) - u


def hoeffding_ratio_bound(params: BoundParams) -> float:
    delta = params.epsilon / (2.0 + params.epsilon)
    return math.log(2.0) - params.p ** 2 * delta ** 2 * params.K


def _check_bennett(params):
    if params.p > 0.5:
        raise HypothesisError(f"Bennett bound needs p <= 1/2, got p={params.p}")
    if params.r * params.p > 1.0:
        raise HypothesisError(f"Bennett bound needs r*p <= 1, got r*p={params.r * params.p}")


def bennett_bound(params: BoundParams) -> float:
    _check_bennett(params)
    p, q, r, K = params.p, params.q, params.r, params.K
    w = 1.0 + r * r
    return -w * K * p * q * bennett_h(params.epsilon / (w * q))


def bennett_small_eps(params: BoundParams) -> float:
    _check_bennett(params)
    p, q, r, K = params.p, params.q, params.r, params.K
    return -K * p * params.epsilon ** 2 / (2.0 * (1.0 + r * r) * q)


def chernoff_direct_bound(params: BoundParams) -> float:
    if params.p > 0.5:
        raise HypothesisError(f"direct Chernoff bound needs 0 < p <= 1/2, got p={params.p}")
    p, q, r, K = params.p, params.q, params.r, params.K
    return -(p / (2.0 * q)) * K * params.epsilon ** 2 / (1.0 + r * r)


def binomial_log_pmf(K: int, p: float) -> np.ndarray:
    """``log P(B = k)`` for ``k = 0..K`` with ``B ~ Binomial(K, p)``."""
    k = np.arange(K + 1, dtype=float)
    log_choose = gammaln(K + 1.0) - gammaln(k + 1.0) - gammaln(K - k + 1.0)
    return log_choose + k * math.log(p) + (K - k) * math.log1p(-p)


def log_prob_y0(params: BoundParams) -> float:
    """``log P(Y = 0) = K log q``: the ``r -> infinity`` limit of the tail."""
    return params.K * math.log1p(-params.p)


def exact_ratio_tail(params: BoundParams) -> float:
    """``Pr(X - rY >= 0) = sum_y P(Y = y) P(X >= ceil(r y))``."""
    K = params.K
    if K > EXACT_MAX_K:
        raise CapacityError(f"exact tail is capped at K={EXACT_MAX_K}, got K={K}")
    pmf = np.exp(binomial_log_pmf(K, params.p))
    # sf[k] = P(X >= k), accumulated from the small upper tail downwards
    sf = np.append(np.cumsum(pmf[::-1])[::-1], 0.0)
    y = np.arange(K + 1)
    ry = params.r * y
    # ceil with a relative guard so that r*y landing a hair above an integer
    # through rounding (e.g. 1.1 * 10) does not skip that integer
    need = np.ceil(ry - 1e-9 * np.maximum(ry, 1.0)).astype(np.int64)
    need = np.minimum(need, K + 1)
    total = float(np.sum(pmf * sf[need]))
    return min(max(total, 0.0), 1.0)


def log_factorial(n: int) -> float:
    """``log n!`` by direct summation of ``log k``."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return math.fsum(math.log(k) for k in range(2, n + 1))


def amplify_by_permutations(log_bound: float, n: int) -> float:
    """Union bound over the ``n!`` vertex renumberings: ``log_bound + log n!``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return log_bound + log_factorial(n)


def threshold_constant(epsilon: float) -> float:
    """Infimum of ``C`` for which ``p = C log(n) / n`` drives the optimized tail to 0.

    Any ``C`` with ``C eps^2 / (4 (1 + (1 + eps)^2)) > 1`` works.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    return 4.0 * (1.0 + (1.0 + epsilon) ** 2) / epsilon ** 2


def threshold_margin(epsilon: float, C: float, n: int) -> float:
    """``log n! + chernoff_direct_bound`` at ``p = C log(n) / n``.

    Negative means the amplified bound is below 1 at this ``n``.
    """
    p = C * math.log(n) / n
    return amplify_by_permutations(chernoff_direct_bound(BoundParams(n, p, epsilon)), n)


NA_HYPOTHESIS = "n/a (hypothesis)"
NA_CAPACITY = "n/a (capacity)"

TABLE_COLUMNS = (
    "n", "p", "epsilon", "r", "K",
    "exact_tail", "log_exact_tail",
    "eq3", "log_eq3", "eq4", "log_eq4", "eq5", "log_eq5", "eq6", "log_eq6",
    "eq6_amplified", "log_eq6_amplified",
)


def _exp(log_value):
    return math.inf if log_value > 709.0 else math.exp(log_value)


def bound_table_row(params: BoundParams) -> dict:
    """Every bound at ``params``, in log and linear space.

    A bound whose hypotheses fail is reported as ``NA_HYPOTHESIS`` instead of
    raising, so one bad column does not cost the row.
    """
    row = {"n": params.n, "p": params.p, "epsilon": params.epsilon,
           "r": params.r, "K": params.K}
    try:
        tail = exact_ratio_tail(params)
    except CapacityError:
        row["exact_tail"] = row["log_exact_tail"] = NA_CAPACITY
    else:
        row["exact_tail"] = tail
        row["log_exact_tail"] = math.log(tail) if tail > 0 else -math.inf
    evaluators = {
        "eq3": hoeffding_ratio_bound,
        "eq4": bennett_bound,
        "eq5": bennett_small_eps,
        "eq6": chernoff_direct_bound,
    }
    for name, fn in evaluators.items():
        try:
            value = fn(params)
        except HypothesisError:
            row[name] = row["log_" + name] = NA_HYPOTHESIS
        else:
            row[name] = _exp(value)
            row["log_" + name] = value
    if isinstance(row["log_eq6"], float):
        amp = amplify_by_permutations(row["log_eq6"], params.n)
        row["eq6_amplified"] = _exp(amp)
        row["log_eq6_amplified"] = amp
    else:
        row["eq6_amplified"] = row["log_eq6_amplified"] = NA_HYPOTHESIS
    return row
