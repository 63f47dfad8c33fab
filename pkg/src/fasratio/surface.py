"""Numerical check that the quadratic Chernoff exponent is a valid bound.

For the centred statistic ``X - rY`` the per-pair log-MGF is
``F(t) = log[(q + p e^t)(q + p e^{-rt})]`` and its quadratic Taylor
polynomial at 0 is ``T2(t) = -p eps t + pq(1 + r^2) t^2 / 2``, minimised at
``t_min = eps / (q (1 + r^2))``. The direct bound holds iff
``R(p, s) = T2(t_min) - F(t_min) >= 0`` on ``[0, 1/2] x [0, 1]`` where
``r = 1 / (1 - s)``. ``R`` vanishes along ``p = 0`` and ``s = 0``, so the
quantity checked on the grid is the scaled surface ``R / (p s^4)``, with its
two boundary traces given by closed forms.

In ``s`` coordinates, with ``d = (1 - s)^2 + 1``::

    t_min     = s (1 - s) / (q d)
    r t_min   = s / (q d)
    T2(t_min) = -p s^2 / (2 q d)

which stays finite at ``s = 1`` (``r`` infinite).

Evaluation policy for :func:`scaled_difference`:

* ``p == 0`` or ``s == 0``: boundary formula (``limit_p0`` / ``series_s0``).
* ``p < 1e-3`` or ``s < 1e-2``: near-boundary, evaluated in arbitrary
  precision (50 digits plus 3 per decade of ``s`` below 1).
* otherwise float64, with the leading cancellation between ``T2`` and ``F``
  removed algebraically (see ``_difference_over_p``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TextIO

import mpmath
import numpy as np

NEAR_P = 1e-3
NEAR_S = 1e-2
MP_DPS = 50


def cgf_F(t: float, p: float, r: float) -> float:
    """``log[(q + p e^t)(q + p e^{-rt})]``, written with ``log1p``/``expm1``."""
    return math.log1p(p * math.expm1(t)) + math.log1p(p * math.expm1(-r * t))


def taylor_T2(t: float, p: float, epsilon: float) -> float:
    q = 1.0 - p
    r = 1.0 + epsilon
    return -(p * epsilon) * t + 0.5 * p * q * (1.0 + r * r) * t * t


def t_min(p: float, epsilon: float) -> float:
    r = 1.0 + epsilon
    return epsilon / ((1.0 - p) * (1.0 + r * r))


def limit_p0(s: float) -> float:
    """``lim_{p -> 0} R(p, s) / p`` for ``0 < s <= 1``."""
    if not 0.0 < s <= 1.0:
        raise ValueError(f"limit_p0 needs 0 < s <= 1, got {s}")
    d = (1.0 - s) ** 2 + 1.0
    # -e^a - e^b + 2 == -expm1(a) - expm1(b)
    return -0.5 * s * s / d - math.expm1(s * (1.0 - s) / d) - math.expm1(-s / d)


def series_s0(p: float) -> float:
    """Coefficient of ``s^4`` in ``R(p, s) / p`` as ``s -> 0``."""
    if not 0.0 <= p <= 0.5:
        raise ValueError(f"series_s0 needs 0 <= p <= 1/2, got {p}")
    return (18.0 * p * p - 30.0 * p + 11.0) / (192.0 * (1.0 - p) ** 3)


def _expm1_tail(x):
    """``e^x - 1 - x - x^2/2`` without cancellation."""
    if abs(x) >= 0.5:
        return math.expm1(x) - x - 0.5 * x * x
    term = x * x * x / 6.0
    total = 0.0
    for k in range(4, 28):
        total += term
        term *= x / k
    return total


def _log1p_tail(x):
    """``log(1 + x) - x + x^2/2`` without cancellation."""
    if abs(x) >= 0.1:
        return math.log1p(x) - x + 0.5 * x * x
    total = 0.0
    power = x * x * x
    for k in range(3, 24):
        total += power / k if k % 2 else -power / k
        power *= x
    return total


def _difference_over_p(p, s):
    """``R(p, s) / p`` in float64 for ``p > 0``.

    With ``a = t_min``, ``b = -r t_min``, ``A = e^a - 1``, ``B = e^b - 1``, the
    order ``s^2`` parts of ``T2`` and ``F / p`` cancel in closed form, which
    leaves only order ``s^3`` pieces::

        R / p = (p/2) [(A - a)(A + a) + (B - b)(B + b)]
                - E(a) - E(b) - [L(pA) + L(pB)] / p

    where ``E`` and ``L`` are the cubic-and-up tails of ``expm1`` and ``log1p``.
    """
    q = 1.0 - p
    d = (1.0 - s) ** 2 + 1.0
    a = s * (1.0 - s) / (q * d)
    b = -s / (q * d)
    ea = 0.5 * a * a + _expm1_tail(a)     # A - a
    eb = 0.5 * b * b + _expm1_tail(b)
    A = a + ea
    B = b + eb
    quad = 0.5 * p * (ea * (A + a) + eb * (B + b))
    return quad - _expm1_tail(a) - _expm1_tail(b) - (_log1p_tail(p * A) + _log1p_tail(p * B)) / p


def _scaled_mp(p, s):
    # R / p is O(s^4) out of O(s) pieces: spend three extra digits per decade of s
    dps = MP_DPS + 3 * max(0, math.ceil(-math.log10(s)))
    with mpmath.workdps(dps):
        p = mpmath.mpf(p)
        s = mpmath.mpf(s)
        d = (1 - s) ** 2 + 1
        if p == 0:
            inner = -s * s / (2 * d) - mpmath.expm1(s * (1 - s) / d) - mpmath.expm1(-s / d)
        else:
            q = 1 - p
            F = mpmath.log1p(p * mpmath.expm1(s * (1 - s) / (q * d))) \
                + mpmath.log1p(p * mpmath.expm1(-s / (q * d)))
            inner = -s * s / (2 * q * d) - F / p
        return float(inner / s ** 4)


def _check_domain(p, s):
    if not (0.0 <= p <= 0.5 and 0.0 <= s <= 1.0):
        raise ValueError(f"(p, s) = ({p}, {s}) outside [0, 1/2] x [0, 1]")


def scaled_difference(p: float, s: float) -> float:
    """``[T2(t_min) - F(t_min)] / (p s^4)`` on the closed domain."""
    _check_domain(p, s)
    if s == 0.0:
        return series_s0(p)     # includes the corner, 11/192 at p = 0
    if p == 0.0:
        if s < NEAR_S:
            return _scaled_mp(0.0, s)
        return limit_p0(s) / s ** 4
    if p < NEAR_P or s < NEAR_S:
        return _scaled_mp(p, s)
    return _difference_over_p(p, s) / s ** 4


def scaled_difference_reference(p: float, s: float, dps: int = 60) -> float:
    """Slow extended-precision evaluation straight from the definitions.

    Builds ``r``, ``eps``, ``t_min``, ``T2`` and ``F`` literally (plain ``exp``
    and ``log``, no ``s``-coordinate rewriting) and relies on the working
    precision to absorb the cancellation. Interior points only.
    """
    if not (0.0 < p <= 0.5 and 0.0 < s < 1.0):
        raise ValueError(f"reference evaluation needs an interior point, got ({p}, {s})")
    with mpmath.workdps(dps):
        p = mpmath.mpf(p)
        s = mpmath.mpf(s)
        q = 1 - p
        r = 1 / (1 - s)
        eps = r - 1
        t = eps / (q * (1 + r * r))
        T2 = -p * eps * t + p * q * (1 + r * r) * t * t / 2
        F = mpmath.log((q + p * mpmath.exp(t)) * (q + p * mpmath.exp(-r * t)))
        return float((T2 - F) / (p * s ** 4))


@dataclass(frozen=True)
class SurfaceGrid:
    spacing: float
    p: np.ndarray        # shape (P,)
    s: np.ndarray        # shape (S,)
    values: np.ndarray   # shape (P, S), values[i, j] at (p[i], s[j])

    @property
    def n_points(self) -> int:
        return self.values.size

    @property
    def min_point(self) -> tuple[float, float, float]:
        """``(p, s, value)`` of the least value; first in ``(p, s)`` order on ties."""
        i, j = np.unravel_index(int(np.argmin(self.values)), self.values.shape)
        return float(self.p[i]), float(self.s[j]), float(self.values[i, j])

    @property
    def all_positive(self) -> bool:
        return bool(np.all(self.values > 0))

    def points(self):
        for i, p in enumerate(self.p):
            for j, s in enumerate(self.s):
                yield float(p), float(s), float(self.values[i, j])


def _steps(length, spacing):
    count = length / spacing
    steps = round(count)
    if steps < 1 or abs(count - steps) > 1e-9 * max(1.0, count):
        raise ValueError(f"spacing {spacing} does not divide {length}")
    return steps


def scan_surface(spacing: float = 0.01) -> SurfaceGrid:
    """Evaluate the scaled surface on the inclusive grid of the given step."""
    if spacing <= 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    ps = np.linspace(0.0, 0.5, _steps(0.5, spacing) + 1)
    ss = np.linspace(0.0, 1.0, _steps(1.0, spacing) + 1)
    values = np.array([[scaled_difference(float(p), float(s)) for s in ss] for p in ps])
    return SurfaceGrid(spacing, ps, ss, values)


def spot_check(n_points: int = 20, seed: int = 0, tol: float = 1e-10) -> float:
    """Largest gap between the fast path and the reference at random interior points.

    Raises ``AssertionError`` if any gap exceeds ``tol``.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for p, s in zip(rng.uniform(NEAR_P, 0.5, n_points), rng.uniform(NEAR_S, 1.0, n_points)):
        gap = abs(scaled_difference(p, s) - scaled_difference_reference(p, s))
        worst = max(worst, gap)
        if gap > tol:
            raise AssertionError(f"fast path off by {gap:.3e} at (p, s) = ({p}, {s})")
    return worst


def _boundary_flag(p, s):
    if p == 0.0 and s == 0.0:
        return "p0s0"
    if p == 0.0:
        return "p0"
    if s == 0.0:
        return "s0"
    return ""


def emit_surface_csv(grid: SurfaceGrid, fh: TextIO) -> None:
    """Write ``p,s,value,boundary`` rows in ``(p, s)`` lexicographic order.

    Floats use ``repr`` (shortest round-tripping form). The fourth column marks
    the two boundary traces: ``p0``, ``s0``, and ``p0s0`` for the shared corner.
    """
    fh.write("p,s,value,boundary\n")
    for p, s, v in grid.points():
        fh.write(f"{p!r},{s!r},{v!r},{_boundary_flag(p, s)}\n")


def read_surface_csv(fh: TextIO) -> list[tuple[float, float, float, str]]:
    header = fh.readline().strip()
    if header != "p,s,value,boundary":
        raise ValueError(f"unexpected header {header!r}")
    rows = []
    for line in fh:
        p, s, v, flag = line.rstrip("\n").split(",")
        rows.append((float(p), float(s), float(v), flag))
    return rows
