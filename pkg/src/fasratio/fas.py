"""Minimum feedback arc set solvers.

All three solvers return the vertex ordering itself; the feedback arcs are the
arcs that run backwards under it. Since ``x_star + y_star = m`` for a fixed
digraph, the ordering that minimises ``y_star`` also maximises ``X*/Y*``, and
every optimal ordering gives the same ratio.

``solve_bruteforce`` enumerates all rank vectors and is kept deliberately
simple; it is the oracle for ``solve_exact_dp``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from fasratio._rng import StreamFactory
from fasratio.errors import CapacityError
from fasratio.graph import Digraph, VertexOrdering, arc_split

BRUTEFORCE_MAX_N = 8
DP_MAX_N = 24

METHODS = ("brute-force", "subset-dp", "local-search")


@dataclass(frozen=True)
class FasSolution:
    ordering: VertexOrdering
    y_star: int
    x_star: int
    optimal: bool
    method: str

    @property
    def m(self) -> int:
        return self.x_star + self.y_star

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "y_star": self.y_star,
            "x_star": self.x_star,
            "m": self.m,
            "ordering": list(self.ordering.ranks),
            "optimal": self.optimal,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "FasSolution":
        sol = cls(
            ordering=VertexOrdering(tuple(data["ordering"])),
            y_star=int(data["y_star"]),
            x_star=int(data["x_star"]),
            optimal=bool(data["optimal"]),
            method=data["method"],
        )
        if "m" in data and int(data["m"]) != sol.m:
            raise ValueError(f"m={data['m']} disagrees with x_star + y_star = {sol.m}")
        return sol


def _solution(d, ordering, optimal, method):
    x, y = arc_split(d, ordering)
    return FasSolution(ordering, y_star=y, x_star=x, optimal=optimal, method=method)


@lru_cache(maxsize=None)
def _all_rank_vectors(n):
    return np.array(list(itertools.permutations(range(n))), dtype=np.int8)


def solve_bruteforce(d: Digraph) -> FasSolution:
    """Exhaustive minimum over all ``n!`` orderings.

    Ties go to the lexicographically smallest rank vector.
    """
    if d.n > BRUTEFORCE_MAX_N:
        raise CapacityError(f"brute force is capped at n={BRUTEFORCE_MAX_N}, got n={d.n}")
    perms = _all_rank_vectors(d.n)
    us, vs = np.nonzero(d.adj)
    backward = (perms[:, us] > perms[:, vs]).sum(axis=1)
    best = int(np.argmin(backward))
    return _solution(d, VertexOrdering(tuple(perms[best])), True, "brute-force")


def _popcounts(n):
    pc = np.zeros(1 << n, dtype=np.uint8)
    for k in range(n):
        pc[1 << k:1 << (k + 1)] = pc[:1 << k] + 1
    return pc


def _out_masks(d):
    weights = 1 << np.arange(d.n, dtype=np.int64)
    return [int(w) for w in d.adj.astype(np.int64) @ weights]


def solve_exact_dp(d: Digraph) -> FasSolution:
    """Exact minimum by dynamic programming over vertex subsets.

    ``f(S)`` is the least number of backward arcs inside ``S`` over orderings
    of ``S``. Putting ``v`` last among ``S`` turns every arc ``v -> S - {v}``
    backward, so ``f(S) = min_v f(S - {v}) + |out(v) & (S - {v})|``. The table
    is filled one subset size at a time, vectorised over all subsets of that
    size. ``O(2**n * n)`` time, one ``int16`` per subset.
    """
    n = d.n
    if n > DP_MAX_N:
        raise CapacityError(f"subset DP is capped at n={DP_MAX_N}, got n={n}")
    out = _out_masks(d)
    pc = _popcounts(n)
    full = (1 << n) - 1
    idx = np.int32 if n < 31 else np.int64

    f = np.full(1 << n, np.iinfo(np.int16).max, dtype=np.int16)
    f[0] = 0
    by_size = np.argsort(pc, kind="stable").astype(idx)
    bounds = np.concatenate(([0], np.cumsum(np.bincount(pc, minlength=n + 1))))
    for k in range(1, n + 1):
        layer = by_size[bounds[k]:bounds[k + 1]]
        for v in range(n):
            bit = idx(1 << v)
            sel = layer[(layer & bit) != 0]
            rest = sel ^ bit
            cand = f[rest] + pc[rest & idx(out[v])]
            np.minimum(f[sel], cand, out=cand)
            f[sel] = cand

    # Backtrack from the full set; the lowest feasible vertex goes last.
    seq = []
    s = full
    while s:
        for v in range(n):
            bit = 1 << v
            if s & bit:
                rest = s ^ bit
                if f[s] == f[rest] + pc[rest & out[v]]:
                    seq.append(v)
                    s = rest
                    break
    seq.reverse()
    sol = _solution(d, VertexOrdering.from_sequence(seq), True, "subset-dp")
    assert sol.y_star == f[full]
    return sol


def _reinsertion_deltas(w):
    """Change in backward arcs for moving the vertex at position i to j.

    ``w[i, k] = A[s_i, s_k] - A[s_k, s_i]`` for the current sequence ``s``.
    Moving right past ``s_k`` flips ``s_i -> s_k`` backward and ``s_k -> s_i``
    forward, adding ``w[i, k]``; moving left past it adds ``-w[i, k]``.
    """
    n = w.shape[0]
    c = np.zeros((n, n + 1), dtype=np.int64)
    np.cumsum(w, axis=1, out=c[:, 1:])
    diag = c[np.arange(n), np.arange(n) + 1][:, None]   # sum_{k <= i}
    before = c[np.arange(n), np.arange(n)][:, None]     # sum_{k < i}
    right = c[:, 1:] - diag    # j > i: sum_{i < k <= j}
    left = -(before - c[:, :-1])   # j < i: -sum_{j <= k < i}
    j = np.arange(n)[None, :]
    i = np.arange(n)[:, None]
    return np.where(j > i, right, np.where(j < i, left, 0))


def _descend(a, seq):
    """Best-improvement single-vertex reinsertion until no move helps."""
    while True:
        sub = a[np.ix_(seq, seq)]
        delta = _reinsertion_deltas(sub - sub.T)
        flat = int(np.argmin(delta))
        if delta.flat[flat] >= 0:
            return seq
        i, j = divmod(flat, len(seq))
        v = seq[i]
        seq = np.delete(seq, i)
        seq = np.insert(seq, j, v)


def solve_local_search(d: Digraph, restarts: int = 10, seed: int = 0, *, stream: int = 0) -> FasSolution:
    """Multi-start local search over vertex orderings.

    Restart ``i`` starts from a uniform random permutation drawn from Philox
    stream ``(i, stream, 2)`` of ``seed`` and descends with best-improvement
    reinsertion moves, the first minimal move in row-major ``(from, to)``
    order winning ties. The best restart is returned, earliest on ties.
    """
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    a = d.adj.astype(np.int64)
    factory = StreamFactory(seed)
    best = None
    for i in range(restarts):
        seq = factory.stream(i, stream, 2).permutation(d.n)
        seq = _descend(a, seq)
        sol = _solution(d, VertexOrdering.from_sequence(seq.tolist()), False, "local-search")
        if best is None or sol.y_star < best.y_star:
            best = sol
    return best


def solve(d: Digraph, method: str = "subset-dp", restarts: int = 10, seed: int = 0) -> FasSolution:
    if method == "brute-force":
        return solve_bruteforce(d)
    if method == "subset-dp":
        return solve_exact_dp(d)
    if method == "local-search":
        return solve_local_search(d, restarts=restarts, seed=seed)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
