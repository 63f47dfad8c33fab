"""Directed Erdos-Renyi graphs and feedforward/feedback arc accounting.

A digraph is held as a dense boolean adjacency matrix; ``adj[i, j]`` is true
iff the arc ``i -> j`` exists. A vertex ordering assigns every vertex a rank,
and under that ordering an arc is *feedforward* when it runs from a lower to
a higher rank (an above-diagonal 1 of the renumbered matrix) and *feedback*
otherwise.

Sampling draws an ``n x n`` block of uniforms from the Philox stream of the
seed in row-major order and keeps ``u < p`` off the diagonal. The diagonal
draws are discarded, so the layout of the stream does not depend on ``p``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, TextIO

import numpy as np

from fasratio._rng import stream
from fasratio.errors import EdgeListError


@dataclass(frozen=True, eq=False)
class Digraph:
    """Simple digraph on vertices ``0..n-1``; 2-cycles allowed, loops not."""

    adj: np.ndarray

    def __post_init__(self):
        adj = np.array(self.adj, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1] or adj.shape[0] < 1:
            raise ValueError(f"adjacency must be a non-empty square matrix, got shape {adj.shape}")
        if adj.diagonal().any():
            raise ValueError("self-loops are not allowed")
        adj.setflags(write=False)
        object.__setattr__(self, "adj", adj)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u, v] = True
        return cls(adj)

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @property
    def m(self) -> int:
        return int(self.adj.sum())

    def arcs(self) -> list[tuple[int, int]]:
        """Arcs in row-major order."""
        return [(int(u), int(v)) for u, v in zip(*np.nonzero(self.adj))]

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash((self.n, self.adj.tobytes()))

    def __repr__(self):
        return f"Digraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class VertexOrdering:
    """``ranks[v]`` is the position of vertex ``v`` in the ordering."""

    ranks: tuple[int, ...]

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        if sorted(ranks) != list(range(len(ranks))):
            raise ValueError(f"ranks {ranks} are not a permutation of 0..{len(ranks) - 1}")
        object.__setattr__(self, "ranks", ranks)

    @classmethod
    def identity(cls, n: int) -> "VertexOrdering":
        return cls(tuple(range(n)))

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> "VertexOrdering":
        """Build from vertices listed first to last."""
        ranks = [0] * len(seq)
        for pos, v in enumerate(seq):
            ranks[int(v)] = pos
        return cls(tuple(ranks))

    @property
    def n(self) -> int:
        return len(self.ranks)

    def sequence(self) -> tuple[int, ...]:
        """Vertices listed first to last."""
        return self.inverse().ranks

    def inverse(self) -> "VertexOrdering":
        inv = [0] * self.n
        for v, r in enumerate(self.ranks):
            inv[r] = v
        return VertexOrdering(tuple(inv))

    def reversed(self) -> "VertexOrdering":
        return VertexOrdering(tuple(self.n - 1 - r for r in self.ranks))


class ArcSplit(NamedTuple):
    x: int  # feedforward arcs
    y: int  # feedback arcs


def sample_digraph(n: int, p: float, seed: int) -> Digraph:
    """Draw from D(n, p): every ordered pair ``i != j`` independently w.p. ``p``."""
    return _sample(n, p, stream(seed))


def _sample(n, p, rng):
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    adj = rng.random((n, n)) < p
    np.fill_diagonal(adj, False)
    return Digraph(adj)


def _check_ordering(d, ordering):
    if ordering.n != d.n:
        raise ValueError(f"ordering has length {ordering.n}, digraph has {d.n} vertices")


def arc_split(d: Digraph, ordering: VertexOrdering | None = None) -> ArcSplit:
    """Count feedforward and feedback arcs of ``d`` under ``ordering``.

    With no ordering the identity is used, i.e. the split of the adjacency
    matrix as stored: ``x`` above the diagonal, ``y`` below.
    """
    if ordering is None:
        x = int(np.triu(d.adj, 1).sum())
        return ArcSplit(x, d.m - x)
    _check_ordering(d, ordering)
    ranks = np.asarray(ordering.ranks)
    forward = ranks[:, None] < ranks[None, :]
    x = int((d.adj & forward).sum())
    return ArcSplit(x, d.m - x)


def ratio_event(split: ArcSplit, r: float) -> bool:
    """``X/Y >= r``, taken to hold whenever ``Y == 0``."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    x, y = split
    return y == 0 or x >= r * y


def relabel(d: Digraph, ordering: VertexOrdering) -> Digraph:
    """Renumber every vertex ``v`` as ``ordering.ranks[v]``."""
    _check_ordering(d, ordering)
    seq = np.asarray(ordering.sequence())
    return Digraph(d.adj[np.ix_(seq, seq)])


# -- interchange formats ----------------------------------------------------

def write_edge_list(d: Digraph, fh: TextIO) -> None:
    fh.write(f"n {d.n}\n")
    for u, v in d.arcs():
        fh.write(f"{u} {v}\n")


def format_edge_list(d: Digraph) -> str:
    lines = [f"n {d.n}"] + [f"{u} {v}" for u, v in d.arcs()]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Digraph:
    """Parse the ``n <n>`` header + ``u v`` lines format.

    Blank lines are skipped. Self-loops, duplicate arcs, out-of-range
    vertices and malformed lines raise :class:`EdgeListError` naming the line.
    """
    lines = text.splitlines()
    n = None
    seen = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "n":
                raise EdgeListError(f"expected header 'n <count>', got {raw!r}", lineno)
            n = _parse_int(fields[1], lineno)
            if n < 1:
                raise EdgeListError(f"vertex count must be >= 1, got {n}", lineno)
            continue
        if len(fields) != 2:
            raise EdgeListError(f"expected 'u v', got {raw!r}", lineno)
        u, v = (_parse_int(f, lineno) for f in fields)
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError(f"arc ({u}, {v}) out of range for n={n}", lineno)
        if u == v:
            raise EdgeListError(f"self-loop at vertex {u}", lineno)
        if (u, v) in seen:
            raise EdgeListError(f"duplicate arc ({u}, {v})", lineno)
        seen.add((u, v))
    if n is None:
        raise EdgeListError("missing header 'n <count>'", 1)
    return Digraph.from_arcs(n, seen)


def read_edge_list(fh: TextIO) -> Digraph:
    return parse_edge_list(fh.read())


def _parse_int(token, lineno):
    try:
        return int(token)
    except ValueError:
        raise EdgeListError(f"not an integer: {token!r}", lineno) from None


def format_ordering(ordering: VertexOrdering) -> str:
    return " ".join(str(r) for r in ordering.ranks)


def parse_ordering(text: str) -> VertexOrdering:
    return VertexOrdering(tuple(int(t) for t in text.split()))
