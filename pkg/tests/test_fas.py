import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import digraph_and_ordering, random_dag
from fasratio.errors import CapacityError
from fasratio.fas import (
    FasSolution,
    solve,
    solve_bruteforce,
    solve_exact_dp,
    solve_local_search,
)
from fasratio.graph import Digraph, VertexOrdering, arc_split, relabel, sample_digraph


def naive_min_feedback(d):
    """Independent of both solvers: loop over sequences, count backward arcs."""
    best = None
    for seq in itertools.permutations(range(d.n)):
        pos = {v: i for i, v in enumerate(seq)}
        y = sum(1 for u, v in d.arcs() if pos[u] > pos[v])
        best = y if best is None else min(best, y)
    return best


def check_solution(d, sol):
    assert sol.x_star + sol.y_star == d.m
    assert arc_split(d, sol.ordering) == (sol.x_star, sol.y_star)


def two_triangles():
    return Digraph.from_arcs(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])


def complete_bidirected(n):
    return Digraph(~np.eye(n, dtype=bool))


@pytest.mark.parametrize("solver", [solve_bruteforce, solve_exact_dp])
def test_exact_on_small_fixtures(solver, three_cycle):
    assert solver(three_cycle).y_star == 1
    assert solver(complete_bidirected(4)).y_star == 6
    assert solver(two_triangles()).y_star == naive_min_feedback(two_triangles()) == 2
    for seed in range(5):
        dag = random_dag(7, 0.5, seed)
        sol = solver(dag)
        assert sol.y_star == 0
        check_solution(dag, sol)


def test_bruteforce_matches_naive_enumeration():
    for seed in range(10):
        d = sample_digraph(6, 0.5, seed)
        assert solve_bruteforce(d).y_star == naive_min_feedback(d)


def test_bruteforce_tie_break_is_lexicographic(three_cycle):
    # identity ranks (0, 1, 2) already achieve the minimum of 1
    assert solve_bruteforce(three_cycle).ordering.ranks == (0, 1, 2)
    empty = Digraph.from_arcs(4, [])
    assert solve_bruteforce(empty).ordering == VertexOrdering.identity(4)


def test_dp_matches_bruteforce_on_twenty_n7():
    for seed in range(20):
        d = sample_digraph(7, 0.5, 1000 + seed)
        bf, dp = solve_bruteforce(d), solve_exact_dp(d)
        assert dp.y_star == bf.y_star
        check_solution(d, dp)


def test_dp_matches_bruteforce_across_densities():
    count = 0
    for p in (0.2, 0.5, 0.8):
        for n in range(1, 8):
            for seed in range(5):
                d = sample_digraph(n, p, 7 * seed + n)
                assert solve_exact_dp(d).y_star == solve_bruteforce(d).y_star
                count += 1
    assert count == 105


def test_dp_solution_metadata(three_cycle):
    sol = solve_exact_dp(three_cycle)
    assert sol.optimal and sol.method == "subset-dp"
    sol = solve_bruteforce(three_cycle)
    assert sol.optimal and sol.method == "brute-force"


def test_dp_backtracking_is_deterministic():
    d = sample_digraph(10, 0.5, 3)
    assert solve_exact_dp(d) == solve_exact_dp(d)


def test_capacity_errors():
    with pytest.raises(CapacityError):
        solve_bruteforce(Digraph.from_arcs(9, []))
    with pytest.raises(CapacityError):
        solve_exact_dp(Digraph.from_arcs(25, []))


def test_dp_handles_n_one():
    sol = solve_exact_dp(Digraph.from_arcs(1, []))
    assert sol.y_star == 0 and sol.ordering.ranks == (0,)


@settings(max_examples=60, deadline=None)
@given(digraph_and_ordering(max_n=7))
def test_relabeling_invariance(case):
    d, order = case
    assert solve_exact_dp(relabel(d, order)).y_star == solve_exact_dp(d).y_star


@settings(max_examples=60, deadline=None)
@given(digraph_and_ordering(max_n=7))
def test_optimum_beats_any_ordering(case):
    d, order = case
    assert solve_exact_dp(d).y_star <= arc_split(d, order).y


def test_local_search_dag_reaches_zero():
    for seed in range(5):
        dag = random_dag(10, 0.4, seed)
        sol = solve_local_search(dag, restarts=20, seed=seed)
        assert sol.y_star == 0
        check_solution(dag, sol)


def test_local_search_three_cycle(three_cycle):
    sol = solve_local_search(three_cycle, restarts=1, seed=0)
    assert sol.y_star == 1 and not sol.optimal and sol.method == "local-search"


def test_local_search_close_to_exact_n12():
    d = sample_digraph(12, 0.5, 42)
    exact = solve_exact_dp(d).y_star
    heur = solve_local_search(d, restarts=10, seed=42).y_star
    assert exact <= heur <= 1.1 * exact


def test_local_search_never_below_exact():
    for seed in range(30):
        d = sample_digraph(9, (0.2, 0.5, 0.8)[seed % 3], seed)
        sol = solve_local_search(d, restarts=3, seed=seed)
        check_solution(d, sol)
        assert sol.y_star >= solve_exact_dp(d).y_star


def test_local_search_is_deterministic():
    d = sample_digraph(15, 0.4, 8)
    assert solve_local_search(d, 5, 1) == solve_local_search(d, 5, 1)


def test_local_search_result_is_reinsertion_optimal():
    d = sample_digraph(11, 0.5, 5)
    sol = solve_local_search(d, restarts=2, seed=0)
    seq = list(sol.ordering.sequence())
    for i in range(d.n):
        for j in range(d.n):
            moved = seq[:i] + seq[i + 1:]
            moved.insert(j, seq[i])
            assert arc_split(d, VertexOrdering.from_sequence(moved)).y >= sol.y_star


def test_local_search_rejects_zero_restarts(three_cycle):
    with pytest.raises(ValueError):
        solve_local_search(three_cycle, restarts=0)


def test_solution_json_roundtrip():
    d = sample_digraph(6, 0.5, 1)
    sol = solve_exact_dp(d)
    data = json.loads(sol.to_json())
    assert set(data) == {"method", "y_star", "x_star", "m", "ordering", "optimal"}
    assert data["m"] == d.m
    assert FasSolution.from_dict(data) == sol


def test_solve_dispatch(three_cycle):
    for method in ("brute-force", "subset-dp", "local-search"):
        assert solve(three_cycle, method).y_star == 1
    with pytest.raises(ValueError):
        solve(three_cycle, "ilp")
