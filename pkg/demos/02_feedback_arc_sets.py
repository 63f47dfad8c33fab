"""
Minimum feedback arc sets
=========================

Three solvers: brute force over all n! orderings, the exact subset dynamic
program, and multi-start local search. The DP reaches n around 20 on a
laptop; local search goes further but gives no optimality guarantee.
"""
import time

from fasratio.fas import solve_bruteforce, solve_exact_dp, solve_local_search
from fasratio.graph import sample_digraph

d = sample_digraph(n=7, p=0.5, seed=3)
for solver in (solve_bruteforce, solve_exact_dp):
    sol = solver(d)
    print(f"{sol.method:12s} y*={sol.y_star} x*={sol.x_star} ordering={sol.ordering.ranks}")

# larger instance: DP vs local search
d = sample_digraph(n=18, p=0.5, seed=3)
t = time.perf_counter()
exact = solve_exact_dp(d)
t_dp = time.perf_counter() - t
t = time.perf_counter()
heur = solve_local_search(d, restarts=10, seed=0)
t_ls = time.perf_counter() - t
print(f"n=18 m={d.m}: exact y*={exact.y_star} ({t_dp:.2f}s), local search y*={heur.y_star} ({t_ls:.3f}s)")
print("optimised ratio X*/Y* =", exact.x_star / exact.y_star)
print(exact.to_json())
