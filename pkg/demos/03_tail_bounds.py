"""
Tail bounds against the exact probability
=========================================

Compare the Hoeffding-route, Bennett and direct-Chernoff bounds with the
exact value of Pr(X - rY >= 0), then push the direct bound through the n!
union bound to see where the optimised-ratio tail becomes small.
"""
import math

from fasratio.bounds import (
    BoundParams,
    amplify_by_permutations,
    bennett_bound,
    chernoff_direct_bound,
    exact_ratio_tail,
    hoeffding_ratio_bound,
    threshold_constant,
    threshold_margin,
)

print(f"{'n':>4} {'exact':>12} {'hoeffding':>12} {'bennett':>12} {'direct':>12}")
for n in (5, 10, 20, 40, 80):
    b = BoundParams(n, p=0.2, epsilon=0.5)
    print(f"{n:4d} {exact_ratio_tail(b):12.4e} {math.exp(hoeffding_ratio_bound(b)):12.4e} "
          f"{math.exp(bennett_bound(b)):12.4e} {math.exp(chernoff_direct_bound(b)):12.4e}")

# log n! grows like n log n, the exponent like n^2: the amplified bound eventually drops below 1
for n in (100, 400, 1600, 3200, 6400):
    b = BoundParams(n, p=0.2, epsilon=0.5)
    print(f"n={n}: log(n! * bound) = {amplify_by_permutations(chernoff_direct_bound(b), n):.1f}")

eps = 1.0
print(f"\nThreshold constant for eps={eps}: C* = {threshold_constant(eps)}")
for C in (10, 20, 25, 40):
    print(f"  C={C}: log n! + exponent at n=1e6 = {threshold_margin(eps, C, 10**6):.3e}")
