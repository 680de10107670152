# %% [markdown]
# # Bounds against exact hitting times
#
# For small instances the expected first hitting time can be computed exactly
# from a Markov chain. Here we set it next to the closed-form upper bound for
# each of the three benchmark families.

# %%
import numpy as np

import multigain as mg

# %% OneMax, (1+1) EA with rate 1/n, starting from all zeros
print(" n   exact      bound e*n*H_n")
for n in range(4, 15, 2):
    print(f"{n:2d}  {mg.onemax_exact_efht(n):9.3f}  {mg.onemax_efht1(n):9.3f}")

# %% Knapsack with capacity 3, (1+lambda) EA
for lam in (1, 20):
    for n in (5, 6, 7, 8):
        exact = mg.knapsack_exact_efht(mg.make_knapsack_b(n), lam, np.zeros(n, dtype=np.uint8))
        bound = mg.knapsack_efht1(mg.KnapsackBoundParams.experiment_b(n, lam))
        print(f"lambda={lam:2d} n={n}: exact {exact:8.3f}   bound {bound:8.3f}")

# %% The two-optima MAX-SAT formula, lambda = 20, rate 1/2
for n in range(5, 16, 2):
    exact = mg.maxsat_c_exact_efht(n, 20)
    bound = mg.maxsat_efht1(mg.MaxSatBoundParams.experiment_c(n, 20))
    print(f"n={n:2d}: exact {exact:9.3f}   bound {bound:9.3f}")

# %% [markdown]
# The bound is loose by a roughly constant factor on OneMax, and much looser
# on the knapsack family with lambda = 1, where the p_low1 term is tiny.
