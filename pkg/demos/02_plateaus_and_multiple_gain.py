# %% [markdown]
# # Plateaus and the multiple gain
#
# A run of an elitist EA has a non-increasing distance to the optimum. The
# longest stretch without progress is what k_hat averages, and the expected
# progress over k generations is the multiple gain.

# %%
import multigain as mg
from multigain.problems import fixed_start

n = 20
view = mg.MinimizedView(mg.OneMaxProblem(n), float(n))
cfg = mg.EaConfig.one_plus_one()
trace = mg.run(view, cfg, fixed_start("A", n), mg.derive_stream(7, 0))

# %%
print("T0 =", mg.first_hitting_time(trace))
print("longest zero-gain run =", mg.longest_zero_gain_run(trace))
print("with the improving step counted =", mg.longest_zero_gain_run(trace, count_improving=True))
print("e*n =", round(mg.onemax_klow(n), 3))

# %% Expected k-generation gain from a point with r zero bits
x = fixed_start("A", n)
x[: n - 3] = 1  # three zero bits left
for k in (1, 5, 20, 55):
    mean, se = mg.empirical_multiple_gain(view, cfg, x, k, 4000, mg.derive_stream(7, k))
    print(f"k={k:3d}: G = {mean:.3f} +/- {se:.3f}")

# %% [markdown]
# With r zero bits left a single generation gains about r/(e n) on average,
# so roughly e n / r generations pass before the expected gain reaches the
# level gap of one (about 18 here).
