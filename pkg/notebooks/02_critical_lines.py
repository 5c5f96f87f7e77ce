# %% [markdown]
# # Critical lines in the (beta2, beta1) plane
#
# With equal damping the line is symmetric under exchanging the baths.
# Weakening the hot bath's coupling pushes the critical beta1 down by more
# than an order of magnitude: entanglement survives a much hotter bath.

# %%
import numpy as np

from twobath import BathParams, CriticalQuery, SystemParams, critical_line

sys = SystemParams(omega=5.0, sigma=24.0)
sweep = np.geomspace(0.3, 10.0, 8)

for g1 in (0.25, 0.005):
    q = CriticalQuery(sys, BathParams(g1, 1.0), BathParams(0.25, 1.0), fixed_bath=2)
    line = critical_line(q, sweep)
    print(f"gamma1 = {g1}")
    for p in line.points:
        print(f"  beta2 = {p.fixed_beta:7.3f}  beta1c = {p.critical_beta:9.5f}  {p.status}")

# %% [markdown]
# Symmetry check for equal damping: solving for beta2c at fixed beta1 gives
# the mirror image.

# %%
b = BathParams(0.25, 1.0)
for beta in (1.0, 5.0):
    l2 = critical_line(CriticalQuery(sys, b, b, fixed_bath=2), [beta]).points[0]
    l1 = critical_line(CriticalQuery(sys, b, b, fixed_bath=1), [beta]).points[0]
    print(f"fixed beta {beta}: beta1c {l2.critical_beta:.6g}, beta2c {l1.critical_beta:.6g}")
