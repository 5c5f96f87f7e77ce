# %% [markdown]
# # Two separability tests on a hot/cold oscillator pair
#
# Oscillator 1 sits in a hot, weakly coupled bath; oscillator 2 in a cold,
# strongly coupled one.  As bath 1 heats up the pair stays entangled down to
# a surprisingly small inverse temperature.  The Simon invariant zeta_+ and the
# partial-transpose symplectic eigenvalue give the same boundary.

# %%
import numpy as np

from twobath import (
    BathParams, CriticalQuery, QuadratureConfig, SteadyStateProblem, SystemParams,
    report, solve_critical, steady_covariance,
)
from twobath.approx import approx_covariance, beta1c_closed_form
from twobath.entanglement import simon_invariants, symplectic_eigenvalues

sys = SystemParams(omega=5.0, sigma=24.0)
cold = BathParams(gamma_bar=0.25, beta=1.5)
quad = QuadratureConfig(cutoff=5000.0)

# %%
print(f"{'beta1':>8} {'zeta_+':>10} {'eta-1/2':>10} {'approx eta-1/2':>15}")
for b1 in np.geomspace(0.01, 3.0, 12):
    hot = BathParams(0.005, b1)
    v = steady_covariance(SteadyStateProblem(sys, hot, cold, quad))
    va = approx_covariance(sys, hot, cold, quad.cutoff)
    try:
        ea = symplectic_eigenvalues(va, partial_transpose=True)[0] - 0.5
    except ValueError:
        ea = float("nan")
    print(f"{b1:8.4f} {simon_invariants(v)[0]:10.4f} "
          f"{symplectic_eigenvalues(v, partial_transpose=True)[0] - 0.5:10.4f} {ea:15.4f}")

# %% [markdown]
# Both sign changes happen at the same point.

# %%
q = CriticalQuery(sys, BathParams(0.005, 1.0), cold, fixed_beta=1.5, bracket=(0.001, 0.1))
b_eta = solve_critical(q)
b_zeta = solve_critical(CriticalQuery(**{**q.__dict__, "criterion": "zeta"}))
print(f"critical beta1: eta test {b_eta:.6g}, zeta test {b_zeta:.6g}")
print(f"leading closed form     {beta1c_closed_form(sys, 0.005, 0.25, quad.cutoff):.6g}")

# %%
rep = report(steady_covariance(SteadyStateProblem(sys, BathParams(0.005, 0.1), cold, quad)))
print(f"at beta1 = 0.1: log negativity {rep.log_negativity:.4f}, negativity {rep.negativity:.4f}")
