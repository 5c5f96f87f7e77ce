# %% [markdown]
# # Independent checks of the quadrature
#
# Three routes to the same covariance matrix: adaptive quadrature of the
# spectral integrals, exact residues for a flat noise spectrum, and
# Langevin trajectories driven by synthesised noise.

# %%
import time

from twobath import BathParams, QuadratureConfig, SteadyStateProblem, SystemParams, steady_covariance
from twobath.covariance import ELEMENTS
from twobath.oracle import (
    McConfig, classical_covariance, classical_quadrature_check, equipartition_covariance,
    mc_covariance, normalized_discrepancy,
)

sys = SystemParams(1.5, 1.0)
b1, b2 = BathParams(0.1, 0.05), BathParams(0.2, 0.1)

# %%
d = classical_quadrature_check(sys, b1, b2)
print("residues vs quadrature:", {k: f"{x:.1e}" for k, x in d.items()})
eq = classical_covariance(sys, b1, b2.with_beta(b1.beta)).covariance
print("equal temperatures vs Gibbs state:",
      max(normalized_discrepancy(equipartition_covariance(sys, b1.beta), eq).values()))

# %%
cfg = McConfig(dt=0.01, t_end=200.0, t_burn=40.0, n_traj=400, n_modes=2048, omega_max=40.0,
               spectrum="classical", seed=1)
t0 = time.perf_counter()
mc = mc_covariance(sys, b1, b2, cfg)
ref = steady_covariance(SteadyStateProblem(sys, b1, b2, QuadratureConfig(cutoff=cfg.omega_max)),
                        kernel="classical")
print(f"{cfg.n_traj} trajectories in {time.perf_counter() - t0:.1f}s")
for k in ELEMENTS:
    m, s, r = getattr(mc.covariance, k), getattr(mc.stderr, k), getattr(ref, k)
    print(f"  {k}: mc {m:9.5f} +- {s:.5f}   quadrature {r:9.5f}   z {(m - r) / s:+.2f}")
