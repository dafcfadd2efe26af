"""Supersymmetry algebra on a grid.

Discretizing d/dr with an antisymmetric central difference makes
A+ the exact transpose of A-.  The block operators Q and Q^dagger then
square to zero exactly and commute with H_ss up to round-off, while
A+A- approaches the shifted radial Hamiltonian at second order.
"""

# %%
from hartmann_susy.halfline import verify_susy_algebra
from hartmann_susy.oracle import Grid

rep = verify_susy_algebra(0.0, 1.0, Grid(1e-3, 40.0, 2000))
print("||Q^2||                 =", rep.q_squared)
print("||[Q, H_ss]|| / ||H_ss|| =", rep.commutator_rel)

# %%
# Truncation error of A+A- on a smooth trial function at h, h/2, h/4.
for k, err in enumerate(rep.truncation_errors):
    print(f"h/{2**k}: {err:.3e}")
print("observed order:", round(rep.observed_order, 3))
