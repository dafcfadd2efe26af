"""Building eigenfunctions with raising operators.

The lowest rung of H_(N-1) is r**N exp(-gamma r / N).  Applying
A+_(N-2), ..., A+_L walks it down to u_(N,L) without solving any ODE.
All algebra is exact on the r**s exp(-kappa r) P(r) class.
"""

# %%
import math

from hartmann_susy.halfline import build_eigenfunction, ground_state, radial_R
from hartmann_susy.radial_forms import apply_ladder, apply_radial_hamiltonian, inner_product, normalize

gamma = 1.0

# %%
# The ground state of each hierarchy member is annihilated by A-.
psi = ground_state(2.0, gamma)
print("A- psi0 is zero:", apply_ladder(2.0, gamma, "-", psi).is_zero)

# %%
# The 2s state of the hydrogen limit comes out proportional to r (2 - r) exp(-r/2).
u = build_eigenfunction(2, 0, gamma)
print("s =", u.s, " kappa =", u.kappa, " coefficients =", u.coefficients)
print("H u + u/8 vanishes:", (apply_radial_hamiltonian(0, gamma, u) + u / 8).norm())

# %%
# Irrational |M| works the same way; exponents become irrational too.
M = math.sqrt(2)
u = build_eigenfunction(M + 2, M, gamma)
print(f"u_(N={M + 2:.4f}, L={M:.4f}) has s = {u.s:.6f} and {len(u.coefficients)} coefficients")

# %%
# Lowering maps u_(N,L) onto u_(N,L+1): the normalized overlap is one.
lowered = normalize(apply_ladder(M, gamma, "-", u))
print("overlap:", abs(inner_product(lowered, build_eigenfunction(M + 2, M + 1, gamma))))

# %%
# R = u / r is what the radial density uses.
R = radial_R(1, 0, gamma)
print("R_10(1) =", R(1.0), "= 2/e =", 2 / math.e)
