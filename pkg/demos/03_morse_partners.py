"""Full-line form: the Morse well and its supersymmetric partner.

With x = ln(gamma r) each level N becomes a Morse problem.  Its partner is
again a Morse well, namely level N - 1 with the coupling scaled by 1 - 1/N,
and the two share every level except the lowest.
"""

# %%
from hartmann_susy.fullline import (
    bound_L_values,
    partner_map,
    susy_eigenvalue,
    verify_partner_spectra,
)

N, delta = 3.0, 1.0

# %%
# Shifted eigenvalues: zero for L = N - 1.
for L in bound_L_values(N):
    print(f"L={L:g}: {susy_eigenvalue(N, L):.4f}")

# %%
# Partner map: the energy -delta^2 / (2 N^2) is unchanged.
p = partner_map(N, delta)
print(f"(N, delta) = ({N}, {delta}) -> ({p.n_prime}, {p.delta_prime:.6f});  energy check {p.energy_check}")

# %%
# Numerical check: solve both wells by finite differences.
rep = verify_partner_spectra(N)
print("bose :", [f"{e:.5f}" for e in rep.bose.eigenvalues])
print("fermi:", [f"{e:.5f}" for e in rep.fermi.eigenvalues])
print("max mismatch:", rep.match.max_mismatch, " passed:", rep.passed)
