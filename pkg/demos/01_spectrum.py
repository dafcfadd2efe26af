"""Bound-state spectrum of the ring-shaped potential.

Energies depend only on the real level label N = |M| + 1 + nu' + n', so every
allowed L at a given N shares one energy.  The finite-difference solver
confirms the closed form level by level.
"""

# %%
# Model parameters in atomic units.  With eta = sigma = 1 and m = 0 we get
# |M| = 1, so the lowest level is N = 2 rather than the hydrogen ground state.
from hartmann_susy import HartmannParams, spectrum
from hartmann_susy.oracle import default_radial_grid, solve_radial

params = HartmannParams(eta=1.0, sigma=1.0)
cm = params.capital_m(0)
print(f"gamma = {params.gamma}, |M| = {cm}")

# %%
# Analytic table: one row per (N, L).
report = spectrum(cm, 3, params.gamma)
for row in report.rows:
    print(f"N={row.N:g}  L={row.L:g}  E={row.energy_analytic:.8f}   built by {' -> '.join(row.builder_trace)}")

# %%
# A non-integer |M| gives real-valued labels; the spacing in N stays one.
irr = spectrum(2**0.5, 2, 2.0)
print("levels:", [f"{N:.6f}" for N in irr.levels()])

# %%
# Finite differences at L = |M| reproduce the first few energies.
grid = default_radial_grid(cm + 3, cm, params.gamma)
fd = solve_radial(cm, params.gamma, grid, 3, tol=1e-4)
for N, e in zip(report.levels(), fd.eigenvalues):
    exact = -params.gamma**2 / (2 * N**2)
    print(f"N={N:g}: finite difference {e:.8f}, closed form {exact:.8f}")
