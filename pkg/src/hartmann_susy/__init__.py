"""Supersymmetric quantum mechanics of the ring-shaped Hartmann potential."""

from .model import (
    HartmannParams,
    QuantumNumberError,
    QuantumNumbers,
    allowed_L_values,
    energy,
    energy_scaled,
    kappa,
    magnetic_to_capital_m,
)
from .radial_forms import (
    IntegrabilityError,
    Polynomial,
    RadialFunction,
    apply_ladder,
    apply_radial_hamiltonian,
    differentiate,
    evaluate,
    inner_product,
    log_gamma,
    normalize,
)
from .halfline import (
    HierarchyLevel,
    SpectrumReport,
    build_eigenfunction,
    ground_state,
    radial_R,
    spectrum,
    superpotential,
    verify_susy_algebra,
)
from .fullline import (
    MorseProblem,
    PartnerMapResult,
    morse_partner_potentials,
    morse_superpotential,
    partner_map,
    susy_eigenvalue,
    to_morse_coordinates,
    transform_eigenfunction,
    verify_partner_spectra,
)
from .oracle import EigenResult, Grid, compare_spectra, quadrature, solve_fullline, solve_radial

__version__ = "0.1.0"
