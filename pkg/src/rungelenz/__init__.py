"""Hydrogen-atom radial states, shell algebra and Coulomb ladders from the Runge-Lenz vector.

Exact arithmetic (rationals and single surds) is used wherever the results
are closed forms; the shell matrices and Coulomb functions are numerical
cross-checks with explicit tolerances.
"""
from .angular import (
    MasterCoefficients,
    b_minus_element,
    clebsch_gordan,
    master_coefficients,
    reduced_b_element,
    wigner_6j,
)
from .coulomb import (
    CoulombParams,
    CoulombValue,
    coulomb_f,
    continuum_ode_residual,
    eta_from_energy,
    recursion_residual,
)
from .errors import (
    GroundAngular,
    IncompatibleRadicands,
    InvalidLabels,
    MixedAngular,
    NegativeRadius,
    NoConvergence,
    NonPositiveRate,
    NonPositiveWavenumber,
    NormalizationError,
    OutOfDomain,
    StepTooLarge,
)
from .exact import HalfInt, Polynomial, Surd, exp_moment, integrate_exp
from .radial import (
    RadialWaveFunction,
    ZeroFunction,
    evaluate,
    factorization_residual,
    generate_shell,
    lower_l,
    node_count,
    ode_residual,
    overlap,
    raise_l,
    radial_state,
    top_state,
)
from .shell import ShellOperators, a_minus_elements, algebra_residuals, annihilation_check, build_shell
from .spectrum import PhysicalScales, QuantumLabels, ShellStructure, energy_level, shell_structure
from .verify import VerificationReport, run_suite

__version__ = "0.1.0"
