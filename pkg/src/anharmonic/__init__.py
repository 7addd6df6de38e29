"""Radial anharmonic oscillators: Approximants, perturbation series, benchmarks.

The package computes eigenvalues and trial eigenfunctions for the two-term
radial potentials V(r) = r^2 + g^(m-2) r^m in D dimensions, by combining

* a variationally optimized phase Approximant (``approximant``, ``quadopt``),
* non-linearization corrections around it (``nonlin``),
* exact-rational weak-coupling perturbation series (``ptweak``, ``genfun``),
* a Lagrange-mesh diagonalization benchmark (``lmm``), and
* the strong-coupling expansion (``strong``).

Working units are hbar = 1, M = 1/2 throughout.
"""

from .approximant import (
    TrialParameters,
    TrialWavefunction,
    apply_constraints,
    build_phase,
    free_parameter_names,
    trial_wavefunction,
)
from .core import (
    CouplingFrame,
    Family,
    ParityDomain,
    PotentialSpec,
    StateLabel,
    make_frame,
)
from .errors import AccuracyError
from .lmm import MeshConfig, MeshResult, lmm_node, lmm_solve
from .nonlin import (
    CorrectionSet,
    corrected_energy,
    correction_y,
    deviation_profile,
    dominant_window,
    perturbation_potential,
)
from .quadopt import (
    EnergyReport,
    QuadratureConfig,
    optimize,
    parameter_sweep,
    variational_energy,
)
from .strong import (
    StrongEstimate,
    StrongSeries,
    strong_dominant,
    strong_energy_estimate,
    strong_series,
    strong_subdominant,
)

__version__ = "0.1.0"
