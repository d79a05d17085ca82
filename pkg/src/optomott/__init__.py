"""Bistable optomechanical-cavity lattices and the many-body state they trap.

A driven Fabry-Pérot cavity with a radiation-pressure-compliant end mirror
has a multivalued steady state; the intracavity standing wave is the optical
lattice for a cold bosonic gas, so lattice depth, the Hubbard couplings
(J, U) and the mean-field Mott-insulator/superfluid label all inherit the
bistability.  This package computes that chain end to end and emits the
figure-style CSV tables through a small CLI.
"""

from ._version import __version__
from ._kernels import backend
from .units import (
    HBAR,
    C_LIGHT,
    AtomSpec,
    DriveSpec,
    DerivedScales,
    recoil_energy,
    stark_coefficient,
    derived_scales,
)
from .cavity import (
    MirrorSpec,
    MechanicalSpec,
    CavityConfig,
    DimensionlessCavity,
    BranchSolution,
    SteadyRoot,
    TurningPoints,
    SweepStep,
    SweepTrajectory,
    airy_transmission,
    steady_states,
    turning_points,
    hysteresis_sweep,
    cavity_decay_rate,
    cubic_knee_estimate,
    mod_pi_offset,
)
from .lattice import LatticeSpec, lattice_from_branch, displacement_check, dimensionless_depth
from .bands import (
    BandData,
    WannierData,
    HubbardParams,
    ShallowLatticeWarning,
    bloch_bands,
    wannier,
    tunneling_j,
    tunneling_j2,
    tunneling_j_wannier,
    interaction_u,
    quartic_integral,
    site_overlap,
    hubbard_from_depth,
)
from .hubbard import PhasePoint, MottLobe, boundary, lobe_tip, lobe, classify
from .pipeline import (
    Scenario,
    Fig2Result,
    Fig3Result,
    OverlayRow,
    TimescaleReport,
    build_scenario,
    calibrate_g,
    resolve_coupling,
    fig2_curve,
    fig3_overlay,
    hysteresis_schedule,
    run_hysteresis,
    timescales,
)
from .errors import (
    OptomottError,
    ConfigError,
    NumericalError,
    ConvergenceError,
    NoBistabilityError,
    EigensolverError,
    GaugeError,
)

__all__ = [name for name in dir() if not name.startswith("_")]
