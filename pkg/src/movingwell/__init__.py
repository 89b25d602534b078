"""Exactly solvable quantum wells with a barrier moving at constant velocity.

A chain of three solvable systems on the expanding interval (0, L(4t+1)):
the moving square well obtained from the static box by a point
transformation, its trigonometric Poschl-Teller SUSY partner, and a
biparametric family of confluent SUSY partners.  Closed-form states and
potentials live in :mod:`movingwell.families`; a fully numerical intertwining
engine (:mod:`movingwell.susy`), residual/quadrature checks
(:mod:`movingwell.verify`) and a Crank-Nicolson propagator
(:mod:`movingwell.propagate`) validate them independently.
"""

from .core import (
    Branch,
    ComplexAmplitude,
    ConfluentConfig,
    SampledField,
    SpaceTimePoint,
    WellConfig,
    fixed_wall_position,
    is_inside_well,
    wall_position,
    well_width,
)
from .families import (
    Family,
    confluent_missing_state,
    confluent_well_potential,
    confluent_well_state,
    instantaneous_energy,
    moving_box_potential,
    moving_box_state,
    poschl_teller_potential,
    poschl_teller_state,
    wall_motion_energy_shift,
)
from .staticbox import BoxEigenstate, box_eigenfunction, box_energy
from .pointtransform import (
    GaugePair,
    gauge_A,
    gauge_B,
    lift_wavefunction,
    map_to_static,
    transformed_potential_residual,
)
from .propagate import (
    PropagationConfig,
    l2_distance,
    l2_norm,
    propagate,
    sample_state,
    thomas_solve,
)
from .susy import (
    Intertwiner,
    TransformationFunction,
    confluent_intertwiner,
    confluent_partner_potential,
    confluent_solution,
    first_order_intertwiner,
    gauge_magnitude,
    integrated_density,
    missing_state_first_order,
    partner_potential,
    reality_defect,
    standard_gauge,
)
from .verify import (
    CheckResult,
    VerificationReport,
    convergence_study,
    energy_expectation,
    norm,
    overlap,
    tdse_residual,
)

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "BoxEigenstate",
    "CheckResult",
    "ComplexAmplitude",
    "ConfluentConfig",
    "Family",
    "GaugePair",
    "Intertwiner",
    "PropagationConfig",
    "SampledField",
    "SpaceTimePoint",
    "TransformationFunction",
    "VerificationReport",
    "WellConfig",
    "box_eigenfunction",
    "box_energy",
    "confluent_intertwiner",
    "confluent_missing_state",
    "confluent_partner_potential",
    "confluent_solution",
    "confluent_well_potential",
    "confluent_well_state",
    "convergence_study",
    "energy_expectation",
    "first_order_intertwiner",
    "fixed_wall_position",
    "gauge_A",
    "gauge_B",
    "gauge_magnitude",
    "instantaneous_energy",
    "integrated_density",
    "is_inside_well",
    "l2_distance",
    "l2_norm",
    "lift_wavefunction",
    "map_to_static",
    "missing_state_first_order",
    "moving_box_potential",
    "moving_box_state",
    "norm",
    "overlap",
    "partner_potential",
    "poschl_teller_potential",
    "poschl_teller_state",
    "propagate",
    "reality_defect",
    "sample_state",
    "standard_gauge",
    "tdse_residual",
    "thomas_solve",
    "transformed_potential_residual",
    "wall_motion_energy_shift",
    "wall_position",
    "well_width",
]
