"""Work and heat statistics of unital quantum Otto cycles.

Monitored (two-point-measurement) and unmonitored (Kirkwood-Dirac)
statistics for finite-dimensional unital Otto cycles, with a closed-form
single-qubit layer and a CLI for reports, sweeps, measurement-basis
optimization and self-checks.
"""

from .engine import (
    CumulantReport,
    CycleTable,
    EngineSpec,
    Mode,
    Regime,
    ThermalState,
    cf_cumulant_crosscheck,
    characteristic_function,
    cumulant_report,
    cycle_table,
    dephase_in_basis,
    moment,
    thermal_state,
)
from .qmath import (
    DecompositionFailure,
    DimMismatch,
    HermitianOperator,
    KrausChannel,
    NotHermitian,
    UnitaryOperator,
    apply_channel,
    hermitian_eigensystem,
    identity_channel,
    validate_projective_pair,
)
from .qubit import (
    BasisComparison,
    BoundsReport,
    CoherenceSplit,
    DivisionDegenerate,
    EfficiencyBounds,
    OccupationProbs,
    ParamOutOfRange,
    QubitParams,
    TransitionProbs,
    basis_comparisons,
    bounds_report,
    build_qubit_spec,
    coherence_decomposition,
    dephased_cf_closed,
    dephased_closed,
    efficiency_bounds,
    occupation_probs,
    qm_explicit_angles,
    qubit_report,
    theta_closed,
    transition_probs,
    undephased_closed,
)

__version__ = "0.1.0"
