from copx.optimality.certify import (
    OptimalityVerdict,
    OptimalSet,
    decide_optimal,
    dominant_weight,
    normalize_for_display,
    optimal_set,
    regime_lattice,
    shift_to_nonneg,
)
