from copx.verify.claims import (
    ClaimParams,
    ClaimReport,
    check_facet_claim,
    check_region_claim,
    check_shift_claims,
    equivalence_trial,
    random_weight,
)
from copx.verify.suite import SuiteReport, run_suite
