import logging

# public API
from copx.cone.engine import (
    ConeCertificate,
    FarkasCertificate,
    cone_member,
    elementwise_minimal,
    irreducible_subset,
    requires_generator,
)
from copx.data.families import builtin_instance, gen_family, resolve_instance
from copx.data.instance import Instance, WeightVector, argmax_brute
from copx.facets.synth import (
    DescriptionReport,
    full_description,
    necessity_audit,
    vertex_facets,
)
from copx.hull.oracle import HRep, VRep, face_classify, hrep_to_vrep, vrep_to_hrep
from copx.lattice.generators import GeneratorSet, chain_check, select_generators
from copx.lattice.lattice import Lattice, enum_lattice
from copx.optimality.certify import OptimalityVerdict, decide_optimal, optimal_set
from copx.utils.cli.config import Config
from copx.verify.claims import (
    ClaimReport,
    check_region_claim,
    check_shift_claims,
    equivalence_trial,
)
from copx.verify.suite import run_suite

__all__ = [
    "ConeCertificate",
    "FarkasCertificate",
    "cone_member",
    "elementwise_minimal",
    "irreducible_subset",
    "requires_generator",
    "builtin_instance",
    "gen_family",
    "resolve_instance",
    "Instance",
    "WeightVector",
    "argmax_brute",
    "DescriptionReport",
    "full_description",
    "necessity_audit",
    "vertex_facets",
    "HRep",
    "VRep",
    "face_classify",
    "hrep_to_vrep",
    "vrep_to_hrep",
    "GeneratorSet",
    "chain_check",
    "select_generators",
    "Lattice",
    "enum_lattice",
    "OptimalityVerdict",
    "decide_optimal",
    "optimal_set",
    "Config",
    "ClaimReport",
    "check_region_claim",
    "check_shift_claims",
    "equivalence_trial",
    "run_suite",
]

_logger = logging.getLogger(__name__)
