"""Exact checks of the region, shift, optimality and facet claims.

Each check computes both sides independently: regions through the hull oracle, generator
sets through lattice enumeration. A refuted report always carries a witness that has been
re-checked by direct arithmetic.
"""

import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction
from typing import Optional, Union

import numpy as np
from attrs import define, field

from copx.data.instance import Instance, WeightVector
from copx.exceptions import PreconditionError
from copx.facets.synth import full_description, necessity_audit
from copx.hull.oracle import HRep, hrep_to_vrep, lattice_box, region_hrep, region_vertices
from copx.lattice.generators import select_generators
from copx.lattice.lattice import Lattice, enum_lattice, shift_by_support
from copx.linalg.rational import dot, format_rat, sub
from copx.optimality.certify import optimal_set
from copx.typing import (
    ALL_X,
    ClaimId,
    Dominating,
    KwargType,
    MinimalityMode,
    RatVec,
    Regime,
    Variant,
    Verdict,
)
from copx.utils.attrs.converters import enum_field, sorted_index_tuple
from copx.utils.cli.config import Config

logger = logging.getLogger(__name__)

SeedLike = Union[int, np.random.SeedSequence]

REGION_CLAIMS = (
    ClaimId.L1,
    ClaimId.L2,
    ClaimId.L3,
    ClaimId.L4,
    ClaimId.T1,
    ClaimId.T1b,
    ClaimId.T1c,
)

TRIAL_CLAIMS = {
    Regime.nonneg: ClaimId.T21,
    Regime.signed_support: ClaimId.T21b,
    Regime.general: ClaimId.T21c,
}

SHIFT_POINTS = 100
MAX_WITNESSES = 5


def _optional_indices(value):
    if value is None:
        return None
    return sorted_index_tuple(value)


@define(frozen=True)
class ClaimParams:
    """Indices a claim is evaluated at. Unused entries stay None."""

    k: Optional[int] = None
    j: Optional[int] = None
    l: Optional[int] = None  # noqa: E741
    Y: Optional[tuple[int, ...]] = field(default=None, converter=_optional_indices)
    C: Optional[tuple[int, ...]] = field(default=None, converter=_optional_indices)

    def to_dict(self) -> KwargType:
        data: KwargType = {}
        for name in ("k", "j", "l", "Y", "C"):
            value = getattr(self, name)
            if value is not None:
                data[name] = list(value) if isinstance(value, tuple) else value
        return data


@define(frozen=True)
class ClaimReport:
    """Outcome of one claim check.

    Attributes:
        claim_id (ClaimId): which claim was checked
        instance_tag (str): family tag of the instance
        parameters (ClaimParams): indices the claim was evaluated at
        verdict (Verdict): confirmed, refuted or skipped
        evidence (KwargType): vertex-set diff, counterexamples, witness point or skip
            reason
    """

    claim_id: ClaimId = enum_field(enum_cls=ClaimId)
    instance_tag: str
    parameters: ClaimParams = field(factory=ClaimParams)
    verdict: Verdict = enum_field(enum_cls=Verdict, default=Verdict.confirmed)
    evidence: KwargType = field(factory=dict)

    @property
    def refuted(self) -> bool:
        return self.verdict == Verdict.refuted

    @classmethod
    def skipped(
        cls,
        claim_id: ClaimId,
        inst: Instance,
        reason: str,
        params: Optional[ClaimParams] = None,
    ) -> "ClaimReport":
        return cls(
            claim_id=claim_id,
            instance_tag=inst.family_tag,
            parameters=params or ClaimParams(),
            verdict=Verdict.skipped,
            evidence={"reason": reason},
        )

    def to_dict(self) -> KwargType:
        return {
            "claim_id": self.claim_id.value,
            "instance": self.instance_tag,
            "params": self.parameters.to_dict(),
            "verdict": self.verdict.value,
            "evidence": self.evidence,
        }


def _vec(v: Sequence) -> list[str]:
    return [format_rat(x) for x in v]


def _as_rat(v: Sequence) -> RatVec:
    return tuple(Fraction(x) for x in v)


def _require(params: ClaimParams, claim_id: ClaimId, *names: str):
    missing = [name for name in names if getattr(params, name) is None]
    if missing:
        raise PreconditionError(f"{claim_id.value} requires parameters {missing}")


def region_setup(
    inst: Instance, claim_id: ClaimId, params: ClaimParams
) -> tuple[Lattice, tuple[int, ...], Dominating]:
    """Lattice, equality indices and dominance indices that define a region claim."""
    _require(params, claim_id, "k")
    cube = Lattice.cube(inst.n)

    if claim_id == ClaimId.L1:
        _require(params, claim_id, "j")
        return cube, (params.j,), ()
    if claim_id == ClaimId.L2:
        _require(params, claim_id, "j", "l")
        return cube, (params.j, params.l), ()
    if claim_id == ClaimId.L3:
        _require(params, claim_id, "j", "l")
        return cube, (params.j,), (params.l,)
    if claim_id == ClaimId.L4:
        _require(params, claim_id, "j", "Y")
        return cube, (params.j,), params.Y
    if claim_id == ClaimId.T1:
        return cube, (), ALL_X
    if claim_id in (ClaimId.T1b, ClaimId.T1c):
        _require(params, claim_id, "C")
        return Lattice.shifted(inst.n, params.C), (), ALL_X
    raise PreconditionError(f"{claim_id.value} is not a region claim")


def check_region_claim(
    inst: Instance,
    claim_id: ClaimId,
    params: ClaimParams,
    config: Optional[Config] = None,
) -> ClaimReport:
    """Compare the region's vertex set with the generator set plus the zero vector.

    Raises:
        PreconditionError: if `params` lacks an index the claim needs
        SizeCapError: if the lattice or hull dimension exceeds its cap
    """
    config = config or Config()
    claim_id = ClaimId(claim_id)
    lattice, equal_to, dominating = region_setup(inst, claim_id, params)

    region = region_vertices(
        inst, lattice, params.k, equal_to, dominating, dim_cap=config.hull_dim_cap
    ).as_set()
    G = select_generators(
        inst,
        lattice,
        params.k,
        equal_to,
        dominating,
        full_cap=config.full_lattice_cap,
        cube_cap=config.cube_cap,
    )
    # regions always contain the origin, generator sets never do
    generators = {_as_rat(h) for h in G.members} | {_as_rat((0,) * inst.n)}

    if region == generators:
        return ClaimReport(
            claim_id,
            inst.family_tag,
            params,
            Verdict.confirmed,
            {"vertices": len(region)},
        )

    region_only = sorted(region - generators)
    generators_only = sorted(generators - region)
    h = region_hrep(inst, params.k, equal_to, dominating)
    box = lattice_box(lattice)

    def in_region(v: RatVec) -> bool:
        in_box = all(lo <= x <= hi for lo, x, hi in zip(box.lo, v, box.hi))
        return in_box and h.contains(v)

    witness_verified = all(in_region(v) for v in region_only + generators_only)
    logger.warning(
        f"{claim_id.value} refuted on {inst.family_tag} at {params.to_dict()}: "
        f"{len(region_only)} region-only and {len(generators_only)} "
        "generator-only vertices"
    )
    return ClaimReport(
        claim_id,
        inst.family_tag,
        params,
        Verdict.refuted,
        {
            "region_only": [_vec(v) for v in region_only],
            "generators_only": [_vec(v) for v in generators_only],
            "witness_verified": witness_verified,
        },
    )


def shifted_vertex(x: Sequence[int], C: Iterable[int]) -> tuple[int, ...]:
    """x(C): subtract one on the coordinates in C."""
    return shift_by_support(x, C)


def random_box_point(
    rng: np.random.Generator, n: int, C: Iterable[int], max_denominator: int = 1000
) -> RatVec:
    """Uniform-ish rational point with entries in [-1,0] on C and [0,1] elsewhere."""
    support = set(C)
    denominators = rng.integers(1, max_denominator + 1, size=n)
    numerators = [int(rng.integers(0, int(d) + 1)) for d in denominators]
    return tuple(
        Fraction(-num if i in support else num, int(den))
        for i, (num, den) in enumerate(zip(numerators, denominators))
    )


def _check_product_identity(
    inst: Instance, k: int, C: tuple[int, ...], rng: np.random.Generator, points: int
) -> ClaimReport:
    params = ClaimParams(k=k, C=C)
    xk = inst.x(k)
    xk_shift = shifted_vertex(xk, C)
    for _ in range(points):
        x = random_box_point(rng, inst.n, C)
        left = dot(xk, x) - dot(xk_shift, x)
        for j in range(inst.size):
            xj = inst.x(j)
            right = dot(xj, x) - dot(shifted_vertex(xj, C), x)
            if left != right:
                # both sides should equal the sum of x over C
                closed_form = sum((x[i] for i in C), Fraction(0))
                return ClaimReport(
                    ClaimId.L231,
                    inst.family_tag,
                    ClaimParams(k=k, j=j, C=C),
                    Verdict.refuted,
                    {
                        "point": _vec(x),
                        "left": format_rat(left),
                        "right": format_rat(right),
                        "sum_over_C": format_rat(closed_form),
                        "witness_verified": dot(sub(xk, xk_shift), x)
                        != dot(sub(xj, shifted_vertex(xj, C)), x),
                    },
                )
    return ClaimReport(
        ClaimId.L231,
        inst.family_tag,
        params,
        Verdict.confirmed,
        {"points": points, "pairs": inst.size},
    )


def _shifted_generators(
    inst: Instance, lattice: Lattice, k: int, C: tuple[int, ...], config: Config
) -> set[tuple[int, ...]]:
    """h with x_k(C) . h >= x_j(C) . h for every j, evaluated on the shifted vertices."""
    shifted = [shifted_vertex(x, C) for x in inst.vertices]
    members = set()
    for h in enum_lattice(
        lattice, full_cap=config.full_lattice_cap, cube_cap=config.cube_cap
    ):
        if not any(h):
            continue
        anchor = dot(shifted[k], h)
        if all(anchor >= dot(x, h) for x in shifted):
            members.add(h)
    return members


def _check_shifted_sets(
    inst: Instance, k: int, C: tuple[int, ...], config: Config
) -> ClaimReport:
    params = ClaimParams(k=k, C=C)
    lattice = Lattice.shifted(inst.n, C)
    original = set(
        select_generators(
            inst, lattice, k, full_cap=config.full_lattice_cap, cube_cap=config.cube_cap
        ).members
    )
    shifted = _shifted_generators(inst, lattice, k, C, config)

    evidence: KwargType = {"generators": len(original)}
    region_equal = True
    if inst.n <= config.hull_dim_cap:
        box = lattice_box(lattice)
        xk_shift = shifted_vertex(inst.x(k), C)
        shifted_region = HRep(
            inst.n,
            [
                (tuple(a - b for a, b in zip(shifted_vertex(x, C), xk_shift)), 0)
                for x in inst.vertices
            ],
        )
        M = region_vertices(inst, lattice, k, dim_cap=config.hull_dim_cap).as_set()
        M_shift = hrep_to_vrep(shifted_region, box, dim_cap=config.hull_dim_cap).as_set()
        region_equal = M == M_shift
        evidence["region_vertices"] = len(M)
        if not region_equal:
            evidence["region_only"] = [_vec(v) for v in sorted(M - M_shift)]
            evidence["shifted_region_only"] = [_vec(v) for v in sorted(M_shift - M)]
    else:
        evidence["region"] = "skipped: hull dimension cap"

    if original == shifted and region_equal:
        return ClaimReport(
            ClaimId.L232, inst.family_tag, params, Verdict.confirmed, evidence
        )

    evidence["original_only"] = [list(h) for h in sorted(original - shifted)]
    evidence["shifted_only"] = [list(h) for h in sorted(shifted - original)]
    logger.warning(f"L232 refuted on {inst.family_tag} at k={k}, C={list(C)}")
    return ClaimReport(ClaimId.L232, inst.family_tag, params, Verdict.refuted, evidence)


def check_shift_claims(
    inst: Instance,
    k: int,
    C: Iterable[int],
    config: Optional[Config] = None,
    seed: Optional[SeedLike] = None,
    points: int = SHIFT_POINTS,
) -> list[ClaimReport]:
    """Check the shift identity on random points of the H(C) box for every pair (k, j),
    and the equality of the generator sets and regions built from X and from X(C).

    Returns:
        list[ClaimReport]: the L231 report followed by the L232 report
    """
    config = config or Config()
    inst.check_index(k)
    C = sorted_index_tuple(C)
    if any(not 0 <= i < inst.n for i in C):
        raise IndexError(f"C = {list(C)} out of range for n = {inst.n}")

    rng = np.random.default_rng(config.seed if seed is None else seed)
    return [
        _check_product_identity(inst, k, C, rng, points),
        _check_shifted_sets(inst, k, C, config),
    ]


def random_weight(rng: np.random.Generator, n: int, regime: Regime) -> WeightVector:
    """Numerators uniform in [-1000, 1000], denominators uniform in [1, 1000]."""
    numerators = rng.integers(-1000, 1001, size=n)
    denominators = rng.integers(1, 1001, size=n)
    if regime == Regime.nonneg:
        numerators = np.abs(numerators)
    return WeightVector(
        tuple(Fraction(int(a), int(b)) for a, b in zip(numerators, denominators))
    )


def equivalence_trial(
    inst: Instance,
    trials: int,
    seed: SeedLike = 0,
    regime: Regime = Regime.general,
    include_zero: bool = False,
    config: Optional[Config] = None,
) -> ClaimReport:
    """Compare cone-membership verdicts with brute-force argmax on random weight vectors.

    Raises:
        ValueError: if `trials` < 1
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1. Received: {trials}")
    config = config or Config()
    regime = Regime(regime)
    rng = np.random.default_rng(seed)

    weights = [random_weight(rng, inst.n, regime) for _ in range(trials)]
    if include_zero:
        weights[0] = WeightVector((0,) * inst.n)

    mismatches = []
    for c in weights:
        result = optimal_set(inst, c, regime, config)
        mismatches.extend(result.counterexamples)

    params = ClaimParams()
    claim_id = TRIAL_CLAIMS[regime]
    evidence: KwargType = {
        "regime": regime.value,
        "trials": trials,
        "mismatches": len(mismatches),
    }
    if not mismatches:
        return ClaimReport(claim_id, inst.family_tag, params, Verdict.confirmed, evidence)

    evidence["counterexamples"] = [m.to_dict() for m in mismatches[:MAX_WITNESSES]]
    logger.warning(
        f"{claim_id.value}: {len(mismatches)} verdict/argmax mismatches "
        f"on {inst.family_tag}"
    )
    return ClaimReport(claim_id, inst.family_tag, params, Verdict.refuted, evidence)


def check_facet_claim(inst: Instance, config: Optional[Config] = None) -> ClaimReport:
    """The irreducible sign-vector description must cut exactly X out of the unit cube."""
    config = config or Config()
    report = full_description(inst, Variant.V, MinimalityMode.irreducible, config)
    evidence: KwargType = {
        "rows": len(report.inequalities),
        "oracle_diff": report.oracle_diff.to_dict(),
    }
    if report.polytope_match:
        audit = necessity_audit(report, inst, config)
        evidence["unnecessary_rows"] = [
            {"h": list(e.h), "rhs": e.rhs} for e in audit.unnecessary
        ]
        return ClaimReport(
            ClaimId.T3, inst.family_tag, ClaimParams(), Verdict.confirmed, evidence
        )

    evidence["description"] = report.to_dict()["rows"]
    return ClaimReport(
        ClaimId.T3, inst.family_tag, ClaimParams(), Verdict.refuted, evidence
    )
