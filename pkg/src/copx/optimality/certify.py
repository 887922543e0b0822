import logging
from fractions import Fraction
from typing import Optional

from attrs import define, field

from copx.cone.engine import Certificate, ConeCertificate, cone_member
from copx.data.instance import Instance, WeightVector, argmax_brute
from copx.exceptions import RegimeError
from copx.lattice.generators import select_generators
from copx.lattice.lattice import Lattice
from copx.linalg.rational import format_rat
from copx.typing import ALL_X, KwargType, Regime
from copx.utils.attrs.converters import enum_field
from copx.utils.cli.config import Config

logger = logging.getLogger(__name__)


@define(frozen=True)
class OptimalityVerdict:
    """Cone-membership verdict for one vertex, cross-checked against brute force.

    Attributes:
        vertex (int): index k of the vertex
        regime (Regime): which generator lattice decided the verdict
        support (tuple[int, ...]): the negative support C used by the signed_support
            regime
        is_optimal (bool): True iff the witness is a cone certificate
        witness (Certificate): decomposition or separating vector
        cross_check (bool): whether the verdict agrees with brute-force argmax
        generators (int): number of generators the target was tested against
    """

    vertex: int
    regime: Regime = enum_field(enum_cls=Regime)
    support: tuple[int, ...]
    is_optimal: bool
    witness: Certificate
    cross_check: bool
    generators: int = 0

    def to_dict(self) -> KwargType:
        data: KwargType = {
            "k": self.vertex,
            "regime": self.regime.value,
            "optimal": self.is_optimal,
            "certificate": self.witness.to_dict(),
            "cross_check": self.cross_check,
        }
        if self.regime == Regime.signed_support:
            data["C"] = list(self.support)
        return data


def regime_lattice(inst: Instance, c: WeightVector, regime: Regime) -> Lattice:
    """Generator lattice for a regime; raises RegimeError when c does not fit it."""
    if regime == Regime.nonneg:
        if not c.is_nonnegative():
            raise RegimeError(
                "nonneg regime needs c >= 0. "
                f"Negative entries at {list(c.negative_support())}"
            )
        return Lattice.cube(inst.n)
    if regime == Regime.signed_support:
        # zero entries go to the complement of C
        return Lattice.shifted(inst.n, c.negative_support())
    return Lattice.full(inst.n)


def decide_optimal(
    inst: Instance,
    c: WeightVector,
    k: int,
    regime: Regime = Regime.general,
    config: Optional[Config] = None,
) -> OptimalityVerdict:
    """Decide whether x_k maximizes c over X by testing c against the regime's generators.

    Raises:
        RegimeError: if c violates the regime's sign requirement
        SizeCapError: if the regime's lattice exceeds its cap
    """
    config = config or Config()
    c.check_dimension(inst)
    inst.check_index(k)

    lattice = regime_lattice(inst, c, regime)
    G = select_generators(
        inst,
        lattice,
        k,
        dominating=ALL_X,
        full_cap=config.full_lattice_cap,
        cube_cap=config.cube_cap,
    )
    witness = cone_member(G, c.entries)
    is_optimal = isinstance(witness, ConeCertificate)
    cross_check = is_optimal == (k in argmax_brute(inst, c))
    if not cross_check:
        logger.warning(
            f"cross-check mismatch on {inst.family_tag}: vertex {k}, "
            f"regime {regime.value}, "
            f"cone verdict optimal={is_optimal}"
        )

    return OptimalityVerdict(
        vertex=k,
        regime=regime,
        support=lattice.support,
        is_optimal=is_optimal,
        witness=witness,
        cross_check=cross_check,
        generators=len(G),
    )


@define(frozen=True)
class Counterexample:
    instance: Instance
    c: WeightVector
    verdict: OptimalityVerdict
    argmax: frozenset[int]

    def to_dict(self) -> KwargType:
        return {
            "instance": self.instance.to_dict(),
            "c": [format_rat(x) for x in self.c],
            "k": self.verdict.vertex,
            "cone_verdict": self.verdict.to_dict(),
            "brute_force_optimal": self.verdict.vertex in self.argmax,
            "argmax": sorted(self.argmax),
        }


@define(frozen=True)
class OptimalSet:
    optimal: frozenset[int]
    argmax: frozenset[int]
    verdicts: tuple[OptimalityVerdict, ...]
    counterexamples: tuple[Counterexample, ...] = field(default=())

    @property
    def consistent(self) -> bool:
        return not self.counterexamples and self.optimal == self.argmax

    def to_dict(self) -> KwargType:
        return {
            "optimal": sorted(self.optimal),
            "argmax": sorted(self.argmax),
            "consistent": self.consistent,
            "verdicts": [v.to_dict() for v in self.verdicts],
        }


def optimal_set(
    inst: Instance,
    c: WeightVector,
    regime: Regime = Regime.general,
    config: Optional[Config] = None,
) -> OptimalSet:
    """Run `decide_optimal` for every vertex and compare the result with brute force.

    Mismatches are returned as counterexamples rather than raised.
    """
    verdicts = tuple(decide_optimal(inst, c, k, regime, config) for k in range(inst.size))
    argmax = argmax_brute(inst, c)
    counterexamples = tuple(
        Counterexample(inst, c, v, argmax) for v in verdicts if not v.cross_check
    )
    return OptimalSet(
        optimal=frozenset(v.vertex for v in verdicts if v.is_optimal),
        argmax=argmax,
        verdicts=verdicts,
        counterexamples=counterexamples,
    )


def shift_to_nonneg(inst: Instance, c: WeightVector) -> WeightVector:
    """c - min(c) * 1, which keeps every comparison x_k . c >= x_j . c when all vertices
    have the same number of ones.

    Raises:
        RegimeError: if the instance is not fixed-cardinality
    """
    c.check_dimension(inst)
    if not inst.is_fixed_cardinality:
        raise RegimeError(
            f"shifting by the all-ones vector needs a fixed-cardinality family; "
            f"{inst.family_tag} has cardinalities {sorted(set(inst.cardinalities()))}"
        )
    low = min(c.entries)
    if low >= 0:
        return c
    return WeightVector(tuple(x - low for x in c.entries))


def normalize_for_display(c: WeightVector) -> WeightVector:
    """Scale c into the [-1,1]^n box. Display only."""
    largest = max((abs(x) for x in c.entries), default=Fraction(0))
    if largest == 0:
        return c
    return c.scaled(1 / largest)


def dominant_weight(inst: Instance, k: int) -> WeightVector:
    """2 x_k - 1, under which x_k is the unique maximizer over any 0/1 set."""
    return WeightVector(tuple(2 * x - 1 for x in inst.x(k)))
