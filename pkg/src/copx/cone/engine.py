import logging
from collections.abc import Sequence
from fractions import Fraction
from typing import Optional, Union

from attrs import define, field

from copx.cone.simplex import phase_one
from copx.exceptions import DimensionMismatchError, PreconditionError
from copx.lattice.generators import GeneratorSet
from copx.linalg.rational import (
    dot,
    format_rat,
    linear_combination,
    parse_rat,
    primitive,
    rat_vec,
    rref,
)
from copx.typing import KwargType, RatVec, SignVector
from copx.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


@define(frozen=True)
class ConeCertificate:
    """Nonnegative coefficients, keyed by generator index, that reproduce the target."""

    coefficients: dict[int, Fraction] = field(factory=dict)

    def to_dict(self) -> KwargType:
        return {
            "type": "cone",
            "gamma": {
                str(i): format_rat(v) for i, v in sorted(self.coefficients.items())
            },
        }

    @classmethod
    def from_dict(cls, data: KwargType) -> "ConeCertificate":
        return cls({int(i): parse_rat(v) for i, v in data["gamma"].items()})

    def decomposition(self, G: GeneratorSet) -> list[tuple[SignVector, Fraction]]:
        return [(G.members[i], v) for i, v in sorted(self.coefficients.items())]


@define(frozen=True)
class FarkasCertificate:
    """A vector y with y . g <= 0 for every generator g and y . target > 0."""

    y: RatVec = field(converter=rat_vec)

    def to_dict(self) -> KwargType:
        return {"type": "farkas", "y": [format_rat(v) for v in self.y]}

    @classmethod
    def from_dict(cls, data: KwargType) -> "FarkasCertificate":
        return cls(tuple(parse_rat(v) for v in data["y"]))


Certificate = Union[ConeCertificate, FarkasCertificate]


def certificate_from_dict(data: KwargType) -> Certificate:
    """Rebuild a certificate from its `to_dict` form; "type" selects the class."""
    if data.get("type") == "cone":
        return ConeCertificate.from_dict(data)
    return FarkasCertificate.from_dict(data)


def verify_certificate(
    G: GeneratorSet, target: Sequence[Scalar], cert: Certificate
) -> bool:
    """Re-check a certificate by direct arithmetic.

    Args:
        G (GeneratorSet): the generators the certificate refers to
        target (Sequence[Scalar]): the vector that was tested
        cert (Certificate): coefficients over G, or a separating vector y

    Returns:
        bool: True when the coefficients are nonnegative and reproduce `target`
            exactly, or when y . g <= 0 for every generator and y . target > 0
    """
    if isinstance(cert, ConeCertificate):
        if any(v < 0 for v in cert.coefficients.values()):
            return False
        if any(not 0 <= i < len(G) for i in cert.coefficients):
            return False
        indices = sorted(cert.coefficients)
        total = linear_combination(
            [cert.coefficients[i] for i in indices], [G.members[i] for i in indices], G.n
        )
        return total == tuple(Fraction(t) for t in target)

    return all(dot(cert.y, g) <= 0 for g in G.members) and dot(cert.y, target) > 0


def cone_member(G: GeneratorSet, target: Sequence[Scalar]) -> Certificate:
    """Decide whether `target` lies in cone(G).

    Args:
        G (GeneratorSet): generators of the cone
        target (Sequence[Scalar]): vector to test

    Returns:
        Certificate: a `ConeCertificate` when target is in the cone, otherwise a
            `FarkasCertificate`. The certificate has already been re-checked.

    Raises:
        DimensionMismatchError: if the target length differs from the generator dimension
        RuntimeError: if the certificate fails its own re-check
    """
    if len(target) != G.n:
        raise DimensionMismatchError(
            f"target has length {len(target)}, generators have dimension {G.n}"
        )
    target = tuple(Fraction(t) for t in target)

    cert: Certificate
    if not any(target):
        cert = ConeCertificate({})
    elif len(G) == 0:
        cert = FarkasCertificate(target)
    else:
        result = phase_one(G.matrix(), target)
        if result.feasible:
            cert = ConeCertificate(result.gamma)
        else:
            cert = FarkasCertificate(result.y)  # type: ignore[arg-type]

    if not verify_certificate(G, target, cert):
        raise RuntimeError(f"certificate failed verification: {cert}")
    return cert


def is_member(G: GeneratorSet, target: Sequence[Scalar]) -> bool:
    """`cone_member` without the certificate."""
    return isinstance(cone_member(G, target), ConeCertificate)


def requires_generator(G: GeneratorSet, target: Sequence[Scalar], g_index: int) -> bool:
    """Whether every decomposition of `target` over G uses generator `g_index`.

    Args:
        G (GeneratorSet): generators of the cone
        target (Sequence[Scalar]): a vector inside cone(G)
        g_index (int): position of the generator in `G.members`

    Returns:
        bool: True when `target` leaves the cone once the generator is removed

    Raises:
        PreconditionError: if target is not in cone(G)
        IndexError: if `g_index` is out of range
    """
    if not 0 <= g_index < len(G):
        raise IndexError(
            f"generator index {g_index} out of range for {len(G)} generators"
        )
    if not is_member(G, target):
        raise PreconditionError("requires_generator needs a target inside cone(G)")
    return not is_member(G.without(g_index), target)


def _outside_rest(task: tuple[GeneratorSet, int]) -> bool:
    G, index = task
    return not is_member(G.without(index), G.members[index])


def elementwise_minimal(G: GeneratorSet, workers: int = 1) -> GeneratorSet:
    """Keep each h that lies outside the cone of all OTHER original generators.

    Every membership test uses the original set minus one element, so with a nontrivial
    lineality space the survivors may generate a strictly smaller cone.

    Args:
        G (GeneratorSet): the generators to filter
        workers (int): processes for the membership tests. Defaults to 1.

    Returns:
        GeneratorSet: the survivors, with the provenance of G
    """
    keep = ordered_map(_outside_rest, [(G, i) for i in range(len(G))], workers=workers)
    return G.replace_members(h for h, kept in zip(G.members, keep) if kept)


def irreducible_subset(G: GeneratorSet) -> GeneratorSet:
    """Greedy removal in lexicographic order while cone(G) is preserved.

    Each member is dropped when it lies in the cone of the members still kept, so the
    result generates cone(G) and no single member of it is redundant.

    Args:
        G (GeneratorSet): the generators to reduce

    Returns:
        GeneratorSet: a subset of G with the provenance of G
    """
    current = list(G.members)
    for h in G.members:
        rest = [g for g in current if g != h]
        if is_member(G.replace_members(rest), h):
            current = rest
    return G.replace_members(current)


def lineality_basis(G: GeneratorSet) -> list[RatVec]:
    """Basis of the largest linear subspace inside cone(G), as primitive integer vectors.

    The lineality space is spanned by the generators whose negation also lies in the cone.

    Args:
        G (GeneratorSet): generators of the cone

    Returns:
        list[RatVec]: one vector per dimension of the lineality space, empty for a pointed
            cone
    """
    two_sided = [g for g in G.members if is_member(G, tuple(-x for x in g))]
    rows, _ = rref(two_sided)
    return [tuple(Fraction(v) for v in primitive(row)) for row in rows]


def first_outside(
    G: GeneratorSet, vectors: Sequence[Sequence[Scalar]]
) -> Optional[Sequence[Scalar]]:
    return next((v for v in vectors if not is_member(G, v)), None)


def cones_equal(G: GeneratorSet, H: GeneratorSet) -> bool:
    """Mutual containment, checked generator by generator."""
    return first_outside(G, H.members) is None and first_outside(H, G.members) is None
