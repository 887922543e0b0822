"""Facet candidates from minimal normal-cone generators, and their validation.

Every vertex contributes the inequalities h . x <= h . x_k for the minimal generators h of
its candidate normal cone. The union over all vertices is compared against the hull oracle
by tight vertex sets, so rows that agree up to the affine hull of X count as the same
facet.
"""

import logging
from collections import defaultdict
from collections.abc import Sequence
from fractions import Fraction
from typing import Optional

import numpy as np
from attrs import define, evolve, field

from copx.cone.engine import (
    cones_equal,
    elementwise_minimal,
    irreducible_subset,
    is_member,
    lineality_basis,
)
from copx.data.instance import Instance
from copx.exceptions import PreconditionError
from copx.hull.oracle import (
    Box,
    FaceClassification,
    HRep,
    VRep,
    face_classify,
    hrep_to_vrep,
    vrep_to_hrep,
)
from copx.lattice.generators import GeneratorSet, select_generators
from copx.lattice.lattice import Lattice, iter_lattice_blocks
from copx.linalg.rational import dot, format_rat
from copx.typing import (
    ALL_X,
    FaceKind,
    KwargType,
    MinimalityMode,
    RatVec,
    SignVector,
    Variant,
)
from copx.utils.attrs.converters import enum_field
from copx.utils.cli.config import Config
from copx.utils.parallel import ordered_map

logger = logging.getLogger(__name__)


@define(frozen=True)
class FacetInequality:
    """Candidate inequality h . x <= rhs.

    Attributes:
        h (SignVector): {-1,0,1} normal
        rhs (int): right-hand side, equal to h . x_k for every source vertex
        source_vertices (tuple[int, ...]): vertices whose minimal generators contain h
        tight_vertices (tuple[int, ...]): vertices with h . x = rhs
        classification (FaceClassification): face induced on conv(X)
        equality_pair (bool): whether (-h, -rhs) is part of the same description
    """

    h: SignVector
    rhs: int
    source_vertices: tuple[int, ...]
    tight_vertices: tuple[int, ...]
    classification: FaceClassification
    equality_pair: bool = False

    @property
    def key(self) -> tuple[SignVector, int]:
        return self.h, self.rhs

    @property
    def kind(self) -> FaceKind:
        return self.classification.kind

    def row(self) -> tuple[SignVector, int]:
        return self.h, self.rhs

    def to_dict(self) -> KwargType:
        return {
            "h": list(self.h),
            "rhs": self.rhs,
            "class": self.kind.value,
            "tight": list(self.tight_vertices),
            "sources": list(self.source_vertices),
            "equality_pair": self.equality_pair,
        }


@define(frozen=True)
class Divergence:
    """Literal per-element filtering lost part of the cone at `vertex`."""

    vertex: int
    lineality: tuple[RatVec, ...]
    lost: tuple[SignVector, ...]
    """generators of the full set that the literal survivors no longer generate"""

    def to_dict(self) -> KwargType:
        return {
            "k": self.vertex,
            "lineality": [[format_rat(x) for x in v] for v in self.lineality],
            "lost": [list(h) for h in self.lost],
        }


@define(frozen=True)
class MissingFacet:
    a: RatVec
    b: Fraction
    tight: tuple[int, ...]
    sign_normal: Optional[tuple[SignVector, int]]
    """a {-1,0,1} normal inducing the same face, if one exists"""

    def to_dict(self) -> KwargType:
        data: KwargType = {
            "a": [format_rat(x) for x in self.a],
            "b": format_rat(self.b),
            "tight": list(self.tight),
        }
        if self.sign_normal is None:
            data["sign_normal"] = None
        else:
            h, rhs = self.sign_normal
            data["sign_normal"] = {"h": list(h), "rhs": rhs}
        return data


@define(frozen=True)
class OracleDiff:
    missing_facets: tuple[MissingFacet, ...] = ()
    extra_non_facets: tuple[tuple[SignVector, int], ...] = ()
    unmatched_facets: tuple[tuple[SignVector, int], ...] = ()
    """rows classified as facets that the oracle does not list"""
    improper_pairs: tuple[tuple[SignVector, int], ...] = ()
    """one representative (h, rhs) per emitted equality pair"""
    one_sided_improper: tuple[tuple[SignVector, int], ...] = ()
    """rows tight on all of X whose reverse direction was not emitted"""
    oracle_equalities: int = 0
    oracle_facets: int = 0

    @property
    def is_clean(self) -> bool:
        return not (self.missing_facets or self.unmatched_facets)

    @property
    def needs_larger_coefficients(self) -> bool:
        return any(m.sign_normal is None for m in self.missing_facets)

    def to_dict(self) -> KwargType:
        def rows(values):
            return [{"h": list(h), "rhs": rhs} for h, rhs in values]

        return {
            "missing_facets": [m.to_dict() for m in self.missing_facets],
            "extra_non_facets": rows(self.extra_non_facets),
            "unmatched_facets": rows(self.unmatched_facets),
            "improper_pairs": rows(self.improper_pairs),
            "one_sided_improper": rows(self.one_sided_improper),
            "oracle_equalities": self.oracle_equalities,
            "oracle_facets": self.oracle_facets,
            "needs_larger_coefficients": self.needs_larger_coefficients,
        }


@define(frozen=True)
class DescriptionReport:
    instance_tag: str
    variant: Variant = enum_field(enum_cls=Variant)
    minimality_mode: MinimalityMode = enum_field(enum_cls=MinimalityMode)
    inequalities: tuple[FacetInequality, ...] = field(converter=tuple)
    polytope_match: bool
    oracle_diff: OracleDiff
    divergences: tuple[Divergence, ...] = field(default=(), converter=tuple)

    def rows(self) -> list[tuple[SignVector, int]]:
        return [ineq.row() for ineq in self.inequalities]

    def to_hrep(self, n: int) -> HRep:
        return HRep(n, self.rows())

    def to_dict(self) -> KwargType:
        return {
            "instance": self.instance_tag,
            "variant": self.variant.value,
            "mode": self.minimality_mode.value,
            "rows": [ineq.to_dict() for ineq in self.inequalities],
            "polytope_match": self.polytope_match,
            "oracle_diff": self.oracle_diff.to_dict(),
            "divergences": [d.to_dict() for d in self.divergences],
        }


def variant_lattice(n: int, variant: Variant) -> Lattice:
    return Lattice.full(n) if variant == Variant.V else Lattice.cube(n)


def _vertex_generators(
    inst: Instance, k: int, variant: Variant, config: Config
) -> GeneratorSet:
    return select_generators(
        inst,
        variant_lattice(inst.n, variant),
        k,
        dominating=ALL_X,
        full_cap=config.full_lattice_cap,
        cube_cap=config.cube_cap,
    )


def _minimal(G: GeneratorSet, mode: MinimalityMode) -> GeneratorSet:
    if mode == MinimalityMode.literal:
        return elementwise_minimal(G)
    return irreducible_subset(G)


def _candidate(
    inst: Instance, h: SignVector, rhs: int, sources: Sequence[int]
) -> FacetInequality:
    classification = face_classify(inst, h, rhs)
    return FacetInequality(
        h=h,
        rhs=rhs,
        source_vertices=tuple(sorted(sources)),
        tight_vertices=classification.tight,
        classification=classification,
    )


def vertex_facets(
    inst: Instance,
    k: int,
    variant: Variant = Variant.V,
    minimality_mode: MinimalityMode = MinimalityMode.irreducible,
    config: Optional[Config] = None,
) -> list[FacetInequality]:
    """Inequalities h . x <= h . x_k for the minimal generators h at vertex k.

    Raises:
        SizeCapError: if the variant's lattice exceeds its cap
    """
    config = config or Config()
    inst.check_index(k)
    G = _minimal(_vertex_generators(inst, k, variant, config), minimality_mode)
    xk = inst.x(k)
    return [_candidate(inst, h, int(dot(h, xk)), (k,)) for h in G.members]


def vertex_divergence(
    inst: Instance, k: int, variant: Variant, config: Config
) -> Optional[Divergence]:
    """Compare the literal survivors at vertex k with the full generator set."""
    G = _vertex_generators(inst, k, variant, config)
    literal = elementwise_minimal(G)
    if cones_equal(literal, G):
        return None
    return Divergence(
        vertex=k,
        lineality=tuple(lineality_basis(G)),
        lost=tuple(g for g in G.members if not is_member(literal, g)),
    )


def _vertex_task(
    task: tuple[Instance, int, Variant, MinimalityMode, Config],
) -> tuple[list[tuple[SignVector, int]], Optional[Divergence]]:
    inst, k, variant, mode, config = task
    rows = [ineq.row() for ineq in vertex_facets(inst, k, variant, mode, config)]
    divergence = None
    if mode == MinimalityMode.literal:
        divergence = vertex_divergence(inst, k, variant, config)
    return rows, divergence


def sign_vector_normal(
    inst: Instance, tight: Sequence[int], config: Optional[Config] = None
) -> Optional[tuple[SignVector, int]]:
    """First (lexicographic) nonzero h in {-1,0,1}^n maximized by X exactly on `tight`.

    Returns None when no such sign vector exists, i.e. the face needs larger coefficients.
    """
    config = config or Config()
    lattice = Lattice.full(inst.n)
    lattice.check_cap(full_cap=config.full_lattice_cap, cube_cap=config.cube_cap)

    tight_idx = sorted(set(tight))
    if not tight_idx:
        return None
    for k in tight_idx:
        inst.check_index(k)
    others = [k for k in range(inst.size) if k not in set(tight_idx)]

    vertices = np.array(inst.vertices, dtype=np.int64)
    for block in iter_lattice_blocks(lattice):
        products = vertices @ block.T
        level = products[tight_idx[0]]
        keep = np.any(block != 0, axis=1)
        keep &= np.all(products[tight_idx] == level, axis=0)
        if others:
            keep &= products[others].max(axis=0) < level
        hits = np.flatnonzero(keep)
        if hits.size:
            first = int(hits[0])
            return tuple(int(x) for x in block[first]), int(level[first])
    return None


def _tight_set(inst: Instance, a: Sequence, b) -> tuple[int, ...]:
    return tuple(k for k, x in enumerate(inst.vertices) if dot(a, x) == b)


def _oracle_diff(
    inst: Instance, inequalities: Sequence[FacetInequality], config: Config
) -> OracleDiff:
    oracle = vrep_to_hrep(VRep(inst.n, inst.vertices), dim_cap=config.hull_dim_cap)

    oracle_faces = {_tight_set(inst, a, b): (a, b) for a, b in oracle.inequalities}
    emitted_facets = {
        ineq.tight_vertices for ineq in inequalities if ineq.kind == FaceKind.facet
    }

    missing = tuple(
        MissingFacet(a, b, tight, sign_vector_normal(inst, tight, config))
        for tight, (a, b) in sorted(oracle_faces.items(), key=lambda item: item[1])
        if tight not in emitted_facets
    )
    unmatched = tuple(
        ineq.row()
        for ineq in inequalities
        if ineq.kind == FaceKind.facet and ineq.tight_vertices not in oracle_faces
    )
    extra = tuple(
        ineq.row()
        for ineq in inequalities
        if ineq.kind in (FaceKind.lower_face, FaceKind.vertex_only, FaceKind.non_tight)
    )
    improper = [ineq for ineq in inequalities if ineq.kind == FaceKind.improper]
    # one representative per pair: the lexicographically larger normal
    pairs = tuple(
        ineq.row()
        for ineq in improper
        if ineq.equality_pair and ineq.h > tuple(-x for x in ineq.h)
    )
    one_sided = tuple(ineq.row() for ineq in improper if not ineq.equality_pair)

    return OracleDiff(
        missing_facets=missing,
        extra_non_facets=extra,
        unmatched_facets=unmatched,
        improper_pairs=pairs,
        one_sided_improper=one_sided,
        oracle_equalities=len(oracle.equalities),
        oracle_facets=len(oracle.inequalities),
    )


def _vertex_set(inst: Instance) -> frozenset[RatVec]:
    return frozenset(tuple(Fraction(x) for x in v) for v in inst.vertices)


def _boxed_vertices(
    inst: Instance, rows: Sequence[tuple[SignVector, int]], config: Config
) -> frozenset[RatVec]:
    h = HRep(inst.n, rows)
    return hrep_to_vrep(h, Box.unit(inst.n), dim_cap=config.hull_dim_cap).as_set()


def full_description(
    inst: Instance,
    variant: Variant = Variant.V,
    minimality_mode: MinimalityMode = MinimalityMode.irreducible,
    config: Optional[Config] = None,
) -> DescriptionReport:
    """Union of `vertex_facets` over every vertex, classified and checked against the
    oracle.

    Divergences between literal and irreducible filtering are data in the report, not
    errors.

    Raises:
        SizeCapError: if a lattice or the hull dimension exceeds its cap
    """
    config = config or Config()
    logger.info(
        f"Synthesizing {variant.value} description ({minimality_mode.value}) for "
        f"{inst.family_tag}: n={inst.n}, |X|={inst.size}"
    )
    tasks = [(inst, k, variant, minimality_mode, config) for k in range(inst.size)]
    results = ordered_map(
        _vertex_task,
        tasks,
        workers=config.workers,
        progress=config.progress,
        desc="vertices",
    )

    sources: dict[tuple[SignVector, int], set[int]] = defaultdict(set)
    divergences = []
    for k, (rows, divergence) in enumerate(results):
        for row in rows:
            sources[row].add(k)
        if divergence is not None:
            divergences.append(divergence)

    keys = set(sources)
    inequalities = []
    for h, rhs in sorted(keys):
        ineq = _candidate(inst, h, rhs, sources[h, rhs])
        if ineq.kind == FaceKind.invalid:
            raise RuntimeError(
                f"emitted inequality {list(h)} . x <= {rhs} cuts off a vertex of X"
            )
        if not set(ineq.source_vertices) <= set(ineq.tight_vertices):
            raise RuntimeError(f"source vertices of {list(h)} . x <= {rhs} are not tight")
        paired = (tuple(-x for x in h), -rhs) in keys
        inequalities.append(evolve(ineq, equality_pair=paired))

    boxed = _boxed_vertices(inst, [ineq.row() for ineq in inequalities], config)
    polytope_match = boxed == _vertex_set(inst)
    oracle_diff = _oracle_diff(inst, inequalities, config)

    if divergences:
        logger.warning(
            "literal filtering lost cone generators at vertices "
            f"{[d.vertex for d in divergences]}"
        )
    logger.info(
        f"{len(inequalities)} rows, polytope_match={polytope_match}, "
        f"{len(oracle_diff.missing_facets)} missing oracle facets"
    )
    return DescriptionReport(
        instance_tag=inst.family_tag,
        variant=variant,
        minimality_mode=minimality_mode,
        inequalities=inequalities,
        polytope_match=polytope_match,
        oracle_diff=oracle_diff,
        divergences=divergences,
    )


@define(frozen=True)
class AuditEntry:
    h: SignVector
    rhs: int
    status: str
    """necessary, unnecessary or box"""
    admitted: tuple[RatVec, ...] = ()
    """vertices that appear once the row is removed"""

    def to_dict(self) -> KwargType:
        return {
            "h": list(self.h),
            "rhs": self.rhs,
            "status": self.status,
            "admitted": [[format_rat(x) for x in v] for v in self.admitted],
        }


@define(frozen=True)
class NecessityAudit:
    instance_tag: str
    entries: tuple[AuditEntry, ...]

    @property
    def unnecessary(self) -> tuple[AuditEntry, ...]:
        return tuple(e for e in self.entries if e.status == "unnecessary")

    @property
    def necessary(self) -> tuple[AuditEntry, ...]:
        return tuple(e for e in self.entries if e.status == "necessary")

    def to_dict(self) -> KwargType:
        return {
            "instance": self.instance_tag,
            "entries": [e.to_dict() for e in self.entries],
            "unnecessary": len(self.unnecessary),
        }


def necessity_audit(
    report: DescriptionReport, inst: Instance, config: Optional[Config] = None
) -> NecessityAudit:
    """Remove each non-box row in turn and check whether the boxed vertex set changes.

    Raises:
        PreconditionError: if the report's description does not reproduce X
    """
    if not report.polytope_match:
        raise PreconditionError(
            "necessity_audit needs a description with polytope_match = true"
        )
    config = config or Config()

    box = Box.unit(inst.n)
    rows = report.rows()
    expected = _vertex_set(inst)
    entries = []
    for i, (h, rhs) in enumerate(rows):
        if box.is_box_row(h, rhs):
            entries.append(AuditEntry(h, rhs, "box"))
            continue
        remaining = _boxed_vertices(inst, rows[:i] + rows[i + 1 :], config)
        if remaining == expected:
            entries.append(AuditEntry(h, rhs, "unnecessary"))
        else:
            admitted = tuple(sorted(remaining - expected))
            entries.append(AuditEntry(h, rhs, "necessary", admitted))

    audit = NecessityAudit(report.instance_tag, tuple(entries))
    if audit.unnecessary:
        logger.warning(f"{len(audit.unnecessary)} rows are not needed to cut out X")
    return audit
