"""Polyhedral oracle.

Exact conversions between vertex and inequality descriptions through cddlib in fraction
arithmetic, plus the region and face computations used to check generator-set claims.
Nothing here depends on the cone engine, so agreement between the two is meaningful.
"""

import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction
from typing import Optional, Union

import cdd
from attrs import define, field

from copx.data.instance import Instance
from copx.exceptions import (
    DimensionMismatchError,
    InstanceError,
    SizeCapError,
    UnboundedError,
)
from copx.lattice.lattice import Lattice
from copx.linalg.rational import affine_rank, dot, format_rat, parse_rat, primitive, rref
from copx.typing import ALL_X, Dominating, FaceKind, KwargType, LatticeKind, RatVec

logger = logging.getLogger(__name__)

HREP_SCHEMA = "copx-hrep-v1"
DEFAULT_DIM_CAP = 8

Row = tuple[RatVec, Fraction]
Scalar = Union[int, Fraction]


def _row(a: Sequence[Scalar], b: Scalar) -> Row:
    return tuple(Fraction(x) for x in a), Fraction(b)


def _rows(value: Iterable[tuple[Sequence[Scalar], Scalar]]) -> tuple[Row, ...]:
    return tuple(_row(a, b) for a, b in value)


def _inequality_rows(value: Iterable[tuple[Sequence[Scalar], Scalar]]) -> tuple[Row, ...]:
    # 0 <= b with b >= 0 is vacuous
    return tuple((a, b) for a, b in _rows(value) if any(a) or b < 0)


def _format_row(row: Row) -> KwargType:
    a, b = row
    return {"a": [format_rat(x) for x in a], "b": format_rat(b)}


def _parse_row(data: KwargType) -> Row:
    return _row([parse_rat(str(x)) for x in data["a"]], parse_rat(str(data["b"])))


@define(frozen=True)
class HRep:
    """Inequalities a . x <= b and equalities a . x = b in dimension n."""

    n: int
    inequalities: tuple[Row, ...] = field(default=(), converter=_inequality_rows)
    equalities: tuple[Row, ...] = field(default=(), converter=_rows)

    def __attrs_post_init__(self):
        for a, _ in self.inequalities + self.equalities:
            if len(a) != self.n:
                raise DimensionMismatchError(
                    f"row of length {len(a)} in dimension {self.n}"
                )

    def contains(self, x: Sequence[Scalar]) -> bool:
        return all(dot(a, x) <= b for a, b in self.inequalities) and all(
            dot(a, x) == b for a, b in self.equalities
        )

    def to_dict(self) -> KwargType:
        return {
            "schema": HREP_SCHEMA,
            "n": self.n,
            "inequalities": [_format_row(r) for r in self.inequalities],
            "equalities": [_format_row(r) for r in self.equalities],
        }

    @classmethod
    def from_dict(cls, data: KwargType) -> "HRep":
        if not isinstance(data, dict) or data.get("schema") != HREP_SCHEMA:
            raise InstanceError(f"H-representation JSON must use schema {HREP_SCHEMA!r}")
        try:
            return cls(
                n=int(data["n"]),
                inequalities=[_parse_row(r) for r in data.get("inequalities", [])],
                equalities=[_parse_row(r) for r in data.get("equalities", [])],
            )
        except (KeyError, TypeError) as e:
            raise InstanceError(
                f"malformed H-representation JSON, missing or bad {e}"
            ) from e


def _vertices(value: Iterable[Sequence[Scalar]]) -> tuple[RatVec, ...]:
    return tuple(sorted({tuple(Fraction(x) for x in v) for v in value}))


@define(frozen=True)
class VRep:
    """Distinct vertices of a bounded polyhedron, lexicographically ordered."""

    n: int
    vertices: tuple[RatVec, ...] = field(default=(), converter=_vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def as_set(self) -> frozenset[RatVec]:
        return frozenset(self.vertices)

    def to_dict(self) -> KwargType:
        return {
            "n": self.n,
            "vertices": [[format_rat(x) for x in v] for v in self.vertices],
        }


@define(frozen=True)
class Box:
    lo: RatVec = field(converter=lambda v: tuple(Fraction(x) for x in v))
    hi: RatVec = field(converter=lambda v: tuple(Fraction(x) for x in v))

    def __attrs_post_init__(self):
        if len(self.lo) != len(self.hi):
            raise DimensionMismatchError("box bounds must have the same length")
        if any(lo > hi for lo, hi in zip(self.lo, self.hi)):
            raise ValueError(f"empty box: lo={self.lo}, hi={self.hi}")

    @classmethod
    def unit(cls, n: int) -> "Box":
        return cls((0,) * n, (1,) * n)

    @property
    def n(self) -> int:
        return len(self.lo)

    def rows(self) -> list[Row]:
        """the box as inequalities: -x_i <= -lo_i and x_i <= hi_i"""
        rows = []
        for i, (lo, hi) in enumerate(zip(self.lo, self.hi)):
            unit = tuple(Fraction(int(i == j)) for j in range(self.n))
            rows.append((tuple(-x for x in unit), -lo))
            rows.append((unit, hi))
        return rows

    def is_box_row(self, a: Sequence[Scalar], b: Scalar) -> bool:
        return any(primitive((*a, b)) == primitive((*ra, rb)) for ra, rb in self.rows())


def lattice_box(lattice: Lattice) -> Box:
    """[-1,1]^n for the full lattice, [0,1]^n for the cube, [-1,0] on C and [0,1]
    elsewhere for a shifted cube."""
    if lattice.kind == LatticeKind.full:
        return Box((-1,) * lattice.n, (1,) * lattice.n)
    support = set(lattice.support)
    return Box(
        tuple(-1 if i in support else 0 for i in range(lattice.n)),
        tuple(0 if i in support else 1 for i in range(lattice.n)),
    )


def _check_dim(n: int, dim_cap: int):
    if n > dim_cap:
        raise SizeCapError("hull dimension", n, dim_cap)


def _cdd_row(a: Sequence[Scalar], b: Scalar) -> list[Fraction]:
    """a . x <= b in cdd's [b, -a] layout, meaning b - a . x >= 0"""
    return [Fraction(b), *(-Fraction(x) for x in a)]


def _cdd_rows(matrix: "cdd.Matrix") -> list[tuple[tuple[Fraction, ...], bool]]:
    """(row, is_linear) pairs of a cdd matrix with redundant rows removed."""
    if matrix.row_size == 0:
        return []
    matrix.canonicalize()
    linear = matrix.lin_set
    return [
        (tuple(Fraction(x) for x in matrix[i]), i in linear)
        for i in range(matrix.row_size)
    ]


def hrep_to_vrep(
    h: HRep, box: Optional[Box] = None, dim_cap: int = DEFAULT_DIM_CAP
) -> VRep:
    """Extreme points of {x : h} (intersected with `box` if given).

    Args:
        h (HRep): inequalities and equalities
        box (Optional[Box]): extra bounds added as inequalities. Defaults to None.
        dim_cap (int): largest dimension to enumerate

    Returns:
        VRep: the vertices, empty when the system is infeasible

    Raises:
        SizeCapError: if the dimension exceeds `dim_cap`
        UnboundedError: if the feasible region is unbounded
    """
    _check_dim(h.n, dim_cap)
    if box is not None and box.n != h.n:
        raise DimensionMismatchError(f"box dimension {box.n} differs from {h.n}")

    # 1 >= 0 keeps the matrix non-empty for an unconstrained system
    rows = [_cdd_row((0,) * h.n, 1)]
    if box is not None:
        rows.extend(_cdd_row(a, b) for a, b in box.rows())
    rows.extend(_cdd_row(a, b) for a, b in h.inequalities)

    mat = cdd.Matrix(rows, number_type="fraction")
    if h.equalities:
        mat.extend([_cdd_row(a, b) for a, b in h.equalities], linear=True)
    mat.rep_type = cdd.RepType.INEQUALITY
    generators = _cdd_rows(cdd.Polyhedron(mat).get_generators())

    # generator rows are [1, v] for points and [0, r] for rays and lines
    vertices = [
        tuple(x / row[0] for x in row[1:]) for row, _ in generators if row[0] != 0
    ]
    if not vertices:
        return VRep(h.n)

    unbounded = [row[1:] for row, linear in generators if linear or row[0] == 0]
    if unbounded:
        raise UnboundedError(tuple(Fraction(x) for x in primitive(unbounded[0])))

    return VRep(h.n, vertices)


def _canonical_equalities(rows: Sequence[Sequence[Scalar]], n: int) -> list[Row]:
    reduced, _ = rref(rows)
    return [_row(r[:n], r[n]) for r in reduced]


def _reduce(a: RatVec, b: Fraction, equalities: Sequence[Row]) -> Row:
    """Eliminate the pivot coordinate of every RREF equality from a . x <= b."""
    a_list = list(a)
    for eq_a, eq_b in equalities:
        pivot = next(i for i, x in enumerate(eq_a) if x != 0)
        factor = a_list[pivot]
        if factor:
            a_list = [x - factor * y for x, y in zip(a_list, eq_a)]
            b = b - factor * eq_b
    return tuple(a_list), b


def _integral(a: Sequence[Scalar], b: Scalar) -> Row:
    scaled = primitive((*a, b))
    return _row(scaled[:-1], scaled[-1])


def canonical_hrep(
    n: int, inequalities: Iterable[Row], equality_rows: Iterable[Sequence[Scalar]]
) -> HRep:
    """Normal form: RREF equalities, inequalities reduced modulo them and scaled to
    primitive integers, sorted and deduplicated."""
    equalities = _canonical_equalities([list(r) for r in equality_rows], n)

    reduced = set()
    for a, b in inequalities:
        a_red, b_red = _reduce(tuple(Fraction(x) for x in a), Fraction(b), equalities)
        if not any(a_red) and b_red >= 0:
            continue
        reduced.add(_integral(a_red, b_red))

    return HRep(
        n=n,
        inequalities=sorted(reduced),
        equalities=[_integral(a, b) for a, b in equalities],
    )


def vrep_to_hrep(v: VRep, dim_cap: int = DEFAULT_DIM_CAP) -> HRep:
    """Minimal H-description of conv(v): affine hull equalities plus facet inequalities.

    Raises:
        ValueError: if `v` has no vertices
        SizeCapError: if the dimension exceeds `dim_cap`
    """
    if v.is_empty:
        raise ValueError("vrep_to_hrep needs at least one vertex")
    _check_dim(v.n, dim_cap)

    mat = cdd.Matrix([[1, *vertex] for vertex in v.vertices], number_type="fraction")
    mat.rep_type = cdd.RepType.GENERATOR
    rows = _cdd_rows(cdd.Polyhedron(mat).get_inequalities())

    # inequality rows [b, c] mean b + c . x >= 0, that is -c . x <= b
    inequalities = [
        (tuple(-x for x in row[1:]), row[0]) for row, linear in rows if not linear
    ]
    equality_rows = [(*(-x for x in row[1:]), row[0]) for row, linear in rows if linear]
    hrep = canonical_hrep(v.n, inequalities, equality_rows)
    logger.debug(
        f"vrep_to_hrep: {len(v)} vertices -> {len(hrep.equalities)} equalities, "
        f"{len(hrep.inequalities)} facets"
    )
    return hrep


def region_hrep(
    inst: Instance,
    anchor: int,
    equal_to: Iterable[int] = (),
    dominating: Union[Dominating, Iterable[int]] = ALL_X,
) -> HRep:
    """(x_k - x_j) . x = 0 for j in equal_to and (x_l - x_k) . x <= 0 for l in
    dominating."""
    xk = inst.x(anchor)
    dominated = range(inst.size) if dominating == ALL_X else dominating

    equalities = []
    for j in equal_to:
        diff = tuple(a - b for a, b in zip(xk, inst.x(j)))
        if any(diff):
            equalities.append((diff, 0))

    inequalities = [
        (tuple(b - a for a, b in zip(xk, inst.x(l))), 0)
        for l in dominated  # noqa: E741
        if l != anchor
    ]
    return HRep(inst.n, inequalities, equalities)


def region_vertices(
    inst: Instance,
    lattice: Lattice,
    anchor: int,
    equal_to: Iterable[int] = (),
    dominating: Union[Dominating, Iterable[int]] = ALL_X,
    box: Optional[Box] = None,
    dim_cap: int = DEFAULT_DIM_CAP,
) -> VRep:
    """Vertices of the region cut from the lattice box by the equality and dominance
    rows."""
    if lattice.n != inst.n:
        raise DimensionMismatchError(
            f"lattice dimension {lattice.n} differs from instance dimension {inst.n}"
        )
    h = region_hrep(inst, anchor, equal_to, dominating)
    return hrep_to_vrep(h, box or lattice_box(lattice), dim_cap=dim_cap)


@define(frozen=True)
class FaceClassification:
    kind: FaceKind
    dim: Optional[int]
    """dimension of the face, None for invalid or non-tight pairs"""
    tight: tuple[int, ...]

    def to_dict(self) -> KwargType:
        return {"class": self.kind.value, "dim": self.dim, "tight": list(self.tight)}


def face_classify(
    inst: Instance, h: Sequence[Scalar], l: Scalar  # noqa: E741
) -> FaceClassification:
    """Classify the face {x in conv(X) : h . x = l} of a candidate row h . x <= l."""
    if len(h) != inst.n:
        raise DimensionMismatchError(f"h has length {len(h)}, instance has n = {inst.n}")

    values = [dot(h, x) for x in inst.vertices]
    tight = tuple(k for k, value in enumerate(values) if value == l)

    if any(value > l for value in values):
        return FaceClassification(FaceKind.invalid, None, tight)
    if not tight:
        return FaceClassification(FaceKind.non_tight, None, tight)

    rank_x = affine_rank(inst.vertices)
    rank_tight = affine_rank([inst.vertices[k] for k in tight])

    if rank_tight == rank_x:
        kind = FaceKind.improper
    elif rank_tight == rank_x - 1:
        kind = FaceKind.facet
    elif rank_tight == 1:
        kind = FaceKind.vertex_only
    else:
        kind = FaceKind.lower_face
    return FaceClassification(kind, rank_tight - 1, tight)
