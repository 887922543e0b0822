import itertools
from fractions import Fraction

import numpy as np
import pytest

from copx.data.instance import Instance, default_labels
from copx.exceptions import (
    DimensionMismatchError,
    InstanceError,
    SizeCapError,
    UnboundedError,
)
from copx.hull.oracle import (
    Box,
    HRep,
    VRep,
    face_classify,
    hrep_to_vrep,
    lattice_box,
    region_hrep,
    region_vertices,
    vrep_to_hrep,
)
from copx.lattice.lattice import Lattice
from copx.linalg.rational import dot, rref
from copx.typing import ALL_X, FaceKind

CUBE_3 = list(itertools.product((0, 1), repeat=3))


def _points(*vectors) -> set[tuple[Fraction, ...]]:
    return {tuple(Fraction(x) for x in v) for v in vectors}


def test_unit_square_vertices():
    h = HRep(2, [((1, 0), 1), ((-1, 0), 0), ((0, 1), 1), ((0, -1), 0)])
    assert hrep_to_vrep(h).as_set() == _points((0, 0), (0, 1), (1, 0), (1, 1))


def test_fractional_vertices():
    h = HRep(2, [((2, 1), 1), ((1, 2), 1), ((-1, 0), 0), ((0, -1), 0)])
    third = Fraction(1, 3)
    assert hrep_to_vrep(h).as_set() == _points(
        (0, 0), (0, Fraction(1, 2)), (Fraction(1, 2), 0), (third, third)
    )


def test_box_clipping():
    v = hrep_to_vrep(HRep(2, [((1, 1), 1)]), Box.unit(2))
    assert v.as_set() == _points((0, 0), (0, 1), (1, 0))


def test_equalities_are_respected():
    h = HRep(2, equalities=[((1, 1), 1)])
    assert hrep_to_vrep(h, Box.unit(2)).as_set() == _points((0, 1), (1, 0))


def test_unbounded_region_reports_a_ray():
    with pytest.raises(UnboundedError) as e:
        hrep_to_vrep(HRep(1, [((-1,), 0)]))
    assert e.value.ray == (Fraction(1),)


def test_infeasible_region_is_empty():
    v = hrep_to_vrep(HRep(1, [((1,), -1), ((-1,), 0)]))
    assert v.is_empty
    assert len(v) == 0


def test_dimension_caps():
    with pytest.raises(SizeCapError):
        hrep_to_vrep(HRep(3), Box.unit(3), dim_cap=2)
    with pytest.raises(SizeCapError):
        vrep_to_hrep(VRep(3, CUBE_3), dim_cap=2)
    with pytest.raises(DimensionMismatchError):
        hrep_to_vrep(HRep(2), Box.unit(3))


def test_empty_vrep_is_rejected():
    with pytest.raises(ValueError):
        vrep_to_hrep(VRep(2))


def test_triangle_description(fig1: Instance):
    h = vrep_to_hrep(VRep(3, fig1.vertices))
    assert h.equalities == (((1, 1, 1), 2),)
    assert set(h.inequalities) == {((0, -1, -1), -1), ((0, 0, 1), 1), ((0, 1, 0), 1)}
    assert all(h.contains(x) for x in fig1.vertices)
    assert not h.contains((1, 1, 1))


def test_cube_round_trip():
    h = vrep_to_hrep(VRep(3, CUBE_3))
    assert h.equalities == ()
    assert len(h.inequalities) == 6
    assert hrep_to_vrep(h).as_set() == _points(*CUBE_3)


@pytest.mark.parametrize(
    "vertices",
    [
        [(0, 0, 1), (0, 1, 0), (1, 0, 0)],
        [(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)],
        [(1, 0, 0, 1), (0, 1, 1, 0), (1, 1, 0, 0), (0, 0, 1, 1), (1, 0, 1, 0)],
        [(1, 1)],
    ],
)
def test_vertices_survive_the_round_trip(vertices):
    n = len(vertices[0])
    h = vrep_to_hrep(VRep(n, vertices))
    assert hrep_to_vrep(h).as_set() == _points(*vertices)


def test_hrep_serialization():
    h = HRep(2, [((Fraction(1, 2), 1), 1)], [((1, -1), 0)])
    data = h.to_dict()
    assert data["schema"] == "copx-hrep-v1"
    assert HRep.from_dict(data) == h
    with pytest.raises(InstanceError):
        HRep.from_dict({"n": 2})


@pytest.mark.parametrize(
    "data",
    [
        {"schema": "copx-hrep-v1", "inequalities": []},
        {"schema": "copx-hrep-v1", "n": 1, "inequalities": [{"a": ["1"]}]},
        {"schema": "copx-hrep-v1", "n": None},
        ["copx-hrep-v1"],
    ],
)
def test_malformed_hrep_json(data):
    with pytest.raises(InstanceError):
        HRep.from_dict(data)


def test_hrep_rows_must_match_dimension():
    with pytest.raises(DimensionMismatchError):
        HRep(2, [((1, 0, 0), 1)])


def test_box():
    box = Box.unit(3)
    assert box.is_box_row((0, 0, 2), 2)
    assert box.is_box_row((-1, 0, 0), 0)
    assert not box.is_box_row((1, 1, 0), 1)
    with pytest.raises(ValueError):
        Box((1,), (0,))


def test_lattice_box():
    assert lattice_box(Lattice.full(2)) == Box((-1, -1), (1, 1))
    assert lattice_box(Lattice.cube(2)) == Box.unit(2)
    assert lattice_box(Lattice.shifted(3, [1])) == Box((0, -1, 0), (1, 0, 1))


def test_region_hrep_skips_the_anchor(fig1: Instance):
    h = region_hrep(fig1, 0, equal_to=[0, 2], dominating=ALL_X)
    assert h.equalities == (((-1, 0, 1), 0),)
    assert len(h.inequalities) == 2


def test_equality_region(fig1: Instance):
    v = region_vertices(fig1, Lattice.cube(3), 0, equal_to=[2], dominating=())
    assert v.as_set() == _points((0, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 1))


def test_dominance_region(fig1: Instance):
    v = region_vertices(fig1, Lattice.cube(3), 0)
    assert v.as_set() == _points((0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 1, 1))


def test_region_dimension_mismatch(fig1: Instance):
    with pytest.raises(DimensionMismatchError):
        region_vertices(fig1, Lattice.cube(4), 0)


@pytest.mark.parametrize(
    ("h", "rhs", "kind", "dim", "tight"),
    [
        ((0, 0, 1), 1, FaceKind.facet, 1, (0, 1)),
        ((1, 1, 1), 2, FaceKind.improper, 2, (0, 1, 2)),
        ((1, 1, 0), 2, FaceKind.vertex_only, 0, (2,)),
        ((1, 1, 1), 1, FaceKind.invalid, None, ()),
        ((0, 0, 1), 2, FaceKind.non_tight, None, ()),
    ],
)
def test_face_classify(fig1: Instance, h, rhs, kind, dim, tight):
    face = face_classify(fig1, h, rhs)
    assert face.kind == kind
    assert face.dim == dim
    assert face.tight == tight


def test_lower_face_of_the_cube():
    cube = Instance(n=3, labels=default_labels(3), vertices=CUBE_3)
    face = face_classify(cube, (1, 1, 0), 2)
    assert face.kind == FaceKind.lower_face
    assert face.dim == 1
    assert face_classify(cube, (0, 0, 1), 1).kind == FaceKind.facet


def test_face_classify_dimension(fig1: Instance):
    with pytest.raises(DimensionMismatchError):
        face_classify(fig1, (1, 1), 1)


def _basic_solutions(h: HRep, box: Box) -> set[tuple[Fraction, ...]]:
    """Every feasible point where n linearly independent rows are tight."""
    rows = box.rows() + list(h.inequalities)
    found = set()
    for chosen in itertools.combinations(rows, h.n):
        reduced, pivots = rref([(*a, b) for a, b in chosen])
        if pivots != list(range(h.n)):
            continue
        x = tuple(row[h.n] for row in reduced)
        if h.contains(x) and all(dot(a, x) <= b for a, b in box.rows()):
            found.add(x)
    return found


@pytest.mark.parametrize("n", [2, 3])
def test_boxed_vertices_match_basic_solutions(n: int):
    rng = np.random.default_rng(n)
    box = Box((-1,) * n, (1,) * n)
    for _ in range(40):
        m = int(rng.integers(1, 5))
        h = HRep(
            n,
            [
                (tuple(int(x) for x in rng.integers(-3, 4, n)), int(rng.integers(-2, 4)))
                for _ in range(m)
            ],
        )
        assert hrep_to_vrep(h, box).as_set() == _basic_solutions(h, box)


@pytest.mark.parametrize("n", [3, 4])
def test_random_binary_round_trips(n: int):
    rng = np.random.default_rng(20 + n)
    cube = list(itertools.product((0, 1), repeat=n))
    for _ in range(25):
        size = int(rng.integers(1, len(cube) + 1))
        chosen = sorted(rng.choice(len(cube), size=size, replace=False))
        vertices = [cube[i] for i in chosen]
        h = vrep_to_hrep(VRep(n, vertices))
        assert hrep_to_vrep(h).as_set() == _points(*vertices)
        assert all(h.contains(x) for x in vertices)
