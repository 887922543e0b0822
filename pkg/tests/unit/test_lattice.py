import pytest

from copx.data.instance import Instance
from copx.exceptions import DimensionMismatchError, SizeCapError
from copx.lattice.generators import GeneratorSet, chain_check, select_generators
from copx.lattice.lattice import (
    Lattice,
    enum_lattice,
    iter_lattice_blocks,
    shift_by_support,
)
from copx.typing import ALL_X, LatticeKind

H_0 = ((0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 1, 1))


def test_cube_enumeration_is_lexicographic():
    assert enum_lattice(Lattice.cube(2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_full_enumeration():
    vectors = enum_lattice(Lattice.full(2))
    assert len(vectors) == 9
    assert vectors[0] == (-1, -1)
    assert vectors[4] == (0, 0)
    assert vectors[-1] == (1, 1)
    assert vectors == sorted(vectors)


def test_shifted_lattice():
    lattice = Lattice.shifted(3, [1])
    assert lattice.kind == LatticeKind.shifted_cube
    assert lattice.coordinate_values() == [(0, 1), (-1, 0), (0, 1)]
    assert lattice.box() == ((0, -1, 0), (1, 0, 1))
    vectors = enum_lattice(lattice)
    assert len(vectors) == 8
    assert vectors[0] == (0, -1, 0)
    assert all(lattice.contains(h) for h in vectors)
    assert not lattice.contains((0, 1, 0))


def test_shifted_with_empty_support_is_the_cube():
    assert enum_lattice(Lattice.shifted(3, [])) == enum_lattice(Lattice.cube(3))


@pytest.mark.parametrize("block_size", [1, 5, 27, 100])
def test_blocks_cover_the_lattice(block_size: int):
    lattice = Lattice.full(3)
    rows = [
        tuple(int(x) for x in row)
        for block in iter_lattice_blocks(lattice, block_size)
        for row in block
    ]
    assert rows == enum_lattice(lattice)


def test_lattice_validation():
    with pytest.raises(ValueError):
        Lattice(LatticeKind.cube, 3, support=(1,))
    with pytest.raises(IndexError):
        Lattice.shifted(3, [3])
    with pytest.raises(ValueError):
        Lattice.shifted(3, [1, 1])
    with pytest.raises(ValueError):
        Lattice.cube(0)


def test_lattice_caps():
    with pytest.raises(SizeCapError):
        enum_lattice(Lattice.full(3), full_cap=2)
    with pytest.raises(SizeCapError):
        enum_lattice(Lattice.cube(3), cube_cap=2)
    Lattice.full(15).check_cap(full_cap=15, cube_cap=20)
    with pytest.raises(SizeCapError):
        Lattice.full(15).check_cap()


def test_shift_by_support():
    assert shift_by_support((1, 0, 1), [0, 1]) == (0, -1, 1)
    assert shift_by_support((1, 0, 1), None) == (1, 0, 1)
    with pytest.raises(ValueError):
        shift_by_support((1, -1), [0])
    with pytest.raises(IndexError):
        shift_by_support((1, 0), [2])


def test_generator_set_canonical_members():
    G = GeneratorSet.of([(1, 0), (0, 0), (0, 1), (1, 0)])
    assert G.members == ((0, 1), (1, 0))
    assert len(G) == 2
    assert (1, 0) in G
    assert G.without(0).members == ((1, 0),)


def test_generator_set_validation():
    with pytest.raises(ValueError):
        GeneratorSet.of([(2, 0)])
    with pytest.raises(ValueError):
        GeneratorSet.of([])
    with pytest.raises(DimensionMismatchError):
        GeneratorSet(n=3, members=[(1, 0)])
    assert len(GeneratorSet.of([], n=2)) == 0


def test_normal_cone_generators(fig1: Instance):
    G = select_generators(fig1, Lattice.cube(3), 0)
    assert G.members == H_0
    assert G.anchor == 0
    assert G.dominating == ALL_X


def test_equality_generators(fig1: Instance):
    G = select_generators(fig1, Lattice.cube(3), 0, equal_to=[2], dominating=())
    assert G.members == ((0, 1, 0), (1, 0, 1), (1, 1, 1))


def test_anchor_in_equal_to_is_ignored(fig1: Instance):
    G = select_generators(fig1, Lattice.cube(3), 0, equal_to=[0], dominating=())
    assert G.equal_to == ()
    assert len(G) == 7


def test_dominance_subset(fig1: Instance):
    G = select_generators(fig1, Lattice.cube(3), 0, equal_to=[2], dominating=[1])
    assert G.members == ((0, 1, 0), (1, 1, 1))


def test_generators_on_the_full_lattice_contain_the_lineality(fig1: Instance):
    G = select_generators(fig1, Lattice.full(3), 0)
    assert (1, 1, 1) in G
    assert (-1, -1, -1) in G
    assert all(h[1] >= h[0] and h[2] >= h[0] for h in G)
    assert len(G) == 13


def test_select_generators_validation(fig1: Instance, tsp5: Instance):
    with pytest.raises(DimensionMismatchError):
        select_generators(fig1, Lattice.cube(2), 0)
    with pytest.raises(IndexError):
        select_generators(fig1, Lattice.cube(3), 5)
    with pytest.raises(IndexError):
        select_generators(fig1, Lattice.cube(3), 0, equal_to=[7])
    with pytest.raises(ValueError):
        select_generators(fig1, Lattice.cube(3), 0, dominating="ALL")
    with pytest.raises(SizeCapError):
        select_generators(tsp5, Lattice.full(10), 0, full_cap=8)


def test_chain_check(fig1: Instance):
    report = chain_check(fig1, k=0, j=2, l=1, Y=[1, 2])
    assert report.sizes == {"H_kj^Y": 2, "H_kj^l": 2, "H_kj": 3, "H_k": 4}

    links = {(link.subset, link.superset): link for link in report.links}
    assert links["H_kj^Y", "H_kj^l"].holds
    assert links["H_kj^Y", "H_kj^l"].implied
    assert links["H_kj^l", "H_kj"].holds

    equality_link = links["H_kj", "H_k"]
    assert not equality_link.holds
    assert not equality_link.implied
    assert equality_link.witness == (1, 0, 1)

    assert report.violations == (equality_link,)
    assert report.contradictions == ()


def test_chain_check_full_dominance_set(fig1: Instance):
    report = chain_check(fig1, k=0, j=2, l=1, Y=[0, 1, 2])
    last = report.links[-1]
    assert last.implied
    assert last.holds
    assert report.to_dict()["Y"] == [0, 1, 2]
