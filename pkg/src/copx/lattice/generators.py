"""Generator sets: lattice vectors selected by equality and dominance against anchor
vertices."""

import logging
from collections.abc import Iterable, Sequence
from functools import lru_cache
from typing import Optional, Union

import numpy as np
from attrs import define, field

from copx.data.instance import Instance
from copx.exceptions import DimensionMismatchError
from copx.lattice.lattice import (
    DEFAULT_CUBE_CAP,
    DEFAULT_FULL_CAP,
    Lattice,
    lattice_block,
    lattice_ranges,
)
from copx.typing import ALL_X, Dominating, KwargType, SignVector
from copx.utils.parallel import ordered_map

logger = logging.getLogger(__name__)


def _canonical_members(value: Iterable[Sequence[int]]) -> tuple[SignVector, ...]:
    members = {tuple(int(x) for x in h) for h in value}
    for h in members:
        if any(x not in (-1, 0, 1) for x in h):
            raise ValueError(
                f"generator entries must be in {{-1,0,1}}. Received: {list(h)}"
            )
    return tuple(sorted(h for h in members if any(h)))


@define(frozen=True)
class GeneratorSet:
    """A deduplicated, lexicographically ordered set of nonzero sign vectors.

    Attributes:
        n (int): dimension of every member
        members (tuple[SignVector, ...]): the generators
        anchor (Optional[int]): vertex index k the set was selected for
        lattice (Optional[Lattice]): lattice the members were drawn from
        equal_to (tuple[int, ...]): vertices j with x_k h = x_j h for every member
        dominating (Dominating): vertices l with x_k h >= x_l h, or ALL_X
    """

    n: int
    members: tuple[SignVector, ...] = field(converter=_canonical_members)
    anchor: Optional[int] = None
    lattice: Optional[Lattice] = None
    equal_to: tuple[int, ...] = ()
    dominating: Dominating = ()

    def __attrs_post_init__(self):
        for h in self.members:
            if len(h) != self.n:
                raise DimensionMismatchError(
                    f"generator {list(h)} has length {len(h)}, expected {self.n}"
                )

    @classmethod
    def of(
        cls, vectors: Iterable[Sequence[int]], n: Optional[int] = None
    ) -> "GeneratorSet":
        vectors = list(vectors)
        if n is None:
            if not vectors:
                raise ValueError("cannot infer the dimension of an empty generator set")
            n = len(vectors[0])
        return cls(n=n, members=vectors)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, h) -> bool:
        return tuple(h) in set(self.members)

    def replace_members(self, members: Iterable[SignVector]) -> "GeneratorSet":
        return GeneratorSet(
            n=self.n,
            members=tuple(members),
            anchor=self.anchor,
            lattice=self.lattice,
            equal_to=self.equal_to,
            dominating=self.dominating,
        )

    def without(self, index: int) -> "GeneratorSet":
        return self.replace_members(h for i, h in enumerate(self.members) if i != index)

    def matrix(self) -> np.ndarray:
        """members as rows of an int64 array, shape (len, n)"""
        return np.array(self.members, dtype=np.int64).reshape(len(self.members), self.n)

    def to_dict(self) -> KwargType:
        lattice = (
            self.lattice.to_dict()
            if self.lattice is not None
            else {"lattice": None, "C": []}
        )
        return {
            "anchor": self.anchor,
            "lattice": lattice["lattice"],
            "C": lattice["C"],
            "members": [list(h) for h in self.members],
        }


def _normalize_dominating(
    inst: Instance, dominating: Union[Dominating, Iterable[int]]
) -> Dominating:
    if isinstance(dominating, str):
        if dominating != ALL_X:
            raise ValueError(f"dominating must be a list of indices or {ALL_X!r}")
        return ALL_X
    indices = tuple(sorted(set(int(i) for i in dominating)))
    for i in indices:
        inst.check_index(i)
    return indices


def _filter_block(
    task: tuple[np.ndarray, Lattice, int, tuple[int, ...], tuple[int, ...], int, int],
) -> list[SignVector]:
    vertices, lattice, anchor, equal_to, dominating, start, stop = task
    block = lattice_block(lattice, start, stop)
    products = vertices @ block.T
    anchor_products = products[anchor]

    keep = np.any(block != 0, axis=1)
    for j in equal_to:
        keep &= products[j] == anchor_products
    if dominating:
        keep &= anchor_products >= products[list(dominating)].max(axis=0)

    return [tuple(int(x) for x in row) for row in block[keep].tolist()]


@lru_cache(maxsize=512)
def _select_members(
    inst: Instance,
    lattice: Lattice,
    anchor: int,
    equal_to: tuple[int, ...],
    dominating: Dominating,
    workers: int,
) -> tuple[SignVector, ...]:
    vertices = np.array(inst.vertices, dtype=np.int64)
    dominating_indices = tuple(range(inst.size)) if dominating == ALL_X else dominating
    tasks = [
        (vertices, lattice, anchor, equal_to, dominating_indices, start, stop)
        for start, stop in lattice_ranges(lattice)
    ]
    members: list[SignVector] = []
    for block_members in ordered_map(_filter_block, tasks, workers=workers):
        members.extend(block_members)
    return tuple(members)


def select_generators(
    inst: Instance,
    lattice: Lattice,
    anchor: int,
    equal_to: Iterable[int] = (),
    dominating: Union[Dominating, Iterable[int]] = ALL_X,
    *,
    full_cap: int = DEFAULT_FULL_CAP,
    cube_cap: int = DEFAULT_CUBE_CAP,
    workers: int = 1,
) -> GeneratorSet:
    """Nonzero lattice vectors h with x_k h = x_j h for j in `equal_to` and x_k h >= x_l h
    for l in `dominating`.

    With `equal_to=()` and `dominating=ALL_X` this is the generator set of the normal cone
    candidate at x_k. The anchor listed in `equal_to` is a no-op.

    Raises:
        SizeCapError: if the lattice exceeds its cap
        DimensionMismatchError: if the lattice and instance dimensions differ
    """
    if lattice.n != inst.n:
        raise DimensionMismatchError(
            f"lattice dimension {lattice.n} differs from instance dimension {inst.n}"
        )
    inst.check_index(anchor)
    lattice.check_cap(full_cap=full_cap, cube_cap=cube_cap)

    equal = tuple(sorted(set(int(j) for j in equal_to) - {anchor}))
    for j in equal:
        inst.check_index(j)
    dom = _normalize_dominating(inst, dominating)

    members = _select_members(inst, lattice, anchor, equal, dom, workers)
    logger.debug(
        f"Selected {len(members)} generators on {lattice.kind.value} lattice "
        f"for anchor {anchor}"
    )
    return GeneratorSet(
        n=inst.n,
        members=members,
        anchor=anchor,
        lattice=lattice,
        equal_to=equal,
        dominating=dom,
    )


@define(frozen=True)
class ChainLink:
    subset: str
    superset: str
    holds: bool
    implied: bool
    """whether the inclusion follows from the definitions for these indices"""
    witness: Optional[SignVector] = None

    def to_dict(self) -> KwargType:
        return {
            "subset": self.subset,
            "superset": self.superset,
            "holds": self.holds,
            "implied": self.implied,
            "witness": list(self.witness) if self.witness is not None else None,
        }


@define(frozen=True)
class ChainReport:
    k: int
    j: int
    l: int  # noqa: E741
    Y: tuple[int, ...]
    sizes: dict[str, int]
    links: tuple[ChainLink, ...]

    @property
    def contradictions(self) -> tuple[ChainLink, ...]:
        """links that fail although the definitions imply them"""
        return tuple(link for link in self.links if link.implied and not link.holds)

    @property
    def violations(self) -> tuple[ChainLink, ...]:
        return tuple(link for link in self.links if not link.holds)

    def to_dict(self) -> KwargType:
        return {
            "k": self.k,
            "j": self.j,
            "l": self.l,
            "Y": list(self.Y),
            "sizes": dict(self.sizes),
            "links": [link.to_dict() for link in self.links],
        }


def _link(
    subset_name: str,
    subset: GeneratorSet,
    superset_name: str,
    superset: GeneratorSet,
    implied: bool,
) -> ChainLink:
    contained = set(superset.members)
    outside = [h for h in subset.members if h not in contained]
    return ChainLink(
        subset=subset_name,
        superset=superset_name,
        holds=not outside,
        implied=implied,
        witness=outside[0] if outside else None,
    )


def chain_check(
    inst: Instance,
    k: int,
    j: int,
    l: int,  # noqa: E741
    Y: Iterable[int],
    lattice: Optional[Lattice] = None,
) -> ChainReport:
    """Compare the nested generator families H_kj^Y, H_kj^l, H_kj and H_k as computed
    sets.

    Each inclusion is recorded with a witness when it fails. `implied` marks the
    inclusions that follow from the definitions: H_kj^Y in H_kj^l needs l in Y, H_kj^l in
    H_kj always holds, H_kj in H_k needs X to contain only x_k and x_j, and H_kj^Y in H_k
    needs Y = X.
    """
    lattice = lattice or Lattice.cube(inst.n)
    Y = tuple(sorted(set(Y)))

    h_kj_Y = select_generators(inst, lattice, k, equal_to=(j,), dominating=Y)
    h_kj_l = select_generators(inst, lattice, k, equal_to=(j,), dominating=(l,))
    h_kj = select_generators(inst, lattice, k, equal_to=(j,), dominating=())
    h_k = select_generators(inst, lattice, k, dominating=ALL_X)

    everything = set(range(inst.size))
    links = (
        _link("H_kj^Y", h_kj_Y, "H_kj^l", h_kj_l, implied=l in Y),
        _link("H_kj^l", h_kj_l, "H_kj", h_kj, implied=True),
        _link("H_kj", h_kj, "H_k", h_k, implied=everything <= {k, j}),
        _link("H_kj^Y", h_kj_Y, "H_k", h_k, implied=everything <= set(Y)),
    )
    return ChainReport(
        k=k,
        j=j,
        l=l,
        Y=Y,
        sizes={
            "H_kj^Y": len(h_kj_Y),
            "H_kj^l": len(h_kj_l),
            "H_kj": len(h_kj),
            "H_k": len(h_k),
        },
        links=links,
    )
