"""Vertex lattices: the unit cube, its shifts by a support set C and the full
{-1,0,1}^n grid.

Enumeration is done in lexicographic blocks of numpy rows so callers can filter millions
of candidates without materializing Python tuples for all of them.
"""

from collections.abc import Iterable, Iterator, Sequence
from typing import Optional

import numpy as np
from attrs import define, field

from copx.exceptions import SizeCapError
from copx.typing import LatticeKind, SignVector
from copx.utils.attrs.converters import enum_field, sorted_index_tuple
from copx.utils.attrs.validators import index_set, positive_int

DEFAULT_FULL_CAP = 14
DEFAULT_CUBE_CAP = 20
BLOCK_SIZE = 1 << 16


@define(frozen=True)
class Lattice:
    """Finite set of candidate sign vectors.

    Attributes:
        kind (LatticeKind): cube (0/1 vectors), shifted (entries -1/0 on `support`, 0/1
            elsewhere) or full ({-1,0,1}^n)
        n (int): dimension
        support (tuple[int, ...]): the shift set C, only nonempty for shifted lattices
    """

    kind: LatticeKind = enum_field(enum_cls=LatticeKind)
    n: int = field(validator=positive_int)
    support: tuple[int, ...] = field(
        default=(), converter=sorted_index_tuple, validator=index_set
    )

    def __attrs_post_init__(self):
        if self.support and self.kind != LatticeKind.shifted_cube:
            raise ValueError(
                f"a support set is only allowed for shifted lattices: {self}"
            )
        if any(i >= self.n for i in self.support):
            raise IndexError(f"support {self.support} out of range for n = {self.n}")

    @classmethod
    def cube(cls, n: int) -> "Lattice":
        return cls(LatticeKind.cube, n)

    @classmethod
    def shifted(cls, n: int, support: Iterable[int]) -> "Lattice":
        return cls(LatticeKind.shifted_cube, n, tuple(support))

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls(LatticeKind.full, n)

    @property
    def base(self) -> int:
        return 3 if self.kind == LatticeKind.full else 2

    @property
    def size(self) -> int:
        return self.base**self.n

    def coordinate_values(self) -> list[tuple[int, ...]]:
        if self.kind == LatticeKind.full:
            return [(-1, 0, 1)] * self.n
        shifted = set(self.support)
        return [(-1, 0) if i in shifted else (0, 1) for i in range(self.n)]

    def box(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        values = self.coordinate_values()
        return tuple(v[0] for v in values), tuple(v[-1] for v in values)

    def contains(self, h: Sequence[int]) -> bool:
        return len(h) == self.n and all(
            x in allowed for x, allowed in zip(h, self.coordinate_values())
        )

    def check_cap(
        self, full_cap: int = DEFAULT_FULL_CAP, cube_cap: int = DEFAULT_CUBE_CAP
    ):
        if self.kind == LatticeKind.full:
            if self.n > full_cap:
                raise SizeCapError("full lattice dimension", self.n, full_cap)
        elif self.n > cube_cap:
            raise SizeCapError("cube lattice dimension", self.n, cube_cap)

    def to_dict(self):
        return {"lattice": self.kind.value, "C": list(self.support)}


def lattice_block(lattice: Lattice, start: int, stop: int) -> np.ndarray:
    """Rows `start` to `stop` of the lexicographic enumeration as an int64 array."""
    table = np.array(lattice.coordinate_values(), dtype=np.int64)
    base = lattice.base
    powers = base ** np.arange(lattice.n - 1, -1, -1, dtype=np.int64)
    index = np.arange(start, stop, dtype=np.int64)
    digits = (index[:, None] // powers[None, :]) % base
    return table[np.arange(lattice.n)[None, :], digits]


def lattice_ranges(
    lattice: Lattice, block_size: int = BLOCK_SIZE
) -> list[tuple[int, int]]:
    total = lattice.size
    return [
        (start, min(start + block_size, total)) for start in range(0, total, block_size)
    ]


def iter_lattice_blocks(
    lattice: Lattice, block_size: int = BLOCK_SIZE
) -> Iterator[np.ndarray]:
    for start, stop in lattice_ranges(lattice, block_size):
        yield lattice_block(lattice, start, stop)


def enum_lattice(
    lattice: Lattice,
    full_cap: int = DEFAULT_FULL_CAP,
    cube_cap: int = DEFAULT_CUBE_CAP,
) -> list[SignVector]:
    """Every lattice vector in lexicographic order.

    Raises:
        SizeCapError: if the lattice dimension exceeds its cap
    """
    lattice.check_cap(full_cap=full_cap, cube_cap=cube_cap)
    vectors: list[SignVector] = []
    for block in iter_lattice_blocks(lattice):
        vectors.extend(tuple(int(x) for x in row) for row in block.tolist())
    return vectors


def shift_by_support(h: Sequence[int], support: Optional[Iterable[int]]) -> SignVector:
    """Subtract one on every coordinate in `support` from a 0/1 vector.

    Raises:
        ValueError: if `h` is not 0/1 valued
        IndexError: if a support index is out of range
    """
    if any(x not in (0, 1) for x in h):
        raise ValueError(f"shift_by_support expects a 0/1 vector. Received: {list(h)}")

    shifted = set(support or ())
    if any(not 0 <= i < len(h) for i in shifted):
        raise IndexError(f"support {sorted(shifted)} out of range for n = {len(h)}")

    return tuple(x - 1 if i in shifted else x for i, x in enumerate(h))
