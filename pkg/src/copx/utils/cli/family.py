from typing import Optional

from attrs import define, field

from copx.typing import Family
from copx.utils.attrs.converters import enum_field
from copx.utils.attrs.dataclass_utils import AttrsDataclassUtilitiesMixin
from copx.utils.attrs.validators import (
    optional_non_negative_int,
    optional_positive_int,
    positive_int,
)


def _optional_tuple(value):
    if value is None:
        return None
    return tuple(value)


def _optional_vertices(value):
    if value is None:
        return None
    return tuple(tuple(int(x) for x in row) for row in value)


@define
class FamilyArgs(AttrsDataclassUtilitiesMixin):
    """FAMILY

    Built-in instance family and its parameters.
    """

    family: Family = enum_field(enum_cls=Family, default=Family.explicit)
    """feasible-subset family: k-subsets, spanning-trees, perfect-matchings, tsp or
    explicit"""

    n: Optional[int] = field(default=None, validator=optional_positive_int)
    """ground set size for k-subsets"""

    k: Optional[int] = field(default=None, validator=optional_non_negative_int)
    """subset size for k-subsets"""

    graph: Optional[str] = None
    """named graph for spanning-trees and perfect-matchings: 'triangle' or 'K<m>' for the
    complete graph on m nodes"""

    edges: Optional[tuple[str, ...]] = field(default=None, converter=_optional_tuple)
    """explicit edge list as 'u-v' strings. Used instead of --graph."""

    cities: Optional[int] = field(default=None, validator=optional_positive_int)
    """number of cities for tsp (complete undirected graph)"""

    vertices: Optional[tuple[tuple[int, ...], ...]] = field(
        default=None, converter=_optional_vertices
    )
    """0/1 incidence vectors for the explicit family"""

    labels: Optional[tuple[str, ...]] = field(default=None, converter=_optional_tuple)
    """ground set labels for the explicit family. Defaults to e1..eN."""

    max_candidates: int = field(default=2_000_000, validator=positive_int)
    """largest number of candidate subsets scanned while enumerating a family"""

    def __attrs_post_init__(self):
        if self.family == Family.k_subsets:
            if self.n is None or self.k is None:
                raise ValueError("k-subsets requires both --n and --k")
            if self.k > self.n:
                raise ValueError(
                    f"k-subsets requires k <= n. Received: k={self.k}, n={self.n}"
                )
        elif self.family in (Family.spanning_trees, Family.perfect_matchings):
            if (self.graph is None) == (self.edges is None):
                raise ValueError(
                    f"{self.family.value} requires exactly one of --graph or --edges"
                )
        elif self.family == Family.tsp_tours:
            if self.cities is None or self.cities < 3:
                raise ValueError(f"tsp requires --cities >= 3. Received: {self.cities}")
        elif self.family == Family.explicit:
            if not self.vertices:
                raise ValueError("explicit family requires at least one vertex")
