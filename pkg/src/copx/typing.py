from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Literal, Union

FilePath = Union[str, Path]

Rat = Fraction
RatVec = tuple[Fraction, ...]
SignVector = tuple[int, ...]
BinaryVector = tuple[int, ...]

KwargType = dict[str, Any]

ALL_X: Literal["ALL_X"] = "ALL_X"
"""sentinel for dominance over every vertex of X, including the anchor"""

Dominating = Union[tuple[int, ...], Literal["ALL_X"]]


class Family(str, Enum):
    k_subsets = "k-subsets"
    spanning_trees = "spanning-trees"
    perfect_matchings = "perfect-matchings"
    tsp_tours = "tsp"
    explicit = "explicit"


class LatticeKind(str, Enum):
    cube = "cube"
    shifted_cube = "shifted"
    full = "full"


class Regime(str, Enum):
    nonneg = "nonneg"
    signed_support = "signed_support"
    general = "general"


class Variant(str, Enum):
    V = "V"
    """full {-1,0,1} lattice"""

    H = "H"
    """unit hypercube vertices only"""


class MinimalityMode(str, Enum):
    literal = "literal"
    """keep h iff h is outside the cone of all other generators"""

    irreducible = "irreducible"
    """greedy removal in lexicographic order while the cone is preserved"""


class FaceKind(str, Enum):
    facet = "facet"
    lower_face = "lower_face"
    vertex_only = "vertex_only"
    invalid = "invalid"
    non_tight = "non_tight"
    improper = "improper"


class ClaimId(str, Enum):
    L1 = "L1"
    L2 = "L2"
    L3 = "L3"
    L4 = "L4"
    T1 = "T1"
    T1b = "T1b"
    T1c = "T1c"
    L231 = "L231"
    L232 = "L232"
    T21 = "T21"
    T21b = "T21b"
    T21c = "T21c"
    T3 = "T3"


class Verdict(str, Enum):
    confirmed = "confirmed"
    refuted = "refuted"
    skipped = "skipped"


class Suite(str, Enum):
    default = "default"
    regions = "regions"
    shift = "shift"
    trials = "trials"
    facets = "facets"


class Direction(str, Enum):
    v2h = "v2h"
    h2v = "h2v"
