from pathlib import Path
from typing import Optional

from attrs import define, field

from copx.typing import Regime
from copx.utils.attrs.converters import enum_field
from copx.utils.attrs.validators import (
    optional_non_negative_int,
    optional_positive_int,
    optionally_existing_file,
)


@define
class CertifyArgs:
    """CERTIFY"""

    weights: Optional[Path] = field(default=None, validator=optionally_existing_file)
    """weight vector file in the copx-weights-v1 JSON format"""

    c: Optional[str] = None
    """weight vector given inline as comma-separated rationals, ex:
    --certify.c=1,-1/2,0. Used instead of --certify.weights."""

    vertex: Optional[int] = field(default=None, validator=optional_non_negative_int)
    """index k of the vertex to certify"""

    all: bool = False
    """certify every vertex and compare the optimal set with brute force"""

    regime: Regime = enum_field(enum_cls=Regime, default=Regime.general)
    """generator lattice: nonneg (c >= 0, unit cube), signed_support (cube shifted on the
    negative entries of c) or general (full {-1,0,1} lattice)"""

    random: Optional[int] = field(default=None, validator=optional_positive_int)
    """run this many seeded random weight vectors instead of a single one"""

    shift: bool = False
    """for fixed-cardinality instances, replace c by c - min(c) before deciding"""

    normalize: bool = False
    """also report c scaled into the [-1,1]^n box. Display only."""

    out: Optional[Path] = None
    """verdict file. Defaults to <results_dir>/verdict.json"""

    def __attrs_post_init__(self):
        if self.random is None:
            if (self.weights is None) == (self.c is None):
                raise ValueError(
                    "exactly one of --certify.weights or --certify.c is required unless "
                    "--certify.random is used"
                )
            if (self.vertex is None) == (not self.all):
                raise ValueError(
                    "exactly one of --certify.vertex or --certify.all is required"
                )

    def inline_weights(self) -> Optional[tuple[str, ...]]:
        if self.c is None:
            return None
        return tuple(x.strip() for x in self.c.split(","))
