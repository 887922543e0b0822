from pathlib import Path
from typing import Optional

from attrs import define

from copx.typing import MinimalityMode, Variant
from copx.utils.attrs.converters import enum_field


@define
class FacetArgs:
    """FACETS"""

    variant: Variant = enum_field(enum_cls=Variant, default=Variant.V)
    """V draws generators from the full {-1,0,1} lattice, H only from the unit cube"""

    mode: MinimalityMode = enum_field(
        enum_cls=MinimalityMode, default=MinimalityMode.irreducible
    )
    """literal keeps each generator outside the cone of all the others. irreducible
    removes generators greedily while the cone is unchanged."""

    audit: bool = False
    """remove each row in turn and report the rows not needed to cut out X"""

    out: Optional[Path] = None
    """description file. Defaults to <results_dir>/description.json"""
