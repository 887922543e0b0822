from attrs import define, field

from copx.typing import Suite
from copx.utils.attrs.converters import enum_field
from copx.utils.attrs.validators import positive_int


@define
class SuiteArgs:
    """SUITE"""

    suite: Suite = enum_field(enum_cls=Suite, default=Suite.default)
    """which claim checks to run: default (all), regions, shift, trials or facets"""

    trials: int = field(default=200, validator=positive_int)
    """random weight vectors per instance and regime"""
