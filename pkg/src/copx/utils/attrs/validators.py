"""Validators for `attrs.define` dataclass-like config objects."""

# all validators take 3 args ->
# [1] the formed instance of the dataclass obj
# [2] the attrs.Attribute obj
# [3] the value of the attribute

import os

from attrs import Attribute
from attrs.validators import and_, ge, gt, instance_of, optional

from copx.typing import FilePath

is_int = instance_of(int)

positive_int = and_(is_int, gt(0))
non_negative_int = and_(is_int, ge(0))
optional_positive_int = optional(positive_int)
optional_non_negative_int = optional(non_negative_int)


def file_exists(instance, attribute: Attribute, value: FilePath):
    if not os.path.exists(value):
        raise FileNotFoundError(f"{attribute.name} does not exist: {value}")


optionally_existing_file = optional(file_exists)


def index_set(instance, attribute: Attribute, value: tuple[int, ...]):
    if any(not isinstance(i, int) or i < 0 for i in value):
        raise ValueError(
            f"{attribute.name} must contain non-negative integer indices. "
            f"Received: {value}"
        )
    if len(set(value)) != len(value):
        raise ValueError(f"{attribute.name} contains repeated indices: {value}")
