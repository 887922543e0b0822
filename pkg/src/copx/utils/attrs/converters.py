from collections.abc import Iterable
from enum import Enum
from functools import partial
from typing import Any, TypeVar, Union

from attrs import NOTHING, field

_E = TypeVar("_E", bound=Enum)


def to_enum(value: Union[_E, str, Any], enum_cls: type[_E]) -> _E:
    """Look up an enum member by member, name or value.

    Raises:
        ValueError: listing the allowed values when nothing matches
    """
    if isinstance(value, enum_cls):
        return value
    for name, member in enum_cls.__members__.items():
        if value in (name, member.value):
            return member
    choices = ", ".join(str(m.value) for m in enum_cls)
    raise ValueError(f"{value!r} is not one of [{choices}]")


def enum_field(*, enum_cls: type[_E], default: _E = NOTHING, **kwargs):
    """attrs field that converts CLI and JSON strings to `enum_cls` members.

    `enum_cls` is required so that jsonargparse and type checkers see the enum type.
    """
    if kwargs.pop("converter", None) is not None:
        raise TypeError("enum_field sets its own converter")
    return field(default=default, converter=partial(to_enum, enum_cls=enum_cls), **kwargs)


def sorted_index_tuple(value: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(int(i) for i in value))
