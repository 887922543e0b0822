import copy
from enum import Enum
from pathlib import Path
from typing import Iterator, Optional

import cattrs
from attrs import asdict, define, fields, filters
from attrs import has as is_attrs_dataclass

from copx.typing import KwargType

# structure through the attrs converters so enum names and values are both accepted
_CONVERTER = cattrs.Converter(prefer_attrib_converters=True)
_CONVERTER.register_structure_hook(Path, lambda value, _: Path(value))


def _plain(_instance, _field, value):
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    return value


def model_dump(
    model: object,
    *,
    include: Optional[set[str]] = None,
    exclude: Optional[set[str]] = None,
    convert_enum_to_str: bool = False,
) -> KwargType:
    """Top-level field filtering on top of `attrs.asdict`.

    Raises:
        ValueError: if `model` is not an attrs instance, or both `include` and `exclude`
            are given
    """
    if not is_attrs_dataclass(type(model)):
        raise ValueError(f"model must be an `attrs.define` dataclass got {type(model)}")
    if include and exclude:
        raise ValueError("Only include OR exclude can be used, not both")

    kwargs: KwargType = {}
    if include is not None:
        kwargs["filter"] = filters.include(*include)
    elif exclude is not None:
        kwargs["filter"] = filters.exclude(*exclude)
    if convert_enum_to_str:
        kwargs["value_serializer"] = _plain
    return asdict(model, **kwargs)


@define
class AttrsDataclassUtilitiesMixin:
    """Serialization helpers for the CLI argument groups."""

    def to_dict(
        self,
        *,
        include: Optional[set[str]] = None,
        exclude: Optional[set[str]] = None,
        convert_enum_to_str: bool = False,
    ) -> KwargType:
        return model_dump(
            self,
            include=include,
            exclude=exclude,
            convert_enum_to_str=convert_enum_to_str,
        )

    @classmethod
    def from_dict(cls, data: KwargType):
        return _CONVERTER.structure(data, cls)

    @classmethod
    def fields(cls) -> Iterator[str]:
        return (f.name for f in fields(cls))

    def clone(self, deep: bool = False, **changes):
        new = (copy.deepcopy if deep else copy.copy)(self)
        for name, value in changes.items():
            setattr(new, name, value)
        return new
