import json
import logging
from collections import Counter
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path
from typing import Union

from attrs import define, field

from copx.exceptions import DimensionMismatchError, InstanceError
from copx.linalg.rational import dot, format_rat, parse_rat, rat_vec
from copx.typing import BinaryVector, FilePath, KwargType, RatVec

INSTANCE_SCHEMA = "copx-instance-v1"
WEIGHTS_SCHEMA = "copx-weights-v1"

logger = logging.getLogger(__name__)


def _binary_rows(value) -> tuple[BinaryVector, ...]:
    rows = []
    for row in value:
        entries = []
        for x in row:
            if isinstance(x, bool) or x not in (0, 1):
                raise InstanceError(
                    f"vertex entries must be 0 or 1. Received: {list(row)}"
                )
            entries.append(int(x))
        rows.append(tuple(entries))

    # lexicographic order fixes vertex indices for every downstream report
    return tuple(sorted(rows))


@define(frozen=True)
class Instance:
    """A combinatorial optimization instance given by its explicit vertex set.

    Attributes:
        n (int): ground set size N
        labels (tuple[str, ...]): name of each ground set element
        vertices (tuple[BinaryVector, ...]): distinct 0/1 incidence vectors of the
            feasible subsets, in lexicographic order
        family_tag (str): provenance of the instance
    """

    n: int
    labels: tuple[str, ...] = field(converter=tuple)
    vertices: tuple[BinaryVector, ...] = field(converter=_binary_rows)
    family_tag: str = "explicit"

    def __attrs_post_init__(self):
        if self.n < 1:
            raise InstanceError(f"ground set must be nonempty. Received: n={self.n}")
        if len(self.labels) != self.n:
            raise InstanceError(
                f"expected {self.n} labels. Received: {len(self.labels)}"
            )
        if not self.vertices:
            raise InstanceError("instance needs at least one vertex")
        for vertex in self.vertices:
            if len(vertex) != self.n:
                raise InstanceError(
                    f"vertex {list(vertex)} has length {len(vertex)}, expected {self.n}"
                )
        duplicates = [v for v, count in Counter(self.vertices).items() if count > 1]
        if duplicates:
            raise InstanceError(f"duplicate vertex: {list(duplicates[0])}")

    @property
    def size(self) -> int:
        """|X|"""
        return len(self.vertices)

    def x(self, k: int) -> BinaryVector:
        self.check_index(k)
        return self.vertices[k]

    def check_index(self, k: int):
        if not 0 <= k < self.size:
            raise IndexError(f"vertex index {k} out of range for |X| = {self.size}")

    def index_of(self, vertex: Sequence[int]) -> int:
        try:
            return self.vertices.index(tuple(vertex))
        except ValueError:
            raise InstanceError(
                f"{list(vertex)} is not a vertex of this instance"
            ) from None

    def cardinalities(self) -> tuple[int, ...]:
        return tuple(sum(v) for v in self.vertices)

    @property
    def is_fixed_cardinality(self) -> bool:
        return len(set(self.cardinalities())) == 1

    def to_dict(self) -> KwargType:
        return {
            "schema": INSTANCE_SCHEMA,
            "n": self.n,
            "labels": list(self.labels),
            "family": self.family_tag,
            "vertices": [list(v) for v in self.vertices],
        }

    @classmethod
    def from_dict(cls, data: KwargType) -> "Instance":
        if not isinstance(data, dict):
            raise InstanceError("instance JSON must be an object")
        if data.get("schema") != INSTANCE_SCHEMA:
            raise InstanceError(
                f"unsupported instance schema: {data.get('schema')!r}. "
                f"Expected {INSTANCE_SCHEMA!r}"
            )
        missing = {"n", "vertices"} - data.keys()
        if missing:
            raise InstanceError(f"instance JSON is missing keys: {sorted(missing)}")

        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise InstanceError(f"n must be an integer. Received: {n!r}")

        vertices = data["vertices"]
        if not isinstance(vertices, list) or not all(
            isinstance(v, list) for v in vertices
        ):
            raise InstanceError("vertices must be a list of lists")

        labels = data.get("labels") or default_labels(n)
        return cls(
            n=n,
            labels=labels,
            vertices=vertices,
            family_tag=data.get("family", "explicit"),
        )


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"e{i + 1}" for i in range(n))


@define(frozen=True)
class WeightVector:
    entries: RatVec = field(converter=rat_vec)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def scaled(self, alpha: Union[int, Fraction]) -> "WeightVector":
        return WeightVector(tuple(alpha * c for c in self.entries))

    def negative_support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.entries) if c < 0)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def check_dimension(self, inst: Instance):
        if self.n != inst.n:
            raise DimensionMismatchError(
                f"weight vector has length {self.n}, instance has n = {inst.n}"
            )

    def to_dict(self) -> KwargType:
        return {"schema": WEIGHTS_SCHEMA, "c": [format_rat(c) for c in self.entries]}

    @classmethod
    def from_dict(cls, data: KwargType) -> "WeightVector":
        if not isinstance(data, dict) or data.get("schema") != WEIGHTS_SCHEMA:
            raise InstanceError(f"weights JSON must use schema {WEIGHTS_SCHEMA!r}")
        values = data.get("c")
        if not isinstance(values, list):
            raise InstanceError("weights JSON needs a list 'c'")
        return cls(tuple(parse_rat(str(v)) for v in values))

    @classmethod
    def from_strings(cls, values: Sequence[str]) -> "WeightVector":
        return cls(tuple(parse_rat(v) for v in values))


def argmax_brute(inst: Instance, c: WeightVector) -> frozenset[int]:
    """Indices of every vertex maximizing c over X, ties included."""
    c.check_dimension(inst)
    values = [dot(c.entries, x) for x in inst.vertices]
    best = max(values)
    return frozenset(k for k, value in enumerate(values) if value == best)


def _read_json(path: FilePath) -> KwargType:
    path = Path(path)
    try:
        with path.open() as fp:
            return json.load(fp)
    except json.JSONDecodeError as e:
        raise InstanceError(f"{path} is not valid JSON: {e}") from e


def write_json(data, path: FilePath):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as fp:
        json.dump(data, fp, indent=2)
        fp.write("\n")


def load_instance(path: FilePath) -> Instance:
    inst = Instance.from_dict(_read_json(path))
    logger.debug(
        f"Loaded instance {inst.family_tag} with |X| = {inst.size}, N = {inst.n}"
    )
    return inst


def save_instance(inst: Instance, path: FilePath):
    write_json(inst.to_dict(), path)


def load_weights(path: FilePath) -> WeightVector:
    return WeightVector.from_dict(_read_json(path))


def save_weights(c: WeightVector, path: FilePath):
    write_json(c.to_dict(), path)
