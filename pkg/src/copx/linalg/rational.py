"""Exact rational scalars and vectors.

`fractions.Fraction` already stores values in lowest terms with a positive denominator,
so it is used directly as the scalar type. Vectors are plain tuples of `Fraction` (or of
`int` for sign vectors and incidence vectors, which mix freely with `Fraction` in every
operation here).
"""

import math
import re
from collections.abc import Iterable, Sequence
from fractions import Fraction
from numbers import Rational
from typing import Union

from copx.exceptions import DimensionMismatchError, RationalParseError
from copx.typing import RatVec

_RAT_PATTERN = re.compile(r"^(-?\d+)(?:/(\d+))?$")

Scalar = Union[int, Fraction]


def parse_rat(text: str) -> Fraction:
    """Parse "p", "-p" or "p/q" into a canonical rational.

    Args:
        text (str): integer or fraction with an optional leading minus sign. Surrounding
            whitespace is ignored.

    Returns:
        Fraction: the value in lowest terms

    Raises:
        RationalParseError: if the text is malformed or q = 0
    """
    if not isinstance(text, str):
        raise RationalParseError(
            f"rational must be given as a string. Received: {text!r}"
        )

    match = _RAT_PATTERN.match(text.strip())
    if match is None:
        raise RationalParseError(f"malformed rational: {text!r}")

    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise RationalParseError(f"zero denominator: {text!r}")

    return Fraction(int(num), int(den) if den is not None else 1)


def format_rat(value: Scalar) -> str:
    """"p" for integers, "p/q" otherwise"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_rat(value: Union[Scalar, str]) -> Fraction:
    """Exact rational from a string, int or Fraction.

    Raises:
        RationalParseError: for floats, bools and malformed strings
    """
    if isinstance(value, str):
        return parse_rat(value)
    if isinstance(value, bool) or not isinstance(value, Rational):
        raise RationalParseError(f"not an exact rational: {value!r}")
    return Fraction(value)


def rat_vec(values: Iterable[Union[Scalar, str]]) -> RatVec:
    return tuple(to_rat(v) for v in values)


def _check_lengths(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatchError(
            f"vector lengths differ: {len(u)} != {len(v)}"
        )


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Fraction:
    """Exact inner product.

    Args:
        u (Sequence[Scalar]): first vector
        v (Sequence[Scalar]): second vector

    Returns:
        Fraction: sum of u_i * v_i

    Raises:
        DimensionMismatchError: if the lengths differ
    """
    _check_lengths(u, v)
    return Fraction(sum(a * b for a, b in zip(u, v)))


def add(u: Sequence[Scalar], v: Sequence[Scalar]) -> RatVec:
    _check_lengths(u, v)
    return tuple(Fraction(a + b) for a, b in zip(u, v))


def sub(u: Sequence[Scalar], v: Sequence[Scalar]) -> RatVec:
    _check_lengths(u, v)
    return tuple(Fraction(a - b) for a, b in zip(u, v))


def scale(alpha: Scalar, u: Sequence[Scalar]) -> RatVec:
    return tuple(Fraction(alpha * a) for a in u)


def linear_combination(
    coefficients: Sequence[Scalar], vectors: Sequence[Sequence[Scalar]], dim: int
) -> RatVec:
    """Sum of coefficients[i] * vectors[i].

    Args:
        coefficients (Sequence[Scalar]): one weight per vector
        vectors (Sequence[Sequence[Scalar]]): vectors of length `dim`
        dim (int): length of the result, used when `vectors` is empty

    Returns:
        RatVec: the combination, the zero vector for no vectors

    Raises:
        DimensionMismatchError: if a vector does not have length `dim`
    """
    total = [Fraction(0)] * dim
    for coef, vec in zip(coefficients, vectors):
        _check_lengths(total, vec)
        for i, entry in enumerate(vec):
            if entry:
                total[i] += coef * entry
    return tuple(total)


def primitive(vec: Sequence[Scalar]) -> tuple[int, ...]:
    """Positive rescaling of a rational vector to the coprime integer vector on its ray.

    Args:
        vec (Sequence[Scalar]): rational entries

    Returns:
        tuple[int, ...]: integers with gcd 1, or the zero vector unchanged
    """
    fracs = [Fraction(v) for v in vec]
    denominator = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * denominator) for f in fracs]
    divisor = math.gcd(*ints) if ints else 0
    if divisor == 0:
        return tuple(ints)
    return tuple(i // divisor for i in ints)


def rref(rows: Sequence[Sequence[Scalar]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form by Gauss-Jordan elimination.

    Args:
        rows (Sequence[Sequence[Scalar]]): matrix rows, all the same length

    Returns:
        tuple[list[list[Fraction]], list[int]]: the nonzero rows of the RREF and the pivot
            column of each row

    Raises:
        DimensionMismatchError: if the rows have different lengths
    """
    matrix = [[Fraction(x) for x in row] for row in rows]
    if not matrix:
        return [], []

    width = len(matrix[0])
    for row in matrix:
        if len(row) != width:
            raise DimensionMismatchError("all rows must have the same length")

    pivots: list[int] = []
    pivot_row = 0
    for col in range(width):
        found = next(
            (r for r in range(pivot_row, len(matrix)) if matrix[r][col] != 0), None
        )
        if found is None:
            continue

        matrix[pivot_row], matrix[found] = matrix[found], matrix[pivot_row]
        lead = matrix[pivot_row][col]
        matrix[pivot_row] = [x / lead for x in matrix[pivot_row]]

        for r in range(len(matrix)):
            if r != pivot_row and matrix[r][col] != 0:
                factor = matrix[r][col]
                matrix[r] = [x - factor * p for x, p in zip(matrix[r], matrix[pivot_row])]

        pivots.append(col)
        pivot_row += 1
        if pivot_row == len(matrix):
            break

    return matrix[:pivot_row], pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Number of linearly independent rows, computed exactly."""
    return len(rref(rows)[1])


def affine_rank(points: Sequence[Sequence[Scalar]]) -> int:
    """Number of affinely independent points among `points`.

    The affine dimension of their hull is the result minus one.

    Args:
        points (Sequence[Sequence[Scalar]]): points of equal length

    Returns:
        int: rank of the differences to the first point, plus one

    Raises:
        ValueError: if `points` is empty
        DimensionMismatchError: if the points have different lengths
    """
    if not points:
        raise ValueError("affine_rank requires at least one point")

    origin = points[0]
    differences = [
        [Fraction(a) - Fraction(b) for a, b in zip(p, origin)] for p in points[1:]
    ]
    for p in points[1:]:
        _check_lengths(p, origin)

    return rank(differences) + 1
