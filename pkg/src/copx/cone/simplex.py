"""Exact phase-1 simplex for the feasibility system  sum_j gamma_j g_j = t,  gamma >= 0.

Rows with a negative right-hand side are negated so one artificial variable per row gives
a feasible starting basis. Pricing multiplies the integer generator matrix by an integer
rescaling of the dual vector, so reduced costs are computed exactly without per-entry
Fraction work.
Entering and leaving variables follow Bland's rule, which guarantees termination.
"""

import logging
import math
from collections.abc import Sequence
from fractions import Fraction
from typing import Optional

import numpy as np
from attrs import define

from copx.linalg.rational import primitive

logger = logging.getLogger(__name__)

_INT64_HEADROOM = 2**62


@define
class PhaseOneResult:
    feasible: bool
    gamma: dict[int, Fraction]
    """basic generator values when feasible, keyed by column index"""
    y: Optional[tuple[Fraction, ...]]
    """separating vector in the original row orientation when infeasible"""
    pivots: int


def _integer_scores(A: np.ndarray, y: Sequence[Fraction]) -> np.ndarray:
    """sign-exact values of y . A_j for every column j, up to one positive factor"""
    denominator = math.lcm(*(v.denominator for v in y))
    scaled = [int(v * denominator) for v in y]
    bound = max(map(abs, scaled), default=0) * max(int(np.abs(A).max(initial=0)), 1)
    if bound * A.shape[0] < _INT64_HEADROOM:
        return np.asarray(scaled, dtype=np.int64) @ A
    return np.asarray(scaled, dtype=object) @ A.astype(object)


def phase_one(columns: np.ndarray, target: Sequence[Fraction]) -> PhaseOneResult:
    """Solve the phase-1 problem for a nonempty integer generator matrix.

    Args:
        columns (np.ndarray): generators as rows, shape (m, n), integer entries
        target (Sequence[Fraction]): right-hand side of length n

    Returns:
        PhaseOneResult: either nonnegative coefficients reproducing the target or a
            vector y with y . g <= 0 for every generator and y . t > 0
    """
    m, n = columns.shape
    signs = [-1 if t < 0 else 1 for t in target]
    A = columns.T.astype(np.int64) * np.asarray(signs, dtype=np.int64)[:, None]
    A_rows = A.tolist()

    basis = [m + i for i in range(n)]
    binv = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    xb = [abs(Fraction(t)) for t in target]

    pivots = 0
    while True:
        artificial_rows = [r for r in range(n) if basis[r] >= m]
        y = [sum((binv[r][i] for r in artificial_rows), Fraction(0)) for i in range(n)]

        scores = _integer_scores(A, y)
        improving = np.flatnonzero(scores > 0)
        if improving.size == 0:
            break
        entering = int(improving[0])

        column = [(i, A_rows[i][entering]) for i in range(n) if A_rows[i][entering]]
        u = [sum((binv[r][i] * a for i, a in column), Fraction(0)) for r in range(n)]

        # ratio test, ties broken by the smallest basic variable index
        candidates = [(xb[r] / u[r], basis[r], r) for r in range(n) if u[r] > 0]
        if not candidates:
            # the phase-1 objective is bounded below by zero
            raise RuntimeError("phase-1 problem reported unbounded")
        _, _, leaving = min(candidates)

        pivot = u[leaving]
        binv[leaving] = [v / pivot for v in binv[leaving]]
        xb[leaving] /= pivot
        for r in range(n):
            if r != leaving and u[r] != 0:
                factor = u[r]
                binv[r] = [a - factor * b for a, b in zip(binv[r], binv[leaving])]
                xb[r] -= factor * xb[leaving]
        basis[leaving] = entering
        pivots += 1

    objective = sum((xb[r] for r in range(n) if basis[r] >= m), Fraction(0))
    logger.debug(f"phase-1 finished after {pivots} pivots with objective {objective}")

    if objective == 0:
        gamma = {basis[r]: xb[r] for r in range(n) if basis[r] < m and xb[r] != 0}
        return PhaseOneResult(feasible=True, gamma=gamma, y=None, pivots=pivots)

    separating = primitive([s * v for s, v in zip(signs, y)])
    return PhaseOneResult(
        feasible=False,
        gamma={},
        y=tuple(Fraction(v) for v in separating),
        pivots=pivots,
    )
