from fractions import Fraction

import numpy as np
import pytest

from copx.cone.engine import ConeCertificate, FarkasCertificate
from copx.data.instance import Instance, WeightVector, argmax_brute, default_labels
from copx.exceptions import DimensionMismatchError, RegimeError, SizeCapError
from copx.lattice.lattice import Lattice
from copx.optimality.certify import (
    decide_optimal,
    dominant_weight,
    normalize_for_display,
    optimal_set,
    regime_lattice,
    shift_to_nonneg,
)
from copx.typing import Regime
from copx.utils.cli.config import Config


def _c(*values) -> WeightVector:
    return WeightVector(tuple(Fraction(v) for v in values))


@pytest.mark.parametrize("regime", list(Regime))
def test_optimal_vertex(fig1: Instance, regime: Regime):
    verdict = decide_optimal(fig1, _c(0, 1, 1), 0, regime)
    assert verdict.is_optimal
    assert isinstance(verdict.witness, ConeCertificate)
    assert verdict.cross_check


@pytest.mark.parametrize("regime", list(Regime))
def test_non_optimal_vertex(fig1: Instance, regime: Regime):
    verdict = decide_optimal(fig1, _c(1, 0, 0), 0, regime)
    assert not verdict.is_optimal
    assert isinstance(verdict.witness, FarkasCertificate)
    assert verdict.cross_check


def test_zero_weight_makes_every_vertex_optimal(fig1: Instance):
    for k in range(fig1.size):
        verdict = decide_optimal(fig1, _c(0, 0, 0), k)
        assert verdict.is_optimal
        assert verdict.witness == ConeCertificate({})


def test_signed_support_regime(fig1: Instance):
    verdict = decide_optimal(fig1, _c(-1, 1, 1), 0, Regime.signed_support)
    assert verdict.is_optimal
    assert verdict.support == (0,)
    data = verdict.to_dict()
    assert data["C"] == [0]
    assert data["regime"] == "signed_support"
    assert data["certificate"]["type"] == "cone"


def test_nonneg_regime_rejects_negative_weights(fig1: Instance):
    with pytest.raises(RegimeError):
        decide_optimal(fig1, _c(-1, 1, 1), 0, Regime.nonneg)


def test_regime_lattices(fig1: Instance):
    assert regime_lattice(fig1, _c(1, 0, 2), Regime.nonneg) == Lattice.cube(3)
    # zero entries go to the complement of C
    signed = regime_lattice(fig1, _c(-1, 0, 2), Regime.signed_support)
    assert signed == Lattice.shifted(3, [0])
    assert regime_lattice(fig1, _c(-1, 0, 2), Regime.general) == Lattice.full(3)


def test_validation(fig1: Instance):
    with pytest.raises(DimensionMismatchError):
        decide_optimal(fig1, _c(1, 1), 0)
    with pytest.raises(IndexError):
        decide_optimal(fig1, _c(1, 1, 1), 3)


def test_full_lattice_cap(tsp5: Instance):
    config = Config(full_lattice_cap=8, progress=False)
    with pytest.raises(SizeCapError):
        decide_optimal(tsp5, dominant_weight(tsp5, 0), 0, Regime.general, config)


def test_positive_scaling_invariance(fig1: Instance):
    c = _c(3, -2, 1)
    for k in range(fig1.size):
        assert (
            decide_optimal(fig1, c, k).is_optimal
            == decide_optimal(fig1, c.scaled(Fraction(5, 7)), k).is_optimal
        )


def test_optimal_set_with_ties(fig1: Instance):
    result = optimal_set(fig1, _c(1, 1, 1))
    assert result.optimal == {0, 1, 2}
    assert result.consistent
    assert optimal_set(fig1, _c(0, 1, 1)).optimal == {0}


@pytest.mark.parametrize("name", ["tsp4", "k4_matchings", "k4_trees"])
def test_dominant_weight_isolates_each_vertex(name: str, request: pytest.FixtureRequest):
    inst = request.getfixturevalue(name)
    for k in range(inst.size):
        result = optimal_set(inst, dominant_weight(inst, k))
        assert result.optimal == {k}
        assert result.consistent


def test_regimes_agree_on_nonnegative_weights(k4_trees: Instance):
    c = _c(3, 1, 4, 1, 5, 9)
    expected = argmax_brute(k4_trees, c)
    for regime in Regime:
        assert optimal_set(k4_trees, c, regime).optimal == expected


@pytest.mark.parametrize("name", ["fig1", "k4_trees"])
def test_signed_support_agrees_with_general_weights(
    name: str, request: pytest.FixtureRequest, config: Config
):
    inst: Instance = request.getfixturevalue(name)
    rng = np.random.default_rng(7)
    for _ in range(12):
        # entries in [-1, 0] on a random support C and in [0, 1] elsewhere
        negative = rng.random(inst.n) < 0.5
        c = WeightVector(
            tuple(
                Fraction(int(p), 4) * (-1 if neg else 1)
                for p, neg in zip(rng.integers(0, 5, inst.n), negative)
            )
        )
        signed = optimal_set(inst, c, Regime.signed_support, config)
        general = optimal_set(inst, c, Regime.general, config)
        assert signed.optimal == general.optimal == argmax_brute(inst, c)
        assert signed.consistent and general.consistent


def test_shift_to_nonneg(fig1: Instance):
    c = _c(-1, 2, 0)
    shifted = shift_to_nonneg(fig1, c)
    assert shifted.entries == (0, 3, 1)
    assert optimal_set(fig1, shifted, Regime.nonneg).optimal == argmax_brute(fig1, c)
    assert shift_to_nonneg(fig1, _c(1, 2, 0)) == _c(1, 2, 0)


def test_shift_requires_fixed_cardinality():
    inst = Instance(n=2, labels=default_labels(2), vertices=[(0, 0), (1, 1)])
    with pytest.raises(RegimeError):
        shift_to_nonneg(inst, _c(-1, 1))


def test_normalize_for_display():
    assert normalize_for_display(_c(2, -4, 1)).entries == (
        Fraction(1, 2),
        Fraction(-1),
        Fraction(1, 4),
    )
    assert normalize_for_display(_c(0, 0)) == _c(0, 0)


def test_dominant_weight(fig1: Instance):
    assert dominant_weight(fig1, 0).entries == (-1, 1, 1)
