from fractions import Fraction

import pytest
from attrs import evolve

from copx.data.instance import Instance
from copx.exceptions import PreconditionError, SizeCapError
from copx.facets.synth import (
    full_description,
    necessity_audit,
    sign_vector_normal,
    vertex_facets,
)
from copx.typing import FaceKind, MinimalityMode, Variant
from copx.utils.cli.config import Config


def test_vertex_facets(fig1: Instance, config: Config):
    rows = vertex_facets(fig1, 0, config=config)
    assert [ineq.row() for ineq in rows] == [
        ((-1, -1, -1), -2),
        ((0, 0, 1), 1),
        ((0, 1, 0), 1),
        ((1, 1, 1), 2),
    ]
    assert all(ineq.source_vertices == (0,) for ineq in rows)
    assert all(0 in ineq.tight_vertices for ineq in rows)


def test_irreducible_description_of_the_triangle(fig1: Instance, config: Config):
    report = full_description(fig1, Variant.V, MinimalityMode.irreducible, config)
    assert report.rows() == [
        ((-1, -1, -1), -2),
        ((0, 0, 1), 1),
        ((0, 1, 0), 1),
        ((1, 0, 0), 1),
        ((1, 1, 1), 2),
    ]
    assert report.polytope_match
    assert report.divergences == ()

    kinds = {ineq.row(): ineq.kind for ineq in report.inequalities}
    assert kinds[(0, 0, 1), 1] == FaceKind.facet
    assert kinds[(1, 1, 1), 2] == FaceKind.improper
    assert all(
        ineq.equality_pair
        for ineq in report.inequalities
        if ineq.kind == FaceKind.improper
    )

    facet = next(ineq for ineq in report.inequalities if ineq.row() == ((0, 0, 1), 1))
    assert facet.tight_vertices == (0, 1)
    assert facet.source_vertices == (0, 1)

    diff = report.oracle_diff
    assert diff.is_clean
    assert diff.missing_facets == ()
    assert diff.improper_pairs == (((1, 1, 1), 2),)
    assert diff.one_sided_improper == ()
    assert diff.oracle_equalities == 1
    assert diff.oracle_facets == 3


def test_literal_filter_diverges_on_the_full_lattice(fig1: Instance, config: Config):
    report = full_description(fig1, Variant.V, MinimalityMode.literal, config)
    assert report.rows() == [((-1, -1, -1), -2), ((1, 1, 1), 2)]
    # the affine hull alone still cuts X out of the unit cube
    assert report.polytope_match

    assert [d.vertex for d in report.divergences] == [0, 1, 2]
    assert report.divergences[0].lineality == ((1, 1, 1),)
    assert (0, 0, 1) in report.divergences[0].lost

    missing = report.oracle_diff.missing_facets
    assert len(missing) == 3
    assert all(m.sign_normal is not None for m in missing)
    assert not report.oracle_diff.is_clean
    assert not report.oracle_diff.needs_larger_coefficients


def test_cube_variant_keeps_a_one_sided_improper_row(fig1: Instance, config: Config):
    report = full_description(fig1, Variant.H, MinimalityMode.literal, config)
    assert report.rows() == [
        ((0, 0, 1), 1),
        ((0, 1, 0), 1),
        ((1, 0, 0), 1),
        ((1, 1, 1), 2),
    ]
    assert report.divergences == ()
    assert not report.polytope_match
    assert report.oracle_diff.one_sided_improper == (((1, 1, 1), 2),)
    assert report.oracle_diff.improper_pairs == ()


def test_single_vertex_cube_variant_gives_unit_vectors(
    single_vertex: Instance, config: Config
):
    report = full_description(single_vertex, Variant.H, MinimalityMode.literal, config)
    assert report.rows() == [((0, 1), 1), ((1, 0), 1)]


def test_description_serialization(fig1: Instance, config: Config):
    data = full_description(fig1, config=config).to_dict()
    assert data["variant"] == "V"
    assert data["mode"] == "irreducible"
    assert data["rows"][1] == {
        "h": [0, 0, 1],
        "rhs": 1,
        "class": "facet",
        "tight": [0, 1],
        "sources": [0, 1],
        "equality_pair": False,
    }
    assert data["oracle_diff"]["oracle_facets"] == 3


def test_to_hrep_cuts_out_the_vertices(fig1: Instance, config: Config):
    h = full_description(fig1, config=config).to_hrep(fig1.n)
    assert all(h.contains(x) for x in fig1.vertices)
    assert not h.contains((0, 0, 1))


def test_facet_family_sizes(tsp4: Instance, k4_matchings: Instance, config: Config):
    for inst in (tsp4, k4_matchings):
        report = full_description(inst, config=config)
        assert report.polytope_match
        assert report.oracle_diff.missing_facets == ()


def test_audit_of_the_triangle(fig1: Instance, config: Config):
    report = full_description(fig1, config=config)
    audit = necessity_audit(report, fig1, config)
    statuses = {(e.h, e.rhs): e.status for e in audit.entries}
    assert statuses == {
        ((-1, -1, -1), -2): "necessary",
        ((0, 0, 1), 1): "box",
        ((0, 1, 0), 1): "box",
        ((1, 0, 0), 1): "box",
        ((1, 1, 1), 2): "necessary",
    }
    upper = next(e for e in audit.entries if e.h == (1, 1, 1))
    assert upper.admitted == ((Fraction(1), Fraction(1), Fraction(1)),)
    assert audit.unnecessary == ()


def test_audit_flags_redundant_rows(single_vertex: Instance, config: Config):
    report = full_description(single_vertex, config=config)
    assert report.rows() == [((-1, 1), 0), ((0, -1), -1), ((1, 1), 2)]
    audit = necessity_audit(report, single_vertex, config)
    assert [e.status for e in audit.entries] == ["necessary", "necessary", "unnecessary"]
    assert audit.to_dict()["unnecessary"] == 1


def test_audit_flags_a_duplicated_row(fig1: Instance, config: Config):
    report = full_description(fig1, config=config)
    rows = report.inequalities + report.inequalities[-1:]
    duplicated = evolve(report, inequalities=rows)
    audit = necessity_audit(duplicated, fig1, config)
    assert [(e.h, e.status) for e in audit.unnecessary] == [
        ((1, 1, 1), "unnecessary"),
        ((1, 1, 1), "unnecessary"),
    ]


def test_audit_needs_a_matching_description(fig1: Instance, config: Config):
    report = full_description(fig1, Variant.H, MinimalityMode.literal, config)
    with pytest.raises(PreconditionError):
        necessity_audit(report, fig1, config)


def test_sign_vector_normal(fig1: Instance, config: Config):
    assert sign_vector_normal(fig1, (0, 1), config) == ((-1, -1, 0), -1)
    assert sign_vector_normal(fig1, (), config) is None
    with pytest.raises(IndexError):
        sign_vector_normal(fig1, (4,), config)


def test_caps(tsp5: Instance, fig1: Instance):
    with pytest.raises(SizeCapError):
        vertex_facets(tsp5, 0, config=Config(full_lattice_cap=8, progress=False))
    with pytest.raises(SizeCapError):
        full_description(fig1, config=Config(hull_dim_cap=2, progress=False))
