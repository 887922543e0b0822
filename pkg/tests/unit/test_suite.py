import json
from pathlib import Path

from copx.data.instance import Instance
from copx.typing import ClaimId, Suite, Verdict
from copx.utils.cli.config import Config
from copx.verify.claims import ClaimParams, ClaimReport
from copx.verify.suite import (
    COUNTEREXAMPLE_DIR,
    SUITE_REPORT,
    SuiteReport,
    plan_jobs,
    run_suite,
    safe_name,
)


def test_empty_suite(config: Config, results_dir: Path):
    report = run_suite([], config)
    assert report.reports == ()
    assert not report.has_refutation
    assert report.write(results_dir) == []
    data = json.loads((results_dir / SUITE_REPORT).read_text())
    assert data["instances"] == []
    assert data["summary"] == {}
    assert data["settings"]["seed"] == config.seed
    assert "workers" not in data["settings"]


def test_shift_suite_on_the_triangle(fig1: Instance, config: Config):
    report = run_suite([fig1], config, Suite.shift)
    summary = report.summary()
    assert summary["L231"] == {"confirmed": 24, "refuted": 0, "skipped": 0}
    assert summary["L232"] == {"confirmed": 24, "refuted": 0, "skipped": 0}
    assert not report.has_refutation


def test_region_plan_counts(fig1: Instance, config: Config):
    jobs, skipped = plan_jobs(0, fig1, Suite.regions, config)
    assert skipped == []
    claims = [job.claim_id for job in jobs]
    # per anchor: 2 L1, 1 L2, 2 L3, 2 * 7 L4, 1 T1 and 8 T1c
    assert claims.count(ClaimId.L1) == 6
    assert claims.count(ClaimId.L2) == 3
    assert claims.count(ClaimId.L3) == 6
    assert claims.count(ClaimId.L4) == 42
    assert claims.count(ClaimId.T1) == 3
    assert claims.count(ClaimId.T1c) == 24


def test_caps_turn_checks_into_skips(fig1: Instance, tsp5: Instance, results_dir: Path):
    config = Config(hull_dim_cap=2, results_dir=results_dir, progress=False)
    jobs, skipped = plan_jobs(0, fig1, Suite.regions, config)
    assert jobs == []
    assert {r.claim_id for r in skipped} == {
        ClaimId.L1,
        ClaimId.L2,
        ClaimId.L3,
        ClaimId.L4,
        ClaimId.T1,
        ClaimId.T1b,
        ClaimId.T1c,
    }

    config = Config(results_dir=results_dir, progress=False)
    jobs, skipped = plan_jobs(0, tsp5, Suite.default, config, trials=2)
    assert {job.kind for job in jobs} == {"trial"}
    assert {job.regime.value for job in jobs} == {"nonneg", "signed_support", "general"}
    assert all(r.verdict == Verdict.skipped for r in skipped)
    assert ClaimId.T21c not in {r.claim_id for r in skipped}
    assert ClaimId.T3 in {r.claim_id for r in skipped}

    config = Config(full_lattice_cap=8, results_dir=results_dir, progress=False)
    _, skipped = plan_jobs(0, tsp5, Suite.trials, config, trials=2)
    assert [r.claim_id for r in skipped] == [ClaimId.T21c]


def test_region_vertex_cap_reports_the_rest(k4_matchings: Instance, results_dir: Path):
    config = Config(region_vertex_cap=2, results_dir=results_dir, progress=False)
    jobs, skipped = plan_jobs(0, k4_matchings, Suite.regions, config)
    assert {job.params.k for job in jobs} == {0, 1}
    assert len(skipped) == 7
    assert all("region_vertex_cap" in r.evidence["reason"] for r in skipped)


def test_skipped_reports_follow_the_checks(fig1: Instance, results_dir: Path):
    config = Config(region_vertex_cap=1, results_dir=results_dir, progress=False)
    report = run_suite([fig1], config, Suite.regions)
    verdicts = [r.verdict for _, r in report.reports]
    first_skip = verdicts.index(Verdict.skipped)
    assert all(v == Verdict.skipped for v in verdicts[first_skip:])
    assert all(v == Verdict.confirmed for v in verdicts[:first_skip])


def test_refuted_reports_are_written(fig1: Instance, results_dir: Path):
    refuted = ClaimReport(
        ClaimId.L1,
        fig1.family_tag,
        ClaimParams(k=0, j=1),
        Verdict.refuted,
        {
            "region_only": [["1/2", "1/2", "0"]],
            "generators_only": [],
            "witness_verified": True,
        },
    )
    confirmed = ClaimReport(ClaimId.T1, fig1.family_tag, ClaimParams(k=0))
    reports = ((0, refuted), (0, refuted), (0, confirmed))
    report = SuiteReport(Suite.regions, 0, (fig1,), reports)
    assert report.has_refutation
    assert report.summary()["L1"] == {"confirmed": 0, "refuted": 2, "skipped": 0}

    written = report.write(results_dir)
    assert [p.name for p in written] == ["L1-fig1-0.json", "L1-fig1-1.json"]
    assert all(p.parent == results_dir / COUNTEREXAMPLE_DIR for p in written)
    data = json.loads(written[0].read_text())
    assert data["instance"]["vertices"] == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    assert data["params"] == {"k": 0, "j": 1}
    assert data["witness"]["witness_verified"]


def test_safe_name():
    assert safe_name("spanning-trees:K4") == "spanning-trees_K4"
    assert safe_name("k-subsets:n=5,k=2") == "k-subsets_n_5_k_2"
    assert safe_name("") == "instance"
