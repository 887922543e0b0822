import logging
import re
from collections import Counter
from itertools import combinations, permutations
from pathlib import Path
from typing import Optional

import numpy as np
from attrs import define, field
from more_itertools import powerset

from copx.data.instance import Instance, write_json
from copx.exceptions import SizeCapError
from copx.typing import ClaimId, KwargType, Regime, Suite, Verdict
from copx.utils.attrs.converters import enum_field
from copx.utils.cli.config import Config
from copx.utils.parallel import ordered_map
from copx.verify.claims import (
    REGION_CLAIMS,
    TRIAL_CLAIMS,
    ClaimParams,
    ClaimReport,
    check_facet_claim,
    check_region_claim,
    check_shift_claims,
    equivalence_trial,
)

logger = logging.getLogger(__name__)

SUITE_REPORT = "suite_report.json"
COUNTEREXAMPLE_DIR = "counterexamples"
DEFAULT_TRIALS = 200
# worker count, progress and paths never change a verdict
REPORTED_SETTINGS = {
    "seed",
    "full_lattice_cap",
    "cube_cap",
    "hull_dim_cap",
    "region_vertex_cap",
}

SUITE_PARTS: dict[Suite, tuple[str, ...]] = {
    Suite.default: ("regions", "shift", "trials", "facets"),
    Suite.regions: ("regions",),
    Suite.shift: ("shift",),
    Suite.trials: ("trials",),
    Suite.facets: ("facets",),
}


@define(frozen=True)
class ClaimJob:
    """One unit of suite work: a claim family evaluated at fixed parameters."""

    kind: str
    instance_index: int
    instance: Instance
    claim_id: Optional[ClaimId] = None
    params: ClaimParams = field(factory=ClaimParams)
    regime: Optional[Regime] = None
    entropy: tuple[int, ...] = ()
    trials: int = DEFAULT_TRIALS
    config: Config = field(factory=Config)


def _subsets(indices: range) -> list[tuple[int, ...]]:
    """every subset, by size then lexicographically"""
    return list(powerset(indices))


def _region_params(
    inst: Instance, config: Config
) -> tuple[list[tuple[ClaimId, ClaimParams]], int]:
    """Every index tuple over the first `region_vertex_cap` vertices, plus the number of
    vertices left out."""
    size = min(inst.size, config.region_vertex_cap)
    vertices = range(size)
    C_values = _subsets(range(inst.n))

    params: list[tuple[ClaimId, ClaimParams]] = []
    for k in vertices:
        others = [j for j in vertices if j != k]
        params.extend((ClaimId.L1, ClaimParams(k=k, j=j)) for j in others)
        params.extend(
            (ClaimId.L2, ClaimParams(k=k, j=j, l=l))  # noqa: E741
            for j, l in combinations(others, 2)
        )
        params.extend(
            (ClaimId.L3, ClaimParams(k=k, j=j, l=l))  # noqa: E741
            for j, l in permutations(others, 2)
        )
        params.extend(
            (ClaimId.L4, ClaimParams(k=k, j=j, Y=Y))
            for j in others
            for Y in _subsets(vertices)
            if Y
        )
        params.append((ClaimId.T1, ClaimParams(k=k)))
        params.extend((ClaimId.T1c, ClaimParams(k=k, C=C)) for C in C_values)
    return params, inst.size - size


def _seed(*entropy: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(list(entropy))


def plan_jobs(
    index: int,
    inst: Instance,
    suite: Suite,
    config: Config,
    trials: int = DEFAULT_TRIALS,
) -> tuple[list[ClaimJob], list[ClaimReport]]:
    """Jobs for every check the instance size allows, and skipped reports for the rest."""
    jobs: list[ClaimJob] = []
    skipped: list[ClaimReport] = []
    parts = SUITE_PARTS[suite]
    hull_ok = inst.n <= config.hull_dim_cap
    hull_reason = f"n = {inst.n} exceeds hull_dim_cap = {config.hull_dim_cap}"

    if "regions" in parts:
        if hull_ok:
            params, left_out = _region_params(inst, config)
            jobs.extend(
                ClaimJob("region", index, inst, claim_id, p, config=config)
                for claim_id, p in params
            )
            if left_out:
                for claim_id in REGION_CLAIMS:
                    skipped.append(
                        ClaimReport.skipped(
                            claim_id,
                            inst,
                            f"{left_out} vertices beyond region_vertex_cap = "
                            f"{config.region_vertex_cap}",
                        )
                    )
        else:
            skipped.extend(
                ClaimReport.skipped(c, inst, hull_reason) for c in REGION_CLAIMS
            )

    if "shift" in parts:
        if hull_ok:
            size = min(inst.size, config.region_vertex_cap)
            jobs.extend(
                ClaimJob(
                    "shift",
                    index,
                    inst,
                    params=ClaimParams(k=k, C=C),
                    entropy=(config.seed, index, 1, k, c_index),
                    config=config,
                )
                for c_index, C in enumerate(_subsets(range(inst.n)))
                for k in range(size)
            )
        else:
            skipped.extend(
                ClaimReport.skipped(c, inst, hull_reason)
                for c in (ClaimId.L231, ClaimId.L232)
            )

    if "trials" in parts:
        for r_index, (regime, claim_id) in enumerate(TRIAL_CLAIMS.items()):
            if regime == Regime.general and inst.n > config.full_lattice_cap:
                skipped.append(
                    ClaimReport.skipped(
                        claim_id,
                        inst,
                        f"n = {inst.n} exceeds "
                        f"full_lattice_cap = {config.full_lattice_cap}",
                    )
                )
                continue
            jobs.append(
                ClaimJob(
                    "trial",
                    index,
                    inst,
                    claim_id,
                    regime=regime,
                    entropy=(config.seed, index, 2, r_index),
                    trials=trials,
                    config=config,
                )
            )

    if "facets" in parts:
        if hull_ok and inst.n <= config.full_lattice_cap:
            jobs.append(ClaimJob("facet", index, inst, ClaimId.T3, config=config))
        else:
            skipped.append(ClaimReport.skipped(ClaimId.T3, inst, hull_reason))

    return jobs, skipped


def run_job(job: ClaimJob) -> list[ClaimReport]:
    try:
        if job.kind == "region":
            return [
                check_region_claim(job.instance, job.claim_id, job.params, job.config)
            ]
        if job.kind == "shift":
            return check_shift_claims(
                job.instance,
                job.params.k,
                job.params.C,
                job.config,
                seed=_seed(*job.entropy),
            )
        if job.kind == "trial":
            return [
                equivalence_trial(
                    job.instance,
                    job.trials,
                    seed=_seed(*job.entropy),
                    regime=job.regime,
                    include_zero=True,
                    config=job.config,
                )
            ]
        if job.kind == "facet":
            return [check_facet_claim(job.instance, job.config)]
    except SizeCapError as e:
        claim_id = job.claim_id or ClaimId.L231
        return [ClaimReport.skipped(claim_id, job.instance, str(e), job.params)]
    raise ValueError(f"unknown job kind: {job.kind}")


@define(frozen=True)
class SuiteReport:
    suite: Suite = enum_field(enum_cls=Suite)
    seed: int
    instances: tuple[Instance, ...]
    reports: tuple[tuple[int, ClaimReport], ...]
    """(instance index, report) pairs in job order"""
    settings: KwargType = field(factory=dict, hash=False)
    """run settings the verdicts depend on"""

    @property
    def refuted(self) -> list[tuple[int, ClaimReport]]:
        return [(i, r) for i, r in self.reports if r.verdict == Verdict.refuted]

    @property
    def has_refutation(self) -> bool:
        return bool(self.refuted)

    def summary(self) -> dict[str, dict[str, int]]:
        counts: dict[str, Counter] = {}
        for _, report in self.reports:
            counts.setdefault(report.claim_id.value, Counter())[report.verdict.value] += 1
        return {
            claim: {v.value: counter[v.value] for v in Verdict}
            for claim, counter in sorted(counts.items())
        }

    def to_dict(self) -> KwargType:
        return {
            "suite": self.suite.value,
            "seed": self.seed,
            "instances": [inst.family_tag for inst in self.instances],
            "settings": self.settings,
            "summary": self.summary(),
            "reports": [report.to_dict() for _, report in self.reports],
        }

    def write(self, results_dir: Path) -> list[Path]:
        """Write the suite report and one counterexample file per refuted check."""
        results_dir = Path(results_dir)
        results_dir.mkdir(parents=True, exist_ok=True)
        write_json(self.to_dict(), results_dir / SUITE_REPORT)

        written = []
        numbering: Counter = Counter()
        for index, report in self.refuted:
            inst = self.instances[index]
            tag = safe_name(inst.family_tag)
            n = numbering[report.claim_id.value, tag]
            numbering[report.claim_id.value, tag] += 1
            name = f"{report.claim_id.value}-{tag}-{n}.json"
            path = results_dir / COUNTEREXAMPLE_DIR / name
            path.parent.mkdir(parents=True, exist_ok=True)
            write_json(
                {
                    "claim_id": report.claim_id.value,
                    "instance": inst.to_dict(),
                    "params": report.parameters.to_dict(),
                    "witness": report.evidence,
                },
                path,
            )
            written.append(path)
        return written


def safe_name(tag: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", tag) or "instance"


def run_suite(
    instances: list[Instance],
    config: Optional[Config] = None,
    suite: Suite = Suite.default,
    trials: int = DEFAULT_TRIALS,
) -> SuiteReport:
    """Run every applicable claim check on each instance.

    Checks that the configured caps rule out are reported as skipped. The report only
    depends on the instances, the seed and the caps.
    """
    config = config or Config()
    suite = Suite(suite)

    jobs: list[ClaimJob] = []
    skipped: list[tuple[int, ClaimReport]] = []
    for index, inst in enumerate(instances):
        inst_jobs, inst_skipped = plan_jobs(index, inst, suite, config, trials)
        jobs.extend(inst_jobs)
        skipped.extend((index, r) for r in inst_skipped)

    logger.info(
        f"Running {suite.value} suite: {len(instances)} instances, {len(jobs)} checks, "
        f"{len(skipped)} skipped"
    )
    results = ordered_map(
        run_job, jobs, workers=config.workers, progress=config.progress, desc="claims"
    )
    reports = [
        (job.instance_index, r)
        for job, job_reports in zip(jobs, results)
        for r in job_reports
    ]

    report = SuiteReport(
        suite,
        config.seed,
        tuple(instances),
        tuple(reports + skipped),
        settings=config.to_dict(include=REPORTED_SETTINGS),
    )
    logger.info(f"Suite summary: {report.summary()}")
    return report
