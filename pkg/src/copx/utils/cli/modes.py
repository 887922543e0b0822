import json
import logging
from collections.abc import Callable
from pathlib import Path
from typing import Optional

from copx.data.families import gen_family, resolve_instance
from copx.data.instance import (
    Instance,
    WeightVector,
    load_weights,
    save_instance,
    write_json,
)
from copx.exceptions import (
    CopxError,
    ExitCode,
    SizeCapError,
    UnboundedError,
    exit_code_for,
)
from copx.facets.synth import full_description, necessity_audit
from copx.hull.oracle import Box, HRep, VRep, hrep_to_vrep, vrep_to_hrep
from copx.linalg.rational import format_rat
from copx.optimality.certify import (
    decide_optimal,
    normalize_for_display,
    optimal_set,
    shift_to_nonneg,
)
from copx.typing import Direction, KwargType, Variant
from copx.utils.cli.certify import CertifyArgs
from copx.utils.cli.config import Config
from copx.utils.cli.facets import FacetArgs
from copx.utils.cli.family import FamilyArgs
from copx.utils.cli.verify import SuiteArgs
from copx.verify.claims import equivalence_trial
from copx.verify.suite import COUNTEREXAMPLE_DIR, run_suite, safe_name

logger = logging.getLogger(__name__)

ERROR_FILE = "error.json"


def write_error(results_dir: Path, exc: BaseException, code: ExitCode) -> Path:
    data: KwargType = {
        "error": type(exc).__name__,
        "message": str(exc),
        "exit_code": int(code),
    }
    if isinstance(exc, UnboundedError):
        data["ray"] = [format_rat(x) for x in exc.ray]
    if isinstance(exc, SizeCapError):
        data["cap"] = {"what": exc.what, "value": exc.value, "cap": exc.cap}
    path = Path(results_dir) / ERROR_FILE
    write_json(data, path)
    return path


def write_counterexample(results_dir: Path, name: str, tag: str, data: KwargType) -> Path:
    directory = Path(results_dir) / COUNTEREXAMPLE_DIR
    stem = f"{name}-{safe_name(tag)}"
    n = len(list(directory.glob(f"{stem}-*.json"))) if directory.exists() else 0
    path = directory / f"{stem}-{n}.json"
    write_json(data, path)
    return path


class _GuardedMode:
    def _log_mode(self, mode: str):
        logger.info(f"Running {mode} mode")

    def _guarded(self, mode: str, run: Config, fn: Callable[[], int]) -> int:
        """Run `fn`, turning library errors into an exit code and an error file."""
        self._log_mode(mode)
        try:
            return int(fn())
        except (CopxError, ValueError, FileNotFoundError, IndexError) as e:
            code = exit_code_for(e)
            logger.error(f"{mode} failed: {e}")
            path = write_error(run.results_dir, e, code)
            logger.info(f"Error details written to {path}")
            return int(code)


class GenMode(_GuardedMode):
    def gen(self, family: FamilyArgs, out: Path, run: Config) -> int:
        """Enumerate a built-in family and save it as an instance file

        Args:
            family (FamilyArgs): FAMILY
            out (Path): output instance file
            run (Config): CONFIG
        """

        def _gen() -> int:
            inst = gen_family(family.family, family, cube_cap=run.cube_cap)
            save_instance(inst, out)
            logger.info(f"Saved {inst.family_tag} instance to {out}")
            print(f"|X|={inst.size}, N={inst.n}")
            return ExitCode.ok

        return self._guarded("gen", run, _gen)


def _read_weights(args: CertifyArgs) -> WeightVector:
    if args.weights is not None:
        return load_weights(args.weights)
    return WeightVector.from_strings(args.inline_weights() or ())


class CertifyMode(_GuardedMode):
    def certify(self, instance: str, certify: CertifyArgs, run: Config) -> int:
        """Decide vertex optimality by cone membership and cross-check it by brute force

        Args:
            instance (str): instance file or builtin name (fig1, k4-trees, k4-matchings,
                tsp4, tsp5)
            certify (CertifyArgs): CERTIFY
            run (Config): CONFIG
        """
        return self._guarded(
            "certify", run, lambda: self._certify(instance, certify, run)
        )

    def _certify(self, ref: str, args: CertifyArgs, run: Config) -> int:
        inst = resolve_instance(ref)
        out = args.out or run.results_dir / "verdict.json"

        if args.random is not None:
            report = equivalence_trial(
                inst, args.random, seed=run.seed, regime=args.regime, config=run
            )
            write_json(report.to_dict(), out)
            logger.info(
                f"{args.random} random trials: {report.evidence['mismatches']} mismatches"
            )
            if report.refuted:
                write_counterexample(
                    run.results_dir,
                    report.claim_id.value,
                    inst.family_tag,
                    report.to_dict(),
                )
                return ExitCode.refuted
            return ExitCode.ok

        c = _read_weights(args)
        shifted = False
        if args.shift:
            shifted_c = shift_to_nonneg(inst, c)
            shifted = shifted_c != c
            c = shifted_c

        data: KwargType
        if args.all:
            result = optimal_set(inst, c, args.regime, run)
            data = result.to_dict()
            mismatches = [ce.to_dict() for ce in result.counterexamples]
            logger.info(f"optimal set: {sorted(result.optimal)}")
        else:
            verdict = decide_optimal(inst, c, args.vertex, args.regime, run)
            data = verdict.to_dict()
            mismatches = [] if verdict.cross_check else [data]
            logger.info(f"vertex {args.vertex} optimal: {verdict.is_optimal}")

        data["c"] = [format_rat(x) for x in c]
        if shifted:
            data["shifted"] = True
        if args.normalize:
            data["normalized_c"] = [format_rat(x) for x in normalize_for_display(c)]
        write_json(data, out)

        if mismatches:
            write_counterexample(
                run.results_dir,
                "certify",
                inst.family_tag,
                {"instance": inst.to_dict(), "c": data["c"], "mismatches": mismatches},
            )
            return ExitCode.refuted
        return ExitCode.ok


class FacetsMode(_GuardedMode):
    def facets(self, instance: str, facets: FacetArgs, run: Config) -> int:
        """Synthesize the sign-vector facet description and compare it with the oracle

        Args:
            instance (str): instance file or builtin name
            facets (FacetArgs): FACETS
            run (Config): CONFIG
        """
        return self._guarded("facets", run, lambda: self._facets(instance, facets, run))

    def _facets(self, ref: str, args: FacetArgs, run: Config) -> int:
        inst = resolve_instance(ref)
        report = full_description(inst, args.variant, args.mode, run)
        data = report.to_dict()
        if args.audit and report.polytope_match:
            data["audit"] = necessity_audit(report, inst, run).to_dict()
        elif args.audit:
            logger.warning(
                "skipping the necessity audit: description does not reproduce X"
            )
        write_json(data, args.out or run.results_dir / "description.json")

        if report.divergences:
            path = write_counterexample(
                run.results_dir,
                "divergence",
                inst.family_tag,
                {
                    "instance": inst.to_dict(),
                    "mode": data["mode"],
                    "divergences": data["divergences"],
                    "oracle_diff": data["oracle_diff"],
                },
            )
            logger.warning(f"literal filter lost part of the cone, details in {path}")
            return ExitCode.divergence
        if args.variant == Variant.V and not report.polytope_match:
            write_counterexample(
                run.results_dir,
                "T3",
                inst.family_tag,
                {"instance": inst.to_dict(), "description": data},
            )
            return ExitCode.refuted
        return ExitCode.ok


class VerifyMode(_GuardedMode):
    def verify(
        self,
        suite: SuiteArgs,
        run: Config,
        instances: Optional[list[str]] = None,
    ) -> int:
        """Run the claim-checking suite and write the suite report

        Args:
            suite (SuiteArgs): SUITE
            run (Config): CONFIG
            instances (Optional[list[str]]): instance files or builtin names
        """
        return self._guarded(
            "verify", run, lambda: self._verify(instances or [], suite, run)
        )

    def _verify(self, refs: list[str], args: SuiteArgs, run: Config) -> int:
        insts: list[Instance] = [resolve_instance(ref) for ref in refs]
        report = run_suite(insts, run, args.suite, args.trials)
        written = report.write(run.results_dir)
        for path in written:
            logger.warning(f"counterexample written to {path}")
        return ExitCode.refuted if report.has_refutation else ExitCode.ok


class OracleMode(_GuardedMode):
    def oracle(
        self,
        input: str,
        run: Config,
        direction: Direction = Direction.v2h,
        box: bool = False,
        out: Optional[Path] = None,
    ) -> int:
        """Convert between vertex and inequality descriptions with the hull oracle

        Args:
            input (str): instance file or builtin name for v2h, copx-hrep-v1 JSON file
                for h2v
            run (Config): CONFIG
            direction (Direction): v2h or h2v
            box (bool): intersect h2v inputs with the unit cube
            out (Optional[Path]): output file. Defaults to <results_dir>/oracle.json
        """
        return self._guarded(
            "oracle",
            run,
            lambda: self._oracle(input, Direction(direction), box, out, run),
        )

    def _oracle(
        self, ref: str, direction: Direction, box: bool, out: Optional[Path], run: Config
    ) -> int:
        if direction == Direction.v2h:
            inst = resolve_instance(ref)
            vrep = VRep(inst.n, inst.vertices)
            data = vrep_to_hrep(vrep, dim_cap=run.hull_dim_cap).to_dict()
        else:
            with open(ref) as fp:
                h = HRep.from_dict(json.load(fp))
            clip = Box.unit(h.n) if box else None
            data = hrep_to_vrep(h, clip, dim_cap=run.hull_dim_cap).to_dict()

        write_json(data, out or run.results_dir / "oracle.json")
        print(json.dumps(data, indent=2))
        return ExitCode.ok
