import logging
import os
from pathlib import Path

from attrs import define, field

from copx.utils.attrs.dataclass_utils import AttrsDataclassUtilitiesMixin
from copx.utils.attrs.validators import non_negative_int, positive_int

RESULTS_DIR_ENV = "COPX_RESULTS_DIR"

logger = logging.getLogger(__name__)


@define
class Config(AttrsDataclassUtilitiesMixin):
    """CONFIG

    Size guardrails, parallelism, randomness and output location shared by every mode.
    """

    full_lattice_cap: int = field(default=14, validator=positive_int)
    """largest dimension for which the full {-1,0,1} lattice (3^n vectors) is
    enumerated"""

    cube_cap: int = field(default=20, validator=positive_int)
    """largest dimension for which a 0/1 (or shifted) cube lattice (2^n vectors) is
    enumerated. Also bounds the ground set size of generated instances."""

    hull_dim_cap: int = field(default=8, validator=positive_int)
    """largest dimension accepted by the vertex/inequality conversions"""

    workers: int = field(default=1, validator=positive_int)
    """number of worker processes. Output never depends on this value."""

    seed: int = field(default=0, validator=non_negative_int)
    """seed for every random draw"""

    results_dir: Path = field(default=Path("copx-results"), converter=Path)
    """directory for reports, counterexamples and error files. The COPX_RESULTS_DIR
    environment variable overrides this value."""

    region_vertex_cap: int = field(default=4, validator=positive_int)
    """largest number of vertices for which every region-claim index tuple is checked.
    Larger instances only use tuples over their first `region_vertex_cap` vertices; the
    rest are reported as skipped."""

    progress: bool = True
    """show progress bars for long loops"""

    def __attrs_post_init__(self):
        env_dir = os.environ.get(RESULTS_DIR_ENV)
        if env_dir:
            if Path(env_dir) != self.results_dir:
                logger.debug(f"{RESULTS_DIR_ENV} overrides results_dir: {env_dir}")
            self.results_dir = Path(env_dir)

        if self.full_lattice_cap > self.cube_cap:
            raise ValueError(
                f"full_lattice_cap ({self.full_lattice_cap}) cannot exceed cube_cap "
                f"({self.cube_cap})"
            )
