from copx.lattice.generators import (
    ChainReport,
    GeneratorSet,
    chain_check,
    select_generators,
)
from copx.lattice.lattice import Lattice, enum_lattice, shift_by_support
