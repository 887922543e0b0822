from copx.data.families import (
    BUILTIN_NAMES,
    builtin_instance,
    gen_family,
    resolve_instance,
)
from copx.data.instance import (
    Instance,
    WeightVector,
    argmax_brute,
    load_instance,
    load_weights,
    save_instance,
    save_weights,
)
