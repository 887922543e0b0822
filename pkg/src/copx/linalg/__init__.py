from copx.linalg.rational import (
    affine_rank,
    dot,
    format_rat,
    parse_rat,
    primitive,
    rank,
    rat_vec,
    rref,
)
