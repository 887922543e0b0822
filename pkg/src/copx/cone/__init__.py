from copx.cone.engine import (
    ConeCertificate,
    FarkasCertificate,
    cone_member,
    cones_equal,
    elementwise_minimal,
    irreducible_subset,
    is_member,
    lineality_basis,
    requires_generator,
    verify_certificate,
)
