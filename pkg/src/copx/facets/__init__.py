from copx.facets.synth import (
    DescriptionReport,
    Divergence,
    FacetInequality,
    NecessityAudit,
    OracleDiff,
    full_description,
    necessity_audit,
    sign_vector_normal,
    vertex_facets,
)
