from copx.hull.oracle import (
    Box,
    FaceClassification,
    HRep,
    VRep,
    face_classify,
    hrep_to_vrep,
    lattice_box,
    region_vertices,
    vrep_to_hrep,
)
