"""Exact affine Lagrangian relations, Gaussian relations, and graphical
symplectic algebra: a diagram IR with an exact relational semantics,
canonical forms, positivity deciders, and verified protocol demos."""

from .errors import LagrelError
from .scalars import (
    EXACT, FLOAT, QI, CirclePoint, circle_from_tan_half, format_scalar,
    parse_scalar, qi,
)
from .linalg import (
    Matrix, block, det, from_text, invert, is_psd, is_psd_hermitian, kernel,
    pinv, rank, rref, schur_project, solve_affine, to_text,
)
from .relations import AffineRelation, gaa_generator, grey, scalar_mult, white
from .lagrangian import (
    APForm, LagrangianRelation, ap_fingerprint, ap_form, from_ap,
    graph_relation, is_lagrangian, is_positive, is_quasi_real, name_state,
    omega, symplectic_rotation, symplectomorphism_check, two_mode_rotation,
    vacuum_rel, x_spider_rel, z_spider_rel,
)
from .gauss import (
    ExtendedGaussian, GaussMap, PhaseMatrix, covariance_to_phase,
    extract_extended_gaussian, from_gaussrel, gauss_compose,
    phase_to_covariance, qgauss_project, qgauss_state, qgauss_unitary,
    to_gaussrel, wigner_density_at,
)
from .diagrams import (
    Diagram, demo_teleportation, import_graph_state, interpret,
    synthesize_normal_form,
)
from .lov import Gate, LOvCircuit, lov_to_diagram
from .axioms import AxiomInstance, axiom_table, check_axiom, run_soundness_suite

__version__ = "0.1.0"
