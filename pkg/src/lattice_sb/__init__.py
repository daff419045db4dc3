"""Finite-lattice coding workbench.

Build and validate finite lattices, classify them (modular, distributive,
geometric, Jordan-Dedekind), measure height-based distances between scheme
members, evaluate Singleton-type upper bounds and GV-type lower bounds, and
search exhaustively for maximum schemes.
"""

from .bounds import (
    BOUND_CSV_HEADER,
    BoundReport,
    ball_volume,
    classical_singleton,
    gv_lower,
    gv_lower_for_lattice,
    kks_bound,
    log2_string,
    lsb,
    lsb_for_lattice,
    lsb_windowed,
    max_ball_volume,
    projective_singleton,
    puncture_budget,
    render_report_csv,
)
from .counting import binomial, gaussian, gaussian_pascal, whitney, whitney_closed_form
from .fq import (
    NAMED_LATTICES,
    Subspace,
    all_subspaces,
    build_named_lattice,
    build_powerset_lattice,
    build_projective_lattice,
    enumerate_grassmannian,
    rref,
    subspace_from_text,
    subspace_intersect,
    subspace_leq,
    subspace_sum,
    subspace_to_text,
)
from .lattice import (
    CapExceeded,
    Lattice,
    LatticeError,
    NotALatticeError,
    build_lattice,
    classify,
    from_json,
    sublattice_closure,
    to_dot,
    to_json,
    with_names,
)
from .schemes import (
    Scheme,
    TransformWitness,
    lifting_transform,
    make_scheme,
    min_distance,
    parse_scheme_text,
    puncture,
    puncture_project,
    punctured_distance,
    scheme_to_text,
    support_transform,
    verify_transform,
)
from .search import ProbeRow, SearchProblem, SearchResult, conjecture_probe, greedy_code, max_code

__version__ = "0.1.0"

__all__ = [
    "BOUND_CSV_HEADER",
    "BoundReport",
    "CapExceeded",
    "Lattice",
    "LatticeError",
    "NAMED_LATTICES",
    "NotALatticeError",
    "ProbeRow",
    "Scheme",
    "SearchProblem",
    "SearchResult",
    "Subspace",
    "TransformWitness",
    "all_subspaces",
    "ball_volume",
    "binomial",
    "build_lattice",
    "build_named_lattice",
    "build_powerset_lattice",
    "build_projective_lattice",
    "classical_singleton",
    "classify",
    "conjecture_probe",
    "enumerate_grassmannian",
    "from_json",
    "gaussian",
    "gaussian_pascal",
    "greedy_code",
    "gv_lower",
    "gv_lower_for_lattice",
    "kks_bound",
    "lifting_transform",
    "log2_string",
    "lsb",
    "lsb_for_lattice",
    "lsb_windowed",
    "make_scheme",
    "max_ball_volume",
    "max_code",
    "min_distance",
    "parse_scheme_text",
    "projective_singleton",
    "puncture",
    "puncture_budget",
    "puncture_project",
    "punctured_distance",
    "render_report_csv",
    "rref",
    "scheme_to_text",
    "sublattice_closure",
    "subspace_from_text",
    "subspace_intersect",
    "subspace_leq",
    "subspace_sum",
    "subspace_to_text",
    "support_transform",
    "to_dot",
    "to_json",
    "verify_transform",
    "whitney",
    "whitney_closed_form",
    "with_names",
]
