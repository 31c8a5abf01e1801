"""Exact symbolic engine for lambda-bracket algebras, Lie pseudoalgebras in D
variables and higher-dimensional vertex Lie algebra data.

Everything is computed over the rationals with no floating point anywhere, so
every axiom check is a hard symbolic-zero assertion (or an exact comparison
on a declared truncation window).
"""

from .cone import (
    BiConeSeries,
    ConeSeries,
    FULL_WINDOW,
    HarmonicBasis,
    Kernel,
    Window,
    basis_poly_in,
    cone_from_poly,
    cone_mul,
    gauss_decompose,
    h_dim,
    harmonic_basis,
    iota_antisym,
    iota_expand,
    iota_kernel,
    residue,
    singular_part,
    wick_extract,
)
from .errors import TruncationError, WorkspaceError
from .ope1d import (
    DeltaDistribution,
    JthProductList,
    LaurentTerm,
    commutator_from_lambda,
    delta_mul_pow,
    delta_pair,
    jth_from_lambda,
    lambda_from_jth,
    locality_check,
)
from .pseudo import (
    BracketTable,
    ChiVector,
    LambdaPoly,
    LieStructure,
    ModuleElement,
    bracket_extend,
    build_cur,
    build_hd,
    build_wd,
    current_extend,
    jacobi_check,
    pseudo_space,
    sd_basis,
    sd_closure_check,
    sd_divergence,
    skew_check,
)
from .report import CheckReport, Failure
from .rings import FAMILIES, Poly, VarSpace
from .vla import (
    VLAStructure,
    apply_exp_zT,
    borcherds_check,
    d1_bridge,
    extend_action,
    jacobi_check_vla,
    skew_check_vla,
)

__version__ = "0.1.0"

__all__ = [
    "BiConeSeries", "BracketTable", "CheckReport", "ChiVector", "ConeSeries",
    "DeltaDistribution", "FAMILIES", "FULL_WINDOW", "Failure", "HarmonicBasis",
    "JthProductList", "Kernel", "LambdaPoly", "LaurentTerm", "LieStructure",
    "ModuleElement", "Poly", "TruncationError", "VLAStructure", "VarSpace",
    "Window", "WorkspaceError", "apply_exp_zT", "basis_poly_in",
    "borcherds_check", "bracket_extend", "build_cur", "build_hd", "build_wd",
    "commutator_from_lambda", "cone_from_poly", "cone_mul", "current_extend",
    "d1_bridge", "delta_mul_pow", "delta_pair", "extend_action",
    "gauss_decompose", "h_dim", "harmonic_basis", "iota_antisym",
    "iota_expand", "iota_kernel", "jacobi_check", "jacobi_check_vla",
    "jth_from_lambda", "lambda_from_jth", "locality_check", "pseudo_space",
    "residue", "sd_basis", "sd_closure_check", "sd_divergence",
    "singular_part", "skew_check", "skew_check_vla", "wick_extract",
]
