"""Homological invariants of modules over graded hypersurface rings."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .field import QQ, PrimeField, Rationals, field_from_spec
from .groebner import INFINITE, GroebnerBasis, buchberger, krull_dim, normal_form, vector_space_length
from .invariants import (
    chi,
    check_depth_formula,
    decency_check,
    depth,
    frobenius_tor_table,
    ipd_locus_dim,
    rigidity_probe,
    singular_locus,
    tensor_complex,
    theta,
    tor_table,
    tor_table_over_ambient,
    verify_exact,
)
from .matrix import PolyMatrix
from .modules import ModuleComplex, ModuleMap, ModulePresentation, direct_sum, syzygies, tensor
from .poly import Polynomial
from .resolution import (
    detect_periodicity,
    extract_matrix_factorization,
    resolve_over_ambient,
    resolve_over_hypersurface,
)
from .ring import PolynomialRing, RingSpec
