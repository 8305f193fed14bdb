"""Exact computations for locally finite derivations on polynomial rings over Q."""

__version__ = "0.1.0"

from .derivation import (
    Derivation,
    ScalarSeries,
    TruncatedSeries,
    apply,
    apply_power,
    exp_truncated,
    phi_truncated,
    shifted,
)
from .eigenvalue import Eigenvalue
from .errors import (
    AlgderError,
    CapExceeded,
    NonRationalSpectrum,
    NotAlgebraicUpToCaps,
    NotInvariantError,
    ParseError,
)
from .invariants import MatrixGroup, act, check_euler_descends, enumerate_group, reynolds
from .linalg import QMatrix, RootMultiset, UniPoly, char_poly, kernel, rational_root_split, rref
from .parsing import format_poly, load_derivation, load_group_spec, parse_poly
from .poly import Poly, diff, mul, substitute
from .spectral import (
    Caps,
    Decomposition,
    KrylovSpace,
    Nilpotent,
    NotNilpotent,
    Part,
    Undetermined,
    decompose_diagonal,
    decompose_element,
    is_algebraic_element,
    is_locally_nilpotent,
    is_nilpotent_element,
    krylov_space,
    mu_height,
    spectrum_and_monoid,
)
