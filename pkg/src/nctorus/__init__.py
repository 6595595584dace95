"""Numerical workbench for the noncommutative torus A_theta and its Z2 symmetrization.

Elements are finitely supported coefficient maps on Z^n (trigonometric
polynomials).  The twisted convolution and the truncated representations run
on compiled kernels when the extension is built, otherwise on numpy; see
``BACKEND``.
"""
from ._backend import BACKEND
from .crossed import (
    AlgebraContext,
    CrossedElement,
    cp_add,
    cp_distance,
    cp_identity,
    cp_involution,
    cp_multiply,
    cp_scale,
)
from .errors import (
    ContextMismatchError,
    ConvergenceError,
    DimensionError,
    InputError,
    WindowTooLargeError,
)
from .lattice import (
    LatticeElement,
    add,
    commutator_quotient,
    deformed_product,
    distance,
    gamma_flip,
    involution,
    is_even,
    monomial,
    one,
    poisson_bracket,
    scale,
    symmetrize,
)
from .morita import (
    BimoduleVector,
    MoritaCertificate,
    compatibility_check,
    inner_C,
    inner_D,
    left_action,
    morita_certificate,
    right_action,
)
from .repr_norm import (
    TruncatedRep,
    Window,
    build_rep,
    norm_lower,
    norm_sweep,
    norm_upper_l1,
    sup_norm_grid,
)
from .theta import ThetaMatrix, gamma, sigma

__version__ = "0.1.0"
