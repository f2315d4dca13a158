"""Exact free-probability combinatorics of the GJS tower over a
finite-dimensional Kac algebra.

The package computes, in exact arithmetic over multi-quadratic number fields:
non-crossing partition combinatorics (Mobius function, moment/cumulant
transforms, Temperley-Lieb diagrams and loop counts), traces of the first two
graded algebras of the GJS construction applied to a Kac algebra, and the
interpolated free group factor parameters of the associated subfactor tower,
cross-checked against a floating-point Marchenko-Pastur oracle.
"""

from .algnum import ONE, ZERO, AlgebraicReal, sqrt_int
from .catalog import BUILTIN_NAMES, builtin
from .errors import CapExceeded, KacValidationError, UnsupportedShapeError
from .gjs import (
    CrossedElement,
    Letter,
    Word,
    X,
    free_poisson_moment,
    induced_partition,
    kac_letter,
    kappa_matrix_units,
    matrix_moment,
    tau1,
    tau2,
    tau2_diagrammatic,
    verify_freeness,
    verify_r_cyclic,
)
from .kac import (
    Irrep,
    IrrepData,
    KacAlgebra,
    dual_group_algebra,
    from_matrix_units,
    group_algebra,
    kac_from_json,
    kac_to_json,
    phi_moment,
    to_matrix_units,
    validate,
    validate_irreps,
)
from .mp_oracle import FreePoissonParams, atom_mass, mp_moment
from .ncpart import (
    FunctionTable,
    NCPartition,
    TLPairing,
    catalan,
    closure_loop_count,
    cumulants_to_moments,
    enumerate_nc,
    enumerate_nc_of,
    mobius,
    moments_to_cumulants,
    multiplicative_extension,
    nc_from_tl,
    tl_from_nc,
)
from .vncalc import (
    LF,
    MatrixAlg,
    ScalarC,
    VNExpression,
    ampliate,
    deampliate_matrix,
    free_poisson_algebra,
    free_product,
    irrep_factor,
    m0_expression,
    m1_expression,
    m2_expression,
    multi_matrix_left_regular,
    power_free_product,
)

__version__ = "0.1.0"
