"""Quadratic forms in Fermi operators.

Symbolic normal-ordered operator algebra over bitmask monomials, the
bilinear matrix embedding and its product/commutator/anticommutator
identities, a dense Fock-space oracle with particle-number sector
representations, exponentials with a truncated Baker-Campbell-Hausdorff
series, Kraus channels through the embedding, and Fermi-Bose coupled forms
with truncated boson modes.
"""

from fermihat.algebra import (
    FermiMonomial,
    ModeMismatchError,
    OperatorPoly,
    ToleranceConfig,
    adjoint,
    anticommutator,
    commutator,
    max_coeff_diff,
    monomial_mul,
    poly_add,
    poly_equal,
    poly_mul,
    poly_scale,
)
from fermihat.channels import (
    IncompleteKrausWarning,
    KrausSet,
    SectorCheckReport,
    apply_channel_matrix,
    apply_channel_poly,
    channel_sector_check,
    compose_kraus,
)
from fermihat.embedding import (
    SIGMA1,
    SIGMA2,
    SIGMA3,
    IdentityError,
    ShapeError,
    Submatrix2x2Selector,
    acomm_2x2_trace_identity,
    anticommutator_correction,
    commutator_identity,
    embedded_trace,
    g_form,
    hat,
    is_idempotent,
    is_selfadjoint,
    matrix_rank,
    pair_annihilate,
    pair_create,
    pair_selectors,
    product_correction,
    square_correction_3x3,
)
from fermihat.expbch import (
    BchIdentityReport,
    BchTermIndex,
    MatrixLogError,
    bch_hat_identity,
    bch_term_indices,
    bch_truncated,
    hat_exp_rank1,
    matrix_exp,
    matrix_log,
    repeated_commutator,
    u_hat,
)
from fermihat.fermibose import (
    BosonModeSet,
    CoupledForm,
    boson_matrices,
    boson_quadratic_form,
    coupled_commutator_defect,
    coupled_form_matrix,
    decomposed_form_matrix,
)
from fermihat.fock import (
    EigensolverError,
    FockSizeError,
    SectorBasis,
    eigenvalues,
    filled_state_eigenvalue,
    mode_matrices,
    poly_to_fock,
    sector_matrix,
    vacuum_expectation,
)
from fermihat.exprparse import EvalError, ExprSyntaxError, evaluate, evaluate_fock, parse
from fermihat.kernels import backend_name
from fermihat.workspace import Workspace, load_matrix_file, matrix_to_json

__version__ = "0.1.0"
