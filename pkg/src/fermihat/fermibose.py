"""Fermi-Bose coupled quadratic forms with truncated boson modes.

Boson modes are carried on (d+1)-dimensional truncated spaces, so
[b, b^dagger] = I holds only below the cutoff (the defect is exactly
-(d+1)|d><d| per mode).  Coupled forms are represented numerically on the
tensor product (fermion factor first); there is no symbolic calculus for
the bosonic side here.  The matrix commutator and the commutator of the
coupled forms are generally unrelated - ``coupled_commutator_defect``
measures exactly that gap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fermihat.embedding import ShapeError, _as_square, hat
from fermihat.fock import MAX_FOCK_MODES, poly_to_fock

MAX_COUPLED_DIM = 4096


@dataclass(frozen=True)
class BosonModeSet:
    """m truncated boson modes, each with max occupation ``cutoff``."""

    m_modes: int
    cutoff: int = 3

    def __post_init__(self):
        if self.m_modes < 1:
            raise ValueError(f"need at least one boson mode, got {self.m_modes}")
        if self.cutoff < 1:
            raise ValueError(f"cutoff must be >= 1, got {self.cutoff}")
        if self.dim > MAX_COUPLED_DIM:
            raise ValueError(f"boson space dimension {self.dim} exceeds guard "
                             f"{MAX_COUPLED_DIM}")

    @property
    def dim(self) -> int:
        return (self.cutoff + 1) ** self.m_modes


def boson_matrices(bs: BosonModeSet) -> tuple[np.ndarray, ...]:
    """Truncated annihilation matrices b_1..b_m on the product space.

    Single-mode matrix elements are <k-1|b|k> = sqrt(k) for k <= cutoff.
    Mode 1 is the leftmost Kronecker factor.
    """
    d = bs.cutoff
    single = np.zeros((d + 1, d + 1), dtype=complex)
    for k in range(1, d + 1):
        single[k - 1, k] = np.sqrt(k)
    eye = np.eye(d + 1, dtype=complex)
    mats = []
    for a in range(bs.m_modes):
        m = np.eye(1, dtype=complex)
        for pos in range(bs.m_modes):
            m = np.kron(m, single if pos == a else eye)
        mats.append(m)
    return tuple(mats)


def boson_quadratic_form(mb, bs: BosonModeSet) -> np.ndarray:
    """sum_ab (M_b)_ab  bd_a b_b on the truncated boson space."""
    Mb = _as_square(mb, "M_b")
    if Mb.shape[0] != bs.m_modes:
        raise ShapeError(f"M_b is {Mb.shape[0]}x{Mb.shape[0]} but there are "
                         f"{bs.m_modes} boson modes")
    b = boson_matrices(bs)
    out = np.zeros((bs.dim, bs.dim), dtype=complex)
    for a in range(bs.m_modes):
        for c in range(bs.m_modes):
            if Mb[a, c] != 0:
                out += Mb[a, c] * (b[a].conj().T @ b[c])
    return out


@dataclass(frozen=True, eq=False)
class CoupledForm:
    """Quadratic form sum M_(ja),(kb) (cd_j c_k) x (bd_a b_b).

    Row index (j-1)*m + (a-1): fermion index major, boson index minor,
    matching the (creator vector x boson creator vector) Kronecker layout.
    """

    matrix: np.ndarray
    n_fermi: int
    bosons: BosonModeSet

    def __post_init__(self):
        M = _as_square(self.matrix, "M")
        nm = self.n_fermi * self.bosons.m_modes
        if M.shape != (nm, nm):
            raise ShapeError(f"M must be {nm}x{nm} for {self.n_fermi} fermion and "
                             f"{self.bosons.m_modes} boson modes, got {M.shape}")
        if not 1 <= self.n_fermi <= MAX_FOCK_MODES:
            raise ValueError(f"fermion mode count {self.n_fermi} outside guard")
        object.__setattr__(self, "matrix", M)

    @property
    def dim(self) -> int:
        return (1 << self.n_fermi) * self.bosons.dim


def coupled_form_matrix(cf: CoupledForm) -> np.ndarray:
    """Dense matrix of the coupled form on fermion (x) boson space."""
    if cf.dim > MAX_COUPLED_DIM:
        raise ValueError(f"total dimension {cf.dim} exceeds guard {MAX_COUPLED_DIM}")
    n, m = cf.n_fermi, cf.bosons.m_modes
    M = cf.matrix
    out = np.zeros((cf.dim, cf.dim), dtype=complex)
    for j in range(n):
        for k in range(n):
            block = M[j * m:(j + 1) * m, k * m:(k + 1) * m]
            if not block.any():
                continue
            ejk = np.zeros((n, n), dtype=complex)
            ejk[j, k] = 1.0
            out += np.kron(poly_to_fock(hat(ejk)), boson_quadratic_form(block, cf.bosons))
    return out


def decomposed_form_matrix(pairs, n_fermi: int, bs: BosonModeSet) -> np.ndarray:
    """Coupled form built from a decomposition M = sum_r M_c,r (x) M_b,r."""
    out = np.zeros(((1 << n_fermi) * bs.dim,) * 2, dtype=complex)
    for mc, mb in pairs:
        out += np.kron(poly_to_fock(hat(mc)), boson_quadratic_form(mb, bs))
    return out


def coupled_commutator_defect(cf1: CoupledForm, cf2: CoupledForm) -> np.ndarray:
    """[M1_form, M2_form] minus the coupled form of [M1, M2].

    Generically nonzero: the coupled embedding is not a commutator
    homomorphism.
    """
    if cf1.n_fermi != cf2.n_fermi or cf1.bosons != cf2.bosons:
        raise ShapeError("coupled forms must share the same mode structure")
    f1 = coupled_form_matrix(cf1)
    f2 = coupled_form_matrix(cf2)
    bracket = CoupledForm(cf1.matrix @ cf2.matrix - cf2.matrix @ cf1.matrix,
                          cf1.n_fermi, cf1.bosons)
    return f1 @ f2 - f2 @ f1 - coupled_form_matrix(bracket)
