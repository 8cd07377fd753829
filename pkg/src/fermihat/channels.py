"""Kraus channel arithmetic, at the matrix level and through the embedding.

The embedded channel sum_i hat(K_i) p hat(K_i)^dagger restricted to the
one-particle sector reproduces the matrix channel sum_i K_i A K_i^* exactly;
completeness of the Kraus set is not required for that, so an incomplete
set only triggers a warning.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from fermihat.algebra import OperatorPoly
from fermihat.embedding import ShapeError, _as_square, hat
from fermihat.fock import sector_matrix


class IncompleteKrausWarning(UserWarning):
    """sum_i K_i^* K_i deviates from the identity."""


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Nonempty list of same-shape square Kraus operators."""

    operators: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.operators:
            raise ValueError("a Kraus set needs at least one operator")
        mats = tuple(_as_square(k, "Kraus operator") for k in self.operators)
        dim = mats[0].shape[0]
        for k in mats:
            if k.shape != (dim, dim):
                raise ShapeError(f"Kraus operators must share one shape; "
                                 f"got {k.shape} vs {(dim, dim)}")
        object.__setattr__(self, "operators", mats)
        defect = float(np.max(np.abs(self.completeness_sum() - np.eye(dim))))
        if defect > 1e-10:
            warnings.warn(f"Kraus set is not complete: |sum K*K - I| = {defect:.3e}",
                          IncompleteKrausWarning, stacklevel=2)

    @classmethod
    def from_matrices(cls, mats) -> "KrausSet":
        return cls(tuple(np.asarray(m, dtype=complex) for m in mats))

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def completeness_sum(self) -> np.ndarray:
        return sum(k.conj().T @ k for k in self.operators)


def apply_channel_matrix(ks: KrausSet, a) -> np.ndarray:
    """sum_i K_i A K_i^*; trace preserving when the set is complete."""
    A = _as_square(a, "A")
    if A.shape[0] != ks.dim:
        raise ShapeError(f"A is {A.shape[0]}x{A.shape[0]} but the Kraus set "
                         f"acts on dimension {ks.dim}")
    out = np.zeros_like(A)
    for k in ks.operators:
        out += k @ A @ k.conj().T
    return out


def apply_channel_poly(ks: KrausSet, p: OperatorPoly) -> OperatorPoly:
    """Embedded channel sum_i hat(K_i) p adjoint(hat(K_i))."""
    if ks.dim != p.n_modes:
        raise ShapeError(f"Kraus dimension {ks.dim} != mode count {p.n_modes}")
    out = OperatorPoly.zero(p.n_modes)
    for k in ks.operators:
        kp = hat(k)
        out = out + kp * p * kp.adjoint()
    return out


def compose_kraus(second: KrausSet, first: KrausSet) -> KrausSet:
    """Kraus set of the composition (apply ``first``, then ``second``)."""
    if second.dim != first.dim:
        raise ShapeError(f"dimension mismatch: {second.dim} vs {first.dim}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IncompleteKrausWarning)
        return KrausSet(tuple(k2 @ k1 for k2 in second.operators
                              for k1 in first.operators))


@dataclass(frozen=True)
class SectorCheckReport:
    """One-particle-sector comparison of the two channel routes."""

    from_poly: np.ndarray
    from_matrix: np.ndarray
    max_err: float
    passed: bool


def channel_sector_check(ks: KrausSet, a, tol: float = 1e-10) -> SectorCheckReport:
    """Compare sector_matrix(channel(hat(A)), 1) with the matrix channel."""
    A = _as_square(a, "A")
    from_poly = sector_matrix(apply_channel_poly(ks, hat(A)), 1)
    from_matrix = apply_channel_matrix(ks, A)
    err = float(np.max(np.abs(from_poly - from_matrix)))
    return SectorCheckReport(from_poly, from_matrix, err, err <= tol)
