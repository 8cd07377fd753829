"""Brute-force Fock-space oracle: dense 2**n matrix representations.

Basis state ``s`` (an integer in ``0..2**n - 1``) has bit ``j-1`` set iff
mode ``j`` is occupied; the vacuum is index 0.  An operator on mode ``j``
acts with the phase (-1)**(occupied modes below j), which satisfies the
anticommutation relations exactly (all entries are 0 or +-1).

Sector bases list k-particle creator index sets in ascending order,
lexicographically sorted, with the state ``cd_j1 cd_j2 .. |0>`` (j1<j2<..)
and the matching dual ``<0| .. c_j2 c_j1``.  A descending creator word such
as ``cd_n .. cd_2 cd_1 |0>`` differs from the ascending-order basis vector
by the permutation sign (-1)**(k*(k-1)/2); eigenvalue statements are
unaffected by that sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from fermihat import kernels
from fermihat.algebra import OperatorPoly
from fermihat.embedding import IdentityError, _as_square, hat

MAX_FOCK_MODES = 12
MAX_EIG_DIM = 4096


class FockSizeError(ValueError):
    """Requested Fock-space dimension exceeds the desk-scale guard."""


class EigensolverError(ArithmeticError):
    """The dense eigensolver failed to converge."""


def _check_modes(n: int) -> None:
    if not 1 <= n <= MAX_FOCK_MODES:
        raise FockSizeError(f"n_modes must be in 1..{MAX_FOCK_MODES}, got {n}")


@lru_cache(maxsize=None)
def mode_matrices(n_modes: int) -> tuple[np.ndarray, ...]:
    """Dense annihilation matrices c_1..c_n on the 2**n occupation basis."""
    _check_modes(n_modes)
    dim = 1 << n_modes
    mats = []
    for j in range(n_modes):
        bit = 1 << j
        m = np.zeros((dim, dim), dtype=complex)
        for s in range(dim):
            if s & bit:
                m[s ^ bit, s] = -1.0 if (s & (bit - 1)).bit_count() & 1 else 1.0
        m.setflags(write=False)
        mats.append(m)
    return tuple(mats)


def poly_to_fock(p: OperatorPoly) -> np.ndarray:
    """Dense 2**n matrix of an operator polynomial."""
    _check_modes(p.n_modes)
    dim = 1 << p.n_modes
    out = np.zeros((dim, dim), dtype=complex)
    states = np.arange(dim)
    for (cmask, amask), coeff in p.mask_items():
        targets, signs = kernels.apply_word(cmask, amask, p.n_modes)
        alive = targets >= 0
        out[targets[alive], states[alive]] += coeff * signs[alive]
    return out


@dataclass(frozen=True)
class SectorBasis:
    """Ordered basis of the k-particle sector."""

    n_modes: int
    particle_count: int
    index_sets: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, n_modes: int, particle_count: int) -> "SectorBasis":
        _check_modes(n_modes)
        if not 0 <= particle_count <= n_modes:
            raise ValueError(f"particle count {particle_count} outside 0..{n_modes}")
        sets = tuple(combinations(range(1, n_modes + 1), particle_count))
        return cls(n_modes, particle_count, sets)

    @property
    def states(self) -> tuple[int, ...]:
        """Occupation bitmasks of the basis states, in basis order."""
        return tuple(sum(1 << (j - 1) for j in s) for s in self.index_sets)

    def __len__(self):
        return len(self.index_sets)


def sector_matrix(p: OperatorPoly, particle_count: int) -> np.ndarray:
    """Matrix of p restricted to the k-particle sector, in SectorBasis order."""
    basis = SectorBasis.build(p.n_modes, particle_count)
    f = poly_to_fock(p)
    idx = np.array(basis.states, dtype=np.intp)
    return f[np.ix_(idx, idx)].copy()


def filled_state_eigenvalue(a, tol: float = 1e-10) -> complex:
    """Eigenvalue of hat(A) on the fully occupied n-particle state.

    Checks the filled state actually is an eigenvector and that the
    eigenvalue equals tr(A).
    """
    A = _as_square(a, "A")
    n = A.shape[0]
    f = poly_to_fock(hat(A))
    col = f[:, -1]
    lam = complex(col[-1])
    off = float(np.max(np.abs(col[:-1]))) if n > 0 else 0.0
    if off > tol:
        raise IdentityError(f"filled state is not an eigenvector (residual {off:.3e})")
    if abs(lam - np.trace(A)) > tol:
        raise IdentityError(f"filled-state eigenvalue differs from tr(A) by "
                            f"{abs(lam - np.trace(A)):.3e}")
    return lam


def eigenvalues(m) -> np.ndarray:
    """All eigenvalues of a dense complex matrix (unordered)."""
    a = _as_square(m, "matrix")
    if a.shape[0] > MAX_EIG_DIM:
        raise FockSizeError(f"dimension {a.shape[0]} exceeds guard {MAX_EIG_DIM}")
    try:
        return np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver did not converge: {exc}") from exc


def vacuum_expectation(p: OperatorPoly) -> complex:
    """<0| p |0>: the identity coefficient of the normal-ordered form."""
    return p.identity_coefficient()
