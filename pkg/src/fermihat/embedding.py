"""The bilinear embedding A -> hat(A) and its matrix-level identities.

``hat`` sends an n x n complex matrix to the quadratic form
``sum_jk a_jk cd_j c_k``.  The map is linear, trace preserving, compatible
with adjoints, and a Lie-algebra homomorphism for the commutator; products
and anticommutators pick up quartic corrections governed by 2 x 2
submatrix determinants.  Every identity here is exposed as a callable that
builds its closed form, checks it against the direct operator computation,
and returns the closed form.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

import numpy as np

from fermihat.algebra import (
    DEFAULT_ZERO_THRESHOLD,
    OperatorPoly,
    ToleranceConfig,
    anticommutator,
    commutator,
    max_coeff_diff,
    poly_equal,
    poly_mul,
)

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

#: Default tolerance for the built-in identity checks.
IDENTITY_TOL = ToleranceConfig(zero_threshold=1e-10)


class IdentityError(ArithmeticError):
    """An algebraic identity failed beyond the configured tolerance."""


class ShapeError(ValueError):
    """Matrix argument has the wrong shape."""


def _as_square(m, name: str = "matrix") -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def _as_2x2(m, name: str) -> np.ndarray:
    a = _as_square(m, name)
    if a.shape != (2, 2):
        raise ShapeError(f"{name} must be 2x2, got shape {a.shape}")
    return a


def _det2(m: np.ndarray) -> complex:
    return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


class Submatrix2x2Selector(NamedTuple):
    """Row pair (j < l) and column pair (k < m), 1-based."""

    j: int
    l: int
    k: int
    m: int

    def of(self, a: np.ndarray) -> np.ndarray:
        return np.array([[a[self.j - 1, self.k - 1], a[self.j - 1, self.m - 1]],
                         [a[self.l - 1, self.k - 1], a[self.l - 1, self.m - 1]]])


def pair_selectors(n: int) -> Iterator[Submatrix2x2Selector]:
    """All 2x2 submatrix selectors, lexicographic in (j, l, k, m)."""
    for j in range(1, n + 1):
        for l in range(j + 1, n + 1):
            for k in range(1, n + 1):
                for m in range(k + 1, n + 1):
                    yield Submatrix2x2Selector(j, l, k, m)


def hat(matrix, n_modes: int | None = None) -> OperatorPoly:
    """Embed an n x n matrix as the bilinear sum_jk a_jk cd_j c_k."""
    a = _as_square(matrix)
    n = a.shape[0]
    if n_modes is not None and n_modes != n:
        raise ShapeError(f"matrix is {n}x{n} but {n_modes} modes were requested")
    terms = {}
    for j in range(n):
        for k in range(n):
            if a[j, k] != 0:
                terms[(1 << j, 1 << k)] = a[j, k]
    return OperatorPoly(n, terms)


def g_form(x, y, tol: ToleranceConfig | None = None) -> complex:
    """Symmetric indefinite form g(X, Y) = tr(s2 X s2 Y^T) on 2x2 matrices.

    Also evaluates the determinant route det(X+Y) - det(X) - det(Y) and
    checks the two agree; g(A, A) = 2 det(A).
    """
    X = _as_2x2(x, "X")
    Y = _as_2x2(y, "Y")
    val = complex(np.trace(SIGMA2 @ X @ SIGMA2 @ Y.T))
    alt = _det2(X + Y) - _det2(X) - _det2(Y)
    cfg = tol if tol is not None else IDENTITY_TOL
    if abs(val - alt) > cfg.zero_threshold:
        raise IdentityError(f"g-form routes disagree by {abs(val - alt):.3e}")
    return val


def _quartic_correction(a: np.ndarray, b: np.ndarray, factor: complex,
                        tol: ToleranceConfig) -> OperatorPoly:
    # sum over submatrix pairs of factor * g([A]_jl;km, [B]_jl;km) cd_j cd_l c_k c_m
    n = a.shape[0]
    terms = {}
    for sel in pair_selectors(n):
        coeff = factor * g_form(sel.of(a), sel.of(b), tol)
        if coeff != 0:
            cmask = (1 << (sel.j - 1)) | (1 << (sel.l - 1))
            amask = (1 << (sel.k - 1)) | (1 << (sel.m - 1))
            terms[(cmask, amask)] = coeff
    return OperatorPoly(n, terms)


def product_correction(a, b, tol: ToleranceConfig | None = None) -> OperatorPoly:
    """Closed form of hat(A)hat(B): hat(AB) minus the quartic g-form sum.

    Checks the closed form against poly_mul(hat(A), hat(B)) before
    returning it.  The quartic part vanishes exactly when every paired
    2x2 submatrix has g([A], [B]) = 0; for B = A that means rank(A) <= 1.
    """
    cfg = tol if tol is not None else IDENTITY_TOL
    A = _as_square(a, "A")
    B = _as_square(b, "B")
    if A.shape != B.shape:
        raise ShapeError(f"shape mismatch: {A.shape} vs {B.shape}")
    rhs = hat(A @ B) + _quartic_correction(A, B, -1.0, cfg)
    direct = poly_mul(hat(A), hat(B))
    diff = max_coeff_diff(direct, rhs)
    if diff > cfg.zero_threshold:
        raise IdentityError(f"product correction mismatch: {diff:.3e}")
    return rhs


def square_correction_3x3(a, tol: ToleranceConfig | None = None) -> OperatorPoly:
    """Closed form of hat(A)^2 for 3x3 A via the nine 2x2 minors of A."""
    cfg = tol if tol is not None else IDENTITY_TOL
    A = _as_square(a, "A")
    if A.shape != (3, 3):
        raise ShapeError(f"A must be 3x3, got shape {A.shape}")
    terms = {}
    for sel in pair_selectors(3):
        # rows (j, l) give the creators, columns (k, m) the annihilators
        minor = _det2(sel.of(A))
        if minor != 0:
            cmask = (1 << (sel.j - 1)) | (1 << (sel.l - 1))
            amask = (1 << (sel.k - 1)) | (1 << (sel.m - 1))
            terms[(cmask, amask)] = -2.0 * minor
    rhs = hat(A @ A) + OperatorPoly(3, terms)
    direct = poly_mul(hat(A), hat(A))
    diff = max_coeff_diff(direct, rhs)
    if diff > cfg.zero_threshold:
        raise IdentityError(f"3x3 square correction mismatch: {diff:.3e}")
    return rhs


def anticommutator_correction(a, b, tol: ToleranceConfig | None = None) -> OperatorPoly:
    """Closed form of [hat(A), hat(B)]_+: hat([A,B]_+) - 2 sum g(...) words."""
    cfg = tol if tol is not None else IDENTITY_TOL
    A = _as_square(a, "A")
    B = _as_square(b, "B")
    if A.shape != B.shape:
        raise ShapeError(f"shape mismatch: {A.shape} vs {B.shape}")
    rhs = hat(A @ B + B @ A) + _quartic_correction(A, B, -2.0, cfg)
    direct = anticommutator(hat(A), hat(B))
    diff = max_coeff_diff(direct, rhs)
    if diff > cfg.zero_threshold:
        raise IdentityError(f"anticommutator correction mismatch: {diff:.3e}")
    return rhs


def commutator_identity(a, b, tol: ToleranceConfig | None = None) -> OperatorPoly:
    """hat([A, B]), checked equal to [hat(A), hat(B)] (no correction terms)."""
    cfg = tol if tol is not None else IDENTITY_TOL
    A = _as_square(a, "A")
    B = _as_square(b, "B")
    if A.shape != B.shape:
        raise ShapeError(f"shape mismatch: {A.shape} vs {B.shape}")
    rhs = hat(A @ B - B @ A)
    direct = commutator(hat(A), hat(B))
    diff = max_coeff_diff(direct, rhs)
    if diff > cfg.zero_threshold:
        raise IdentityError(f"commutator homomorphism violated: {diff:.3e}")
    return rhs


def acomm_2x2_trace_identity(a, b, tol: ToleranceConfig | None = None) -> np.ndarray:
    """2x2 anticommutator via traces:

    [A,B]_+ = tr(A)B + tr(B)A - (tr(A)tr(B) - sum_j tr(s_j A)tr(s_j B))/2 I.
    """
    cfg = tol if tol is not None else IDENTITY_TOL
    A = _as_2x2(a, "A")
    B = _as_2x2(b, "B")
    pauli_sum = sum(np.trace(s @ A) * np.trace(s @ B) for s in (SIGMA1, SIGMA2, SIGMA3))
    val = (np.trace(A) * B + np.trace(B) * A
           - 0.5 * (np.trace(A) * np.trace(B) - pauli_sum) * np.eye(2))
    direct = A @ B + B @ A
    diff = float(np.max(np.abs(val - direct)))
    if diff > cfg.zero_threshold:
        raise IdentityError(f"2x2 anticommutator trace identity violated: {diff:.3e}")
    return val


def embedded_trace(p: OperatorPoly) -> complex:
    """Trace functional sum_k <0| c_k p cd_k |0>, evaluated symbolically.

    For p = hat(A) this returns tr(A); words of degree > 2 contribute
    nothing (only one creator is available on each side of the vacuum).
    """
    n = p.n_modes
    total = 0j
    for k in range(1, n + 1):
        q = OperatorPoly.annihilate(k, n) * p * OperatorPoly.create(k, n)
        total += q.identity_coefficient()
    return total


def pair_create(b) -> OperatorPoly:
    """Pure-creator quadratic form: sum_{j<k} (b_jk - b_kj) cd_j cd_k.

    Only the antisymmetric part of B survives since cd_j^2 = 0 and the
    creators anticommute.
    """
    B = _as_square(b, "B")
    n = B.shape[0]
    terms = {}
    for j in range(n):
        for k in range(j + 1, n):
            coeff = B[j, k] - B[k, j]
            if coeff != 0:
                terms[((1 << j) | (1 << k), 0)] = coeff
    return OperatorPoly(n, terms)


def pair_annihilate(d) -> OperatorPoly:
    """Pure-annihilator quadratic form: sum_{j<k} (d_jk - d_kj) c_j c_k."""
    D = _as_square(d, "D")
    n = D.shape[0]
    terms = {}
    for j in range(n):
        for k in range(j + 1, n):
            coeff = D[j, k] - D[k, j]
            if coeff != 0:
                terms[(0, (1 << j) | (1 << k))] = coeff
    return OperatorPoly(n, terms)


def is_idempotent(p: OperatorPoly, tol: ToleranceConfig | None = None) -> bool:
    """Whether p*p = p within the tolerance."""
    return poly_equal(p * p, p, tol)


def is_selfadjoint(p: OperatorPoly, tol: ToleranceConfig | None = None) -> bool:
    """Whether adjoint(p) = p within the tolerance."""
    return poly_equal(p.adjoint(), p, tol)


def matrix_rank(a, rel_tol: float = 1e-10) -> int:
    """Rank via singular values above rel_tol * sigma_max."""
    m = np.asarray(a, dtype=complex)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))
