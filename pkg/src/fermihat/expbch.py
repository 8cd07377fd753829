"""Matrix exponential/logarithm, the exp(hat(C)) unitaries, and the
truncated Baker-Campbell-Hausdorff series.

Since the embedding is a commutator homomorphism, log(e^X e^Y) embeds term
by term: exp(hat(Z)) = exp(hat(X)) exp(hat(Y)) on the Fock space, where
Z = log(e^X e^Y).  ``bch_truncated`` evaluates the series over weighted
right-nested repeated commutators and must converge to the numeric
logarithm inside the norm guard.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np
import scipy.linalg

from fermihat.algebra import OperatorPoly
from fermihat.embedding import IdentityError, _as_square, hat, matrix_rank
from fermihat.fock import poly_to_fock

MAX_BCH_DEGREE = 8
BCH_NORM_GUARD = 0.5


class MatrixLogError(ArithmeticError):
    """Principal logarithm not computable under the stated guards."""


def matrix_exp(a) -> np.ndarray:
    """exp(A) for a square complex matrix (scaling-and-squaring Pade)."""
    A = _as_square(a, "A")
    out = scipy.linalg.expm(A)
    if not np.all(np.isfinite(out)):
        raise OverflowError("matrix exponential overflowed")
    return out


def matrix_log(v, *, cond_limit: float = 1e8, roundtrip_tol: float = 1e-9) -> np.ndarray:
    """Principal logarithm via eigendecomposition.

    Requires a diagonalizable input with a reasonably conditioned
    eigenvector basis and no eigenvalue on the closed negative real axis;
    the exp(log V) = V round trip is verified before returning.
    """
    V = _as_square(v, "V")
    w, vecs = scipy.linalg.eig(V)
    cond = np.linalg.cond(vecs)
    if not np.isfinite(cond) or cond > cond_limit:
        raise MatrixLogError(f"eigenvector basis condition {cond:.3e} exceeds "
                             f"{cond_limit:.1e}; matrix treated as non-diagonalizable")
    scale = np.max(np.abs(w))
    on_branch_cut = (np.abs(w) <= 1e-300) | ((w.real <= 0) & (np.abs(w.imag) <= 1e-12 * max(scale, 1.0)))
    if np.any(on_branch_cut):
        raise MatrixLogError("eigenvalue on the closed negative real axis; "
                             "principal logarithm undefined")
    out = vecs @ np.diag(np.log(w)) @ np.linalg.inv(vecs)
    err = float(np.max(np.abs(matrix_exp(out) - V)))
    if err > roundtrip_tol * max(1.0, float(np.max(np.abs(V)))):
        raise MatrixLogError(f"exp(log V) round trip failed: residual {err:.3e}")
    return out


def u_hat(c) -> np.ndarray:
    """Fock-space exponential exp(hat(C)); unitary for skew-hermitian C."""
    C = _as_square(c, "C")
    return matrix_exp(poly_to_fock(hat(C)))


def hat_exp_rank1(c, tol: float = 1e-9) -> OperatorPoly:
    """Closed form of exp(hat(C)) for rank(C) <= 1: I + hat(e^C - I_n).

    For rank <= 1 all 2x2 minors of C vanish, so hat(C)^k = hat(C^k) and
    the power series collapses to the embedded matrix exponential (with the
    operator identity in place of hat(I_n)).  The result is verified
    against exp(hat(C)) on the Fock space.
    """
    C = _as_square(c, "C")
    r = matrix_rank(C)
    if r > 1:
        raise ValueError(f"rank(C) = {r}; closed form requires rank <= 1")
    n = C.shape[0]
    poly = OperatorPoly.identity(n) + hat(matrix_exp(C) - np.eye(n))
    err = float(np.max(np.abs(poly_to_fock(poly) - u_hat(C))))
    if err > tol:
        raise IdentityError(f"rank-1 exponential identity failed: {err:.3e}")
    return poly


@dataclass(frozen=True)
class BchTermIndex:
    """One series term: blocks ((p_1, q_1), .., (p_k, q_k)), each p_i+q_i > 0."""

    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("at least one block is required")
        for p_i, q_i in self.blocks:
            if p_i < 0 or q_i < 0 or p_i + q_i == 0:
                raise ValueError(f"invalid block ({p_i}, {q_i}): need p_i, q_i >= 0 "
                                 "and p_i + q_i > 0")

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def p(self) -> int:
        return sum(b[0] for b in self.blocks)

    @property
    def q(self) -> int:
        return sum(b[1] for b in self.blocks)

    @property
    def degree(self) -> int:
        return self.p + self.q

    def generator_sequence(self) -> tuple[bool, ...]:
        """Word X^p1 Y^q1 .. X^pk Y^qk as booleans (True = X)."""
        seq: list[bool] = []
        for p_i, q_i in self.blocks:
            seq.extend([True] * p_i)
            seq.extend([False] * q_i)
        return tuple(seq)

    def coefficient(self) -> float:
        denom = self.degree * self.k
        for p_i, q_i in self.blocks:
            denom *= factorial(p_i) * factorial(q_i)
        return (-1.0 if self.k % 2 == 0 else 1.0) / denom


def repeated_commutator(x, y, index: BchTermIndex) -> np.ndarray:
    """Right-nested repeated commutator [g_1, [g_2, .. [g_{r-1}, g_r]..]].

    The generator word is X repeated p_1 times, Y q_1 times, and so on;
    a single-letter word returns the generator itself.
    """
    X = _as_square(x, "X")
    Y = _as_square(y, "Y")
    if X.shape != Y.shape:
        raise ValueError(f"shape mismatch: {X.shape} vs {Y.shape}")
    seq = index.generator_sequence()
    acc = X if seq[-1] else Y
    for is_x in reversed(seq[:-1]):
        g = X if is_x else Y
        acc = g @ acc - acc @ g
    return acc


def bch_term_indices(degree: int):
    """All BchTermIndex values of the given total degree (deterministic order)."""

    def rec(remaining: int):
        if remaining == 0:
            yield ()
            return
        for size in range(1, remaining + 1):
            for p_i in range(size + 1):
                head = (p_i, size - p_i)
                for tail in rec(remaining - size):
                    yield (head,) + tail

    for blocks in rec(degree):
        yield BchTermIndex(blocks)


def _nested_value(seq: tuple[bool, ...], X: np.ndarray, Y: np.ndarray, cache: dict):
    val = cache.get(seq)
    if val is None:
        if len(seq) == 1:
            val = X if seq[0] else Y
        else:
            rest = _nested_value(seq[1:], X, Y, cache)
            g = X if seq[0] else Y
            val = g @ rest - rest @ g
        cache[seq] = val
    return val


def bch_truncated(x, y, max_degree: int) -> np.ndarray:
    """Series for log(e^X e^Y) truncated at total degree ``max_degree``."""
    X = _as_square(x, "X")
    Y = _as_square(y, "Y")
    if X.shape != Y.shape:
        raise ValueError(f"shape mismatch: {X.shape} vs {Y.shape}")
    if not 1 <= max_degree <= MAX_BCH_DEGREE:
        raise ValueError(f"max_degree must be in 1..{MAX_BCH_DEGREE}, got {max_degree}")
    norm_sum = np.linalg.norm(X, 2) + np.linalg.norm(Y, 2)
    if norm_sum >= BCH_NORM_GUARD:
        raise ValueError(f"||X|| + ||Y|| = {norm_sum:.3f} outside the convergence "
                         f"guard {BCH_NORM_GUARD}")
    total = np.zeros_like(X)
    cache: dict = {}
    for degree in range(1, max_degree + 1):
        for index in bch_term_indices(degree):
            seq = index.generator_sequence()
            if len(seq) >= 2 and seq[-1] == seq[-2]:
                continue  # innermost [G, G] = 0
            total = total + index.coefficient() * _nested_value(seq, X, Y, cache)
    return total


@dataclass(frozen=True)
class BchIdentityReport:
    """Outcome of the embedded-logarithm identity check."""

    z: np.ndarray
    fock_error: float
    truncation_errors: tuple[float, ...]
    truncation_bound: float
    tolerance: float
    passed: bool


def bch_hat_identity(x, y, max_degree: int = 6, tol: float = 1e-9,
                     bound_coeff: float = 10.0) -> BchIdentityReport:
    """Check hat(log(e^X e^Y)) exponentiates to exp(hat(X)) exp(hat(Y)).

    Also records the truncation error of ``bch_truncated`` against the
    numeric logarithm for each degree up to ``max_degree`` and compares the
    final one with bound_coeff * (||X|| + ||Y||)**(max_degree + 1).
    """
    X = _as_square(x, "X")
    Y = _as_square(y, "Y")
    z = matrix_log(matrix_exp(X) @ matrix_exp(Y))
    lhs = matrix_exp(poly_to_fock(hat(z)))
    rhs = matrix_exp(poly_to_fock(hat(X))) @ matrix_exp(poly_to_fock(hat(Y)))
    fock_error = float(np.max(np.abs(lhs - rhs)))
    errors = tuple(float(np.linalg.norm(bch_truncated(X, Y, d) - z, 2))
                   for d in range(1, max_degree + 1))
    norm_sum = float(np.linalg.norm(X, 2) + np.linalg.norm(Y, 2))
    bound = bound_coeff * norm_sum ** (max_degree + 1)
    passed = fock_error <= tol and errors[-1] <= bound
    return BchIdentityReport(z, fock_error, errors, bound, tol, passed)
