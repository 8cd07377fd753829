"""Symbolic algebra of fermionic creation/annihilation operators.

Operators are finite complex combinations of normal-ordered monomials

    cd_{j1}..cd_{jp} c_{k1}..c_{kq}      (j1 < .. < jp,  k1 < .. < kq)

over ``n`` modes.  Rewriting an arbitrary product into this form uses the
canonical anticommutation relations

    c_j cd_k + cd_k c_j = delta_jk I,
    c_j c_k + c_k c_j = 0,
    cd_j cd_k + cd_k cd_j = 0,

which force each index to appear at most once per side (``c_j**2 = 0``).
The canonical form is unique, so structural equality of the term maps is
operator equality (up to a coefficient tolerance).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from fermihat import kernels

#: Coefficients with magnitude below this are dropped from canonical forms.
DEFAULT_ZERO_THRESHOLD = 1e-12

#: Bitmask encoding supports at most this many modes.
MAX_MODES = 63


class ModeMismatchError(ValueError):
    """Operands declare different numbers of modes."""


def _check_same_modes(a, b) -> None:
    if a.n_modes != b.n_modes:
        raise ModeMismatchError(f"mode counts differ: {a.n_modes} != {b.n_modes}")


@dataclass(frozen=True)
class ToleranceConfig:
    """Coefficient comparison tolerance.

    ``absolute`` compares raw coefficient differences against
    ``zero_threshold``; ``relative`` scales the threshold by the largest
    coefficient magnitude of the operands.
    """

    zero_threshold: float = DEFAULT_ZERO_THRESHOLD
    mode: str = "absolute"

    def __post_init__(self):
        if not 0.0 <= self.zero_threshold < 1.0:
            raise ValueError(f"zero_threshold must be in [0, 1), got {self.zero_threshold}")
        if self.mode not in ("absolute", "relative"):
            raise ValueError(f"mode must be 'absolute' or 'relative', got {self.mode!r}")


DEFAULT_TOLERANCE = ToleranceConfig()


def _validate_mask(mask: int, n_modes: int, label: str) -> None:
    if mask < 0 or mask >> n_modes:
        raise ValueError(f"{label} mask {mask:#x} uses modes outside 1..{n_modes}")


def _indices(mask: int) -> tuple[int, ...]:
    out = []
    rest = mask
    while rest:
        low = rest & -rest
        out.append(low.bit_length())
        rest ^= low
    return tuple(out)


def _mask_of(indices: Iterable[int], n_modes: int, label: str) -> int:
    mask = 0
    for j in indices:
        if not 1 <= j <= n_modes:
            raise ValueError(f"{label} index {j} outside 1..{n_modes}")
        bit = 1 << (j - 1)
        if mask & bit:
            raise ValueError(f"repeated {label} index {j} (operator squares to zero)")
        mask |= bit
    return mask


@dataclass(frozen=True)
class FermiMonomial:
    """A normal-ordered word, encoded as creator/annihilator bitmasks.

    Bit ``j-1`` of ``cmask`` (``amask``) marks a creation (annihilation)
    operator on mode ``j``; the word is all creators, indices ascending,
    followed by all annihilators, indices ascending.  The empty word is the
    identity operator.
    """

    cmask: int
    amask: int
    n_modes: int

    def __post_init__(self):
        if not 1 <= self.n_modes <= MAX_MODES:
            raise ValueError(f"n_modes must be in 1..{MAX_MODES}, got {self.n_modes}")
        _validate_mask(self.cmask, self.n_modes, "creator")
        _validate_mask(self.amask, self.n_modes, "annihilator")

    @classmethod
    def from_indices(cls, creators: Iterable[int], annihilators: Iterable[int],
                     n_modes: int) -> "FermiMonomial":
        return cls(_mask_of(creators, n_modes, "creator"),
                   _mask_of(annihilators, n_modes, "annihilator"), n_modes)

    @classmethod
    def identity(cls, n_modes: int) -> "FermiMonomial":
        return cls(0, 0, n_modes)

    @property
    def creators(self) -> tuple[int, ...]:
        return _indices(self.cmask)

    @property
    def annihilators(self) -> tuple[int, ...]:
        return _indices(self.amask)

    @property
    def degree(self) -> int:
        """Word length (number of ladder operators)."""
        return self.cmask.bit_count() + self.amask.bit_count()

    def word(self) -> str:
        if self.cmask == 0 and self.amask == 0:
            return "I"
        parts = [f"cd{j}" for j in self.creators] + [f"c{k}" for k in self.annihilators]
        return ".".join(parts)

    def __str__(self):
        return self.word()


def _format_coeff(z: complex) -> str:
    # 17 significant digits so printing round-trips through the parser;
    # adding 0.0 normalizes negative zeros.
    return f"({z.real + 0.0:.17g}{z.imag + 0.0:+.17g}i)"


class OperatorPoly:
    """Complex-linear combination of normal-ordered monomials.

    The term map is canonical: one entry per monomial, coefficients above the
    zero threshold, all monomials over the same ``n_modes``.  Instances are
    immutable; all arithmetic returns new values.
    """

    __slots__ = ("_terms", "n_modes")

    def __init__(self, n_modes: int, terms=None, *,
                 zero_threshold: float = DEFAULT_ZERO_THRESHOLD):
        if not 1 <= n_modes <= MAX_MODES:
            raise ValueError(f"n_modes must be in 1..{MAX_MODES}, got {n_modes}")
        clean: dict[tuple[int, int], complex] = {}
        if terms:
            for (cmask, amask), coeff in terms.items():
                z = complex(coeff)
                if abs(z) < zero_threshold or z == 0:
                    continue
                _validate_mask(cmask, n_modes, "creator")
                _validate_mask(amask, n_modes, "annihilator")
                clean[(cmask, amask)] = z
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "n_modes", n_modes)

    def __setattr__(self, name, value):
        raise AttributeError("OperatorPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n_modes: int) -> "OperatorPoly":
        return cls(n_modes)

    @classmethod
    def identity(cls, n_modes: int) -> "OperatorPoly":
        return cls(n_modes, {(0, 0): 1.0})

    @classmethod
    def create(cls, j: int, n_modes: int) -> "OperatorPoly":
        """The single creation operator cd_j."""
        return cls.from_monomial(FermiMonomial.from_indices([j], [], n_modes))

    @classmethod
    def annihilate(cls, j: int, n_modes: int) -> "OperatorPoly":
        """The single annihilation operator c_j."""
        return cls.from_monomial(FermiMonomial.from_indices([], [j], n_modes))

    @classmethod
    def from_monomial(cls, mono: FermiMonomial, coeff: complex = 1.0) -> "OperatorPoly":
        return cls(mono.n_modes, {(mono.cmask, mono.amask): coeff})

    # -- inspection --------------------------------------------------------

    def items(self) -> list[tuple[FermiMonomial, complex]]:
        """Terms in canonical print order: (degree, cmask, amask)."""
        keys = sorted(self._terms, key=lambda k: (k[0].bit_count() + k[1].bit_count(),
                                                  k[0], k[1]))
        return [(FermiMonomial(c, a, self.n_modes), self._terms[(c, a)]) for c, a in keys]

    def mask_items(self) -> Iterator[tuple[tuple[int, int], complex]]:
        """Raw (cmask, amask) -> coeff pairs, unsorted."""
        return iter(self._terms.items())

    def coefficient(self, mono: FermiMonomial) -> complex:
        return self._terms.get((mono.cmask, mono.amask), 0j)

    def identity_coefficient(self) -> complex:
        """Coefficient of the identity word (the vacuum part)."""
        return self._terms.get((0, 0), 0j)

    def is_zero(self) -> bool:
        return not self._terms

    def term_count(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Longest word length appearing; 0 for the zero operator."""
        if not self._terms:
            return 0
        return max(c.bit_count() + a.bit_count() for c, a in self._terms)

    def max_abs_coeff(self) -> float:
        return max((abs(z) for z in self._terms.values()), default=0.0)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        _check_same_modes(self, other)
        merged = dict(self._terms)
        for key, z in other._terms.items():
            merged[key] = merged.get(key, 0j) + z
        return OperatorPoly(self.n_modes, merged)

    def __sub__(self, other):
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return OperatorPoly(self.n_modes, {k: -z for k, z in self._terms.items()},
                            zero_threshold=0.0)

    def __mul__(self, other):
        if isinstance(other, OperatorPoly):
            _check_same_modes(self, other)
            acc = kernels.multiply_terms(list(self._terms.items()),
                                         list(other._terms.items()))
            return OperatorPoly(self.n_modes, acc)
        if isinstance(other, (int, float, complex)):
            return self._scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self._scaled(other)
        return NotImplemented

    def _scaled(self, alpha: complex) -> "OperatorPoly":
        z = complex(alpha)
        if z == 0:
            return OperatorPoly.zero(self.n_modes)
        return OperatorPoly(self.n_modes, {k: z * v for k, v in self._terms.items()})

    def adjoint(self) -> "OperatorPoly":
        """Hermitian adjoint: conjugate coefficients, dagger-reverse words.

        Reversing a descending word back to ascending order costs the
        in-word permutation sign (-1)**(m*(m-1)/2) per side.
        """
        out = {}
        for (cmask, amask), z in self._terms.items():
            p = cmask.bit_count()
            q = amask.bit_count()
            sign = -1 if ((p * (p - 1) // 2) + (q * (q - 1) // 2)) & 1 else 1
            out[(amask, cmask)] = sign * z.conjugate()
        return OperatorPoly(self.n_modes, out, zero_threshold=0.0)

    # -- comparison / printing --------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        return self.n_modes == other.n_modes and self._terms == other._terms

    __hash__ = None

    def __str__(self):
        entries = self.items()
        if not entries:
            return "0"
        return " + ".join(f"{_format_coeff(z)}*{mono.word()}" for mono, z in entries)

    def __repr__(self):
        return f"OperatorPoly(n_modes={self.n_modes}, terms={len(self._terms)}): {self}"


# -- free-function surface --------------------------------------------------

def monomial_mul(a: FermiMonomial, b: FermiMonomial) -> OperatorPoly:
    """Normal-ordered expansion of the word (a followed by b)."""
    _check_same_modes(a, b)
    terms = {}
    for cmask, amask, sign in kernels.normal_order_product(a.cmask, a.amask,
                                                           b.cmask, b.amask):
        terms[(cmask, amask)] = float(sign)
    return OperatorPoly(a.n_modes, terms)


def poly_add(p: OperatorPoly, q: OperatorPoly) -> OperatorPoly:
    return p + q


def poly_scale(alpha: complex, p: OperatorPoly) -> OperatorPoly:
    return p * alpha


def poly_mul(p: OperatorPoly, q: OperatorPoly) -> OperatorPoly:
    return p * q


def adjoint(p: OperatorPoly) -> OperatorPoly:
    return p.adjoint()


def commutator(p: OperatorPoly, q: OperatorPoly) -> OperatorPoly:
    """[p, q] = pq - qp in canonical form."""
    return p * q - q * p


def anticommutator(p: OperatorPoly, q: OperatorPoly) -> OperatorPoly:
    """[p, q]_+ = pq + qp in canonical form."""
    return p * q + q * p


def max_coeff_diff(p: OperatorPoly, q: OperatorPoly) -> float:
    """Largest coefficient difference between two canonical forms."""
    _check_same_modes(p, q)
    keys = set(p._terms) | set(q._terms)
    return max((abs(p._terms.get(k, 0j) - q._terms.get(k, 0j)) for k in keys),
               default=0.0)


def poly_equal(p: OperatorPoly, q: OperatorPoly,
               tol: ToleranceConfig | None = None) -> bool:
    """True iff the canonical forms agree within the tolerance."""
    cfg = tol if tol is not None else DEFAULT_TOLERANCE
    diff = max_coeff_diff(p, q)
    if cfg.mode == "relative":
        scale = max(p.max_abs_coeff(), q.max_abs_coeff())
        return diff <= cfg.zero_threshold * scale if scale > 0 else True
    return diff <= cfg.zero_threshold
