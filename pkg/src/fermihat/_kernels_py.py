"""Pure-Python normal-ordering kernels.

Monomials are encoded as bitmask pairs ``(cmask, amask)``: bit ``j-1`` of
``cmask`` marks a creation operator on mode ``j``, bit ``j-1`` of ``amask``
an annihilation operator, and the pair denotes the word with all creators
(indices ascending) on the left of all annihilators (indices ascending).

This module must stay semantically *and numerically* in lockstep with the
compiled twin ``_kernels_cy.pyx``: same expansion order, same accumulation
order, so both backends produce bit-identical floating point results.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def _merge_sign(p: int, q: int) -> int:
    # Parity of splicing two ascending words together: every index of q must
    # jump over the indices of p above it.
    inv = 0
    rest = q
    while rest:
        low = rest & -rest
        inv += (p >> low.bit_length()).bit_count()
        rest ^= low
    return -1 if inv & 1 else 1


def _middle_terms(a_mask: int, c_mask: int) -> list[tuple[int, int, int]]:
    # Normal-order the inner word c[a_mask] * cd[c_mask].  Each annihilator,
    # taken innermost (largest index) first, either contracts against the
    # matching creator (sign: creators below it) or anticommutes past the
    # whole remaining creator word (sign: creator count).  Passed annihilators
    # land left of previously placed ones, so the right word stays ascending
    # without extra signs.
    terms = [(c_mask, 0, 1)]
    rest = a_mask
    while rest:
        bit = 1 << (rest.bit_length() - 1)
        rest ^= bit
        nxt = []
        for s, t, sg in terms:
            nxt.append((s, t | bit, -sg if s.bit_count() & 1 else sg))
            if s & bit:
                nxt.append((s ^ bit, t, -sg if (s & (bit - 1)).bit_count() & 1 else sg))
        terms = nxt
    return terms


def normal_order_product(c1: int, a1: int, c2: int, a2: int) -> list[tuple[int, int, int]]:
    """Normal-ordered expansion of ``cd[c1].c[a1] * cd[c2].c[a2]``.

    Returns ``(cmask, amask, sign)`` triples; the empty list is the zero
    operator (a repeated creator or annihilator appeared).
    """
    out = []
    for s, t, sg in _middle_terms(a1, c2):
        if (c1 & s) or (t & a2):
            continue
        out.append((c1 | s, t | a2, sg * _merge_sign(c1, s) * _merge_sign(t, a2)))
    return out


def multiply_terms(items_a, items_b) -> dict:
    """Bilinear product of two canonical term sequences.

    ``items_a``/``items_b`` are sequences of ``((cmask, amask), coeff)``
    pairs; the result is an accumulated ``{(cmask, amask): coeff}`` dict
    (not pruned - the caller owns the zero threshold).
    """
    acc: dict = {}
    for key_a, xa in items_a:
        ca, aa = key_a
        for key_b, xb in items_b:
            cb, ab = key_b
            x = xa * xb
            for s, t, sg in _middle_terms(aa, cb):
                if (ca & s) or (t & ab):
                    continue
                if sg * _merge_sign(ca, s) * _merge_sign(t, ab) < 0:
                    v = -x
                else:
                    v = x
                key = (ca | s, t | ab)
                prev = acc.get(key)
                acc[key] = v if prev is None else prev + v
    return acc


def apply_word(cmask: int, amask: int, n_modes: int):
    """Apply ``cd[cmask].c[amask]`` to every occupation basis state.

    Basis state ``s`` has bit ``j-1`` set iff mode ``j`` is occupied; an
    operator on mode ``j`` picks up the parity of occupied modes below ``j``.
    Returns ``(targets, signs)`` arrays of length ``2**n_modes``; target -1
    (with sign 1) marks states killed by the word.
    """
    dim = 1 << n_modes
    states = np.arange(dim, dtype=np.int64)
    after = states & ~np.int64(amask)
    killed = ((states & amask) != amask) | ((after & cmask) != 0)

    # Annihilators fire innermost (largest) first, so each sees the original
    # occupation below its mode; creators likewise only see ``after``.
    parity = np.zeros(dim, dtype=np.int64)
    for mask, word in ((amask, states), (cmask, after)):
        rest = mask
        while rest:
            low = rest & -rest
            parity += np.bitwise_count(word & np.int64(low - 1)).astype(np.int64)
            rest ^= low

    targets = np.where(killed, np.int64(-1), after | np.int64(cmask))
    signs = np.where(killed, 1, 1 - 2 * (parity & 1)).astype(np.int8)
    return targets, signs
