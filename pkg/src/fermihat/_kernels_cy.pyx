# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled normal-ordering kernels; twin of ``_kernels_py``.

Expansion and accumulation order are kept identical to the pure-Python
implementation so both backends produce bit-identical results.  Bitmasks are
limited to 63 modes; the contraction buffers below cover the 12-mode Fock
guard (2**12 branches).
"""

from libc.stdint cimport int64_t, int8_t

import numpy as np

BACKEND_NAME = "cython"

ctypedef unsigned long long u64


cdef inline int _popcount(u64 x) noexcept nogil:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef inline int _bit_length(u64 x) noexcept nogil:
    cdef int n = 0
    while x:
        x >>= 1
        n += 1
    return n


cdef inline int _merge_sign(u64 p, u64 q) noexcept nogil:
    cdef int inv = 0
    cdef u64 low
    while q:
        low = q & (~q + 1)
        inv += _popcount(p >> _bit_length(low))
        q ^= low
    return -1 if inv & 1 else 1


cdef int _middle(u64 a_mask, u64 c_mask,
                 u64* s_out, u64* t_out, int* g_out,
                 u64* s_tmp, u64* t_tmp, int* g_tmp) noexcept nogil:
    # Normal-order c[a_mask] * cd[c_mask]; see _kernels_py._middle_terms.
    cdef int cnt = 1, ncnt, i, sg
    cdef u64 bit, rest = a_mask, s, t
    s_out[0] = c_mask
    t_out[0] = 0
    g_out[0] = 1
    while rest:
        bit = (<u64>1) << (_bit_length(rest) - 1)
        rest ^= bit
        ncnt = 0
        for i in range(cnt):
            s = s_out[i]
            t = t_out[i]
            sg = g_out[i]
            s_tmp[ncnt] = s
            t_tmp[ncnt] = t | bit
            g_tmp[ncnt] = -sg if _popcount(s) & 1 else sg
            ncnt += 1
            if s & bit:
                s_tmp[ncnt] = s ^ bit
                t_tmp[ncnt] = t
                g_tmp[ncnt] = -sg if _popcount(s & (bit - 1)) & 1 else sg
                ncnt += 1
        for i in range(ncnt):
            s_out[i] = s_tmp[i]
            t_out[i] = t_tmp[i]
            g_out[i] = g_tmp[i]
        cnt = ncnt
    return cnt


def normal_order_product(long long c1, long long a1, long long c2, long long a2):
    """Normal-ordered expansion of ``cd[c1].c[a1] * cd[c2].c[a2]``."""
    cdef u64 sbuf[4096]
    cdef u64 tbuf[4096]
    cdef int gbuf[4096]
    cdef u64 stmp[4096]
    cdef u64 ttmp[4096]
    cdef int gtmp[4096]
    cdef u64 uc1 = <u64>c1, ua1 = <u64>a1, uc2 = <u64>c2, ua2 = <u64>a2
    cdef u64 s, t
    cdef int cnt, i
    cnt = _middle(ua1, uc2, sbuf, tbuf, gbuf, stmp, ttmp, gtmp)
    out = []
    for i in range(cnt):
        s = sbuf[i]
        t = tbuf[i]
        if (uc1 & s) or (t & ua2):
            continue
        out.append((<object>(uc1 | s), <object>(t | ua2),
                    gbuf[i] * _merge_sign(uc1, s) * _merge_sign(t, ua2)))
    return out


def multiply_terms(items_a, items_b):
    """Bilinear product of two canonical term sequences, as in _kernels_py."""
    cdef u64 sbuf[4096]
    cdef u64 tbuf[4096]
    cdef int gbuf[4096]
    cdef u64 stmp[4096]
    cdef u64 ttmp[4096]
    cdef int gtmp[4096]
    cdef dict acc = {}
    cdef list la = list(items_a)
    cdef list lb = list(items_b)
    cdef u64 ca, aa, cb, ab, s, t
    cdef double complex xa, xb, x, v
    cdef int cnt, i, ia, ib, sg
    cdef tuple key_a, key_b, key
    for ia in range(len(la)):
        key_a = <tuple>(<tuple>la[ia])[0]
        xa = (<tuple>la[ia])[1]
        ca = <u64>key_a[0]
        aa = <u64>key_a[1]
        for ib in range(len(lb)):
            key_b = <tuple>(<tuple>lb[ib])[0]
            xb = (<tuple>lb[ib])[1]
            cb = <u64>key_b[0]
            ab = <u64>key_b[1]
            x = xa * xb
            cnt = _middle(aa, cb, sbuf, tbuf, gbuf, stmp, ttmp, gtmp)
            for i in range(cnt):
                s = sbuf[i]
                t = tbuf[i]
                if (ca & s) or (t & ab):
                    continue
                sg = gbuf[i] * _merge_sign(ca, s) * _merge_sign(t, ab)
                v = -x if sg < 0 else x
                key = (<object>(ca | s), <object>(t | ab))
                prev = acc.get(key)
                if prev is None:
                    acc[key] = v
                else:
                    acc[key] = <double complex>prev + v
    return acc


def apply_word(long long cmask, long long amask, int n_modes):
    """Apply ``cd[cmask].c[amask]`` to every occupation basis state."""
    cdef long long dim = (<long long>1) << n_modes
    targets = np.empty(dim, dtype=np.int64)
    signs = np.ones(dim, dtype=np.int8)
    cdef int64_t[::1] tv = targets
    cdef int8_t[::1] sv = signs
    cdef u64 uc = <u64>cmask, ua = <u64>amask
    cdef u64 s, after, rest, low
    cdef long long i
    cdef int parity
    for i in range(dim):
        s = <u64>i
        after = s & ~ua
        if ((s & ua) != ua) or (after & uc):
            tv[i] = -1
            sv[i] = 1
            continue
        parity = 0
        rest = ua
        while rest:
            low = rest & (~rest + 1)
            parity += _popcount(s & (low - 1))
            rest ^= low
        rest = uc
        while rest:
            low = rest & (~rest + 1)
            parity += _popcount(after & (low - 1))
            rest ^= low
        tv[i] = <int64_t>(after | uc)
        sv[i] = -1 if parity & 1 else 1
    return targets, signs
