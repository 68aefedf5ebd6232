# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of the pure-Python term kernel.

Same contract as _terms_py: dict-of-monomial-key arithmetic with opaque
coefficient objects.  The exponent/mask bookkeeping runs on C integers; the
two implementations must stay behaviorally identical (see the parity tests).
"""

from math import comb

from ._exchange import EXCHANGE

cdef int ETA_SHIFT = 2
cdef int XI_MASK = 0b0011


cdef inline int _popcount(int x):
    cdef int c = 0
    while x:
        c += x & 1
        x >>= 1
    return c


cpdef int merge_sign(int m1, int m2):
    """Koszul sign for merging two ordered Grassmann blocks; 0 on overlap."""
    if m1 & m2:
        return 0
    cdef int swaps = 0
    cdef int j
    for j in range(4):
        if (m2 >> j) & 1:
            swaps += _popcount(m1 >> (j + 1))
    return -1 if swaps & 1 else 1


def add_terms(dict a, dict b):
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    for key, coeff in b.items():
        if key in out:
            nv = out[key] + coeff
            if nv:
                out[key] = nv
            else:
                del out[key]
        else:
            out[key] = coeff
    return out


def neg_terms(dict a):
    cdef dict out = {}
    for key, coeff in a.items():
        out[key] = -coeff
    return out


def scale_terms(dict a, factor):
    if not factor:
        return {}
    cdef dict out = {}
    for key, coeff in a.items():
        nv = coeff * factor
        if nv:
            out[key] = nv
    return out


def mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef int t1, u1, m1, b1, h1, t2, u2, m2, b2, h2, sign
    cdef tuple k1, k2, key
    for k1, c1 in a.items():
        t1 = k1[0]; u1 = k1[1]; m1 = k1[2]; b1 = k1[3]; h1 = k1[4]
        for k2, c2 in b.items():
            m2 = k2[2]
            if m1 & m2:
                continue
            t2 = k2[0]; u2 = k2[1]; b2 = k2[3]; h2 = k2[4]
            sign = merge_sign(m1, m2)
            key = (t1 + t2, u1 + u2, m1 | m2, b1 + b2, h1 + h2)
            c = c1 * c2
            if sign < 0:
                c = -c
            if key in out:
                nv = out[key] + c
                if nv:
                    out[key] = nv
                else:
                    del out[key]
            elif c:
                out[key] = c
    return out


def derive_terms(dict a, int var):
    """Partial derivative; var 0 = t, 1 = tau, 2..5 = Grassmann bits 0..3."""
    cdef dict out = {}
    cdef int t, u, m, be, h, bit, flag, below
    cdef tuple key
    if var == 0:
        for key, c in a.items():
            t = key[0]
            if t:
                out[(t - 1, key[1], key[2], key[3], key[4])] = c * t
    elif var == 1:
        for key, c in a.items():
            u = key[1]
            if u:
                out[(key[0], u - 1, key[2], key[3], key[4])] = c * u
    else:
        bit = var - 2
        flag = 1 << bit
        below = flag - 1
        for key, c in a.items():
            m = key[2]
            if m & flag:
                if _popcount(m & below) & 1:
                    c = -c
                out[(key[0], key[1], m & ~flag, key[3], key[4])] = c
    return out


def parity_split(dict a):
    cdef dict even = {}
    cdef dict odd = {}
    cdef tuple key
    for key, coeff in a.items():
        if _popcount(key[2]) & 1:
            odd[key] = coeff
        else:
            even[key] = coeff
    return even, odd


def poisson_terms(dict a, dict b):
    """Poisson superbracket; see the pure twin for the formula."""
    if not a or not b:
        return {}
    cdef list db = [derive_terms(b, v) for v in range(6)]
    cdef dict out = {}
    cdef dict part, res, gr
    cdef int i, sign
    parts = parity_split(a)
    for sign in (-1, 1):
        part = parts[0] if sign < 0 else parts[1]
        if not part:
            continue
        res = add_terms(
            mul_terms(derive_terms(part, 1), db[0]),
            neg_terms(mul_terms(derive_terms(part, 0), db[1])),
        )
        gr = {}
        for i in range(2):
            gr = add_terms(gr, mul_terms(derive_terms(part, 2 + i), db[4 + i]))
            gr = add_terms(gr, mul_terms(derive_terms(part, 4 + i), db[2 + i]))
        if sign < 0:
            gr = neg_terms(gr)
        out = add_terms(out, add_terms(res, gr))
    return out


def moyal_terms(dict a, dict b):
    """Normal-ordered star product; see the pure twin for the conventions."""
    cdef dict out = {}
    cdef dict exchange = EXCHANGE
    cdef int t1, u1, m1, b1, h1, t2, u2, m2, b2, h2
    cdef int s1, e1, s2, e2, xi_out, eta_out, hp, exc, sg, n, i, mask
    cdef long long factor
    cdef tuple k1, k2, key, entry
    for k1, c1 in a.items():
        t1 = k1[0]; u1 = k1[1]; m1 = k1[2]; b1 = k1[3]; h1 = k1[4]
        if u1 < 0:
            raise ValueError("star product needs nonnegative tau exponents")
        s1 = m1 & XI_MASK
        e1 = m1 >> ETA_SHIFT
        for k2, c2 in b.items():
            t2 = k2[0]; u2 = k2[1]; m2 = k2[2]; b2 = k2[3]; h2 = k2[4]
            s2 = m2 & XI_MASK
            e2 = m2 >> ETA_SHIFT
            c0 = c1 * c2
            for entry in exchange[(e1, s2)]:
                xi_out = entry[0]; eta_out = entry[1]; hp = entry[2]; exc = entry[3]
                if s1 & xi_out or e2 & eta_out:
                    continue
                sg = merge_sign(s1, xi_out) * merge_sign(
                    eta_out << ETA_SHIFT, e2 << ETA_SHIFT
                )
                mask = (s1 | xi_out) | ((eta_out | e2) << ETA_SHIFT)
                for n in range(u1 + 1):
                    factor = comb(u1, n)
                    for i in range(n):
                        factor *= t2 - i
                    if not factor:
                        continue
                    key = (
                        t1 + t2 - n,
                        u1 + u2 - n,
                        mask,
                        b1 + b2,
                        h1 + h2 + hp + n,
                    )
                    c = c0 * (exc * sg * factor)
                    if key in out:
                        nv = out[key] + c
                        if nv:
                            out[key] = nv
                        else:
                            del out[key]
                    elif c:
                        out[key] = c
    return out
