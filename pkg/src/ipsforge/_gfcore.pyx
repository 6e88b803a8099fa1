# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for F_p[t] coefficient-vector arithmetic.

Same contract as ``_gfcore_py``: tuples of ints reduced mod p, monic modulus of
length k+1. The typed fast path covers p < 2^31 and k <= 64 (all desk-scale
fields); anything larger is delegated to the pure-Python twin, which is exact
for arbitrary sizes.
"""

from ipsforge import _gfcore_py as _py

BACKEND = "cython"

DEF MAXK = 64
DEF CONVLEN = 127          # 2*MAXK - 1

cdef long long PLIMIT = 1 << 31


cdef inline long long _m(long long x, long long p):
    x %= p
    return x + p if x < 0 else x


cdef inline long long _sc_inv(long long a, long long p):
    cdef long long r0 = p, r1 = _m(a, p), s0 = 0, s1 = 1, q, t
    while r1 != 0:
        q = r0 / r1
        t = r0 - q * r1
        r0 = r1
        r1 = t
        t = s0 - q * s1
        s0 = s1
        s1 = t
    return _m(s0, p)


cdef inline bint _fast_ok(long long p, Py_ssize_t k):
    return p < PLIMIT and k <= MAXK


cdef inline void _load(tuple a, long long* buf, Py_ssize_t k):
    cdef Py_ssize_t i
    for i in range(k):
        buf[i] = a[i]


cdef inline tuple _dump(long long* buf, Py_ssize_t k):
    cdef Py_ssize_t i
    return tuple([buf[i] for i in range(k)])


def vadd(a, b, p):
    cdef Py_ssize_t k = len(a), i
    cdef long long pp
    if not _fast_ok(p, k):
        return _py.vadd(a, b, p)
    pp = p
    cdef long long out[MAXK]
    for i in range(k):
        out[i] = _m(<long long>a[i] + <long long>b[i], pp)
    return _dump(out, k)


def vsub(a, b, p):
    cdef Py_ssize_t k = len(a), i
    cdef long long pp
    if not _fast_ok(p, k):
        return _py.vsub(a, b, p)
    pp = p
    cdef long long out[MAXK]
    for i in range(k):
        out[i] = _m(<long long>a[i] - <long long>b[i], pp)
    return _dump(out, k)


def vneg(a, p):
    cdef Py_ssize_t k = len(a), i
    cdef long long pp
    if not _fast_ok(p, k):
        return _py.vneg(a, p)
    pp = p
    cdef long long out[MAXK]
    for i in range(k):
        out[i] = _m(-<long long>a[i], pp)
    return _dump(out, k)


def vsmul(a, s, p):
    cdef Py_ssize_t k = len(a), i
    cdef long long pp, ss
    if not _fast_ok(p, k):
        return _py.vsmul(a, s, p)
    pp = p
    ss = _m(s, pp)
    cdef long long out[MAXK]
    for i in range(k):
        out[i] = _m(<long long>a[i] * ss, pp)
    return _dump(out, k)


cdef void _cmul(long long* a, long long* b, long long* out,
                long long* mod, Py_ssize_t k, long long p):
    cdef long long conv[CONVLEN]
    cdef Py_ssize_t i, j, base
    cdef long long ai, c
    if k == 1:
        out[0] = _m(a[0] * b[0], p)
        return
    for i in range(2 * k - 1):
        conv[i] = 0
    for i in range(k):
        ai = a[i]
        if ai:
            for j in range(k):
                conv[i + j] = (conv[i + j] + ai * b[j]) % p
    for i in range(2 * k - 2, k - 1, -1):
        c = _m(conv[i], p)
        if c:
            base = i - k
            for j in range(k):
                conv[base + j] = _m(conv[base + j] - c * mod[j], p)
    for i in range(k):
        out[i] = _m(conv[i], p)


def vmul(a, b, p, modulus):
    cdef Py_ssize_t k = len(a)
    cdef long long pp
    if not _fast_ok(p, k):
        return _py.vmul(a, b, p, modulus)
    pp = p
    cdef long long ca[MAXK], cb[MAXK], cm[MAXK], out[MAXK]
    _load(a, ca, k)
    _load(b, cb, k)
    _load(modulus, cm, k)
    _cmul(ca, cb, out, cm, k, pp)
    return _dump(out, k)


def vpow(a, e, p, modulus):
    cdef Py_ssize_t k = len(a), i
    cdef long long pp
    if not _fast_ok(p, k):
        return _py.vpow(a, e, p, modulus)
    pp = p
    cdef long long acc[MAXK], res[MAXK], tmp[MAXK], cm[MAXK]
    _load(a, acc, k)
    _load(modulus, cm, k)
    res[0] = 1
    for i in range(1, k):
        res[i] = 0
    e = int(e)
    while e:
        if e & 1:
            _cmul(res, acc, tmp, cm, k, pp)
            for i in range(k):
                res[i] = tmp[i]
        e >>= 1
        if e:
            _cmul(acc, acc, tmp, cm, k, pp)
            for i in range(k):
                acc[i] = tmp[i]
    return _dump(res, k)


cdef inline Py_ssize_t _deg(long long* c, Py_ssize_t n):
    cdef Py_ssize_t i
    for i in range(n - 1, -1, -1):
        if c[i] != 0:
            return i
    return -1


def vinv(a, p, modulus):
    cdef Py_ssize_t k = len(a), i, j, shift, d0, d1, td
    cdef long long pp, c, inv_lead, g
    if not _fast_ok(p, k):
        return _py.vinv(a, p, modulus)
    if not any(a):
        raise ZeroDivisionError("inverse of zero field element")
    pp = p
    if k == 1:
        return (_sc_inv(a[0], pp),)
    cdef long long r0[MAXK + 1], r1[MAXK + 1], s0[MAXK + 1], s1[MAXK + 1]
    for i in range(k + 1):
        r0[i] = modulus[i]
        r1[i] = 0
        s0[i] = 0
        s1[i] = 0
    for i in range(k):
        r1[i] = a[i]
    s1[0] = 1
    d0 = k
    d1 = _deg(r1, k)
    while d1 >= 0:
        inv_lead = _sc_inv(r1[d1], pp)
        while d0 >= d1:
            c = _m(r0[d0] * inv_lead, pp)
            if c:
                shift = d0 - d1
                for j in range(d1 + 1):
                    r0[shift + j] = _m(r0[shift + j] - c * r1[j], pp)
                for j in range(k + 1 - shift):
                    if s1[j]:
                        s0[shift + j] = _m(s0[shift + j] - c * s1[j], pp)
            while d0 >= 0 and r0[d0] == 0:
                d0 -= 1
        # swap (r0, s0) <-> (r1, s1)
        for i in range(k + 1):
            g = r0[i]; r0[i] = r1[i]; r1[i] = g
            g = s0[i]; s0[i] = s1[i]; s1[i] = g
        td = d0; d0 = d1; d1 = td
    g = _sc_inv(r0[0], pp)
    cdef long long out[MAXK]
    for i in range(k):
        out[i] = _m(s0[i] * g, pp)
    return _dump(out, k)
