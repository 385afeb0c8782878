# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for exterior-monomial arithmetic over GF(3).

Same data contract as cml3._purecore: monomial keys are byte strings of
native-endian uint16 symbols in strictly increasing order, coefficients
live in {1, 2}.
"""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize, PyBytes_GET_SIZE
from libc.string cimport memcpy

ctypedef unsigned short u16

DEF MAX_LEN = 96
DEF DER_MASK = 63


cdef inline int _load(object key, u16* buf) except -1:
    cdef Py_ssize_t nbytes = PyBytes_GET_SIZE(key)
    cdef int n = <int>(nbytes // 2)
    if n > MAX_LEN:
        raise OverflowError("monomial too long for the compiled kernel")
    memcpy(buf, PyBytes_AS_STRING(key), nbytes)
    return n


cdef inline object _dump(u16* buf, int n):
    return PyBytes_FromStringAndSize(<char*>buf, 2 * n)


cdef inline void _bump(dict out, object key, int delta):
    # cdivision: C-style % keeps the dividend's sign, so renormalize
    cdef object cur = out.get(key)
    cdef int c
    if cur is None:
        c = delta % 3
        if c < 0:
            c += 3
        if c:
            out[key] = c
    else:
        c = (<int>cur + delta) % 3
        if c < 0:
            c += 3
        if c:
            out[key] = c
        else:
            del out[key]


cdef inline int _merge_bufs(u16* a, int la, u16* b, int lb, u16* out):
    """Merge strictly increasing symbol arrays; returns sign in {1,2},
    0 when a symbol repeats."""
    cdef int i = 0, j = 0, k = 0, crossings = 0
    while i < la and j < lb:
        if a[i] < b[j]:
            out[k] = a[i]
            i += 1
        elif a[i] > b[j]:
            out[k] = b[j]
            crossings += la - i
            j += 1
        else:
            return 0
        k += 1
    while i < la:
        out[k] = a[i]
        i += 1
        k += 1
    while j < lb:
        out[k] = b[j]
        j += 1
        k += 1
    return 1 if crossings % 2 == 0 else 2


cdef inline int _insert_buf(u16* a, int n, u16 s, u16* out):
    """Wedge one symbol in; returns sign in {1,2}, 0 on collision."""
    cdef int pos = 0, i
    while pos < n and a[pos] < s:
        pos += 1
    if pos < n and a[pos] == s:
        return 0
    for i in range(pos):
        out[i] = a[i]
    out[pos] = s
    for i in range(pos, n):
        out[i + 1] = a[i]
    return 1 if (n - pos) % 2 == 0 else 2


def wedge_terms(dict x, dict y):
    """Exterior product of two elements."""
    cdef dict out = {}
    cdef u16 bx[MAX_LEN]
    cdef u16 by[MAX_LEN]
    cdef u16 bm[2 * MAX_LEN]
    cdef int lx, ly, lm, sign
    cdef int cx, cy
    if not x or not y:
        return out
    cdef list ys = list(y.items())
    for kx, vx in x.items():
        lx = _load(kx, bx)
        cx = <int>vx
        for ky, vy in ys:
            ly = _load(ky, by)
            sign = _merge_bufs(bx, lx, by, ly, bm)
            if sign == 0:
                continue
            cy = <int>vy
            _bump(out, _dump(bm, lx + ly), cx * cy * sign)
    return out


def derive_terms(dict x):
    """Even derivation: bump one derivation order per Leibniz summand."""
    cdef dict out = {}
    cdef u16 buf[MAX_LEN]
    cdef int n, i, c
    cdef u16 s
    for k, v in x.items():
        n = _load(k, buf)
        c = <int>v
        for i in range(n):
            s = buf[i]
            if (s & DER_MASK) == DER_MASK:
                raise OverflowError("derivation order overflow")
            if i + 1 < n and buf[i + 1] == s + 1:
                continue
            buf[i] = s + 1
            _bump(out, _dump(buf, n), c)
            buf[i] = s
    return out


def assoc_step(dict terms, int sa, int sb):
    """One left-normed associator step on an odd element: d(v ^ a ^ b)."""
    cdef dict out = {}
    cdef u16 b0[MAX_LEN]
    cdef u16 b1[MAX_LEN]
    cdef u16 b2[MAX_LEN]
    cdef int n, i, sg1, sg2, base
    cdef u16 s
    for k, v in terms.items():
        n = _load(k, b0)
        sg1 = _insert_buf(b0, n, <u16>sa, b1)
        if sg1 == 0:
            continue
        sg2 = _insert_buf(b1, n + 1, <u16>sb, b2)
        if sg2 == 0:
            continue
        n += 2
        base = (<int>v) * sg1 * sg2
        for i in range(n):
            s = b2[i]
            if (s & DER_MASK) == DER_MASK:
                raise OverflowError("derivation order overflow")
            if i + 1 < n and b2[i + 1] == s + 1:
                continue
            b2[i] = s + 1
            _bump(out, _dump(b2, n), base)
            b2[i] = s
    return out


def cmul_terms(dict x, dict y):
    """Twisted commutative product: plain wedge unless both factors are
    odd, in which case a monomial pair contributes d(mx)^my - mx^d(my)."""
    cdef dict out = {}
    cdef u16 bx[MAX_LEN]
    cdef u16 by[MAX_LEN]
    cdef u16 bw[MAX_LEN]
    cdef u16 bm[2 * MAX_LEN]
    cdef int lx, ly, i, sign, c0
    cdef int cx, cy
    cdef u16 s
    if not x or not y:
        return out
    cdef list ys = list(y.items())
    for kx, vx in x.items():
        lx = _load(kx, bx)
        cx = <int>vx
        for ky, vy in ys:
            ly = _load(ky, by)
            cy = <int>vy
            if (lx % 2 == 1) and (ly % 2 == 1):
                c0 = cx * cy
                # d(mx) ^ my
                memcpy(bw, bx, 2 * lx)
                for i in range(lx):
                    s = bx[i]
                    if (s & DER_MASK) == DER_MASK:
                        raise OverflowError("derivation order overflow")
                    if i + 1 < lx and bx[i + 1] == s + 1:
                        continue
                    bw[i] = s + 1
                    sign = _merge_bufs(bw, lx, by, ly, bm)
                    bw[i] = s
                    if sign == 0:
                        continue
                    _bump(out, _dump(bm, lx + ly), c0 * sign)
                # - mx ^ d(my)
                memcpy(bw, by, 2 * ly)
                for i in range(ly):
                    s = by[i]
                    if (s & DER_MASK) == DER_MASK:
                        raise OverflowError("derivation order overflow")
                    if i + 1 < ly and by[i + 1] == s + 1:
                        continue
                    bw[i] = s + 1
                    sign = _merge_bufs(bx, lx, bw, ly, bm)
                    bw[i] = s
                    if sign == 0:
                        continue
                    _bump(out, _dump(bm, lx + ly), -c0 * sign)
            else:
                sign = _merge_bufs(bx, lx, by, ly, bm)
                if sign == 0:
                    continue
                _bump(out, _dump(bm, lx + ly), cx * cy * sign)
    return out
