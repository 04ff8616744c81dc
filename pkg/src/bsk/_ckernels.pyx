# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer hot kernels; same contract as ``_pykernels``."""

from libc.stdint cimport int64_t

cdef int64_t _SMALL = 1 << 30


def pair_products(list xs, list ys, list num_shifts, list den_shifts):
    cdef Py_ssize_t nx = len(xs), ny = len(ys)
    cdef Py_ssize_t na = len(num_shifts), nb = len(den_shifts)
    cdef Py_ssize_t i, j, k
    cdef int64_t d, t, acc_n = 1, acc_d = 1
    cdef bint small = True
    cdef bint zero_num = False
    cdef object num = 1, den = 1, od
    for v in xs + ys + num_shifts + den_shifts:
        if v >= _SMALL or v <= -_SMALL:
            small = False
            break
    if not small:
        for x in xs:
            for y in ys:
                od = x - y
                for a in num_shifts:
                    num *= od + a
                for b in den_shifts:
                    t2 = od + b
                    if t2 == 0:
                        raise ZeroDivisionError("vanishing factor")
                    den *= t2
        return num, den
    cdef int64_t[:] cx = _arr(xs), cy = _arr(ys)
    cdef int64_t[:] ca = _arr(num_shifts), cb = _arr(den_shifts)
    for i in range(nx):
        for j in range(ny):
            d = cx[i] - cy[j]
            for k in range(na):
                t = d + ca[k]
                if t == 0:
                    zero_num = True
                    continue
                if acc_n >= _SMALL or acc_n <= -_SMALL:
                    num *= acc_n
                    acc_n = 1
                acc_n *= t
            for k in range(nb):
                t = d + cb[k]
                if t == 0:
                    raise ZeroDivisionError("vanishing factor")
                if acc_d >= _SMALL or acc_d <= -_SMALL:
                    den *= acc_d
                    acc_d = 1
                acc_d *= t
    if zero_num:
        return 0, den * acc_d
    return num * acc_n, den * acc_d


cdef _arr(list values):
    import array
    return array.array("q", values)


def bareiss_det(rows):
    cdef list m = [list(row) for row in rows]
    cdef Py_ssize_t n = len(m), k, i, j, r
    cdef object prev = 1, pk, a, sign = 1
    cdef list rk, ri
    if n == 0:
        return 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        rk = m[k]
        pk = rk[k]
        for i in range(k + 1, n):
            ri = m[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - a * rk[j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1]
