# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fraction-free sparse elimination on int64 rows.

Same contract as ``hochwerk._elim_py.echelon``.  Every multiply and
subtract is overflow-checked; on overflow ``OverflowError`` is raised and
the caller reruns the reduction with Python integers.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

cdef extern from *:
    """
    static inline int hw_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int hw_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int hw_mul(long long a, long long b, long long *r) nogil
    int hw_sub(long long a, long long b, long long *r) nogil


cdef struct Row:
    Py_ssize_t n
    int *cols
    long long *vals


cdef inline long long _gcd(long long a, long long b) nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef int _normalize(Py_ssize_t n, long long *vals) nogil:
    cdef long long g = 0
    cdef Py_ssize_t i
    for i in range(n):
        g = _gcd(g, vals[i])
        if g == 1:
            break
    if vals[0] < 0:
        g = -g
    if g != 1:
        for i in range(n):
            vals[i] = vals[i] // g
    return 0


cdef int _reduce(Py_ssize_t *n, int *cols, long long *vals,
                 int *tcols, long long *tvals, Row *p) nogil:
    """Replace the working row by a*row - b*p, eliminating its leading entry.

    Returns 1 on overflow.  Result is written back into cols/vals.
    """
    cdef long long lead = p.vals[0]
    cdef long long rc = vals[0]
    cdef long long g, a, b, x, y, w
    cdef Py_ssize_t i = 0, j = 0, k = 0, rn = n[0], pn = p.n
    if lead == 1:
        a = 1
        b = rc
    else:
        g = _gcd(lead, rc)
        a = lead // g
        b = rc // g
    while i < rn or j < pn:
        if j >= pn or (i < rn and cols[i] < p.cols[j]):
            if a == 1:
                w = vals[i]
            elif hw_mul(a, vals[i], &w):
                return 1
            tcols[k] = cols[i]
            tvals[k] = w
            k += 1
            i += 1
        elif i >= rn or p.cols[j] < cols[i]:
            if hw_mul(b, p.vals[j], &y):
                return 1
            if hw_sub(0, y, &w):
                return 1
            tcols[k] = p.cols[j]
            tvals[k] = w
            k += 1
            j += 1
        else:
            if a == 1:
                x = vals[i]
            elif hw_mul(a, vals[i], &x):
                return 1
            if hw_mul(b, p.vals[j], &y):
                return 1
            if hw_sub(x, y, &w):
                return 1
            if w != 0:
                tcols[k] = cols[i]
                tvals[k] = w
                k += 1
            i += 1
            j += 1
    if k:
        memcpy(cols, tcols, k * sizeof(int))
        memcpy(vals, tvals, k * sizeof(long long))
        if a != 1:
            _normalize(k, vals)
    n[0] = k
    return 0


def echelon(rows, Py_ssize_t ncols, bint keep=True):
    """Row-reduce integer rows; see ``hochwerk._elim_py.echelon``."""
    cdef Row **piv = <Row **> malloc(max(ncols, 1) * sizeof(Row *))
    cdef int *cols = <int *> malloc((ncols + 1) * sizeof(int))
    cdef long long *vals = <long long *> malloc((ncols + 1) * sizeof(long long))
    cdef int *tcols = <int *> malloc((ncols + 1) * sizeof(int))
    cdef long long *tvals = <long long *> malloc((ncols + 1) * sizeof(long long))
    cdef Py_ssize_t i, n, rank = 0
    cdef int c, overflow = 0
    cdef Row *p
    if piv == NULL or cols == NULL or vals == NULL or tcols == NULL or tvals == NULL:
        free(piv); free(cols); free(vals); free(tcols); free(tvals)
        raise MemoryError()
    for i in range(ncols):
        piv[i] = NULL
    try:
        for rcols, rvals in rows:
            n = len(rcols)
            if n == 0:
                continue
            for i in range(n):
                cols[i] = rcols[i]
                vals[i] = rvals[i]
            while n > 0:
                c = cols[0]
                p = piv[c]
                if p == NULL:
                    _normalize(n, vals)
                    p = <Row *> malloc(sizeof(Row))
                    p.n = n
                    p.cols = <int *> malloc(n * sizeof(int))
                    p.vals = <long long *> malloc(n * sizeof(long long))
                    memcpy(p.cols, cols, n * sizeof(int))
                    memcpy(p.vals, vals, n * sizeof(long long))
                    piv[c] = p
                    rank += 1
                    break
                if _reduce(&n, cols, vals, tcols, tvals, p):
                    overflow = 1
                    break
            if overflow:
                break
        if overflow:
            raise OverflowError("int64 overflow during elimination")
        out = []
        if keep:
            for c in range(ncols):
                p = piv[c]
                if p != NULL:
                    out.append(([p.cols[i] for i in range(p.n)],
                                [p.vals[i] for i in range(p.n)]))
        return rank, out
    finally:
        for i in range(ncols):
            if piv[i] != NULL:
                free(piv[i].cols)
                free(piv[i].vals)
                free(piv[i])
        free(piv); free(cols); free(vals); free(tcols); free(tvals)
