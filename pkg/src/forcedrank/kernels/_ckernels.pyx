# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled counterparts of ``_pykernels``; results must match bit for bit."""
import numpy as np

cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef inline bint _less(double va, double ka, Py_ssize_t ia, double vb, double kb, Py_ssize_t ib) noexcept nogil:
    if va != vb:
        return va < vb
    if ka != kb:
        return ka < kb
    return ia < ib


def team_extremes(values, keys, Py_ssize_t labels):
    cdef double[:, ::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef double[:, ::1] k = np.ascontiguousarray(keys, dtype=np.float64)
    cdef Py_ssize_t rows = v.shape[0], size = v.shape[1]
    if k.shape[0] != rows or k.shape[1] != size:
        raise ValueError("values and keys must have the same shape")
    if labels < 0 or labels > size:
        raise ValueError("labels out of range")
    low_arr = np.empty((rows, labels), dtype=np.intp)
    high_arr = np.empty((rows, labels), dtype=np.intp)
    cdef Py_ssize_t[:, ::1] low = low_arr
    cdef Py_ssize_t[:, ::1] high = high_arr
    cdef Py_ssize_t *buf = <Py_ssize_t *> malloc(max(size, 1) * sizeof(Py_ssize_t))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t r, i, j, cur
    try:
        with nogil:
            for r in range(rows):
                # stable insertion sort of column indices
                for i in range(size):
                    cur = i
                    j = i
                    while j > 0 and _less(v[r, cur], k[r, cur], cur, v[r, buf[j - 1]], k[r, buf[j - 1]], buf[j - 1]):
                        buf[j] = buf[j - 1]
                        j -= 1
                    buf[j] = cur
                for i in range(labels):
                    low[r, i] = buf[i]
                    high[r, i] = buf[size - labels + i]
    finally:
        free(buf)
    return low_arr, high_arr


cdef struct _Ctx:
    int n
    int size
    int labels
    unsigned char *bottom
    unsigned char *top
    unsigned char *used
    long long count
    long long term
    long long prom


cdef inline int _imin(int a, int b) noexcept nogil:
    return a if a < b else b


cdef void _next_team(_Ctx *c, long long t_acc, long long p_acc) noexcept nogil:
    cdef int anchor = 0
    while anchor < c.n and c.used[anchor]:
        anchor += 1
    if anchor == c.n:
        c.count += 1
        c.term += t_acc
        c.prom += p_acc
        return
    c.used[anchor] = 1
    _choose(c, anchor + 1, c.size - 1, c.bottom[anchor], c.top[anchor], t_acc, p_acc)
    c.used[anchor] = 0


cdef void _choose(_Ctx *c, int start, int need, int nb, int nt, long long t_acc, long long p_acc) noexcept nogil:
    cdef int j
    if need == 0:
        _next_team(c, t_acc + _imin(c.labels, nb), p_acc + _imin(c.labels, nt))
        return
    for j in range(start, c.n):
        if not c.used[j]:
            c.used[j] = 1
            _choose(c, j + 1, need - 1, nb + c.bottom[j], nt + c.top[j], t_acc, p_acc)
            c.used[j] = 0


def partition_correct_sums(bottom, top, int team_size, int labels):
    cdef unsigned char[::1] b = np.ascontiguousarray(bottom, dtype=np.uint8)
    cdef unsigned char[::1] t = np.ascontiguousarray(top, dtype=np.uint8)
    cdef int n = b.shape[0]
    if t.shape[0] != n:
        raise ValueError("bottom and top must have the same length")
    if team_size < 1 or n % team_size:
        raise ValueError("item count must be a multiple of team_size")
    used_arr = np.zeros(max(n, 1), dtype=np.uint8)
    cdef unsigned char[::1] used = used_arr
    cdef _Ctx c
    c.n = n
    c.size = team_size
    c.labels = labels
    c.bottom = &b[0] if n else NULL
    c.top = &t[0] if n else NULL
    c.used = &used[0]
    c.count = 0
    c.term = 0
    c.prom = 0
    with nogil:
        _next_team(&c, 0, 0)
    return int(c.count), int(c.term), int(c.prom)
