# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled Gauss-Jordan elimination over Q[x]/(m) on raw GMP rationals.

Same contract as ``_kernels_py.rref``: rows are lists of field elements
(tuples of length d), ``red[k]`` holds x^(d+k) reduced modulo m and ``inv``
inverts a nonzero element.  The matrix is copied into a flat mpq_t array,
reduced there and written back as gmpy2 rationals.
"""

from libc.stdlib cimport malloc, free

import gmpy2
from gmpy2 cimport *

cdef extern from "gmp.h":
    void mpq_init(mpq_ptr)
    void mpq_clear(mpq_ptr)
    void mpq_mul(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_add(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_sub(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_set_si(mpq_ptr, long, unsigned long)
    int mpq_sgn(mpq_srcptr)

import_gmpy2()


cdef class _Work:
    """Flat storage: entry (r, c) coefficient t lives at ((r * ncols) + c) * d + t."""

    cdef __mpq_struct *a
    cdef __mpq_struct *red
    cdef __mpq_struct *prod
    cdef __mpq_struct *tmp
    cdef __mpq_struct *fac
    cdef Py_ssize_t n, nrows, ncols, d, nred

    def __cinit__(self, Py_ssize_t nrows, Py_ssize_t ncols, Py_ssize_t d, Py_ssize_t nred):
        cdef Py_ssize_t k
        self.nrows, self.ncols, self.d, self.nred = nrows, ncols, d, nred
        self.n = nrows * ncols * d
        self.a = <__mpq_struct *>malloc(max(self.n, 1) * sizeof(__mpq_struct))
        self.red = <__mpq_struct *>malloc(max(nred * d, 1) * sizeof(__mpq_struct))
        self.prod = <__mpq_struct *>malloc((2 * d) * sizeof(__mpq_struct))
        self.tmp = <__mpq_struct *>malloc(sizeof(__mpq_struct))
        self.fac = <__mpq_struct *>malloc(d * sizeof(__mpq_struct))
        if not (self.a and self.red and self.prod and self.tmp and self.fac):
            raise MemoryError()
        for k in range(self.n):
            mpq_init(&self.a[k])
        for k in range(nred * d):
            mpq_init(&self.red[k])
        for k in range(2 * d):
            mpq_init(&self.prod[k])
        mpq_init(self.tmp)
        for k in range(d):
            mpq_init(&self.fac[k])

    def __dealloc__(self):
        cdef Py_ssize_t k
        if self.a:
            for k in range(self.n):
                mpq_clear(&self.a[k])
            free(self.a)
        if self.red:
            for k in range(self.nred * self.d):
                mpq_clear(&self.red[k])
            free(self.red)
        if self.prod:
            for k in range(2 * self.d):
                mpq_clear(&self.prod[k])
            free(self.prod)
        if self.tmp:
            mpq_clear(self.tmp)
            free(self.tmp)
        if self.fac:
            for k in range(self.d):
                mpq_clear(&self.fac[k])
            free(self.fac)


cdef inline void _load(__mpq_struct *dst, object value):
    cdef mpq q = value if type(value) is mpq else gmpy2.mpq(value)
    mpq_set(dst, q.q)


cdef inline object _export(__mpq_struct *src):
    cdef mpq q = GMPy_MPQ_New(NULL)
    mpq_set(q.q, src)
    return q


cdef inline bint _nonzero(__mpq_struct *x, Py_ssize_t d):
    cdef Py_ssize_t t
    for t in range(d):
        if mpq_sgn(&x[t]) != 0:
            return True
    return False


cdef void _mul_into(_Work w, __mpq_struct *a, __mpq_struct *b):
    """w.prod[0:d] = a * b reduced."""
    cdef Py_ssize_t d = w.d, i, j, k, t
    cdef __mpq_struct *p = w.prod
    for k in range(2 * d - 1):
        mpq_set_si(&p[k], 0, 1)
    for i in range(d):
        if mpq_sgn(&a[i]) == 0:
            continue
        for j in range(d):
            if mpq_sgn(&b[j]) == 0:
                continue
            mpq_mul(w.tmp, &a[i], &b[j])
            mpq_add(&p[i + j], &p[i + j], w.tmp)
    for k in range(d, 2 * d - 1):
        if mpq_sgn(&p[k]) == 0:
            continue
        for t in range(d):
            if mpq_sgn(&w.red[(k - d) * d + t]) == 0:
                continue
            mpq_mul(w.tmp, &p[k], &w.red[(k - d) * d + t])
            mpq_add(&p[t], &p[t], w.tmp)


def rref(list rows, Py_ssize_t ncols, Py_ssize_t d, red, inv):
    """Gauss-Jordan elimination in place; returns ``(rank, pivots)``."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t r, c, t, k, col, piv, rank = 0, nred = len(red)
    cdef Py_ssize_t stride = ncols * d
    cdef _Work w = _Work(nrows, ncols, d, nred)
    cdef __mpq_struct *prow
    cdef __mpq_struct *orow
    cdef Py_ssize_t *order = <Py_ssize_t *>malloc(max(nrows, 1) * sizeof(Py_ssize_t))
    cdef list pivots = []
    cdef list row
    if not order:
        raise MemoryError()
    try:
        for r in range(nrows):
            order[r] = r
            row = rows[r]
            for c in range(ncols):
                elt = row[c]
                for t in range(d):
                    x = elt[t]
                    if x:
                        _load(&w.a[r * stride + c * d + t], x)
        for k in range(nred):
            for t in range(d):
                _load(&w.red[k * d + t], red[k][t])

        for col in range(ncols):
            if rank == nrows:
                break
            piv = -1
            for r in range(rank, nrows):
                if _nonzero(&w.a[order[r] * stride + col * d], d):
                    piv = r
                    break
            if piv < 0:
                continue
            order[rank], order[piv] = order[piv], order[rank]
            prow = &w.a[order[rank] * stride]
            # scale the pivot row by the inverse of its leading entry
            lead = tuple(_export(&prow[col * d + t]) for t in range(d))
            ilead = inv(lead)
            for t in range(d):
                _load(&w.fac[t], ilead[t])
            for c in range(col, ncols):
                if _nonzero(&prow[c * d], d):
                    _mul_into(w, w.fac, &prow[c * d])
                    for t in range(d):
                        mpq_set(&prow[c * d + t], &w.prod[t])
            for r in range(nrows):
                if r == rank:
                    continue
                orow = &w.a[order[r] * stride]
                if not _nonzero(&orow[col * d], d):
                    continue
                for t in range(d):
                    mpq_set(&w.fac[t], &orow[col * d + t])
                for c in range(col, ncols):
                    if _nonzero(&prow[c * d], d):
                        _mul_into(w, w.fac, &prow[c * d])
                        for t in range(d):
                            mpq_sub(&orow[c * d + t], &orow[c * d + t], &w.prod[t])
            pivots.append(col)
            rank += 1

        zero = tuple(gmpy2.mpq(0) for t in range(d))
        out = []
        for r in range(nrows):
            orow = &w.a[order[r] * stride]
            row = []
            for c in range(ncols):
                if _nonzero(&orow[c * d], d):
                    row.append(tuple(_export(&orow[c * d + t]) for t in range(d)))
                else:
                    row.append(zero)
            out.append(row)
        rows[:] = out
    finally:
        free(order)
    return rank, pivots
