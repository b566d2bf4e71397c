# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled row-grouping kernels.

Same contract as ``_kernel_py``; the sort itself stays in NumPy (already C),
but the boundary scan, label scatter and first-occurrence relabel run as one
fused pass here instead of several full-array NumPy passes.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def relabel_first_occurrence(labels):
    labels = np.ascontiguousarray(labels, dtype=np.int64)
    if labels.ndim != 1:
        raise ValueError("labels must be one-dimensional")
    cdef Py_ssize_t n = labels.shape[0]
    if n == 0:
        return labels.copy(), 0
    cdef cnp.int64_t lo = labels.min()
    cdef cnp.int64_t hi = labels.max()
    # dense scratch table only pays off for small label ranges; otherwise
    # fall back to the NumPy path which handles arbitrary values
    if lo < 0 or hi > 4 * n + 16:
        from . import _kernel_py
        return _kernel_py.relabel_first_occurrence(labels)
    cdef cnp.int64_t[::1] lab = labels
    out_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    table_arr = np.full(hi + 1, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] table = table_arr
    cdef Py_ssize_t i
    cdef cnp.int64_t nxt = 0, v
    for i in range(n):
        v = lab[i]
        if table[v] < 0:
            table[v] = nxt
            nxt += 1
        out[i] = table[v]
    return out_arr, int(nxt)


def group_rows(mat, first_occurrence=True):
    mat = np.ascontiguousarray(mat, dtype=np.int64)
    if mat.ndim != 2:
        raise ValueError("expected a 2-d array of rows")
    cdef Py_ssize_t nrows = mat.shape[0]
    cdef Py_ssize_t ncols = mat.shape[1]
    if nrows == 0:
        return np.empty(0, dtype=np.int64), 0
    order_arr = np.lexsort(mat.T[::-1]).astype(np.int64, copy=False)
    cdef cnp.int64_t[::1] order = order_arr
    cdef cnp.int64_t[:, ::1] m = mat
    labels_arr = np.empty(nrows, dtype=np.int64)
    cdef cnp.int64_t[::1] labels = labels_arr
    cdef Py_ssize_t i, j, prev, cur
    cdef cnp.int64_t gid = 0
    cdef bint differs
    prev = order[0]
    labels[prev] = 0
    for i in range(1, nrows):
        cur = order[i]
        differs = False
        for j in range(ncols):
            if m[cur, j] != m[prev, j]:
                differs = True
                break
        if differs:
            gid += 1
        labels[cur] = gid
        prev = cur
    cdef Py_ssize_t d = gid + 1
    if not first_occurrence:
        return labels_arr, int(d)
    # fused first-occurrence relabel: group ids are < nrows by construction
    table_arr = np.full(d, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] table = table_arr
    cdef cnp.int64_t nxt = 0, v
    for i in range(nrows):
        v = labels[i]
        if table[v] < 0:
            table[v] = nxt
            nxt += 1
        labels[i] = table[v]
    return labels_arr, int(nxt)
