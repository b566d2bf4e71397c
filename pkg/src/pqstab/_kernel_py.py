"""NumPy reference implementations of the row-grouping kernels.

This is the fallback backend.  The compiled backend in ``_kernel_c`` must
produce bit-identical results; ``pqstab.kernel`` picks whichever is available.
"""

import numpy as np


def relabel_first_occurrence(labels):
    """Map arbitrary int64 labels to dense ids 0..d-1 in first-occurrence order.

    Returns ``(new_labels, d)``.
    """
    labels = np.ascontiguousarray(labels, dtype=np.int64)
    if labels.ndim != 1:
        raise ValueError("labels must be one-dimensional")
    if labels.size == 0:
        return labels.copy(), 0
    uniq, first = np.unique(labels, return_index=True)
    # rank each unique value by where it first appears
    order = np.empty(len(uniq), dtype=np.int64)
    order[np.argsort(first, kind="stable")] = np.arange(len(uniq))
    lookup_idx = np.searchsorted(uniq, labels)
    return order[lookup_idx], len(uniq)


def group_rows(mat, first_occurrence=True):
    """Group identical rows of an int64 matrix.

    Returns ``(labels, d)`` where rows share a label iff they are equal.
    With ``first_occurrence`` labels are dense in order of first appearance
    (row index order); otherwise they are dense in ascending lexicographic
    row-value order.
    """
    mat = np.ascontiguousarray(mat, dtype=np.int64)
    if mat.ndim != 2:
        raise ValueError("expected a 2-d array of rows")
    nrows = mat.shape[0]
    if nrows == 0:
        return np.empty(0, dtype=np.int64), 0
    order = np.lexsort(mat.T[::-1])
    srt = mat[order]
    change = np.empty(nrows, dtype=bool)
    change[0] = True
    if nrows > 1:
        np.any(srt[1:] != srt[:-1], axis=1, out=change[1:])
    gid_sorted = np.cumsum(change) - 1
    labels = np.empty(nrows, dtype=np.int64)
    labels[order] = gid_sorted
    d = int(gid_sorted[-1]) + 1
    if not first_occurrence:
        return labels, d
    labels, d2 = relabel_first_occurrence(labels)
    return labels, d2
