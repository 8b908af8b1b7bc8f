"""Pure-Python/numpy implementations of the batch kernels."""

import numpy as np

from .multipartitions import divisors


def _rows(n, r, offsets, counts, memo):
    if (n, r) in memo:
        return memo[n, r]
    if r == 1:
        out = np.arange(offsets[n], offsets[n] + counts[n], dtype=np.int32)[:, None]
    else:
        parts = []
        for m in range(n + 1):
            head = np.arange(offsets[m], offsets[m] + counts[m], dtype=np.int32)
            tail = _rows(n - m, r - 1, offsets, counts, memo)
            parts.append(np.hstack([np.repeat(head, len(tail))[:, None], np.tile(tail, (len(head), 1))]))
        out = np.concatenate(parts)
    memo[n, r] = out
    return out


def enumerate_ids(n, r, offsets, counts):
    """Row per multipartition of ``n`` into ``r`` parts, as partition ids.

    Compositions come in lexicographic order; within a composition the
    rows are in lexicographic order of ids.
    """
    if r == 0:
        return np.zeros((0, 0), dtype=np.int32)
    rows = _rows(n, r, offsets, counts, {})
    sizes = np.searchsorted(np.asarray(offsets), rows, side="right") - 1
    # np.lexsort treats its last key as primary
    keys = [rows[:, c] for c in range(r - 1, -1, -1)] + [sizes[:, c] for c in range(r - 1, -1, -1)]
    return np.ascontiguousarray(rows[np.lexsort(keys)], dtype=np.int32)


def alpha_keys(ids, rv, kappa, base):
    """Residue vectors of each row, packed as base-``base`` integers."""
    N, r = ids.shape
    e = rv.shape[2]
    acc = np.zeros((N, e), dtype=np.int64)
    for c in range(r):
        acc += rv[ids[:, c], kappa[c]]
    weights = base ** np.arange(e, dtype=np.int64)
    return acc @ weights


def orbit_sizes(ids, d, p):
    out = np.full(ids.shape[0], p, dtype=np.int32)
    todo = np.ones(ids.shape[0], dtype=bool)
    for q in divisors(p)[:-1]:
        fixed = (ids == np.roll(ids, q * d, axis=1)).all(axis=1) & todo
        out[fixed] = q
        todo &= ~fixed
    return out
