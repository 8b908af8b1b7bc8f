# Compiled versions of the batch kernels in _pykernels.

import numpy as np


def enumerate_ids(int n, int r, offsets, counts):
    cdef long long[:] off = np.asarray(offsets, dtype=np.int64)
    cdef long long[:] cnt = np.asarray(counts, dtype=np.int64)
    # first pass: count rows
    cdef int[:] comp = np.zeros(r, dtype=np.intc)
    cdef long long total = 0, prod
    cdef int k
    if r == 0:
        return np.zeros((0, 0), dtype=np.int32)
    comp[r - 1] = n
    while True:
        prod = 1
        for k in range(r):
            prod *= cnt[comp[k]]
        total += prod
        if not _next_composition(comp, r):
            break
    out_arr = np.empty((total, r), dtype=np.int32)
    cdef int[:, ::1] out = out_arr
    cdef int[:] idx = np.zeros(r, dtype=np.intc)
    cdef long long row = 0
    comp[:] = 0
    comp[r - 1] = n
    while True:
        for k in range(r):
            idx[k] = 0
        while True:
            for k in range(r):
                out[row, k] = <int>(off[comp[k]] + idx[k])
            row += 1
            # odometer, last component fastest
            k = r - 1
            while k >= 0:
                idx[k] += 1
                if idx[k] < cnt[comp[k]]:
                    break
                idx[k] = 0
                k -= 1
            if k < 0:
                break
        if not _next_composition(comp, r):
            break
    return out_arr


cdef bint _next_composition(int[:] comp, int r):
    # lexicographic successor among weak compositions with a fixed sum
    cdef int k = r - 2
    cdef int s = comp[r - 1]
    cdef int c
    while k >= 0:
        if s > 0:
            comp[k] += 1
            for c in range(k + 1, r - 1):
                comp[c] = 0
            comp[r - 1] = s - 1
            return True
        s += comp[k]
        k -= 1
    return False


def alpha_keys(const int[:, ::1] ids, const int[:, :, ::1] rv, kappa, long long base):
    cdef Py_ssize_t N = ids.shape[0], r = ids.shape[1], e = rv.shape[2]
    cdef int[:] kap = np.asarray(kappa, dtype=np.intc)
    cdef long long[:] w = np.empty(e, dtype=np.int64)
    cdef Py_ssize_t i, c, t
    cdef long long key
    w[0] = 1
    for t in range(1, e):
        w[t] = w[t - 1] * base
    # combined weight of each (partition, shift) pair
    cdef Py_ssize_t P = rv.shape[0], S = rv.shape[1]
    cdef long long[:, ::1] packed = np.zeros((P, S), dtype=np.int64)
    for i in range(P):
        for c in range(S):
            key = 0
            for t in range(e):
                key += rv[i, c, t] * w[t]
            packed[i, c] = key
    out_arr = np.empty(N, dtype=np.int64)
    cdef long long[:] out = out_arr
    for i in range(N):
        key = 0
        for c in range(r):
            key += packed[ids[i, c], kap[c]]
        out[i] = key
    return out_arr


def orbit_sizes(const int[:, ::1] ids, int d, int p):
    cdef Py_ssize_t N = ids.shape[0], r = ids.shape[1]
    out_arr = np.empty(N, dtype=np.int32)
    cdef int[:] out = out_arr
    cdef Py_ssize_t i, k
    cdef int q, s
    cdef bint same
    for i in range(N):
        out[i] = p
        for q in range(1, p):
            if p % q:
                continue
            s = q * d
            same = True
            for k in range(r):
                if ids[i, k] != ids[i, (k - s + r) % r]:
                    same = False
                    break
            if same:
                out[i] = q
                break
    return out_arr
