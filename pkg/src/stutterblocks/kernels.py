"""Backend selection for the batch kernels.

The compiled extension is used when it was built; setting
``STUTTERBLOCKS_PURE=1`` forces the numpy fallback.
"""

import os

import numpy as np

from . import _pykernels

BACKEND = "python"
_impl = _pykernels
if os.environ.get("STUTTERBLOCKS_PURE") != "1":
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels


def enumerate_ids(n, r, offsets, counts):
    return _impl.enumerate_ids(int(n), int(r), np.asarray(offsets, dtype=np.int64), np.asarray(counts, dtype=np.int64))


def alpha_keys(ids, rv, kappa, base):
    ids = np.ascontiguousarray(ids, dtype=np.int32)
    rv = np.ascontiguousarray(rv, dtype=np.int32)
    return _impl.alpha_keys(ids, rv, np.asarray(kappa, dtype=np.int32), int(base))


def orbit_sizes(ids, d, p):
    return _impl.orbit_sizes(np.ascontiguousarray(ids, dtype=np.int32), int(d), int(p))
