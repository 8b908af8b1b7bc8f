"""Binary matrices with prescribed row, column and block sums.

Paired matrices stack a plus half over a minus half of identical shape.
A compatible interchange swaps a (1 over 0) column entry of one paired
matrix with a (0 over 1) entry of another in the same row, keeping all
row and column totals while moving one unit of block sum.
All indices are 0-based.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ._checks import check
from .errors import DomainError, Infeasible, InternalInvariantError, InvalidTriple, ShapeMismatch


def _binary(a) -> np.ndarray:
    arr = np.array(a, dtype=np.int8)
    if arr.ndim != 2:
        raise ShapeMismatch(f"expected a 2-d matrix, got {arr.ndim} dimensions")
    if arr.size and ((arr != 0) & (arr != 1)).any():
        raise DomainError("matrix entries must be 0 or 1")
    return arr


@dataclass(frozen=True, eq=False)
class PairedBinaryMatrix:
    plus: np.ndarray
    minus: np.ndarray

    def __post_init__(self):
        plus, minus = _binary(self.plus), _binary(self.minus)
        if plus.shape != minus.shape:
            raise ShapeMismatch(f"halves differ in shape: {plus.shape} vs {minus.shape}")
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)

    @property
    def shape(self):
        return self.plus.shape

    @property
    def plus_total(self) -> int:
        return int(self.plus.sum())

    @property
    def minus_total(self) -> int:
        return int(self.minus.sum())

    def __eq__(self, other):
        return (isinstance(other, PairedBinaryMatrix)
                and np.array_equal(self.plus, other.plus)
                and np.array_equal(self.minus, other.minus))

    def to_json(self):
        return {"plus": self.plus.tolist(), "minus": self.minus.tolist()}


@dataclass(frozen=True)
class InterchangeTriple:
    row: int
    col_a: int
    col_b: int

    def as_tuple(self):
        return (self.row, self.col_a, self.col_b)


# Gale-Ryser special case

def gale_ryser_vectors(w: Sequence[int], p: int) -> np.ndarray:
    """Return a ``(p, n)`` 0/1 array whose column ``i`` holds ``w[i]`` ones.

    Column ``i`` owns the window of consecutive integers
    ``[w[0] + ... + w[i-1], w[0] + ... + w[i])`` and row ``j`` gets a one
    wherever the window meets the residue class ``j`` mod ``p``.
    """
    w = [int(x) for x in w]
    if p < 1:
        raise DomainError(f"p must be positive, got {p}")
    if any(x < 0 or x > p for x in w):
        raise DomainError(f"entries must lie in 0..{p}, got {w}")
    out = np.zeros((p, len(w)), dtype=np.int8)
    start = 0
    for i, x in enumerate(w):
        for t in range(start, start + x):
            out[t % p, i] = 1
        start += x
    return out


# interchanges

def _witnesses(A: PairedBinaryMatrix, B: PairedBinaryMatrix, t: InterchangeTriple) -> bool:
    l, k, kb = t.row, t.col_a, t.col_b
    if not (0 <= l < A.shape[0] and 0 <= k < A.shape[1] and 0 <= kb < B.shape[1]):
        return False
    return (A.plus[l, k] == 1 and A.minus[l, k] == 0
            and B.plus[l, kb] == 0 and B.minus[l, kb] == 1)


def find_compatible(A: PairedBinaryMatrix, B: PairedBinaryMatrix) -> Optional[InterchangeTriple]:
    """Lexicographically smallest ``(row, col_a, col_b)`` witnessing ``A |= B``."""
    if A.shape[0] != B.shape[0]:
        raise ShapeMismatch(f"row counts differ: {A.shape[0]} vs {B.shape[0]}")
    src = (A.plus == 1) & (A.minus == 0)
    dst = (B.plus == 0) & (B.minus == 1)
    for l in range(A.shape[0]):
        ks = np.flatnonzero(src[l])
        if ks.size:
            kbs = np.flatnonzero(dst[l])
            if kbs.size:
                return InterchangeTriple(l, int(ks[0]), int(kbs[0]))
    return None


def apply_interchange(A: PairedBinaryMatrix, B: PairedBinaryMatrix, triple: InterchangeTriple):
    if A.shape[0] != B.shape[0]:
        raise ShapeMismatch(f"row counts differ: {A.shape[0]} vs {B.shape[0]}")
    if not _witnesses(A, B, triple):
        raise InvalidTriple(f"{triple.as_tuple()} does not witness a compatible submatrix")
    l, k, kb = triple.row, triple.col_a, triple.col_b
    ap, am = A.plus.copy(), A.minus.copy()
    bp, bm = B.plus.copy(), B.minus.copy()
    ap[l, k], am[l, k] = 0, 1
    bp[l, kb], bm[l, kb] = 1, 0
    return PairedBinaryMatrix(ap, am), PairedBinaryMatrix(bp, bm)


# chains

@dataclass(frozen=True)
class Chain:
    indices: tuple
    triples: tuple

    def to_json(self):
        return {"indices": list(self.indices), "triples": [list(t.as_tuple()) for t in self.triples]}


def _row_sums_balanced(family) -> bool:
    plus = sum(m.plus.sum(axis=1).astype(np.int64) for m in family)
    minus = sum(m.minus.sum(axis=1).astype(np.int64) for m in family)
    return bool(np.array_equal(plus, minus))


def find_chain(family: Sequence[PairedBinaryMatrix], start: int) -> Chain:
    """Breadth-first search for ``A_start |= ... |= A_end`` with ``A_end`` in deficit.

    Layers are scanned in index order.  Members in deficit are never
    expanded, so the first one reached ends the chain, and all indices
    along the chain are distinct.
    """
    family = list(family)
    n = len(family)
    if not 0 <= start < n:
        raise Infeasible(f"start index {start} out of range")
    rows = {m.shape[0] for m in family}
    if len(rows) != 1:
        raise ShapeMismatch("family members must have the same number of rows")
    if not _row_sums_balanced(family):
        raise Infeasible("plus and minus row sums of the family are not balanced")
    if family[start].plus_total <= family[start].minus_total:
        raise Infeasible(f"member {start} has no surplus")
    deficit = [m.plus_total < m.minus_total for m in family]
    parent = {start: None}
    layer = [start]
    while layer:
        nxt = []
        for i in range(n):
            if i in parent:
                continue
            for h in layer:
                t = find_compatible(family[h], family[i])
                if t is not None:
                    parent[i] = (h, t)
                    break
            else:
                continue
            if deficit[i]:
                indices, triples = [i], []
                while parent[indices[-1]] is not None:
                    h, t = parent[indices[-1]]
                    triples.append(t)
                    indices.append(h)
                indices.reverse()
                triples.reverse()
                check("chain-distinct", len(set(indices)) == len(indices))
                return Chain(tuple(indices), tuple(triples))
            nxt.append(i)
        layer = nxt
    check("chain-exists", False, "balanced family with a surplus member must reach a deficit")


def apply_chain(family: Sequence[PairedBinaryMatrix], chain: Chain) -> list:
    out = list(family)
    for t, triple in enumerate(chain.triples):
        a, b = chain.indices[t], chain.indices[t + 1]
        try:
            out[a], out[b] = apply_interchange(out[a], out[b], triple)
        except InvalidTriple as exc:
            raise InternalInvariantError(f"chain step {t} lost its witness: {exc}") from exc
    return out


# block-sum rectification

def _block_sums(E: np.ndarray, width: int) -> np.ndarray:
    p, d, e = E.shape
    return E.reshape(p, d, e // width, width).sum(axis=(1, 3)).astype(np.int64)


def _measure(S: np.ndarray) -> tuple:
    spread = S.max(axis=0) - S.min(axis=0)
    delta = int(spread.max()) if spread.size else 0
    diff = S[:, None, :] - S[None, :, :]
    return delta, int((diff == delta).sum())


def rectify_block_sums(E, block_width: int):
    """Equalise the block sums of a stacked family of 0/1 matrices.

    ``E`` has shape ``(p, d, e)``: ``E[j]`` is the ``d x e`` matrix whose
    columns are cut into blocks of ``block_width``.  Row sums of ``E[j]``
    must agree across ``j``, and each block's mean over ``j`` must be an
    integer.  Returns ``(rectified, log)`` where every block sum equals
    its mean.  Row sums and column totals over ``j`` are preserved.
    """
    E = np.array(E, dtype=np.int8)
    if E.ndim != 3:
        raise ShapeMismatch(f"expected a (p, d, e) array, got shape {E.shape}")
    if E.size and ((E != 0) & (E != 1)).any():
        raise DomainError("matrix entries must be 0 or 1")
    p, d, e = E.shape
    if block_width < 1 or e % block_width:
        raise ShapeMismatch(f"block width {block_width} does not divide {e} columns")
    rows = E.sum(axis=2)
    if not (rows == rows[:1]).all():
        raise Infeasible("row sums differ between family members")
    S = _block_sums(E, block_width)
    totals = S.sum(axis=0)
    if (totals % p).any():
        raise Infeasible(f"block means are not integers: totals {totals.tolist()} over {p} members")
    targets = totals // p
    cols_before = E.sum(axis=0)

    log = []
    delta, count = _measure(S)
    bound = delta * (e // block_width) * p * p
    while delta > 0:
        # lexicographically smallest (block, j0, j1) realising the spread
        blk, j0, j1 = min((i, a, b) for i in range(S.shape[1]) for a in range(p) for b in range(p)
                          if S[a, i] - S[b, i] == delta)
        family = [PairedBinaryMatrix(E[j0][:, i * block_width:(i + 1) * block_width],
                                     E[j1][:, i * block_width:(i + 1) * block_width])
                  for i in range(S.shape[1])]
        chain = find_chain(family, blk)
        family = apply_chain(family, chain)
        for i in chain.indices:
            E[j0][:, i * block_width:(i + 1) * block_width] = family[i].plus
            E[j1][:, i * block_width:(i + 1) * block_width] = family[i].minus
        S = _block_sums(E, block_width)
        new = _measure(S)
        check("rectify-descent", new < (delta, count), f"{new} !< {(delta, count)}")
        log.append({"members": [j0, j1], **chain.to_json(), "measure": list(new)})
        delta, count = new
        check("rectify-round-bound", len(log) <= bound, f"{len(log)} rounds exceeds {bound}")

    check("rectify-targets", bool((S == targets[None, :]).all()))
    check("rectify-rows", bool(np.array_equal(E.sum(axis=2), rows)))
    check("rectify-columns", bool(np.array_equal(E.sum(axis=0), cols_before)))
    return E, log
