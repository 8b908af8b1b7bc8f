from itertools import product

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from stutterblocks.binmat import (
    InterchangeTriple,
    PairedBinaryMatrix,
    apply_chain,
    apply_interchange,
    find_chain,
    find_compatible,
    gale_ryser_vectors,
    rectify_block_sums,
)
from stutterblocks.errors import DomainError, Infeasible, InvalidTriple, ShapeMismatch

from oracles import brute_compatible

# worked example with p = 4, d = 2 and two blocks of width 4
W_EXAMPLE = [[1, 2, 2, 1, 2, 3, 0, 1], [0, 2, 1, 3, 1, 3, 2, 0]]
EPS_EXAMPLE = {
    (0, 0): (1, 0, 1, 0, 0, 1, 0, 0), (0, 1): (0, 1, 0, 1, 0, 1, 0, 0),
    (1, 0): (0, 1, 0, 1, 0, 1, 0, 0), (1, 1): (0, 1, 0, 1, 0, 1, 0, 0),
    (2, 0): (0, 1, 0, 0, 1, 1, 0, 0), (2, 1): (0, 0, 1, 0, 1, 0, 1, 0),
    (3, 0): (0, 0, 1, 0, 1, 0, 0, 1), (3, 1): (0, 0, 0, 1, 0, 1, 1, 0),
}
RECTIFIED_EXAMPLE = [
    [[0, 0, 1, 0, 1, 1, 0, 0], [0, 1, 0, 1, 0, 1, 0, 0]],
    [[0, 0, 0, 1, 1, 1, 0, 0], [0, 1, 0, 1, 0, 1, 0, 0]],
    [[1, 1, 0, 0, 0, 1, 0, 0], [0, 0, 1, 0, 1, 0, 1, 0]],
    [[0, 1, 1, 0, 0, 0, 0, 1], [0, 0, 0, 1, 0, 1, 1, 0]],
]

A_EX = PairedBinaryMatrix([[1, 1], [0, 0]], [[1, 0], [0, 1]])
B_EX = PairedBinaryMatrix([[1, 0, 0], [0, 1, 0]], [[1, 0, 1], [1, 0, 1]])


def example_family():
    return np.stack([gale_ryser_vectors(w, 4) for w in W_EXAMPLE], axis=1)


class TestPaired:
    def test_validation(self):
        with pytest.raises(ShapeMismatch):
            PairedBinaryMatrix([[1, 0]], [[1, 0, 0]])
        with pytest.raises(DomainError):
            PairedBinaryMatrix([[2]], [[0]])
        with pytest.raises(ShapeMismatch):
            PairedBinaryMatrix([1, 0], [0, 1])

    def test_equality_and_totals(self):
        assert A_EX == PairedBinaryMatrix([[1, 1], [0, 0]], [[1, 0], [0, 1]])
        assert A_EX != B_EX
        assert (A_EX.plus_total, A_EX.minus_total, A_EX.shape) == (2, 2, (2, 2))


class TestGaleRyser:
    def test_example(self):
        E = example_family()
        for (j, l), eps in EPS_EXAMPLE.items():
            assert tuple(E[j, l]) == eps

    def test_trivial(self):
        assert (gale_ryser_vectors([3, 3, 3], 3) == 1).all()
        assert (gale_ryser_vectors([0, 0], 5) == 0).all()
        assert gale_ryser_vectors([], 2).shape == (2, 0)

    @pytest.mark.parametrize("w,p", [([3], 2), ([-1], 2), ([1], 0)])
    def test_domain(self, w, p):
        with pytest.raises(DomainError):
            gale_ryser_vectors(w, p)

    def test_exhaustive(self):
        for p in range(1, 5):
            for n in range(7):
                for w in product(range(p + 1), repeat=n):
                    eps = gale_ryser_vectors(w, p)
                    assert tuple(eps.sum(axis=0)) == w
                    rows = eps.sum(axis=1)
                    assert rows.max() - rows.min() <= 1
                    if sum(w) % p == 0:
                        assert (rows == sum(w) // p).all()


@st.composite
def paired(draw, rows=None, cols=None):
    rows = draw(st.integers(1, 4)) if rows is None else rows
    cols = draw(st.integers(1, 4)) if cols is None else cols
    bits = st.lists(st.lists(st.integers(0, 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows)
    return PairedBinaryMatrix(draw(bits), draw(bits))


class TestInterchange:
    def test_example(self):
        t = find_compatible(A_EX, B_EX)
        assert t.as_tuple() == (0, 1, 2)
        At, Bt = apply_interchange(A_EX, B_EX, t)
        assert At == PairedBinaryMatrix([[1, 0], [0, 0]], [[1, 1], [0, 1]])
        assert Bt == PairedBinaryMatrix([[1, 0, 1], [0, 1, 0]], [[1, 0, 0], [1, 0, 1]])

    def test_absent_when_halves_agree(self):
        A = PairedBinaryMatrix([[1, 0], [0, 1]], [[1, 0], [0, 1]])
        assert find_compatible(A, A) is None

    def test_rejects(self):
        with pytest.raises(InvalidTriple):
            apply_interchange(A_EX, B_EX, InterchangeTriple(0, 0, 0))
        with pytest.raises(InvalidTriple):
            apply_interchange(A_EX, B_EX, InterchangeTriple(5, 0, 0))
        with pytest.raises(ShapeMismatch):
            find_compatible(A_EX, PairedBinaryMatrix([[1]], [[0]]))

    @given(st.integers(1, 4).flatmap(lambda r: st.tuples(paired(rows=r), paired(rows=r))))
    def test_matches_brute_force(self, pair):
        A, B = pair
        t = find_compatible(A, B)
        brute = brute_compatible(A, B)
        assert (t.as_tuple() if t else None) == (brute[0] if brute else None)
        plus_rows = A.plus.sum(axis=1) + B.plus.sum(axis=1)
        minus_rows = A.minus.sum(axis=1) + B.minus.sum(axis=1)
        if (plus_rows == minus_rows).all() and A.plus_total > A.minus_total:
            assert t is not None

    @given(st.integers(1, 4).flatmap(lambda r: st.tuples(paired(rows=r), paired(rows=r))))
    def test_sum_identities(self, pair):
        A, B = pair
        t = find_compatible(A, B)
        assume(t is not None)
        At, Bt = apply_interchange(A, B, t)
        assert (At.plus_total, At.minus_total) == (A.plus_total - 1, A.minus_total + 1)
        assert (Bt.plus_total, Bt.minus_total) == (B.plus_total + 1, B.minus_total - 1)
        assert np.array_equal(At.plus + At.minus, A.plus + A.minus)
        assert np.array_equal(Bt.plus + Bt.minus, B.plus + B.minus)
        assert np.array_equal(At.plus.sum(1) + Bt.plus.sum(1), A.plus.sum(1) + B.plus.sum(1))
        assert np.array_equal(At.minus.sum(1) + Bt.minus.sum(1), A.minus.sum(1) + B.minus.sum(1))
        changed = (At.plus != A.plus).sum() + (At.minus != A.minus).sum() + \
            (Bt.plus != B.plus).sum() + (Bt.minus != B.minus).sum()
        assert changed == 4
        # the mirrored triple undoes the move
        back_B, back_A = apply_interchange(Bt, At, InterchangeTriple(t.row, t.col_b, t.col_a))
        assert back_A == A and back_B == B


@st.composite
def balanced_families(draw):
    """Families with balanced row sums: the minus halves reshuffle the plus bits row by row."""
    rows = draw(st.integers(1, 3))
    size = draw(st.integers(2, 5))
    width = draw(st.integers(1, 3))
    plus = np.array(draw(st.lists(st.integers(0, 1), min_size=rows * size * width,
                                  max_size=rows * size * width))).reshape(rows, size * width)
    minus = np.stack([np.array(draw(st.permutations(list(plus[l])))) for l in range(rows)])
    fam = [PairedBinaryMatrix(plus[:, i * width:(i + 1) * width], minus[:, i * width:(i + 1) * width])
           for i in range(size)]
    surplus = [i for i, m in enumerate(fam) if m.plus_total > m.minus_total]
    assume(surplus)
    return fam, draw(st.sampled_from(surplus))


class TestChain:
    def test_two_members(self):
        A = PairedBinaryMatrix([[1, 0]], [[0, 0]])
        B = PairedBinaryMatrix([[0, 0]], [[1, 0]])
        chain = find_chain([A, B], 0)
        assert chain.indices == (0, 1) and len(chain.triples) == 1

    def test_example_rounds(self):
        E = example_family()
        A = PairedBinaryMatrix(E[0][:, :4], E[2][:, :4])
        B = PairedBinaryMatrix(E[0][:, 4:], E[2][:, 4:])
        chain = find_chain([A, B], 0)
        assert chain.indices == (0, 1) and [t.as_tuple() for t in chain.triples] == [(0, 0, 0)]
        C = PairedBinaryMatrix(E[1][:, :4], E[3][:, :4])
        D = PairedBinaryMatrix(E[1][:, 4:], E[3][:, 4:])
        chain = find_chain([C, D], 0)
        assert [t.as_tuple() for t in chain.triples] == [(0, 1, 0)]

    def test_preconditions(self):
        A = PairedBinaryMatrix([[1, 0]], [[0, 0]])
        B = PairedBinaryMatrix([[0, 0]], [[1, 0]])
        with pytest.raises(Infeasible):
            find_chain([A, B], 1)
        with pytest.raises(Infeasible):
            find_chain([A, B], 2)
        with pytest.raises(Infeasible):
            find_chain([A, A], 0)

    @given(balanced_families())
    def test_postconditions(self, case):
        fam, start = case
        chain = find_chain(fam, start)
        idx = chain.indices
        assert idx[0] == start and len(set(idx)) == len(idx)
        assert fam[idx[-1]].plus_total < fam[idx[-1]].minus_total
        out = apply_chain(fam, chain)
        for i, (a, b) in enumerate(zip(fam, out)):
            dp, dm = b.plus_total - a.plus_total, b.minus_total - a.minus_total
            if i == idx[0]:
                assert (dp, dm) == (-1, 1)
            elif i == idx[-1]:
                assert (dp, dm) == (1, -1)
            else:
                assert (dp, dm) == (0, 0)
            assert np.array_equal(a.plus + a.minus, b.plus + b.minus)
        assert np.array_equal(sum(m.plus.sum(1) for m in out), sum(m.plus.sum(1) for m in fam))


@st.composite
def feasible_stacks(draw):
    """Column totals of p copies of a base matrix, each shuffled within blocks row by row."""
    p = draw(st.integers(1, 4))
    d = draw(st.integers(1, 3))
    blocks = draw(st.integers(1, 3))
    e = p * blocks
    base = np.array(draw(st.lists(st.integers(0, 1), min_size=d * e, max_size=d * e))).reshape(d, e)
    W = np.zeros((d, e), dtype=np.int64)
    for _ in range(p):
        for l in range(d):
            for i in range(blocks):
                W[l, i * p:(i + 1) * p] += draw(st.permutations(list(base[l, i * p:(i + 1) * p])))
    return W, p


class TestRectify:
    def test_example(self):
        E, log = rectify_block_sums(example_family(), 4)
        assert E.tolist() == RECTIFIED_EXAMPLE
        assert (E.reshape(4, 2, 2, 4).sum(axis=(1, 3)) == 3).all()
        assert [(r["members"], r["triples"]) for r in log] == [([0, 2], [[0, 0, 0]]), ([1, 3], [[0, 1, 0]])]

    def test_already_rectified(self):
        E, log = rectify_block_sums(RECTIFIED_EXAMPLE, 4)
        assert E.tolist() == RECTIFIED_EXAMPLE and log == []

    def test_rejects(self):
        with pytest.raises(Infeasible):
            rectify_block_sums([[[1, 0]], [[1, 1]]], 2)
        with pytest.raises(Infeasible):
            rectify_block_sums([[[1, 0]], [[0, 1]]], 1)
        with pytest.raises(ShapeMismatch):
            rectify_block_sums([[[1, 0, 0]]], 2)
        with pytest.raises(ShapeMismatch):
            rectify_block_sums([[1, 0]], 1)
        with pytest.raises(DomainError):
            rectify_block_sums([[[2, 0]]], 1)

    @given(feasible_stacks())
    def test_random_feasible(self, case):
        W, p = case
        d, e = W.shape
        E0 = np.stack([gale_ryser_vectors(w, p) for w in W], axis=1)
        E, _ = rectify_block_sums(E0, p)
        S = E.reshape(p, d, e // p, p).sum(axis=(1, 3))
        assert (S == W.reshape(d, e // p, p).sum(axis=(0, 2)) // p).all()
        assert np.array_equal(E.sum(axis=2), E0.sum(axis=2))
        assert np.array_equal(E.sum(axis=0), W)
