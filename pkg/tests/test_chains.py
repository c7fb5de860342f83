from fractions import Fraction

import numpy as np
import pytest

import oracles
import posetshuffle as ps
from posetshuffle import LengthMismatch, NotLumpable, RangeError, SizeMismatch
from posetshuffle.chains import (
    ChainSpec,
    adjacent_weights,
    chain_matrix,
    factorization_report,
    lumped_matrix,
    reversal_permutation,
    sort_fibers,
)
from posetshuffle.ratmat import RationalMatrix

PAIR = ps.poset_from_covers(4, [(1, 2), (3, 4)])

# exact transition counts over 16 position pairs, extensions lex sorted:
# 1234, 1324, 1342, 3124, 3142, 3412
PAIR_SHUFFLE = RationalMatrix(
    [
        [8, 4, 2, 2, 0, 0],
        [4, 4, 3, 3, 2, 0],
        [2, 3, 6, 0, 3, 2],
        [2, 3, 0, 6, 3, 2],
        [0, 2, 3, 3, 4, 4],
        [0, 0, 2, 2, 4, 8],
    ],
    16,
)


def oracle_matrix(rows):
    return RationalMatrix.from_fractions(rows)


def test_pair_poset_reference_matrix():
    assert ps.random_to_random_matrix(PAIR) == PAIR_SHUFFLE


def test_pair_poset_matrix_is_reversal_invariant():
    # the lex and reversed-lex indexings give the same table here
    assert PAIR_SHUFFLE.permuted([5, 4, 3, 2, 1, 0]) == PAIR_SHUFFLE


def test_shuffle_matches_oracle_exhaustively():
    for n in (1, 2, 3, 4):
        for p in ps.enumerate_posets(n):
            got = ps.random_to_random_matrix(p)
            assert got == oracle_matrix(oracles.shuffle_rows(n, p.covers))


def test_antichain3_row_pattern():
    a = ps.antichain(3)
    m = ps.random_to_random_matrix(a)
    # from 123: distance-0 mass 1/3, adjacent swaps 2/9 each, the two
    # rotations 1/9 each, the double swap 321 unreachable in one step
    assert m.num[0].tolist() == [3, 2, 2, 1, 1, 0]
    assert m.den == 9
    assert m == oracle_matrix(oracles.shuffle_rows(3, ()))


def test_chain_is_trivial_for_every_kind():
    for n in (1, 2, 3, 5):
        c = ps.chain(n)
        for kind in ("random_to_random", "random_to_top", "swap_word"):
            assert chain_matrix(c, ChainSpec(kind)) == RationalMatrix.identity(1)
        lazy = chain_matrix(c, ChainSpec("lazy_adjacent"))
        assert lazy == RationalMatrix.identity(1)


def test_random_to_top():
    m = ps.random_to_top_matrix(ps.antichain(2))
    assert m == RationalMatrix([[1, 1], [1, 1]], 2)
    for n in (2, 3, 4):
        for p in ps.enumerate_posets(n):
            got = ps.random_to_top_matrix(p)
            assert got == oracle_matrix(oracles.to_top_rows(n, p.covers))
            assert got.is_doubly_stochastic()
            assert n % got.den == 0


def test_move_to_end_product_recovers_shuffle():
    ntop = ps.random_to_top_matrix(PAIR)
    assert ntop @ ntop.T == PAIR_SHUFFLE


def test_factorization_report():
    rep = factorization_report(ps.antichain(2))
    assert rep.left_holds and rep.right_holds and not rep.products_differ
    assert rep.orientation == "both"
    rep = factorization_report(ps.poset_from_covers(3, [(1, 2)]))
    assert rep.left_holds
    assert not rep.right_holds
    assert rep.products_differ
    assert rep.orientation == "left"


def test_swap_word_matrix():
    assert ps.swap_word_matrix(ps.antichain(2)) == RationalMatrix([[1, 1], [1, 1]], 2)
    for n in (2, 3, 4):
        for p in ps.enumerate_posets(n):
            got = ps.swap_word_matrix(p)
            assert got == oracle_matrix(oracles.swap_word_rows(n, p.covers))


def test_adjacent_weights():
    assert adjacent_weights(4, "uniform") == ([1, 1, 1], 3)
    assert adjacent_weights(4, "quadratic") == ([3, 4, 3], 10)
    with pytest.raises(RangeError):
        adjacent_weights(4, "cubic")


def test_lazy_adjacent_matrix():
    m = ps.lazy_adjacent_matrix(ps.antichain(2))
    assert m == RationalMatrix([[1, 1], [1, 1]], 2)
    for n in (2, 3, 4):
        for p in ps.enumerate_posets(n):
            for weighting in ("uniform", "quadratic"):
                got = ps.lazy_adjacent_matrix(p, weighting=weighting)
                assert got.is_symmetric()
                assert got.is_doubly_stochastic()
                # lazy: diagonal mass at least one half
                assert all(2 * d >= 1 for d in got.diagonal_fractions())


def test_lazy_quadratic_antichain3():
    m = ps.lazy_adjacent_matrix(ps.antichain(3), weighting="quadratic")
    ext = ps.enumerate_extensions(ps.antichain(3))
    w, total = adjacent_weights(3, "quadratic")
    table = ext.tau_successors()
    num = np.zeros((6, 6), np.int64)
    num[np.diag_indices(6)] = total
    for k in range(2):
        for a in range(6):
            num[a, table[a, k]] += w[k]
    assert m == RationalMatrix(num, 2 * total)


def test_chain_spec_validation():
    with pytest.raises(RangeError):
        ChainSpec("bogus")
    with pytest.raises(RangeError):
        ChainSpec("lazy_adjacent", "cubic")
    assert chain_matrix(PAIR) == PAIR_SHUFFLE


def test_extension_set_owner_checked():
    other = ps.enumerate_extensions(ps.antichain(4))
    with pytest.raises(SizeMismatch):
        ps.random_to_random_matrix(PAIR, other)


def test_lumped_matrix_quotient():
    p = ps.direct_sum([ps.poset_from_covers(3, [(1, 3), (2, 3)]), ps.chain(1)])
    fibers, q, ext, ext_q = sort_fibers(p)
    assert q.covers == ((1, 2), (2, 3))
    assert len(ext) == 8 and len(ext_q) == 4
    assert sorted(len(f) for f in fibers) == [2, 2, 2, 2]
    lumped = lumped_matrix(ps.random_to_random_matrix(p, ext), fibers)
    assert lumped == ps.random_to_random_matrix(q, ext_q)


def test_lumped_matrix_rejects_bad_partitions():
    mp = ps.random_to_random_matrix(PAIR)
    with pytest.raises(LengthMismatch):
        lumped_matrix(mp, [[0, 1], [], [2, 3, 4, 5]])
    with pytest.raises(LengthMismatch):
        lumped_matrix(mp, [[0, 1], [1, 2, 3, 4, 5]])
    with pytest.raises(LengthMismatch):
        lumped_matrix(mp, [[0, 1], [2, 3]])
    with pytest.raises(LengthMismatch):
        lumped_matrix(mp, [[0, 1, 6], [2, 3, 4, 5]])


def test_lumped_matrix_witnesses_failure():
    mp = ps.random_to_random_matrix(PAIR)
    with pytest.raises(NotLumpable) as err:
        lumped_matrix(mp, [[0, 1], [2, 3, 4, 5]])
    assert err.value.fiber == 0
    ra, rb = err.value.row_a, err.value.row_b
    assert int(mp.num[ra, :2].sum()) != int(mp.num[rb, :2].sum())


def test_sort_fibers_on_sorted_poset_is_trivial():
    fibers, q, ext, ext_q = sort_fibers(PAIR)
    assert q == PAIR
    assert fibers == [[i] for i in range(6)]


def test_reversal_permutation():
    r = reversal_permutation(PAIR)
    ext = ps.enumerate_extensions(PAIR)
    ext_d = ps.enumerate_extensions(ps.dual(PAIR))
    for a, word in enumerate(ext):
        assert ext_d[int(r[a])] == tuple(reversed(word))
    assert sorted(int(v) for v in r) == list(range(6))


def test_conjugation_matches_dual_shuffle():
    for n in (1, 2, 3, 4):
        for p in ps.enumerate_posets(n):
            mp = ps.random_to_random_matrix(p)
            assert ps.conjugate_by_reversal(p, mp) == ps.random_to_random_matrix(
                ps.dual(p)
            )


def test_conjugation_size_check():
    with pytest.raises(LengthMismatch):
        ps.conjugate_by_reversal(PAIR, RationalMatrix.identity(4))


def test_shuffle_invariants():
    for n in (2, 3, 4):
        for p in ps.enumerate_posets(n):
            m = ps.random_to_random_matrix(p)
            assert m.is_symmetric()
            assert m.is_doubly_stochastic()
            assert (n * n) % m.den == 0
            assert all(d >= Fraction(1, n) for d in m.diagonal_fractions())
