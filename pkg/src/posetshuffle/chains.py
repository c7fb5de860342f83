"""Exact transition matrices for the shuffles acting on linear extensions.

All matrices are indexed by the lex-sorted extension list of the poset.
Kinds:
  * random_to_random: pick positions (i, j) uniformly on [n]^2, move the
    card at i to j. Denominator n^2.
  * random_to_top: move the card at i to the last position, i uniform.
    Denominator n.
  * lazy_adjacent: stay with probability 1/2, else swap one adjacent
    incomparable pair, the index drawn Uniform or Quadratic.
  * swap_word: pick (i, j) uniformly, apply the adjacent-swap word that
    equals the transposition (i j) when unobstructed. Denominator n^2.
"""

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, NotLumpable, RangeError, SizeMismatch
from .extensions import ExtensionSet, enumerate_extensions, reverse_extension
from .poset import chain_ordering, dual
from .ratmat import RationalMatrix

KINDS = ("random_to_random", "random_to_top", "lazy_adjacent", "swap_word")
WEIGHTINGS = ("uniform", "quadratic")


@dataclass(frozen=True)
class ChainSpec:
    kind: str = "random_to_random"
    weighting: str = "uniform"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise RangeError(f"unknown chain kind {self.kind!r}")
        if self.weighting not in WEIGHTINGS:
            raise RangeError(f"unknown weighting {self.weighting!r}")


def _extensions(p, ext):
    if ext is None:
        return enumerate_extensions(p)
    if ext.poset is not p and ext.poset != p:
        raise SizeMismatch("extension set belongs to a different poset")
    return ext


def _counts_from_table(table):
    m = table.shape[0]
    counts = np.zeros((m, m), np.int64)
    rows = np.repeat(np.arange(m), table.shape[1])
    np.add.at(counts, (rows, table.ravel()), 1)
    return counts


def random_to_random_matrix(p, ext=None):
    ext = _extensions(p, ext)
    n = p.n
    counts = _counts_from_table(ext.move_successors())
    out = RationalMatrix(counts, n * n)
    assert out.is_symmetric()
    assert out.is_doubly_stochastic()
    assert (counts.diagonal() >= n).all()
    return out


def random_to_top_matrix(p, ext=None):
    ext = _extensions(p, ext)
    n = p.n
    table = ext.move_successors()[:, [i * n + (n - 1) for i in range(n)]]
    counts = _counts_from_table(table)
    out = RationalMatrix(counts, n)
    assert out.is_doubly_stochastic()
    return out


def swap_word_matrix(p, ext=None):
    ext = _extensions(p, ext)
    n = p.n
    counts = _counts_from_table(ext.swap_word_successors())
    out = RationalMatrix(counts, n * n)
    assert out.is_symmetric()
    assert out.is_doubly_stochastic()
    return out


def adjacent_weights(n, weighting):
    """Integer weights per swap index 1..n-1 and their sum."""
    if weighting == "uniform":
        w = [1] * (n - 1)
    elif weighting == "quadratic":
        w = [i * (n - i) for i in range(1, n)]
    else:
        raise RangeError(f"unknown weighting {weighting!r}")
    return w, sum(w)


def lazy_adjacent_matrix(p, ext=None, weighting="uniform"):
    ext = _extensions(p, ext)
    n = p.n
    m = len(ext)
    if n == 1:
        return RationalMatrix.identity(m)
    w, total = adjacent_weights(n, weighting)
    table = ext.tau_successors()
    num = np.zeros((m, m), np.int64)
    num[np.diag_indices(m)] = total
    rows = np.arange(m)
    for k in range(n - 1):
        np.add.at(num, (rows, table[:, k]), w[k])
    out = RationalMatrix(num, 2 * total)
    assert out.is_symmetric()
    assert out.is_doubly_stochastic()
    assert (2 * out.num.diagonal() >= out.den).all()
    return out


def chain_matrix(p, spec=None, ext=None):
    spec = spec or ChainSpec()
    if spec.kind == "random_to_random":
        return random_to_random_matrix(p, ext)
    if spec.kind == "random_to_top":
        return random_to_top_matrix(p, ext)
    if spec.kind == "swap_word":
        return swap_word_matrix(p, ext)
    return lazy_adjacent_matrix(p, ext, spec.weighting)


@dataclass(frozen=True)
class FactorizationReport:
    """Which products of the move-to-end matrix recover the full shuffle."""

    left_holds: bool
    right_holds: bool
    products_differ: bool

    @property
    def orientation(self):
        if self.left_holds and self.right_holds:
            return "both"
        if self.left_holds:
            return "left"
        if self.right_holds:
            return "right"
        return "neither"


def factorization_report(p, ext=None):
    """Compare the full shuffle with N N^T and N^T N for N = random-to-top."""
    ext = _extensions(p, ext)
    m = random_to_random_matrix(p, ext)
    ntop = random_to_top_matrix(p, ext)
    left = ntop @ ntop.T
    right = ntop.T @ ntop
    return FactorizationReport(
        left_holds=left == m,
        right_holds=right == m,
        products_differ=left != right,
    )


def lumped_matrix(mp, fibers):
    """Quotient of mp by a partition of its states.

    Every state of a fiber must put identical total mass on each target
    fiber; otherwise NotLumpable carries two offending states and the
    target block.
    """
    dim = mp.dim
    seen = np.zeros(dim, bool)
    blocks = []
    for fiber in fibers:
        idx = np.asarray(list(fiber), dtype=np.int64)
        if idx.size == 0:
            raise LengthMismatch("empty fiber")
        if idx.min() < 0 or idx.max() >= dim or seen[idx].any():
            raise LengthMismatch("fibers must partition the state indices")
        seen[idx] = True
        blocks.append(idx)
    if not seen.all():
        raise LengthMismatch("fibers must cover every state index")
    b = len(blocks)
    num = np.zeros((b, b), dtype=mp.num.dtype)
    for ci, cols in enumerate(blocks):
        sums = mp.num[:, cols].sum(axis=1)
        for ri, rows in enumerate(blocks):
            vals = sums[rows]
            first = vals[0]
            if not (vals == first).all():
                off = int(np.nonzero(vals != first)[0][0])
                raise NotLumpable(
                    "row mass differs inside a fiber",
                    row_a=int(rows[0]),
                    row_b=int(rows[off]),
                    fiber=ci,
                )
            num[ri, ci] = first
    return RationalMatrix(num, mp.den)


def sort_fibers(p, ext=None):
    """Group extensions by their image under per-component sorting.

    Returns (fibers, q, ext, ext_q); fiber b collects the indices mapping
    onto extension b of the per-component total order q.
    """
    from .extensions import sort_map

    ext = _extensions(p, ext)
    q = chain_ordering(p)
    ext_q = enumerate_extensions(q)
    fibers = [[] for _ in range(len(ext_q))]
    for a, word in enumerate(ext):
        fibers[ext_q.position(sort_map(p, q, word))].append(a)
    assert all(f for f in fibers)
    return fibers, q, ext, ext_q


def reversal_permutation(p, ext=None, ext_dual=None):
    """Index map r with reverse(ext[a]) = dual extensions[r[a]]."""
    ext = _extensions(p, ext)
    pd = dual(p)
    if ext_dual is None:
        ext_dual = enumerate_extensions(pd)
    r = np.empty(len(ext), np.int64)
    for a, word in enumerate(ext):
        r[a] = ext_dual.position(reverse_extension(p, word))
    return r


def conjugate_by_reversal(p, mp, ext=None, ext_dual=None):
    """Reindex mp through the reversal bijection onto the dual's extensions.

    Equals R^T mp R for the 0/1 matrix R of the bijection.
    """
    ext = _extensions(p, ext)
    if mp.dim != len(ext):
        raise LengthMismatch("matrix size does not match the extension count")
    r = reversal_permutation(p, ext, ext_dual)
    rinv = np.argsort(r)
    return RationalMatrix(mp.num[np.ix_(rinv, rinv)].copy(), mp.den)
