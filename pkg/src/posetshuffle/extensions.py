"""Linear extensions as words, and the operators that act on them.

A word lists values 1..n left to right; it is a linear extension of p when
every strict relation of p points left to right. API positions are 1-based,
matching the operator subscripts used throughout; kernels run 0-based.
"""

import numpy as np

from ._backend import kernels
from .errors import (
    LabelError,
    NotAPermutation,
    PositionRange,
    SizeMismatch,
)
from .poset import dual, sort_compatible


def _check_word(p, word):
    if len(word) != p.n:
        raise SizeMismatch(f"word length {len(word)} for a poset on {p.n}")
    if sorted(word) != list(range(1, p.n + 1)):
        raise NotAPermutation(f"{word!r} is not a permutation of 1..{p.n}")


def is_linear_extension(p, word):
    """True when word lays out p left to right; raises on a non-permutation."""
    _check_word(p, word)
    pos = {v: t for t, v in enumerate(word)}
    for a, b in np.argwhere(p.less):
        if pos[int(a) + 1] > pos[int(b) + 1]:
            return False
    return True


class ExtensionSet:
    """All linear extensions of one poset, lex sorted, with index lookups.

    Successor tables under the three operator families are built on demand
    by the active kernel backend and cached.
    """

    def __init__(self, poset, words):
        self.poset = poset
        words.flags.writeable = False
        self.words = words
        self._index = None
        self._tables = {}

    def __len__(self):
        return self.words.shape[0]

    def __getitem__(self, i):
        return tuple(int(v) for v in self.words[i])

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def position(self, word):
        if self._index is None:
            self._index = {
                tuple(int(v) for v in row): i for i, row in enumerate(self.words)
            }
        try:
            return self._index[tuple(word)]
        except KeyError:
            raise LabelError(f"{word!r} is not an extension here") from None

    def _table(self, kind):
        if kind not in self._tables:
            k = kernels()
            build = {
                "move": k.move_table,
                "tau": k.tau_table,
                "swap_word": k.swap_word_table,
            }[kind]
            table = build(self.words, self.poset.less)
            assert table.size == 0 or table.min() >= 0
            table.flags.writeable = False
            self._tables[kind] = table
        return self._tables[kind]

    def move_successors(self):
        """(m, n*n) table: column i*n+j holds the index of word * move(i, j)."""
        return self._table("move")

    def tau_successors(self):
        return self._table("tau")

    def swap_word_successors(self):
        return self._table("swap_word")


def enumerate_extensions(p):
    """Backtracking over minimal available values, so output is lex sorted."""
    n = p.n
    succs = [np.flatnonzero(p.less[v]) for v in range(n)]
    indeg = p.less.sum(axis=0).astype(np.int64)
    used = np.zeros(n, bool)
    word = np.empty(n, np.int32)
    out = []

    def rec(depth):
        if depth == n:
            out.append(word.copy())
            return
        for v in range(n):
            if not used[v] and indeg[v] == 0:
                used[v] = True
                indeg[succs[v]] -= 1
                word[depth] = v + 1
                rec(depth + 1)
                used[v] = False
                indeg[succs[v]] += 1

    rec(0)
    return ExtensionSet(p, np.array(out, dtype=np.int32).reshape(len(out), n))


def apply_tau(p, word, i):
    """Adjacent swap at positions i, i+1, blocked when the values compare."""
    _check_word(p, word)
    if not 1 <= i <= p.n - 1:
        raise PositionRange(f"tau index {i} outside 1..{p.n - 1}")
    return apply_move(p, word, i, i + 1)


def apply_move(p, word, i, j):
    """Pick the card at position i and reinsert it at position j, pushing
    past comparable cards it cannot jump; (i, i) is the identity."""
    _check_word(p, word)
    if not (1 <= i <= p.n and 1 <= j <= p.n):
        raise PositionRange(f"positions ({i}, {j}) outside 1..{p.n}")
    w = np.array(word, dtype=np.int32)
    kernels().apply_move(w, p.less, i - 1, j - 1)
    return tuple(int(v) for v in w)


def apply_swap_word(p, word, i, j):
    """Adjacent-swap word equal to the transposition of positions i and j
    when nothing blocks; identity for i = j."""
    _check_word(p, word)
    if not (1 <= i <= p.n and 1 <= j <= p.n):
        raise PositionRange(f"positions ({i}, {j}) outside 1..{p.n}")
    w = np.array(word, dtype=np.int32)
    kernels().apply_swap_word(w, p.less, i - 1, j - 1)
    return tuple(int(v) for v in w)


def reverse_extension(p, word):
    """Reversal, a bijection onto the extensions of the dual order."""
    _check_word(p, word)
    out = tuple(reversed(tuple(word)))
    assert is_linear_extension(dual(p), out)
    return out


def sort_map(p, q, word):
    """Rewrite word so that inside each component of p the values appear in
    q's order; positions used by each component stay fixed."""
    sort_compatible(p, q)
    _check_word(p, word)
    w = list(word)
    for comp in p.components:
        members = set(comp)
        spots = [t for t, v in enumerate(w) if v in members]
        ranked = sorted(comp, key=lambda v: int(q.less[:, v - 1].sum()))
        for t, v in zip(spots, ranked):
            w[t] = v
    out = tuple(w)
    assert is_linear_extension(q, out)
    return out


def sorting_path(p, source, target):
    """Moves (i, j), each reinserting one card, that turn source into target.

    Walks left to right placing the next card of target; every adjacent swap
    on the way is between cards the order leaves free, so each move lands
    exactly. At most n moves come out.
    """
    _check_word(p, source)
    _check_word(p, target)
    n = p.n
    w = np.array(source, dtype=np.int32)
    path = []
    for i in range(1, n + 1):
        v = target[i - 1]
        j = int(np.flatnonzero(w == v)[0]) + 1
        if j != i:
            kernels().apply_move(w, p.less, j - 1, i - 1)
            path.append((j, i))
    assert tuple(int(v) for v in w) == tuple(target)
    assert len(path) <= n
    return path


def format_word(word, compact=False):
    """One-line word, space separated; compact digit run for n <= 9."""
    if compact and len(word) <= 9:
        return "".join(str(v) for v in word)
    return " ".join(str(v) for v in word)


def parse_word(text):
    text = text.strip()
    if not text:
        raise LabelError("empty extension string")
    if " " in text or "," in text:
        parts = text.replace(",", " ").split()
        try:
            return tuple(int(x) for x in parts)
        except ValueError:
            raise LabelError(f"bad extension string {text!r}") from None
    if not text.isdigit():
        raise LabelError(f"bad extension string {text!r}")
    return tuple(int(ch) for ch in text)
