"""Finite posets on labels 1..n: construction, canonical forms, enumeration.

The relation is stored as an n x n boolean table ``less`` with
``less[a-1, b-1]`` meaning a strictly precedes b. Instances are immutable;
every constructor validates irreflexivity, antisymmetry and transitivity.
"""

import itertools
from functools import lru_cache

import numpy as np

from .errors import (
    CycleError,
    IncompatiblePosets,
    LabelError,
    RangeError,
    SizeMismatch,
)


def _compose(a, b):
    return (a.astype(np.uint8) @ b.astype(np.uint8)) > 0


def _close(less):
    out = less.copy()
    while True:
        step = out | _compose(out, out)
        if np.array_equal(step, out):
            return out
        out = step


class Poset:
    """Strict partial order on {1, .., n}."""

    __slots__ = ("n", "less", "_covers", "_components")

    def __init__(self, less):
        less = np.array(less, dtype=bool)
        if less.ndim != 2 or less.shape[0] != less.shape[1]:
            raise ValueError("relation table must be square")
        n = less.shape[0]
        if n < 1:
            raise RangeError("poset needs at least one element")
        if less.diagonal().any():
            raise CycleError("relation is not irreflexive")
        if (less & less.T).any():
            raise CycleError("relation is not antisymmetric")
        if (_compose(less, less) & ~less).any():
            raise ValueError("relation is not transitively closed")
        less.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "less", less)
        object.__setattr__(self, "_covers", None)
        object.__setattr__(self, "_components", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poset is immutable")

    def lt(self, a, b):
        """True when a strictly precedes b (labels 1-based)."""
        return bool(self.less[a - 1, b - 1])

    def comparable(self, a, b):
        return a == b or self.lt(a, b) or self.lt(b, a)

    @property
    def covers(self):
        """Irredundant pairs (a, b): a precedes b with nothing in between."""
        if self._covers is None:
            reach2 = _compose(self.less, self.less)
            cov = self.less & ~reach2
            pairs = tuple(
                (int(a) + 1, int(b) + 1) for a, b in np.argwhere(cov)
            )
            object.__setattr__(self, "_covers", tuple(sorted(pairs)))
        return self._covers

    @property
    def components(self):
        """Connected components of the comparability graph, sorted labels."""
        if self._components is None:
            adj = self.less | self.less.T
            seen = np.zeros(self.n, bool)
            comps = []
            for s in range(self.n):
                if seen[s]:
                    continue
                frontier = np.zeros(self.n, bool)
                frontier[s] = True
                comp = frontier.copy()
                while frontier.any():
                    nxt = adj[frontier].any(axis=0) & ~comp
                    comp |= nxt
                    frontier = nxt
                seen |= comp
                comps.append(tuple(int(x) + 1 for x in np.flatnonzero(comp)))
            object.__setattr__(self, "_components", tuple(comps))
        return self._components

    @property
    def relation_count(self):
        return int(self.less.sum())

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.n == other.n
            and np.array_equal(self.less, other.less)
        )

    def __hash__(self):
        return hash((self.n, self.less.tobytes()))

    def __repr__(self):
        return f"Poset(n={self.n}, covers={list(self.covers)})"

    def to_json_dict(self):
        return {"n": self.n, "covers": [list(c) for c in self.covers]}


def poset_from_covers(n, covers):
    """Close the given precedence pairs into a poset on 1..n.

    Pairs may be any generating relations, not necessarily covers.
    Raises LabelError for labels outside 1..n, CycleError for cycles.
    """
    if n < 1:
        raise RangeError("poset needs at least one element")
    less = np.zeros((n, n), bool)
    for pair in covers:
        try:
            a, b = pair
        except (TypeError, ValueError):
            raise LabelError(f"cover pair {pair!r} is not a pair") from None
        if not (isinstance(a, int) and isinstance(b, int)):
            raise LabelError(f"cover pair {pair!r} has non-integer labels")
        if not (1 <= a <= n and 1 <= b <= n):
            raise LabelError(f"cover pair {pair!r} outside 1..{n}")
        if a == b:
            raise CycleError(f"cover pair {pair!r} relates a label to itself")
        less[a - 1, b - 1] = True
    closed = _close(less)
    if closed.diagonal().any() or (closed & closed.T).any():
        raise CycleError("cover list closes a directed cycle")
    return Poset(closed)


def poset_from_json_dict(data):
    try:
        n = data["n"]
        covers = data["covers"]
    except (KeyError, TypeError):
        raise LabelError("poset JSON needs keys 'n' and 'covers'") from None
    if not isinstance(n, int):
        raise LabelError("poset JSON field 'n' must be an integer")
    return poset_from_covers(n, [tuple(c) for c in covers])


def chain(n):
    if n < 1:
        raise RangeError("chain needs at least one element")
    less = np.zeros((n, n), bool)
    for a in range(n):
        less[a, a + 1 :] = True
    return Poset(less)


def antichain(n):
    if n < 1:
        raise RangeError("antichain needs at least one element")
    return Poset(np.zeros((n, n), bool))


def direct_sum(parts):
    """Disjoint union; part k is shifted past the labels of parts before it."""
    parts = list(parts)
    if not parts:
        raise RangeError("direct sum needs at least one part")
    n = sum(p.n for p in parts)
    less = np.zeros((n, n), bool)
    base = 0
    for p in parts:
        less[base : base + p.n, base : base + p.n] = p.less
        base += p.n
    return Poset(less)


def sum_of_chains(lengths):
    return direct_sum([chain(k) for k in lengths])


def dual(p):
    return Poset(p.less.T.copy())


def is_connected(p):
    return len(p.components) == 1


def n_shape_triple(n, k):
    """The two-chain poset, the version with one cross relation, and the chain.

    Chains are 1..k and k+1..n. The middle poset adds k+1 below k; its
    closure adds exactly that one pair, which is asserted.
    """
    if not (1 <= k < n):
        raise RangeError("need 1 <= k < n")
    p = direct_sum([chain(k), chain(n - k)])
    less1 = p.less.copy()
    less1[k, k - 1] = True
    closed = _close(less1)
    assert np.array_equal(closed, less1), "cross relation forced extra pairs"
    p1 = Poset(closed)
    p2 = chain(n)
    return p, p1, p2


def random_poset(n, seed):
    """Random order: shuffled ordered pairs, each kept w.p. 1/n unless it
    would close a cycle, re-closing after every accepted pair."""
    if n < 1:
        raise RangeError("poset needs at least one element")
    rng = np.random.default_rng(seed)
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    order = rng.permutation(len(pairs))
    u = rng.random(len(pairs))
    less = np.zeros((n, n), bool)
    for t in range(len(pairs)):
        a, b = pairs[order[t]]
        if u[t] < 1.0 / n and not less[b, a]:
            less[a, b] = True
            less = _close(less)
    return Poset(less)


@lru_cache(maxsize=None)
def _perm_table(n):
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    inv = np.argsort(perms, axis=1)
    return perms, inv


def _cover_matrix(p):
    reach2 = _compose(p.less, p.less)
    return p.less & ~reach2


def canonical_form(p):
    """Lexicographically least cover list over all relabelings.

    Computed as the max packed cover-matrix bitstring across every
    permutation at once; for a fixed number of covers the two orders agree.
    """
    n = p.n
    perms, inv = _perm_table(n)
    cov = _cover_matrix(p)
    rel = cov[inv[:, :, None], inv[:, None, :]]
    bits = np.packbits(rel.reshape(len(perms), n * n), axis=1)
    width = bits.shape[1]
    raw = bits.tobytes()
    best = max(
        range(len(perms)), key=lambda a: raw[a * width : (a + 1) * width]
    )
    sigma = perms[best]
    return tuple(
        sorted((int(sigma[a - 1]) + 1, int(sigma[b - 1]) + 1) for a, b in p.covers)
    )


def relabel(p, sigma):
    """Image poset under the relabeling sigma (tuple, sigma[old-1] = new)."""
    if sorted(sigma) != list(range(1, p.n + 1)):
        raise LabelError("relabeling must be a permutation of 1..n")
    idx = np.argsort(np.asarray(sigma) - 1)
    return Poset(p.less[np.ix_(idx, idx)].copy())


def _ideal_masks(p):
    down = [0] * p.n
    for a in range(p.n):
        for b in range(p.n):
            if p.less[a, b]:
                down[b] |= 1 << a
    masks = []
    for mask in range(1 << p.n):
        ok = True
        rest = mask
        while rest:
            b = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if down[b] & ~mask:
                ok = False
                break
        if ok:
            masks.append(mask)
    return masks


_class_cache = {1: [()]}


def enumerate_posets(n):
    """All isomorphism classes on n elements, one canonical poset each,
    sorted by canonical cover list. Grown by adding a new maximal element
    above each order ideal of each smaller class."""
    if n < 1:
        raise RangeError("poset needs at least one element")
    if n > 8:
        raise RangeError("enumeration supported through n = 8")
    top = max(_class_cache)
    for m in range(top + 1, n + 1):
        found = set()
        for covers in _class_cache[m - 1]:
            parent = poset_from_covers(m - 1, covers)
            for mask in _ideal_masks(parent):
                less = np.zeros((m, m), bool)
                less[: m - 1, : m - 1] = parent.less
                for a in range(m - 1):
                    if mask >> a & 1:
                        less[a, m - 1] = True
                found.add(canonical_form(Poset(less)))
        _class_cache[m] = sorted(found)
    return [poset_from_covers(n, c) for c in _class_cache[n]]


def poset_inclusion(p, q):
    """Is there a relabeling sending every relation of p into q's relation?"""
    if p.n != q.n:
        raise SizeMismatch("inclusion needs a common ground set size")
    perms, inv = _perm_table(p.n)
    rel = p.less[inv[:, :, None], inv[:, None, :]]
    bad = (rel & ~q.less).any(axis=(1, 2))
    return bool((~bad).any())


def chain_ordering(p, tie_rule="lex"):
    """Total order on each component, the lex-least extension of that
    component; no relations across components."""
    if tie_rule != "lex":
        raise RangeError(f"unknown tie rule {tie_rule!r}")
    n = p.n
    less = np.zeros((n, n), bool)
    for comp in p.components:
        order = _lex_least_order(p, comp)
        for s in range(len(order)):
            for t in range(s + 1, len(order)):
                less[order[s] - 1, order[t] - 1] = True
    return Poset(less)


def _lex_least_order(p, labels):
    remaining = set(labels)
    out = []
    while remaining:
        pick = min(
            a
            for a in remaining
            if not any(p.lt(b, a) for b in remaining if b != a)
        )
        remaining.discard(pick)
        out.append(pick)
    return out


def sort_compatible(p, q):
    """Check q refines p into per-component total orders; raise otherwise."""
    if p.n != q.n:
        raise SizeMismatch("orders live on different ground sets")
    comp_of = {}
    for ci, comp in enumerate(p.components):
        for a in comp:
            comp_of[a] = ci
    for a in range(1, p.n + 1):
        for b in range(1, p.n + 1):
            if a == b:
                continue
            same = comp_of[a] == comp_of[b]
            if same:
                if p.lt(a, b) and not q.lt(a, b):
                    raise IncompatiblePosets(
                        f"target order drops the relation {a} < {b}"
                    )
                if not (q.lt(a, b) or q.lt(b, a)):
                    raise IncompatiblePosets(
                        f"target order leaves {a}, {b} incomparable"
                    )
            elif q.lt(a, b):
                raise IncompatiblePosets(
                    f"target order relates {a} < {b} across components"
                )
    return True
