"""Pure-numpy twin of the jit kernels.

Same contracts as _kernels_numba, vectorized over rows instead of compiled.
Lookup relies on the rows being lex sorted: each word is packed into one
int64 key (4 bits per value, monotone in lex order) and found by
searchsorted.
"""

import numpy as np


def _keys(words):
    m, n = words.shape
    if n > 15:
        raise ValueError("word length above 15 not supported by the key packing")
    out = np.zeros(m, np.int64)
    for t in range(n):
        out = (out << 4) | words[:, t].astype(np.int64)
    return out


def _tau_rows(block, less, k):
    # one adjacent swap applied to every row of block, in place
    a = block[:, k]
    b = block[:, k + 1]
    swap = ~(less[a - 1, b - 1] | less[b - 1, a - 1])
    left = np.where(swap, b, a)
    block[:, k + 1] = np.where(swap, a, b)
    block[:, k] = left


def _move_rows(block, less, i, j):
    if i <= j:
        for k in range(i, j):
            _tau_rows(block, less, k)
    else:
        for k in range(i - 1, j - 1, -1):
            _tau_rows(block, less, k)


def _swap_word_rows(block, less, i, j):
    if i < j:
        for k in range(i, j):
            _tau_rows(block, less, k)
        for k in range(j - 2, i - 1, -1):
            _tau_rows(block, less, k)
    elif i > j:
        for k in range(i - 1, j - 1, -1):
            _tau_rows(block, less, k)
        for k in range(j + 1, i):
            _tau_rows(block, less, k)


def apply_move(w, less, i, j):
    block = w.reshape(1, -1)
    _move_rows(block, less, i, j)


def apply_swap_word(w, less, i, j):
    block = w.reshape(1, -1)
    _swap_word_rows(block, less, i, j)


def lex_index(words, w):
    keys = _keys(words)
    key = _keys(w.reshape(1, -1))[0]
    pos = int(np.searchsorted(keys, key))
    if pos < words.shape[0] and keys[pos] == key:
        return pos
    return -1


def _table(words, less, transform, width, columns):
    m, n = words.shape
    keys = _keys(words)
    out = np.empty((m, width), np.int32)
    for col, (i, j) in enumerate(columns):
        block = words.copy()
        transform(block, less, i, j)
        pos = np.searchsorted(keys, _keys(block))
        out[:, col] = pos.astype(np.int32)
    return out


def move_table(words, less):
    n = words.shape[1]
    cols = [(i, j) for i in range(n) for j in range(n)]
    return _table(words, less, _move_rows, n * n, cols)


def tau_table(words, less):
    n = words.shape[1]
    cols = [(k, k + 1) for k in range(n - 1)]
    return _table(words, less, _move_rows, n - 1, cols)


def swap_word_table(words, less):
    n = words.shape[1]
    cols = [(i, j) for i in range(n) for j in range(n)]
    return _table(words, less, _swap_word_rows, n * n, cols)


def run_chains(start, less, draws):
    chains, steps, _ = draws.shape
    n = start.shape[0]
    w = np.tile(start, (chains, 1))
    rows = np.arange(chains)
    for s in range(steps):
        i = draws[:, s, 0].astype(np.int64)
        j = draws[:, s, 1].astype(np.int64)
        asc = i <= j
        length = np.where(asc, j - i, i - j)
        # the move is a fixed-length fan of adjacent swaps; run them as
        # lockstep substeps, each chain active while its fan lasts
        for sub in range(n - 1):
            act = sub < length
            if not act.any():
                break
            k = np.where(asc, i + sub, i - 1 - sub)
            r = rows[act]
            kk = k[act]
            a = w[r, kk]
            b = w[r, kk + 1]
            swap = ~(less[a - 1, b - 1] | less[b - 1, a - 1])
            rs = r[swap]
            ks = kk[swap]
            tmp = w[rs, ks].copy()
            w[rs, ks] = w[rs, ks + 1]
            w[rs, ks + 1] = tmp
    return w


def eccentricities(succ):
    m = succ.shape[0]
    ecc = np.empty(m, np.int32)
    for s in range(m):
        seen = np.zeros(m, bool)
        seen[s] = True
        frontier = np.array([s])
        d = 0
        while True:
            nxt = np.unique(succ[frontier].ravel())
            nxt = nxt[~seen[nxt]]
            if nxt.size == 0:
                break
            seen[nxt] = True
            frontier = nxt
            d += 1
        ecc[s] = d
    return ecc


def step_distribution(v, succ):
    m, deg = succ.shape
    out = np.bincount(succ.ravel(), weights=np.repeat(v, deg), minlength=m)
    return out / deg


def jacobi_eigenvalues(a, tol):
    d = a.shape[0]
    thresh = tol * np.linalg.norm(a) + 1e-300
    for _ in range(60):
        off = a - np.diag(np.diag(a))
        if np.linalg.norm(off) <= thresh:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + np.sqrt(1.0 + theta * theta))
                cth = 1.0 / np.sqrt(1.0 + t * t)
                sth = t * cth
                rot_p = cth * a[:, p] - sth * a[:, q]
                rot_q = sth * a[:, p] + cth * a[:, q]
                a[:, p] = rot_p
                a[:, q] = rot_q
                rot_p = cth * a[p, :] - sth * a[q, :]
                rot_q = sth * a[p, :] + cth * a[q, :]
                a[p, :] = rot_p
                a[q, :] = rot_q
    return np.diag(a).copy()
