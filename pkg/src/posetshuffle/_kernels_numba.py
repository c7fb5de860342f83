"""Jit-compiled hot loops.

Conventions shared with the numpy twin module:
  * words hold values 1..n, positions are 0-based,
  * ``less`` is the n x n strict-order table indexed by value-1,
  * word tables are lexicographically sorted by row,
  * a move (i, j) reinserts the card at position i at position j.
Keep the two backends behaviourally identical; parity is tested.
"""

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _tau(w, less, k):
    # swap positions k, k+1 when the two values are incomparable
    a = w[k]
    b = w[k + 1]
    if not (less[a - 1, b - 1] or less[b - 1, a - 1]):
        w[k] = b
        w[k + 1] = a


@njit(cache=True)
def apply_move(w, less, i, j):
    if i <= j:
        for k in range(i, j):
            _tau(w, less, k)
    else:
        for k in range(i - 1, j - 1, -1):
            _tau(w, less, k)


@njit(cache=True)
def apply_swap_word(w, less, i, j):
    # palindromic adjacent-swap word that equals the transposition (i j)
    # when every swap is unobstructed
    if i < j:
        for k in range(i, j):
            _tau(w, less, k)
        for k in range(j - 2, i - 1, -1):
            _tau(w, less, k)
    elif i > j:
        for k in range(i - 1, j - 1, -1):
            _tau(w, less, k)
        for k in range(j + 1, i):
            _tau(w, less, k)


@njit(cache=True)
def lex_index(words, w):
    lo = 0
    hi = words.shape[0]
    n = words.shape[1]
    while lo < hi:
        mid = (lo + hi) // 2
        below = False
        for t in range(n):
            if words[mid, t] < w[t]:
                below = True
                break
            if words[mid, t] > w[t]:
                break
        if below:
            lo = mid + 1
        else:
            hi = mid
    if lo < words.shape[0]:
        ok = True
        for t in range(n):
            if words[lo, t] != w[t]:
                ok = False
                break
        if ok:
            return lo
    return -1


@njit(cache=True)
def move_table(words, less):
    m, n = words.shape
    out = np.empty((m, n * n), np.int32)
    buf = np.empty(n, words.dtype)
    for a in range(m):
        for i in range(n):
            for j in range(n):
                for t in range(n):
                    buf[t] = words[a, t]
                apply_move(buf, less, i, j)
                out[a, i * n + j] = lex_index(words, buf)
    return out


@njit(cache=True)
def tau_table(words, less):
    m, n = words.shape
    out = np.empty((m, n - 1), np.int32)
    buf = np.empty(n, words.dtype)
    for a in range(m):
        for k in range(n - 1):
            for t in range(n):
                buf[t] = words[a, t]
            _tau(buf, less, k)
            out[a, k] = lex_index(words, buf)
    return out


@njit(cache=True)
def swap_word_table(words, less):
    m, n = words.shape
    out = np.empty((m, n * n), np.int32)
    buf = np.empty(n, words.dtype)
    for a in range(m):
        for i in range(n):
            for j in range(n):
                for t in range(n):
                    buf[t] = words[a, t]
                apply_swap_word(buf, less, i, j)
                out[a, i * n + j] = lex_index(words, buf)
    return out


@njit(cache=True)
def run_chains(start, less, draws):
    # draws[c, s] = (i, j) 0-based positions of the s-th move of chain c
    chains = draws.shape[0]
    steps = draws.shape[1]
    n = start.shape[0]
    out = np.empty((chains, n), start.dtype)
    for c in range(chains):
        w = out[c]
        for t in range(n):
            w[t] = start[t]
        for s in range(steps):
            apply_move(w, less, draws[c, s, 0], draws[c, s, 1])
    return out


@njit(cache=True)
def eccentricities(succ):
    m, deg = succ.shape
    ecc = np.zeros(m, np.int32)
    dist = np.empty(m, np.int32)
    queue = np.empty(m, np.int32)
    for s in range(m):
        for t in range(m):
            dist[t] = -1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        far = 0
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if du > far:
                far = du
            for e in range(deg):
                v = succ[u, e]
                if dist[v] < 0:
                    dist[v] = du + 1
                    queue[tail] = v
                    tail += 1
        ecc[s] = far
    return ecc


@njit(cache=True)
def step_distribution(v, succ):
    # one multiplication v @ M for the walk that picks a successor column
    # uniformly; columns with repeats weight accordingly
    m, deg = succ.shape
    out = np.zeros(m, np.float64)
    for a in range(m):
        va = v[a] / deg
        if va != 0.0:
            for e in range(deg):
                out[succ[a, e]] += va
    return out


@njit(cache=True)
def jacobi_eigenvalues(a, tol):
    # cyclic Jacobi sweeps; a is overwritten; eigenvalues returned unsorted
    d = a.shape[0]
    total = 0.0
    for r in range(d):
        for c in range(d):
            total += a[r, c] * a[r, c]
    thresh = tol * np.sqrt(total) + 1e-300
    for _ in range(60):
        off = 0.0
        for r in range(d):
            for c in range(r + 1, d):
                off += 2.0 * a[r, c] * a[r, c]
        if np.sqrt(off) <= thresh:
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
                for r in range(d):
                    arp = a[r, p]
                    arq = a[r, q]
                    a[r, p] = cth * arp - sth * arq
                    a[r, q] = sth * arp + cth * arq
                for r in range(d):
                    apr = a[p, r]
                    aqr = a[q, r]
                    a[p, r] = cth * apr - sth * aqr
                    a[q, r] = sth * apr + cth * aqr
    return np.diag(a).copy()
