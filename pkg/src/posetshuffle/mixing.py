"""Mixing behaviour: total-variation profiles, exact mixing times, the
spectral sandwich, graph diameter, sampling and the growth experiment.

Unless stated otherwise the chain is the full shuffle, the stationary law
is uniform on the extensions, and distances are worst case over starts.
The growth experiment instead starts at the lex-least extension, which is
also the default start for sampling.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .chains import lazy_adjacent_matrix, random_to_random_matrix
from .errors import (
    LengthMismatch,
    NoConvergence,
    NotADistribution,
    RangeError,
)
from .extensions import enumerate_extensions
from .poset import canonical_form, random_poset
from .ratmat import RationalMatrix
from .spectral import eigenvalues_symmetric


def tv_distance(u, v):
    """Total variation distance between two probability vectors."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape or u.ndim != 1:
        raise LengthMismatch("distributions differ in length")
    for w in (u, v):
        if w.min() < -1e-12 or abs(w.sum() - 1.0) > 1e-9:
            raise NotADistribution("entries must be nonnegative and sum to 1")
    return 0.5 * float(np.abs(u - v).sum())


def _worst_distance(powered):
    m = powered.shape[1]
    return 0.5 * float(np.abs(powered - 1.0 / m).sum(axis=1).max())


def distance_profile(mp, k_max, from_state=None):
    """Total variation to uniform after 0..k_max steps, worst case over
    starts, or from one fixed start when from_state is given."""
    if k_max < 0:
        raise RangeError("need k_max >= 0")
    mp.require_stochastic()
    a = mp.to_float()
    if from_state is None:
        powered = np.eye(mp.dim)
    else:
        if not 0 <= from_state < mp.dim:
            raise RangeError("from_state outside the state range")
        powered = np.zeros((1, mp.dim))
        powered[0, from_state] = 1.0
    out = [_worst_distance(powered)]
    for _ in range(k_max):
        powered = powered @ a
        out.append(_worst_distance(powered))
    return out


@dataclass(frozen=True)
class MixingReport:
    dim: int
    epsilon: float
    t_mix: int
    lower_bound: float
    upper_bound: float
    lambda2: float | None
    relaxation_time: float
    diameter: int
    profile: tuple

    def to_json_dict(self):
        return {
            "dim": self.dim,
            "epsilon": self.epsilon,
            "t_mix": self.t_mix,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "lambda2": self.lambda2,
            "relaxation_time": self.relaxation_time,
            "diameter": self.diameter,
            "profile": [float(x) for x in self.profile],
        }


def _support_diameter(mp):
    adj = mp.num > 0
    np.fill_diagonal(adj, False)
    m = mp.dim
    best = 0
    for s in range(m):
        seen = np.zeros(m, bool)
        seen[s] = True
        frontier = seen.copy()
        d = 0
        while True:
            nxt = adj[frontier].any(axis=0) & ~seen
            if not nxt.any():
                break
            seen |= nxt
            frontier = nxt
            d += 1
        if not seen.all():
            raise NoConvergence("chain support graph is disconnected")
        best = max(best, d)
    return best


def exact_mixing_time(mp, epsilon, from_state=None, tol=1e-9, cap=None):
    """First k with distance at most epsilon, with the spectral sandwich
    around it.

    The matrix must be symmetric and stochastic; the bounds assume its
    spectrum is nonnegative, which holds for every chain built here and is
    asserted.  The distance is worst case over starts unless from_state
    picks one; a fixed start can only mix sooner, so the lower bound and
    the diameter bound are asserted for the worst case alone.
    """
    if not (0 < epsilon < 1):
        raise RangeError("epsilon must sit strictly between 0 and 1")
    mp.require_stochastic()
    mp.require_symmetric()
    m = mp.dim
    pi_min = 1.0 / m
    if m == 1:
        lam2 = None
        t_rel = 1.0
    else:
        eigs = eigenvalues_symmetric(mp, tol=tol)
        lam2 = float(eigs[1])
        assert eigs[-1] >= -100 * tol, "bounds need a nonnegative spectrum"
        t_rel = 1.0 / (1.0 - lam2)
    upper = math.log(1.0 / (epsilon * pi_min)) * t_rel
    lower = max(0.0, (t_rel - 1.0) * math.log(1.0 / (2.0 * epsilon)))
    if cap is None:
        cap = max(100, math.ceil(10 * upper) + 1)
    a = mp.to_float()
    if from_state is None:
        powered = np.eye(m)
    else:
        if not 0 <= from_state < m:
            raise RangeError("from_state outside the state range")
        powered = np.zeros((1, m))
        powered[0, from_state] = 1.0
    profile = [_worst_distance(powered)]
    k = 0
    while profile[-1] > epsilon:
        if k >= cap:
            raise NoConvergence(f"no mixing within {cap} steps")
        powered = powered @ a
        profile.append(_worst_distance(powered))
        k += 1
    diameter = _support_diameter(mp) if m > 1 else 0
    report = MixingReport(
        dim=m,
        epsilon=float(epsilon),
        t_mix=k,
        lower_bound=lower,
        upper_bound=upper,
        lambda2=lam2,
        relaxation_time=t_rel,
        diameter=diameter,
        profile=tuple(profile),
    )
    assert k <= upper + 1e-9
    if from_state is None:
        assert lower - 1e-9 <= k
        if epsilon < 0.5:
            assert k >= math.ceil(diameter / 2)
    return report


def shuffle_mixing(p, epsilon, tol=1e-9, ext=None):
    return exact_mixing_time(random_to_random_matrix(p, ext), epsilon, tol=tol)


def lazy_adjacent_mixing(p, epsilon, weighting="uniform", tol=1e-9, ext=None):
    return exact_mixing_time(
        lazy_adjacent_matrix(p, ext, weighting), epsilon, tol=tol
    )


def _bfs_distance(succ, a, b):
    m = succ.shape[0]
    seen = np.zeros(m, bool)
    seen[a] = True
    frontier = np.array([a])
    d = 0
    while not seen[b]:
        nxt = np.unique(succ[frontier].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
        d += 1
    return d


def diameter(p, ext=None):
    """Eccentricity maximum of the move graph on the extensions.

    Single moves sort any extension into any other within n steps, so the
    result is at most n; that and agreement with explicit sorting paths on
    a few state pairs are asserted.
    """
    from .extensions import sorting_path

    if ext is None:
        ext = enumerate_extensions(p)
    m = len(ext)
    if m == 1:
        return 0
    succ = ext.move_successors()
    ecc = kernels().eccentricities(succ)
    d = int(ecc.max())
    assert d <= p.n, "a diameter above n would contradict the path bound"
    for a, b in {(0, m - 1), (0, m // 2), (m // 2, m - 1)}:
        if a == b:
            continue
        path = sorting_path(p, ext[a], ext[b])
        assert len(path) >= _bfs_distance(succ, a, b)
    return d


def default_burn_in(n):
    """ceil(n^2 ln(10 n!) / (n + 2)): the spectral upper bound at
    epsilon = 1/10 under the conjectured gap, rounded up."""
    if n < 1:
        raise RangeError("need n >= 1")
    return math.ceil(n * n * math.log(10 * math.factorial(n)) / (n + 2))


def chain_step(p, word, rng):
    """One move of the shuffle: draw positions i, j uniformly from 1..n
    and carry the entry at i over to j.

    rng may be a seed or a generator; passing the same generator across
    calls continues one stream.
    """
    from .extensions import apply_move

    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    i, j = rng.integers(1, p.n + 1, size=2)
    return apply_move(p, word, int(i), int(j))


@dataclass(frozen=True)
class SampleTrace:
    """Replayable record of one chain run."""

    seed: int
    start: tuple
    moves: tuple
    states: tuple


def trace_chain(p, steps, seed, start=None, ext=None):
    """Run one chain recording every state; replaying the moves from the
    start must land on the same states."""
    from .extensions import apply_move

    if ext is None:
        ext = enumerate_extensions(p)
    word = ext[0] if start is None else tuple(start)
    rng = np.random.default_rng(seed)
    draws = rng.integers(1, p.n + 1, size=(steps, 2))
    states = [word]
    for s in range(steps):
        word = apply_move(p, word, int(draws[s, 0]), int(draws[s, 1]))
        states.append(word)
    return SampleTrace(
        seed=seed,
        start=states[0],
        moves=tuple((int(i), int(j)) for i, j in draws),
        states=tuple(states),
    )


@dataclass(frozen=True)
class SampleBatch:
    n: int
    count: int
    seed: int
    burn_in: int
    words: tuple
    frequencies: dict
    chi_square: float
    p_value: float

    def to_json_dict(self):
        from .extensions import format_word

        return {
            "n": self.n,
            "count": self.count,
            "seed": self.seed,
            "burn_in": self.burn_in,
            "frequencies": {
                format_word(w): c for w, c in sorted(self.frequencies.items())
            },
            "chi_square": self.chi_square,
            "p_value": self.p_value,
        }


def sample_batch(p, count, seed, burn_in=None, ext=None, keep_words=True):
    """count independent shuffles of burn_in steps from the lex-least start,
    with uniformity statistics attached.

    Draw arrays are generated up front by one seeded generator, so results
    do not depend on the kernel backend.
    """
    from scipy import stats

    if count < 1:
        raise RangeError("need count >= 1")
    if ext is None:
        ext = enumerate_extensions(p)
    if burn_in is None:
        burn_in = default_burn_in(p.n)
    if burn_in < 0:
        raise RangeError("burn-in cannot be negative")
    rng = np.random.default_rng(seed)
    if burn_in > 0:
        draws = rng.integers(0, p.n, size=(count, burn_in, 2), dtype=np.int32)
    else:
        draws = np.zeros((count, 0, 2), np.int32)
    start = np.array(ext[0], dtype=np.int32)
    finals = kernels().run_chains(start, p.less, draws)
    observed = np.zeros(len(ext), np.int64)
    freq = {}
    for row in finals:
        idx = ext.position(tuple(int(v) for v in row))
        observed[idx] += 1
    for i, c in enumerate(observed):
        if c:
            freq[ext[i]] = int(c)
    if len(ext) == 1:
        chi2, pval = 0.0, 1.0
    else:
        chi2, pval = stats.chisquare(observed)
    words = tuple(tuple(int(v) for v in row) for row in finals) if keep_words else ()
    return SampleBatch(
        n=p.n,
        count=count,
        seed=seed,
        burn_in=burn_in,
        words=words,
        frequencies=freq,
        chi_square=float(chi2),
        p_value=float(pval),
    )


def sample_extensions(p, count, seed, burn_in=None, ext=None):
    """count approximately uniform extensions, as a list of words."""
    batch = sample_batch(p, count, seed, burn_in=burn_in, ext=ext)
    return list(batch.words)


def step_frequencies(p, count, seed, ext=None):
    """Empirical one-step transition frequencies from each start state.

    Returns (counts, per_start) where counts[a, b] tallies observed moves
    a -> b using count draws split evenly over the starts.
    """
    if ext is None:
        ext = enumerate_extensions(p)
    m = len(ext)
    per_start = count // m
    if per_start < 1:
        raise RangeError("need at least one draw per start state")
    rng = np.random.default_rng(seed)
    counts = np.zeros((m, m), np.int64)
    table = ext.move_successors()
    for a in range(m):
        draws = rng.integers(0, p.n, size=(per_start, 2))
        cols = draws[:, 0] * p.n + draws[:, 1]
        np.add.at(counts[a], table[a, cols], 1)
    return counts, per_start


@dataclass(frozen=True)
class ScalingRow:
    n: int
    poset_index: int
    canonical_covers: tuple
    num_extensions: int
    t_mix: int


@dataclass(frozen=True)
class ScalingReport:
    epsilon: float
    seed: int
    n_from: int
    n_to: int
    posets_per_n: int
    rows: tuple
    means: dict
    fit_nlogn: float
    fit_n2logn: float
    residual_nlogn: float
    residual_n2logn: float
    start_rule: str = field(default="lex-least extension")

    def detail_csv_lines(self):
        out = ["n,poset_index,canonical_covers,num_extensions,t_mix"]
        for r in self.rows:
            covers = " ".join(f"{a}<{b}" for a, b in r.canonical_covers)
            out.append(
                f"{r.n},{r.poset_index},\"{covers}\","
                f"{r.num_extensions},{r.t_mix}"
            )
        return out

    def summary_csv_lines(self):
        out = ["n,mean_tmix,fit_nlogn,fit_n2logn"]
        for n in sorted(self.means):
            out.append(
                f"{n},{self.means[n]!r},"
                f"{self.fit_nlogn * n * math.log(n)!r},"
                f"{self.fit_n2logn * n * n * math.log(n)!r}"
            )
        return out

    def to_json_dict(self):
        return {
            "epsilon": self.epsilon,
            "seed": self.seed,
            "n_from": self.n_from,
            "n_to": self.n_to,
            "posets_per_n": self.posets_per_n,
            "start_rule": self.start_rule,
            "rows": [
                {
                    "n": r.n,
                    "poset_index": r.poset_index,
                    "canonical_covers": [list(c) for c in r.canonical_covers],
                    "num_extensions": r.num_extensions,
                    "t_mix": r.t_mix,
                }
                for r in self.rows
            ],
            "means": {str(n): v for n, v in sorted(self.means.items())},
            "fit_nlogn": self.fit_nlogn,
            "fit_n2logn": self.fit_n2logn,
            "residual_nlogn": self.residual_nlogn,
            "residual_n2logn": self.residual_n2logn,
        }


def identity_start_mixing_time(p, epsilon, ext=None, cap=100000):
    """First k with TV(start row of the k-th power, uniform) <= epsilon,
    starting from the lex-least extension.

    Iterates a distribution vector through the successor table, never
    forming the dense matrix, so large extension counts stay cheap.
    """
    if not (0 < epsilon < 1):
        raise RangeError("epsilon must sit strictly between 0 and 1")
    if ext is None:
        ext = enumerate_extensions(p)
    m = len(ext)
    if m == 1:
        return 0
    succ = ext.move_successors()
    v = np.zeros(m)
    v[0] = 1.0
    uniform = 1.0 / m
    k = 0
    step = kernels().step_distribution
    while 0.5 * float(np.abs(v - uniform).sum()) > epsilon:
        if k >= cap:
            raise NoConvergence(f"no mixing within {cap} steps")
        v = step(v, succ)
        k += 1
    return k


def _weighted_fit(ns, ys, f):
    num = sum(y * f(n) for n, y in zip(ns, ys))
    den = sum(f(n) ** 2 for n in ns)
    coeff = num / den
    resid = math.sqrt(
        sum((y - coeff * f(n)) ** 2 for n, y in zip(ns, ys)) / len(ns)
    )
    return coeff, resid


def scaling_experiment(
    n_from, n_to, posets_per_n=100, epsilon=0.1, seed=None, progress=None
):
    """Mean lex-least-start mixing time of the full shuffle over random
    posets, one batch per size, with growth fits against n log n and
    n^2 log n."""
    if not (2 <= n_from <= n_to):
        raise RangeError("need 2 <= n_from <= n_to")
    if n_to > 9:
        raise RangeError("sizes above 9 are out of range for this experiment")
    if posets_per_n < 1:
        raise RangeError("need posets_per_n >= 1")
    if seed is None:
        seed = int(np.random.SeedSequence().generate_state(1)[0])
    master = np.random.default_rng(seed)
    rows = []
    means = {}
    for n in range(n_from, n_to + 1):
        times = []
        for idx in range(posets_per_n):
            while True:
                sub = int(master.integers(0, 2**63 - 1))
                p = random_poset(n, sub)
                if p.relation_count < n * (n - 1) // 2:
                    break
            ext = enumerate_extensions(p)
            t = identity_start_mixing_time(p, epsilon, ext=ext)
            rows.append(
                ScalingRow(
                    n=n,
                    poset_index=idx,
                    canonical_covers=canonical_form(p),
                    num_extensions=len(ext),
                    t_mix=t,
                )
            )
            times.append(t)
            if progress is not None:
                progress(n, idx, t)
        means[n] = float(np.mean(times))
    ns = sorted(means)
    ys = [means[n] for n in ns]
    fit1, res1 = _weighted_fit(ns, ys, lambda n: n * math.log(n))
    fit2, res2 = _weighted_fit(ns, ys, lambda n: n * n * math.log(n))
    return ScalingReport(
        epsilon=float(epsilon),
        seed=seed,
        n_from=n_from,
        n_to=n_to,
        posets_per_n=posets_per_n,
        rows=tuple(rows),
        means=means,
        fit_nlogn=fit1,
        fit_n2logn=fit2,
        residual_nlogn=res1,
        residual_n2logn=res2,
    )
