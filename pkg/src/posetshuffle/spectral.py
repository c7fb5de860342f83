"""Spectra of the shuffle matrices and the second-eigenvalue bound.

The bound under test is (n+1)(n-2)/n^2 for a poset on n elements: every
connected poset should sit strictly below it, every disconnected one should
attain it exactly, and the whole spectrum should be nonnegative.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._backend import kernels
from .chains import lumped_matrix, random_to_random_matrix, sort_fibers
from .errors import ConnectedPoset, LengthMismatch, RangeError, TrivialPoset
from .extensions import enumerate_extensions, is_linear_extension
from .poset import Poset, is_connected, n_shape_triple
from .ratmat import RationalMatrix


def eigenvalues_symmetric(m, tol=1e-9, method="lapack"):
    """Descending eigenvalues of an exactly symmetric RationalMatrix.

    method='lapack' uses the standard dense solver; method='jacobi' runs the
    in-package rotation sweep as an independent cross-check.
    """
    m.require_symmetric()
    a = m.to_float()
    if method == "lapack":
        eigs = np.linalg.eigvalsh(a)[::-1].copy()
    elif method == "jacobi":
        eigs = np.sort(kernels().jacobi_eigenvalues(a.copy(), min(tol, 1e-12)))[
            ::-1
        ].copy()
    else:
        raise RangeError(f"unknown eigensolver {method!r}")
    drift = abs(math.fsum(eigs) - float(m.trace()))
    assert drift <= 10 * tol, f"eigenvalue sum drifts from trace by {drift}"
    return eigs


def conjecture_bound(n):
    """Fraction (n+1)(n-2)/n^2, the conjectured ceiling for the second
    eigenvalue of the full shuffle."""
    if n < 1:
        raise RangeError("need n >= 1")
    return Fraction((n + 1) * (n - 2), n * n)


@dataclass(frozen=True)
class SpectralReport:
    n: int
    covers: tuple
    num_extensions: int
    connected: bool
    eigenvalues: tuple
    lambda2: float
    min_eigenvalue: float
    bound: Fraction
    satisfies_bound: bool
    is_tight: bool
    all_nonnegative: bool
    spectral_gap: float
    relaxation_time: float
    tol: float

    def to_json_dict(self):
        return {
            "n": self.n,
            "covers": [list(c) for c in self.covers],
            "num_extensions": self.num_extensions,
            "connected": self.connected,
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "lambda2": self.lambda2,
            "min_eigenvalue": self.min_eigenvalue,
            "bound": [self.bound.numerator, self.bound.denominator],
            "bound_float": float(self.bound),
            "satisfies_bound": self.satisfies_bound,
            "is_tight": self.is_tight,
            "all_nonnegative": self.all_nonnegative,
            "spectral_gap": self.spectral_gap,
            "relaxation_time": self.relaxation_time,
            "tol": self.tol,
        }


def conjecture_check(p, tol=1e-9, method="lapack", ext=None):
    """Spectral report for the full shuffle on p; needs at least two states."""
    if ext is None:
        ext = enumerate_extensions(p)
    if len(ext) == 1:
        raise TrivialPoset("single linear extension, no second eigenvalue")
    m = random_to_random_matrix(p, ext)
    eigs = eigenvalues_symmetric(m, tol=tol, method=method)
    top = eigs[0]
    assert abs(top - 1.0) <= 10 * tol
    lam2 = float(eigs[1])
    bound = conjecture_bound(p.n)
    bf = float(bound)
    gap = 1.0 - lam2
    return SpectralReport(
        n=p.n,
        covers=p.covers,
        num_extensions=len(ext),
        connected=is_connected(p),
        eigenvalues=tuple(float(x) for x in eigs),
        lambda2=lam2,
        min_eigenvalue=float(eigs[-1]),
        bound=bound,
        satisfies_bound=lam2 <= bf + tol,
        is_tight=abs(lam2 - bf) <= tol,
        all_nonnegative=float(eigs[-1]) >= -tol,
        spectral_gap=gap,
        relaxation_time=1.0 / gap,
        tol=tol,
    )


def special_extensions(n, k):
    """The extensions of the two-chain poset that carry the rank-one
    correction: the hook word, the insertions of value k+1 into the first
    chain, and the insertions of value k into the second chain."""
    if not (1 <= k < n):
        raise RangeError("need 1 <= k < n")
    first = list(range(1, k + 1))
    second = list(range(k + 1, n + 1))
    hook = tuple(first[:-1] + second + [k])
    into_first = [
        tuple(first[: i - 1] + [k + 1] + first[i - 1 :] + second[1:])
        for i in range(1, k + 1)
    ]
    into_second = [
        tuple(first[:-1] + second[: j - k] + [k] + second[j - k :])
        for j in range(k + 1, n + 1)
    ]
    assert into_first[-1] == into_second[0]
    assert into_second[-1] == hook
    return hook, into_first, into_second


@dataclass(frozen=True)
class RankOneCertificate:
    """Exact witness that one added cross relation perturbs the shuffle by a
    symmetric rank-two correction tau (c c^T - d d^T)."""

    n: int
    k: int
    tau: Fraction
    c: tuple
    d: tuple
    hook: tuple
    into_first: tuple
    into_second: tuple
    two_chain_matrix: RationalMatrix
    split_matrix: RationalMatrix
    verified: bool

    def to_json_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "tau": [self.tau.numerator, self.tau.denominator],
            "c": list(self.c),
            "d": list(self.d),
            "hook": list(self.hook),
            "into_first": [list(w) for w in self.into_first],
            "into_second": [list(w) for w in self.into_second],
            "verified": self.verified,
        }


def rank_one_certificate(n, k):
    """Build and verify the exact correction for the two-chain poset with the
    cross relation k+1 below k added."""
    p, p1, p2 = n_shape_triple(n, k)
    ext = enumerate_extensions(p)
    m = random_to_random_matrix(p, ext)

    ext1 = enumerate_extensions(p1)
    m1 = random_to_random_matrix(p1, ext1)
    chain_word = tuple(range(1, n + 1))
    split_num = np.zeros((len(ext), len(ext)), np.int64)
    where = np.array(
        [
            -1 if ext[a] == chain_word else ext1.position(ext[a])
            for a in range(len(ext))
        ]
    )
    for a in range(len(ext)):
        for b in range(len(ext)):
            if where[a] < 0 or where[b] < 0:
                split_num[a, b] = n * n if a == b else 0
            else:
                split_num[a, b] = m1.num[where[a], where[b]] * (
                    n * n // m1.den
                )
    split = RationalMatrix(split_num, n * n)

    hook, into_first, into_second = special_extensions(n, k)
    for w in [hook, *into_first, *into_second]:
        assert is_linear_extension(p, w)
    c = np.zeros(len(ext), np.int64)
    d = np.zeros(len(ext), np.int64)
    for w in into_first:
        c[ext.position(w)] += n - k
        d[ext.position(w)] += n - k
    for w in into_second:
        c[ext.position(w)] += k
        d[ext.position(w)] -= k
    c[ext.position(chain_word)] -= 2 * k * (n - k)

    tau = Fraction(1, 2 * k * (n - k) * n * n)
    predicted = m + RationalMatrix.rank_one(c, tau) - RationalMatrix.rank_one(d, tau)
    verified = predicted == split
    return RankOneCertificate(
        n=n,
        k=k,
        tau=tau,
        c=tuple(int(x) for x in c),
        d=tuple(int(x) for x in d),
        hook=hook,
        into_first=tuple(into_first),
        into_second=tuple(into_second),
        two_chain_matrix=m,
        split_matrix=split,
        verified=verified,
    )


def interlacing_check(base, shifted, direction, tol=1e-9):
    """Eigenvalue interleaving after a rank-one update.

    Both inputs are descending. direction='up' covers adding a nonnegative
    multiple of an outer product: each shifted eigenvalue after the first
    lies between the base eigenvalue of the same index and the one before
    it, and the first may only rise. direction='down' is the mirror image.
    """
    base = np.asarray(base, dtype=np.float64)
    shifted = np.asarray(shifted, dtype=np.float64)
    if base.shape != shifted.shape:
        raise LengthMismatch("eigenvalue lists differ in length")
    d = base.size
    if direction == "up":
        if shifted[0] < base[0] - tol:
            return False
        for i in range(1, d):
            if not (base[i] - tol <= shifted[i] <= base[i - 1] + tol):
                return False
        return True
    if direction == "down":
        if shifted[d - 1] > base[d - 1] + tol:
            return False
        for i in range(d - 1):
            if not (base[i + 1] - tol <= shifted[i] <= base[i] + tol):
                return False
        return True
    raise RangeError(f"unknown direction {direction!r}")


def lifted_spectrum_check(p, tol=1e-9):
    """For a disconnected poset, the quotient chain on the per-component
    total order must be exactly lumpable and its spectrum must appear inside
    the full spectrum (as a set, within tol)."""
    if is_connected(p):
        raise ConnectedPoset("quotient construction needs several components")
    fibers, q, ext, ext_q = sort_fibers(p)
    mp = random_to_random_matrix(p, ext)
    lumped = lumped_matrix(mp, fibers)
    mq = random_to_random_matrix(q, ext_q)
    if lumped != mq:
        return False
    big = eigenvalues_symmetric(mp, tol=tol)
    small = eigenvalues_symmetric(lumped, tol=tol)
    for lam in small:
        if np.abs(big - lam).min() > tol:
            return False
    return True
