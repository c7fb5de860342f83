"""Exact rational matrices: integer numerators over one shared denominator.

Numerators sit in an int64 array (object dtype when entries would overflow);
the denominator is a positive python int. Instances are stored reduced, so
equality is plain array comparison. Floats appear only on explicit request.
"""

import math
from fractions import Fraction

import numpy as np

from .errors import (
    DimensionMismatch,
    LengthMismatch,
    NotStochastic,
    NotSymmetric,
)

_SAFE = 2**62


def _gcd_all(arr, den):
    g = den
    if arr.dtype == object:
        for v in arr.flat:
            g = math.gcd(g, abs(int(v)))
            if g == 1:
                return 1
        return g
    flat = np.abs(arr.ravel())
    if flat.size:
        g = math.gcd(g, int(np.gcd.reduce(flat)))
    return g


class RationalMatrix:
    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = np.array(num)
        if num.ndim != 2 or num.shape[0] != num.shape[1]:
            raise DimensionMismatch("numerator table must be square")
        if num.dtype != object:
            num = num.astype(np.int64)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den = -den
            num = -num
        g = _gcd_all(num, den)
        if g > 1:
            num = num // g
            den //= g
        num.flags.writeable = False
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @property
    def dim(self):
        return self.num.shape[0]

    @classmethod
    def identity(cls, d):
        return cls(np.eye(d, dtype=np.int64), 1)

    @classmethod
    def zeros(cls, d):
        return cls(np.zeros((d, d), np.int64), 1)

    @classmethod
    def from_fractions(cls, rows):
        fracs = [[Fraction(x) for x in row] for row in rows]
        den = 1
        for row in fracs:
            for x in row:
                den = den * x.denominator // math.gcd(den, x.denominator)
        num = [[int(x * den) for x in row] for row in fracs]
        return cls(np.array(num, dtype=object), den)

    @classmethod
    def rank_one(cls, vec, scale):
        """scale * (vec vec^T) for an integer vector and a Fraction scale."""
        vec = np.asarray(vec, dtype=np.int64)
        scale = Fraction(scale)
        outer = np.outer(vec, vec)
        return cls(outer * scale.numerator, scale.denominator)

    def _lift(self):
        return self.num if self.num.dtype == object else self.num.astype(object)

    def _peak(self):
        if self.num.size == 0:
            return 0
        if self.num.dtype == object:
            return max(abs(int(v)) for v in self.num.flat)
        return int(np.abs(self.num).max())

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def _combine(self, other, sign):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.dim != other.dim:
            raise DimensionMismatch("matrix sizes differ")
        den = self.den * other.den // math.gcd(self.den, other.den)
        fa = den // self.den
        fb = den // other.den
        overflow = (
            self.num.dtype == object
            or other.num.dtype == object
            or self._peak() * fa + other._peak() * fb >= _SAFE
        )
        if overflow:
            num = self._lift() * fa + sign * fb * other._lift()
        else:
            num = self.num * fa + sign * fb * other.num
        return RationalMatrix(num, den)

    def __mul__(self, scalar):
        scale = Fraction(scalar)
        if self._peak() * abs(scale.numerator) >= _SAFE:
            num = self._lift() * scale.numerator
        else:
            num = self.num * scale.numerator
        return RationalMatrix(num, self.den * scale.denominator)

    __rmul__ = __mul__

    def __neg__(self):
        return RationalMatrix(-self.num, self.den)

    def __matmul__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.dim != other.dim:
            raise DimensionMismatch("matrix sizes differ")
        overflow = (
            self.num.dtype == object
            or other.num.dtype == object
            or self._peak() * other._peak() * self.dim >= _SAFE
        )
        if overflow:
            num = np.dot(self._lift(), other._lift())
        else:
            num = self.num @ other.num
        return RationalMatrix(num, self.den * other.den)

    @property
    def T(self):
        return RationalMatrix(self.num.T.copy(), self.den)

    def __eq__(self, other):
        return (
            isinstance(other, RationalMatrix)
            and self.den == other.den
            and self.num.shape == other.num.shape
            and bool((self.num == other.num).all())
        )

    def __repr__(self):
        return f"RationalMatrix(dim={self.dim}, den={self.den})"

    def entry(self, i, j):
        return Fraction(int(self.num[i, j]), self.den)

    def trace(self):
        return Fraction(int(self.num.trace()), self.den)

    def permuted(self, order):
        """Simultaneous row/column reorder: entry (x, y) of the result is
        entry (order[x], order[y]) of self."""
        order = np.asarray(order)
        if sorted(order.tolist()) != list(range(self.dim)):
            raise LengthMismatch("order must be a permutation of row indices")
        return RationalMatrix(self.num[np.ix_(order, order)].copy(), self.den)

    def is_nonnegative(self):
        return bool((self.num >= 0).all())

    def is_symmetric(self):
        return bool((self.num == self.num.T).all())

    def require_symmetric(self):
        if not self.is_symmetric():
            raise NotSymmetric("matrix is not exactly symmetric")

    def is_row_stochastic(self):
        return self.is_nonnegative() and bool(
            (self.num.sum(axis=1) == self.den).all()
        )

    def is_doubly_stochastic(self):
        return self.is_row_stochastic() and bool(
            (self.num.sum(axis=0) == self.den).all()
        )

    def require_stochastic(self):
        if not self.is_row_stochastic():
            raise NotStochastic("rows do not sum to one")

    def diagonal_fractions(self):
        return [Fraction(int(v), self.den) for v in self.num.diagonal()]

    def to_float(self):
        if self.num.dtype == object:
            return self.num.astype(np.float64) / float(self.den)
        return self.num / np.float64(self.den)

    def to_json_dict(self):
        return {
            "dim": self.dim,
            "den": self.den,
            "num": [[int(v) for v in row] for row in self.num],
        }

    @classmethod
    def from_json_dict(cls, data):
        try:
            dim = data["dim"]
            den = data["den"]
            num = data["num"]
        except (KeyError, TypeError):
            raise DimensionMismatch(
                "matrix JSON needs keys 'dim', 'den', 'num'"
            ) from None
        arr = np.array(num, dtype=object)
        if arr.shape != (dim, dim):
            raise DimensionMismatch("matrix JSON dimensions disagree")
        return cls(arr, den)

    def to_csv_lines(self):
        floats = self.to_float()
        return [",".join(repr(float(x)) for x in row) for row in floats]
