"""Dense square matrices over exact scalars or complex doubles."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .cyclotomic import Cyclo
from .scalars import as_scalar, conj, is_exact, order_of
from .surd import Surd

DEFAULT_TOL = 1e-9


class DimensionMismatch(ValueError):
    pass


class SchurSingular(ZeroDivisionError):
    """Raised by :func:`schur_inverse` when an entry vanishes."""

    def __init__(self, position: tuple[int, int]):
        super().__init__(f"zero entry at position {position}")
        self.position = position


class Mat:
    """Square matrix whose entries are all exact or all complex.

    Exact matrices hold an object array of int/Fraction/Cyclo/Surd; approximate
    ones hold complex128.  Instances are treated as immutable.
    """

    __slots__ = ("data", "mode")
    __array_priority__ = 100

    def __init__(self, entries, mode: str | None = None):
        if isinstance(entries, Mat):
            entries = entries.data
        rows = [list(r) for r in entries]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square")
        vals = [[as_scalar(x) for x in r] for r in rows]
        exact = all(is_exact(x) for r in vals for x in r)
        if mode is None:
            mode = "exact" if exact else "approx"
        if mode == "exact":
            if not exact:
                raise TypeError("exact mode needs exact entries")
            data = np.empty((n, n), dtype=object)
            for i, r in enumerate(vals):
                for j, x in enumerate(r):
                    data[i, j] = x
        elif mode == "approx":
            data = np.array([[complex(x) for x in r] for r in vals], dtype=complex).reshape(n, n)
        else:
            raise ValueError(f"unknown mode {mode!r}")
        self.data = data
        self.mode = mode

    @classmethod
    def _wrap(cls, data: np.ndarray, mode: str) -> Mat:
        obj = cls.__new__(cls)
        obj.data = data
        obj.mode = mode
        return obj

    # -- constructors --------------------------------------------------------
    @classmethod
    def identity(cls, n: int, mode: str = "exact") -> Mat:
        return cls.diag([1] * n, mode)

    @classmethod
    def ones(cls, n: int, mode: str = "exact") -> Mat:
        return cls([[1] * n for _ in range(n)], mode)

    @classmethod
    def zeros(cls, n: int, mode: str = "exact") -> Mat:
        return cls([[0] * n for _ in range(n)], mode)

    @classmethod
    def diag(cls, values: Sequence, mode: str | None = None) -> Mat:
        n = len(values)
        rows = [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls(rows, mode)

    @classmethod
    def from_perm(cls, perm: Sequence[int], mode: str = "exact") -> Mat:
        """Permutation matrix with a 1 at (i, perm[i])."""
        n = len(perm)
        return cls([[int(perm[i] == j) for j in range(n)] for i in range(n)], mode)

    # -- basic views ---------------------------------------------------------
    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def order(self) -> int:
        """lcm of the cyclotomic orders of the entries (1 if all rational)."""
        if self.mode != "exact":
            return 1
        out = 1
        for x in self.data.flat:
            out = math.lcm(out, order_of(x))
        return out

    def __getitem__(self, idx):
        return self.data[idx]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.data]

    def to_complex(self) -> np.ndarray:
        if self.mode == "approx":
            return self.data.copy()
        return np.array([[complex(x) for x in r] for r in self.data], dtype=complex)

    def approx(self) -> Mat:
        return Mat._wrap(self.to_complex(), "approx")

    def __repr__(self) -> str:
        return f"Mat({self.tolist()!r}, mode={self.mode!r})"

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other: Mat) -> tuple[Mat, Mat]:
        if not isinstance(other, Mat):
            raise TypeError("expected a Mat")
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n}x{self.n} vs {other.n}x{other.n}")
        if self.mode != other.mode:
            # approx is contagious, exact never degrades silently otherwise
            return self.approx(), other.approx()
        return self, other

    def __add__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        a, b = self._check(other)
        return Mat._wrap(a.data + b.data, a.mode)

    def __sub__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        a, b = self._check(other)
        return Mat._wrap(a.data - b.data, a.mode)

    def __neg__(self):
        return Mat._wrap(-self.data, self.mode)

    def scale(self, c) -> Mat:
        c = as_scalar(c)
        if self.mode == "approx" or not is_exact(c):
            return Mat._wrap(self.to_complex() * complex(c), "approx")
        return Mat._wrap(_scale_exact(self.data, c), "exact")

    def __mul__(self, c):
        if isinstance(c, Mat):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = as_scalar(c)
        if isinstance(c, int):
            c = Fraction(c)
        return self.scale(1 / c)

    def __matmul__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        a, b = self._check(other)
        if a.mode == "approx":
            return Mat._wrap(a.data @ b.data, "approx")
        return Mat._wrap(_matmul_exact(a.data, b.data), "exact")

    def __pow__(self, e: int) -> Mat:
        result = Mat.identity(self.n, self.mode)
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    @property
    def T(self) -> Mat:
        return Mat._wrap(self.data.T.copy(), self.mode)

    def conj(self) -> Mat:
        if self.mode == "approx":
            return Mat._wrap(self.data.conj(), "approx")
        return Mat._wrap(_map_exact(self.data, conj), "exact")

    @property
    def H(self) -> Mat:
        return self.conj().T

    def trace(self):
        total = 0
        for i in range(self.n):
            total = total + self.data[i, i]
        return total

    def commutator(self, other: Mat) -> Mat:
        return self @ other - other @ self

    # -- comparisons ---------------------------------------------------------
    def equals(self, other: Mat, tol: float = DEFAULT_TOL) -> bool:
        a, b = self._check(other)
        if a.mode == "exact":
            return all(x == y for x, y in zip(a.data.flat, b.data.flat))
        return bool(np.max(np.abs(a.data - b.data), initial=0.0) <= tol)

    def __eq__(self, other):
        if not isinstance(other, Mat) or other.n != self.n:
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def is_zero(self, tol: float = DEFAULT_TOL) -> bool:
        if self.mode == "exact":
            return all(x == 0 for x in self.data.flat)
        return bool(np.max(np.abs(self.data), initial=0.0) <= tol)

    def max_abs(self) -> float:
        """Largest entry modulus, computed in floating point."""
        return float(np.max(np.abs(self.to_complex()), initial=0.0))

    def is_diagonal(self, tol: float = DEFAULT_TOL) -> bool:
        off = self - Mat.diag([self.data[i, i] for i in range(self.n)], self.mode)
        return off.is_zero(tol)


def _scale_exact(data: np.ndarray, c) -> np.ndarray:
    out = np.empty(data.shape, dtype=object)
    for idx, x in np.ndenumerate(data):
        out[idx] = 0 if (x == 0 or c == 0) else x * c
    return out


def _map_exact(data: np.ndarray, fn) -> np.ndarray:
    out = np.empty(data.shape, dtype=object)
    for idx, x in np.ndenumerate(data):
        out[idx] = fn(x)
    return out


def _matmul_exact(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    m = b.shape[1]
    # skip structural zeros; scheme matrices are mostly 0/1
    rows_b = [[(j, y) for j, y in enumerate(b[k]) if y != 0]
              for k in range(b.shape[0])]
    out = np.empty((n, m), dtype=object)
    out.fill(0)
    for i in range(n):
        acc: dict[int, object] = {}
        for k, x in enumerate(a[i]):
            if x == 0:
                continue
            for j, y in rows_b[k]:
                term = y if x == 1 else x * y
                acc[j] = acc[j] + term if j in acc else term
        for j, v in acc.items():
            out[i, j] = v
    return out


def combine(coeffs: Iterable, mats: Sequence[Mat]) -> Mat:
    """Linear combination sum c_i M_i."""
    mats = list(mats)
    total = Mat.zeros(mats[0].n, mats[0].mode)
    for c, m in zip(coeffs, mats):
        if c != 0:
            total = total + m.scale(c)
    return total


def schur_product(a: Mat, b: Mat) -> Mat:
    """Entrywise product A∘B."""
    a, b = a._check(b)
    if a.mode == "approx":
        return Mat._wrap(a.data * b.data, "approx")
    out = np.empty(a.data.shape, dtype=object)
    for idx, x in np.ndenumerate(a.data):
        y = b.data[idx]
        out[idx] = 0 if (x == 0 or y == 0) else x * y
    return Mat._wrap(out, "exact")


def schur_inverse(a: Mat, tol: float = DEFAULT_TOL) -> Mat:
    """Entrywise inverse; raises :class:`SchurSingular` at the first zero entry."""
    if a.mode == "approx":
        mags = np.abs(a.data)
        bad = np.argwhere(mags <= tol)
        if len(bad):
            raise SchurSingular(tuple(int(v) for v in bad[0]))
        return Mat._wrap(1.0 / a.data, "approx")
    out = np.empty(a.data.shape, dtype=object)
    for idx, x in np.ndenumerate(a.data):
        if x == 0:
            raise SchurSingular(tuple(int(v) for v in idx))
        out[idx] = Fraction(1, x) if isinstance(x, int) else 1 / x
    return Mat._wrap(out, "exact")


def as_mat(x, mode: str | None = None) -> Mat:
    if isinstance(x, Mat):
        if mode is None or mode == x.mode:
            return x
        if mode == "approx":
            return x.approx()
        raise TypeError("cannot convert an approximate matrix to exact mode")
    return Mat(x, mode)


def exact_entries_to_cyclo(x) -> Cyclo | Fraction:
    if isinstance(x, Surd):
        return x.to_cyclo()
    if isinstance(x, int):
        return Fraction(x)
    return x
