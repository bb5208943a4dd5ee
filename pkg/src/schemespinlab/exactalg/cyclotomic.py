"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element of Q(zeta_N) is stored as an integer numerator vector over the
power basis 1, zeta, ..., zeta^(phi(N)-1) together with one positive common
denominator.  Every element is kept reduced modulo the cyclotomic polynomial
Phi_N, so two equal elements of the same order have identical storage.

Elements of different orders combine by lifting both to Q(zeta_lcm).
Results that turn out to be rational are returned as ``Fraction``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import mpmath


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; division is exact by construction
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for j, dc in enumerate(den):
                num[i - dn + j] -= c * dc
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds x^k mod Phi_n for 0 <= k < max(n, 2 phi(n))."""
    phi_poly = cyclotomic_polynomial(n)
    deg = len(phi_poly) - 1
    rows = []
    cur = [1] + [0] * (deg - 1) if deg > 0 else []
    for _ in range(max(n, 2 * deg)):
        rows.append(tuple(cur))
        # multiply by x, then fold the overflow coefficient back with Phi_n
        top = cur[-1] if deg else 0
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi_poly[j]
    return tuple(rows)


@lru_cache(maxsize=None)
def _roots_complex(n: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * math.pi * k / n) for k in range(n))


def _reduce(n: int, coeffs) -> list[int]:
    """Fold an integer vector indexed by exponent into the power basis mod Phi_n."""
    deg = totient(n)
    table = _power_table(n)
    out = [0] * deg
    for k, c in enumerate(coeffs):
        if not c:
            continue
        if k < deg:
            out[k] += c
        else:
            row = table[k % n] if k >= len(table) else table[k]
            for j, r in enumerate(row):
                if r:
                    out[j] += c * r
    return out


def _as_fraction(x) -> Fraction | None:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return None


class Cyclo:
    """Element of the cyclotomic field Q(zeta_order).

    Build one with ``Cyclo(order, coeffs)`` where ``coeffs[k]`` is the rational
    coefficient of zeta^k; any length is accepted and exponents are read mod
    ``order``.  ``Cyclo.root(n, k)`` is zeta_n^k.
    """

    __slots__ = ("order", "_num", "_den")
    __hash__ = None  # equal values may carry different orders

    def __init__(self, order: int, coeffs):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        fracs = [Fraction(c) if not isinstance(c, Fraction) else c for c in coeffs]
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        folded = [0] * order
        for k, f in enumerate(fracs):
            folded[k % order] += f.numerator * (den // f.denominator)
        self._set(order, _reduce(order, folded), den)

    def _set(self, order: int, num: list[int], den: int) -> None:
        g = den
        for c in num:
            if c:
                g = math.gcd(g, c)
                if g == 1:
                    break
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.order = order
        self._num = tuple(num)
        self._den = den

    @classmethod
    def _make(cls, order: int, num: list[int], den: int):
        obj = cls.__new__(cls)
        obj._set(order, num, den)
        return obj._demote()

    @classmethod
    def root(cls, n: int, k: int = 1):
        """zeta_n^k, demoted to a rational when it is +1 or -1."""
        obj = cls.__new__(cls)
        row = [0] * n
        row[k % n] = 1
        obj._set(n, _reduce(n, row), 1)
        return obj._demote()

    def _demote(self):
        if all(c == 0 for c in self._num[1:]):
            return Fraction(self._num[0] if self._num else 0, self._den)
        return self

    # -- views -------------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Reduced coefficient vector of length ``order`` (zero padded)."""
        vals = [Fraction(c, self._den) for c in self._num]
        return tuple(vals + [Fraction(0)] * (self.order - len(vals)))

    def is_rational(self) -> bool:
        return all(c == 0 for c in self._num[1:])

    def __complex__(self) -> complex:
        roots = _roots_complex(self.order)
        return complex(sum(c * roots[k] for k, c in enumerate(self._num) if c) / self._den)

    def to_mpc(self) -> mpmath.mpc:
        total = mpmath.mpc(0)
        for k, c in enumerate(self._num):
            if c:
                total += c * mpmath.expjpi(mpmath.mpf(2 * k) / self.order)
        return total / self._den

    def __abs__(self) -> float:
        return abs(complex(self))

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self._num):
            if c:
                f = Fraction(c, self._den)
                terms.append(f"{f}" if k == 0 else f"{f}*z{self.order}^{k}")
        return "Cyclo(" + (" + ".join(terms) or "0") + ")"

    # -- field structure ---------------------------------------------------
    def lift(self, m: int) -> Cyclo:
        """Same value written in Q(zeta_m); ``order`` must divide m."""
        if m == self.order:
            return self
        if m % self.order:
            raise ValueError(f"cannot embed Q(zeta_{self.order}) in Q(zeta_{m})")
        step = m // self.order
        full = [0] * m
        for k, c in enumerate(self._num):
            full[k * step] = c
        obj = Cyclo.__new__(Cyclo)
        obj._set(m, _reduce(m, full), self._den)
        return obj

    def galois(self, a: int) -> Cyclo | Fraction:
        """Apply the automorphism zeta -> zeta^a (a coprime to the order)."""
        n = self.order
        if math.gcd(a, n) != 1:
            raise ValueError("Galois exponent must be coprime to the order")
        full = [0] * n
        for k, c in enumerate(self._num):
            full[(a * k) % n] += c
        return Cyclo._make(n, _reduce(n, full), self._den)

    def conjugate(self) -> Cyclo | Fraction:
        return self.galois(-1)

    def inverse(self) -> Cyclo | Fraction:
        n = self.order
        deg = totient(n)
        if not any(self._num):
            raise ZeroDivisionError("inverse of zero")
        # columns: self * zeta^j in the power basis
        cols = []
        for j in range(deg):
            shifted = [0] * j + list(self._num)
            cols.append(_reduce(n, shifted))
        mat = [[Fraction(cols[j][i]) for j in range(deg)] + [Fraction(int(i == 0))]
               for i in range(deg)]
        for c in range(deg):
            piv = next(r for r in range(c, deg) if mat[r][c] != 0)
            mat[c], mat[piv] = mat[piv], mat[c]
            pv = mat[c][c]
            mat[c] = [v / pv for v in mat[c]]
            for r in range(deg):
                if r != c and mat[r][c] != 0:
                    f = mat[r][c]
                    mat[r] = [a - f * b for a, b in zip(mat[r], mat[c])]
        sol = [mat[i][deg] * self._den for i in range(deg)]
        return Cyclo(n, sol)._demote()

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        """Return (a, b) as Cyclo of a common order, or None if unsupported."""
        f = _as_fraction(other)
        if f is not None:
            obj = Cyclo.__new__(Cyclo)
            num = [0] * totient(self.order)
            if num:
                num[0] = f.numerator
            obj._set(self.order, num, f.denominator)
            return self, obj
        if isinstance(other, Cyclo):
            if other.order == self.order:
                return self, other
            m = self.order * other.order // math.gcd(self.order, other.order)
            return self.lift(m), other.lift(m)
        to_cyclo = getattr(other, "to_cyclo", None)
        if to_cyclo is not None:
            return self._coerce(to_cyclo())
        return None

    def __add__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) + other
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        den = a._den * b._den // math.gcd(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        num = [x * fa + y * fb for x, y in zip(a._num, b._num)]
        return Cyclo._make(a.order, num, den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo._make(self.order, [-c for c in self._num], self._den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) - other
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        if isinstance(other, (float, complex)):
            return other - complex(self)
        return (-self) + other

    def __mul__(self, other):
        f = _as_fraction(other)
        if f is not None:
            return Cyclo._make(self.order, [c * f.numerator for c in self._num],
                               self._den * f.denominator)
        if isinstance(other, (float, complex)):
            return complex(self) * other
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        deg = len(a._num)
        prod = [0] * (2 * deg - 1)
        for i, x in enumerate(a._num):
            if x:
                for j, y in enumerate(b._num):
                    if y:
                        prod[i + j] += x * y
        return Cyclo._make(a.order, _reduce(a.order, prod), a._den * b._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        f = _as_fraction(other)
        if f is not None:
            if f == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / f)
        if isinstance(other, (float, complex)):
            return complex(self) / other
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        inv = b.inverse()
        return a * inv

    def __rtruediv__(self, other):
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return self.inverse() * other

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result: Cyclo | Fraction = Fraction(1)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) == other
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a._den == b._den and a._num == b._num

    def __bool__(self) -> bool:
        return any(self._num)
