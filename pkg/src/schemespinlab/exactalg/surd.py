"""Real multiquadratic numbers: finite sums r_1 sqrt(s_1) + ... with s_i squarefree.

Ladder operators built from integer Jacobi data carry entries like sqrt(62) and
sqrt(93) side by side.  Embedding all of them in one cyclotomic field would need
an order in the hundreds of billions, while sums of square roots of squarefree
integers multiply and compare cheaply on their own.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import mpmath


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n > 0 as m^2 * s with s squarefree; return (m, s)."""
    if n <= 0:
        raise ValueError("squarefree_split expects a positive integer")
    m, s = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        m *= p ** (e // 2)
        if e % 2:
            s *= p
        p += 1 if p == 2 else 2
    return m, s * n


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


class Surd:
    """Exact real number sum_s r_s sqrt(s) over distinct squarefree s >= 1."""

    __slots__ = ("_terms",)
    __hash__ = None

    def __init__(self, terms=None):
        acc: dict[int, Fraction] = {}
        for s, r in dict(terms or {}).items():
            r = Fraction(r)
            if r == 0:
                continue
            m, sf = squarefree_split(int(s))
            acc[sf] = acc.get(sf, Fraction(0)) + r * m
        self._terms = tuple(sorted((s, r) for s, r in acc.items() if r != 0))

    @classmethod
    def sqrt(cls, x) -> Surd | Fraction:
        """Exact square root of a non-negative rational."""
        x = Fraction(x)
        if x < 0:
            raise ValueError("Surd.sqrt needs a non-negative rational")
        if x == 0:
            return Fraction(0)
        # sqrt(p/q) = sqrt(p q) / q
        m, s = squarefree_split(x.numerator * x.denominator)
        return cls({s: Fraction(m, x.denominator)})._demote()

    @classmethod
    def _raw(cls, acc: dict[int, Fraction]):
        obj = cls.__new__(cls)
        obj._terms = tuple(sorted((s, r) for s, r in acc.items() if r != 0))
        return obj._demote()

    def _demote(self):
        if not self._terms:
            return Fraction(0)
        if len(self._terms) == 1 and self._terms[0][0] == 1:
            return self._terms[0][1]
        return self

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def __float__(self) -> float:
        return float(sum(float(r) * math.sqrt(s) for s, r in self._terms))

    def __complex__(self) -> complex:
        return complex(float(self))

    def to_mpc(self) -> mpmath.mpc:
        return mpmath.mpc(sum(mpmath.mpf(r.numerator) / r.denominator * mpmath.sqrt(s)
                              for s, r in self._terms))

    def __abs__(self) -> float:
        return abs(float(self))

    def __repr__(self) -> str:
        parts = [f"{r}" if s == 1 else f"{r}*sqrt({s})" for s, r in self._terms]
        return "Surd(" + " + ".join(parts) + ")"

    def conjugate(self):
        return self

    def to_cyclo(self):
        from .scalars import cyclo_sqrt_int

        total = Fraction(0)
        for s, r in self._terms:
            total = total + r * (cyclo_sqrt_int(s) if s > 1 else 1)
        return total

    # -- arithmetic ----------------------------------------------------------
    @staticmethod
    def _terms_of(other) -> dict[int, Fraction] | None:
        if isinstance(other, Surd):
            return dict(other._terms)
        if isinstance(other, (int, Rational)):
            return {1: Fraction(other)} if other != 0 else {}
        return None

    def __add__(self, other):
        t = self._terms_of(other)
        if t is None:
            if isinstance(other, (float, complex)):
                return float(self) + other
            return NotImplemented
        acc = dict(self._terms)
        for s, r in t.items():
            acc[s] = acc.get(s, Fraction(0)) + r
        return Surd._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return Surd._raw({s: -r for s, r in self._terms})

    def __pos__(self):
        return self

    def __sub__(self, other):
        t = self._terms_of(other)
        if t is None:
            if isinstance(other, (float, complex)):
                return float(self) - other
            return NotImplemented
        return self + Surd._raw({s: -r for s, r in t.items()}) if t else self

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        t = self._terms_of(other)
        if t is None:
            if isinstance(other, (float, complex)):
                return float(self) * other
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for s1, r1 in self._terms:
            for s2, r2 in t.items():
                g = math.gcd(s1, s2)
                s = (s1 // g) * (s2 // g)
                acc[s] = acc.get(s, Fraction(0)) + r1 * r2 * g
        return Surd._raw(acc)

    __rmul__ = __mul__

    def inverse(self):
        primes = sorted({p for s, _ in self._terms for p in _prime_factors(s)})
        if not primes:
            return 1 / self._terms[0][1]
        # split off the largest prime p: x = a + b sqrt(p), 1/x = (a - b sqrt(p)) / (a^2 - p b^2)
        p = primes[-1]
        a = Surd._raw({s: r for s, r in self._terms if s % p})
        b = Surd._raw({s // p: r for s, r in self._terms if s % p == 0})
        norm = a * a - b * b * p
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        conj = a - b * Surd({p: 1})
        inv_norm = norm.inverse() if isinstance(norm, Surd) else 1 / norm
        return conj * inv_norm

    def __truediv__(self, other):
        if isinstance(other, (float, complex)):
            return float(self) / other
        t = self._terms_of(other)
        if t is None:
            return NotImplemented
        if isinstance(other, Surd):
            return self * other.inverse()
        if other == 0:
            raise ZeroDivisionError("division by zero")
        return self * (1 / Fraction(other))

    def __rtruediv__(self, other):
        if isinstance(other, (float, complex)):
            return other / float(self)
        return self.inverse() * other

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        result = Fraction(1)
        for _ in range(abs(e)):
            result = result * base
        return result

    def __eq__(self, other):
        t = self._terms_of(other)
        if t is None:
            if isinstance(other, (float, complex)):
                return float(self) == other
            if hasattr(other, "order"):
                return self.to_cyclo() == other
            return NotImplemented
        return dict(self._terms) == {s: r for s, r in t.items() if r != 0}

    def __bool__(self) -> bool:
        return bool(self._terms)
