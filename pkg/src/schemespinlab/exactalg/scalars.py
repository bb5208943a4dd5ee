"""Scalar helpers shared by exact and floating code paths.

Exact scalars are ``int``, ``Fraction``, :class:`Cyclo` and :class:`Surd`;
approximate scalars are Python/numpy complex numbers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import mpmath
import numpy as np

from .cyclotomic import Cyclo, totient
from .surd import Surd, squarefree_split

EXACT_TYPES = (int, Fraction, Cyclo, Surd)



class NotCyclotomic(ValueError):
    """A value could not be identified inside any cyclotomic field tried."""


def is_exact(x) -> bool:
    return isinstance(x, EXACT_TYPES)


def as_scalar(x):
    """Coerce user input (str, int, Fraction, Cyclo, Surd, float, complex)."""
    if isinstance(x, (Cyclo, Surd, Fraction)):
        return x
    if isinstance(x, (bool, int, np.integer)):
        return int(x)
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (float, complex, np.floating, np.complexfloating)):
        return complex(x)
    raise TypeError(f"unsupported scalar {x!r}")


def conj(x):
    if isinstance(x, (int, Fraction, Surd)):
        return x
    if isinstance(x, Cyclo):
        return x.conjugate()
    return complex(x).conjugate()


def to_complex(x) -> complex:
    return complex(x)


def to_mpc(x) -> mpmath.mpc:
    if isinstance(x, (Cyclo, Surd)):
        return x.to_mpc()
    if isinstance(x, (int, Fraction)):
        return mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)
    return mpmath.mpc(complex(x))


def order_of(x) -> int:
    """Smallest N we know of with x in Q(zeta_N) (1 for rationals)."""
    if isinstance(x, Cyclo):
        return x.order
    if isinstance(x, Surd):
        n = 1
        for s in x.terms:
            n = math.lcm(n, _sqrt_order(s))
        return n
    return 1


def _sqrt_order(s: int) -> int:
    # sqrt(s) for squarefree s > 0 lives in Q(zeta_s) or Q(zeta_4s)/Q(zeta_8s)
    if s == 1:
        return 1
    if s % 2 == 0:
        return 4 * s
    return s if s % 4 == 1 else 4 * s


def root_of_unity(n: int, k: int = 1):
    return Cyclo.root(n, k)


@lru_cache(maxsize=None)
def _sqrt_prime(p: int) -> Cyclo:
    if p == 2:
        return Cyclo(8, [0, 1, 0, 0, 0, 0, 0, 1])
    # quadratic Gauss sum g = sum (a/p) zeta_p^a, g^2 = (-1)^((p-1)/2) p
    coeffs = [0] * p
    for a in range(1, p):
        coeffs[a] = 1 if pow(a, (p - 1) // 2, p) == 1 else -1
    g = Cyclo(p, coeffs)
    if p % 4 == 1:
        return g
    return g * Cyclo.root(4, 3)


def cyclo_sqrt_int(m: int):
    """Principal square root of a nonzero integer as a cyclotomic number."""
    if m == 0:
        return Fraction(0)
    a, s = squarefree_split(abs(m))
    out = Fraction(a)
    for p in _prime_divisors(s):
        out = out * _sqrt_prime(p)
    if m < 0:
        out = out * Cyclo.root(4, 1)
    return out


def _prime_divisors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def candidate_orders(hint: int = 1, max_phi: int = 16) -> list[int]:
    """Cyclotomic orders to try when identifying a number.

    Small fields come first so that answers are written in the smallest
    convenient field; beyond degree 4 only fields not contained in another
    candidate are kept, since a relation over a subfield is also found there.
    """
    cands = set()
    for m in range(1, 61):
        for base in {1, hint}:
            n = math.lcm(base, m)
            if totient(n) <= max_phi:
                cands.add(n)
    for d in range(1, hint + 1):
        if hint % d == 0 and totient(d) <= max_phi:
            cands.add(d)
    # Q(zeta_n) = Q(zeta_2n) for odd n: keep the smaller representative
    cands = {n for n in cands if not (n % 4 == 2 and n // 2 in cands)}
    small = [n for n in cands if totient(n) <= 4]
    big = [n for n in cands if totient(n) > 4
           and not any(m != n and m % n == 0 for m in cands)]
    return sorted(small, key=lambda n: (totient(n), n)) + \
        sorted(big, key=lambda n: (totient(n), n))


def recognize(z, *, hint: int = 1, max_phi: int = 8, dps: int = 80):
    """Identify a high precision complex number as an element of Q(zeta_N).

    Tries fields in increasing degree and runs PSLQ on the power basis.  The
    caller is expected to verify the result exactly; a ``None`` return means
    nothing was found within ``max_phi``.
    """
    with mpmath.workdps(dps):
        z = mpmath.mpc(z)
        # transcendental weight folds re and im into one real without aliasing
        weight = mpmath.sqrt(2) + mpmath.pi / 7
        scale = max(mpmath.mpf(1), abs(z))
        tol = mpmath.mpf(10) ** (15 - dps) * scale
        if abs(z) <= tol:
            return Fraction(0)
        for n in candidate_orders(hint, max_phi):
            deg = totient(n)
            basis = [mpmath.expjpi(mpmath.mpf(2 * k) / n) for k in range(deg)]
            vec = [z.real + weight * z.imag] + [b.real + weight * b.imag for b in basis]
            try:
                rel = mpmath.pslq(vec, tol=tol, maxcoeff=10 ** 9, maxsteps=5000)
            except (ValueError, ZeroDivisionError):
                rel = None
            if not rel or rel[0] == 0:
                continue
            coeffs = [Fraction(-c, rel[0]) for c in rel[1:]]
            cand = Cyclo(n, coeffs)._demote() if n > 1 else coeffs[0]
            if abs(to_mpc(cand) - z) <= tol:
                return cand
    return None


def exact_sqrt(x):
    """Exact square root: Surd for positive rationals, cyclotomic otherwise.

    Raises :class:`NotCyclotomic` when no exact root is found.
    """
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        if x >= 0:
            return Surd.sqrt(x)
        return Surd.sqrt(-x) * Cyclo.root(4, 1) if Surd.sqrt(-x) != 0 else Fraction(0)
    if isinstance(x, (Cyclo, Surd)):
        with mpmath.workdps(110):
            root = mpmath.sqrt(to_mpc(x))
            cand = recognize(root, hint=order_of(x))
        if cand is not None and cand * cand == x:
            return cand
        raise NotCyclotomic(f"no exact square root found for {x!r}")
    raise TypeError(f"exact_sqrt needs an exact scalar, got {type(x).__name__}")


def is_zero(x, tol: float | None = None) -> bool:
    if isinstance(x, EXACT_TYPES):
        return x == 0
    return abs(complex(x)) <= (tol if tol is not None else 0.0)
