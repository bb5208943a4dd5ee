"""Common eigenspaces of commuting normal matrices."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .linalg import nullspace_exact
from .mat import DEFAULT_TOL, Mat
from .scalars import NotCyclotomic, recognize, to_mpc


class NonCommuting(ValueError):
    pass


class NotDiagonalizable(ValueError):
    pass


def _check_inputs(mats: Sequence[Mat], check_normal: bool, tol: float) -> None:
    for i, a in enumerate(mats):
        if check_normal and not (a @ a.H).equals(a.H @ a, tol):
            raise NotDiagonalizable(f"input {i} is not normal")
        for j in range(i):
            if not (a @ mats[j]).equals(mats[j] @ a, tol):
                raise NonCommuting(f"inputs {j} and {i} do not commute")


def _poly_eval(coeffs: Sequence, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_mul_linear(p: list, root) -> list:
    # p(x) * (x - root), constant term first
    out: list = [0] * (len(p) + 1)
    for k, c in enumerate(p):
        out[k + 1] = out[k + 1] + c
        out[k] = out[k] - c * root
    return out


def _minimal_polynomial(m: Mat) -> tuple[list, list[Mat]]:
    """Monic minimal polynomial (constant first) and the powers I, M, ..., M^(d-1)."""
    powers = [Mat.identity(m.n, "exact")]
    while True:
        nxt = powers[-1] @ m
        cols = [list(p.data.flat) for p in powers] + [list(nxt.data.flat)]
        rows = [[c[k] for c in cols] for k in range(len(cols[0]))]
        null = nullspace_exact(rows, len(cols))
        if null:
            # I..M^(k-1) are independent, so the only relation is monic in M^k
            return null[0], powers
        powers.append(nxt)


def _eigenvalues_exact(poly: list, hint: int) -> list:
    deg = len(poly) - 1
    if deg == 1:
        return [-poly[0]]
    with mpmath.workdps(90):
        coeffs = [to_mpc(c) for c in reversed(poly)]
        roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=400)
        out = []
        for r in roots:
            val = recognize(r, hint=hint, dps=80)
            if val is None:
                val = recognize(r, hint=hint, dps=80, max_phi=16)
            if val is None or _poly_eval(poly, val) != 0:
                raise NotCyclotomic(f"eigenvalue {mpmath.nstr(r, 15)} is not in a small cyclotomic field")
            out.append(val)
    return out


def eigen_decomposition(mats: Sequence[Mat], *, check_normal: bool = True, seed: int = 0,
                        tol: float = DEFAULT_TOL, tries: int = 8) -> list[tuple[Mat, list]]:
    """Pairs (E_j, [eigenvalue of each input on E_j]) ordered as in
    :func:`simultaneous_eigenprojections`."""
    mats = list(mats)
    if not mats:
        raise ValueError("need at least one matrix")
    if any(m.mode == "approx" for m in mats):
        return _eigen_approx([m.approx() for m in mats], check_normal, seed, tol)
    _check_inputs(mats, check_normal, tol)
    n = mats[0].n
    rng = random.Random(seed)
    hint = 1
    for m in mats:
        hint = np.lcm(hint, m.order)
    for attempt in range(tries):
        coeffs = [rng.randint(1, 4 * n + 7) for _ in mats] if attempt or len(mats) > 1 else [1]
        big = Mat.zeros(n)
        for c, m in zip(coeffs, mats):
            big = big + m.scale(c)
        poly, powers = _minimal_polynomial(big)
        roots = _eigenvalues_exact(poly, int(hint))
        projs = []
        for j, lam in enumerate(roots):
            basis: list = [1]
            denom = 1
            for k, mu in enumerate(roots):
                if k != j:
                    basis = _poly_mul_linear(basis, mu)
                    denom = denom * (lam - mu)
            e = Mat.zeros(n)
            for c, p in zip(basis, powers):
                if c != 0:
                    e = e + p.scale(c)
            projs.append(e.scale(1 / denom if not isinstance(denom, int) else Fraction(1, denom)))
        result = _split_values(mats, projs, tol)
        if result is not None:
            return _order(result, n)
    raise NotDiagonalizable("could not separate the common eigenspaces")


def _split_values(mats: list[Mat], projs: list[Mat], tol: float):
    """Eigenvalue of every input on every projection, or None on a collision."""
    out = []
    for e in projs:
        tr = e.trace()
        vals = []
        for m in mats:
            me = m @ e
            mu = me.trace() / tr
            if not me.equals(e.scale(mu), tol):
                return None
            vals.append(mu)
        out.append((e, vals))
    return out


def _is_jn(e: Mat, tol: float) -> bool:
    n = e.n
    if e.mode == "exact":
        return all(x == Fraction(1, n) for x in e.data.flat)
    return bool(np.max(np.abs(e.data - 1.0 / n)) <= tol)


def _order(pairs: list[tuple[Mat, list]], n: int, tol: float = DEFAULT_TOL):
    def key(pair):
        vals = pair[1]
        return tuple(x for v in vals for x in (-round(complex(v).real, 9), round(complex(v).imag, 9)))

    first = [p for p in pairs if _is_jn(p[0], tol)]
    rest = sorted((p for p in pairs if not _is_jn(p[0], tol)), key=key)
    return first + rest


def _eigen_approx(mats: list[Mat], check_normal: bool, seed: int, tol: float):
    _check_inputs(mats, check_normal, tol)
    n = mats[0].n
    rng = np.random.default_rng(seed)
    # Hermitian and anti-Hermitian parts of commuting normal matrices all commute
    herm = np.zeros((n, n), dtype=complex)
    for m in mats:
        a = m.data
        herm += rng.uniform(1, 2) * (a + a.conj().T) / 2
        herm += rng.uniform(1, 2) * (a - a.conj().T) / 2j
    w, v = np.linalg.eigh(herm)
    scale = max(1.0, float(np.max(np.abs(w))))
    groups: list[list[int]] = []
    for k in range(n):
        if groups and abs(w[k] - w[groups[-1][-1]]) <= 1e-7 * scale:
            groups[-1].append(k)
        else:
            groups.append([k])
    projs = []
    for g in groups:
        vecs = v[:, g]
        projs.append(Mat._wrap(vecs @ vecs.conj().T, "approx"))
    result = _split_values(mats, projs, max(tol, 1e-7))
    if result is None:
        raise NotDiagonalizable("eigenvalue clusters are not common eigenspaces")
    return _order(result, n, max(tol, 1e-7))


def simultaneous_eigenprojections(mats: Sequence[Mat], *, check_normal: bool = True,
                                  seed: int = 0, tol: float = DEFAULT_TOL) -> list[Mat]:
    """Primitive idempotents of the algebra generated by commuting normal matrices.

    A random integer combination of the inputs is split with Lagrange
    interpolation over its exact eigenvalues; a collision (two common
    eigenspaces sharing an eigenvalue of the combination) triggers a retry
    with fresh coefficients.  ``J/n`` comes first when it occurs.
    """
    return [e for e, _ in eigen_decomposition(mats, check_normal=check_normal, seed=seed, tol=tol)]
