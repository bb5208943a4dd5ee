"""Row reduction over exact fields and thin numpy wrappers for floats.

Vectors and matrices here are plain nested lists (exact) or numpy arrays
(approx); :class:`Mat` users go through :func:`inverse` and :func:`nullspace_mat`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.linalg

from .mat import DEFAULT_TOL, Mat


class SingularMatrix(ZeroDivisionError):
    pass


def _div(x, y):
    if isinstance(x, int) and isinstance(y, int):
        return Fraction(x, y)
    return x / y


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over an exact field; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [0 if x == 0 else _div(x, pv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b if b != 0 else a for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank_exact(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace_exact(rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of {x : rows @ x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v: list = [0] * ncols
        v[f] = 1
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def solve_exact(rows: Sequence[Sequence], rhs: Sequence) -> list:
    """Unique solution of rows @ x = rhs; raises SingularMatrix otherwise."""
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if n in pivots or len(pivots) < n:
        raise SingularMatrix("system has no unique solution")
    return [red[i][n] for i in range(n)]


def inverse(m: Mat) -> Mat:
    n = m.n
    if m.mode == "approx":
        try:
            return Mat._wrap(np.linalg.inv(m.data), "approx")
        except np.linalg.LinAlgError as exc:
            raise SingularMatrix(str(exc)) from exc
    aug = [list(m.data[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return Mat([r[n:] for r in red], "exact")


def rank(m: Mat | Sequence[Sequence], tol: float = DEFAULT_TOL) -> int:
    if isinstance(m, Mat) and m.mode == "approx":
        return int(np.linalg.matrix_rank(m.data, tol=tol))
    rows = m.tolist() if isinstance(m, Mat) else m
    return rank_exact(rows)


def nullspace(rows, mode: str = "exact", tol: float = DEFAULT_TOL) -> list:
    """Nullspace basis of a (possibly non square) system in either mode."""
    if mode == "approx":
        ns = scipy.linalg.null_space(np.asarray(rows, dtype=complex), rcond=tol)
        return [ns[:, k] for k in range(ns.shape[1])]
    return nullspace_exact(rows)


def vec_from_mats(mats: Sequence[Mat]) -> list[list]:
    """Columns are the flattened matrices; used to test spans and solve for coordinates."""
    flat = [list(m.data.flat) for m in mats]
    return [[f[k] for f in flat] for k in range(len(flat[0]))]


def coordinates(target: Mat, basis: Sequence[Mat], tol: float = DEFAULT_TOL) -> list | None:
    """Coefficients c with sum c_i basis_i = target, or None if target is outside the span."""
    if target.mode == "approx" or any(b.mode == "approx" for b in basis):
        cols = np.array([b.to_complex().ravel() for b in basis]).T
        rhs = target.to_complex().ravel()
        sol, *_ = np.linalg.lstsq(cols, rhs, rcond=None)
        if np.max(np.abs(cols @ sol - rhs), initial=0.0) > tol:
            return None
        return list(sol)
    cols = vec_from_mats(basis)
    aug = [r + [t] for r, t in zip(cols, target.data.flat)]
    red, pivots = rref(aug)
    k = len(basis)
    if k in pivots:
        return None
    sol: list = [0] * k
    for r, p in enumerate(pivots):
        sol[p] = red[r][k]
    return sol
