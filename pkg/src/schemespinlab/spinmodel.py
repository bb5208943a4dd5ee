"""Type-II and type-III matrices, Nomura algebras and spin models.

Conventions: W^- is the matrix written as a combination of scheme classes,
W^+ is the entrywise inverse of its transpose, a^{-1} is the constant diagonal
of W^-, and the loop scalar is defined by J W^+ = loop * a^{-1} * J.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import least_squares

from .errors import NoLoopScalar, NoParameterA, NotDistinct, PreconditionError, SynthesisFailure
from .exactalg import (DEFAULT_TOL, Cyclo, Mat, NotCyclotomic, Surd, coordinates, cyclo_sqrt_int,
                       exact_sqrt, inverse, nullspace, schur_inverse)
from .scheme import AssociationScheme, eigenmatrices, trivial_scheme


def _max_abs(m: Mat) -> float:
    return 0.0 if m.mode == "exact" and m.is_zero() else m.max_abs()


def _sqrt_n(n: int, like: Mat):
    """Exact sqrt(n) in a representation that mixes well with the entries of ``like``."""
    if like.mode == "approx":
        return complex(np.sqrt(n))
    if like.order > 1:
        return cyclo_sqrt_int(n)
    return Surd.sqrt(n)


# -- type II -----------------------------------------------------------------
@dataclass(frozen=True)
class TypeIIReport:
    is_type_ii: bool
    residual: float
    mode: str


def is_type_ii(W: Mat, tol: float = 1e-8) -> TypeIIReport:
    """W (W^(-))^T = n I, with the maximal entry deviation as residual."""
    n = W.n
    dev = W @ schur_inverse(W).T - Mat.identity(n, W.mode).scale(n)
    if W.mode == "exact":
        ok = dev.is_zero()
        return TypeIIReport(ok, _max_abs(dev), "exact")
    res = dev.max_abs()
    return TypeIIReport(res <= tol, res, "approx")


# -- type III ----------------------------------------------------------------
@dataclass(frozen=True)
class TypeIIIReport:
    holds: bool
    sign: int | None
    residuals: dict
    worst_triple: dict
    mode: str


def _type_iii_residual(W: Mat, Wm: Mat, D, exact: bool):
    """Worst |lhs - rhs| over triples (a, b, x) and where it occurs."""
    n = W.n
    if not exact:
        w, wm = W.data, Wm.data
        lhs = np.einsum("ay,by,xy->abx", w, w, wm)
        rhs = D * w[:, :, None] * wm.T[:, None, :] * wm.T[None, :, :]
        diff = np.abs(lhs - rhs)
        idx = np.unravel_index(int(np.argmax(diff)), diff.shape)
        return float(diff[idx]), tuple(int(i) for i in idx), True
    worst, where, zero = 0.0, None, True
    for x in range(n):
        # lhs_x = W diag(W^-_{x,.}) W^T
        scaled = Mat._wrap(np.array([[W.data[a, y] * Wm.data[x, y] for y in range(n)]
                                     for a in range(n)], dtype=object), "exact")
        lhs = scaled @ W.T
        for a in range(n):
            for b in range(n):
                r = lhs.data[a, b] - D * W.data[a, b] * Wm.data[x, a] * Wm.data[x, b]
                if r != 0:
                    zero = False
                    mag = abs(complex(r))
                    if mag > worst or where is None:
                        worst, where = mag, (a, b, x)
    return worst, where, zero


def is_type_iii(W: Mat, tol: float = 1e-8, check_type_ii: bool = True) -> TypeIIIReport:
    """Star-triangle identity sum_y W_ay W_by / W_xy = D W_ab / (W_xa W_xb), D = +-sqrt(n).

    Both signs of D are tried; ``sign`` is the one that holds (+1 preferred).
    """
    if check_type_ii and not is_type_ii(W, tol).is_type_ii:
        raise PreconditionError("type-III check needs a type-II matrix")
    Wm = schur_inverse(W, tol)
    root = _sqrt_n(W.n, W)
    exact = W.mode == "exact"
    residuals, worst, holds = {}, {}, {}
    for sign in (1, -1):
        D = root * sign
        r, where, zero = _type_iii_residual(W, Wm, D, exact)
        residuals[sign] = r
        worst[sign] = where
        holds[sign] = zero if exact else r <= tol
    sign = 1 if holds[1] else -1 if holds[-1] else None
    return TypeIIIReport(sign is not None, sign, residuals, worst, W.mode)


# -- Nomura algebra -------------------------------------------------------------
@dataclass(frozen=True)
class NomuraResult:
    basis: list
    dimension: int
    method: str


def _nomura_vectors(W: Mat, Wm: Mat) -> list[list]:
    n = W.n
    return [[W.data[x, i] * Wm.data[x, j] for x in range(n)] for i in range(n) for j in range(n)]


def nomura_algebra(W: Mat, tol: float = DEFAULT_TOL) -> NomuraResult:
    """All M having every Y_ij = W e_i o W^(-) e_j as an eigenvector.

    When the vectors Y_a0 form a basis V, each such M is V diag(lambda) V^{-1}
    and lambda has to be constant on the support of every V^{-1} Y_ij; the
    components of that support relation give the basis.  Otherwise the
    linear eigenvector conditions are solved directly.
    """
    Wm = schur_inverse(W, tol)
    n = W.n
    V = Mat([[W.data[x, a] * Wm.data[x, 0] for a in range(n)] for x in range(n)], W.mode)
    try:
        Vinv = inverse(V)
    except ZeroDivisionError:
        return nomura_algebra_direct(W, tol)
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    ys = _nomura_vectors(W, Wm)
    for y in ys:
        c = _apply(Vinv, y)
        support = [k for k, v in enumerate(c) if (v != 0 if W.mode == "exact" else abs(v) > tol)]
        for k in support[1:]:
            ra, rb = find(support[0]), find(k)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for k in range(n):
        groups.setdefault(find(k), []).append(k)
    basis = []
    for members in sorted(groups.values()):
        lam = Mat.diag([1 if k in members else 0 for k in range(n)], W.mode)
        basis.append(V @ lam @ Vinv)
    return NomuraResult(basis, len(basis), "diagonal-basis")


def _apply(m: Mat, v: Sequence) -> list:
    n = m.n
    if m.mode == "approx":
        return list(m.data @ np.asarray(v, dtype=complex))
    out = []
    for i in range(n):
        acc = 0
        for j in range(n):
            if m.data[i, j] != 0 and v[j] != 0:
                acc = acc + m.data[i, j] * v[j]
        out.append(acc)
    return out


def nomura_algebra_direct(W: Mat, tol: float = DEFAULT_TOL) -> NomuraResult:
    """Nomura algebra from the linear conditions (MY)_x Y_x' = (MY)_x' Y_x.

    Quadratic in n^2 unknowns, so meant for small n and as a cross-check.
    """
    Wm = schur_inverse(W, tol)
    n = W.n
    rows = []
    for y in _nomura_vectors(W, Wm):
        for x, x2 in itertools.combinations(range(n), 2):
            # coefficient of M[r, c] in (MY)_x Y_x2 - (MY)_x2 Y_x
            row = [0] * (n * n)
            for c in range(n):
                row[x * n + c] = row[x * n + c] + y[c] * y[x2]
                row[x2 * n + c] = row[x2 * n + c] - y[c] * y[x]
            rows.append(row)
    null = nullspace(rows if W.mode == "exact" else np.array(rows, dtype=complex), W.mode, tol)
    basis = [Mat([[v[r * n + c] for c in range(n)] for r in range(n)], W.mode) for v in null]
    return NomuraResult(basis, len(basis), "direct")


def spans_same(basis: Sequence[Mat], targets: Sequence[Mat], tol: float = DEFAULT_TOL) -> bool:
    """True when every target lies in span(basis) and the dimensions agree."""
    if len(basis) != len(targets):
        return False
    return all(coordinates(t, basis, tol) is not None for t in targets)


# -- spin models ------------------------------------------------------------------
@dataclass
class SpinModelData:
    scheme: AssociationScheme
    t: tuple
    Wminus: Mat
    Wplus: Mat
    a: object
    loop_scalar: object
    T: Mat
    mode: str
    distinct: bool
    type_ii: TypeIIReport | None = None
    type_iii: TypeIIIReport | None = None
    notes: list = field(default_factory=list)


def _distinct(values: Sequence, mode: str, tol: float) -> list[tuple[int, int]]:
    clashes = []
    for i, j in itertools.combinations(range(len(values)), 2):
        a, b = values[i], values[j]
        same = (a == b) if mode == "exact" else abs(complex(a) - complex(b)) <= tol
        if same:
            clashes.append((i, j))
    return clashes


def _combine(s: AssociationScheme, t: Sequence, mode: str) -> Mat:
    if mode == "approx":
        data = np.tensordot(np.array([complex(v) for v in t]), s.mats.astype(complex), axes=1)
        return Mat._wrap(data, "approx")
    cls = np.argmax(s.mats, axis=0)
    data = np.empty((s.n, s.n), dtype=object)
    for (x, y), k in np.ndenumerate(cls):
        data[x, y] = t[k]
    return Mat._wrap(data, "exact")


def spin_model_from_scheme(s: AssociationScheme, t: Sequence, *, require_distinct: bool = True,
                           tol: float = 1e-8, check_types: bool = True) -> SpinModelData:
    """Assemble W^- = sum t_i A_i and read off (a, loop scalar)."""
    t = tuple(t)
    if len(t) != s.d + 1:
        raise PreconditionError(f"need {s.d + 1} coefficients, got {len(t)}")
    exact = all(isinstance(v, (int, Fraction, Cyclo, Surd)) for v in t)
    mode = "exact" if exact else "approx"
    clashes = _distinct(t, mode, tol)
    if clashes and require_distinct:
        raise NotDistinct("coefficients t_i must be pairwise distinct", clashes[0])
    Wm = _combine(s, t, mode)
    Wp = schur_inverse(Wm.T, tol)
    n = s.n
    diag = [Wm.data[x, x] for x in range(n)]
    if any(not _same(d, diag[0], mode, tol) for d in diag):
        raise NoParameterA("diagonal of W^- is not constant", diag)
    a = _inv(diag[0], mode)
    J = Mat.ones(n, mode)
    left, right = J @ Wp, Wp @ J
    col = left.data[0, 0]
    if not (left.equals(J.scale(col), tol) and right.equals(J.scale(col), tol)):
        raise NoLoopScalar("J W^+ or W^+ J is not a multiple of J")
    loop = col * a
    T = Mat.diag(list(t), mode)
    data = SpinModelData(s, t, Wm, Wp, a, loop, T, mode, not clashes)
    if check_types:
        data.type_ii = is_type_ii(Wm, tol)
        if data.type_ii.is_type_ii:
            data.type_iii = is_type_iii(Wm, tol, check_type_ii=False)
    return data


def _same(a, b, mode: str, tol: float) -> bool:
    return a == b if mode == "exact" else abs(complex(a) - complex(b)) <= tol


def _inv(x, mode: str):
    if mode == "approx":
        return 1 / complex(x)
    return Fraction(1, x) if isinstance(x, int) else 1 / x


# -- Potts --------------------------------------------------------------------------
def potts_parameters(n: int, root: int = 0):
    """(t, c, mode) for the n-state Potts model.

    t solves t + 1/t = n - 2 (``root`` picks the sign of the discriminant
    square root) and c^2 = sqrt(n) / (1 - (n - 1) t), with c the principal
    square root.  Falls back to floating point when c is not cyclotomic.
    """
    if n < 2:
        raise PreconditionError("Potts model needs n >= 2")
    sign = 1 if root == 0 else -1
    disc = (n - 2) ** 2 - 4
    sq = exact_sqrt(Fraction(disc)) if disc else 0
    t = (Fraction(n - 2) + sign * sq) / 2
    rn = cyclo_sqrt_int(n) if isinstance(t, Cyclo) else Surd.sqrt(n)
    c2 = rn / (1 - (n - 1) * t)
    try:
        c = exact_sqrt(c2)
        return t, c, "exact"
    except NotCyclotomic:
        tc = complex(t)
        c2c = complex(c2)
        return tc, complex(np.sqrt(c2c)), "approx"


def potts_spin_model(n: int, root: int = 0, tol: float = 1e-8) -> SpinModelData:
    """n-state Potts model W = c (I - t (J - I)) on the trivial scheme."""
    t, c, mode = potts_parameters(n, root)
    if mode == "exact":
        coeffs = (c, -c * t)
    else:
        coeffs = (complex(c), -complex(c) * complex(t))
    data = spin_model_from_scheme(trivial_scheme(n), coeffs, require_distinct=False, tol=tol)
    data.notes.append({"t": t, "c": c, "c_squared": c * c})
    if not data.distinct:
        data.notes.append("t_0 and t_1 coincide")
    return data


# -- modular invariance ----------------------------------------------------------------
@dataclass(frozen=True)
class ModularReport:
    proportional: bool
    mu: object
    residual: float
    expected: object = None
    matches_expected: bool | None = None
    normalized_proportional: bool | None = None
    normalized_mu: object = None


def _proportional_to_identity(M: Mat, tol: float):
    mu = M.data[0, 0]
    dev = M - Mat.identity(M.n, M.mode).scale(mu)
    if M.mode == "exact":
        return dev.is_zero(), mu, _max_abs(dev)
    r = dev.max_abs()
    return r <= tol, mu, r


def modular_invariance_check(P: Mat, T: Mat, spin: SpinModelData | None = None,
                             tol: float = 1e-8) -> ModularReport:
    """Is (PT)^3 a multiple of I?  Also tries P scaled by 1/sqrt(n)."""
    if P.n != T.n:
        raise PreconditionError("P and T must have the same size")
    if not T.is_diagonal(tol):
        raise PreconditionError("T must be diagonal")
    if P.mode != T.mode:
        P, T = P.approx(), T.approx()
    M = (P @ T) ** 3
    ok, mu, res = _proportional_to_identity(M, tol)
    expected = matches = None
    if spin is not None:
        expected = spin.loop_scalar ** 3 / spin.a if spin.mode == "exact" else \
            complex(spin.loop_scalar) ** 3 / complex(spin.a)
        matches = _same(mu, expected, "exact" if M.mode == "exact" else "approx", tol) if ok else False
    # |X| is the sum of the first row of P (the valencies)
    size = sum(complex(P.data[0, j]).real for j in range(P.n))
    root = _sqrt_n(round(size), P)
    Pn = P.scale(1 / root)
    Mn = (Pn @ T) ** 3
    ok_n, mu_n, _ = _proportional_to_identity(Mn, tol)
    return ModularReport(ok, mu, res, expected, matches, ok_n, mu_n)


# -- numerical synthesis -----------------------------------------------------------------
@dataclass
class SynthesisResult:
    found: bool
    t: tuple | None
    residual: float
    distinct: bool
    sign: int
    attempts: int
    candidates: list = field(default_factory=list)


def _residual_vector(t: np.ndarray, mats: np.ndarray, D: complex) -> np.ndarray:
    W = np.tensordot(t, mats, axes=1)
    n = W.shape[0]
    Wm = 1.0 / W
    r2 = (W @ Wm.T - n * np.eye(n)).ravel()
    lhs = np.einsum("ay,by,xy->abx", W, W, Wm)
    rhs = D * W[:, :, None] * Wm.T[:, None, :] * Wm.T[None, :, :]
    r3 = (lhs - rhs).ravel()
    r = np.concatenate([r2, r3])
    return np.concatenate([r.real, r.imag])


def synthesize_spin_model(s: AssociationScheme, *, seed: int = 0, restarts: int = 40,
                          tol: float = 1e-8, signs: Sequence[int] = (1, -1)) -> SynthesisResult:
    """Least-squares search for t with sum t_i A_i of type II and III.

    Solutions with repeated t_i are kept as candidates but do not count as
    found.  The search is heuristic; a negative result is a report, not a
    proof of non-existence.
    """
    rng = np.random.default_rng(seed)
    mats = s.mats.astype(complex)
    size = s.d + 1
    best = SynthesisResult(False, None, float("inf"), False, signs[0], 0)
    attempts = 0
    for sign in signs:
        D = sign * np.sqrt(s.n)
        for _ in range(restarts):
            attempts += 1
            phase = rng.uniform(0, 2 * np.pi, size)
            x0 = np.concatenate([np.cos(phase), np.sin(phase)])

            def fun(x):
                return _residual_vector(x[:size] + 1j * x[size:], mats, D)

            try:
                sol = least_squares(fun, x0, xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=400)
            except (ValueError, FloatingPointError, ZeroDivisionError):
                continue
            t = sol.x[:size] + 1j * sol.x[size:]
            res = float(np.max(np.abs(fun(sol.x)))) if np.all(np.isfinite(t)) else float("inf")
            if res > tol:
                continue
            distinct = not _distinct(list(t), "approx", 1e-6)
            best.candidates.append((tuple(complex(v) for v in t), sign, res, distinct))
            if distinct:
                return SynthesisResult(True, tuple(complex(v) for v in t), res, True, sign, attempts,
                                       best.candidates)
    best.attempts = attempts
    if best.candidates:
        t, sign, res, _ = min(best.candidates, key=lambda c: c[2])
        best.t, best.sign, best.residual = t, sign, res
    return best


def require_synthesis(s: AssociationScheme, **kw) -> SpinModelData:
    res = synthesize_spin_model(s, **kw)
    if not res.found:
        raise SynthesisFailure(f"no spin model with distinct t_i found in {res.attempts} attempts")
    return spin_model_from_scheme(s, res.t)


def scheme_modular_check(spin: SpinModelData, tol: float = 1e-8) -> ModularReport:
    P, _ = eigenmatrices(spin.scheme)
    return modular_invariance_check(P, spin.T, spin, tol)


__all__ = [
    "TypeIIReport", "TypeIIIReport", "NomuraResult", "SpinModelData", "ModularReport",
    "SynthesisResult", "is_type_ii", "is_type_iii", "nomura_algebra", "nomura_algebra_direct",
    "spans_same", "spin_model_from_scheme", "potts_parameters", "potts_spin_model",
    "modular_invariance_check", "scheme_modular_check", "synthesize_spin_model", "require_synthesis",
]
