"""Interacting Fock spaces: Jacobi ladders, graph stratification, sl(2) checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from .errors import InvalidJacobi, NotDistanceRegular, PreconditionError
from .exactalg import Mat, Surd
from .scheme import _as_int_array, distance_matrix


@dataclass(frozen=True)
class JacobiCoefficients:
    """omega_1..omega_d and alpha_1..alpha_{d+1}; alpha defaults to zeros."""

    omega: tuple
    alpha: tuple = ()

    def __post_init__(self):
        omega = tuple(_num(w) for w in self.omega)
        alpha = tuple(_num(a) for a in self.alpha) or tuple(0 for _ in range(len(omega) + 1))
        if len(alpha) != len(omega) + 1:
            raise InvalidJacobi("alpha needs exactly one more entry than omega", len(alpha))
        for k, w in enumerate(omega, start=1):
            if float(w) < 0:
                raise InvalidJacobi("omega must be non-negative", k)
        zero = next((k for k, w in enumerate(omega, start=1) if w == 0), None)
        if zero is not None:
            later = [k for k, w in enumerate(omega, start=1) if k > zero and w != 0]
            if later:
                raise InvalidJacobi("omega_m = 0 must be followed by zeros", (zero, later[0]))
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "alpha", alpha)

    @property
    def d(self) -> int:
        return len(self.omega)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in self.omega + self.alpha)


def _num(x):
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f
    if isinstance(x, (float, np.floating)) and float(x).is_integer():
        return int(x)
    return float(x)


def _sqrt(x):
    if isinstance(x, (int, Fraction)):
        return Surd.sqrt(x)
    return float(np.sqrt(x))


@dataclass
class InteractingFockSpace:
    jacobi: JacobiCoefficients
    Bplus: Mat
    Bminus: Mat
    Bcirc: Mat
    provenance: dict = field(default_factory=lambda: {"kind": "explicit"})

    @property
    def dim(self) -> int:
        return self.jacobi.d + 1

    @property
    def T(self) -> Mat:
        return self.Bplus + self.Bminus + self.Bcirc


def jacobi_matrix(j: JacobiCoefficients) -> Mat:
    """Tridiagonal matrix with sqrt(omega) off the diagonal and alpha on it."""
    size = j.d + 1
    mode = "exact" if j.exact else "approx"
    rows = [[0] * size for _ in range(size)]
    for k in range(size):
        rows[k][k] = j.alpha[k]
    for k, w in enumerate(j.omega):
        r = _sqrt(w)
        rows[k + 1][k] = r
        rows[k][k + 1] = r
    return Mat(rows, mode)


def build_ifs(j: JacobiCoefficients, provenance: dict | None = None) -> InteractingFockSpace:
    """Creation B+ (subdiagonal sqrt(omega_{n+1})), annihilation B- = B+^T, number diag(alpha)."""
    size = j.d + 1
    mode = "exact" if j.exact else "approx"
    plus = [[0] * size for _ in range(size)]
    for k, w in enumerate(j.omega):
        plus[k + 1][k] = _sqrt(w)
    Bp = Mat(plus, mode)
    Bc = Mat.diag(list(j.alpha), mode)
    f = InteractingFockSpace(j, Bp, Bp.T, Bc, provenance or {"kind": "explicit"})
    if not f.T.equals(jacobi_matrix(j)):
        raise AssertionError("quantum decomposition does not reproduce the Jacobi matrix")
    return f


def sl2_jacobi(d: int) -> JacobiCoefficients:
    """omega_n = n (d - n + 1), alpha = 0: the binary Hamming ladder."""
    if d < 1:
        raise PreconditionError("ladder needs d >= 1")
    return JacobiCoefficients(tuple(n * (d - n + 1) for n in range(1, d + 1)))


def sl2_ladder(d: int) -> InteractingFockSpace:
    return build_ifs(sl2_jacobi(d), {"kind": "sl2", "d": d})


def boson_ladder(d: int) -> InteractingFockSpace:
    """Boson Jacobi sequence omega_n = n truncated to d + 1 levels."""
    return build_ifs(JacobiCoefficients(tuple(range(1, d + 1))), {"kind": "boson", "d": d})


# -- sl2 -----------------------------------------------------------------------
@dataclass(frozen=True)
class Sl2Report:
    H: Mat
    residual_bracket: float
    residual_h_plus: float
    residual_h_minus: float
    h_diagonal: bool
    h_matches_weights: bool
    residual_weights: float
    exact_zero: bool

    @property
    def passed(self) -> bool:
        return self.exact_zero and self.h_matches_weights


def _res(m: Mat) -> float:
    return 0.0 if m.is_zero() else m.max_abs()


def sl2_check(f: InteractingFockSpace) -> Sl2Report:
    """Residuals of [B+, B-] = H, [H, B+] = 2 B+, [H, B-] = -2 B- and H = diag(2n - d)."""
    Bp, Bm = f.Bplus, f.Bminus
    H = Bp @ Bm - Bm @ Bp
    r0 = _res(Bp.commutator(Bm) - H)
    rp = H.commutator(Bp) - Bp.scale(2)
    rm = H.commutator(Bm) + Bm.scale(2)
    d = f.jacobi.d
    weights = Mat.diag([2 * n - d for n in range(d + 1)], H.mode)
    rw = H - weights
    exact_zero = H.mode == "exact" and rp.is_zero() and rm.is_zero() and r0 == 0
    return Sl2Report(H, r0, _res(rp), _res(rm), H.is_diagonal(), rw.is_zero(), _res(rw), exact_zero)


def boundary_defect(f: InteractingFockSpace) -> Mat:
    """[B-, B+] - I; for a truncated boson ladder only the last level is nonzero."""
    return f.Bminus.commutator(f.Bplus) - Mat.identity(f.dim, f.Bplus.mode)


# -- graphs -----------------------------------------------------------------------
@dataclass(frozen=True)
class IntersectionArray:
    b: tuple
    a: tuple
    c: tuple
    sizes: tuple


def intersection_array(adj, cap: int = 4096) -> IntersectionArray:
    """c_i, a_i, b_i of a distance-regular graph, checked over every pair of vertices."""
    A = _as_int_array(adj)
    n = A.shape[0]
    if n > cap:
        raise PreconditionError(f"{n} vertices exceeds cap {cap}")
    dist = distance_matrix(A)
    if (dist < 0).any():
        bad = np.argwhere(dist < 0)[0]
        raise NotDistanceRegular("graph is disconnected", (int(bad[0]), int(bad[1])))
    diam = int(dist.max())
    layers = [(dist == k).astype(np.float64) for k in range(diam + 1)]
    Af = A.astype(np.float64)
    vals = {"c": [], "a": [], "b": []}
    for i in range(diam + 1):
        mask = layers[i] > 0
        for key, k in (("c", i - 1), ("a", i), ("b", i + 1)):
            if 0 <= k <= diam:
                counts = np.rint(layers[k] @ Af).astype(np.int64)[mask]
            else:
                counts = np.zeros(int(mask.sum()), dtype=np.int64)
            if counts.min() != counts.max():
                pos = np.argwhere(mask)
                lo, hi = pos[int(np.argmin(counts))], pos[int(np.argmax(counts))]
                raise NotDistanceRegular(
                    f"{key}_{i} is not constant",
                    ((int(lo[0]), int(lo[1])), (int(hi[0]), int(hi[1]))))
            vals[key].append(int(counts[0]))
    sizes = tuple(int(v) for v in np.bincount(dist[0], minlength=diam + 1))
    return IntersectionArray(tuple(vals["b"]), tuple(vals["a"]), tuple(vals["c"]), sizes)


def stratify_distance_regular(adj, base: int = 0, cap: int = 4096) -> InteractingFockSpace:
    """Stratify by distance from ``base``; omega_{n+1} = c_{n+1} b_n and alpha_{n+1} = a_n.

    The operators are compared exactly with the adjacency matrix compressed to
    the normalised stratum indicators Phi_n.
    """
    A = _as_int_array(adj)
    arr = intersection_array(A, cap)
    d = len(arr.sizes) - 1
    omega = tuple(arr.c[n + 1] * arr.b[n] for n in range(d))
    alpha = tuple(arr.a[n] for n in range(d + 1))
    f = build_ifs(JacobiCoefficients(omega, alpha), {"kind": "graph", "base": int(base)})
    comp = compress_to_strata(A, base)
    if not comp.equals(f.T):
        raise AssertionError("stratum compression disagrees with the intersection array")
    return f


def compress_to_strata(adj, base: int = 0) -> Mat:
    """<Phi_m, A Phi_n> for normalised indicator vectors of the distance strata."""
    A = _as_int_array(adj)
    dist = distance_matrix(A)[base]
    d = int(dist.max())
    sizes = [int((dist == k).sum()) for k in range(d + 1)]
    rows = []
    for m in range(d + 1):
        row = []
        for k in range(d + 1):
            edges = int(A[np.ix_(dist == m, dist == k)].sum())
            row.append(0 if edges == 0 else edges * Surd.sqrt(Fraction(1, sizes[m] * sizes[k])))
        rows.append(row)
    return Mat(rows, "exact")


# -- orthogonal polynomials ---------------------------------------------------------------
def orthopoly_recurrence(j: JacobiCoefficients, n: int, xs: Sequence) -> list[list]:
    """Values of P_0..P_n at each x, from x P_k = P_{k+1} + omega_k P_{k-1} + alpha_{k+1} P_k.

    Degrees up to d + 1 are allowed; P_{d+1} vanishes on the spectrum of the
    Jacobi matrix.
    """
    if n < 0 or n > j.d + 1:
        raise PreconditionError(f"degree {n} outside 0..{j.d + 1}")
    xs = list(xs)
    vals = [[1 for _ in xs]]
    if n >= 1:
        vals.append([x - j.alpha[0] for x in xs])
    for k in range(1, n):
        prev, cur = vals[k - 1], vals[k]
        vals.append([(x - j.alpha[k]) * c - j.omega[k - 1] * p for x, c, p in zip(xs, cur, prev)])
    return vals


def recurrence_residual(j: JacobiCoefficients, vals: list[list], xs: Sequence) -> float:
    """Largest |x P_k - P_{k+1} - omega_k P_{k-1} - alpha_{k+1} P_k| over the table."""
    worst = 0.0
    for k in range(len(vals) - 1):
        for idx, x in enumerate(xs):
            prev = vals[k - 1][idx] if k >= 1 else 0
            w = j.omega[k - 1] if k >= 1 else 0
            r = x * vals[k][idx] - vals[k + 1][idx] - w * prev - j.alpha[k] * vals[k][idx]
            worst = max(worst, abs(complex(r)))
    return worst


__all__ = [
    "JacobiCoefficients", "InteractingFockSpace", "Sl2Report", "IntersectionArray", "jacobi_matrix",
    "build_ifs", "sl2_jacobi", "sl2_ladder", "boson_ladder", "sl2_check", "boundary_defect",
    "intersection_array", "stratify_distance_regular", "compress_to_strata", "orthopoly_recurrence",
    "recurrence_residual",
]
