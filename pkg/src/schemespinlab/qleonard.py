"""Leonard pairs, Krawtchouk algebra relations and q-data at roots of unity."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import AdmissibilityError, PreconditionError
from .exactalg import Cyclo, Mat, NotDiagonalizable, as_scalar, eigen_decomposition, inverse
from .ifs import InteractingFockSpace, sl2_check, sl2_ladder


# -- Leonard pairs --------------------------------------------------------------
@dataclass(frozen=True)
class LeonardReport:
    status: str  # "leonard", "not_leonard" or "inconclusive"
    order_for_a: tuple | None  # eigenvector order of B in which A is irreducible tridiagonal
    order_for_b: tuple | None  # eigenvector order of A in which B is irreducible tridiagonal
    reason: str = ""

    @property
    def is_leonard(self) -> bool:
        return self.status == "leonard"


def _eigenbasis(m: Mat):
    """Eigenvalues and an invertible matrix of eigenvectors, or None if the spectrum is not simple."""
    pairs = eigen_decomposition([m], check_normal=False)
    if len(pairs) != m.n:
        return None
    vecs = []
    for e, _ in pairs:
        col = next(j for j in range(m.n) if any(
            (e.data[i, j] != 0 if e.mode == "exact" else abs(e.data[i, j]) > 1e-9) for i in range(m.n)))
        vecs.append([e.data[i, col] for i in range(m.n)])
    V = Mat([[vecs[j][i] for j in range(m.n)] for i in range(m.n)], m.mode)
    return [vals[0] for _, vals in pairs], V


def _nonzero(x, mode: str, tol: float = 1e-9) -> bool:
    return x != 0 if mode == "exact" else abs(x) > tol


def _pattern(m: Mat) -> np.ndarray:
    return np.array([[_nonzero(m.data[i, j], m.mode) for j in range(m.n)] for i in range(m.n)])


def _tridiagonal_order(pattern: np.ndarray) -> tuple | None:
    """Ordering of indices that makes the nonzero pattern irreducible tridiagonal.

    Off-diagonal nonzeros must form a Hamiltonian path; the search is a
    depth-first walk, cheap at the sizes involved.
    """
    n = pattern.shape[0]
    if n == 1:
        return (0,)
    adj = pattern.copy()
    np.fill_diagonal(adj, False)
    if not np.array_equal(adj, adj.T):
        return None
    deg = adj.sum(axis=1)
    if deg.max() > 2 or (deg == 0).any() or int(adj.sum()) // 2 != n - 1:
        return None
    start = int(np.flatnonzero(deg == 1)[0])
    path, prev = [start], -1
    while len(path) < n:
        nxt = [int(k) for k in np.flatnonzero(adj[path[-1]]) if k != prev]
        if not nxt:
            return None
        prev = path[-1]
        path.append(nxt[0])
    return tuple(path)


def _in_basis(m: Mat, V: Mat) -> Mat:
    return inverse(V) @ m @ V


def is_leonard_pair(A: Mat, B: Mat) -> LeonardReport:
    """Check both Leonard conditions by searching eigenvector orderings.

    A repeated eigenvalue of either map makes the answer inconclusive, as an
    eigenbasis is then not determined up to scaling.
    """
    if A.n != B.n:
        raise PreconditionError("A and B must have the same size")
    if A.mode != B.mode:
        A, B = A.approx(), B.approx()
    try:
        eb = _eigenbasis(B)
        ea = _eigenbasis(A)
    except NotDiagonalizable as exc:
        return LeonardReport("inconclusive", None, None, f"not diagonalizable: {exc}")
    if eb is None or ea is None:
        which = "B" if eb is None else "A"
        return LeonardReport("inconclusive", None, None, f"{which} has a repeated eigenvalue")
    order_a = _tridiagonal_order(_pattern(_in_basis(A, eb[1])))
    order_b = _tridiagonal_order(_pattern(_in_basis(B, ea[1])))
    if order_a is None or order_b is None:
        failing = "(i)" if order_a is None else "(ii)"
        return LeonardReport("not_leonard", order_a, order_b, f"condition {failing} fails")
    return LeonardReport("leonard", order_a, order_b)


# -- Krawtchouk algebra ------------------------------------------------------------
@dataclass(frozen=True)
class KrawtchoukReport:
    residual_cubic_a: float
    residual_cubic_b: float
    residual_c_a: float
    residual_c_b: float
    cubic_zero: bool
    presentation_zero: bool

    @property
    def equivalent(self) -> bool:
        return self.cubic_zero == self.presentation_zero

    @property
    def passed(self) -> bool:
        return self.cubic_zero and self.presentation_zero


def _res(m: Mat, tol: float) -> tuple[float, bool]:
    if m.mode == "exact":
        z = m.is_zero()
        return (0.0 if z else m.max_abs()), z
    r = m.max_abs()
    return r, r <= tol


def krawtchouk_relations(A: Mat, B: Mat, omega, tol: float = 1e-9) -> KrawtchoukReport:
    """Residuals of both presentations of K_omega.

    Cubic form: A^2 B - 2ABA + BA^2 - B - omega A and the same with A, B swapped.
    Commutator form with C = [A, B]: [A, C] - B - omega A and [C, B] - A - omega B.
    """
    omega = as_scalar(omega)
    r1 = A @ A @ B - (A @ B @ A).scale(2) + B @ A @ A - B - A.scale(omega)
    r2 = B @ B @ A - (B @ A @ B).scale(2) + A @ B @ B - A - B.scale(omega)
    C = A.commutator(B)
    r3 = A.commutator(C) - B - A.scale(omega)
    r4 = C.commutator(B) - A - B.scale(omega)
    (a1, z1), (a2, z2), (a3, z3), (a4, z4) = (_res(r, tol) for r in (r1, r2, r3, r4))
    return KrawtchoukReport(a1, a2, a3, a4, z1 and z2, z3 and z4)


@dataclass(frozen=True)
class Substitution:
    A: Mat
    B: Mat
    C: Mat
    omega: object


def ksl2_substitution(f: InteractingFockSpace, omega) -> Substitution:
    """Images of the K_omega generators in the sl(2) ladder.

    B -> H/2, A -> ((1+w)/2) B+ + ((1-w)/2) B- - (w/2) H, and then
    C = [A, B] = -((1+w)/2) B+ + ((1-w)/2) B-.
    """
    omega = as_scalar(omega)
    if omega * omega == 1:
        raise PreconditionError("substitution needs omega^2 != 1")
    if not sl2_check(f).passed:
        raise PreconditionError("ladder does not satisfy the sl(2) relations exactly")
    H = f.Bplus @ f.Bminus - f.Bminus @ f.Bplus
    half = Fraction(1, 2)
    p, m = (1 + omega) * half, (1 - omega) * half
    A = f.Bplus.scale(p) + f.Bminus.scale(m) - H.scale(omega * half)
    B = H.scale(half)
    C = f.Bminus.scale(m) - f.Bplus.scale(p)
    if not A.commutator(B).equals(C):
        raise AssertionError("C does not equal [A, B]")
    return Substitution(A, B, C, omega)


def ksl2_substitution_as_printed(f: InteractingFockSpace, omega) -> Substitution:
    """The variant with B -> (w/2) H and C written without the H term; kept for comparison."""
    omega = as_scalar(omega)
    H = f.Bplus @ f.Bminus - f.Bminus @ f.Bplus
    half = Fraction(1, 2)
    p, m = (1 + omega) * half, (1 - omega) * half
    A = f.Bplus.scale(p) + f.Bminus.scale(m) - H.scale(omega * half)
    B = H.scale(omega * half)
    C = f.Bplus.scale(p) + f.Bminus.scale(m)
    return Substitution(A, B, C, omega)


# -- q-data --------------------------------------------------------------------------
@dataclass(frozen=True)
class QData:
    k: int
    d: int
    epsilon: object
    q: Cyclo
    theta: tuple


def anyon_q(k: int) -> Cyclo:
    """q = exp(2 pi i / (k + 2))."""
    if k < 0:
        raise PreconditionError("level k must be non-negative")
    return Cyclo.root(k + 2, 1)


def qdata_theta(k: int, d: int, epsilon=1) -> tuple:
    q = anyon_q(k)
    denom = q - q ** -1
    if denom == 0:
        raise AdmissibilityError("q - q^{-1} vanishes", k)
    eps = as_scalar(epsilon)
    return tuple(eps * q ** (d - 2 * i) / denom for i in range(d + 1))


def anyon_qdata(k: int, d: int, epsilon=1) -> QData:
    """theta_i = eps q^(d-2i) / (q - q^-1) with pairwise distinctness enforced.

    Even d is refused outright since i = d/2 gives the excluded exponent 0.
    """
    eps = as_scalar(epsilon)
    if eps == 0:
        raise PreconditionError("epsilon must be nonzero")
    if d < 0:
        raise PreconditionError("d must be non-negative")
    if d % 2 == 0:
        raise AdmissibilityError("d must be odd (d - 2i vanishes at i = d/2)", (d // 2, d - 2 * (d // 2)))
    theta = qdata_theta(k, d, eps)
    for i, j in itertools.combinations(range(d + 1), 2):
        if theta[i] == theta[j]:
            raise AdmissibilityError("eigenvalues collide", (i, j))
    return QData(k, d, eps, anyon_q(k), theta)


def is_admissible(k: int, d: int, epsilon=1) -> bool:
    try:
        anyon_qdata(k, d, epsilon)
    except AdmissibilityError:
        return False
    return True


def parameter_array_partner(theta: Sequence, theta_star: Sequence, phi1=1) -> Mat:
    """Tridiagonal A with eigenvalues ``theta`` whose Leonard partner is diag(theta_star).

    The split sequences phi_i, phi'_i are generated from phi_1 and the two
    eigenvalue sequences, then A is written in the eigenbasis of the partner.
    Both sequences must obey a common three-term recurrence for the result to
    be a Leonard pair; callers verify with :func:`is_leonard_pair`.
    """
    # ints become Fractions so the ratios below stay exact
    th = [Fraction(x) if isinstance(x, int) else as_scalar(x) for x in theta]
    ts = [Fraction(x) if isinstance(x, int) else as_scalar(x) for x in theta_star]
    d = len(th) - 1
    if len(ts) != d + 1 or d < 1:
        raise PreconditionError("sequences must have equal length >= 2")

    def ratio_sum(i):
        return sum(((th[h] - th[d - h]) / (th[0] - th[d]) for h in range(i)), 0)

    def prod(i, x, seq):
        r = 1
        for h in range(i):
            r = r * (x - seq[h])
        return r

    rev = ts[::-1]
    phi1 = as_scalar(phi1)
    vphi1 = phi1 - (ts[1] - ts[0]) * (th[0] - th[d])
    phi = [0] + [vphi1 * ratio_sum(i) + (ts[i] - ts[0]) * (th[i - 1] - th[d]) for i in range(1, d + 1)]
    vphi = [0] + [phi1 * ratio_sum(i) + (ts[i] - ts[0]) * (th[d - i + 1] - th[0]) for i in range(1, d + 1)]
    for i in range(1, d + 1):
        if phi[i] == 0 or vphi[i] == 0:
            raise AdmissibilityError("split sequence vanishes", i)
    rows = [[0] * (d + 1) for _ in range(d + 1)]
    for i in range(d + 1):
        a = th[i]
        if i > 0:
            a = a + phi[i] / (ts[i] - ts[i - 1])
            rows[i][i - 1] = vphi[i] * prod(d - i, ts[i], rev) / prod(d - i + 1, ts[i - 1], rev)
        if i < d:
            a = a + phi[i + 1] / (ts[i] - ts[i + 1])
            rows[i][i + 1] = phi[i + 1] * prod(i, ts[i], ts) / prod(i + 1, ts[i + 1], ts)
        rows[i][i] = a
    return Mat(rows)


def leonard_from_qdata(qd: QData, partner: str = "sl2") -> tuple[Mat, Mat]:
    """(A, B) with B = diag(theta).

    ``partner="sl2"`` takes A = B+ + B- of the sl(2) ladder of the same size.
    Its eigenvalues are in arithmetic progression, so it pairs with the
    q-spectrum only for d = 1.  ``partner="parameter_array"`` builds A with the
    same q-spectrum as B, which does give a Leonard pair.
    """
    for i, j in itertools.combinations(range(qd.d + 1), 2):
        if qd.theta[i] == qd.theta[j]:
            raise PreconditionError("q-data is not admissible")
    B = Mat.diag(list(qd.theta), "exact")
    if qd.d == 0:
        return Mat([[0]]), B
    if partner == "sl2":
        ladder = sl2_ladder(qd.d)
        return ladder.Bplus + ladder.Bminus, B
    if partner == "parameter_array":
        return parameter_array_partner(qd.theta, qd.theta), B
    raise PreconditionError(f"unknown partner {partner!r}")


__all__ = [
    "LeonardReport", "KrawtchoukReport", "Substitution", "QData", "is_leonard_pair",
    "krawtchouk_relations", "ksl2_substitution", "ksl2_substitution_as_printed", "anyon_q",
    "qdata_theta", "anyon_qdata", "is_admissible", "parameter_array_partner", "leonard_from_qdata",
]
