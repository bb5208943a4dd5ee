"""Association schemes: axioms, intersection and Krein tensors, eigenmatrices.

Classes are held as an integer array of shape ``(d+1, n, n)``.  Spectral data
is computed in the regular representation ``L_i[k, j] = p^k_{ij}``, which is
only ``(d+1) x (d+1)`` and so stays cheap even when the vertex set is large.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import CapExceeded, DimensionMismatch, NonCommutativeScheme, NotAGroup, NotAScheme
from .exactalg import Mat, NotCyclotomic, conj, eigen_decomposition, inverse

DEFAULT_CAP = 4096


def _as_int_array(m) -> np.ndarray:
    if isinstance(m, Mat):
        if m.mode != "exact":
            raise NotAScheme("0/1", "classes must be exact 0/1 matrices")
        vals = m.tolist()
    else:
        vals = m
    arr = np.array(vals, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch("classes must be square matrices")
    bad = [(int(x), int(y)) for (x, y), v in np.ndenumerate(arr) if v not in (0, 1)]
    if bad:
        raise NotAScheme("0/1", "entries must be 0 or 1", bad[0])
    return arr.astype(np.int64)


class AssociationScheme:
    """A validated association scheme; build it with :func:`verify_axioms`."""

    def __init__(self, mats: np.ndarray, commutative: bool, constructor: str = "classes",
                 labels: Sequence | None = None, seed: int = 0):
        self.mats = mats
        self.mats.setflags(write=False)
        self.commutative = commutative
        self.constructor = constructor
        self.labels = tuple(labels) if labels is not None else tuple(range(len(mats)))
        self.seed = seed

    @property
    def n(self) -> int:
        return self.mats.shape[1]

    @property
    def d(self) -> int:
        return self.mats.shape[0] - 1

    @cached_property
    def classes(self) -> list[Mat]:
        return [Mat(a.tolist(), "exact") for a in self.mats]

    @cached_property
    def valencies(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.mats[:, 0, :].sum(axis=1))

    @cached_property
    def transpose_index(self) -> tuple[int, ...]:
        out = []
        for a in self.mats:
            out.append(next(k for k, b in enumerate(self.mats) if np.array_equal(a.T, b)))
        return tuple(out)

    @cached_property
    def representatives(self) -> list[tuple[int, int]]:
        return [tuple(int(v) for v in np.argwhere(a)[0]) for a in self.mats]

    @cached_property
    def p(self) -> np.ndarray:
        """Intersection tensor indexed ``p[k, i, j]``."""
        return intersection_numbers(self)

    def _require_commutative(self) -> None:
        if not self.commutative:
            raise NonCommutativeScheme("operation needs a commutative scheme")

    @cached_property
    def _spectral(self):
        self._require_commutative()
        try:
            return _spectral_exact(self)
        except NotCyclotomic:
            return _spectral_approx(self)

    @property
    def mode(self) -> str:
        return self._spectral["mode"]

    @property
    def P(self) -> Mat:
        return self._spectral["P"]

    @property
    def Q(self) -> Mat:
        return self._spectral["Q"]

    @property
    def multiplicities(self) -> tuple:
        return self._spectral["m"]

    @cached_property
    def idempotents(self) -> list[Mat]:
        """E_i = (1/n) sum_j Q_{ji} A_j as n x n matrices."""
        Q = self.Q
        out = []
        for i in range(self.d + 1):
            coeffs = [Q[j, i] for j in range(self.d + 1)]
            out.append(_combine_classes(self, coeffs, Fraction(1, self.n), Q.mode))
        return out

    @cached_property
    def q(self) -> np.ndarray:
        return krein_parameters(self)

    def __repr__(self) -> str:
        return (f"AssociationScheme(n={self.n}, d={self.d}, valencies={self.valencies}, "
                f"constructor={self.constructor!r})")


def _combine_classes(s: AssociationScheme, coeffs, scale, mode: str) -> Mat:
    if mode == "approx":
        data = np.tensordot(np.array([complex(c) for c in coeffs]), s.mats.astype(complex), axes=1)
        return Mat._wrap(data * complex(scale), "approx")
    data = np.empty((s.n, s.n), dtype=object)
    cls = np.argmax(s.mats, axis=0)
    vals = [c * scale if c != 0 else 0 for c in coeffs]
    for (x, y), k in np.ndenumerate(cls):
        data[x, y] = vals[k]
    return Mat._wrap(data, "exact")


# -- validation -----------------------------------------------------------------
def verify_axioms(classes: Sequence, *, constructor: str = "classes", labels=None,
                  seed: int = 0) -> AssociationScheme:
    """Check the scheme axioms and return the validated scheme.

    Each failure raises :class:`NotAScheme` naming the axiom and a witness:
    a position for (1) and (2), a class index for (3), and ``(i, j, k)`` plus
    two positions for (4).  Commutativity is recorded, not required.
    """
    if not classes:
        raise NotAScheme("1", "no classes given")
    mats = [_as_int_array(c) for c in classes]
    n = mats[0].shape[0]
    if any(m.shape != (n, n) for m in mats):
        raise DimensionMismatch("all classes must have the same size")
    stack = np.array(mats, dtype=np.int64)

    ident = np.eye(n, dtype=np.int64)
    diff = np.argwhere(stack[0] != ident)
    if len(diff):
        raise NotAScheme("1", "first class must be the identity", tuple(int(v) for v in diff[0]))
    total = stack.sum(axis=0)
    diff = np.argwhere(total != 1)
    if len(diff):
        raise NotAScheme("2", "classes must partition X x X", tuple(int(v) for v in diff[0]))
    for k, a in enumerate(stack):
        if not a.any():
            raise NotAScheme("2", "empty class", k)
    for k, a in enumerate(stack):
        if not any(np.array_equal(a.T, b) for b in stack):
            raise NotAScheme("3", "transpose of a class is not a class", k)

    cls = np.argmax(stack, axis=0)
    fl = stack.astype(np.float64)
    commutative = True
    for i in range(len(stack)):
        for j in range(len(stack)):
            prod = np.rint(fl[i] @ fl[j]).astype(np.int64)
            for k in range(len(stack)):
                vals = prod[cls == k]
                if vals.min() != vals.max():
                    pos = np.argwhere(cls == k)
                    a = pos[int(np.argmin(vals))]
                    b = pos[int(np.argmax(vals))]
                    raise NotAScheme("4", "product is not in the span of the classes",
                                     (i, j, k, (int(a[0]), int(a[1])), (int(b[0]), int(b[1]))))
            if commutative and j < i:
                other = np.rint(fl[j] @ fl[i]).astype(np.int64)
                commutative = bool(np.array_equal(prod, other))
    return AssociationScheme(stack, commutative, constructor, labels, seed)


def intersection_numbers(s: AssociationScheme) -> np.ndarray:
    """Integer tensor p[k, i, j] with A_i A_j = sum_k p^k_{ij} A_k."""
    size = s.d + 1
    fl = s.mats.astype(np.float64)
    out = np.zeros((size, size, size), dtype=np.int64)
    reps = s.representatives
    for i in range(size):
        for j in range(size):
            prod = fl[i] @ fl[j]
            for k, (x, y) in enumerate(reps):
                val = prod[x, y]
                if val != int(val):
                    raise NotAScheme("4", "non-integral intersection number", (i, j, k))
                out[k, i, j] = int(val)
    out.setflags(write=False)
    return out


# -- spectral data ----------------------------------------------------------------
def _regular_rep(s: AssociationScheme) -> list[Mat]:
    p = s.p
    return [Mat(p[:, i, :].tolist(), "exact") for i in range(s.d + 1)]


def _order_rows(s: AssociationScheme, rows: list, eq) -> list[int]:
    """Index order with the trivial character first and P^2 = nI when possible."""
    size = s.d + 1
    val = list(s.valencies)
    first = next(i for i, r in enumerate(rows) if all(eq(r[j], val[j]) for j in range(size)))
    rest = [i for i in range(size) if i != first]
    if size <= 9:
        approx = np.array([[complex(x) for x in r] for r in rows])
        for perm in itertools.permutations(rest):
            order = [first, *perm]
            P = approx[order]
            if np.allclose(P @ P, s.n * np.eye(size), atol=1e-8):
                Pe = [rows[i] for i in order]
                if all(eq(sum((Pe[a][c] * Pe[c][b] for c in range(size)), 0), s.n * (a == b))
                       for a in range(size) for b in range(size)):
                    return order
    return [first, *rest]


def _spectral_exact(s: AssociationScheme) -> dict:
    regs = _regular_rep(s)
    pairs = eigen_decomposition(regs, check_normal=False, seed=s.seed)
    rows = [vals for _, vals in pairs]
    order = _order_rows(s, rows, lambda a, b: a == b)
    size = s.d + 1
    P = Mat([rows[i] for i in order], "exact")
    Q = inverse(P).scale(s.n)
    m = tuple(Q[0, i] for i in range(size))
    return {"mode": "exact", "P": P, "Q": Q, "m": m}


def _spectral_approx(s: AssociationScheme) -> dict:
    pairs = eigen_decomposition([c.approx() for c in s.classes], seed=s.seed)
    rows = [vals for _, vals in pairs]
    order = _order_rows(s, rows, lambda a, b: abs(complex(a) - complex(b)) < 1e-8)
    P = Mat([rows[i] for i in order], "approx")
    Q = inverse(P).scale(s.n)
    m = tuple(Q[0, i] for i in range(s.d + 1))
    return {"mode": "approx", "P": P, "Q": Q, "m": m}


def eigenmatrices(s: AssociationScheme) -> tuple[Mat, Mat]:
    """(P, Q) with A_j = sum_i P_{ij} E_i and E_i = (1/n) sum_j Q_{ji} A_j."""
    s._require_commutative()
    return s.P, s.Q


def krein_parameters(s: AssociationScheme) -> np.ndarray:
    """Tensor q[k, i, j] with E_i o E_j = (1/n) sum_k q^k_{ij} E_k.

    Uses the trace pairing <M, N> = tr(M N*) on the class basis, where both
    sides reduce to sums over classes weighted by valencies.
    """
    s._require_commutative()
    Q = s.Q
    size = s.d + 1
    val = s.valencies
    m = s.multiplicities
    out = np.empty((size, size, size), dtype=object)
    for k in range(size):
        conj_col = [conj(Q[l, k]) for l in range(size)]
        for i in range(size):
            for j in range(size):
                acc = 0
                for l in range(size):
                    acc = acc + val[l] * Q[l, i] * Q[l, j] * conj_col[l]
                out[k, i, j] = _tidy(acc / (s.n * m[k]) if s.mode == "exact" else complex(acc) / (s.n * complex(m[k])))
    out.setflags(write=False)
    return out


def _tidy(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def krein_violations(s: AssociationScheme, tol: float = 1e-9) -> list[tuple[int, int, int]]:
    """Indices (k, i, j) where a Krein parameter is not a non-negative real."""
    bad = []
    for idx, v in np.ndenumerate(s.q):
        z = complex(v)
        if z.real < -tol or abs(z.imag) > tol:
            bad.append(tuple(int(t) for t in idx))
    return bad


@dataclass(frozen=True)
class DualityReport:
    is_self_dual: bool
    permutation: tuple[int, ...] | None
    max_deviation: float


def _tensor_deviation(p: np.ndarray, q: np.ndarray, perm: Sequence[int]) -> float:
    qa = np.vectorize(complex, otypes=[complex])(q)
    idx = np.array(perm)
    return float(np.max(np.abs(p - qa[np.ix_(idx, idx, idx)])))


def self_duality_check(s: AssociationScheme) -> DualityReport:
    """Search class permutations sigma with p^k_{ij} = q^{sigma k}_{sigma i, sigma j}.

    The search assigns sigma one index at a time and prunes on every tensor
    entry whose indices are already assigned, with valencies matched against
    multiplicities first; it is exhaustive.
    """
    s._require_commutative()
    p, q = s.p, s.q
    size = s.d + 1
    exact = s.mode == "exact"

    def same(a, b) -> bool:
        return a == b if exact else abs(complex(a) - complex(b)) < 1e-8

    sigma: list[int] = []

    def consistent() -> bool:
        # only triples touching the newest index need checking
        new = len(sigma) - 1
        for k, i, j in itertools.product(range(new + 1), repeat=3):
            if new in (k, i, j) and not same(p[k, i, j], q[sigma[k], sigma[i], sigma[j]]):
                return False
        return True

    def search() -> bool:
        if len(sigma) == size:
            return True
        pos = len(sigma)
        for cand in range(size):
            if cand in sigma or not same(s.valencies[pos], s.multiplicities[cand]):
                continue
            sigma.append(cand)
            if consistent() and search():
                return True
            sigma.pop()
        return False

    if search():
        return DualityReport(True, tuple(sigma), _tensor_deviation(p, q, sigma))
    return DualityReport(False, None, _tensor_deviation(p, q, range(size)))


def hypergroup_coefficients(s: AssociationScheme) -> np.ndarray:
    """c[k, i, j] with e_i o e_j = sum_k c^k_{ij} e_k for e_i = E_i / m_i."""
    q = s.q
    m = s.multiplicities
    size = s.d + 1
    out = np.empty((size, size, size), dtype=object)
    for k, i, j in itertools.product(range(size), repeat=3):
        if s.mode == "exact":
            out[k, i, j] = _tidy(m[k] * q[k, i, j] / (s.n * m[i] * m[j]))
        else:
            out[k, i, j] = complex(m[k]) * complex(q[k, i, j]) / (s.n * complex(m[i]) * complex(m[j]))
    return out


# -- constructions -----------------------------------------------------------------
def trivial_scheme(n: int) -> AssociationScheme:
    eye = np.eye(n, dtype=np.int64)
    return verify_axioms([eye, 1 - eye] if n > 1 else [eye], constructor="trivial")


def hamming_scheme(d: int, q: int, cap: int = DEFAULT_CAP) -> AssociationScheme:
    """H(d, q): q-ary d-tuples, class i joins tuples at Hamming distance i."""
    if d < 1 or q < 2:
        raise ValueError("hamming_scheme needs d >= 1 and q >= 2")
    if q ** d > cap:
        raise CapExceeded(f"{q}^{d} = {q ** d} vertices exceeds cap {cap}")
    coords = np.array(list(itertools.product(range(q), repeat=d)), dtype=np.int64)
    dist = (coords[:, None, :] != coords[None, :, :]).sum(axis=2)
    return verify_axioms([(dist == i).astype(np.int64) for i in range(d + 1)],
                         constructor=f"hamming({d},{q})")


def generalized_hamming(n: int, s: AssociationScheme, cap: int = DEFAULT_CAP) -> AssociationScheme:
    """H(n, s): classes indexed by composition vectors h(v, w) of length d+1 summing to n.

    Compositions are listed in decreasing lexicographic order, so the identity
    (n, 0, ..., 0) comes first and ``n = 1`` reproduces the class order of s.
    """
    if n < 1:
        raise ValueError("generalized_hamming needs n >= 1")
    if s.n ** n > cap:
        raise CapExceeded(f"{s.n}^{n} = {s.n ** n} vertices exceeds cap {cap}")
    base = np.argmax(s.mats, axis=0)
    coords = np.array(list(itertools.product(range(s.n), repeat=n)), dtype=np.int64)
    size = s.d + 1
    counts = np.zeros((size, len(coords), len(coords)), dtype=np.int64)
    for j in range(n):
        rel = base[coords[:, j][:, None], coords[:, j][None, :]]
        for r in range(size):
            counts[r] += rel == r
    comps = sorted((c for c in itertools.product(range(n + 1), repeat=size) if sum(c) == n),
                   reverse=True)
    classes = []
    for comp in comps:
        mask = np.ones(counts.shape[1:], dtype=bool)
        for r, c in enumerate(comp):
            mask &= counts[r] == c
        classes.append(mask.astype(np.int64))
    return verify_axioms(classes, constructor=f"generalized_hamming({n})", labels=comps)


def _validate_group(table: np.ndarray) -> int:
    m = table.shape[0]
    if table.shape != (m, m) or table.min() < 0 or table.max() >= m:
        raise NotAGroup("table must be square with entries in range")
    ident = [e for e in range(m) if np.array_equal(table[e], np.arange(m))
             and np.array_equal(table[:, e], np.arange(m))]
    if not ident:
        raise NotAGroup("no identity element")
    e = ident[0]
    for a in range(m):
        if sorted(table[a]) != list(range(m)):
            raise NotAGroup("row is not a permutation", a)
        if not any(table[a, b] == e for b in range(m)):
            raise NotAGroup("element has no inverse", a)
    for a, b, c in itertools.product(range(m), repeat=3):
        if table[table[a, b], c] != table[a, table[b, c]]:
            raise NotAGroup("multiplication is not associative", (a, b, c))
    if not np.array_equal(table, table.T):
        bad = np.argwhere(table != table.T)[0]
        raise NotAGroup("group is not abelian", (int(bad[0]), int(bad[1])))
    return e


def group_scheme(table, labels: Sequence | None = None) -> AssociationScheme:
    """Translation scheme of an abelian group given by its multiplication table.

    Class g is the permutation matrix sending basis vector e_y to e_{g y}; the
    identity element is moved to the front, the rest keep table order.
    """
    table = np.asarray(table, dtype=np.int64)
    e = _validate_group(table)
    m = table.shape[0]
    order = [e] + [g for g in range(m) if g != e]
    classes = []
    for g in order:
        a = np.zeros((m, m), dtype=np.int64)
        for y in range(m):
            a[table[g, y], y] = 1
        classes.append(a)
    names = [labels[g] for g in order] if labels is not None else order
    return verify_axioms(classes, constructor="group", labels=names)


def cyclic_group_table(m: int) -> list[list[int]]:
    return [[(a + b) % m for b in range(m)] for a in range(m)]


def distance_matrix(adj) -> np.ndarray:
    """Graph distances by breadth-first search; -1 marks unreachable pairs."""
    a = _as_int_array(adj)
    n = a.shape[0]
    dist = np.full((n, n), -1, dtype=np.int64)
    nbrs = [np.flatnonzero(a[x]) for x in range(n)]
    for src in range(n):
        dist[src, src] = 0
        frontier = [src]
        level = 0
        while frontier:
            level += 1
            nxt = []
            for x in frontier:
                for y in nbrs[x]:
                    if dist[src, y] < 0:
                        dist[src, y] = level
                        nxt.append(int(y))
            frontier = nxt
    return dist


def distance_scheme(adj) -> AssociationScheme:
    """Distance matrices of a connected graph, validated as a scheme."""
    dist = distance_matrix(adj)
    if (dist < 0).any():
        bad = np.argwhere(dist < 0)[0]
        raise NotAScheme("2", "graph is disconnected", (int(bad[0]), int(bad[1])))
    diam = int(dist.max())
    return verify_axioms([(dist == i).astype(np.int64) for i in range(diam + 1)],
                         constructor="distance")


def su2_clebsch_gordan(i: int, j: int) -> Fraction:
    """Fusion probability from level i to level j for SU(2) spins."""
    if i < 1:
        raise ValueError("level index must be at least 1")
    if j == i - 1:
        return Fraction(i - 1, 2 * i)
    if j == i + 1:
        return Fraction(i + 1, 2 * i)
    return Fraction(0)


def tensor_to_lists(t: np.ndarray) -> list:
    """Nested lists of plain ints or exact values, for reports and comparisons."""
    return [[[t[k, i, j] for j in range(t.shape[2])] for i in range(t.shape[1])]
            for k in range(t.shape[0])]


def scheme_from_relation(rel, labels: Sequence | None = None, constructor: str = "relation") -> AssociationScheme:
    """Scheme from a matrix whose (x, y) entry is the class index of the pair."""
    r = np.asarray(rel, dtype=np.int64)
    d = int(r.max())
    return verify_axioms([(r == k).astype(np.int64) for k in range(d + 1)],
                         constructor=constructor, labels=labels)


def scheme_from_json(obj: dict) -> AssociationScheme:
    """Accepts {"classes": [...]} (matrices or nested lists) or {"relation": [[...]]}."""
    from .exactalg import mat_from_json

    labels = obj.get("labels")
    if "relation" in obj:
        return scheme_from_relation(obj["relation"], labels, obj.get("constructor", "relation"))
    classes = [mat_from_json(c) if isinstance(c, dict) else c for c in obj["classes"]]
    return verify_axioms(classes, constructor=obj.get("constructor", "classes"), labels=labels)


def scheme_to_json(s: AssociationScheme) -> dict:
    from .exactalg import mat_to_json

    return {"classes": [mat_to_json(c) for c in s.classes]}


__all__ = [
    "AssociationScheme", "DualityReport", "DEFAULT_CAP", "verify_axioms", "intersection_numbers",
    "krein_parameters", "krein_violations", "eigenmatrices", "self_duality_check",
    "hypergroup_coefficients", "trivial_scheme", "hamming_scheme", "generalized_hamming",
    "group_scheme", "cyclic_group_table", "distance_matrix", "distance_scheme",
    "su2_clebsch_gordan", "tensor_to_lists", "scheme_from_relation", "scheme_from_json", "scheme_to_json",
]
