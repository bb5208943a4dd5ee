"""Temperley-Lieb diagrams, braid generators, Markov trace and commuting squares.

A diagram on ``n`` strands matches 2n boundary points: the top row is
0..n-1 from left to right and the bottom row is n..2n-1 from left to right.
The product ``x * y`` puts ``x`` on top of ``y``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import PreconditionError, StrandMismatch
from .exactalg import Cyclo, Mat, SchurSingular, as_scalar, conj, decode_scalar, encode_scalar, inverse, is_exact
from .exactalg.jsonio import scalar_order

Pairing = tuple  # sorted tuple of (p, q) with p < q


# -- diagrams ---------------------------------------------------------------------
def _circle_position(p: int, n: int) -> int:
    # walk the top row left to right, then the bottom row right to left
    return p if p < n else 3 * n - 1 - p


def is_planar(pairing: Pairing, n: int) -> bool:
    """Non-crossing check in the boundary circle order."""
    arcs = [tuple(sorted((_circle_position(p, n), _circle_position(q, n)))) for p, q in pairing]
    for (a, b), (c, d) in itertools.combinations(arcs, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


def make_diagram(pairs: Iterable[Sequence[int]], n: int) -> Pairing:
    """Validate and normalise a matching on 2n points."""
    pairing = tuple(sorted(tuple(sorted((int(p), int(q)))) for p, q in pairs))
    seen = [x for pq in pairing for x in pq]
    if sorted(seen) != list(range(2 * n)):
        raise PreconditionError("pairing must use every boundary point exactly once")
    if any(p == q for p, q in pairing):
        raise PreconditionError("a point cannot be paired with itself")
    if not is_planar(pairing, n):
        raise PreconditionError("pairing is not planar")
    return pairing


def identity_diagram(n: int) -> Pairing:
    return tuple((k, n + k) for k in range(n))


def cup_cap(n: int, i: int) -> Pairing:
    """E_i for 1 <= i <= n - 1: a cap joining top i-1, i and a cup joining bottom i-1, i."""
    if not 1 <= i <= n - 1:
        raise PreconditionError(f"generator index {i} outside 1..{n - 1}")
    pairs = [(i - 1, i), (n + i - 1, n + i)]
    pairs += [(k, n + k) for k in range(n) if k not in (i - 1, i)]
    return make_diagram(pairs, n)


def _partner_map(pairing: Pairing) -> dict:
    out = {}
    for p, q in pairing:
        out[p] = q
        out[q] = p
    return out


def compose_diagrams(x: Pairing, y: Pairing, n: int) -> tuple[Pairing, int]:
    """Stack x on y; returns the resulting diagram and the number of closed loops."""
    px, py = _partner_map(x), _partner_map(y)
    # x bottom point n + k is glued to y top point k; label glued points by k
    seen = set()

    def walk(side: str, p: int) -> int:
        # follow a strand from an outer point until it leaves through another
        while True:
            q = (px if side == "x" else py)[p]
            if side == "x" and q < n:
                return q
            if side == "y" and q >= n:
                return q
            k = q - n if side == "x" else q
            seen.add(k)
            side, p = ("y", k) if side == "x" else ("x", k + n)

    pairs = set()
    for t in range(n):
        pairs.add(tuple(sorted((t, walk("x", t)))))
    for b in range(n, 2 * n):
        pairs.add(tuple(sorted((b, walk("y", b)))))
    loops = 0
    for k in range(n):
        if k in seen:
            continue
        loops += 1
        cur = k
        while cur not in seen:
            seen.add(cur)
            cur = py[cur]  # y top to y top
            seen.add(cur)
            cur = px[cur + n] - n  # x bottom to x bottom
    return tuple(sorted(pairs)), loops


def closure_loops(d: Pairing, n: int) -> int:
    """Loops after joining top k to bottom n + k for every k."""
    partner = _partner_map(d)
    seen = set()
    loops = 0
    for start in range(n):
        if start in seen:
            continue
        loops += 1
        p = start
        while True:
            seen.add(p)
            q = partner[p]
            seen.add(q)
            p = q - n if q >= n else q + n
            if p == start:
                break
    return loops


def adjoint_diagram(d: Pairing, n: int) -> Pairing:
    flip = lambda p: p + n if p < n else p - n  # noqa: E731
    return tuple(sorted(tuple(sorted((flip(p), flip(q)))) for p, q in d))


@lru_cache(maxsize=None)
def enumerate_diagrams(n: int) -> tuple:
    """All planar diagrams on n strands, built from non-crossing matchings of the circle."""
    order = list(range(n)) + list(range(2 * n - 1, n - 1, -1))

    def matchings(points):
        if not points:
            yield ()
            return
        first = points[0]
        for k in range(1, len(points), 2):
            inside, outside = points[1:k], points[k + 1:]
            for a in matchings(inside):
                for b in matchings(outside):
                    yield ((first, points[k]),) + a + b

    return tuple(sorted(make_diagram(m, n) for m in matchings(order)))


def catalan(n: int) -> int:
    from math import comb
    return comb(2 * n, n) // (n + 1)


def generated_diagrams(n: int) -> set:
    """Diagrams reachable from the identity by multiplying with cup-caps."""
    if n < 2:
        return {identity_diagram(n)}
    gens = [cup_cap(n, i) for i in range(1, n)]
    seen = {identity_diagram(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for d in frontier:
            for g in gens:
                r, _ = compose_diagrams(d, g, n)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return seen


# -- elements ---------------------------------------------------------------------
def _zero(c) -> bool:
    return c == 0 if is_exact(c) else abs(complex(c)) == 0


class TLElement:
    """Linear combination of diagrams with loop value ``delta``."""

    __slots__ = ("n", "delta", "terms")

    def __init__(self, n: int, delta, terms: Mapping[Pairing, object] | None = None):
        self.n = n
        self.delta = as_scalar(delta)
        clean = {}
        for d, c in (terms or {}).items():
            c = as_scalar(c) if not isinstance(c, complex) else c
            if not _zero(c):
                clean[d] = c
        self.terms = clean

    @classmethod
    def diagram(cls, n: int, delta, d: Pairing, coeff=1) -> TLElement:
        return cls(n, delta, {d: coeff})

    @classmethod
    def identity(cls, n: int, delta) -> TLElement:
        return cls.diagram(n, delta, identity_diagram(n))

    def _same(self, other: TLElement) -> None:
        if self.n != other.n:
            raise StrandMismatch(f"{self.n} vs {other.n} strands", (self.n, other.n))
        if self.delta != other.delta:
            raise PreconditionError("loop values differ")

    def __add__(self, other: TLElement) -> TLElement:
        self._same(other)
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms.get(d, 0) + c
        return TLElement(self.n, self.delta, terms)

    def __neg__(self) -> TLElement:
        return self.scale(-1)

    def __sub__(self, other: TLElement) -> TLElement:
        return self + (-other)

    def scale(self, c) -> TLElement:
        return TLElement(self.n, self.delta, {d: v * c for d, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TLElement):
            return tl_compose(self, other)
        return self.scale(other)

    __rmul__ = scale

    def adjoint(self) -> TLElement:
        return TLElement(self.n, self.delta,
                         {adjoint_diagram(d, self.n): conj(c) for d, c in self.terms.items()})

    def max_abs(self) -> float:
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    def is_zero(self, tol: float = 0.0) -> bool:
        if not self.terms:
            return True
        return tol > 0 and self.max_abs() <= tol

    def __eq__(self, other) -> bool:
        return isinstance(other, TLElement) and (self - other).is_zero()

    def __repr__(self) -> str:
        return f"TLElement(n={self.n}, terms={len(self.terms)})"


def tl_compose(x: TLElement, y: TLElement) -> TLElement:
    x._same(y)
    out: dict = {}
    for dx, cx in x.terms.items():
        for dy, cy in y.terms.items():
            d, loops = compose_diagrams(dx, dy, x.n)
            c = cx * cy * x.delta ** loops if loops else cx * cy
            out[d] = out.get(d, 0) + c
    return TLElement(x.n, x.delta, out)


def tl_generators(n: int, delta) -> list[TLElement]:
    """e_i = E_i / delta for i = 1..n-1."""
    delta = as_scalar(delta)
    if _zero(delta):
        raise PreconditionError("delta must be nonzero")
    inv = 1 / delta
    return [TLElement.diagram(n, delta, cup_cap(n, i), inv) for i in range(1, n)]


@dataclass(frozen=True)
class TLReport:
    n: int
    idempotent: float
    self_adjoint: float
    neighbour: float
    far_commute: float
    exact: bool
    tol: float

    @property
    def residual(self) -> float:
        return max(self.idempotent, self.self_adjoint, self.neighbour, self.far_commute)

    @property
    def passed(self) -> bool:
        return self.residual == 0 if self.exact else self.residual <= self.tol


def verify_tl_relations(n: int, delta, tol: float = 1e-10) -> TLReport:
    """e_i^2 = e_i = e_i^*, e_i e_{i+-1} e_i = lambda^-1 e_i, far generators commute."""
    if n < 2:
        raise PreconditionError("need at least two strands")
    e = tl_generators(n, delta)
    lam_inv = 1 / (as_scalar(delta) ** 2)
    idem = max((e_i * e_i - e_i).max_abs() for e_i in e)
    adj = max((e_i.adjoint() - e_i).max_abs() for e_i in e)
    neigh = 0.0
    far = 0.0
    for i, j in itertools.permutations(range(n - 1), 2):
        if abs(i - j) == 1:
            neigh = max(neigh, (e[i] * e[j] * e[i] - e[i].scale(lam_inv)).max_abs())
        else:
            far = max(far, (e[i] * e[j] - e[j] * e[i]).max_abs())
    return TLReport(n, idem, adj, neigh, far, is_exact(as_scalar(delta)), tol)


# -- braids ---------------------------------------------------------------------------
@dataclass(frozen=True)
class BraidReport:
    generators: list
    inverses: list
    delta: object
    braid_residual: float
    far_residual: float
    inverse_residual: float
    exact: bool
    tol: float

    @property
    def residual(self) -> float:
        return max(self.braid_residual, self.far_residual, self.inverse_residual)

    @property
    def passed(self) -> bool:
        return self.residual == 0 if self.exact else self.residual < self.tol


def braid_representation(n: int, A, tol: float = 1e-10) -> BraidReport:
    """g_i = A + A^-1 E_i in TL with delta = -A^2 - A^-2, plus the relation residuals."""
    A = as_scalar(A)
    if _zero(A):
        raise PreconditionError("A must be nonzero")
    Ainv = 1 / A
    delta = -A * A - Ainv * Ainv
    if _zero(delta):
        raise PreconditionError("delta = -A^2 - A^-2 vanishes")
    one = TLElement.identity(n, delta)
    E = [TLElement.diagram(n, delta, cup_cap(n, i)) for i in range(1, n)]
    g = [one.scale(A) + Ei.scale(Ainv) for Ei in E]
    ginv = [one.scale(Ainv) + Ei.scale(A) for Ei in E]
    br = 0.0
    far = 0.0
    for i in range(n - 2):
        br = max(br, (g[i] * g[i + 1] * g[i] - g[i + 1] * g[i] * g[i + 1]).max_abs())
    for i, j in itertools.combinations(range(n - 1), 2):
        if j - i >= 2:
            far = max(far, (g[i] * g[j] - g[j] * g[i]).max_abs())
    inv = max(((gi * hi - one).max_abs() for gi, hi in zip(g, ginv)), default=0.0)
    return BraidReport(g, ginv, delta, br, far, inv, is_exact(A), tol)


# -- trace and index ----------------------------------------------------------------
def markov_trace(x: TLElement):
    """tr(D) = delta^(loops(closure D) - n), extended linearly; tr(1) = 1."""
    # an int delta would turn negative powers into floats
    delta = Fraction(x.delta) if isinstance(x.delta, int) else x.delta
    total = 0
    for d, c in x.terms.items():
        total = total + c * delta ** (closure_loops(d, x.n) - x.n)
    return total


def jones_index_values(n: int):
    """4 cos^2(pi/n) = 2 + zeta_n + zeta_n^-1, exactly."""
    if n < 3:
        raise PreconditionError("n must be at least 3")
    z = Cyclo.root(n, 1)
    val = 2 + z + z.inverse()
    return val._demote() if isinstance(val, Cyclo) else val


# -- commuting squares ----------------------------------------------------------------
@dataclass(frozen=True)
class CommutingSquareReport:
    W: Mat
    residual: float
    passed: bool
    witness: tuple | None
    type_ii: bool
    mode: str


def _diag_part(m: Mat) -> Mat:
    return Mat.diag([m.data[i, i] for i in range(m.n)], m.mode)


def commuting_square_check(W: Mat, tol: float = 1e-9) -> CommutingSquareReport:
    """E_D(E_{W^-1 D W}(u_jk)) = tr(u_jk) I for every matrix unit.

    The expectation onto W^-1 D W is m -> W^-1 E_D(W m W^-1) W, and tr is the
    normalised trace.  Whether W is type II is recorded rather than enforced,
    so that W = I reports its failing matrix unit.
    """
    from .spinmodel import is_type_ii

    n = W.n
    Winv = inverse(W)
    try:
        type_ii = is_type_ii(W).is_type_ii
    except SchurSingular:
        type_ii = False
    exact = W.mode == "exact"
    unit = Fraction(1, n) if exact else 1.0 / n
    worst = 0.0
    witness = None
    for j, k in itertools.product(range(n), repeat=2):
        u = [[0] * n for _ in range(n)]
        u[j][k] = 1
        U = Mat(u, W.mode)
        lhs = _diag_part(Winv @ _diag_part(W @ U @ Winv) @ W)
        rhs = Mat.identity(n, W.mode).scale(unit) if j == k else Mat.zeros(n, W.mode)
        dev = lhs - rhs
        bad = not dev.is_zero() if exact else dev.max_abs() > tol
        r = dev.max_abs() if bad or not exact else 0.0
        worst = max(worst, r)
        if bad and witness is None:
            witness = (j, k)
    return CommutingSquareReport(W, worst, witness is None, witness, type_ii, W.mode)


# -- JSON ---------------------------------------------------------------------------
def tl_to_json(x: TLElement) -> dict:
    values = [x.delta, *x.terms.values()]
    order = scalar_order(values)
    enc = (lambda v: encode_scalar(v, order)) if all(is_exact(v) for v in values) else encode_scalar
    return {
        "n": x.n,
        "delta": enc(x.delta),
        "order": order,
        "terms": [{"pairing": [list(p) for p in d], "coeff": enc(c)} for d, c in sorted(x.terms.items())],
    }


def tl_from_json(obj: dict) -> TLElement:
    n = int(obj["n"])
    order = obj.get("order")
    exact = order is not None

    def dec(v):
        return decode_scalar(v, order if exact and isinstance(v, list) and len(v) == order else None)

    terms = {}
    for t in obj["terms"]:
        d = make_diagram(t["pairing"], n)
        terms[d] = terms.get(d, 0) + dec(t["coeff"])
    return TLElement(n, dec(obj["delta"]), terms)


__all__ = [
    "TLElement", "TLReport", "BraidReport", "CommutingSquareReport", "is_planar", "make_diagram",
    "identity_diagram", "cup_cap", "compose_diagrams", "closure_loops", "adjoint_diagram",
    "enumerate_diagrams", "catalan", "generated_diagrams", "tl_compose", "tl_generators",
    "verify_tl_relations", "braid_representation", "markov_trace", "jones_index_values",
    "commuting_square_check", "tl_to_json", "tl_from_json",
]
