"""Signed state graphs and their spin-model partition functions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import DimensionMismatch, PreconditionError, StateSpaceOverflow
from .exactalg import Mat, as_scalar, is_exact, schur_inverse

DEFAULT_STATE_CAP = 10**7
_CHUNK = 1 << 18


@dataclass(frozen=True)
class StateGraph:
    """Vertices 0..vertices-1 and signed edges (u, v, +1 | -1); loops and multi-edges allowed."""

    vertices: int
    edges: tuple = ()

    def __post_init__(self):
        clean = []
        for e in self.edges:
            u, v, s = e
            s = _sign(s)
            if not (0 <= int(u) < self.vertices and 0 <= int(v) < self.vertices):
                raise PreconditionError(f"edge {e} uses a missing vertex")
            clean.append((int(u), int(v), s))
        object.__setattr__(self, "edges", tuple(clean))

    def to_json(self) -> dict:
        return {"vertices": self.vertices,
                "edges": [[u, v, "+" if s > 0 else "-"] for u, v, s in self.edges]}

    @classmethod
    def from_json(cls, obj: Mapping) -> StateGraph:
        return cls(int(obj["vertices"]), tuple(tuple(e) for e in obj.get("edges", [])))

    def disjoint_union(self, other: StateGraph) -> StateGraph:
        shift = self.vertices
        moved = tuple((u + shift, v + shift, s) for u, v, s in other.edges)
        return StateGraph(self.vertices + other.vertices, self.edges + moved)


def _sign(s) -> int:
    if s in ("+", 1, "+1"):
        return 1
    if s in ("-", -1, "-1"):
        return -1
    raise PreconditionError(f"edge sign must be + or -, got {s!r}")


def _check_weights(Wplus: Mat, Wminus: Mat) -> None:
    if Wplus.n != Wminus.n:
        raise DimensionMismatch(f"W+ is {Wplus.n}x{Wplus.n} but W- is {Wminus.n}x{Wminus.n}")


def state_count(g: StateGraph, n: int, fixed: Mapping[int, int] | None = None) -> int:
    return n ** (g.vertices - len(fixed or {}))


def partition_function(g: StateGraph, Wplus: Mat, Wminus: Mat, *,
                       fixed: Mapping[int, int] | None = None, cap: int = DEFAULT_STATE_CAP):
    """Sum over colourings of the product of W_sign[colour(u), colour(v)] over edges.

    ``fixed`` pins some vertices to given colours; the sum runs over the rest.
    Exact weights give an exact result.
    """
    _check_weights(Wplus, Wminus)
    n = Wplus.n
    fixed = dict(fixed or {})
    for v, c in fixed.items():
        if not (0 <= v < g.vertices and 0 <= c < n):
            raise PreconditionError(f"cannot fix vertex {v} to colour {c}")
    free = [v for v in range(g.vertices) if v not in fixed]
    total_states = n ** len(free)
    if total_states > cap:
        raise StateSpaceOverflow(f"{n}^{len(free)} = {total_states} colourings exceeds cap {cap}")
    exact = Wplus.mode == "exact" and Wminus.mode == "exact"
    if exact:
        return _z_exact(g, Wplus, Wminus, fixed, free)
    return _z_approx(g, Wplus.to_complex(), Wminus.to_complex(), fixed, free, n)


def _z_exact(g, Wplus, Wminus, fixed, free):
    n = Wplus.n
    weights = {1: Wplus.data, -1: Wminus.data}
    colour = [0] * g.vertices
    for v, c in fixed.items():
        colour[v] = c
    total = 0
    for choice in itertools.product(range(n), repeat=len(free)):
        for v, c in zip(free, choice):
            colour[v] = c
        term = 1
        for u, v, s in g.edges:
            term = term * weights[s][colour[u], colour[v]]
            if term == 0:
                break
        total = total + term
    return total


def _z_approx(g, wp, wm, fixed, free, n):
    weights = {1: wp, -1: wm}
    total = 0j
    count = n ** len(free)
    for start in range(0, count, _CHUNK):
        idx = np.arange(start, min(count, start + _CHUNK))
        colour = np.zeros((g.vertices, idx.size), dtype=np.int64)
        for v, c in fixed.items():
            colour[v] = c
        rest = idx
        for v in reversed(free):
            colour[v] = rest % n
            rest = rest // n
        term = np.ones(idx.size, dtype=complex)
        for u, v, s in g.edges:
            term *= weights[s][colour[u], colour[v]]
        total += term.sum()
    return complex(total)


# -- moves -----------------------------------------------------------------------------
def _find_edge(edges: list, u: int, v: int, sign: int) -> int | None:
    for k, (a, b, s) in enumerate(edges):
        if s == sign and {a, b} == {u, v} and (a, b) in ((u, v), (v, u)):
            return k
    return None


def apply_r2(g: StateGraph, u: int, v: int) -> StateGraph:
    """Remove one + edge and one - edge joining u and v."""
    edges = list(g.edges)
    kp = _find_edge(edges, u, v, 1)
    km = _find_edge(edges, u, v, -1)
    if kp is None or km is None:
        raise PreconditionError(f"vertices {u} and {v} do not share oppositely signed edges")
    for k in sorted((kp, km), reverse=True):
        del edges[k]
    return StateGraph(g.vertices, tuple(edges))


@dataclass(frozen=True)
class InvarianceReport:
    z_before: object
    z_after: object
    normalization: float  # n^(delta vertices / 2)
    equal_raw: bool
    equal_normalized: bool
    residual: float

    @property
    def passed(self) -> bool:
        return self.equal_raw


def _close(a, b, exact: bool, tol: float) -> bool:
    if exact:
        return a == b
    return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(a)), abs(complex(b)))


def invariance_check(g: StateGraph, moves: Sequence[tuple[int, int]], Wplus: Mat, Wminus: Mat,
                     tol: float = 1e-9, cap: int = DEFAULT_STATE_CAP) -> InvarianceReport:
    """Compare Z before and after a sequence of R2 edge-pair removals.

    The removal keeps every vertex, so the sqrt(n)-per-vertex normalisation is 1;
    it is still reported alongside the raw comparison.
    """
    after = g
    for u, v in moves:
        after = apply_r2(after, u, v)
    z0 = partition_function(g, Wplus, Wminus, cap=cap)
    z1 = partition_function(after, Wplus, Wminus, cap=cap)
    exact = is_exact(z0) and is_exact(z1)
    norm = float(Wplus.n) ** ((after.vertices - g.vertices) / 2)
    raw = _close(z0, z1, exact, tol)
    normed = _close(complex(z0), complex(z1) * norm, False, tol)
    return InvarianceReport(z0, z1, norm, raw, normed, abs(complex(z0) - complex(z1)))


# -- canonical test graphs ------------------------------------------------------------------
def r2_pair_graph() -> StateGraph:
    """Two vertices joined by a + edge and a - edge."""
    return StateGraph(2, ((0, 1, 1), (0, 1, -1)))


def star_graph() -> StateGraph:
    """Vertices a=0, b=1, x=2 around the centre y=3."""
    return StateGraph(4, ((0, 3, 1), (1, 3, 1), (2, 3, -1)))


def triangle_graph() -> StateGraph:
    return StateGraph(3, ((0, 1, 1), (2, 0, -1), (2, 1, -1)))


@dataclass(frozen=True)
class StarTriangleReport:
    holds: bool
    residual: float
    worst: tuple | None
    D: object


def star_triangle_check(Wplus: Mat, Wminus: Mat, D, tol: float = 1e-8) -> StarTriangleReport:
    """Z(star | a, b, x) = D Z(triangle | a, b, x) for every colouring of the outer vertices."""
    _check_weights(Wplus, Wminus)
    n = Wplus.n
    D = as_scalar(D)
    star, tri = star_graph(), triangle_graph()
    exact = Wplus.mode == "exact" and Wminus.mode == "exact" and is_exact(D)
    worst, where, holds = 0.0, None, True
    for a, b, x in itertools.product(range(n), repeat=3):
        pin = {0: a, 1: b, 2: x}
        lhs = partition_function(star, Wplus, Wminus, fixed=pin)
        rhs = D * partition_function(tri, Wplus, Wminus, fixed=pin)
        diff = lhs - rhs
        bad = diff != 0 if exact else abs(complex(diff)) > tol
        mag = abs(complex(diff))
        if bad:
            holds = False
        if mag > worst or (bad and where is None):
            worst, where = max(worst, mag), (a, b, x)
    return StarTriangleReport(holds, worst, where if not holds else None, D)


def schur_pair(Wplus: Mat) -> tuple[Mat, Mat]:
    """(W+, W-) with W- the entrywise inverse of W+."""
    return Wplus, schur_inverse(Wplus)


__all__ = [
    "StateGraph", "InvarianceReport", "StarTriangleReport", "DEFAULT_STATE_CAP", "state_count",
    "partition_function", "apply_r2", "invariance_check", "r2_pair_graph", "star_graph",
    "triangle_graph", "star_triangle_check", "schur_pair",
]
