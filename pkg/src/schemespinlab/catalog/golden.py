"""Recompute catalog expectations with the owning modules."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..exactalg import Mat, mat_from_json, schur_inverse
from ..report import jsonable
from ..scheme import (AssociationScheme, group_scheme, intersection_numbers, krein_parameters,
                      scheme_from_json, self_duality_check)


@dataclass(frozen=True)
class GoldenCheck:
    name: str
    expected: object
    actual: object
    passed: bool
    source: str


@dataclass(frozen=True)
class GoldenReport:
    id: str
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"id": self.id, "passed": self.passed,
                "checks": [{"name": c.name, "expected": jsonable(c.expected), "actual": jsonable(c.actual),
                            "passed": c.passed, "source": c.source} for c in self.checks]}


def build(entry):
    """The live object behind an entry: Mat, AssociationScheme, (A, B) or SpinModelData."""
    p = entry.payload
    if entry.kind == "matrix":
        return mat_from_json(p)
    if entry.kind == "scheme":
        if "group_table" in p:
            return group_scheme(p["group_table"], p.get("labels"))
        return scheme_from_json(p)
    if entry.kind == "leonard_pair":
        return mat_from_json(p["A"]), mat_from_json(p["B"])
    from ..spinmodel import potts_spin_model
    return potts_spin_model(int(p["n"]), int(p.get("root", 0)))


# -- per-kind checks -------------------------------------------------------------------
def _matrix_value(W: Mat, name: str, value):
    from ..spinmodel import is_type_ii, is_type_iii, nomura_algebra, spans_same
    from ..tlbraid import commuting_square_check

    if name == "type_ii":
        return is_type_ii(W).is_type_ii, None
    if name == "schur_inverse":
        inv = schur_inverse(W)
        return inv, inv.equals(mat_from_json(value))
    if name == "type_iii":
        return is_type_iii(W).holds, None
    if name == "nomura_dimension":
        return nomura_algebra(W).dimension, None
    if name == "nomura_spans":
        from . import get
        target = build(get(value))
        ok = spans_same(nomura_algebra(W).basis, target.classes)
        return (value if ok else None), None
    if name == "commuting_square":
        return commuting_square_check(W).passed, None
    raise KeyError(name)


def _block_order(p: np.ndarray, displayed: list) -> list | None:
    """Permutation sigma with displayed[k] == p[sigma[k]] for every k, if one exists."""
    size = p.shape[0]
    for perm in itertools.permutations(range(size)):
        if all(np.array_equal(np.array(displayed[k]), p[perm[k]]) for k in range(size)):
            return list(perm)
    return None


def _scheme_value(s: AssociationScheme, name: str, value, entry):
    if name == "valencies":
        return list(s.valencies), None
    if name == "intersection_numbers":
        p = intersection_numbers(s)
        order = entry.expected.get("superscript_order", {}).get("value") or list(range(s.d + 1))
        ok = all(np.array_equal(np.array(value[k]), p[order[k]]) for k in range(s.d + 1))
        return [p[order[k]].tolist() for k in range(s.d + 1)], ok
    if name == "superscript_order":
        displayed = entry.expected["intersection_numbers"]["value"]
        return _block_order(intersection_numbers(s), displayed), None
    if name == "krein_equals_intersection":
        q, p = krein_parameters(s), intersection_numbers(s)
        return bool(all(q[idx] == p[idx] for idx in np.ndindex(p.shape))), None
    if name == "self_dual":
        return self_duality_check(s).is_self_dual, None
    if name == "self_dual_permutation":
        perm = self_duality_check(s).permutation
        return (list(perm) if perm is not None else None), None
    if name == "displayed_vectors_are_eigenvectors":
        vecs = mat_from_json(entry.extra["eigenvectors"][0])
        ok = True
        for r in range(vecs.n):
            v = Mat([[x] + [0] * (vecs.n - 1) for x in vecs.data[r]], vecs.mode)
            for a in s.classes:
                av = a @ v
                k = next(i for i in range(vecs.n) if vecs.data[r, i] != 0)
                lam = av.data[k, 0] / vecs.data[r, k]
                if not av.equals(v.scale(lam)):
                    ok = False
        return ok, None
    raise KeyError(name)


def _spin_value(data, name: str, value):
    from ..spinmodel import potts_parameters, scheme_modular_check

    if name == "t_plus_inverse":
        n = data.scheme.n
        t = potts_parameters(n)[0]
        return t + 1 / t, None
    if name == "type_ii":
        return data.type_ii.is_type_ii, None
    if name == "type_iii_sign":
        return (data.type_iii.sign if data.type_iii else None), None
    if name == "modular_proportional":
        return scheme_modular_check(data).proportional, None
    if name == "mu_equals_loop_cubed_over_a":
        return scheme_modular_check(data).matches_expected, None
    raise KeyError(name)


def _leonard_value(pair, name: str, value):
    from ..qleonard import is_leonard_pair

    rep = is_leonard_pair(*pair)
    if name == "is_leonard":
        return rep.is_leonard, None
    if name == "order_for_a":
        return (list(rep.order_for_a) if rep.order_for_a else None), None
    raise KeyError(name)


def run_golden(entry_id: str) -> GoldenReport:
    from . import get

    entry = get(entry_id)
    obj = build(entry)
    checks = []
    for name, item in entry.expected.items():
        value = item["value"]
        if entry.kind == "matrix":
            actual, ok = _matrix_value(obj, name, value)
        elif entry.kind == "scheme":
            actual, ok = _scheme_value(obj, name, value, entry)
        elif entry.kind == "spin_model":
            actual, ok = _spin_value(obj, name, value)
        else:
            actual, ok = _leonard_value(obj, name, value)
        if ok is None:
            ok = actual == value
        checks.append(GoldenCheck(name, value, actual, bool(ok), item["source"]))
    return GoldenReport(entry_id, tuple(checks))


__all__ = ["GoldenCheck", "GoldenReport", "build", "run_golden"]
