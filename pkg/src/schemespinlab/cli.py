"""Command-line interface: ``schemespinlab <group> <verb> [flags]``.

Every command writes one JSON report.  Exit status 0 means the check passed
or the computation succeeded, 1 means a valid input failed the check, and 2
means the input or the command line was unusable.
"""

from __future__ import annotations

import argparse
import ast
import json
import operator
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import catalog
from .errors import (AdmissibilityError, NotAScheme, PreconditionError, StateSpaceOverflow, UnknownEntry,
                     WitnessError)
from .exactalg import Cyclo, Mat, Surd, as_scalar, is_exact, mat_from_json, schur_inverse
from .report import dumps, jsonable, make_report

DEFAULT_SEED = 20240601


class UsageError(Exception):
    """Bad command line or unreadable input; maps to exit status 2."""

    def __init__(self, message: str, detail: dict | None = None):
        super().__init__(message)
        self.detail = detail or {}


# -- scalar expressions -------------------------------------------------------------
_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv,
           ast.Pow: operator.pow}


def parse_scalar(text: str):
    """Rationals, floats, complex literals, sqrt(m), zeta(N, k) and arithmetic on them.

    ``phi`` is accepted as shorthand for the golden ratio (1 + sqrt(5)) / 2.
    """
    try:
        tree = ast.parse(str(text).strip(), mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"cannot parse scalar {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
            v = node.value
            return Fraction(v).limit_denominator() if isinstance(v, float) and float(v).is_integer() else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Div) and isinstance(a, int) and isinstance(b, int):
                return Fraction(a, b)
            return _BINOPS[type(node.op)](a, b)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Name) and node.id == "phi":
            return (1 + Surd.sqrt(5)) / 2
        if isinstance(node, ast.Name) and node.id == "i":
            return Cyclo.root(4, 1)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
            args = [ev(a) for a in node.args]
            if node.func.id == "sqrt" and len(args) == 1 and isinstance(args[0], (int, Fraction)):
                return Surd.sqrt(args[0])
            if node.func.id == "zeta" and len(args) in (1, 2) and all(isinstance(a, int) for a in args):
                return Cyclo.root(args[0], args[1] if len(args) == 2 else 1)
        raise UsageError(f"unsupported scalar expression {text!r}")

    val = ev(tree)
    return as_scalar(val)


def _scalar_list(text: str) -> list:
    return [parse_scalar(t) for t in str(text).split(",") if t.strip()]


# -- inputs -------------------------------------------------------------------------------
def _load_json(ref: str | None):
    if ref is None:
        raise UsageError("this command needs --in")
    if ref.startswith("catalog:"):
        try:
            return catalog.get(ref.split(":", 1)[1]).to_dict()
        except UnknownEntry as exc:
            raise UsageError(f"unknown catalog entry {exc.args[0]!r}") from exc
    path = Path(ref)
    if not path.exists():
        raise UsageError(f"input file {ref} not found")
    text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {ref}: {exc.msg}",
                         {"line": exc.lineno, "column": exc.colno, "offset": exc.pos}) from exc


def _as_mat(obj) -> Mat:
    try:
        if isinstance(obj, dict) and "kind" in obj and "payload" in obj:
            if obj["kind"] != "matrix":
                raise UsageError(f"catalog entry {obj['id']} is a {obj['kind']}, not a matrix")
            obj = obj["payload"]
        if isinstance(obj, dict):
            if "entries" in obj:
                return mat_from_json(obj)
            for key in ("matrix", "W", "adjacency"):
                if key in obj:
                    return _as_mat(obj[key])
        if isinstance(obj, list):
            rows = [[parse_scalar(v) if isinstance(v, str) else v for v in row] for row in obj]
            return Mat(rows)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"not a matrix: {exc}") from exc
    raise UsageError("input is not a matrix")


def _apply_mode(m: Mat, mode: str) -> Mat:
    if mode == "approx":
        return m.approx()
    if mode == "exact" and m.mode == "approx":
        raise UsageError("--mode exact given but the input has floating-point entries")
    return m


def _load_mat(args, key: str = "inp") -> Mat:
    return _apply_mode(_as_mat(_load_json(getattr(args, key))), args.mode)


def _load_scheme(args):
    from .scheme import scheme_from_json
    obj = _load_json(args.inp)
    try:
        if "kind" in obj and "payload" in obj:
            if obj["kind"] != "scheme":
                raise UsageError(f"catalog entry {obj['id']} is a {obj['kind']}, not a scheme")
            return catalog.build(catalog.CatalogEntry.from_dict(obj))
        return scheme_from_json(obj)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"not a scheme: {exc}") from exc


def _mode_of(*mats) -> str:
    modes = {m.mode for m in mats}
    return modes.pop() if len(modes) == 1 else "mixed"


# -- scheme ----------------------------------------------------------------------------------
def _scheme_summary(s) -> dict:
    return {"n": s.n, "d": s.d, "valencies": list(s.valencies), "commutative": s.commutative,
            "labels": [str(x) for x in s.labels], "constructor": s.constructor}


def cmd_scheme_verify(args):
    try:
        s = _load_scheme(args)
    except NotAScheme as exc:
        order = ["1", "2", "3", "4"]
        failed = order.index(exc.axiom) if exc.axiom in order else 0
        axioms = {k: (True if i < failed else False if i == failed else None) for i, k in enumerate(order)}
        return 1, "exact", {"valid": False, "failed_axiom": exc.axiom, "witness": exc.witness,
                            "message": str(exc), "axioms": axioms}, {}
    axioms = {"1": True, "2": True, "3": True, "4": True, "5": s.commutative}
    return 0, "exact", {"valid": True, "axioms": axioms, **_scheme_summary(s)}, {}


def cmd_scheme_tensors(args):
    from .scheme import eigenmatrices, intersection_numbers, krein_parameters, krein_violations
    s = _load_scheme(args)
    p = intersection_numbers(s)
    q = krein_parameters(s)
    P, Q = eigenmatrices(s)
    res = {"intersection_numbers": p, "krein_parameters": q, "P": P, "Q": Q,
           "multiplicities": list(s.multiplicities), "krein_violations": krein_violations(s),
           **_scheme_summary(s)}
    return 0, s.mode, res, {}


def cmd_scheme_dual(args):
    from .scheme import self_duality_check
    s = _load_scheme(args)
    r = self_duality_check(s)
    res = {"is_self_dual": r.is_self_dual, "permutation": r.permutation, **_scheme_summary(s)}
    return (0 if r.is_self_dual else 1), s.mode, res, {"max_deviation": r.max_deviation}


def cmd_scheme_hamming(args):
    from .scheme import hamming_scheme, intersection_numbers
    s = hamming_scheme(args.d, args.q, cap=args.cap or 4096)
    return 0, "exact", {"intersection_numbers": intersection_numbers(s), **_scheme_summary(s)}, {}


def cmd_scheme_genham(args):
    from .scheme import generalized_hamming, trivial_scheme
    base = _load_scheme(args) if args.inp else trivial_scheme(args.base_size)
    s = generalized_hamming(args.n, base, cap=args.cap or 4096)
    return 0, "exact", _scheme_summary(s), {}


def cmd_scheme_group(args):
    from .scheme import cyclic_group_table, group_scheme, intersection_numbers
    if args.cyclic:
        table = cyclic_group_table(args.cyclic)
    else:
        obj = _load_json(args.inp)
        table = obj["payload"]["group_table"] if "payload" in obj else obj.get("table", obj.get("group_table"))
        if table is None:
            raise UsageError("group input needs a 'table'")
    s = group_scheme(table)
    return 0, "exact", {"intersection_numbers": intersection_numbers(s), **_scheme_summary(s)}, {}


# -- spin ------------------------------------------------------------------------------------------
def cmd_spin_typeii(args):
    from .spinmodel import is_type_ii
    W = _load_mat(args)
    try:
        r = is_type_ii(W, args.tol or 1e-8)
    except ZeroDivisionError as exc:
        return 1, W.mode, {"is_type_ii": False, "reason": str(exc)}, {"type_ii": None}
    return (0 if r.is_type_ii else 1), W.mode, {"is_type_ii": r.is_type_ii, "n": W.n}, {"type_ii": r.residual}


def cmd_spin_typeiii(args):
    from .spinmodel import is_type_ii, is_type_iii
    W = _load_mat(args)
    tol = args.tol or 1e-8
    try:
        t2 = is_type_ii(W, tol)
    except ZeroDivisionError as exc:
        return 1, W.mode, {"is_type_ii": False, "reason": str(exc)}, {}
    if not t2.is_type_ii:
        return 1, W.mode, {"is_type_ii": False, "holds": False}, {"type_ii": t2.residual}
    r = is_type_iii(W, tol, check_type_ii=False)
    res = {"is_type_ii": True, "holds": r.holds, "sign": r.sign,
           "worst_triple": {str(k): v for k, v in r.worst_triple.items()}}
    resid = {"type_ii": t2.residual, "type_iii_plus": r.residuals[1], "type_iii_minus": r.residuals[-1]}
    return (0 if r.holds else 1), W.mode, res, resid


def cmd_spin_nomura(args):
    from .spinmodel import nomura_algebra, nomura_algebra_direct
    W = _load_mat(args)
    r = nomura_algebra(W, args.tol or 1e-9)
    check = nomura_algebra_direct(W, args.tol or 1e-9)
    res = {"dimension": r.dimension, "method": r.method, "basis": r.basis,
           "direct_dimension": check.dimension}
    return (0 if r.dimension == check.dimension else 1), W.mode, res, {}


def _spin_summary(data) -> dict:
    out = {"t": list(data.t), "a": data.a, "loop_scalar": data.loop_scalar, "distinct": data.distinct,
           "is_type_ii": data.type_ii.is_type_ii if data.type_ii else None}
    if data.type_iii is not None:
        out["type_iii"] = {"holds": data.type_iii.holds, "sign": data.type_iii.sign}
    return out


def cmd_spin_potts(args):
    from .spinmodel import potts_spin_model, scheme_modular_check
    data = potts_spin_model(args.n, args.root)
    mod = scheme_modular_check(data)
    res = _spin_summary(data)
    res["modular"] = {"proportional": mod.proportional, "mu": mod.mu, "expected": mod.expected,
                      "matches_expected": mod.matches_expected}
    resid = {"type_ii": data.type_ii.residual, "modular": mod.residual}
    if data.type_iii is not None:
        resid["type_iii_plus"] = data.type_iii.residuals[1]
        resid["type_iii_minus"] = data.type_iii.residuals[-1]
    return (0 if data.type_ii.is_type_ii else 1), data.mode, res, resid


def cmd_spin_synth(args):
    from .spinmodel import synthesize_spin_model
    s = _load_scheme(args)
    r = synthesize_spin_model(s, seed=args.seed, restarts=args.restarts, tol=args.tol or 1e-8)
    res = {"found": r.found, "t": r.t, "distinct": r.distinct, "sign": r.sign, "attempts": r.attempts,
           "candidates": len(r.candidates)}
    return (0 if r.found else 1), "approx", res, {"type_iii": r.residual}


def cmd_spin_modular(args):
    from .spinmodel import modular_invariance_check, potts_spin_model, scheme_modular_check
    if args.n:
        data = potts_spin_model(args.n)
        r = scheme_modular_check(data, args.tol or 1e-8)
        mode = data.mode
    else:
        obj = _load_json(args.inp)
        if "P" not in obj or "T" not in obj:
            raise UsageError("modular input needs 'P' and 'T' matrices")
        P, T = _apply_mode(_as_mat(obj["P"]), args.mode), _apply_mode(_as_mat(obj["T"]), args.mode)
        r = modular_invariance_check(P, T, tol=args.tol or 1e-8)
        mode = _mode_of(P, T)
    res = {"proportional": r.proportional, "mu": r.mu, "expected": r.expected,
           "matches_expected": r.matches_expected, "normalized_proportional": r.normalized_proportional,
           "normalized_mu": r.normalized_mu}
    return (0 if r.proportional else 1), mode, res, {"modular": r.residual}


# -- ifs -------------------------------------------------------------------------------------------
def _jacobi_from_args(args):
    from .ifs import JacobiCoefficients
    if args.inp:
        obj = _load_json(args.inp)
        return JacobiCoefficients(tuple(obj["omega"]), tuple(obj.get("alpha", ())))
    if args.omega is None:
        raise UsageError("give --omega or --in")
    omega = tuple(_scalar_list(args.omega))
    alpha = tuple(_scalar_list(args.alpha)) if args.alpha else ()
    return JacobiCoefficients(omega, alpha)


def cmd_ifs_build(args):
    from .ifs import build_ifs
    f = build_ifs(_jacobi_from_args(args))
    res = {"dim": f.dim, "T": f.T, "Bplus": f.Bplus, "Bminus": f.Bminus, "Bcirc": f.Bcirc}
    return 0, f.T.mode, res, {}


def cmd_ifs_stratify(args):
    from .ifs import intersection_array, stratify_distance_regular
    obj = _load_json(args.inp)
    if "classes" in obj or "relation" in obj or obj.get("kind") == "scheme":
        adj = _load_scheme(args).mats[1]
    else:
        adj = np.array([[int(complex(x).real) for x in row] for row in _as_mat(obj).data])
    arr = intersection_array(adj, cap=args.cap or 4096)
    f = stratify_distance_regular(adj, base=args.base, cap=args.cap or 4096)
    res = {"omega": list(f.jacobi.omega), "alpha": list(f.jacobi.alpha), "b": list(arr.b), "a": list(arr.a),
           "c": list(arr.c), "stratum_sizes": list(arr.sizes)}
    return 0, "exact", res, {}


def cmd_ifs_sl2(args):
    from .ifs import sl2_check, sl2_ladder
    rep = sl2_check(sl2_ladder(args.d))
    res = {"passed": rep.passed, "H_diagonal": [rep.H.data[k, k] for k in range(rep.H.n)],
           "exact_zero": rep.exact_zero}
    resid = {"bracket": rep.residual_bracket, "h_plus": rep.residual_h_plus, "h_minus": rep.residual_h_minus,
             "weights": rep.residual_weights}
    return (0 if rep.passed else 1), "exact", res, resid


def cmd_ifs_recurrence(args):
    from .ifs import orthopoly_recurrence, recurrence_residual
    j = _jacobi_from_args(args)
    xs = _scalar_list(args.x)
    degree = args.degree if args.degree is not None else j.d + 1
    vals = orthopoly_recurrence(j, degree, xs)
    r = recurrence_residual(j, vals, xs)
    return 0, "exact" if all(is_exact(v) for v in xs) else "approx", {"x": xs, "values": vals}, {"recurrence": r}


# -- leonard ----------------------------------------------------------------------------------------
def _pair_from_input(args):
    obj = _load_json(args.inp)
    if "payload" in obj:
        obj = obj["payload"]
    if "A" not in obj or "B" not in obj:
        raise UsageError("input needs matrices 'A' and 'B'")
    return _apply_mode(_as_mat(obj["A"]), args.mode), _apply_mode(_as_mat(obj["B"]), args.mode)


def cmd_leonard_check(args):
    from .qleonard import is_leonard_pair
    A, B = _pair_from_input(args)
    r = is_leonard_pair(A, B)
    res = {"status": r.status, "order_for_a": r.order_for_a, "order_for_b": r.order_for_b, "reason": r.reason}
    return (0 if r.is_leonard else 1), _mode_of(A, B), res, {}


def cmd_leonard_krawtchouk(args):
    from .qleonard import krawtchouk_relations
    A, B = _pair_from_input(args)
    r = krawtchouk_relations(A, B, parse_scalar(args.omega), args.tol or 1e-9)
    res = {"passed": r.passed, "cubic_zero": r.cubic_zero, "presentation_zero": r.presentation_zero,
           "equivalent": r.equivalent}
    resid = {"cubic_a": r.residual_cubic_a, "cubic_b": r.residual_cubic_b, "commutator_a": r.residual_c_a,
             "commutator_b": r.residual_c_b}
    return (0 if r.passed else 1), _mode_of(A, B), res, resid


def cmd_leonard_subst(args):
    from .ifs import sl2_ladder
    from .qleonard import krawtchouk_relations, ksl2_substitution
    omega = parse_scalar(args.omega)
    sub = ksl2_substitution(sl2_ladder(args.d), omega)
    r = krawtchouk_relations(sub.A, sub.B, omega)
    res = {"A": sub.A, "B": sub.B, "C": sub.C, "passed": r.passed}
    resid = {"cubic_a": r.residual_cubic_a, "cubic_b": r.residual_cubic_b, "commutator_a": r.residual_c_a,
             "commutator_b": r.residual_c_b}
    return (0 if r.passed else 1), "exact", res, resid


def cmd_leonard_qdata(args):
    from .qleonard import anyon_qdata, is_leonard_pair, leonard_from_qdata
    eps = parse_scalar(args.eps)
    try:
        qd = anyon_qdata(args.k, args.d, eps)
    except AdmissibilityError as exc:
        return 1, "exact", {"admissible": False, "reason": str(exc), "witness": exc.witness}, {}
    res = {"admissible": True, "q": qd.q, "theta": list(qd.theta)}
    if args.partner:
        A, B = leonard_from_qdata(qd, args.partner)
        rep = is_leonard_pair(A, B)
        res["leonard"] = {"partner": args.partner, "status": rep.status, "A": A}
    return 0, "exact", res, {}


# -- tl --------------------------------------------------------------------------------------------------
def cmd_tl_relations(args):
    from .tlbraid import verify_tl_relations
    r = verify_tl_relations(args.n, parse_scalar(args.delta), args.tol or 1e-10)
    resid = {"idempotent": r.idempotent, "self_adjoint": r.self_adjoint, "neighbour": r.neighbour,
             "far_commute": r.far_commute}
    return (0 if r.passed else 1), "exact" if r.exact else "approx", {"passed": r.passed, "n": r.n}, resid


def cmd_tl_braid(args):
    from .tlbraid import braid_representation
    r = braid_representation(args.n, parse_scalar(args.A), args.tol or 1e-10)
    resid = {"braid": r.braid_residual, "far_commute": r.far_residual, "inverse": r.inverse_residual}
    return (0 if r.passed else 1), "exact" if r.exact else "approx", {"passed": r.passed, "delta": r.delta}, resid


def cmd_tl_trace(args):
    from .tlbraid import markov_trace, tl_from_json
    x = tl_from_json(_load_json(args.inp))
    val = markov_trace(x)
    exact = is_exact(val) if not isinstance(val, int) else True
    return 0, "exact" if exact else "approx", {"trace": val, "n": x.n}, {}


def cmd_tl_index(args):
    from .tlbraid import jones_index_values
    val = jones_index_values(args.n)
    return 0, "exact", {"n": args.n, "index": val, "float": float(complex(val).real)}, {}


def cmd_tl_square(args):
    from .tlbraid import commuting_square_check
    W = _load_mat(args)
    r = commuting_square_check(W, args.tol or 1e-9)
    res = {"passed": r.passed, "witness": r.witness, "type_ii": r.type_ii}
    return (0 if r.passed else 1), r.mode, res, {"commuting_square": r.residual}


# -- knot -----------------------------------------------------------------------------------------------
def _graph(args):
    from .knotstat import StateGraph
    obj = _load_json(args.inp)
    try:
        return StateGraph.from_json(obj.get("graph", obj))
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"not a state graph: {exc}") from exc


def _weights(args):
    if not args.weights:
        raise UsageError("this command needs --weights")
    wp = _load_mat(args, "weights")
    wm = _load_mat(args, "wminus") if args.wminus else schur_inverse(wp)
    return wp, wm


def cmd_knot_z(args):
    from .knotstat import partition_function
    g = _graph(args)
    wp, wm = _weights(args)
    z = partition_function(g, wp, wm, cap=args.cap or 10**7)
    return 0, _mode_of(wp, wm), {"Z": z, "vertices": g.vertices, "edges": len(g.edges)}, {}


def _moves(text: str | None) -> list[tuple[int, int]]:
    out = []
    for item in (text or "").split(","):
        if item.strip():
            u, v = item.split("-")
            out.append((int(u), int(v)))
    return out


def cmd_knot_r2(args):
    from .knotstat import apply_r2
    g = _graph(args)
    for u, v in _moves(args.moves):
        g = apply_r2(g, u, v)
    return 0, "n/a", {"graph": g.to_json()}, {}


def cmd_knot_invariance(args):
    from .knotstat import invariance_check
    g = _graph(args)
    wp, wm = _weights(args)
    r = invariance_check(g, _moves(args.moves), wp, wm, args.tol or 1e-9, cap=args.cap or 10**7)
    res = {"z_before": r.z_before, "z_after": r.z_after, "normalization": r.normalization,
           "equal_raw": r.equal_raw, "equal_normalized": r.equal_normalized}
    return (0 if r.passed else 1), _mode_of(wp, wm), res, {"z": r.residual}


# -- catalog ------------------------------------------------------------------------------------------------
def cmd_catalog_list(args):
    entries = [{"id": i, "kind": catalog.get(i).kind, "title": catalog.get(i).title}
               for i in catalog.list_entries()]
    return 0, "n/a", {"entries": entries}, {}


def cmd_catalog_show(args):
    try:
        e = catalog.get(args.id)
    except UnknownEntry as exc:
        raise UsageError(f"unknown catalog entry {args.id!r}") from exc
    return 0, "n/a", {"entry": e.to_dict()}, {}


def cmd_catalog_golden(args):
    try:
        r = catalog.run_golden(args.id)
    except UnknownEntry as exc:
        raise UsageError(f"unknown catalog entry {args.id!r}") from exc
    return (0 if r.passed else 1), "exact", r.to_dict(), {}


# -- parser -------------------------------------------------------------------------------------------------
class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--in", dest="inp", help="input JSON file, or catalog:<id>")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--mode", choices=("exact", "approx"), default=None,
                   help="force arithmetic mode (default: exact when the input allows)")
    p.add_argument("--tol", type=float, default=None, help="tolerance for approximate comparisons")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--cap", type=int, default=None, help="vertex or state-space cap")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="schemespinlab", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def verb(sub, name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    g = groups.add_parser("scheme", help="association schemes").add_subparsers(dest="verb", required=True)
    verb(g, "verify", cmd_scheme_verify, "check the scheme axioms")
    verb(g, "tensors", cmd_scheme_tensors, "intersection numbers, Krein parameters, P and Q")
    verb(g, "dual", cmd_scheme_dual, "search for a self-duality")
    p = verb(g, "hamming", cmd_scheme_hamming, "Hamming scheme H(d, q)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p = verb(g, "genham", cmd_scheme_genham, "generalized Hamming scheme H(n, base)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--base-size", type=int, default=2, help="trivial base scheme size when --in is absent")
    p = verb(g, "group", cmd_scheme_group, "translation scheme of an abelian group")
    p.add_argument("--cyclic", type=int, default=None)

    g = groups.add_parser("spin", help="type-II matrices and spin models").add_subparsers(dest="verb", required=True)
    verb(g, "typeii", cmd_spin_typeii, "type-II check")
    verb(g, "typeiii", cmd_spin_typeiii, "type-III (star-triangle) check")
    verb(g, "nomura", cmd_spin_nomura, "Nomura algebra")
    p = verb(g, "potts", cmd_spin_potts, "Potts spin model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--root", type=int, default=0)
    p = verb(g, "synth", cmd_spin_synth, "numerical spin-model search on a scheme")
    p.add_argument("--restarts", type=int, default=40)
    p = verb(g, "modular", cmd_spin_modular, "(PT)^3 proportionality")
    p.add_argument("--n", type=int, default=None, help="use the n-state Potts model")

    g = groups.add_parser("ifs", help="interacting Fock spaces").add_subparsers(dest="verb", required=True)
    for name, func, text in (("build", cmd_ifs_build, "ladder from Jacobi data"),
                             ("recurrence", cmd_ifs_recurrence, "orthogonal polynomial values")):
        p = verb(g, name, func, text)
        p.add_argument("--omega", default=None, help="comma-separated omega_1..omega_d")
        p.add_argument("--alpha", default=None, help="comma-separated alpha_1..alpha_{d+1}")
        if name == "recurrence":
            p.add_argument("--x", required=True, help="comma-separated evaluation points")
            p.add_argument("--degree", type=int, default=None)
    p = verb(g, "stratify", cmd_ifs_stratify, "stratify a distance-regular graph")
    p.add_argument("--base", type=int, default=0)
    p = verb(g, "sl2", cmd_ifs_sl2, "sl(2) relations on the binary Hamming ladder")
    p.add_argument("--d", type=int, required=True)

    g = groups.add_parser("leonard", help="Leonard pairs and q-data").add_subparsers(dest="verb", required=True)
    verb(g, "check", cmd_leonard_check, "Leonard pair test")
    p = verb(g, "krawtchouk", cmd_leonard_krawtchouk, "Krawtchouk algebra relations")
    p.add_argument("--omega", required=True)
    p = verb(g, "subst", cmd_leonard_subst, "Krawtchouk images in the sl(2) ladder")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--omega", required=True)
    p = verb(g, "qdata", cmd_leonard_qdata, "eigenvalue data at a root of unity")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--eps", default="1")
    p.add_argument("--partner", choices=("sl2", "parameter_array"), default=None)

    g = groups.add_parser("tl", help="Temperley-Lieb and braids").add_subparsers(dest="verb", required=True)
    p = verb(g, "relations", cmd_tl_relations, "TL relations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", required=True)
    p = verb(g, "braid", cmd_tl_braid, "braid relations of g_i = A + A^-1 E_i")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--A", required=True)
    verb(g, "trace", cmd_tl_trace, "Markov trace of a TL element")
    p = verb(g, "index", cmd_tl_index, "4 cos^2(pi/n)")
    p.add_argument("--n", type=int, required=True)
    verb(g, "square", cmd_tl_square, "commuting-square check for W")

    g = groups.add_parser("knot", help="state graphs").add_subparsers(dest="verb", required=True)
    for name, func, text in (("z", cmd_knot_z, "partition function"),
                             ("r2", cmd_knot_r2, "remove +/- edge pairs"),
                             ("invariance", cmd_knot_invariance, "Z before and after R2 moves")):
        p = verb(g, name, func, text)
        if name != "r2":
            p.add_argument("--weights", default=None, help="W+ matrix file or catalog:<id>")
            p.add_argument("--wminus", default=None, help="W- matrix (default: entrywise inverse of W+)")
        if name != "z":
            p.add_argument("--moves", default="", help="comma-separated u-v pairs")

    g = groups.add_parser("catalog", help="built-in examples").add_subparsers(dest="verb", required=True)
    verb(g, "list", cmd_catalog_list, "list entries")
    for name, func in (("show", cmd_catalog_show), ("golden", cmd_catalog_golden)):
        p = verb(g, name, func, f"{name} an entry")
        p.add_argument("id")
    return parser


def _emit(report: dict, out: str | None) -> None:
    text = dumps(report)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    command = " ".join(a for a in argv[:2] if not a.startswith("-")) or "?"
    out = None
    try:
        args = parser.parse_args(argv)
        out = args.out
        if args.tol is not None and args.tol <= 0:
            raise UsageError("--tol must be positive")
        command = f"{args.group} {args.verb}"
        inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "group", "verb", "out")}
        status, mode, results, residuals = args.func(args)
        report = make_report(command, inputs, mode, results, residuals, args.seed)
    except UsageError as exc:
        report = make_report(command, {"argv": argv}, "n/a", {"error": str(exc), **exc.detail}, {}, None)
        status = 2
    except (PreconditionError, StateSpaceOverflow, WitnessError, ValueError, KeyError) as exc:
        detail = {"error": str(exc), "type": type(exc).__name__}
        if isinstance(exc, WitnessError):
            detail["witness"] = jsonable(exc.witness)
        report = make_report(command, {"argv": argv}, "n/a", detail, {}, None)
        status = 2
    _emit(report, out)
    return status


if __name__ == "__main__":
    sys.exit(main())
