"""JSON encoding of scalars and matrices.

Exact scalars are written as a list of ``order`` rational strings (coefficients
of zeta_order^k); approximate ones as ``[re, im]``.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclotomic import Cyclo
from .mat import Mat
from .scalars import is_exact, order_of
from .surd import Surd


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def scalar_order(values) -> int:
    out = 1
    for v in values:
        if is_exact(v):
            out = math.lcm(out, order_of(v))
    return out


def encode_scalar(x, order: int | None = None):
    if not is_exact(x):
        z = complex(x)
        return [z.real, z.imag]
    if isinstance(x, Surd):
        x = x.to_cyclo()
    if order is None:
        order = order_of(x)
    if isinstance(x, Cyclo):
        coeffs = x.lift(order).coeffs
    else:
        coeffs = [Fraction(x)] + [Fraction(0)] * (order - 1)
    return [_frac_str(c) for c in coeffs]


def decode_scalar(obj, order: int | None = None):
    if isinstance(obj, (int, float)):
        return obj
    if isinstance(obj, str):
        f = Fraction(obj)
        return f.numerator if f.denominator == 1 else f
    if len(obj) == 2 and all(isinstance(v, (int, float)) for v in obj) and order is None:
        return complex(obj[0], obj[1])
    fr = [Fraction(v) for v in obj]
    n = order if order is not None else len(fr)
    if len(fr) != n:
        raise ValueError(f"exact scalar needs {n} coefficients, got {len(fr)}")
    val = Cyclo(n, fr)._demote() if n > 1 else fr[0]
    if isinstance(val, Fraction) and val.denominator == 1:
        return val.numerator
    return val


def mat_to_json(m: Mat) -> dict:
    if m.mode == "approx":
        entries = [[encode_scalar(x) for x in row] for row in m.data]
        return {"n": m.n, "mode": "approx", "order": 1, "entries": entries}
    order = scalar_order(m.data.flat)
    entries = [[encode_scalar(x, order) for x in row] for row in m.data]
    return {"n": m.n, "mode": "exact", "order": order, "entries": entries}


def mat_from_json(obj: dict) -> Mat:
    mode = obj.get("mode", "exact")
    entries = obj["entries"]
    n = obj.get("n", len(entries))
    if len(entries) != n:
        raise ValueError(f"declared n={n} but {len(entries)} rows given")
    if mode == "approx":
        rows = [[complex(v[0], v[1]) if isinstance(v, list) else complex(v) for v in row]
                for row in entries]
        return Mat(rows, "approx")
    order = obj.get("order")
    rows = [[v if isinstance(v, int) else decode_scalar(v, order if isinstance(v, list) else None)
             for v in row] for row in entries]
    return Mat(rows, "exact")
