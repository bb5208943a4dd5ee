"""JSON diagnostics reports shared by the CLI and the golden runner."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

import jsonschema
import numpy as np

from . import __version__
from .exactalg import Cyclo, Mat, Surd, mat_to_json
from .exactalg.jsonio import encode_scalar


def jsonable(x):
    """Plain JSON data for exact values, matrices, numpy scalars and containers."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, (Cyclo, Surd)):
        return {"exact": encode_scalar(x), "approx": _pair(complex(x))}
    if isinstance(x, (float, np.floating)):
        return _float(float(x))
    if isinstance(x, (complex, np.complexfloating)):
        return _pair(complex(x))
    if isinstance(x, Mat):
        return mat_to_json(x)
    if isinstance(x, np.ndarray):
        return [jsonable(v) for v in x.tolist()]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _float(v: float) -> float:
    # a fixed number of significant digits keeps reports byte-stable
    return float(f"{v:.15g}") if v == v else v


def _pair(z: complex) -> list:
    return [_float(z.real), _float(z.imag)]


def _schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("report_schema.json").read_text())


def make_report(command: str, inputs: dict, mode: str, results: dict, residuals: dict,
                seed: int | None = None) -> dict:
    report = {
        "command": command,
        "inputs": jsonable(inputs),
        "mode": mode,
        "results": jsonable(results),
        "residuals": jsonable(residuals),
        "provenance": {"package": "schemespinlab", "version": __version__, "seed": seed},
    }
    jsonschema.validate(report, _schema())
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


__all__ = ["jsonable", "make_report", "dumps"]
