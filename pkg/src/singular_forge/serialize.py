"""Exact JSON encoding of scalars, polynomials, rational functions, matrices and points."""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra.matrix import RatMatrix
from .algebra.points import INF, is_infinity
from .algebra.poly import Poly
from .algebra.ratfunc import RationalFunction
from .algebra.scalars import GaussianRational, as_scalar

SCHEMA = "singular-forge/1"


class InputError(ValueError):
    """Malformed input document."""


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def scalar_to_json(x):
    x = as_scalar(x)
    if x.is_real():
        return _frac(x.re)
    return {"re": _frac(x.re), "im": _frac(x.im)}


def scalar_from_json(obj) -> GaussianRational:
    if isinstance(obj, bool) or isinstance(obj, float):
        raise InputError(f"scalars must be exact strings or integers, got {obj!r}")
    if isinstance(obj, dict):
        if set(obj) - {"re", "im"}:
            raise InputError(f"unexpected scalar keys {sorted(obj)}")
        return GaussianRational.from_parts(Fraction(_str_or_int(obj.get("re", "0"))), Fraction(_str_or_int(obj.get("im", "0"))))
    if isinstance(obj, (int, str)):
        try:
            return as_scalar(Fraction(_str_or_int(obj)))
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad scalar {obj!r}: {e}") from None
    raise InputError(f"bad scalar {obj!r}")


def _str_or_int(v):
    if isinstance(v, bool) or isinstance(v, float):
        raise InputError(f"scalars must be exact strings or integers, got {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad rational {v!r}: {e}") from None
    raise InputError(f"bad rational {v!r}")


def poly_to_json(p: Poly) -> list:
    return [scalar_to_json(c) for c in p.c]


def poly_from_json(obj) -> Poly:
    if not isinstance(obj, list):
        raise InputError(f"polynomials are coefficient arrays, got {obj!r}")
    return Poly([scalar_from_json(c) for c in obj])


def rf_to_json(f: RationalFunction):
    if f.is_constant():
        return scalar_to_json(f.constant_value())
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def rf_from_json(obj) -> RationalFunction:
    if isinstance(obj, dict) and ("num" in obj or "den" in obj):
        num = poly_from_json(obj.get("num", []))
        den = poly_from_json(obj.get("den", ["1"]))
        if not den.c:
            raise InputError("zero denominator")
        return RationalFunction(num, den)
    return RationalFunction.const(scalar_from_json(obj))


def matrix_to_json(m: RatMatrix) -> list:
    return [[rf_to_json(f) for f in row] for row in m.rows]


def matrix_from_json(obj) -> RatMatrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise InputError("matrices are non-empty row-major nested arrays")
    try:
        return RatMatrix([[rf_from_json(x) for x in row] for row in obj])
    except ValueError as e:
        raise InputError(str(e)) from None


def const_matrix_to_json(m) -> list:
    return [[scalar_to_json(x) for x in row] for row in m]


def point_to_json(a):
    return "inf" if is_infinity(a) else scalar_to_json(a)


def point_from_json(obj):
    if isinstance(obj, str) and obj.strip().lower() in ("inf", "oo", "infinity"):
        return INF
    return scalar_from_json(obj)


def fraction_to_json(x) -> str:
    return _frac(Fraction(x))


def complex_to_json(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def system_to_json(S) -> dict:
    return {"schema": SCHEMA, "p": S.p, "B": matrix_to_json(S.B)}


def system_from_json(obj):
    from .system import LinearSystem

    if isinstance(obj, dict):
        if "B" not in obj:
            raise InputError("system document needs a 'B' matrix")
        m = matrix_from_json(obj["B"])
    else:
        m = matrix_from_json(obj)
    if m.shape[0] != m.shape[1]:
        raise InputError(f"B must be square, got {m.shape[0]}x{m.shape[1]}")
    return LinearSystem(m)


def equation_to_json(E) -> dict:
    return {"schema": SCHEMA, "p": E.p, "coefficients": [rf_to_json(b) for b in E.b]}


def equation_from_json(obj):
    from .system import ScalarEquation

    if not isinstance(obj, dict) or "coefficients" not in obj:
        raise InputError("equation document needs 'coefficients'")
    coeffs = obj["coefficients"]
    if not isinstance(coeffs, list) or not coeffs:
        raise InputError("coefficients must be a non-empty list")
    return ScalarEquation([rf_from_json(c) for c in coeffs])


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"
