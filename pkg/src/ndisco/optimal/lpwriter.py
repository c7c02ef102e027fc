"""LP-format text export for the schedule models.

Output is deterministic: same model, byte-identical text.  Rational
coefficients are rendered as decimals, exactly when the denominator is a
product of 2s and 5s, otherwise with 17 significant digits.
"""

from __future__ import annotations

import io
from fractions import Fraction
from typing import TextIO, Union

from .model import Constraint, IlpModel


def _decimal(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    den = x.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den == 1:
        # terminating decimal: scale to an exact digit string
        num, d = x.numerator, x.denominator
        exp = 0
        while d % 2 == 0:
            d //= 2
            exp += 1
        e5 = 0
        while d % 5 == 0:
            d //= 5
            e5 += 1
        digits = max(exp, e5)
        scaled = x * 10**digits
        sign = "-" if scaled < 0 else ""
        body = str(abs(int(scaled))).rjust(digits + 1, "0")
        return f"{sign}{body[:-digits]}.{body[-digits:]}" if digits else str(int(scaled))
    return repr(float(x))


def _terms(coeffs) -> str:
    parts = []
    for name, coef in coeffs:
        if coef < 0:
            parts.append(f"- {_decimal(-coef)} {name}")
        else:
            prefix = "+ " if parts else ""
            parts.append(f"{prefix}{_decimal(coef)} {name}")
    return " ".join(parts)


def _constraint_line(con: Constraint) -> str:
    op = "=" if con.sense == "=" else "<="
    return f" {con.name}: {_terms(con.coeffs)} {op} {_decimal(con.rhs)}"


def export_lp(model: IlpModel, destination: Union[str, TextIO]) -> str:
    """Write the model as LP-format text; returns the text as well."""
    buf = io.StringIO()
    buf.write("Minimize\n")
    buf.write(f" obj: {_terms(model.objective)}\n")
    buf.write("Subject To\n")
    for con in model.constraints:
        buf.write(_constraint_line(con) + "\n")
    if model.z_var is not None:
        buf.write("Bounds\n")
        buf.write(f" 0 <= {model.z_var} <= {model.t_max}\n")
    buf.write("Binary\n")
    for name in model.y_vars:
        buf.write(f" {name}\n")
    for name in model.h_vars:
        buf.write(f" {name}\n")
    buf.write("End\n")
    text = buf.getvalue()
    if isinstance(destination, str):
        with open(destination, "w") as fh:
            fh.write(text)
    else:
        destination.write(text)
    return text
