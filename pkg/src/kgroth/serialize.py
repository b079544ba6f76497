"""JSON and LaTeX forms of the result types."""
from __future__ import annotations

import re
from fractions import Fraction

from .algebra.laurent import LaurentPolynomial
from .algebra.variables import parse_variable
from .grothendieck.expansion import GExpansion
from .thom.common import CoeffTable

_LATEX_FAMILY = {"a": r"\alpha", "b": r"\beta", "e": r"\varepsilon", "z": "z", "w": r"\omega",
                 "s": r"\sigma", "u": r"\tau", "t": "t", "x": "x", "A": r"\bar\alpha", "B": r"\bar\beta"}


def _coeff_str(c) -> str:
    return str(Fraction(c))


def poly_to_json_obj(p: LaurentPolynomial) -> dict:
    terms = []
    for mono, c in p.sorted_terms():
        from .algebra.laurent import monomial_items

        terms.append({"monomial": {v.name: e for v, e in monomial_items(mono)}, "coeff": _coeff_str(c)})
    return {"polynomial": str(p), "terms": terms}


def poly_from_json_obj(obj: dict) -> LaurentPolynomial:
    acc = LaurentPolynomial()
    for term in obj["terms"]:
        c = Fraction(term["coeff"])
        c = int(c) if c.denominator == 1 else c
        acc = acc + LaurentPolynomial.monomial({parse_variable(n): e for n, e in term["monomial"].items()}, c)
    return acc


def poly_to_latex(p: LaurentPolynomial) -> str:
    text = str(p)

    def var(m):
        name, idx, exp = m.group(1), m.group(2), m.group(3)
        out = f"{_LATEX_FAMILY[name]}_{{{idx}}}"
        if exp:
            out += f"^{{{exp}}}"
        return out

    text = re.sub(r"([abezwsutxAB])(\d+)(?:\^(-?\d+))?", var, text)
    text = re.sub(r"(\d+)/(\d+)", r"\\tfrac{\1}{\2}", text)
    return text.replace("*", " ")


def table_to_latex(table: CoeffTable) -> str:
    cols = "".join("r" for _ in table.names) + "r"
    head = " & ".join(table.names + ("value",))
    rows = [" & ".join(str(x) for x in k + (v,)) + r" \\" for k, v in table.items()]
    return "\n".join([rf"\begin{{array}}{{{cols}}}", head + r" \\ \hline", *rows, r"\end{array}"])


# --- tagged values for the cache ---------------------------------------------


def dump_value(value) -> dict:
    if isinstance(value, LaurentPolynomial):
        return {"kind": "polynomial", "data": poly_to_json_obj(value)}
    if isinstance(value, GExpansion):
        return {"kind": "expansion", "data": value.to_json_obj()}
    if isinstance(value, CoeffTable):
        return {"kind": "table", "names": list(table_names(value)), "data": value.to_json_obj()}
    raise TypeError(f"cannot serialize {type(value).__name__}")


def table_names(t: CoeffTable):
    return t.names


def load_value(obj: dict):
    kind = obj["kind"]
    if kind == "polynomial":
        return poly_from_json_obj(obj["data"])
    if kind == "expansion":
        return GExpansion({tuple(row["index"]): row["coeff"] for row in obj["data"]})
    if kind == "table":
        names = tuple(obj["names"])
        return CoeffTable({tuple(row[n] for n in names): row["value"] for row in obj["data"]}, names)
    raise ValueError(f"unknown value kind {kind!r}")


def render(value, fmt: str) -> str:
    """Canonical rendering in one of text, json, latex."""
    import json

    if fmt == "text":
        return str(value)
    if fmt == "json":
        if isinstance(value, LaurentPolynomial):
            return json.dumps(poly_to_json_obj(value))
        return value.to_json()
    if fmt == "latex":
        if isinstance(value, LaurentPolynomial):
            return poly_to_latex(value)
        if isinstance(value, GExpansion):
            return value.to_latex()
        return table_to_latex(value)
    raise ValueError(f"unknown format {fmt!r}")
