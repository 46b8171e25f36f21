"""JSON forms for the exact types: rationals as strings, never floats.

Lie elements serialize as objects mapping canonical bracket-tree strings to
rational strings, matrices as {"dim": d, "rows": [["p/q", ...], ...]}, and
pattern tables as lists of {"pattern": [indices], "coefficient": "p/q"}.
Keys are emitted in canonical basis order so output is byte-stable.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import AlgebraContext, LieElement, parse_tree, tree_str
from .matrices import NilpotentMatrix, UnipotentMatrix


def rational_str(q) -> str:
    return str(Fraction(q))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"invalid rational {text!r}") from e


def lie_to_json(x: LieElement) -> dict:
    symbols = x.ctx.symbols
    return {
        tree_str(t, symbols): rational_str(c)
        for t, c in x.sorted_terms()
    }


def lie_from_json(obj: dict, ctx: AlgebraContext) -> LieElement:
    if not isinstance(obj, dict):
        raise ValueError("a Lie element must be a JSON object")
    total = LieElement.zero(ctx)
    for key, val in obj.items():
        tree = parse_tree(key, ctx)
        c = parse_rational(val)
        total = total + LieElement(ctx, {tree: c})
    return total


def matrix_to_json(m) -> dict:
    return {
        "dim": m.dim,
        "rows": [[rational_str(x) for x in row] for row in m.rows],
    }


def _rows_from_json(obj) -> tuple:
    if not isinstance(obj, dict) or "dim" not in obj or "rows" not in obj:
        raise ValueError('a matrix must be an object with "dim" and "rows"')
    d = obj["dim"]
    rows = obj["rows"]
    if not isinstance(rows, list) or len(rows) != d:
        raise ValueError(f"expected {d} rows")
    out = []
    for row in rows:
        if not isinstance(row, list) or len(row) != d:
            raise ValueError(f"expected rows of length {d}")
        out.append(tuple(parse_rational(x) for x in row))
    return tuple(out)


def nilpotent_from_json(obj) -> NilpotentMatrix:
    return NilpotentMatrix(_rows_from_json(obj))


def unipotent_from_json(obj) -> UnipotentMatrix:
    return UnipotentMatrix(_rows_from_json(obj))


def table_to_json(entries) -> list:
    """Pattern table rows from an iterable of (pattern, coefficient)."""
    return [
        {"pattern": list(alpha), "coefficient": rational_str(c)}
        for alpha, c in entries
    ]
