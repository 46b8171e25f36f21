"""Truncated series in the free associative algebra.

A series is a dict mapping words (tuples of 0-based letter indices) to nonzero
coefficients; the empty tuple keys the constant term. Every operation
truncates at a fixed total degree. Coefficients may be any exact commutative
ring scalars supporting +, *, unary -, and truthiness (Fraction, QPoly).

The multiplication kernel has a compiled and a pure-Python implementation
with identical semantics; the compiled one is preferred when present, and
setting NILBCH_PURE=1 in the environment forces the pure twin.
"""

from __future__ import annotations

import os
from fractions import Fraction

if os.environ.get("NILBCH_PURE"):
    from ._series_py import mul_trunc

    BACKEND = "pure"
else:
    try:
        from ._series import mul_trunc  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from ._series_py import mul_trunc  # type: ignore[no-redef]

        BACKEND = "pure"

EMPTY_WORD: tuple[int, ...] = ()

_ONE = Fraction(1)


def one() -> dict:
    return {EMPTY_WORD: _ONE}


def add(p: dict, q: dict) -> dict:
    out = dict(p)
    for w, c in q.items():
        s = out.get(w)
        if s is None:
            out[w] = c
        else:
            s = s + c
            if s:
                out[w] = s
            else:
                del out[w]
    return out


def sub(p: dict, q: dict) -> dict:
    return add(p, {w: -c for w, c in q.items()})


def scale(p: dict, c) -> dict:
    if not c:
        return {}
    return {w: x * c for w, x in p.items()}


def exp_truncated(p: dict, step: int) -> dict:
    """exp of a series with zero constant term, by a Horner ladder."""
    if EMPTY_WORD in p:
        raise ValueError("exp requires a series with zero constant term")
    e = one()
    for k in range(step, 0, -1):
        e = add(one(), scale(mul_trunc(p, e, step), Fraction(1, k)))
    return e


def log_truncated(u: dict, step: int) -> dict:
    """log of a series with constant term 1, by a Horner ladder."""
    if u.get(EMPTY_WORD) != 1:
        raise ValueError("log requires a series with constant term 1")
    a = {w: c for w, c in u.items() if w}
    s: dict = {EMPTY_WORD: Fraction(1, step)}
    for k in range(step - 1, 0, -1):
        s = add({EMPTY_WORD: Fraction(1, k)}, scale(mul_trunc(a, s, step), -1))
    return mul_trunc(a, s, step)
