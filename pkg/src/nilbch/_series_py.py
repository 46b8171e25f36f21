"""Pure-Python kernel for truncated free-associative series multiplication.

The compiled twin in _series.pyx implements the identical function; series.py
selects whichever is available at import time.
"""

from __future__ import annotations


def mul_trunc(p: dict, q: dict, step: int) -> dict:
    """Concatenation product of two series, dropping words longer than step."""
    out: dict = {}
    get = out.get
    for w1, c1 in p.items():
        room = step - len(w1)
        for w2, c2 in q.items():
            if len(w2) > room:
                continue
            w = w1 + w2
            prev = get(w)
            out[w] = c1 * c2 if prev is None else prev + c1 * c2
    return {w: c for w, c in out.items() if c}
