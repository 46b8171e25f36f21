# cython: language_level=3
"""Compiled kernel for truncated free-associative series multiplication.

Semantically identical to _series_py.mul_trunc; the win comes from compiling
the word bookkeeping (tuple concatenation, dict probes) while coefficient
arithmetic stays in exact Python objects.
"""


def mul_trunc(dict p, dict q, int step):
    """Concatenation product of two series, dropping words longer than step."""
    cdef dict out = {}
    cdef object w1, c1, w2, c2, w, prev
    cdef int room
    for w1, c1 in p.items():
        room = step - len(<tuple> w1)
        for w2, c2 in q.items():
            if len(<tuple> w2) > room:
                continue
            w = <tuple> w1 + <tuple> w2
            prev = out.get(w)
            if prev is None:
                out[w] = c1 * c2
            else:
                out[w] = prev + c1 * c2
    return {w: c for w, c in out.items() if c}
