"""Truncated series kernel: backend twins, exp/log ladders, truncation."""

import os
import subprocess
import sys
from fractions import Fraction
from random import Random

import pytest

from nilbch import _series_py
from nilbch.qpoly import QPoly, T
from nilbch.series import (
    BACKEND,
    EMPTY_WORD,
    add,
    exp_truncated,
    log_truncated,
    mul_trunc,
    one,
    scale,
    sub,
)

try:
    from nilbch import _series

    HAVE_COMPILED = True
except ImportError:
    HAVE_COMPILED = False


def random_series(rng: Random, letters: int, step: int, constant=False) -> dict:
    out = {}
    if constant:
        out[EMPTY_WORD] = Fraction(1)
    for _ in range(30):
        d = rng.randint(1, step)
        w = tuple(rng.randrange(letters) for _ in range(d))
        c = Fraction(rng.randint(-5, 5), rng.choice((1, 2, 3)))
        if c:
            out[w] = c
    return out


def test_backend_is_reported():
    assert BACKEND in ("compiled", "pure")


def test_kernel_twins_agree_on_fractions():
    if not HAVE_COMPILED:
        pytest.skip("compiled kernel not built")
    rng = Random("series:twins")
    for _ in range(25):
        p = random_series(rng, 3, 5, constant=bool(rng.getrandbits(1)))
        q = random_series(rng, 3, 5, constant=bool(rng.getrandbits(1)))
        step = rng.randint(1, 5)
        assert _series.mul_trunc(p, q, step) == _series_py.mul_trunc(p, q, step)


def test_kernel_twins_agree_on_polynomials():
    if not HAVE_COMPILED:
        pytest.skip("compiled kernel not built")
    p = {(0,): T, (1,): T * T - 1}
    q = {(0, 1): T + 2, EMPTY_WORD: QPoly.constant(1)}
    assert _series.mul_trunc(p, q, 3) == _series_py.mul_trunc(p, q, 3)


def test_mul_truncates_high_degrees():
    p = {(0,): Fraction(1), (0, 0): Fraction(1)}
    assert mul_trunc(p, p, 2) == {(0, 0): Fraction(1)}
    assert mul_trunc(p, p, 1) == {}


def test_mul_drops_exact_zeros():
    p = {(0,): Fraction(1)}
    q = {(1,): Fraction(1)}
    r = add(mul_trunc(p, q, 2), scale(mul_trunc(q, p, 2), -1))
    assert sub(r, {(0, 1): Fraction(1), (1, 0): Fraction(-1)}) == {}


def test_exp_log_roundtrip():
    rng = Random("series:explog")
    for _ in range(10):
        p = random_series(rng, 2, 4)
        step = 4
        u = exp_truncated(p, step)
        assert u.get(EMPTY_WORD) == 1
        assert log_truncated(u, step) == p


def test_exp_requires_zero_constant_term():
    with pytest.raises(ValueError):
        exp_truncated(one(), 3)
    with pytest.raises(ValueError):
        log_truncated({(0,): Fraction(1)}, 3)


def test_pure_override_env(tmp_path):
    code = "import nilbch.series as s; print(s.BACKEND)"
    env = dict(os.environ, NILBCH_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env
    )
    assert out.stdout.strip() == "pure"
