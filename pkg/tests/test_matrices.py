"""Exact matrix layer: exp/log, powers, substitution oracle plumbing."""

from fractions import Fraction
from random import Random

import pytest

from nilbch.algebra import AlgebraContext
from nilbch.bch import bch
from nilbch.matrices import (
    NilpotentMatrix,
    UnipotentMatrix,
    mat_exp,
    mat_identity,
    mat_inverse,
    mat_log,
    mat_mul,
    mat_power,
    nil_add,
    nil_bracket,
    nil_scale,
    nil_zero,
    random_nilpotent,
    random_unipotent,
    substitute,
)


def F(p, q=1):
    return Fraction(p, q)


def test_validation():
    with pytest.raises(ValueError):
        NilpotentMatrix(((F(1), F(0)), (F(0), F(0))))  # diagonal must vanish
    with pytest.raises(ValueError):
        UnipotentMatrix(((F(1), F(2)), (F(3), F(1))))  # lower part must vanish
    with pytest.raises(ValueError):
        NilpotentMatrix(((F(0), F(1)),))  # ragged


def test_exp_log_roundtrip():
    rng = Random("matrices:explog")
    for d in range(2, 7):
        for _ in range(10):
            x = random_nilpotent(d, rng)
            assert mat_log(mat_exp(x)) == x
            u = random_unipotent(d, rng)
            assert mat_exp(mat_log(u)) == u


def test_heisenberg_log_by_hand():
    u = UnipotentMatrix(((F(1), F(2), F(5)), (F(0), F(1), F(3)), (F(0), F(0), F(1))))
    # log = N - N^2/2 with N = u - 1; the corner picks up -ab/2
    expected = NilpotentMatrix(
        ((F(0), F(2), F(5) - F(2) * F(3) / 2), (F(0), F(0), F(3)), (F(0), F(0), F(0)))
    )
    assert mat_log(u) == expected


def test_power_and_inverse():
    rng = Random("matrices:power")
    u = random_unipotent(4, rng)
    assert mat_power(u, 0) == mat_identity(4)
    assert mat_power(u, 3) == mat_mul(mat_mul(u, u), u)
    assert mat_power(u, -2) == mat_inverse(mat_mul(u, u))
    assert mat_mul(u, mat_inverse(u)) == mat_identity(4)


def test_nilpotent_vector_ops():
    rng = Random("matrices:ops")
    x, y = random_nilpotent(4, rng), random_nilpotent(4, rng)
    assert nil_add(x, nil_scale(x, -1)) == nil_zero(4)
    assert nil_bracket(x, y) == nil_scale(nil_bracket(y, x), -1)


def test_substitute_strict_dimension():
    ctx = AlgebraContext(2, 3)
    z = bch(ctx.generator(0), ctx.generator(1))
    rng = Random("matrices:subst")
    a, b = random_nilpotent(3, rng), random_nilpotent(3, rng)
    with pytest.raises(ValueError):
        substitute(z, [a, b])  # strict wants dimension step + 1 = 4
    # relaxed allows smaller dimensions (they kill more brackets)
    got = substitute(z, [a, b], strict=False)
    assert got == mat_log(mat_mul(mat_exp(a), mat_exp(b)))
    with pytest.raises(ValueError):
        substitute(z, [random_nilpotent(5, rng), random_nilpotent(5, rng)], strict=False)


def test_substitute_respects_linearity():
    ctx = AlgebraContext(2, 2)
    x, y = ctx.generators()
    rng = Random("matrices:linear")
    a, b = random_nilpotent(3, rng), random_nilpotent(3, rng)
    assert substitute(x + y, [a, b]) == nil_add(a, b)
    assert substitute(x.bracket(y), [a, b]) == nil_bracket(a, b)
