"""Composition logs: classical coefficients, matrix oracle, algebraic laws."""

from fractions import Fraction
from random import Random

import pytest

from nilbch.algebra import AlgebraContext, LieElement, eval_bracket_pattern, hall_basis
from nilbch.bch import (
    bch,
    bch_tail_table,
    conjugation_log,
    expansion_defect_table,
    multi_bch,
)
from nilbch.errors import GradingError
from nilbch.matrices import mat_exp, mat_log, mat_mul, random_nilpotent, substitute

from test_algebra import random_element


def test_step_two_classical():
    ctx = AlgebraContext(2, 2)
    x, y = ctx.generators()
    assert bch(x, y) == x + y + x.bracket(y) / 2


def test_step_three_classical():
    ctx = AlgebraContext(2, 3)
    x, y = ctx.generators()
    z = bch(x, y)
    expected = (
        x
        + y
        + x.bracket(y) / 2
        + x.bracket(x.bracket(y)) / 12
        + y.bracket(y.bracket(x)) / 12
    )
    assert z == expected


def test_matrix_oracle():
    rng = Random("bch:oracle")
    for step in (2, 3, 4):
        ctx = AlgebraContext(2, step)
        z = bch(ctx.generator(0), ctx.generator(1))
        d = step + 1
        for _ in range(10):
            a, b = random_nilpotent(d, rng), random_nilpotent(d, rng)
            assert substitute(z, [a, b]) == mat_log(mat_mul(mat_exp(a), mat_exp(b)))


def test_associativity():
    rng = Random("bch:assoc")
    ctx = AlgebraContext(2, 4)
    for _ in range(10):
        a, b, c = (random_element(ctx, rng) for _ in range(3))
        assert bch(bch(a, b), c) == bch(a, bch(b, c))


def test_identity_and_inverse():
    rng = Random("bch:inverse")
    ctx = AlgebraContext(3, 3)
    zero = LieElement.zero(ctx)
    for _ in range(10):
        a = random_element(ctx, rng)
        assert bch(a, zero) == a
        assert bch(zero, a) == a
        assert bch(a, -a).is_zero


def test_multi_bch_folds_left():
    rng = Random("bch:multi")
    ctx = AlgebraContext(3, 3)
    a, b, c = (random_element(ctx, rng) for _ in range(3))
    assert multi_bch([a]) == a
    assert multi_bch([a, b]) == bch(a, b)
    assert multi_bch([a, b, c]) == bch(bch(a, b), c)


def test_conjugation_log_matches_composition():
    rng = Random("bch:conj")
    ctx = AlgebraContext(2, 4)
    for _ in range(10):
        a, b = random_element(ctx, rng), random_element(ctx, rng)
        assert conjugation_log(a, b) == bch(bch(a, b), -a)


def test_expansion_defect_two_letter_example():
    tables = expansion_defect_table(AlgebraContext(2, 2))
    assert tables == {2: {(1, 2): Fraction(1, 2)}}


def test_expansion_defect_single_letter_empty():
    assert expansion_defect_table(AlgebraContext(1, 4)) == {}


def test_tail_table_two_letter_example():
    table = bch_tail_table(AlgebraContext(2, 2))
    assert table.coefficients == {(1, 2): Fraction(-1, 2)}
    assert table[(1, 2)] == Fraction(-1, 2)


def test_tail_table_step_three_values():
    table = bch_tail_table(AlgebraContext(2, 3))
    assert table.coefficients == {
        (1, 2): Fraction(-1, 2),
        (1, 1, 2): Fraction(-1, 12),
        (2, 1, 2): Fraction(1, 12),
    }
    assert [alpha for alpha, _ in table] == [(1, 2), (1, 1, 2), (2, 1, 2)]


def test_tail_table_requires_two_generators():
    with pytest.raises(GradingError):
        bch_tail_table(AlgebraContext(3, 2))


def test_tail_table_reconstructs_sum():
    # x + y == bch(x, y) + sum of table entries, through step 5
    for step in range(2, 6):
        ctx = AlgebraContext(2, step)
        x, y = ctx.generators()
        total = bch(x, y)
        for alpha, c in bch_tail_table(ctx):
            total = total + eval_bracket_pattern(alpha, (x, y)) * c
        assert total == x + y


def test_defect_tables_reconstruct_multi_bch():
    for letters in (2, 3):
        ctx = AlgebraContext(letters, 4)
        gens = ctx.generators()
        total = LieElement.zero(ctx)
        for g in gens:
            total = total + g
        for table in expansion_defect_table(ctx).values():
            for alpha, c in table.items():
                total = total + eval_bracket_pattern(alpha, gens) * c
        assert total == multi_bch(gens)


def test_bch_bilinear_degree_one():
    ctx = AlgebraContext(2, 4)
    x, y = ctx.generators()
    z = bch(x, y)
    assert z.degree_component(1) == x + y
