"""Basis construction, bracket arithmetic, and pattern decomposition."""

from fractions import Fraction
from random import Random

import pytest

from nilbch.algebra import (
    AlgebraContext,
    LieElement,
    ad_power,
    dimensions_by_degree,
    eval_bracket_pattern,
    hall_basis,
    is_lyndon,
    lyndon_words,
    parse_tree,
    patterns,
    rightnormed_decomposition,
    tree_degree,
    tree_foliage,
    tree_str,
)
from nilbch.errors import ContextMismatchError, GradingError


def mobius(n: int) -> int:
    out, d, rest = 1, 2, n
    while d * d <= rest:
        if rest % d == 0:
            rest //= d
            if rest % d == 0:
                return 0
            out = -out
        d += 1
    if rest > 1:
        out = -out
    return out


def witt_dimension(letters: int, degree: int) -> int:
    # necklace count: (1/d) sum_{e | d} mu(e) L^(d/e)
    total = sum(
        mobius(e) * letters ** (degree // e)
        for e in range(1, degree + 1)
        if degree % e == 0
    )
    assert total % degree == 0
    return total // degree


def random_element(ctx: AlgebraContext, rng: Random) -> LieElement:
    terms = {}
    for t in hall_basis(ctx):
        if rng.random() < 0.5:
            c = Fraction(rng.randint(-3, 3), rng.choice((1, 2, 3)))
            if c:
                terms[t] = c
    return LieElement(ctx, terms)


def test_dimensions_match_witt_counter():
    for letters in (1, 2, 3):
        for step in range(1, 7):
            ctx = AlgebraContext(letters, step)
            dims = dimensions_by_degree(ctx)
            for d in range(1, step + 1):
                assert dims.get(d, 0) == witt_dimension(letters, d), (letters, d)


def test_two_generator_dims_through_degree_five():
    dims = dimensions_by_degree(AlgebraContext(2, 5))
    assert [dims[d] for d in range(1, 6)] == [2, 1, 2, 3, 6]


def test_basis_trees_are_lyndon():
    ctx = AlgebraContext(3, 5)
    for t in hall_basis(ctx):
        w = tree_foliage(t)
        assert is_lyndon(w)
        assert tree_degree(t) == len(w)
    words = sorted(lyndon_words(3, 5))
    assert sorted(tree_foliage(t) for t in hall_basis(ctx)) == words


def test_tree_string_roundtrip():
    ctx = AlgebraContext(3, 4)
    for t in hall_basis(ctx):
        assert parse_tree(tree_str(t, ctx.symbols), ctx) == t


def test_parse_tree_rejects_unknown_symbol():
    ctx = AlgebraContext(2, 3)
    with pytest.raises(ValueError):
        parse_tree("[x1,x9]", ctx)


def test_bracket_antisymmetry_and_self_annihilation():
    rng = Random("algebra:antisym")
    ctx = AlgebraContext(2, 4)
    for _ in range(20):
        a, b = random_element(ctx, rng), random_element(ctx, rng)
        assert a.bracket(b) == -(b.bracket(a))
        assert a.bracket(a).is_zero


def test_jacobi_identity():
    rng = Random("algebra:jacobi")
    for ctx in (AlgebraContext(2, 4), AlgebraContext(3, 3)):
        for _ in range(10):
            a, b, c = (random_element(ctx, rng) for _ in range(3))
            total = (
                a.bracket(b.bracket(c))
                + b.bracket(c.bracket(a))
                + c.bracket(a.bracket(b))
            )
            assert total.is_zero


def test_bracket_grading():
    ctx = AlgebraContext(2, 5)
    x, y = ctx.generators()
    z = x.bracket(y)
    assert z.is_homogeneous(2)
    assert x.bracket(z).is_homogeneous(3)
    # degree > step truncates to zero
    deep = x
    for _ in range(5):
        deep = deep.bracket(y)
    assert deep.is_zero


def test_scalar_arithmetic():
    ctx = AlgebraContext(2, 3)
    x, y = ctx.generators()
    z = x * Fraction(3, 2) - y / 2
    assert z.coordinates(1) == [Fraction(3, 2), Fraction(-1, 2)]
    assert (z - z).is_zero
    assert (-z) + z == LieElement.zero(ctx)


def test_context_mismatch_rejected():
    a = AlgebraContext(2, 3).generator(0)
    b = AlgebraContext(2, 4).generator(0)
    with pytest.raises(ContextMismatchError):
        a + b


def test_context_validation():
    with pytest.raises(ValueError):
        AlgebraContext(0, 3)
    with pytest.raises(ValueError):
        AlgebraContext(2, 0)
    with pytest.raises(ValueError):
        AlgebraContext(2, 2, ("a",))


def test_ad_power():
    ctx = AlgebraContext(2, 4)
    x, y = ctx.generators()
    assert ad_power(x, y, 0) == y
    assert ad_power(x, y, 2) == x.bracket(x.bracket(y))


def test_eval_bracket_pattern_is_rightnormed():
    ctx = AlgebraContext(3, 4)
    g = ctx.generators()
    assert eval_bracket_pattern((1, 2), g) == g[0].bracket(g[1])
    assert eval_bracket_pattern((2, 1, 3), g) == g[1].bracket(g[0].bracket(g[2]))


def test_patterns_enumeration():
    assert list(patterns(2, 2)) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert len(list(patterns(3, 3))) == 27


def test_rightnormed_decomposition_roundtrip():
    rng = Random("algebra:rightnormed")
    for letters in (2, 3):
        for step in range(2, 6 - letters):
            ctx = AlgebraContext(letters, step)
            g = ctx.generators()
            for degree in range(2, step + 1):
                x = random_element(ctx, rng).degree_component(degree)
                table = rightnormed_decomposition(x)
                back = LieElement.zero(ctx)
                for alpha, c in table.items():
                    assert len(alpha) == degree
                    back = back + eval_bracket_pattern(alpha, g) * c
                assert back == x


def test_rightnormed_decomposition_degree_restriction():
    ctx = AlgebraContext(2, 3)
    x, y = ctx.generators()
    mixed = x.bracket(y) + x.bracket(x.bracket(y))
    table = rightnormed_decomposition(mixed, degree=2)
    assert table == {(1, 2): Fraction(1)}
    with pytest.raises(GradingError):
        rightnormed_decomposition(mixed)


def test_min_max_degree():
    ctx = AlgebraContext(2, 4)
    x, y = ctx.generators()
    z = x + x.bracket(y)
    assert z.min_degree() == 1
    assert z.max_degree() == 2
    assert LieElement.zero(ctx).min_degree() == 0
