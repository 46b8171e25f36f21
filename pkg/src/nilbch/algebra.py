"""Free nilpotent Lie algebras over Q in the Lyndon-word basis.

A basis element is a binary bracket tree: a leaf is a 0-based generator index,
an internal node a pair (left, right). The basis trees are the standard
Chen-Fox-Lyndon bracketings of Lyndon words, ordered by degree and then
lexicographically by foliage.

Structure constants are computed by expanding basis trees in the free
associative algebra and reading Lyndon coordinates back off the triangular
change of basis: the expansion of the bracketing of a Lyndon word w is w plus
lexicographically larger rearrangements of w, so coordinates of any Lie
element fall out by repeatedly peeling the smallest word in its support.
Peeling doubles as a validity check, since a nonzero remainder whose smallest
word is not Lyndon can only come from a non-Lie input.

All memo tables are keyed by tree shape alone (no alphabet size, no step), so
they are shared across contexts. Writes are idempotent, which keeps the
tables safe under concurrent readers without locking.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from . import series
from .errors import ContextMismatchError, GradingError, InternalInvariantError
from .linalg import invert_matrix, mat_vec

# leaf: generator index; node: (left, right)
HallTree = "int | tuple"
# 1-based generator indices, read left to right
BracketPattern = tuple[int, ...]

_SYMBOL_RE = re.compile(r"[a-z][a-z0-9_]*\Z")

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class AlgebraContext:
    """Generator count, truncation step, and display symbols for one algebra."""

    num_generators: int
    step: int
    symbols: tuple[str, ...] = ()

    def __post_init__(self):
        if self.num_generators < 1:
            raise ValueError("need at least one generator")
        if self.step < 1:
            raise ValueError("step must be at least 1")
        if not self.symbols:
            object.__setattr__(
                self, "symbols", tuple(f"x{i + 1}" for i in range(self.num_generators))
            )
        if len(self.symbols) != self.num_generators:
            raise ValueError("symbol count must match generator count")
        for s in self.symbols:
            if not _SYMBOL_RE.match(s):
                raise ValueError(f"invalid symbol {s!r}")
        if len(set(self.symbols)) != self.num_generators:
            raise ValueError("symbols must be distinct")

    def generator(self, i: int) -> "LieElement":
        """The i-th generator (0-based) as a Lie element."""
        if not 0 <= i < self.num_generators:
            raise ValueError(f"generator index {i} out of range")
        return LieElement._raw(self, {i: _ONE})

    def generators(self) -> tuple["LieElement", ...]:
        return tuple(self.generator(i) for i in range(self.num_generators))

    @property
    def dimension(self) -> int:
        return len(hall_basis(self))


# ---------------------------------------------------------------------------
# trees and Lyndon words

_FOLIAGE: dict = {}


def tree_foliage(t) -> tuple[int, ...]:
    """Leaf indices of a tree, left to right."""
    if isinstance(t, int):
        return (t,)
    got = _FOLIAGE.get(t)
    if got is None:
        got = _FOLIAGE[t] = tree_foliage(t[0]) + tree_foliage(t[1])
    return got


def tree_degree(t) -> int:
    if isinstance(t, int):
        return 1
    return len(tree_foliage(t))


def tree_str(t, symbols: Sequence[str]) -> str:
    if isinstance(t, int):
        return symbols[t]
    return f"[{tree_str(t[0], symbols)},{tree_str(t[1], symbols)}]"


def parse_tree(text: str, ctx: AlgebraContext):
    """Parse the bracketed string form of a basis tree, e.g. "[x1,[x1,x2]]"."""
    index = {s: i for i, s in enumerate(ctx.symbols)}
    pos = 0

    def parse() -> object:
        nonlocal pos
        if pos < len(text) and text[pos] == "[":
            pos += 1
            left = parse()
            if pos >= len(text) or text[pos] != ",":
                raise ValueError(f"expected ',' at offset {pos} in {text!r}")
            pos += 1
            right = parse()
            if pos >= len(text) or text[pos] != "]":
                raise ValueError(f"expected ']' at offset {pos} in {text!r}")
            pos += 1
            return (left, right)
        m = re.match(r"[a-z][a-z0-9_]*", text[pos:])
        if not m:
            raise ValueError(f"expected symbol at offset {pos} in {text!r}")
        name = m.group(0)
        if name not in index:
            raise ValueError(f"unknown symbol {name!r} in {text!r}")
        pos += len(name)
        return index[name]

    tree = parse()
    if pos != len(text):
        raise ValueError(f"trailing text at offset {pos} in {text!r}")
    return tree


def is_lyndon(w: tuple[int, ...]) -> bool:
    """A word is Lyndon when it is strictly smaller than all proper suffixes."""
    if not w:
        return False
    return all(w < w[i:] for i in range(1, len(w)))


_LYNDON_TREE: dict = {}


def lyndon_tree(w: tuple[int, ...]):
    """Standard bracketing of a Lyndon word: split before its longest proper
    Lyndon suffix and recurse."""
    if len(w) == 1:
        return w[0]
    got = _LYNDON_TREE.get(w)
    if got is not None:
        return got
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            t = (lyndon_tree(w[:i]), lyndon_tree(w[i:]))
            _LYNDON_TREE[w] = t
            return t
    raise InternalInvariantError(f"{w!r} is not a Lyndon word")


def lyndon_words(num_letters: int, max_len: int) -> Iterator[tuple[int, ...]]:
    """All Lyndon words over 0..num_letters-1 of length <= max_len, in
    lexicographic order (Duval's generation)."""
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == num_letters - 1:
            w.pop()


_HALL_BASIS: dict = {}


def hall_basis(ctx: AlgebraContext) -> tuple:
    """Basis trees ordered by (degree, foliage); cached per (L, step)."""
    key = (ctx.num_generators, ctx.step)
    got = _HALL_BASIS.get(key)
    if got is None:
        words = sorted(lyndon_words(ctx.num_generators, ctx.step), key=lambda w: (len(w), w))
        got = _HALL_BASIS[key] = tuple(lyndon_tree(w) for w in words)
    return got


_BASIS_INDEX: dict = {}


def _basis_index(ctx: AlgebraContext) -> dict:
    key = (ctx.num_generators, ctx.step)
    got = _BASIS_INDEX.get(key)
    if got is None:
        got = _BASIS_INDEX[key] = {t: i for i, t in enumerate(hall_basis(ctx))}
    return got


def dimensions_by_degree(ctx: AlgebraContext) -> dict[int, int]:
    out: dict[int, int] = {}
    for t in hall_basis(ctx):
        d = tree_degree(t)
        out[d] = out.get(d, 0) + 1
    return out


# ---------------------------------------------------------------------------
# structure constants via associative expansion

_TREE_ASSOC: dict = {}


def tree_assoc(t) -> dict:
    """Expansion of a bracket tree in the free associative algebra
    (words mapped to integer coefficients)."""
    if isinstance(t, int):
        return {(t,): 1}
    got = _TREE_ASSOC.get(t)
    if got is None:
        left, right = tree_assoc(t[0]), tree_assoc(t[1])
        deg = tree_degree(t)
        got = series.sub(
            series.mul_trunc(left, right, deg), series.mul_trunc(right, left, deg)
        )
        _TREE_ASSOC[t] = got
    return got


def extract_lie_coords(p: Mapping) -> dict:
    """Coordinates of a Lie element given by its associative expansion.

    Peels the lexicographically smallest support word per degree; raises if
    the input is not a Lie element (non-Lyndon minimal word, or a nonzero
    remainder that cannot cancel).
    """
    buckets: dict[int, dict] = {}
    for w, c in p.items():
        buckets.setdefault(len(w), {})[w] = c
    coords: dict = {}
    for deg in sorted(buckets):
        if deg == 0:
            raise InternalInvariantError("constant term in a Lie expansion")
        bucket = buckets[deg]
        while bucket:
            w = min(bucket)
            if not is_lyndon(w):
                raise InternalInvariantError(
                    f"minimal support word {w!r} is not Lyndon; input is not a Lie element"
                )
            t = lyndon_tree(w)
            c = bucket[w]
            coords[t] = c
            for w2, c2 in tree_assoc(t).items():
                cur = bucket.get(w2, 0)
                cur = cur - c * c2
                if cur:
                    bucket[w2] = cur
                else:
                    bucket.pop(w2, None)
            if w in bucket:
                raise InternalInvariantError("triangular peel failed to clear its pivot")
    return coords


_BRACKET_BASIS: dict = {}


def bracket_basis(t1, t2) -> dict:
    """Lyndon coordinates of the bracket of two basis trees (integer values)."""
    if t1 == t2:
        return {}
    got = _BRACKET_BASIS.get((t1, t2))
    if got is not None:
        return got
    rev = _BRACKET_BASIS.get((t2, t1))
    if rev is not None:
        got = {t: -c for t, c in rev.items()}
    else:
        a1, a2 = tree_assoc(t1), tree_assoc(t2)
        deg = tree_degree(t1) + tree_degree(t2)
        p = series.sub(series.mul_trunc(a1, a2, deg), series.mul_trunc(a2, a1, deg))
        got = extract_lie_coords(p)
    _BRACKET_BASIS[(t1, t2)] = got
    return got


def bracket_coords(a: Mapping, b: Mapping, step: int) -> dict:
    """Bilinear extension of bracket_basis, truncated at step."""
    out: dict = {}
    for t1, c1 in a.items():
        d1 = tree_degree(t1)
        for t2, c2 in b.items():
            if d1 + tree_degree(t2) > step:
                continue
            c12 = c1 * c2
            if not c12:
                continue
            for t, k in bracket_basis(t1, t2).items():
                cur = out.get(t)
                cur = c12 * k if cur is None else cur + c12 * k
                if cur:
                    out[t] = cur
                else:
                    out.pop(t, None)
    return out


# ---------------------------------------------------------------------------
# elements

class LieElement:
    """A finite Q-linear combination of Lyndon basis brackets.

    Instances are immutable by convention; all operations return new elements.
    Coefficients are Fractions (or polynomial scalars, during symbolic runs).
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AlgebraContext, terms: Mapping):
        index = _basis_index(ctx)
        clean: dict = {}
        for t, c in terms.items():
            if isinstance(t, str):
                t = parse_tree(t, ctx)
            if t not in index:
                raise GradingError(
                    f"{tree_str(t, ctx.symbols)} is not a basis tree at step {ctx.step}"
                )
            if isinstance(c, (int, str)):
                c = Fraction(c)
            if c:
                clean[t] = c
        self.ctx = ctx
        self.terms = clean

    @classmethod
    def _raw(cls, ctx: AlgebraContext, terms: dict) -> "LieElement":
        x = cls.__new__(cls)
        x.ctx = ctx
        x.terms = terms
        return x

    @classmethod
    def zero(cls, ctx: AlgebraContext) -> "LieElement":
        return cls._raw(ctx, {})

    def _check_ctx(self, other: "LieElement") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatchError(
                f"cannot combine elements of {self.ctx} and {other.ctx}"
            )

    def __add__(self, other: "LieElement") -> "LieElement":
        if not isinstance(other, LieElement):
            return NotImplemented
        self._check_ctx(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            cur = out.get(t)
            cur = c if cur is None else cur + c
            if cur:
                out[t] = cur
            else:
                del out[t]
        return LieElement._raw(self.ctx, out)

    def __sub__(self, other: "LieElement") -> "LieElement":
        if not isinstance(other, LieElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "LieElement":
        return LieElement._raw(self.ctx, {t: -c for t, c in self.terms.items()})

    def __mul__(self, scalar) -> "LieElement":
        if isinstance(scalar, LieElement):
            raise TypeError("use bracket() for the Lie product")
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        if not scalar:
            return LieElement.zero(self.ctx)
        return LieElement._raw(self.ctx, {t: c * scalar for t, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "LieElement":
        return self * (Fraction(1) / Fraction(scalar))

    def bracket(self, other: "LieElement") -> "LieElement":
        if not isinstance(other, LieElement):
            raise TypeError("bracket requires another LieElement")
        self._check_ctx(other)
        return LieElement._raw(
            self.ctx, bracket_coords(self.terms, other.terms, self.ctx.step)
        )

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted({tree_degree(t) for t in self.terms}))

    def max_degree(self) -> int:
        """Largest support degree, 0 for the zero element."""
        return max((tree_degree(t) for t in self.terms), default=0)

    def min_degree(self) -> int:
        return min((tree_degree(t) for t in self.terms), default=0)

    def degree_component(self, d: int) -> "LieElement":
        return LieElement._raw(
            self.ctx, {t: c for t, c in self.terms.items() if tree_degree(t) == d}
        )

    def is_homogeneous(self, d: int) -> bool:
        return all(tree_degree(t) == d for t in self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def sorted_terms(self) -> list:
        """(tree, coefficient) pairs in basis order."""
        index = _basis_index(self.ctx)
        return sorted(self.terms.items(), key=lambda item: index[item[0]])

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t, c in self.sorted_terms():
            name = tree_str(t, self.ctx.symbols)
            parts.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LieElement({self})"

    def coordinates(self, degree: int | None = None) -> list:
        """Dense coordinate vector over the basis (optionally one degree)."""
        basis = hall_basis(self.ctx)
        if degree is not None:
            basis = tuple(t for t in basis if tree_degree(t) == degree)
        return [self.terms.get(t, _ZERO) for t in basis]


def ad_power(a: LieElement, b: LieElement, k: int) -> LieElement:
    """k-fold iterated bracket of a against b."""
    if k < 0:
        raise ValueError("ad power must be nonnegative")
    out = b
    for _ in range(k):
        out = a.bracket(out)
    return out


# ---------------------------------------------------------------------------
# right-normed bracket patterns

def patterns(num_generators: int, arity: int) -> Iterator[BracketPattern]:
    """All maps {1..arity} -> {1..L} in lexicographic order."""
    return itertools.product(range(1, num_generators + 1), repeat=arity)


def eval_bracket_pattern(
    pattern: BracketPattern, args: Sequence[LieElement]
) -> LieElement:
    """Right-normed bracket of args selected by a 1-based index pattern."""
    if not pattern:
        raise ValueError("pattern must be nonempty")
    for i in pattern:
        if not 1 <= i <= len(args):
            raise ValueError(f"pattern index {i} out of range for {len(args)} arguments")
    out = args[pattern[-1] - 1]
    for i in reversed(pattern[:-1]):
        out = args[i - 1].bracket(out)
    return out


def _pattern_coords(pattern: BracketPattern, degree_cutoff: int) -> dict:
    """Coordinates of the right-normed generator bracket for a pattern."""
    out: dict = {pattern[-1] - 1: 1}
    for i in reversed(pattern[:-1]):
        out = bracket_coords({i - 1: 1}, out, degree_cutoff)
    return out


_RN_SOLVER: dict = {}


def _rightnormed_solver(num_generators: int, arity: int):
    """Pivot patterns and the exact inverse of their coordinate block.

    Columns are the right-normed generator brackets h_alpha in lexicographic
    pattern order; the greedily chosen pivot columns are the lexicographically
    first spanning subset, which fixes a deterministic decomposition.
    """
    key = (num_generators, arity)
    got = _RN_SOLVER.get(key)
    if got is not None:
        return got
    basis = [
        t
        for t in hall_basis(AlgebraContext(num_generators, arity))
        if tree_degree(t) == arity
    ]
    dim = len(basis)
    row_of = {t: r for r, t in enumerate(basis)}
    echelon: list[tuple[int, list[Fraction]]] = []
    pivots: list[BracketPattern] = []
    columns: list[list[Fraction]] = []
    for alpha in patterns(num_generators, arity):
        coords = _pattern_coords(alpha, arity)
        col = [_ZERO] * dim
        for t, c in coords.items():
            col[row_of[t]] = Fraction(c)
        v = list(col)
        for lead, u in echelon:
            f = v[lead]
            if f:
                v = [a - f * b for a, b in zip(v, u)]
        lead = next((r for r, a in enumerate(v) if a), None)
        if lead is not None:
            inv = Fraction(1) / v[lead]
            echelon.append((lead, [a * inv for a in v]))
            pivots.append(alpha)
            columns.append(col)
            if len(pivots) == dim:
                break
    if len(pivots) != dim:
        raise InternalInvariantError(
            f"right-normed brackets fail to span degree {arity} over {num_generators} generators"
        )
    square = [[columns[j][r] for j in range(dim)] for r in range(dim)]
    got = _RN_SOLVER[key] = (tuple(pivots), invert_matrix(square), tuple(basis))
    return got


def rightnormed_decomposition(
    x: LieElement, degree: int | None = None, check: bool = False
) -> dict:
    """Write a homogeneous element as a combination of right-normed generator
    brackets, supported on the lexicographically first spanning patterns.

    With an explicit degree the element is first restricted to that degree;
    otherwise it must be homogeneous. Returns a dict mapping patterns to
    coefficients (free patterns omitted).
    """
    if degree is not None:
        x = x.degree_component(degree)
    if x.is_zero:
        return {}
    degs = x.degrees()
    if len(degs) != 1:
        raise GradingError(f"decomposition needs a homogeneous element, got degrees {degs}")
    arity = degs[0]
    pivots, inv, basis = _rightnormed_solver(x.ctx.num_generators, arity)
    rhs = [x.terms.get(t, _ZERO) for t in basis]
    sol = mat_vec(inv, rhs)
    out = {alpha: c for alpha, c in zip(pivots, sol) if c}
    if check:
        gens = x.ctx.generators()
        total = LieElement.zero(x.ctx)
        for alpha, c in out.items():
            total = total + c * eval_bracket_pattern(alpha, gens)
        if total != x:
            raise InternalInvariantError("right-normed decomposition failed to round-trip")
    return out
