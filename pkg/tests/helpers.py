"""Shared fixtures-as-data for the test modules."""

from fractions import Fraction

from nearfrob import algebra as alg
from nearfrob.exactlin import SubspaceBasis

BUILTIN_SELECTORS = (
    [("truncpoly", (n,)) for n in range(0, 7)]
    + [("matrix", (n,)) for n in (1, 2, 3)]
    + [("cyclicgroup", (n,)) for n in range(1, 9)]
    + [("An", (n,)) for n in (1, 2, 3, 4)]
    + [("cycle", p) for p in ((1,), (2,), (1, 1), (2, 1))]
    + [("mid", (1, 1)), ("inbranch", (1, 1, 1)), ("outbranch", (1, 1, 1)), ("crossing", (1, 1, 1, 1))]
)

_cache: dict = {}


def builtin(family, params):
    key = (family, tuple(params))
    if key not in _cache:
        _cache[key] = alg.builtin(family, params)
    return _cache[key]


def all_builtins():
    return [builtin(f, p) for f, p in BUILTIN_SELECTORS]


def tensor_vec(a, terms):
    """Row-major vector of sum c * lab1 (x) lab2 given [(c, lab1, lab2)]."""
    n = a.dim
    v = [Fraction(0)] * (n * n)
    for c, x, y in terms:
        v[a.index(x) * n + a.index(y)] += Fraction(c)
    return v


def span_of(a, vectors):
    return SubspaceBasis.span(a.dim * a.dim, vectors)


def space_span(space):
    a = space.algebra
    return span_of(a, [d.vector() for d in space.basis])
