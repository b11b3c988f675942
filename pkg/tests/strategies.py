"""Hypothesis strategies for small algebras."""

import random

from hypothesis import strategies as st

from helpers import builtin

from nearfrob import algebra as alg
from nearfrob import gentlealg as gen

families = st.one_of(
    st.integers(0, 4).map(lambda n: builtin("truncpoly", (n,))),
    st.integers(1, 2).map(lambda n: builtin("matrix", (n,))),
    st.integers(1, 5).map(lambda n: builtin("cyclicgroup", (n,))),
    st.integers(1, 4).map(lambda n: builtin("An", (n,))),
    st.sampled_from([(1,), (2,), (1, 1), (2, 1)]).map(lambda p: builtin("cycle", p)),
)

gentle_algebras = st.integers(0, 10_000).map(
    lambda s: alg.from_bound_quiver(gen.random_gentle_quiver(random.Random(s), max_vertices=5)))

algebras = st.one_of(families, gentle_algebras)
