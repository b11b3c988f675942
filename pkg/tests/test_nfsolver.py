from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from helpers import builtin, space_span, span_of, tensor_vec
from strategies import algebras

from nearfrob import algebra as alg
from nearfrob import nfsolver as nf
from nearfrob import quiver as qv


def test_truncated_polynomial_basis_is_delta_k():
    a = builtin("truncpoly", (3,))
    space = nf.casimir_space(a)
    exp = [tensor_vec(a, [(1, a.labels[i], a.labels[3 + k - i]) for i in range(4) if 0 <= 3 + k - i <= 3])
           for k in range(4)]
    assert space_span(space) == span_of(a, exp)


def test_induced_images_truncated_polynomial():
    # Delta_0(x^l) = sum_{i+j=n+l} x^i (x) x^j
    n = 3
    a = builtin("truncpoly", (n,))
    d0 = nf.CasimirElement.from_vector(a, tensor_vec(a, [(1, a.labels[i], a.labels[n - i]) for i in range(n + 1)]))
    c = nf.induce_coproduct(d0)
    for l in range(n + 1):
        want = {(i, n + l - i): Fraction(1) for i in range(n + 1) if 0 <= n + l - i <= n}
        assert c.images[l] == want


def test_matrix_basis():
    a = builtin("matrix", (2,))
    space = nf.casimir_space(a)
    assert space.dimension == 4
    # Delta_kl(1) = sum_i E_ik (x) E_li
    e = lambda i, j: f"E_{i}{j}"  # noqa: E731
    exp = [tensor_vec(a, [(1, e(i, k), e(l, i)) for i in (1, 2)]) for k in (1, 2) for l in (1, 2)]
    assert space_span(space) == span_of(a, exp)


def test_an_unique_coproduct():
    a = builtin("An", (3,))
    (d,) = nf.casimir_space(a).basis
    c = nf.induce_coproduct(d)
    assert nf.tensor_text(a, c.images[a.index("e2")]) == "b⊗a"
    assert nf.tensor_text(a, c.images[a.index("e1")]) == "a.b⊗e1"


def test_quotient_coproducts_are_valid():
    b = alg.from_bound_quiver(qv.parse_quiver("vertices 3; a: 1->2; b: 2->3; rel a.b"))
    d2 = nf.CasimirElement.from_vector(b, tensor_vec(b, [(1, "b", "e2"), (1, "e3", "b")]))
    c = nf.induce_coproduct(d2)
    assert nf.tensor_text(b, c.images[b.index("e3")]) == "e3⊗b"
    assert nf.verify_bimodule(c) and nf.verify_coassociative(c)


def test_single_vertex_and_zero():
    k = builtin("An", (1,))
    assert nf.frobdim(k) == 1
    z = nf.induce_coproduct(nf.CasimirElement.zero(k))
    assert z.is_zero() and nf.verify_coassociative(z) and nf.verify_bimodule(z)


def test_mutation_is_detected():
    a = builtin("truncpoly", (2,))
    (d, *_) = nf.casimir_space(a).basis
    good = nf.induce_coproduct(d)
    images = list(good.images)
    images[1] = dict(images[1])
    images[1][(0, 0)] = Fraction(1)
    assert not nf.verify_bimodule(nf.Coproduct(a, tuple(images)))
    broken = dict(d.coeffs)
    broken[(0, 0)] = Fraction(1)
    bad = nf.CasimirElement(a, broken)
    assert bad.violation() is not None
    try:
        nf.induce_coproduct(bad)
    except nf.CasimirError as e:
        assert "basis element" in str(e)
    else:
        raise AssertionError("expected CasimirError")


def test_counit_cases():
    a = builtin("truncpoly", (2,))
    space = nf.casimir_space(a)
    found = [nf.find_counit(nf.induce_coproduct(d)) for d in space.basis]
    assert [e is not None for e in found] == [True, False, False]
    assert found[0].values == (0, 0, 1)


def test_census_small_and_branching():
    rep = nf.nontriviality_census(qv.iter_specs(qv.enumerate_connected_quivers(3, 3)))
    assert rep.ok
    star = qv.parse_quiver("vertices 3; a: 1->2; b: 1->3")
    assert nf.frobdim(alg.from_bound_quiver(star)) == 0
    rep = nf.nontriviality_census([qv.make_cyclic_family([1, 1])])
    assert rep.entries == () and len(rep.skipped) == 1


def test_space_json_shape():
    a = builtin("An", (2,))
    js = nf.space_to_json(nf.casimir_space(a))
    assert js == {"algebra": "A2", "dim_k": 3, "frobdim": 1,
                  "basis": [{"delta": [[1, 2, "1"], [2, 0, "1"]]}]}


# -- properties ------------------------------------------------------------

@given(algebras)
def test_basis_coproducts_are_nearly_frobenius(a):
    for d in nf.casimir_space(a).basis:
        c = nf.induce_coproduct(d)
        assert nf.verify_bimodule(c)
        assert nf.verify_coassociative(c)


@given(algebras)
def test_generator_constraints_suffice(a):
    assert nf.casimir_space(a) == nf.casimir_space(a, range(a.dim))


@given(algebras, st.lists(st.integers(-3, 3), min_size=1, max_size=6))
def test_space_is_closed_under_combination(a, coeffs):
    space = nf.casimir_space(a)
    total = nf.CasimirElement.zero(a)
    for c, d in zip(coeffs, space.basis):
        total = total + d.scale(c)
    assert total.is_valid() and space.contains(total)


@given(algebras)
def test_opposite_and_direct_sum_dimensions(a):
    fd = nf.frobdim(a)
    assert nf.frobdim(alg.opposite(a).algebra) == fd
    if a.dim <= 8:
        b = builtin("truncpoly", (1,))
        assert nf.frobdim(alg.direct_sum([a, b]).algebra) == fd + 2


@given(algebras)
def test_counit_found_means_identities_hold(a):
    for d in nf.casimir_space(a).basis:
        c = nf.induce_coproduct(d)
        eps = nf.find_counit(c)
        if eps is not None:
            assert nf.counit_holds(c, eps)
