"""Acceptance criteria, checked exactly.

Each test logs one ``CRITERION n: PASS|FAIL`` line (shown in the terminal
summary) before asserting.  Run ``python tests/test_acceptance.py`` for the
lines alone.
"""

import itertools
from fractions import Fraction

from helpers import all_builtins, builtin, space_span, span_of, tensor_vec

from nearfrob import algebra as alg
from nearfrob import gentlealg as gen
from nearfrob import nfsolver as nf
from nearfrob import quiver as qv

LINES: list[str] = []


def _record(log, n, failures, detail):
    status = "PASS" if not failures else "FAIL"
    line = f"CRITERION {n}: {status} - {detail}"
    if failures:
        line += " | " + "; ".join(str(f) for f in failures[:6])
    log.append(line)
    LINES.append(line)
    assert not failures, line


def _coprod_ok(d):
    c = nf.induce_coproduct(d)
    return nf.verify_bimodule(c) and nf.verify_coassociative(c)


def test_criterion_1_truncated_polynomials(acceptance_log):
    bad = []
    for n in range(7):
        a = alg.truncated_polynomial(n)
        space = nf.casimir_space(a)
        if space.dimension != n + 1:
            bad.append(f"n={n}: frobdim {space.dimension}")
        expected = [tensor_vec(a, [(1, a.labels[i], a.labels[n + k - i])
                                   for i in range(n + 1) if 0 <= n + k - i <= n])
                    for k in range(n + 1)]
        if space_span(space) != span_of(a, expected):
            bad.append(f"n={n}: basis differs from the Delta_k family")
    _record(acceptance_log, 1, bad, "frobdim(k[x]/x^(n+1)) = n+1 and basis = {Delta_k}, n=0..6")


def test_criterion_2_matrix_algebras(acceptance_log):
    bad = []
    for n in range(1, 5):
        a = alg.matrix_algebra(n)
        fd = nf.frobdim(a)
        if fd != n * n:
            bad.append(f"n={n}: frobdim {fd}")
        e = {(i, j): a.labels[i * n + j] for i in range(n) for j in range(n)}
        delta = nf.CasimirElement.from_vector(
            a, tensor_vec(a, [(1, e[i, k], e[k, i]) for i in range(n) for k in range(n)]))
        c = nf.induce_coproduct(delta)
        trace = nf.Counit(a, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))
        eps = nf.find_counit(c)
        if eps is None or not nf.counit_holds(c, trace) or eps.values != trace.values:
            bad.append(f"n={n}: counit is not the trace")
    _record(acceptance_log, 2, bad, "frobdim(M_n) = n^2, counit = trace, n=1..4")


def test_criterion_3_cyclic_group_algebras(acceptance_log):
    bad = []
    for n in range(1, 9):
        a = alg.cyclic_group_algebra(n)
        fd = nf.frobdim(a)
        if fd != n - 1:
            bad.append(f"n={n}: frobdim {fd}, expected {n - 1}")
        # sum_{k=1..n} g^k (x) g^(n-k), exponents mod n
        delta = nf.CasimirElement.from_vector(
            a, tensor_vec(a, [(1, a.labels[k % n], a.labels[(n - k) % n]) for k in range(1, n + 1)]))
        eps = nf.Counit(a, tuple(Fraction(int(i == 0)) for i in range(n)))  # g^n = 1
        if not delta.is_valid() or not nf.counit_holds(nf.induce_coproduct(delta), eps):
            bad.append(f"n={n}: group coproduct or counit fails")
    _record(acceptance_log, 3, bad, "frobdim(kZ_n) = n-1 and counit eps(g^i) = delta_{n,i}, n=1..8")


def _an_delta(a, n):
    letters = qv._letters(n - 1)
    terms = []
    for i in range(1, n + 1):
        left = ".".join(letters[i - 1:n - 1]) or f"e{i}"
        right = ".".join(letters[:i - 1]) or f"e{i}"
        terms.append((1, left, right))
    return tensor_vec(a, terms)


def test_criterion_5_path_algebras(acceptance_log):
    bad = []
    for n in range(1, 9):
        a = alg.from_bound_quiver(qv.make_linear_An(n))
        space = nf.casimir_space(a)
        if space.dimension != 1:
            bad.append(f"A_{n}: frobdim {space.dimension}")
        elif space_span(space) != span_of(a, [_an_delta(a, n)]):
            bad.append(f"A_{n}: coproduct pattern differs")
    specs = qv.iter_specs(qv.enumerate_connected_quivers(4, 6))
    rep = nf.nontriviality_census(specs)
    for e in rep.entries:
        if not e.linear and e.frobdim != 0:
            bad.append(f"non-linear quiver with frobdim {e.frobdim}")
        if e.linear and e.frobdim != 1:
            bad.append(f"linear quiver with frobdim {e.frobdim}")
    _record(acceptance_log, 5, bad,
            f"frobdim(kA_n) = 1 with the path pattern, n=1..8; census of {len(rep.entries)} "
            "connected acyclic quivers (<=4 vertices, <=6 arrows): only A_n nontrivial")


def test_criterion_4_counit_uniqueness(acceptance_log):
    bad = []
    for n in range(7):
        a = alg.truncated_polynomial(n)
        for k in range(n + 1):
            delta = nf.CasimirElement.from_vector(
                a, tensor_vec(a, [(1, a.labels[i], a.labels[n + k - i])
                                  for i in range(n + 1) if 0 <= n + k - i <= n]))
            c = nf.induce_coproduct(delta)
            eps = nf.find_counit(c)
            if k == 0:
                want = tuple(Fraction(int(i == n)) for i in range(n + 1))
                if eps is None or eps.values != want or not nf.counit_holds(c, eps):
                    bad.append(f"n={n}: Delta_0 has no counit eps(x^i)=delta_(i,n)")
            elif eps is not None:
                bad.append(f"n={n}: Delta_{k} admits a counit")
    _record(acceptance_log, 4, bad, "only Delta_0 admits a counit on k[x]/x^(n+1), n=0..6")


def test_criterion_6_quotient_example(acceptance_log):
    bad = []
    a = alg.from_bound_quiver(qv.make_linear_An(3))
    (delta,) = nf.casimir_space(a).basis
    j = alg.ideal_closure(a, [a.basis_vector(a.index("a.b"))])
    con = alg.quotient(a, j, delta)
    b = con.algebra
    space = nf.casimir_space(b)
    if space.dimension != 3:
        bad.append(f"frobdim(B) = {space.dimension}")
    d1 = tensor_vec(b, [(1, "a", "e1"), (1, "e2", "a")])
    d2 = tensor_vec(b, [(1, "b", "e2"), (1, "e3", "b")])
    d3 = tensor_vec(b, [(1, "b", "a")])
    if space_span(space) != span_of(b, [d1, d2, d3]):
        bad.append("Frobenius space of B is not spanned by the three listed coproducts")
    if list(con.coproduct.vector()) != d3:
        bad.append(f"induced coproduct is {nf.tensor_text(b, con.coproduct.coeffs)}")
    _record(acceptance_log, 6, bad, "kA_3/<ab>: frobdim 3 and induced coproduct = b (x) a")


def test_criterion_7_gentle_lemma_families(acceptance_log):
    bad = []
    expect = {"mid-relation": lambda m, n, r, s: m * n + 2, "in-branch": lambda *p: 1,
              "out-branch": lambda *p: 1, "crossing": lambda *p: 2}
    count = 0
    seen = {}  # families ignore the parameters they do not use
    for kind in qv.GENTLE_LEMMA_KINDS:
        for m, n, r, s in itertools.product((1, 2, 3), repeat=4):
            spec = qv.make_gentle_lemma_family(kind, m, n, r, s)
            if spec.name not in seen:
                seen[spec.name] = gen.cross_validate(spec)
            rep = seen[spec.name]
            want = expect[kind](m, n, r, s)
            count += 1
            if rep.solver_frobdim != want or rep.algorithm_d != want:
                bad.append(f"{spec.name}: solver {rep.solver_frobdim}, algorithm {rep.algorithm_d}, "
                           f"expected {want}")
    _record(acceptance_log, 7, bad,
            f"gentle one-relation families (mn+2 / 1 / 1 / 2), solver and algorithm agree on all {count} parameter choices "
            f"({len(seen)} distinct algebras)")


def test_criterion_8_cyclic_family(acceptance_log):
    bad = []
    for m in (1, 2, 3):
        for ns in itertools.product((1, 2, 3), repeat=m):
            a = alg.from_bound_quiver(qv.make_cyclic_family(ns))
            want = m + sum(ns[i] * ns[(i + 1) % m] for i in range(m))
            fd = nf.frobdim(a)
            if fd != want:
                bad.append(f"C{ns}: frobdim {fd}, expected {want}")
    for m in (1, 2):
        a = alg.from_bound_quiver(qv.make_cyclic_family([3] * m))
        fd = nf.frobdim(a)
        if not fd > a.dim:
            bad.append(f"t=3, m={m}: frobdim {fd} <= dim {a.dim}")
        if a.dim != m * (9 + 9) // 2 or fd != m * 10:
            bad.append(f"t=3, m={m}: dim {a.dim}, frobdim {fd}")
    _record(acceptance_log, 8, bad, "frobdim(A_C) = m + sum n_i n_(i+1); frobdim > dim_k for t=3")


def _pullback_example():
    c = alg.from_bound_quiver(qv.parse_quiver("vertices 3; α: 1->2; β: 2->3"))
    b = alg.from_bound_quiver(qv.parse_quiver("vertices 4; α: 1->2; β: 2->3; γ: 3->4; rel α.β.γ"))
    a = alg.from_bound_quiver(qv.parse_quiver("vertices 4; α: 1->2; β: 2->3; δ: 2->4; rel α.δ"))
    f_a = alg.AlgebraMorphism.from_label_map(a, c, {l: l for l in c.labels})
    f_b = alg.AlgebraMorphism.from_label_map(b, c, {l: l for l in c.labels})
    (dc,) = nf.casimir_space(c).basis
    return alg.pullback(f_a, f_b, alg.lift_casimir(f_a, dc), alg.lift_casimir(f_b, dc), dc)


def test_criterion_9_constructions(acceptance_log):
    bad = []
    algs = all_builtins()
    spaces = {id(a): nf.casimir_space(a) for a in algs}
    checked = 0
    for a in algs:
        for d in spaces[id(a)].basis:
            con = alg.opposite(a, d)
            checked += 1
            if not _coprod_ok(con.coproduct):
                bad.append(f"op({a.name})")
    for a, b in itertools.combinations_with_replacement(algs, 2):
        if a.dim + b.dim > 16:
            continue
        sa, sb = spaces[id(a)], spaces[id(b)]
        pick = [s.basis[-1] if s.basis else nf.CasimirElement.zero(s.algebra) for s in (sa, sb)]
        con = alg.direct_sum([a, b], pick)
        checked += 1
        if not _coprod_ok(con.coproduct):
            bad.append(f"dsum({a.name}, {b.name}) coproduct")
        if nf.frobdim(con.algebra) != sa.dimension + sb.dimension:
            bad.append(f"dsum({a.name}, {b.name}) not additive")
        if a.dim * b.dim <= 36 and sa.basis and sb.basis:
            con = alg.tensor_product(a, b, sa.basis[0], sb.basis[-1])
            checked += 1
            if not _coprod_ok(con.coproduct):
                bad.append(f"tensor({a.name}, {b.name})")
    for a in algs:
        if a.dim < 2:
            continue
        for d in spaces[id(a)].basis:
            for g in range(a.dim):
                j = alg.ideal_closure(a, [a.basis_vector(g)])
                if j.contains_unit():
                    continue
                con = alg.quotient(a, j, d)
                checked += 1
                if not _coprod_ok(con.coproduct):
                    bad.append(f"quotient of {a.name} by <{a.labels[g]}>")
    con = _pullback_example()
    checked += 1
    if not _coprod_ok(con.coproduct):
        bad.append("pullback example")
    _record(acceptance_log, 9, bad,
            f"{checked} transported coproducts verified; dsum additive on pairs with dim <= 16")


def test_criterion_10_solver_self_consistency(acceptance_log):
    bad = []
    algs = all_builtins() + [alg.from_bound_quiver(s) for s in gen.random_gentle_corpus(10, 40)]
    for a in algs:
        gens = nf.casimir_space(a)
        full = nf.casimir_space(a, range(a.dim))
        if gens != full:
            bad.append(f"{a.name}: generator and full-basis spaces differ")
        for d in gens.basis:
            if not nf.verify_coassociative(nf.induce_coproduct(d)):
                bad.append(f"{a.name}: basis element not coassociative")
    _record(acceptance_log, 10, bad, f"generator vs full-basis constraints agree on {len(algs)} algebras; "
                                     "all basis coproducts coassociative")


CORPUS_SEED = 20240611


def test_criterion_11_random_gentle_cross_validation(acceptance_log):
    bad = []
    corpus = gen.random_gentle_corpus(CORPUS_SEED, 200, max_vertices=8)
    for spec in corpus:
        rep = gen.cross_validate(spec)
        if not rep.agree:
            bad.append(f"{qv.emit_quiver(spec)!r}: algorithm {rep.algorithm_d}, solver {rep.solver_frobdim}")
    _record(acceptance_log, 11, bad, f"algorithm = solver on {len(corpus)} random acyclic gentle quivers "
                                     f"(seed {CORPUS_SEED}, <= 8 vertices)")


if __name__ == "__main__":
    import sys

    log: list[str] = []
    for name, fn in sorted(globals().items(), key=lambda kv: int(kv[0].split("_")[2]) if kv[0].startswith("test_criterion") else 0):
        if name.startswith("test_criterion"):
            try:
                fn(log)
            except AssertionError:
                pass
    for line in log:
        print(line)
    sys.exit(0 if all(": PASS" in l for l in log) else 1)
