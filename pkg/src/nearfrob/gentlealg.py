"""Counting nearly Frobenius structures on acyclic gentle algebras.

Vertices are typed by their local shape, then processed along the path
order carrying an integer ``y`` per vertex and ``x`` per arrow; sinks feed a
running counter ``d``.  The local shapes:

======  ==========  ==========================================
type    in / out    notes
======  ==========  ==========================================
source  0 / 1,2     seeds ``x = 1`` (one arrow) or ``0`` (two)
0       1 / 1       composition nonzero
1       1 / 1       composition zero
2       2 / 1       one composition zero, one not
3       1 / 2       one composition zero, one not
4       2 / 2       two nonzero compositions, crossed
5       2 / 0       sink
6       1 / 0       sink
======  ==========  ==========================================

The solver in :mod:`nearfrob.nfsolver` is the reference; see
:func:`cross_validate`.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from nearfrob.quiver import Arrow, BoundQuiverSpec, Path, Quiver, Relation, is_gentle

TYPES = ("source", "0", "1", "2", "3", "4", "5", "6", "isolated")


class GentleError(ValueError):
    pass


@dataclass(frozen=True)
class VertexClassification:
    spec: BoundQuiverSpec
    types: tuple[str, ...]
    l_left: dict[int, int]
    l_right: dict[int, int]
    zero_pairs: frozenset[tuple[int, int]]


def _nonzero(zero, a: int, b: int) -> bool:
    return (a, b) not in zero


def _longest_nonzero(q: Quiver, zero, order: list[int]):
    """Longest nonzero path ending / starting at each vertex.

    ``end[a]`` is the longest nonzero path ending with arrow ``a``.
    """
    m = len(q.arrows)
    end = [1] * m
    for v in order:
        for b in q.out_arrows(v):
            for a in q.in_arrows(v):
                if _nonzero(zero, a, b):
                    end[b] = max(end[b], end[a] + 1)
    start = [1] * m
    for v in reversed(order):
        for a in q.in_arrows(v):
            for b in q.out_arrows(v):
                if _nonzero(zero, a, b):
                    start[a] = max(start[a], start[b] + 1)
    ll = {v: max([end[a] for a in q.in_arrows(v)], default=0) for v in range(q.vertex_count)}
    lr = {v: max([start[b] for b in q.out_arrows(v)], default=0) for v in range(q.vertex_count)}
    return ll, lr


def classify(spec: BoundQuiverSpec) -> VertexClassification:
    rep = is_gentle(spec)
    if not rep:
        raise GentleError("not gentle: " + "; ".join(rep.violations))
    q = spec.quiver
    order = q.topological_order()
    if order is None:
        raise GentleError("quiver has an oriented cycle")
    zero = spec.monomial_zero_paths() if spec.bound > 2 else {
        (a, b) for v in range(q.vertex_count) for a in q.in_arrows(v) for b in q.out_arrows(v)}
    zero = frozenset(z for z in zero if len(z) == 2)
    types = []
    for v in range(q.vertex_count):
        ins, outs = q.in_arrows(v), q.out_arrows(v)
        i, o = len(ins), len(outs)
        if i == 0:
            types.append("isolated" if o == 0 else "source")
        elif o == 0:
            types.append("6" if i == 1 else "5")
        elif i == 1 and o == 1:
            types.append("0" if _nonzero(zero, ins[0], outs[0]) else "1")
        elif i == 2 and o == 1:
            types.append("2")
        elif i == 1 and o == 2:
            types.append("3")
        elif i == 2 and o == 2:
            types.append("4")
        else:  # excluded by gentleness
            raise GentleError(f"vertex {v + 1} has no type (in {i}, out {o})")
    ll, lr = _longest_nonzero(q, zero, order)
    ones = [v for v, t in enumerate(types) if t == "1"]
    return VertexClassification(spec, tuple(types), {v: ll[v] for v in ones},
                                {v: lr[v] for v in ones}, zero)


@dataclass
class AlgorithmTrace:
    order: list[int] = field(default_factory=list)
    types: dict[int, str] = field(default_factory=dict)
    x: dict[int, int] = field(default_factory=dict)
    y: dict[int, int] = field(default_factory=dict)
    d: int = 0
    steps: list[tuple[int, int]] = field(default_factory=list)  # (vertex, d after it)


@dataclass(frozen=True)
class GentleResult:
    frobdim: int
    trace: AlgorithmTrace


def _delta(v: int) -> int:
    return 1 if v >= 1 else 0


def _linearize(q: Quiver, rng: random.Random | None) -> list[int]:
    """Topological order; smallest index first, or random tie-breaks when rng is given."""
    indeg = [len(q.in_arrows(v)) for v in range(q.vertex_count)]
    ready = [v for v in range(q.vertex_count) if indeg[v] == 0]
    out = []
    while ready:
        ready.sort()
        v = ready.pop(rng.randrange(len(ready)) if rng else 0)
        out.append(v)
        for a in q.out_arrows(v):
            t = q.arrows[a].target
            indeg[t] -= 1
            if indeg[t] == 0:
                ready.append(t)
    return out


def run_gentle_algorithm(spec: BoundQuiverSpec, rng: random.Random | None = None) -> GentleResult:
    cl = classify(spec)
    q = spec.quiver
    zero = cl.zero_pairs
    tr = AlgorithmTrace(types={v: t for v, t in enumerate(cl.types)})
    order = _linearize(q, rng)
    # sources first, then the rest in path order
    srcs = [v for v in order if cl.types[v] in ("source", "isolated")]
    rest = [v for v in order if cl.types[v] not in ("source", "isolated")]
    x, y = tr.x, tr.y
    for f in srcs:
        outs = q.out_arrows(f)
        if not outs:
            # a lone vertex is k, which carries exactly one structure
            y[f] = 1
            tr.d += 1
        else:
            y[f] = 1 if len(outs) == 1 else 0
            for b in outs:
                x[b] = y[f]
        tr.order.append(f)
        tr.steps.append((f, tr.d))
    for i in rest:
        t = cl.types[i]
        ins, outs = q.in_arrows(i), q.out_arrows(i)
        if t == "0":
            y[i] = x[ins[0]]
            x[outs[0]] = y[i]
        elif t == "1":
            y[i] = cl.l_left[i] * cl.l_right[i] + 2 + x[ins[0]] - 1
            x[outs[0]] = y[i]
        elif t == "2":
            (b,) = outs
            a1 = next(a for a in ins if _nonzero(zero, a, b))
            a2 = next(a for a in ins if a != a1)
            y[i] = x[a1]
            x[b] = y[i]
            # x - 1 when x >= 1; an arrow carrying 0 contributes nothing
            tr.d += x[a2] - _delta(x[a2])
        elif t == "3":
            (a,) = ins
            b1 = next(b for b in outs if _nonzero(zero, a, b))
            b2 = next(b for b in outs if b != b1)
            y[i] = x[a]
            x[b2] = 0
            x[b1] = x[a]
        elif t == "4":
            # each outgoing arrow inherits from the incoming arrow it composes with
            y[i] = sum(y[q.arrows[a].source] for a in ins)
            for b in outs:
                a = next(a for a in ins if _nonzero(zero, a, b))
                x[b] = x[a]
        elif t == "5":
            y[i] = 0
            tr.d += sum(x[a] - _delta(x[a]) for a in ins)
        elif t == "6":
            y[i] = x[ins[0]]
            tr.d += x[ins[0]]
        tr.order.append(i)
        tr.steps.append((i, tr.d))
    return GentleResult(tr.d, tr)


def run_by_components(spec: BoundQuiverSpec) -> int:
    """Sum of the counter over connected components."""
    q = spec.quiver
    total = 0
    for comp in q.components():
        total += run_gentle_algorithm(restrict(spec, comp)).frobdim
    return total


def restrict(spec: BoundQuiverSpec, verts: list[int]) -> BoundQuiverSpec:
    q = spec.quiver
    new = {v: k for k, v in enumerate(sorted(verts))}
    keep = [i for i, a in enumerate(q.arrows) if a.source in new]
    amap = {i: k for k, i in enumerate(keep)}
    nq = Quiver(len(new), tuple(Arrow(q.arrows[i].name, new[q.arrows[i].source], new[q.arrows[i].target])
                                for i in keep))
    rels = []
    for r in spec.relations:
        p = r.terms[0][1]
        if p.vertex in new:
            rels.append(Relation(tuple((c, Path(new[p.vertex], tuple(amap[a] for a in p.arrows)))
                                       for c, p in r.terms)))
    return BoundQuiverSpec(nq, tuple(rels), None if nq.is_acyclic() else spec.bound, name=spec.name)


@dataclass(frozen=True)
class CrossReport:
    spec: BoundQuiverSpec
    algorithm_d: int
    solver_frobdim: int
    trace: AlgorithmTrace

    @property
    def agree(self) -> bool:
        return self.algorithm_d == self.solver_frobdim


def cross_validate(spec: BoundQuiverSpec) -> CrossReport:
    from nearfrob.algebra import from_bound_quiver
    from nearfrob.nfsolver import frobdim

    res = run_gentle_algorithm(spec)
    return CrossReport(spec, res.frobdim, frobdim(from_bound_quiver(spec)), res.trace)


# -- random gentle quivers -------------------------------------------------

def random_gentle_quiver(rng: random.Random, max_vertices: int = 8) -> BoundQuiverSpec:
    """Connected acyclic gentle bound quiver with 1..max_vertices vertices."""
    n = rng.randint(1, max_vertices)
    rank = list(range(n))
    rng.shuffle(rank)  # arrows always go from lower to higher rank
    indeg, outdeg = [0] * n, [0] * n
    edges = []

    def add(u, v):
        if rank[u] > rank[v]:
            u, v = v, u
        if outdeg[u] >= 2 or indeg[v] >= 2:
            return False
        edges.append((u, v))
        outdeg[u] += 1
        indeg[v] += 1
        return True

    # spanning tree first, so the quiver is connected
    for v in range(1, n):
        cands = [u for u in range(v)]
        rng.shuffle(cands)
        if not any(add(u, v) for u in cands):
            return random_gentle_quiver(rng, max_vertices)
    for _ in range(rng.randint(0, n)):
        u, v = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if u != v:
            add(u, v)
    arrows = tuple(Arrow(f"a{k + 1}", u, v) for k, (u, v) in enumerate(edges))
    q = Quiver(n, arrows)
    zero = []
    for v in range(n):
        ins, outs = q.in_arrows(v), q.out_arrows(v)
        if len(ins) == 1 and len(outs) == 1:
            if rng.random() < 0.5:
                zero.append((ins[0], outs[0]))
        elif len(ins) == 2 and len(outs) == 1:
            zero.append((rng.choice(ins), outs[0]))
        elif len(ins) == 1 and len(outs) == 2:
            zero.append((ins[0], rng.choice(outs)))
        elif len(ins) == 2 and len(outs) == 2:
            a, b = ins if rng.random() < 0.5 else ins[::-1]
            zero += [(a, outs[0]), (b, outs[1])]
    rels = tuple(Relation(((1, Path.of_arrows(q, z)),)) for z in zero)
    spec = BoundQuiverSpec(q, rels, None, name=f"gentle{n}")
    return spec


def random_gentle_corpus(seed: int, count: int, max_vertices: int = 8) -> list[BoundQuiverSpec]:
    rng = random.Random(seed)
    return [random_gentle_quiver(rng, max_vertices) for _ in range(count)]


# -- output ----------------------------------------------------------------

def trace_to_json(spec: BoundQuiverSpec, tr: AlgorithmTrace) -> dict:
    q = spec.quiver
    return {
        "order": [v + 1 for v in tr.order],
        "types": {str(v + 1): t for v, t in sorted(tr.types.items())},
        "x": {q.arrows[a].name: val for a, val in sorted(tr.x.items())},
        "y": {str(v + 1): val for v, val in sorted(tr.y.items())},
        "d": tr.d,
    }


def trace_table(spec: BoundQuiverSpec, tr: AlgorithmTrace) -> str:
    q = spec.quiver
    rows = [("vertex", "type", "y", "out x", "d")]
    for v, d in tr.steps:
        xs = ",".join(f"{q.arrows[b].name}={tr.x[b]}" for b in q.out_arrows(v)) or "-"
        rows.append((str(v + 1), tr.types[v], str(tr.y.get(v, "")), xs, str(d)))
    w = [max(len(r[k]) for r in rows) for k in range(5)]
    return "\n".join("  ".join(c.ljust(w[k]) for k, c in enumerate(r)).rstrip() for r in rows)


def trace_dumps(spec: BoundQuiverSpec, tr: AlgorithmTrace) -> str:
    return json.dumps(trace_to_json(spec, tr), sort_keys=True)
