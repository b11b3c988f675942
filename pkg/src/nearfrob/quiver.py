"""Quivers, bound quivers and the small text format used to describe them.

Paths compose left to right: ``a.b`` means "first ``a``, then ``b``" and
requires ``target(a) == source(b)``.  Vertices are numbered from 1 in the
text format and from 0 internally.

Text format::

    # comment
    vertices 3
    a: 1 -> 2
    b: 2 -> 3
    rel a.b            # or: rel 2*a.b - 1/2*c.d
    bound 3            # optional
"""

from __future__ import annotations

import itertools
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

DEFAULT_PATH_CAP = 100_000


class QuiverError(ValueError):
    pass


class ParseError(QuiverError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class PathExplosion(QuiverError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if self.vertex_count < 1:
            raise QuiverError("a quiver needs at least one vertex")
        seen = set()
        for a in self.arrows:
            if not (0 <= a.source < self.vertex_count and 0 <= a.target < self.vertex_count):
                raise QuiverError(f"arrow {a.name!r} has an endpoint out of range")
            if a.name in seen:
                raise QuiverError(f"duplicate arrow name {a.name!r}")
            seen.add(a.name)

    def arrow_index(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == name:
                return i
        raise QuiverError(f"unknown arrow {name!r}")

    def out_arrows(self, v: int) -> list[int]:
        return [i for i, a in enumerate(self.arrows) if a.source == v]

    def in_arrows(self, v: int) -> list[int]:
        return [i for i, a in enumerate(self.arrows) if a.target == v]

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    def topological_order(self) -> list[int] | None:
        """Kahn's algorithm with smallest-index tie break; None if there is a cycle."""
        indeg = [0] * self.vertex_count
        for a in self.arrows:
            indeg[a.target] += 1
        ready = sorted(v for v in range(self.vertex_count) if indeg[v] == 0)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for i in self.out_arrows(v):
                t = self.arrows[i].target
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
                    ready.sort()
        return order if len(order) == self.vertex_count else None

    def longest_path_length(self) -> int:
        order = self.topological_order()
        if order is None:
            raise QuiverError("quiver has an oriented cycle; no longest path")
        best = [0] * self.vertex_count
        for v in order:
            for i in self.out_arrows(v):
                t = self.arrows[i].target
                best[t] = max(best[t], best[v] + 1)
        return max(best)

    def components(self) -> list[list[int]]:
        parent = list(range(self.vertex_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.arrows:
            parent[find(a.source)] = find(a.target)
        groups: dict[int, list[int]] = defaultdict(list)
        for v in range(self.vertex_count):
            groups[find(v)].append(v)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) == 1


@dataclass(frozen=True, order=True)
class Path:
    """A path given by its start vertex and arrow ids; ``arrows == ()`` is e_vertex."""

    vertex: int
    arrows: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.vertex)

    def source(self, q: Quiver) -> int:
        return self.vertex

    def target(self, q: Quiver) -> int:
        return q.arrows[self.arrows[-1]].target if self.arrows else self.vertex

    def compose(self, other: "Path", q: Quiver) -> "Path | None":
        """``self`` followed by ``other``; None when the endpoints do not meet."""
        if self.target(q) != other.vertex:
            return None
        return Path(self.vertex, self.arrows + other.arrows)

    def label(self, q: Quiver) -> str:
        if not self.arrows:
            return f"e{self.vertex + 1}"
        return ".".join(q.arrows[i].name for i in self.arrows)

    @classmethod
    def of_arrows(cls, q: Quiver, ids: Sequence[int]) -> "Path":
        ids = tuple(ids)
        if not ids:
            raise QuiverError("use Path(vertex) for trivial paths")
        for x, y in zip(ids, ids[1:]):
            if q.arrows[x].target != q.arrows[y].source:
                raise QuiverError(
                    f"arrows {q.arrows[x].name!r} and {q.arrows[y].name!r} do not compose"
                )
        return cls(q.arrows[ids[0]].source, ids)


@dataclass(frozen=True)
class Relation:
    terms: tuple[tuple[Fraction, Path], ...]

    def __post_init__(self):
        merged: dict[Path, Fraction] = {}
        for c, p in self.terms:
            merged[p] = merged.get(p, Fraction(0)) + Fraction(c)
        terms = tuple(sorted(((c, p) for p, c in merged.items() if c), key=lambda t: t[1].sort_key()))
        if not terms:
            raise QuiverError("relation has no nonzero coefficient")
        object.__setattr__(self, "terms", terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def check(self, q: Quiver) -> None:
        ends = set()
        for _, p in self.terms:
            if p.length < 2:
                raise QuiverError(f"relation term {p.label(q)!r} has length < 2")
            ends.add((p.source(q), p.target(q)))
        if len(ends) > 1:
            raise QuiverError("relation terms are not parallel paths")

    def text(self, q: Quiver) -> str:
        parts = []
        for k, (c, p) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            coef = "" if a == 1 else f"{a}*"
            body = coef + p.label(q)
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)


@dataclass(frozen=True)
class BoundQuiverSpec:
    quiver: Quiver
    relations: tuple[Relation, ...] = ()
    bound: int | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        for r in self.relations:
            r.check(self.quiver)
        if self.bound is None:
            if not self.quiver.is_acyclic():
                raise QuiverError("a quiver with oriented cycles needs an explicit bound")
            object.__setattr__(self, "bound", max(2, self.quiver.longest_path_length() + 1))
        elif self.bound < 2:
            raise QuiverError("admissibility bound must be at least 2")

    @property
    def vertex_count(self) -> int:
        return self.quiver.vertex_count

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    def monomial_zero_paths(self) -> set[tuple[int, ...]]:
        return {r.terms[0][1].arrows for r in self.relations if r.is_monomial()}


# -- text format -----------------------------------------------------------

_NAME = r"[^\W\d][\w']*"
_ARROW_RE = re.compile(rf"^\s*({_NAME})\s*:\s*(\d+)\s*->\s*(\d+)\s*$")
_NUM_RE = re.compile(r"^\d+(/\d+)?$")


def _logical_lines(text: str) -> Iterator[tuple[int, int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        offset = 0
        for chunk in line.split(";"):
            if chunk.strip():
                col = offset + (len(chunk) - len(chunk.lstrip())) + 1
                yield lineno, col, chunk.strip()
            offset += len(chunk) + 1


def _parse_relation(body: str, q: Quiver, names: dict[str, int], lineno: int, col: int) -> Relation:
    tokens = re.findall(r"[+-]|[^\s+-]+", body)
    if not tokens:
        raise ParseError("empty relation", lineno, col)
    terms = []
    sign = 1
    expect_term = True
    for tok in tokens:
        if tok in ("+", "-"):
            if expect_term and terms:
                raise ParseError("two operators in a row", lineno, col)
            if tok == "-":
                sign = -sign
            expect_term = True
            continue
        if not expect_term:
            raise ParseError(f"expected '+' or '-' before {tok!r}", lineno, col + body.find(tok))
        pieces = tok.split("*")
        coef = Fraction(1)
        if _NUM_RE.match(pieces[0]):
            coef = Fraction(pieces[0])
            pieces = pieces[1:]
        arrow_names = [n for piece in pieces for n in piece.split(".")]
        if not arrow_names or any(not n for n in arrow_names):
            raise ParseError(f"malformed path {tok!r}", lineno, col + body.find(tok))
        ids = []
        for n in arrow_names:
            if n not in names:
                raise ParseError(f"unknown arrow {n!r}", lineno, col + body.find(n))
            ids.append(names[n])
        if len(ids) < 2:
            raise ParseError(f"relation term {tok!r} has length < 2", lineno, col + body.find(tok))
        try:
            path = Path.of_arrows(q, ids)
        except QuiverError as exc:
            raise ParseError(str(exc), lineno, col + body.find(tok)) from None
        terms.append((sign * coef, path))
        sign = 1
        expect_term = False
    if expect_term:
        raise ParseError("relation ends with an operator", lineno, col + len(body))
    try:
        rel = Relation(tuple(terms))
        rel.check(q)
    except QuiverError as exc:
        raise ParseError(str(exc), lineno, col) from None
    return rel


def parse_quiver(text: str, name: str = "") -> BoundQuiverSpec:
    n = None
    arrows: list[Arrow] = []
    rel_lines: list[tuple[int, int, str]] = []
    bound = None
    for lineno, col, line in _logical_lines(text):
        head = line.split(None, 1)[0]
        if head == "vertices":
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError("expected 'vertices <n>'", lineno, col)
            if n is not None:
                raise ParseError("vertices declared twice", lineno, col)
            n = int(parts[1])
            if n < 1:
                raise ParseError("need at least one vertex", lineno, col)
        elif head == "rel":
            rel_lines.append((lineno, col + 4, line[3:].strip()))
        elif head == "bound":
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError("expected 'bound <m>'", lineno, col)
            bound = int(parts[1])
        else:
            m = _ARROW_RE.match(line)
            if not m:
                raise ParseError(f"cannot parse {line!r}", lineno, col)
            if n is None:
                raise ParseError("arrow declared before 'vertices'", lineno, col)
            aname, s, t = m.group(1), int(m.group(2)), int(m.group(3))
            for v, off in ((s, m.start(2)), (t, m.start(3))):
                if not 1 <= v <= n:
                    raise ParseError(f"unknown vertex {v}", lineno, col + off)
            if any(a.name == aname for a in arrows):
                raise ParseError(f"duplicate arrow name {aname!r}", lineno, col)
            arrows.append(Arrow(aname, s - 1, t - 1))
    if n is None:
        raise ParseError("missing 'vertices' declaration", 1, 1)
    q = Quiver(n, tuple(arrows))
    names = {a.name: i for i, a in enumerate(arrows)}
    rels = tuple(_parse_relation(body, q, names, ln, c) for ln, c, body in rel_lines)
    try:
        return BoundQuiverSpec(q, rels, bound, name=name)
    except QuiverError as exc:
        raise ParseError(str(exc), 1, 1) from None


def emit_quiver(spec: BoundQuiverSpec) -> str:
    q = spec.quiver
    lines = [f"vertices {q.vertex_count}"]
    lines += [f"{a.name}: {a.source + 1} -> {a.target + 1}" for a in q.arrows]
    lines += [f"rel {r.text(q)}" for r in spec.relations]
    lines.append(f"bound {spec.bound}")
    return "\n".join(lines) + "\n"


# -- paths -----------------------------------------------------------------

def enumerate_paths(spec: BoundQuiverSpec, max_length: int | None = None,
                    cap: int = DEFAULT_PATH_CAP) -> list[Path]:
    """All paths of length < bound (or <= max_length), by (length, arrow ids)."""
    q = spec.quiver
    limit = spec.bound - 1 if max_length is None else max_length
    out = [Path(v) for v in range(q.vertex_count)]
    layer = [Path.of_arrows(q, (i,)) for i in range(len(q.arrows))] if limit >= 1 else []
    outgoing = [q.out_arrows(v) for v in range(q.vertex_count)]
    length = 1
    while layer:
        out.extend(layer)
        if len(out) > cap:
            raise PathExplosion(f"more than {cap} paths below length {limit + 1} (path cap reached)")
        if length == limit:
            break
        nxt = []
        for p in layer:
            for i in outgoing[p.target(q)]:
                nxt.append(Path(p.vertex, p.arrows + (i,)))
        nxt.sort(key=Path.sort_key)
        layer = nxt
        length += 1
    return out


# -- gentleness ------------------------------------------------------------

@dataclass(frozen=True)
class GentleReport:
    ok: bool
    violations: tuple[str, ...]

    def __bool__(self):
        return self.ok


def is_gentle(spec: BoundQuiverSpec) -> GentleReport:
    q = spec.quiver
    bad = []
    for v in range(q.vertex_count):
        if len(q.out_arrows(v)) > 2:
            bad.append(f"(1) at most 2 arrows start: vertex {v + 1} has {len(q.out_arrows(v))}")
        if len(q.in_arrows(v)) > 2:
            bad.append(f"(1) at most 2 arrows finish: vertex {v + 1} has {len(q.in_arrows(v))}")
    for r in spec.relations:
        if not r.is_monomial() or r.terms[0][1].length != 2:
            bad.append(f"(3) relation {r.text(q)!r} is not a path of length 2")
    zero = spec.monomial_zero_paths()

    def in_ideal(x, y):
        return spec.bound <= 2 or (x, y) in zero

    for b in range(len(q.arrows)):
        tb = q.arrows[b].target
        sb = q.arrows[b].source
        after = q.out_arrows(tb)
        before = q.in_arrows(sb)
        name = q.arrows[b].name
        if sum(1 for g in after if not in_ideal(b, g)) > 1:
            bad.append(f"(2) more than one arrow g with {name}.g not in I")
        if sum(1 for a in before if not in_ideal(a, b)) > 1:
            bad.append(f"(2) more than one arrow a with a.{name} not in I")
        if sum(1 for g in after if in_ideal(b, g)) > 1:
            bad.append(f"(4) more than one arrow g with {name}.g in I")
        if sum(1 for a in before if in_ideal(a, b)) > 1:
            bad.append(f"(4) more than one arrow a with a.{name} in I")
    if not bad and not validate_admissible(spec):
        bad.append("(3) the bound is not implied by the length-2 relations")
    return GentleReport(not bad, tuple(bad))


def validate_admissible(spec: BoundQuiverSpec, cap: int = DEFAULT_PATH_CAP) -> bool:
    """Every path of length == bound lies in the ideal generated by the relations."""
    from nearfrob.algebra import path_ideal

    paths, index, ideal = path_ideal(spec, spec.bound, cap=cap)
    from nearfrob.exactlin import subspace_membership

    n = len(paths)
    for p in paths:
        if p.length == spec.bound:
            v = [0] * n
            v[index[p]] = 1
            if not subspace_membership(ideal, v):
                return False
    return True


# -- families --------------------------------------------------------------

def _letters(k: int) -> list[str]:
    if k <= 26:
        return [chr(ord("a") + i) for i in range(k)]
    return [f"a{i + 1}" for i in range(k)]


def make_linear_An(n: int) -> BoundQuiverSpec:
    if n < 1:
        raise QuiverError("A_n needs n >= 1")
    names = _letters(n - 1)
    arrows = tuple(Arrow(names[i], i, i + 1) for i in range(n - 1))
    return BoundQuiverSpec(Quiver(n, arrows), (), None, name=f"A{n}")


def _mono(q: Quiver, *names: str) -> Relation:
    return Relation(((Fraction(1), Path.of_arrows(q, [q.arrow_index(x) for x in names])),))


def make_cyclic_family(n_list: Sequence[int]) -> BoundQuiverSpec:
    """Oriented cycle cut into segments of the given lengths; junction compositions are zero."""
    n_list = list(n_list)
    if not n_list:
        raise QuiverError("cyclic family needs at least one segment")
    if any(k < 1 for k in n_list):
        raise QuiverError("segment lengths must be positive")
    total = sum(n_list)
    arrows = []
    pos = 0
    seg_names = []
    for i, k in enumerate(n_list):
        names = []
        for j in range(k):
            nm = f"a{i + 1}_{j + 1}"
            arrows.append(Arrow(nm, pos, (pos + 1) % total))
            names.append(nm)
            pos += 1
        seg_names.append(names)
    q = Quiver(total, tuple(arrows))
    m = len(n_list)
    rels = tuple(_mono(q, seg_names[i][-1], seg_names[(i + 1) % m][0]) for i in range(m))
    label = ",".join(str(k) for k in n_list)
    return BoundQuiverSpec(q, rels, max(n_list) + 1, name=f"C({label})")


GENTLE_LEMMA_KINDS = ("mid-relation", "in-branch", "out-branch", "crossing")


def make_gentle_lemma_family(kind: str, m: int, n: int, r: int = 1, s: int = 1) -> BoundQuiverSpec:
    """The four gentle building blocks: a strand a1..a_{m+n} through a junction vertex.

    mid-relation: strand a1..am, b1..bn with a_m.b_1 = 0.
    in-branch:    branch b1..br ends at the junction, b_r.a_{m+1} = 0.
    out-branch:   branch b1..br leaves the junction, a_m.b_1 = 0.
    crossing:     b1..br enter and b_{r+1}..b_{r+s} leave; b_r.a_{m+1} = a_m.b_{r+1} = 0.
    """
    if kind not in GENTLE_LEMMA_KINDS:
        raise QuiverError(f"unknown family {kind!r}")
    if min(m, n, r, s) < 1:
        raise QuiverError("family parameters must be >= 1")
    if kind == "mid-relation":
        nv = m + n + 1
        arrows = [Arrow(f"a{i + 1}", i, i + 1) for i in range(m)]
        arrows += [Arrow(f"b{j + 1}", m + j, m + j + 1) for j in range(n)]
        q = Quiver(nv, tuple(arrows))
        return BoundQuiverSpec(q, (_mono(q, f"a{m}", "b1"),), None, name=f"mid({m},{n})")
    junction = m
    arrows = [Arrow(f"a{i + 1}", i, i + 1) for i in range(m + n)]
    nxt = m + n + 1
    if kind == "in-branch":
        verts = list(range(nxt, nxt + r)) + [junction]
        arrows += [Arrow(f"b{j + 1}", verts[j], verts[j + 1]) for j in range(r)]
        q = Quiver(nxt + r, tuple(arrows))
        rels = (_mono(q, f"b{r}", f"a{m + 1}"),)
        label = f"in({m},{n},{r})"
    elif kind == "out-branch":
        verts = [junction] + list(range(nxt, nxt + r))
        arrows += [Arrow(f"b{j + 1}", verts[j], verts[j + 1]) for j in range(r)]
        q = Quiver(nxt + r, tuple(arrows))
        rels = (_mono(q, f"a{m}", "b1"),)
        label = f"out({m},{n},{r})"
    else:
        verts = list(range(nxt, nxt + r)) + [junction] + list(range(nxt + r, nxt + r + s))
        arrows += [Arrow(f"b{j + 1}", verts[j], verts[j + 1]) for j in range(r + s)]
        q = Quiver(nxt + r + s, tuple(arrows))
        rels = (_mono(q, f"b{r}", f"a{m + 1}"), _mono(q, f"a{m}", f"b{r + 1}"))
        label = f"cross({m},{n},{r},{s})"
    return BoundQuiverSpec(q, rels, None, name=label)


def is_linear_An(q: Quiver) -> bool:
    """True for 1 -> 2 -> ... -> n up to relabelling (n >= 1)."""
    n = q.vertex_count
    if len(q.arrows) != n - 1 or not q.is_connected():
        return False
    return all(len(q.out_arrows(v)) <= 1 and len(q.in_arrows(v)) <= 1 for v in range(n))


def _canonical(n: int, edges: Sequence[tuple[int, int]]) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted((perm[s], perm[t]) for s, t in edges))
        if best is None or key < best:
            best = key
    return best


def enumerate_connected_quivers(max_vertices: int, max_arrows: int,
                                acyclic: bool = True) -> Iterator[Quiver]:
    """Connected quivers up to isomorphism, parallel arrows allowed, loops excluded.

    With ``acyclic=False`` oriented cycles of length >= 2 are also produced.
    """
    for n in range(1, max_vertices + 1):
        pairs = [(s, t) for s in range(n) for t in range(n) if s != t]
        seen = set()
        for k in range(max(0, n - 1), max_arrows + 1):
            for edges in itertools.combinations_with_replacement(pairs, k):
                key = _canonical(n, edges)
                if key in seen:
                    continue
                seen.add(key)
                names = _letters(len(key))
                q = Quiver(n, tuple(Arrow(names[i], s, t) for i, (s, t) in enumerate(key)))
                if not q.is_connected():
                    continue
                if acyclic and not q.is_acyclic():
                    continue
                yield q


def spec_of(q: Quiver, name: str = "") -> BoundQuiverSpec:
    return BoundQuiverSpec(q, (), None, name=name)


def iter_specs(qs: Iterable[Quiver]) -> Iterator[BoundQuiverSpec]:
    for q in qs:
        yield spec_of(q)
