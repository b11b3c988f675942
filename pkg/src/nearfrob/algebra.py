"""Finite-dimensional unital algebras given by structure constants.

``products[(i, j)]`` holds the nonzero coordinates of ``e_i * e_j``.
Builders cover bound quiver algebras and a few classical families; the
constructions (opposite, direct sum, tensor, quotient, pullback) also carry
a coproduct from their inputs to their output when one is supplied.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from nearfrob.exactlin import (
    IncrementalSpan,
    SparseMatrix,
    SubspaceBasis,
    fmt,
    kernel_rows,
    rank,
    solve,
    subspace_membership,
    subspace_sum,
)
from nearfrob.nfsolver import CasimirElement, casimir_space, left_mul
from nearfrob.quiver import (
    DEFAULT_PATH_CAP,
    BoundQuiverSpec,
    Path,
    enumerate_paths,
    make_cyclic_family,
    make_gentle_lemma_family,
    make_linear_An,
    validate_admissible,
)

DEBUG = bool(os.environ.get("NEARFROB_DEBUG"))
_EMPTY: Mapping[int, Fraction] = {}


class AlgebraError(ValueError):
    pass


class MorphismError(AlgebraError):
    pass


def _add_into(acc: dict, vec: Mapping[int, Fraction], scale=1) -> None:
    for k, x in vec.items():
        y = acc.get(k, 0) + scale * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    labels: tuple[str, ...]
    products: Mapping[tuple[int, int], Mapping[int, Fraction]]
    unit: tuple[Fraction, ...]
    generators: tuple[int, ...]
    name: str = ""
    provenance: tuple = field(default=(), repr=False)
    spec: BoundQuiverSpec | None = field(default=None, repr=False)

    def __post_init__(self):
        clean = {}
        for key, vec in self.products.items():
            v = {k: Fraction(x) for k, x in vec.items() if x}
            if v:
                clean[key] = v
        object.__setattr__(self, "products", clean)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "unit", tuple(Fraction(x) for x in self.unit))
        object.__setattr__(self, "generators", tuple(self.generators))
        if len(self.unit) != len(self.labels):
            raise AlgebraError("unit has the wrong length")
        if DEBUG:
            self.validate()

    @property
    def dim(self) -> int:
        return len(self.labels)

    def mul_basis(self, i: int, j: int) -> Mapping[int, Fraction]:
        return self.products.get((i, j), _EMPTY)

    def basis_product_vector(self, i: int, j: int) -> tuple[Fraction, ...]:
        v = [Fraction(0)] * self.dim
        for k, x in self.mul_basis(i, j).items():
            v[k] = x
        return tuple(v)

    def mul(self, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
        acc: dict = {}
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    _add_into(acc, self.mul_basis(i, j), a * b)
        v = [Fraction(0)] * self.dim
        for k, c in acc.items():
            v[k] = c
        return tuple(v)

    def basis_vector(self, i: int) -> tuple[Fraction, ...]:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return tuple(v)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise AlgebraError(f"no basis element labelled {label!r}") from None

    def same_structure(self, other: "FiniteAlgebra") -> bool:
        return (
            self.dim == other.dim
            and self.products == other.products
            and self.unit == other.unit
        )

    # -- checks ------------------------------------------------------------

    def associativity_counterexample(self) -> tuple[int, int, int] | None:
        n = self.dim
        for i in range(n):
            for j in range(n):
                ij = self.mul_basis(i, j)
                for l in range(n):
                    lhs: dict = {}
                    for k, c in ij.items():
                        _add_into(lhs, self.mul_basis(k, l), c)
                    rhs: dict = {}
                    for k, c in self.mul_basis(j, l).items():
                        _add_into(rhs, self.mul_basis(i, k), c)
                    if lhs != rhs:
                        return (i, j, l)
        return None

    def unit_counterexample(self) -> int | None:
        for i in range(self.dim):
            e = self.basis_vector(i)
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                return i
        return None

    def generators_generate(self) -> bool:
        span = IncrementalSpan(self.dim)
        span.add({k: x for k, x in enumerate(self.unit) if x})
        frontier = [dict(span._rows[p]) for p in span._rows]
        while frontier:
            nxt = []
            for v in frontier:
                for g in self.generators:
                    acc: dict = {}
                    for k, c in v.items():
                        _add_into(acc, self.mul_basis(k, g), c)
                    if acc and span.add(acc):
                        nxt.append(acc)
            frontier = nxt
        return span.dim == self.dim

    def validate(self) -> None:
        bad = self.associativity_counterexample()
        if bad is not None:
            i, j, l = (self.labels[x] for x in bad)
            raise AlgebraError(f"not associative on ({i}, {j}, {l})")
        bad = self.unit_counterexample()
        if bad is not None:
            raise AlgebraError(f"unit law fails on {self.labels[bad]}")
        if not self.generators_generate():
            raise AlgebraError("generators do not generate the algebra")


# -- linear helpers --------------------------------------------------------

def _complement(n: int, sub: SubspaceBasis) -> tuple[list[int], list[dict[int, Fraction]]]:
    """Keep the smallest coordinates whose residues form a basis of Q^n / sub.

    Returns the kept coordinates and, for every coordinate, its image in the
    quotient as ``{quotient index: coeff}``.
    """
    rev = [{n - 1 - j: x for j, x in enumerate(v) if x} for v in sub.vectors]
    from nearfrob.exactlin import _rref_rows

    red, piv = _rref_rows(rev, n)
    eliminated = {n - 1 - p: r for p, r in zip(piv, red)}
    kept = [c for c in range(n) if c not in eliminated]
    qindex = {c: i for i, c in enumerate(kept)}
    proj: list[dict[int, Fraction]] = []
    for c in range(n):
        if c in qindex:
            proj.append({qindex[c]: Fraction(1)})
        else:
            row = eliminated[c]
            proj.append({qindex[n - 1 - j]: -x for j, x in row.items() if n - 1 - j != c})
    return kept, proj


# -- bound quiver algebras -------------------------------------------------

def _path_mul(q, p: Path, r: Path, max_len: int) -> Path | None:
    out = p.compose(r, q)
    if out is None or out.length > max_len:
        return None
    return out


def path_ideal(spec: BoundQuiverSpec, max_length: int,
               cap: int = DEFAULT_PATH_CAP) -> tuple[list[Path], dict[Path, int], SubspaceBasis]:
    """Two-sided ideal generated by the relations inside span{paths of length <= max_length}.

    Longer paths are treated as zero.  Saturation multiplies by vertices and
    arrows on both sides until nothing new appears.
    """
    q = spec.quiver
    paths = enumerate_paths(spec, max_length=max_length, cap=cap)
    index = {p: i for i, p in enumerate(paths)}
    mults = [Path(v) for v in range(q.vertex_count)]
    mults += [Path.of_arrows(q, (i,)) for i in range(len(q.arrows))]
    span = IncrementalSpan(len(paths))
    work = []
    for rel in spec.relations:
        v = {index[p]: c for c, p in rel.terms if p.length <= max_length}
        if v and span.add(v):
            work.append(v)
    while work:
        v = work.pop()
        for m in mults:
            for side in (0, 1):
                w: dict = {}
                for k, c in v.items():
                    p = paths[k]
                    r = _path_mul(q, m, p, max_length) if side == 0 else _path_mul(q, p, m, max_length)
                    if r is not None:
                        j = index[r]
                        w[j] = w.get(j, 0) + c
                w = {j: c for j, c in w.items() if c}
                if w and span.add(w):
                    work.append(w)
    return paths, index, span.freeze()


def from_bound_quiver(spec: BoundQuiverSpec, cap: int = DEFAULT_PATH_CAP,
                      check_admissible: bool = True) -> FiniteAlgebra:
    if check_admissible and not validate_admissible(spec, cap=cap):
        raise AlgebraError(
            f"relations do not kill all paths of length {spec.bound}; ideal is not admissible"
        )
    q = spec.quiver
    paths, index, ideal = path_ideal(spec, spec.bound - 1, cap=cap)
    kept, proj = _complement(len(paths), ideal)
    basis = [paths[c] for c in kept]
    products = {}
    for i, p in enumerate(basis):
        for j, r in enumerate(basis):
            pr = _path_mul(q, p, r, spec.bound - 1)
            if pr is not None:
                img = proj[index[pr]]
                if img:
                    products[(i, j)] = img
    unit = [Fraction(1) if p.length == 0 else Fraction(0) for p in basis]
    gens = [i for i, p in enumerate(basis) if p.length <= 1]
    return FiniteAlgebra(
        labels=tuple(p.label(q) for p in basis),
        products=products,
        unit=tuple(unit),
        generators=tuple(gens),
        name=spec.name or "kQ/I",
        provenance=tuple(basis),
        spec=spec,
    )


# -- families --------------------------------------------------------------

def _power_label(sym: str, k: int) -> str:
    return "1" if k == 0 else sym if k == 1 else f"{sym}^{k}"


def truncated_polynomial(n: int) -> FiniteAlgebra:
    """k[x]/(x^{n+1})"""
    if n < 0:
        raise AlgebraError("n must be >= 0")
    products = {(i, j): {i + j: 1} for i in range(n + 1) for j in range(n + 1) if i + j <= n}
    gens = (1,) if n >= 1 else (0,)
    return FiniteAlgebra(
        labels=tuple(_power_label("x", k) for k in range(n + 1)),
        products=products,
        unit=tuple(Fraction(int(k == 0)) for k in range(n + 1)),
        generators=gens,
        name=f"truncpoly:{n}",
    )


def matrix_algebra(n: int) -> FiniteAlgebra:
    if n < 1:
        raise AlgebraError("n must be >= 1")
    sep = "," if n >= 10 else ""
    idx = [(i, j) for i in range(n) for j in range(n)]
    pos = {ij: k for k, ij in enumerate(idx)}
    products = {}
    for (i, j), a in pos.items():
        for (k, l), b in pos.items():
            if j == k:
                products[(a, b)] = {pos[(i, l)]: 1}
    return FiniteAlgebra(
        labels=tuple(f"E_{i + 1}{sep}{j + 1}" for i, j in idx),
        products=products,
        unit=tuple(Fraction(int(i == j)) for i, j in idx),
        generators=tuple(range(n * n)),
        name=f"matrix:{n}",
    )


def cyclic_group_algebra(n: int) -> FiniteAlgebra:
    if n < 1:
        raise AlgebraError("n must be >= 1")
    products = {(i, j): {(i + j) % n: 1} for i in range(n) for j in range(n)}
    return FiniteAlgebra(
        labels=tuple(_power_label("g", k) for k in range(n)),
        products=products,
        unit=tuple(Fraction(int(k == 0)) for k in range(n)),
        generators=(1 % n,),
        name=f"cyclicgroup:{n}",
    )


def builtin_spec(family: str, params: Sequence[int]) -> BoundQuiverSpec | None:
    """Quiver-backed builtin families; None for families given by structure constants."""
    if family == "An":
        return make_linear_An(*params)
    if family == "cycle":
        return make_cyclic_family(params)
    kinds = {"mid": "mid-relation", "inbranch": "in-branch", "outbranch": "out-branch",
             "crossing": "crossing"}
    if family in kinds:
        return make_gentle_lemma_family(kinds[family], *params)
    return None


def builtin(family: str, params: Sequence[int]) -> FiniteAlgebra:
    if family == "truncpoly":
        return truncated_polynomial(*params)
    if family == "matrix":
        return matrix_algebra(*params)
    if family == "cyclicgroup":
        return cyclic_group_algebra(*params)
    spec = builtin_spec(family, params)
    if spec is None:
        raise AlgebraError(f"unknown builtin family {family!r}")
    return from_bound_quiver(spec)


# -- morphisms -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AlgebraMorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    matrix: SparseMatrix  # target.dim x source.dim

    def column(self, i: int) -> dict[int, Fraction]:
        return {r: x for (r, c), x in self.matrix.entries.items() if c == i}

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        return self.matrix.matvec(v)

    def apply_tensor(self, t: Mapping[tuple[int, int], Fraction]) -> dict:
        cols = [self.column(i) for i in range(self.source.dim)]
        out: dict = {}
        for (i, j), c in t.items():
            for p, x in cols[i].items():
                for q, y in cols[j].items():
                    key = (p, q)
                    v = out.get(key, 0) + c * x * y
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
        return out

    def check(self) -> None:
        s, t = self.source, self.target
        if self.matrix.rows != t.dim or self.matrix.cols != s.dim:
            raise MorphismError("matrix shape does not match source/target dimensions")
        if self.apply(s.unit) != t.unit:
            raise MorphismError("f(1) != 1")
        imgs = [self.apply(s.basis_vector(i)) for i in range(s.dim)]
        for i in range(s.dim):
            for j in range(s.dim):
                if self.apply(s.basis_product_vector(i, j)) != t.mul(imgs[i], imgs[j]):
                    raise MorphismError(f"f({s.labels[i]}*{s.labels[j]}) != f({s.labels[i]})f({s.labels[j]})")

    def is_surjective(self) -> bool:
        return rank(self.matrix) == self.target.dim

    def preserves(self, delta_s: CasimirElement, delta_t: CasimirElement) -> bool:
        """(f (x) f) Delta_s(x) == Delta_t(f(x)) for every basis element x."""
        s = self.source
        for x in range(s.dim):
            lhs = self.apply_tensor(left_mul(s, x, delta_s.coeffs))
            rhs: dict = {}
            for y, c in self.column(x).items():
                for key, v in left_mul(self.target, y, delta_t.coeffs).items():
                    rhs[key] = rhs.get(key, 0) + c * v
            rhs = {k: v for k, v in rhs.items() if v}
            if lhs != rhs:
                return False
        return True

    @classmethod
    def from_label_map(cls, source: FiniteAlgebra, target: FiniteAlgebra,
                       mapping: Mapping[str, str | None]) -> "AlgebraMorphism":
        """Send each source basis label to a target label (or to 0 when mapped to None)."""
        ent = {}
        for i, lab in enumerate(source.labels):
            img = mapping.get(lab, None)
            if img is not None:
                ent[(target.index(img), i)] = Fraction(1)
        return cls(source, target, SparseMatrix(target.dim, source.dim, ent))


@dataclass(frozen=True, eq=False)
class IdealSubspace:
    algebra: FiniteAlgebra
    basis: SubspaceBasis

    @property
    def dim(self) -> int:
        return self.basis.dim

    def contains(self, v: Sequence) -> bool:
        return subspace_membership(self.basis, v)

    def contains_unit(self) -> bool:
        return self.contains(self.algebra.unit)


@dataclass(frozen=True, eq=False)
class Construction:
    algebra: FiniteAlgebra
    coproduct: CasimirElement | None = None
    maps: Mapping[str, AlgebraMorphism] = field(default_factory=dict)


# -- constructions ---------------------------------------------------------

def opposite(a: FiniteAlgebra, delta: CasimirElement | None = None) -> Construction:
    products = {(j, i): v for (i, j), v in a.products.items()}
    op = FiniteAlgebra(a.labels, products, a.unit, a.generators, name=f"op({a.name})",
                       provenance=a.provenance)
    out = None
    if delta is not None:
        out = CasimirElement(op, {(j, i): c for (i, j), c in delta.coeffs.items()})
    return Construction(op, out)


def direct_sum(algebras: Sequence[FiniteAlgebra],
               deltas: Sequence[CasimirElement | None] | None = None) -> Construction:
    if not algebras:
        raise AlgebraError("direct sum of an empty list")
    offsets = list(itertools.accumulate([0] + [a.dim for a in algebras]))
    labels, unit, products = [], [], {}
    for k, a in enumerate(algebras):
        off = offsets[k]
        labels += [f"{lab}@{k + 1}" for lab in a.labels]
        unit += list(a.unit)
        for (i, j), v in a.products.items():
            products[(i + off, j + off)] = {x + off: c for x, c in v.items()}
    s = FiniteAlgebra(tuple(labels), products, tuple(unit), tuple(range(len(labels))),
                      name="(+)".join(a.name for a in algebras))
    out = None
    if deltas is not None:
        if len(deltas) != len(algebras):
            raise AlgebraError("one coproduct (or None) per summand")
        coeffs = {}
        for k, d in enumerate(deltas):
            if d is not None:
                off = offsets[k]
                coeffs.update({(i + off, j + off): c for (i, j), c in d.coeffs.items()})
        out = CasimirElement(s, coeffs)
    return Construction(s, out)


def tensor_product(a: FiniteAlgebra, b: FiniteAlgebra,
                   delta_a: CasimirElement | None = None,
                   delta_b: CasimirElement | None = None,
                   max_dim: int = 400) -> Construction:
    n, m = a.dim, b.dim
    if n * m > max_dim:
        raise AlgebraError(f"tensor product dimension {n * m} exceeds cap {max_dim}")
    labels = tuple(f"{x}|{y}" for x in a.labels for y in b.labels)
    products = {}
    for (i, k), u in a.products.items():
        for (j, l), v in b.products.items():
            products[(i * m + j, k * m + l)] = {p * m + q: x * y for p, x in u.items() for q, y in v.items()}
    unit = tuple(x * y for x in a.unit for y in b.unit)
    t = FiniteAlgebra(labels, products, unit, tuple(range(n * m)), name=f"{a.name}(x){b.name}")
    out = None
    if delta_a is not None and delta_b is not None:
        coeffs = {}
        for (i, k), x in delta_a.coeffs.items():
            for (j, l), y in delta_b.coeffs.items():
                coeffs[(i * m + j, k * m + l)] = x * y
        out = CasimirElement(t, coeffs)
    return Construction(t, out)


def ideal_closure(a: FiniteAlgebra, gens: Sequence[Sequence]) -> IdealSubspace:
    n = a.dim
    span = IncrementalSpan(n)
    work = []
    for g in gens:
        v = {k: Fraction(x) for k, x in enumerate(g) if x}
        if v and span.add(v):
            work.append(v)
    while work:
        v = work.pop()
        for b in range(n):
            for side in (0, 1):
                acc: dict = {}
                for k, c in v.items():
                    _add_into(acc, a.mul_basis(b, k) if side == 0 else a.mul_basis(k, b), c)
                if acc and span.add(acc):
                    work.append(acc)
    return IdealSubspace(a, span.freeze())


def nf_ideal_target(a: FiniteAlgebra, j: IdealSubspace) -> SubspaceBasis:
    """J (x) A + A (x) J inside A (x) A (row-major coordinates)."""
    n = a.dim
    left, right = [], []
    for v in j.basis.vectors:
        for b in range(n):
            w = [Fraction(0)] * (n * n)
            w2 = [Fraction(0)] * (n * n)
            for k, x in enumerate(v):
                if x:
                    w[k * n + b] = x
                    w2[b * n + k] = x
            left.append(w)
            right.append(w2)
    return subspace_sum(SubspaceBasis.span(n * n, left), SubspaceBasis.span(n * n, right))


def is_nf_ideal(a: FiniteAlgebra, delta: CasimirElement, j: IdealSubspace) -> bool:
    if j.dim == 0:
        return True
    n = a.dim
    target = nf_ideal_target(a, j)
    images = [left_mul(a, k, delta.coeffs) for k in range(n)]
    for v in j.basis.vectors:
        w = [Fraction(0)] * (n * n)
        for k, x in enumerate(v):
            if x:
                for (p, q), c in images[k].items():
                    w[p * n + q] += x * c
        if not subspace_membership(target, w):
            return False
    return True


def quotient(a: FiniteAlgebra, j: IdealSubspace,
             delta: CasimirElement | None = None) -> Construction:
    if j.contains_unit():
        raise AlgebraError("the ideal contains 1; the quotient is zero")
    if delta is not None and not is_nf_ideal(a, delta, j):
        raise AlgebraError("ideal is not a nearly Frobenius ideal for this coproduct")
    kept, proj = _complement(a.dim, j.basis)
    qdim = len(kept)
    products = {}
    for x, i in enumerate(kept):
        for y, k in enumerate(kept):
            acc: dict = {}
            for c, s in a.mul_basis(i, k).items():
                _add_into(acc, proj[c], s)
            if acc:
                products[(x, y)] = acc
    unit: dict = {}
    for c, s in enumerate(a.unit):
        if s:
            _add_into(unit, proj[c], s)
    prov = tuple(a.provenance[i] for i in kept) if a.provenance else ()
    b = FiniteAlgebra(
        tuple(a.labels[i] for i in kept),
        products,
        tuple(unit.get(x, Fraction(0)) for x in range(qdim)),
        tuple(range(qdim)),
        name=f"{a.name}/J",
        provenance=prov,
    )
    p = AlgebraMorphism(a, b, SparseMatrix(qdim, a.dim, {(r, c): x for c in range(a.dim) for r, x in proj[c].items()}))
    out = None
    if delta is not None:
        out = CasimirElement(b, p.apply_tensor(delta.coeffs))
    return Construction(b, out, {"projection": p})


class PullbackError(AlgebraError):
    pass


def _combo_label(a: FiniteAlgebra, part: Sequence[Fraction]) -> str:
    terms = [(k, x) for k, x in enumerate(part) if x]
    if not terms:
        return "0"
    out = []
    for n, (k, x) in enumerate(terms):
        coef = "" if abs(x) == 1 else f"{fmt(abs(x))}"
        sign = "-" if x < 0 else ("+" if n else "")
        out.append(f"{sign}{coef}{a.labels[k]}")
    return "".join(out)


def pullback(f_a: AlgebraMorphism, f_b: AlgebraMorphism,
             delta_a: CasimirElement, delta_b: CasimirElement,
             delta_c: CasimirElement) -> Construction:
    """R = {(a, b) : f_A(a) = f_B(b)} with the coproduct induced from both factors.

    The coproduct of R is the unique-up-to-choice Casimir element of R that
    projects to ``delta_a`` on A and ``delta_b`` on B; the free-variable
    choice in the solve is zero, so the result is deterministic.
    """
    A, B, C = f_a.source, f_b.source, f_a.target
    if f_b.target is not C and not f_b.target.same_structure(C):
        raise PullbackError("morphisms do not share a target")
    if C.dim == 0:
        raise PullbackError("target algebra is zero")
    f_a.check()
    f_b.check()
    if not f_a.is_surjective() or not f_b.is_surjective():
        raise PullbackError("pullback needs surjective morphisms")
    if not f_a.preserves(delta_a, delta_c) or not f_b.preserves(delta_b, delta_c):
        raise PullbackError("a morphism is not compatible with the chosen coproducts")
    da, db = A.dim, B.dim
    rows = [dict() for _ in range(C.dim)]
    for (r, c), x in f_a.matrix.entries.items():
        rows[r][c] = x
    for (r, c), x in f_b.matrix.entries.items():
        rows[r][da + c] = -x
    ker = kernel_rows(rows, da + db)
    vecs = ker.vectors
    piv = ker.pivots
    d = len(vecs)

    def coords(w):
        if not subspace_membership(ker, w):
            raise PullbackError("product left the pullback")  # cannot happen for morphisms
        return {t: w[p] for t, p in enumerate(piv) if w[p]}

    products = {}
    for i, u in enumerate(vecs):
        for j, v in enumerate(vecs):
            w = A.mul(u[:da], v[:da]) + B.mul(u[da:], v[da:])
            c = coords(w)
            if c:
                products[(i, j)] = c
    unit_c = coords(A.unit + B.unit)
    labels = tuple(f"({_combo_label(A, v[:da])},{_combo_label(B, v[da:])})" for v in vecs)
    R = FiniteAlgebra(labels, products, tuple(unit_c.get(t, Fraction(0)) for t in range(d)),
                      tuple(range(d)), name=f"{A.name}x_{C.name}{B.name}")
    pi_a = AlgebraMorphism(R, A, SparseMatrix(da, d, {(k, t): v[k] for t, v in enumerate(vecs) for k in range(da) if v[k]}))
    pi_b = AlgebraMorphism(R, B, SparseMatrix(db, d, {(k, t): v[da + k] for t, v in enumerate(vecs) for k in range(db) if v[da + k]}))
    space = casimir_space(R)
    # unknowns: coefficients on the Frobenius basis of R
    eqs: dict[tuple, dict[int, Fraction]] = {}
    for t, beta in enumerate(space.basis):
        for side, pi in (("A", pi_a), ("B", pi_b)):
            for key, x in pi.apply_tensor(beta.coeffs).items():
                eqs.setdefault((side,) + key, {})[t] = x
    keys = sorted(set(eqs) | {("A",) + k for k in delta_a.coeffs} | {("B",) + k for k in delta_b.coeffs})
    rhs = [delta_a.coeffs.get(k[1:], Fraction(0)) if k[0] == "A" else delta_b.coeffs.get(k[1:], Fraction(0))
           for k in keys]
    m = SparseMatrix.from_rows([eqs.get(k, {}) for k in keys], space.dimension)
    sol = solve(m, rhs)
    if sol is None:
        raise PullbackError("no coproduct on R projects onto the given coproducts")
    delta_r = CasimirElement(R, {})
    for c, beta in zip(sol, space.basis):
        if c:
            delta_r = delta_r + beta.scale(c)
    return Construction(R, delta_r, {"pi_A": pi_a, "pi_B": pi_b})


def lift_casimir(f: AlgebraMorphism, delta_t: CasimirElement) -> CasimirElement | None:
    """A coproduct on the source with (f (x) f) delta = delta_t, or None.

    For a unital map this is exactly the condition for f to be a morphism
    of nearly Frobenius algebras.
    """
    space = casimir_space(f.source)
    eqs: dict = {}
    for t, beta in enumerate(space.basis):
        for key, x in f.apply_tensor(beta.coeffs).items():
            eqs.setdefault(key, {})[t] = x
    keys = sorted(set(eqs) | set(delta_t.coeffs))
    m = SparseMatrix.from_rows([eqs.get(k, {}) for k in keys], space.dimension)
    sol = solve(m, [delta_t.coeffs.get(k, Fraction(0)) for k in keys])
    if sol is None:
        return None
    out = CasimirElement(f.source, {})
    for c, beta in zip(sol, space.basis):
        if c:
            out = out + beta.scale(c)
    return out
