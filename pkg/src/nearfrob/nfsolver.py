"""Frobenius spaces: every nearly Frobenius coproduct on a unital algebra.

A coproduct that is a bimodule map is fixed by its value at the unit,
``delta = Delta(1)``, and ``delta`` is admissible exactly when
``(x (x) 1) delta == delta (1 (x) x)`` for all ``x``.  The solver therefore
computes one exact kernel.  Coassociativity follows from that condition
for unital algebras, so it is verified on the output rather than imposed.

Tensors in ``A (x) A`` are ``{(i, j): Fraction}`` dicts over basis pairs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Callable, Iterable, Mapping, Sequence

from nearfrob.exactlin import SparseMatrix, SubspaceBasis, fmt, kernel_rows, solve

if TYPE_CHECKING:
    from nearfrob.algebra import FiniteAlgebra
    from nearfrob.quiver import BoundQuiverSpec

Tensor2 = dict  # {(i, j): Fraction}


class CasimirError(ValueError):
    pass


def _clean(d: Mapping) -> dict:
    return {k: Fraction(v) for k, v in d.items() if v}


def left_mul(a: "FiniteAlgebra", x: int, t: Mapping[tuple[int, int], Fraction]) -> Tensor2:
    """(e_x (x) 1) t"""
    out: dict = {}
    for (i, j), c in t.items():
        for k, s in a.mul_basis(x, i).items():
            key = (k, j)
            out[key] = out.get(key, 0) + c * s
    return _clean(out)


def right_mul(a: "FiniteAlgebra", t: Mapping[tuple[int, int], Fraction], x: int) -> Tensor2:
    """t (1 (x) e_x)"""
    out: dict = {}
    for (i, j), c in t.items():
        for k, s in a.mul_basis(j, x).items():
            key = (i, k)
            out[key] = out.get(key, 0) + c * s
    return _clean(out)


@dataclass(frozen=True, eq=False)
class CasimirElement:
    """``delta = Delta(1) = sum D[i, j] e_i (x) e_j``."""

    algebra: "FiniteAlgebra"
    coeffs: Mapping[tuple[int, int], Fraction]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _clean(self.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, CasimirElement)
            and other.algebra.dim == self.algebra.dim
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    @classmethod
    def from_vector(cls, a: "FiniteAlgebra", v: Sequence) -> "CasimirElement":
        n = a.dim
        return cls(a, {(k // n, k % n): Fraction(x) for k, x in enumerate(v) if x})

    @classmethod
    def zero(cls, a: "FiniteAlgebra") -> "CasimirElement":
        return cls(a, {})

    def vector(self) -> tuple[Fraction, ...]:
        n = self.algebra.dim
        v = [Fraction(0)] * (n * n)
        for (i, j), c in self.coeffs.items():
            v[i * n + j] = c
        return tuple(v)

    def matrix(self) -> list[list[Fraction]]:
        n = self.algebra.dim
        m = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), c in self.coeffs.items():
            m[i][j] = c
        return m

    def __add__(self, other: "CasimirElement") -> "CasimirElement":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return CasimirElement(self.algebra, out)

    def scale(self, c) -> "CasimirElement":
        c = Fraction(c)
        return CasimirElement(self.algebra, {k: c * v for k, v in self.coeffs.items()})

    def violation(self, elements: Iterable[int] | None = None) -> int | None:
        """First basis index x with (x (x) 1) delta != delta (1 (x) x), else None."""
        a = self.algebra
        for x in range(a.dim) if elements is None else elements:
            if left_mul(a, x, self.coeffs) != right_mul(a, self.coeffs, x):
                return x
        return None

    def is_valid(self) -> bool:
        return self.violation() is None


@dataclass(frozen=True, eq=False)
class Coproduct:
    """Images Delta(e_k) for every basis element."""

    algebra: "FiniteAlgebra"
    images: tuple[Tensor2, ...]

    def apply(self, v: Sequence) -> Tensor2:
        out: dict = {}
        for k, c in enumerate(v):
            if c:
                for key, s in self.images[k].items():
                    out[key] = out.get(key, 0) + c * s
        return _clean(out)

    def __eq__(self, other):
        return isinstance(other, Coproduct) and self.images == other.images

    def __hash__(self):
        return hash(tuple(frozenset(d.items()) for d in self.images))

    def is_zero(self) -> bool:
        return not any(self.images)


@dataclass(frozen=True, eq=False)
class FrobeniusSpace:
    algebra: "FiniteAlgebra"
    basis: tuple[CasimirElement, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def subspace(self) -> SubspaceBasis:
        n = self.algebra.dim
        return SubspaceBasis(n * n, tuple(d.vector() for d in self.basis))

    def contains(self, delta: CasimirElement) -> bool:
        from nearfrob.exactlin import subspace_membership

        return subspace_membership(self.subspace(), delta.vector())

    def __eq__(self, other):
        return isinstance(other, FrobeniusSpace) and self.subspace() == other.subspace()

    def __hash__(self):
        return hash(self.subspace())


@dataclass(frozen=True)
class Counit:
    algebra: "FiniteAlgebra"
    values: tuple[Fraction, ...]


# -- solver ----------------------------------------------------------------

def casimir_constraints(a: "FiniteAlgebra", elements: Iterable[int]) -> list[dict[int, Fraction]]:
    """Rows of the linear system (x (x) 1) delta - delta (1 (x) x) = 0 over the given x."""
    n = a.dim
    rows = []
    for x in elements:
        eqs: dict[tuple[int, int], dict[int, Fraction]] = {}
        # (x (x) 1) e_i (x) e_j  contributes  a_{x i}^k  to  e_k (x) e_j
        for i in range(n):
            prod = a.mul_basis(x, i)
            if not prod:
                continue
            for j in range(n):
                var = i * n + j
                for k, s in prod.items():
                    row = eqs.setdefault((k, j), {})
                    row[var] = row.get(var, 0) + s
        # e_i (x) e_j (1 (x) x)  contributes  a_{j x}^l  to  e_i (x) e_l
        for j in range(n):
            prod = a.mul_basis(j, x)
            if not prod:
                continue
            for i in range(n):
                var = i * n + j
                for l, s in prod.items():
                    row = eqs.setdefault((i, l), {})
                    row[var] = row.get(var, 0) - s
        for key in sorted(eqs):
            row = {v: c for v, c in eqs[key].items() if c}
            if row:
                rows.append(row)
    return rows


def casimir_space(a: "FiniteAlgebra", elements: Iterable[int] | None = None) -> FrobeniusSpace:
    """Canonical basis of the space of Casimir elements of ``a``.

    Constraints use ``a.generators`` unless ``elements`` is given.
    """
    els = list(a.generators if elements is None else elements)
    n = a.dim
    ker = kernel_rows(casimir_constraints(a, els), n * n)
    if elements is None and os.environ.get("NEARFROB_DEBUG") and len(els) < n:
        full = kernel_rows(casimir_constraints(a, range(n)), n * n)
        if full != ker:
            raise CasimirError("generator constraints and full-basis constraints disagree")
    return FrobeniusSpace(a, tuple(CasimirElement.from_vector(a, v) for v in ker.vectors))


def frobdim(a: "FiniteAlgebra") -> int:
    return casimir_space(a).dimension


def induce_coproduct(delta: CasimirElement, check: bool = True) -> Coproduct:
    a = delta.algebra
    if check:
        bad = delta.violation()
        if bad is not None:
            raise CasimirError(
                f"(x (x) 1) delta != delta (1 (x) x) at basis element {a.labels[bad]!r}"
            )
    return Coproduct(a, tuple(left_mul(a, k, delta.coeffs) for k in range(a.dim)))


def bimodule_counterexample(c: Coproduct) -> tuple[int, int] | None:
    a = c.algebra
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = c.apply(a.basis_product_vector(i, j))
            if lhs != left_mul(a, i, c.images[j]) or lhs != right_mul(a, c.images[i], j):
                return (i, j)
    return None


def verify_bimodule(c: Coproduct) -> bool:
    return bimodule_counterexample(c) is None


def _apply_left(c: Coproduct, t: Tensor2) -> dict:
    """(Delta (x) 1) t  as a 3-tensor."""
    out: dict = {}
    for (i, j), s in t.items():
        for (p, q), u in c.images[i].items():
            key = (p, q, j)
            out[key] = out.get(key, 0) + s * u
    return _clean(out)


def _apply_right(c: Coproduct, t: Tensor2) -> dict:
    out: dict = {}
    for (i, j), s in t.items():
        for (p, q), u in c.images[j].items():
            key = (i, p, q)
            out[key] = out.get(key, 0) + s * u
    return _clean(out)


def coassociativity_counterexample(c: Coproduct) -> int | None:
    for k, img in enumerate(c.images):
        if _apply_left(c, img) != _apply_right(c, img):
            return k
    return None


def verify_coassociative(c: Coproduct) -> bool:
    return coassociativity_counterexample(c) is None


def find_counit(c: Coproduct) -> Counit | None:
    """Solve m(eps (x) 1) Delta = id = m(1 (x) eps) Delta for a functional eps."""
    a = c.algebra
    n = a.dim
    rows: list[dict[int, Fraction]] = []
    rhs: list[Fraction] = []
    for k, img in enumerate(c.images):
        left: dict[int, dict[int, Fraction]] = {t: {} for t in range(n)}
        right: dict[int, dict[int, Fraction]] = {t: {} for t in range(n)}
        for (i, j), s in img.items():
            # eps(e_i) e_j  and  e_i eps(e_j)
            left[j][i] = left[j].get(i, 0) + s
            right[i][j] = right[i].get(j, 0) + s
        for block in (left, right):
            for t in range(n):
                rows.append(block[t])
                rhs.append(Fraction(1) if t == k else Fraction(0))
    m = SparseMatrix.from_rows(rows, n)
    x = solve(m, rhs)
    return None if x is None else Counit(a, x)


def counit_holds(c: Coproduct, eps: Counit) -> bool:
    a = c.algebra
    for k, img in enumerate(c.images):
        left = [Fraction(0)] * a.dim
        right = [Fraction(0)] * a.dim
        for (i, j), s in img.items():
            left[j] += s * eps.values[i]
            right[i] += s * eps.values[j]
        unit = [Fraction(int(t == k)) for t in range(a.dim)]
        if left != unit or right != unit:
            return False
    return True


# -- census ----------------------------------------------------------------

@dataclass(frozen=True)
class CensusEntry:
    spec: "BoundQuiverSpec"
    frobdim: int
    linear: bool

    @property
    def agrees(self) -> bool:
        return (self.frobdim > 0) == self.linear


@dataclass(frozen=True)
class CensusReport:
    entries: tuple[CensusEntry, ...]
    skipped: tuple["BoundQuiverSpec", ...] = ()

    @property
    def counterexamples(self) -> tuple[CensusEntry, ...]:
        return tuple(e for e in self.entries if not e.agrees)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def nontriviality_census(specs: Iterable["BoundQuiverSpec"],
                         build: Callable | None = None) -> CensusReport:
    """Check (frobdim > 0) <=> (quiver is linear A_n) on path algebras.

    Specs carrying relations are not path algebras; they are set aside in
    ``skipped`` rather than counted.
    """
    from nearfrob.algebra import from_bound_quiver
    from nearfrob.quiver import is_linear_An

    build = build or from_bound_quiver
    entries = []
    skipped = []
    for spec in specs:
        if spec.relations:
            skipped.append(spec)
            continue
        fd = frobdim(build(spec))
        entries.append(CensusEntry(spec, fd, is_linear_An(spec.quiver)))
    return CensusReport(tuple(entries), tuple(skipped))


# -- output ----------------------------------------------------------------

def tensor_text(a: "FiniteAlgebra", t: Mapping[tuple[int, int], Fraction]) -> str:
    if not t:
        return "0"
    parts = []
    for k, ((i, j), c) in enumerate(sorted(t.items())):
        term = f"{a.labels[i]}⊗{a.labels[j]}"
        if c == 1:
            s = term
        elif c == -1:
            s = "-" + term
        else:
            s = f"{fmt(c)} {term}"
        if k and not s.startswith("-"):
            s = "+ " + s
        elif k:
            s = "- " + s[1:]
        parts.append(s)
    return " ".join(parts)


def space_to_json(space: FrobeniusSpace, label: str | None = None) -> dict:
    a = space.algebra
    return {
        "algebra": label if label is not None else a.name,
        "dim_k": a.dim,
        "frobdim": space.dimension,
        "basis": [
            {"delta": [[i, j, fmt(c)] for (i, j), c in sorted(d.coeffs.items())]}
            for d in space.basis
        ],
    }
