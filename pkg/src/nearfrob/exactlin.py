"""Exact linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`.  Every subspace is stored as the
rows of its reduced row echelon form, so two spans are equal exactly when
their :class:`SubspaceBasis` values compare equal.

The elimination loop is delegated to a compiled kernel when one is built
(``nearfrob._kernels``) and to ``nearfrob._kernels_py`` otherwise.  Set
``NEARFROB_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

if os.environ.get("NEARFROB_PURE_PYTHON"):
    from nearfrob import _kernels_py as _kern
else:
    try:
        from nearfrob import _kernels as _kern  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        from nearfrob import _kernels_py as _kern

BACKEND: str = _kern.BACKEND

DENSE_CUTOFF = 64

Vector = tuple  # tuple of Fraction


class DimensionError(ValueError):
    pass


def frac(x) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings."""
    return x if isinstance(x, Fraction) else Fraction(x)


def fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], Fraction]

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise DimensionError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            v = frac(v)
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], cols: int | None = None) -> "SparseMatrix":
        nrows = len(data)
        ncols = cols if cols is not None else (len(data[0]) if nrows else 0)
        ent = {(i, j): frac(v) for i, row in enumerate(data) for j, v in enumerate(row) if v}
        return cls(nrows, ncols, ent)

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, Fraction]], cols: int) -> "SparseMatrix":
        ent = {(i, j): v for i, r in enumerate(rows) for j, v in r.items() if v}
        return cls(len(rows), cols, ent)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def to_dense(self) -> list[list[Fraction]]:
        m = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            m[i][j] = v
        return m

    def matvec(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise DimensionError("vector length does not match column count")
        out = [Fraction(0)] * self.rows
        for (i, j), a in self.entries.items():
            x = v[j]
            if x:
                out[i] += a * x
        return tuple(out)


@dataclass(frozen=True)
class SubspaceBasis:
    """Canonical (RREF) basis of a subspace of Q^ambient_dim."""

    ambient_dim: int
    vectors: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(v) if x) for v in self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "SubspaceBasis":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append({j: frac(x) for j, x in enumerate(v) if x})
        red, _ = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, tuple(_densify(r, ambient_dim) for r in red))

    @classmethod
    def zero(cls, ambient_dim: int) -> "SubspaceBasis":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "SubspaceBasis":
        return cls.span(ambient_dim, [_unit(i, ambient_dim) for i in range(ambient_dim)])


def _unit(i: int, n: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def _densify(row: Mapping[int, Fraction], n: int) -> Vector:
    v = [Fraction(0)] * n
    for j, x in row.items():
        v[j] = x
    return tuple(v)


def _rref_rows(rows: list[dict[int, Fraction]], ncols: int):
    """RREF of sparse rational rows -> (list of sparse Fraction rows, pivots)."""
    if ncols < DENSE_CUTOFF:
        dense = [_densify(r, ncols) for r in rows if r]
        red, piv = _kern.rref_dense(dense, ncols)
        return [{j: x for j, x in enumerate(r) if x} for r in red], list(piv)
    red, piv = _kern.rref_sparse(_kern.integer_rows(rows), ncols)
    return red, list(piv)


def rref(m: SparseMatrix) -> tuple[SparseMatrix, list[int]]:
    """Reduced row echelon form; zero rows are kept at the bottom."""
    red, piv = _rref_rows(m.row_dicts(), m.cols)
    red = red + [{}] * (m.rows - len(red))
    return SparseMatrix.from_rows(red, m.cols), piv


def rank(m: SparseMatrix) -> int:
    return len(_rref_rows(m.row_dicts(), m.cols)[1])


def _kernel_from_rref(red: list[dict[int, Fraction]], piv: list[int], ncols: int) -> list[Vector]:
    pivset = set(piv)
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(red, piv):
            x = r.get(f)
            if x:
                v[p] = -x
        vecs.append(tuple(v))
    return vecs


def kernel_basis(m: SparseMatrix) -> SubspaceBasis:
    red, piv = _rref_rows(m.row_dicts(), m.cols)
    return SubspaceBasis.span(m.cols, _kernel_from_rref(red, piv, m.cols))


def kernel_rows(rows: list[dict[int, Fraction]], ncols: int) -> SubspaceBasis:
    """Kernel of a matrix given directly as sparse row dicts."""
    red, piv = _rref_rows(rows, ncols)
    return SubspaceBasis.span(ncols, _kernel_from_rref(red, piv, ncols))


def solve(m: SparseMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of ``m x = b`` (free variables set to 0), or None."""
    if len(b) != m.rows:
        raise DimensionError("right-hand side length does not match row count")
    n = m.cols
    rows = m.row_dicts()
    for i, bi in enumerate(b):
        bi = frac(bi)
        if bi:
            rows[i][n] = bi
    red, piv = _rref_rows(rows, n + 1)
    if piv and piv[-1] == n:
        return None
    x = [Fraction(0)] * n
    for r, p in zip(red, piv):
        x[p] = r.get(n, Fraction(0))
    return tuple(x)


def subspace_membership(basis: SubspaceBasis, v: Sequence) -> bool:
    if len(v) != basis.ambient_dim:
        raise DimensionError("vector length does not match ambient dimension")
    w = [frac(x) for x in v]
    # reduce against the RREF rows
    for vec, p in zip(basis.vectors, basis.pivots):
        c = w[p]
        if c:
            for j, x in enumerate(vec):
                if x:
                    w[j] -= c * x
    return not any(w)


def subspace_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError("subspaces live in different ambient spaces")
    return SubspaceBasis.span(a.ambient_dim, list(a.vectors) + list(b.vectors))


def subspace_intersection(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Intersection via the kernel of ``[A^T | -B^T]``."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError("subspaces live in different ambient spaces")
    n = a.ambient_dim
    ka, kb = a.dim, b.dim
    rows = [{} for _ in range(n)]
    for i, v in enumerate(a.vectors):
        for j, x in enumerate(v):
            if x:
                rows[j][i] = x
    for i, v in enumerate(b.vectors):
        for j, x in enumerate(v):
            if x:
                rows[j][ka + i] = -x
    ker = kernel_rows(rows, ka + kb)
    out = []
    for coeffs in ker.vectors:
        w = [Fraction(0)] * n
        for i, c in enumerate(coeffs[:ka]):
            if c:
                for j, x in enumerate(a.vectors[i]):
                    if x:
                        w[j] += c * x
        out.append(w)
    return SubspaceBasis.span(n, out)


def coordinates(basis: SubspaceBasis, v: Sequence) -> tuple[Fraction, ...] | None:
    """Coefficients of ``v`` in the RREF basis, or None if ``v`` is outside the span."""
    if not subspace_membership(basis, v):
        return None
    return tuple(frac(v[p]) for p in basis.pivots)


class IncrementalSpan:
    """Growing span with cheap membership tests, used by saturation loops.

    Rows are kept in echelon form keyed by pivot (their smallest column).
    ``freeze()`` returns the canonical :class:`SubspaceBasis`.
    """

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self._rows: dict[int, dict[int, Fraction]] = {}

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        # each stored row only has columns >= its pivot, so one ascending pass suffices
        w = {j: frac(x) for j, x in v.items() if x}
        for p in sorted(self._rows):
            c = w.get(p)
            if not c:
                continue
            for j, x in self._rows[p].items():
                y = w.get(j, 0) - c * x
                if y:
                    w[j] = y
                else:
                    w.pop(j, None)
        return w

    def add(self, v: Mapping[int, Fraction]) -> bool:
        """Insert ``v``; True if it enlarged the span."""
        w = self._reduce(v)
        if not w:
            return False
        p = min(w)
        c = w[p]
        self._rows[p] = {j: x / c for j, x in w.items()}
        return True

    def __contains__(self, v: Mapping[int, Fraction]) -> bool:
        return not self._reduce(v)

    def freeze(self) -> SubspaceBasis:
        rows = list(self._rows.values())
        red, _ = _rref_rows(rows, self.ambient_dim)
        return SubspaceBasis(self.ambient_dim, tuple(_densify(r, self.ambient_dim) for r in red))
