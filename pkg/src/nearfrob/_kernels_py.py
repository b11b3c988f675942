"""Pure-Python elimination kernels.

Rows are sparse ``{column: int}`` dicts.  Elimination is fraction-free:
every row is kept primitive (content 1, no denominators) and only the
final normalisation produces :class:`fractions.Fraction` entries.

This module is the reference backend; ``_kernels.pyx`` mirrors it line for
line and must return identical results.
"""

from fractions import Fraction
from math import gcd

BACKEND = "python"


def _primitive(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        for c in row:
            row[c] //= g
    return row


def integer_rows(rows):
    """Scale rational rows to primitive integer rows, dropping zero rows."""
    out = []
    for row in rows:
        den = 1
        for v in row.values():
            if v:
                d = Fraction(v).denominator
                den = den * d // gcd(den, d)
        irow = {}
        for c, v in row.items():
            if v:
                f = Fraction(v) * den
                irow[c] = f.numerator
        if irow:
            out.append(_primitive(irow))
    return out


def _combine(target, tcoef, source, scoef):
    # target := tcoef*target - scoef*source, in place; returns target
    if tcoef != 1:
        for c in target:
            target[c] *= tcoef
    for c, v in source.items():
        w = target.get(c, 0) - scoef * v
        if w:
            target[c] = w
        else:
            del target[c]
    return target


def rref_sparse(rows, ncols):
    """Reduced row echelon form of integer rows.

    Pivots are chosen column by column; within a column the candidate row
    with the smallest absolute entry wins (ties: fewer entries, then input
    order).  Returns ``(reduced_rows, pivots)`` where ``reduced_rows[k]`` is
    a dict of Fractions with a leading 1 at ``pivots[k]``.
    """
    rows = [dict(r) for r in rows if r]
    colmap = {}
    for ri, r in enumerate(rows):
        for c in r:
            colmap.setdefault(c, set()).add(ri)
    pivot_rows = []
    pivots = []
    used = set()
    for col in sorted(colmap):
        cand = [ri for ri in colmap[col] if ri not in used]
        if not cand:
            continue
        best = min(cand, key=lambda ri: (abs(rows[ri][col]), len(rows[ri]), ri))
        used.add(best)
        prow = rows[best]
        pv = prow[col]
        for ri in cand:
            if ri == best:
                continue
            r = rows[ri]
            v = r[col]
            g = gcd(pv, v)
            before = set(r)
            _combine(r, pv // g, prow, v // g)
            _primitive(r)
            after = set(r)
            for c in before - after:
                colmap[c].discard(ri)
            for c in after - before:
                colmap.setdefault(c, set()).add(ri)
        pivot_rows.append(best)
        pivots.append(col)
    # back substitution, last pivot first
    reduced = [rows[ri] for ri in pivot_rows]
    for k in range(len(reduced) - 1, -1, -1):
        prow = reduced[k]
        pcol = pivots[k]
        pv = prow[pcol]
        for j in range(k):
            r = reduced[j]
            v = r.get(pcol)
            if v:
                g = gcd(pv, v)
                _combine(r, pv // g, prow, v // g)
                _primitive(r)
    out = []
    for k, r in enumerate(reduced):
        pv = r[pivots[k]]
        out.append({c: Fraction(v, pv) for c, v in r.items()})
    return out, pivots


def rref_dense(rows, ncols):
    """Gauss-Jordan on dense Fraction lists; same pivot rule as the sparse path."""
    m = [[Fraction(v) for v in r] for r in rows]
    m = [r for r in m if any(r)]
    pivots = []
    prow = 0
    for col in range(ncols):
        cand = [i for i in range(prow, len(m)) if m[i][col] != 0]
        if not cand:
            continue
        best = min(cand, key=lambda i: (abs(m[i][col].numerator * m[i][col].denominator), i))
        m[prow], m[best] = m[best], m[prow]
        p = m[prow][col]
        if p != 1:
            m[prow] = [v / p for v in m[prow]]
        pr = m[prow]
        for i in range(len(m)):
            if i != prow:
                f = m[i][col]
                if f:
                    ri = m[i]
                    for c in range(col, ncols):
                        if pr[c]:
                            ri[c] -= f * pr[c]
        pivots.append(col)
        prow += 1
        if prow == len(m):
            break
    return m[:prow], pivots
