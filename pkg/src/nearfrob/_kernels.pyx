# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled elimination kernels; same contract as ``_kernels_py``."""

from fractions import Fraction
from math import gcd

BACKEND = "cython"


cdef dict _primitive(dict row):
    cdef object g = 0
    cdef object v
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        for c in row:
            row[c] //= g
    return row


def integer_rows(list rows):
    cdef list out = []
    cdef dict row, irow
    cdef object den, d, v, f
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


cdef dict _combine(dict target, object tcoef, dict source, object scoef):
    cdef object c, v, w
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


def rref_sparse(list rows_in, Py_ssize_t ncols):
    cdef list rows = [dict(r) for r in rows_in if r]
    cdef dict colmap = {}
    cdef dict r, prow
    cdef Py_ssize_t ri, best, k, j, nrows
    cdef object col, pv, v, g, c
    cdef list cand, pivot_rows = [], pivots = [], reduced, out
    cdef set used = set(), before, after
    cdef tuple key, bkey
    nrows = len(rows)
    for ri in range(nrows):
        for c in <dict>rows[ri]:
            if c in colmap:
                (<set>colmap[c]).add(ri)
            else:
                colmap[c] = {ri}
    for col in sorted(colmap):
        cand = [x for x in <set>colmap[col] if x not in used]
        if not cand:
            continue
        best = -1
        bkey = None
        for ri in cand:
            r = <dict>rows[ri]
            key = (abs(r[col]), len(r), ri)
            if bkey is None or key < bkey:
                bkey = key
                best = ri
        used.add(best)
        prow = <dict>rows[best]
        pv = prow[col]
        for ri in cand:
            if ri == best:
                continue
            r = <dict>rows[ri]
            v = r[col]
            g = gcd(pv, v)
            before = set(r)
            _combine(r, pv // g, prow, v // g)
            _primitive(r)
            after = set(r)
            for c in before - after:
                (<set>colmap[c]).discard(ri)
            for c in after - before:
                if c in colmap:
                    (<set>colmap[c]).add(ri)
                else:
                    colmap[c] = {ri}
        pivot_rows.append(best)
        pivots.append(col)
    reduced = [rows[x] for x in pivot_rows]
    for k in range(len(reduced) - 1, -1, -1):
        prow = <dict>reduced[k]
        col = pivots[k]
        pv = prow[col]
        for j in range(k):
            r = <dict>reduced[j]
            v = r.get(col)
            if v:
                g = gcd(pv, v)
                _combine(r, pv // g, prow, v // g)
                _primitive(r)
    out = []
    for k in range(len(reduced)):
        r = <dict>reduced[k]
        pv = r[pivots[k]]
        out.append({c: Fraction(v, pv) for c, v in r.items()})
    return out, pivots


def rref_dense(rows_in, Py_ssize_t ncols):
    cdef list m = [[Fraction(v) for v in r] for r in rows_in]
    cdef list pivots = [], pr, ri, cand
    cdef Py_ssize_t prow = 0, col, i, c, best, nr
    cdef object p, f, x
    m = [r for r in m if any(r)]
    nr = len(m)
    for col in range(ncols):
        if prow == nr:
            break
        cand = [i for i in range(prow, nr) if (<list>m[i])[col] != 0]
        if not cand:
            continue
        best = min(cand, key=lambda i: (abs(m[i][col].numerator * m[i][col].denominator), i))
        m[prow], m[best] = m[best], m[prow]
        pr = <list>m[prow]
        p = pr[col]
        if p != 1:
            pr = [x / p for x in pr]
            m[prow] = pr
        for i in range(nr):
            if i != prow:
                ri = <list>m[i]
                f = ri[col]
                if f:
                    for c in range(col, ncols):
                        if pr[c]:
                            ri[c] -= f * pr[c]
        pivots.append(col)
        prow += 1
    return m[:prow], pivots
