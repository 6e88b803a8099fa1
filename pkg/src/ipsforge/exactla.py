"""Exact Gaussian elimination over FieldSpec fields.

Matrices are lists of rows of raw coefficient tuples (see gf.FieldElem.coeffs);
pivoting is deterministic (columns left to right, first nonzero row), so every
caller gets reproducible reductions, solutions, and certificates.
"""

from __future__ import annotations

from ipsforge import _kernel as kn
from ipsforge.gf import FieldSpec


def _axpy(row, factor, src, p, mod):
    """row -= factor * src, elementwise."""
    return [
        kn.vsub(r, kn.vmul(factor, s, p, mod), p) if any(s) else r
        for r, s in zip(row, src)
    ]


def rank(rows: list[list[tuple]], field: FieldSpec) -> int:
    if not rows:
        return 0
    p, mod = field.p, field.modulus
    work = [list(r) for r in rows]
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if any(work[i][c])), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = kn.vinv(work[r][c], p, mod)
        work[r] = [kn.vmul(inv, x, p, mod) for x in work[r]]
        for i in range(len(work)):
            if i != r and any(work[i][c]):
                work[i] = _axpy(work[i], work[i][c], work[r], p, mod)
        r += 1
        if r == len(work):
            break
    return r


def solve(rows: list[list[tuple]], rhs: list[tuple],
          field: FieldSpec) -> list[tuple] | None:
    """One solution of A x = rhs with free variables set to zero, or None."""
    p, mod = field.p, field.modulus
    zero = (0,) * field.k
    work = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if any(work[i][c])), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = kn.vinv(work[r][c], p, mod)
        work[r] = [kn.vmul(inv, x, p, mod) for x in work[r]]
        for i in range(len(work)):
            if i != r and any(work[i][c]):
                work[i] = _axpy(work[i], work[i][c], work[r], p, mod)
        pivots.append((r, c))
        r += 1
        if r == len(work):
            break
    for i in range(r, len(work)):
        if any(work[i][-1]):
            return None
    x = [zero] * ncols
    for row, col in pivots:
        x[col] = work[row][-1]
    return x


def invert(rows: list[list[tuple]], field: FieldSpec) -> list[list[tuple]] | None:
    """Inverse of a square matrix, or None if singular."""
    n = len(rows)
    p, mod = field.p, field.modulus
    zero, one = (0,) * field.k, (1,) + (0,) * (field.k - 1)
    work = [list(r) + [one if i == j else zero for j in range(n)]
            for i, r in enumerate(rows)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if any(work[i][c])), None)
        if pivot is None:
            return None
        work[c], work[pivot] = work[pivot], work[c]
        inv = kn.vinv(work[c][c], p, mod)
        work[c] = [kn.vmul(inv, x, p, mod) for x in work[c]]
        for i in range(n):
            if i != c and any(work[i][c]):
                work[i] = _axpy(work[i], work[i][c], work[c], p, mod)
    return [row[n:] for row in work]
