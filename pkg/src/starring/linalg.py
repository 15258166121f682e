"""Exact dense linear algebra over a field (Z_p or the Gaussian rationals).

Matrices are row-major sequences of sequences; results come back as tuples of
tuples so they can be stored directly as element payloads.
"""
from __future__ import annotations

from typing import Sequence

Matrix = tuple[tuple, ...]


def _freeze(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def identity(k: int, field) -> Matrix:
    return _freeze([[field.one if i == j else field.zero for j in range(k)] for i in range(k)])


def zeros(rows: int, cols: int, field) -> Matrix:
    return _freeze([[field.zero] * cols for _ in range(rows)])


def transpose(a: Sequence[Sequence]) -> Matrix:
    return _freeze(zip(*a)) if a else ()


def conj_transpose(a: Sequence[Sequence], field) -> Matrix:
    return _freeze([[field.conj(x) for x in col] for col in zip(*a)])


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], field) -> Matrix:
    cols = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in cols:
            acc = field.zero
            for x, y in zip(row, col):
                if x and y:
                    acc = field.add(acc, field.mul(x, y))
            out_row.append(acc)
        out.append(out_row)
    return _freeze(out)


def rref(a: Sequence[Sequence], field, ncols: int | None = None):
    """Reduced row echelon form.

    Pivots are searched only in the first ``ncols`` columns (all by default),
    which lets callers reduce an augmented matrix ``[A | B]``.
    Returns ``(R, pivot_columns)``.
    """
    m = [list(r) for r in a]
    rows = len(m)
    width = len(m[0]) if rows else 0
    limit = width if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return _freeze(m), pivots


def rank(a: Sequence[Sequence], field) -> int:
    return len(rref(a, field)[1])


def solve_right(c: Sequence[Sequence], t: Sequence[Sequence], field) -> Matrix | None:
    """Some ``X`` with ``c @ X == t``, free variables set to zero; ``None`` if inconsistent."""
    k = len(c)
    n = len(c[0])
    q = len(t[0])
    aug = [list(c[i]) + list(t[i]) for i in range(k)]
    red, pivots = rref(aug, field, ncols=n)
    for i in range(len(pivots), k):
        if any(red[i][n:]):
            return None
    x = [[field.zero] * q for _ in range(n)]
    for i, pc in enumerate(pivots):
        x[pc] = list(red[i][n:])
    return _freeze(x)


def solve_left(c: Sequence[Sequence], t: Sequence[Sequence], field) -> Matrix | None:
    """Some ``Y`` with ``Y @ c == t``."""
    sol = solve_right(transpose(c), transpose(t), field)
    return None if sol is None else transpose(sol)


def inverse(a: Sequence[Sequence], field) -> Matrix | None:
    k = len(a)
    sol = solve_right(a, identity(k, field), field)
    if sol is None or rank(a, field) < k:
        return None
    return sol


def inner_inverse(a: Sequence[Sequence], field) -> Matrix:
    """A matrix ``g`` with ``a g a == a`` (matrices over a field are always regular).

    With ``E a = R`` in reduced echelon form, ``g = S E`` where ``S`` sends the
    i-th pivot row back to the i-th pivot column.
    """
    rows = len(a)
    cols = len(a[0])
    aug = [list(a[i]) + list(identity(rows, field)[i]) for i in range(rows)]
    red, pivots = rref(aug, field, ncols=cols)
    e = [r[cols:] for r in red]
    g = [[field.zero] * rows for _ in range(cols)]
    for i, pc in enumerate(pivots):
        g[pc] = list(e[i])
    return _freeze(g)
