"""Exact Gaussian elimination over the scalar field (Q or Q(q)).

Matrices are lists of rows; entries are exact scalars.  Rational-only
matrices are delegated to FLINT's fmpq_mat, everything else uses a plain
row reduction.
"""

from fractions import Fraction

import flint

from .exactfield import RatFunc, as_scalar, sinv

__all__ = ["rref", "nullspace", "solve", "rank"]


def _is_rational(rows):
    return all(not isinstance(x, RatFunc) for r in rows for x in r)


def _to_fmpq(x):
    if isinstance(x, int):
        return flint.fmpq(x)
    return flint.fmpq(x.numerator, x.denominator)


def _from_fmpq(c):
    n, d = int(c.p), int(c.q)
    return n if d == 1 else Fraction(n, d)


def rref(rows, ncols=None):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0]) if ncols is None else ncols
    if _is_rational(rows):
        M = flint.fmpq_mat(len(rows), ncols, [_to_fmpq(x) for r in rows for x in r])
        R, rk = M.rref()
        out = [[_from_fmpq(R[i, j]) for j in range(ncols)] for i in range(rk)]
        piv = []
        for r in out:
            piv.append(next(j for j, x in enumerate(r) if x))
        return out, piv
    piv = []
    r = 0
    for c in range(ncols):
        p = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = sinv(rows[r][c])
        rows[r] = [as_scalar(x * inv) if x else 0 for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [as_scalar(x - f * y) if y else x for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], piv


def rank(rows, ncols=None):
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Basis of {x : M x = 0} as a list of vectors."""
    if not rows:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in piv]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, pc in zip(R, piv):
            if r[f]:
                v[pc] = as_scalar(-r[f])
        basis.append(v)
    return basis


def solve(rows, rhs, ncols):
    """One solution x of M x = rhs, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not aug:
        return [0] * ncols
    R, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [0] * ncols
    for r, pc in zip(R, piv):
        x[pc] = r[ncols]
    return x
