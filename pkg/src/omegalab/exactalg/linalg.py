"""Dense exact linear algebra over a NumberField."""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels


@dataclass
class ExactMatrix:
    """A rectangular matrix with entries in ``field``."""

    field: object
    rows: list
    ncols: int

    @property
    def nrows(self):
        return len(self.rows)

    @classmethod
    def from_rows(cls, field, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(field, rows, ncols)


def rref(field, rows, ncols):
    """Reduced row echelon form of ``rows``; returns ``(R, pivots)``.

    The input is not modified.  ``R`` has exactly ``rank`` rows.
    """
    work = [list(r) for r in rows]
    rank, pivots = kernels.rref(work, ncols, field.d, field.red, field.inv)
    return work[:rank], pivots


def rank(field, rows, ncols) -> int:
    if not rows:
        return 0
    return len(rref(field, rows, ncols)[1])


def kernel_from_rref(field, R, pivots, ncols):
    """Basis of the right kernel given a reduced echelon form."""
    free = [c for c in range(ncols) if c not in set(pivots)]
    zero, one = field.zero, field.one
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, p in enumerate(pivots):
            e = R[r][f]
            if any(e):
                v[p] = field.neg(e)
        basis.append(v)
    return basis


def rank_and_kernel(field, rows, ncols):
    R, pivots = rref(field, rows, ncols)
    return len(pivots), kernel_from_rref(field, R, pivots, ncols)


def matmul(field, A, B):
    """Product of matrices given as row lists."""
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [field.zero] * ncols
        for k in range(inner):
            a = row[k]
            if any(a):
                brow = B[k]
                for j in range(ncols):
                    b = brow[j]
                    if any(b):
                        acc[j] = field.add(acc[j], field.mul(a, b))
        out.append(acc)
    return out


def transpose(rows, ncols):
    return [[r[c] for r in rows] for c in range(ncols)]


def is_zero_matrix(rows) -> bool:
    return all(not any(e) for r in rows for e in r)


def complement_projection(field, R, pivots, ncols):
    """Coordinates on the quotient of K^ncols by the row space of R.

    Returns ``(P, free)``: ``P`` is a ``len(free) x ncols`` matrix whose
    kernel is the row space of ``R`` and whose restriction to the free
    columns is the identity.
    """
    pset = set(pivots)
    free = [c for c in range(ncols) if c not in pset]
    index = {c: k for k, c in enumerate(free)}
    P = [[field.zero] * ncols for _ in free]
    for c in free:
        P[index[c]][c] = field.one
    for r, p in enumerate(pivots):
        row = R[r]
        for c in free:
            e = row[c]
            if any(e):
                P[index[c]][p] = field.neg(e)
    return P, free


def left_dependency(field, rows, ncols):
    """A nonzero vector c with sum_k c_k rows[k] = 0, or None if independent."""
    n = len(rows)
    if n == 0:
        return None
    aug = [list(rows[k]) + [field.one if j == k else field.zero for j in range(n)] for k in range(n)]
    R, pivots = rref(field, aug, ncols + n)
    for r, p in enumerate(pivots):
        if p >= ncols:
            return R[r][ncols:]
    return None
