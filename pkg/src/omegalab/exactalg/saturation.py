"""(u-1)-saturation of finitely generated submodules of a free Laurent module.

For a submodule M of R^n (R = K[u, 1/u]) the saturation is the set of x
with (u-1)^k x in M for some k.  It has the same K(u)-span as M, and R^n
modulo it has no (u-1)-torsion, so its values at u = 1 are linearly
independent.  Such a basis is computed by repeatedly dividing constant
combinations that vanish at u = 1 by powers of (u - 1).
"""

from __future__ import annotations

from .laurent import LaurentPoly, normalize_vector, poly_echelon
from .linalg import left_dependency


def vector_valuation(vec):
    vals = [p.valuation_at_one() for p in vec if p.terms]
    return min(vals) if vals else None


def _vector_degree(vec):
    return max((p.max_exp() for p in vec if p.terms), default=0)


def saturate_independent(field, rows, ncols):
    """Saturate generators that are linearly independent over K(u).

    Each step replaces one generator by ``(sum_k c_k g_k) / (u-1)^v`` where
    ``c`` is a constant dependency among the values at u = 1.  The
    (u-1)-adic valuation of the gcd of maximal minors drops by ``v`` each
    time, so the loop terminates.
    """
    rows = [normalize_vector(r) for r in rows]
    while True:
        values = [[p.at_one() for p in r] for r in rows]
        c = left_dependency(field, values, ncols)
        if c is None:
            return rows
        support = [k for k in range(len(rows)) if any(c[k])]
        j = max(support, key=lambda k: (_vector_degree(rows[k]), -k))
        h = [LaurentPoly(field) for _ in range(ncols)]
        for k in support:
            ck = c[k]
            for col in range(ncols):
                p = rows[k][col]
                if p.terms:
                    h[col] = h[col] + p.scale(ck)
        v = vector_valuation(h)
        if v is None:
            raise ValueError("generators are dependent over the fraction field")
        rows[j] = normalize_vector([p.div_hbar(v) for p in h])


def saturate_at_u1(field, generators, ambient_dim):
    """Basis of the (u-1)-saturation of the span of ``generators``.

    Generators may be dependent; a maximal independent subset over K(u) is
    selected by fraction-free elimination first.
    """
    gens = [list(g) for g in generators if any(p.terms for p in g)]
    if not gens:
        return []
    rank, prows, _ = poly_echelon(field, gens, ambient_dim)
    return saturate_independent(field, [gens[r] for r in prows], ambient_dim)


def reduction_at_one(field, basis):
    """Values at u = 1 of a saturated basis."""
    return [[p.at_one() for p in row] for row in basis]
