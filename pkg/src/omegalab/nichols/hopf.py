"""Elements of the free braided algebra, its coproduct, Gram matrices, Serre elements."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from ..errors import UnexpectedKernelDim
from ..exactalg import LaurentPoly, frac_rank_and_kernel
from .bicharacter import Bicharacter, coefficient
from .words import degree, partial_table, splits, word_index, words_of


class _FieldRing:
    def __init__(self, field):
        self.field = field
        self.zero = field.zero
        self.one = field.one

    def add(self, a, b):
        return self.field.add(a, b)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def is_zero(self, a):
        return not any(a)


class _LaurentRing:
    def __init__(self, field):
        self.field = field
        self.zero = LaurentPoly(field)
        self.one = LaurentPoly.const(field, field.one)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return not a.terms


def ring_for(field, t):
    return _LaurentRing(field) if t == "u" else _FieldRing(field)


@dataclass
class GradedVector:
    """Sparse combination of words of one degree.

    ``t`` records the coefficient ring: ``'u'`` for Laurent polynomials,
    otherwise field elements (the value u was specialized to).
    """

    degree: tuple
    coeffs: dict = dc_field(default_factory=dict)
    t: object = None

    def items(self):
        return self.coeffs.items()


def comult(x: GradedVector, chi: Bicharacter) -> dict:
    """Braided coproduct of ``x``; keys are pairs of words ``(left, right)``.

    The coefficient of the split placing positions L on the left and R on
    the right is the product of chi(a_{w_l}, a_{w_k}) over l < k, l in R,
    k in L; this is the closed form of the recursion
    Delta(w e_i) = Delta(w) (e_i (x) 1 + 1 (x) e_i).
    """
    ring = ring_for(chi.field, x.t)
    out = {}
    for w, c in x.coeffs.items():
        n = len(w)
        for size in range(n + 1):
            for L in _subsets(n, size):
                Ls = set(L)
                R = tuple(p for p in range(n) if p not in Ls)
                a, b = chi.split_exps(w, L, R)
                coef = ring.mul(coefficient(chi.field, a, b, x.t), c)
                key = (tuple(w[p] for p in L), tuple(w[p] for p in R))
                out[key] = ring.add(out[key], coef) if key in out else coef
    return {k: v for k, v in out.items() if not ring.is_zero(v)}


def _subsets(n, size):
    from itertools import combinations

    return combinations(range(n), size)


@lru_cache(maxsize=None)
def partial_coefficients(chi: Bicharacter, mu) -> tuple:
    """Per i, entries ``(w_index, src_index, a, b)`` of the skew derivation d_i."""
    ws = words_of(chi.cd, mu)
    out = []
    for entries in partial_table(chi.cd, mu):
        out.append(tuple((wi, src, *chi.partial_exps(ws[wi], k)) for wi, src, k in entries))
    return tuple(out)


@lru_cache(maxsize=None)
def _gram_cached(chi, mu, t):
    cd = chi.cd
    ring = ring_for(chi.field, t)
    if sum(mu) == 0:
        return ((ring.one,),)
    ws = words_of(cd, mu)
    idx = word_index(cd, mu)
    n = len(ws)
    G = [[ring.zero] * n for _ in range(n)]
    for i, entries in enumerate(partial_coefficients(chi, mu)):
        if not entries:
            continue
        lower = list(mu)
        lower[i] -= 1
        lower = tuple(lower)
        Glow = _gram_cached(chi, lower, t)
        lws = words_of(cd, lower)
        cols = [idx[v + (i,)] for v in lws]
        for wi, src, a, b in entries:
            c = coefficient(chi.field, a, b, t)
            row = G[wi]
            for v, col in enumerate(cols):
                g = Glow[src][v]
                if not ring.is_zero(g):
                    row[col] = ring.add(row[col], ring.mul(c, g))
    return tuple(tuple(r) for r in G)


def pairing_gram(chi: Bicharacter, mu, t=None):
    """Gram matrix G[w][w'] of the free-to-cofree map in degree ``mu``.

    ``t`` is the value of u: ``None`` for u = 1, ``'u'`` for Laurent
    entries, or a field element.
    """
    return [list(r) for r in _gram_cached(chi, tuple(mu), t)]


def serre_degree(cd, i, j):
    """a_j + (1 - <a_j, a_i^vee>) a_i."""
    out = [0] * cd.rank
    out[j] += 1
    out[i] += 1 - cd.cartan[i][j]
    return tuple(out)


@lru_cache(maxsize=None)
def serre_element(chi: Bicharacter, i: int, j: int) -> GradedVector:
    """Generator of the generic Gram kernel in the Serre degree of (i, j)."""
    if i == j:
        raise ValueError("Serre elements need i != j")
    if not chi.generic:
        raise ValueError("Serre elements are computed at generic u")
    cd = chi.cd
    mu = serre_degree(cd, i, j)
    ws = words_of(cd, mu)
    n = len(ws)
    G = pairing_gram(chi, mu, "u")
    GT = [[G[r][c] for r in range(n)] for c in range(n)]
    rank, basis = frac_rank_and_kernel(chi.field, GT, n)
    if n - rank != 1:
        raise UnexpectedKernelDim(f"kernel in degree {mu} has dimension {n - rank}")
    v = basis[0]
    m = 1 - cd.cartan[i][j]
    lead_word = (i,) * m + (j,)
    lead = v[word_index(cd, mu)[lead_word]]
    coeffs = {}
    for w, p in zip(ws, v):
        if p.terms:
            coeffs[w] = p.divexact(lead)
    return GradedVector(mu, coeffs, "u")


def specialize_vector(x: GradedVector, field, t=None) -> GradedVector:
    """Evaluate a Laurent GradedVector at u = t (default 1)."""
    if x.t != "u":
        return x
    if t is None:
        vals = {w: p.at_one() for w, p in x.coeffs.items()}
    else:
        vals = {w: p.evaluate(t) for w, p in x.coeffs.items()}
    return GradedVector(x.degree, {w: c for w, c in vals.items() if any(c)}, t)


def all_serre_elements(chi: Bicharacter) -> list:
    r = chi.cd.rank
    return [serre_element(chi, i, j) for i in range(r) for j in range(r) if i != j]


__all__ = [
    "GradedVector",
    "comult",
    "pairing_gram",
    "partial_coefficients",
    "serre_degree",
    "serre_element",
    "specialize_vector",
    "all_serre_elements",
    "degree",
    "splits",
]
