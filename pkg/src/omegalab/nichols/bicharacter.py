"""Bicharacters chi(a_i, a_j) = zeta^{b'_Z(i,j)} u^{b'_min(i,j)}.

Coefficients are tracked as exponent pairs ``(a, b)`` of zeta and u and
only turned into field elements or Laurent monomials on demand.
"""

from __future__ import annotations

from functools import lru_cache

from .. import qform as qf
from .. import rootdata as rd
from ..exactalg import LaurentPoly, Q, field_for_order


def _upper_lift(n, diag, off):
    return tuple(
        tuple(diag[i] if i == j else (off[i][j] if i < j else 0) for j in range(n))
        for i in range(n)
    )


class Bicharacter:
    """Braiding data for the free algebra on e_1..e_r.

    ``generic`` switches the deformation variable u on.  ``lift`` selects
    the bilinear lift: ``"upper"`` (default) or ``"symmetric"`` (odd N only,
    u inactive).
    """

    def __init__(self, spec: qf.QFormSpec, generic: bool = True, lift: str = "upper"):
        self.spec = spec
        self.cd = spec.cd
        self.generic = generic
        self.lift = lift
        self.field = field_for_order(spec.order)
        n = self.cd.rank
        qmin = rd.symmetrizer(self.cd)
        bmin = qf.q_min(self.cd).bz
        if lift == "upper":
            self.ez = _upper_lift(n, spec.qz, spec.bz)
            self.eu = _upper_lift(n, qmin, bmin) if generic else ((0,) * n,) * n
        elif lift == "symmetric":
            N = spec.order
            if N is None or N % 2 == 0 or generic:
                raise ValueError("symmetric lift needs odd N and u inactive")
            half = pow(2, -1, N)
            self.ez = tuple(
                tuple(spec.qz[i] if i == j else (spec.bz[i][j] * half) % N for j in range(n))
                for i in range(n)
            )
            self.eu = ((0,) * n,) * n
        else:
            raise ValueError(f"unknown lift {lift!r}")

    def key(self):
        return (self.spec.cd.name, self.spec.qz, self.spec.order, self.generic, self.lift)

    def __eq__(self, other):
        return isinstance(other, Bicharacter) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def inverse(self):
        """The braiding at q^{-1}: zeta exponents negated, deformation kept."""
        return Bicharacter(self.spec.inverse(), self.generic, self.lift)

    def specialized(self):
        """Same data with u inactive."""
        return Bicharacter(self.spec, False, self.lift)

    def exps(self, lam, mu):
        """Exponents (a, b) with chi(lam, mu) = zeta^a u^b."""
        a = b = 0
        n = self.cd.rank
        for i in range(n):
            if lam[i]:
                for j in range(n):
                    if mu[j]:
                        a += lam[i] * mu[j] * self.ez[i][j]
                        b += lam[i] * mu[j] * self.eu[i][j]
        return a, b

    def value(self, lam, mu, t=None):
        """chi(lam, mu) as a field element at u = t (default 1), or a Laurent monomial if t is 'u'."""
        a, b = self.exps(lam, mu)
        return coefficient(self.field, a, b, t)

    def partial_exps(self, word, k):
        """Exponents of prod_{l > k} chi(a_{w_k}, a_{w_l})."""
        i = word[k]
        a = b = 0
        ez, eu = self.ez[i], self.eu[i]
        for l in range(k + 1, len(word)):
            a += ez[word[l]]
            b += eu[word[l]]
        return a, b

    def split_exps(self, word, L, R):
        """Exponents of prod over l < k, l in R, k in L of chi(a_{w_l}, a_{w_k})."""
        a = b = 0
        Ls = set(L)
        for l in R:
            il = word[l]
            for k in range(l + 1, len(word)):
                if k in Ls:
                    a += self.ez[il][word[k]]
                    b += self.eu[il][word[k]]
        return a, b


def coefficient(field, a, b, t=None):
    """zeta^a * t^b as a field element; a Laurent monomial when ``t == 'u'``."""
    z = field.zeta_power(a)
    if t == "u":
        return LaurentPoly.monomial(field, z, b)
    if t is None or b == 0:
        return z
    return field.mul(z, _tpow(field, t, b))


@lru_cache(maxsize=4096)
def _tpow_cached(field, t, b):
    return field.pow(t, b)


def _tpow(field, t, b):
    try:
        return _tpow_cached(field, t, b)
    except TypeError:  # unhashable t
        return field.pow(t, b)


def rational_point(field, value):
    return field.from_rational(Q(value))
