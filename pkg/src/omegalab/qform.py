"""Restricted quadratic forms q = zeta * q_Z on the coroot lattice.

Torsion scalars are additive exponents of a fixed primitive N-th root of
unity: residues mod N, or plain integers when ``order is None`` (N = inf).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from . import rootdata as rd
from .errors import DegenerateForm, InvalidForm, NonTorsion, NotNegativeCone
from .rootdata import CartanDatum


@dataclass(frozen=True)
class QFormSpec:
    cd: CartanDatum
    qz: tuple
    order: int | None  # None stands for a non-torsion zeta
    bz: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        n = self.cd.rank
        if len(self.qz) != n:
            raise InvalidForm("qz must have one entry per simple coroot")
        if self.order is not None and self.order < 1:
            raise InvalidForm("order must be a positive integer or None")
        a = self.cd.cartan
        bz = tuple(tuple(a[i][j] * self.qz[i] for j in range(n)) for i in range(n))
        for i in range(n):
            for j in range(n):
                if bz[i][j] != bz[j][i]:
                    raise InvalidForm(
                        f"restricted identity fails: b(a_{i},a_{j}) != b(a_{j},a_{i})"
                    )
        object.__setattr__(self, "bz", bz)

    def with_order(self, order):
        return QFormSpec(self.cd, self.qz, order)

    def inverse(self):
        """The form q^{-1}, i.e. q_Z negated."""
        return QFormSpec(self.cd, tuple(-v for v in self.qz), self.order)

    def reduce(self, value: int) -> int:
        return value if self.order is None else value % self.order

    def to_json(self):
        return {"type": self.cd.name, "qz": list(self.qz),
                "order": "inf" if self.order is None else self.order}


def q_min(cd: CartanDatum, order=None) -> QFormSpec:
    """The minimal W-invariant integral form: 1 on short coroots, d on long ones."""
    return QFormSpec(cd, rd.symmetrizer(cd), order)


def make_spec(cd: CartanDatum, order, qz=None) -> QFormSpec:
    return QFormSpec(cd, tuple(qz) if qz is not None else rd.symmetrizer(cd), order)


def is_minimal(spec: QFormSpec) -> bool:
    return tuple(spec.qz) == rd.symmetrizer(spec.cd)


def qz_of(spec: QFormSpec, lam) -> int:
    """Integer value q_Z(lam)."""
    n = spec.cd.rank
    total = 0
    for i in range(n):
        li = lam[i]
        if li:
            total += li * li * spec.qz[i]
            row = spec.bz[i]
            for j in range(i + 1, n):
                total += li * lam[j] * row[j]
    return total


def bz_of(spec: QFormSpec, lam, mu) -> int:
    n = spec.cd.rank
    return sum(lam[i] * mu[j] * spec.bz[i][j] for i in range(n) for j in range(n) if lam[i] and mu[j])


def q_of(spec: QFormSpec, lam) -> int:
    return spec.reduce(qz_of(spec, lam))


def b_of(spec: QFormSpec, lam, mu) -> int:
    return spec.reduce(bz_of(spec, lam, mu))


def ord_q(spec: QFormSpec, alpha):
    """Order of q(alpha) in Z/N; None means infinite."""
    v = qz_of(spec, alpha)
    if spec.order is None:
        if v == 0:
            raise DegenerateForm(f"q_Z({alpha}) = 0 with non-torsion zeta")
        return None
    return spec.order // gcd(spec.order, v)


def divides_order(spec: QFormSpec, alpha, m: int) -> bool:
    """Whether ord(q(alpha)) divides m."""
    o = ord_q(spec, alpha)
    return False if o is None else m % o == 0


def rho_pairing(cd: CartanDatum, alpha) -> int:
    """<rho, alpha^vee> for a positive coroot alpha, i.e. the height of the dual root."""
    d = rd.symmetrizer(cd)
    # alpha^vee is proportional to alpha / q_min(alpha); normalize via simple coroots
    qa = qz_of(q_min(cd), alpha)
    num = sum(c * d[i] for i, c in enumerate(alpha))
    if num % qa:
        raise AssertionError("dual root height is not integral")
    return num // qa


def predicates(spec: QFormSpec) -> dict:
    cd = spec.cd
    pos = rd.positive_coroots(cd)
    vals = [qz_of(spec, a) for a in pos]
    torsion = spec.order is not None
    if torsion:
        ords = [spec.order // gcd(spec.order, v) for v in vals]
        nondeg = all(o > 1 for o in ords)
    else:
        ords = [None if v != 0 else 1 for v in vals]
        nondeg = all(v != 0 for v in vals)

    def at_least(o, k):
        return o is None or o >= k

    def above(o, k):
        return o is None or o > k

    d = rd.lacing_number(cd)
    dmin = rd.symmetrizer(cd)
    long_vals = max(dmin)
    long_ords = [o for a, o in zip(pos, ords) if qz_of(q_min(cd), a) == long_vals]
    hts = [rho_pairing(cd, a) for a in pos]
    return {
        "nondegenerate": nondeg,
        "torsion_valued": torsion,
        "avoids_small_torsion": all(at_least(o, d + 1) for o in long_ords),
        "star": all(at_least(o, h) for o, h in zip(ords, hts)),
        "star_sharp": all(above(o, h) for o, h in zip(ords, hts)),
    }


def b_rho(spec: QFormSpec, lam) -> int:
    """Integer b_Z(lam, rho), extended linearly from b(a_i, rho) = q(a_i)."""
    return sum(c * v for c, v in zip(lam, spec.qz))


def wrho_value(spec: QFormSpec, lam) -> int:
    return spec.reduce(qz_of(spec, lam) + b_rho(spec, lam))


@dataclass(frozen=True)
class SharpData:
    orders: tuple
    sharp_simple: tuple
    sharp_positive_roots: tuple
    sharp_cartan: CartanDatum
    permutation: tuple

    def contains(self, lam) -> bool:
        return all(c % o == 0 for c, o in zip(lam, self.orders))


def sharp_data(spec: QFormSpec) -> SharpData:
    if spec.order is None:
        raise NonTorsion("the sharp lattice needs a torsion form")
    if not predicates(spec)["nondegenerate"]:
        raise DegenerateForm("sharp data needs a non-degenerate form")
    cd = spec.cd
    n = cd.rank
    ords = tuple(ord_q(spec, cd.simple(i)) for i in range(n))
    simple = tuple(rd.scale(o, cd.simple(i)) for i, o in enumerate(ords))
    roots = tuple(rd.scale(ord_q(spec, a), a) for a in rd.positive_coroots(cd))
    a = cd.cartan
    sharp = []
    for i in range(n):
        row = []
        for j in range(n):
            num = a[i][j] * ords[j]
            if num % ords[i]:
                raise AssertionError("sharp cartan entry is not integral")
            row.append(num // ords[i])
        sharp.append(row)
    std, perm = rd.identify_cartan(sharp)
    for g in simple:
        for j in range(n):
            if b_of(spec, g, cd.simple(j)) != 0:
                raise AssertionError("sharp lattice is not orthogonal to the lattice")
    return SharpData(ords, simple, roots, std, perm)


@dataclass(frozen=True)
class KummerCharacter:
    spec: QFormSpec
    values: tuple  # b(lam, a_j) for each simple coroot

    def __call__(self, mu) -> int:
        return self.spec.reduce(sum(v * c for v, c in zip(self.values, mu)))

    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.values)


def kummer_character(spec: QFormSpec, lam) -> KummerCharacter:
    cd = spec.cd
    return KummerCharacter(spec, tuple(b_of(spec, lam, cd.simple(j)) for j in range(cd.rank)))


def gerbe_exponents(spec: QFormSpec, lam) -> dict:
    if not rd.is_negative(lam):
        raise NotNegativeCone(f"{lam} is not in the negative cone")
    cd = spec.cd
    n = cd.rank
    return {
        "diag": tuple(spec.reduce(v) for v in spec.qz),
        "incidence": {(i, j): spec.reduce(spec.bz[i][j]) for i in range(n) for j in range(i + 1, n)},
        "main_diag": wrho_value(spec, lam),
    }


def w_invariance_holds(spec: QFormSpec, max_height: int = 6) -> bool:
    """Spot-check q_Z(s_i lam) = q_Z(lam) on the positive cone up to a height."""
    cd = spec.cd
    for lam in rd.weights_up_to_height(cd, max_height, 0):
        v = qz_of(spec, lam)
        if any(qz_of(spec, cd.reflect(lam, i)) != v for i in range(cd.rank)):
            return False
    return True
