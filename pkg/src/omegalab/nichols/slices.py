"""Graded quotients of the free braided algebra, piece by piece.

Every algebra is stored per weight mu as a coordinate map
``Q_mu : K[words(mu)] -> K^{r_mu}`` in reduced echelon form; its kernel is
the ideal in degree mu and its pivot words form a basis of the quotient.
Pieces are built by recursions that only touch small matrices:

* Nichols (Gram) kernel: x is in the kernel in degree mu iff every skew
  derivation d_i x lies in the kernel in degree mu - a_i, so
  ``Q_mu = rref(stack_i Q_{mu - a_i} d_i)``.
* Ideal generated by Serre elements: the quotient in degree mu is
  ``(+)_i A^{mu - a_i} e_i`` modulo the left multiples ``w S``.
* De Concini-Kac form: the Nichols recursion over the Laurent ring with each
  piece replaced by its (u-1)-saturation, then reduced at u = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .. import qform as qf
from .. import rootdata as rd
from ..errors import BoundExceeded, PredicateViolated, UndeterminedRank
from ..exactalg import (
    LaurentPoly,
    Q,
    complement_projection,
    field_for_order,
    kernel_from_rref,
    normalize_vector,
    rref,
    saturate_independent,
)
from .bicharacter import Bicharacter, coefficient
from .hopf import all_serre_elements, partial_coefficients, specialize_vector
from .words import splits, word_index, words_of

# Points u = t used to certify generic ranks (tried in order).
CERT_POINTS = (Fraction(2), Fraction(3), Fraction(-2), Fraction(5, 3), Fraction(7))


@dataclass
class Piece:
    mu: tuple
    words: tuple
    cols: list  # coordinates of each word in the quotient basis
    basis: list  # word indices forming the basis (pivot words)
    rows: list = dc_field(default=None, repr=False)  # Q_mu in echelon form

    @property
    def dim(self):
        return len(self.basis)


def piece_from_rows(field, mu, words, rows):
    """Normalize a coordinate map to reduced echelon form."""
    n = len(words)
    R, pivots = rref(field, rows, n) if rows else ([], [])
    cols = [tuple(R[r][c] for r in range(len(R))) for c in range(n)]
    return Piece(tuple(mu), words, cols, list(pivots), R)


def free_piece(field, cd, mu):
    ws = words_of(cd, mu)
    n = len(ws)
    rows = [[field.one if r == c else field.zero for c in range(n)] for r in range(n)]
    return Piece(tuple(mu), ws, [tuple(r) for r in rows], list(range(n)), rows)


def weights_below(cd, H):
    return [cd.zero()] + rd.weights_up_to_height(cd, H)


class AlgebraSlice:
    """A graded quotient of the free algebra truncated at a height bound."""

    def __init__(self, which, chi: Bicharacter, height_bound, pieces, info=None):
        self.which = which
        self.chi = chi
        self.cd = chi.cd
        self.field = chi.field
        self.height_bound = height_bound
        self.pieces = pieces
        self.info = info or {}
        self._prod = {}
        self._coprod = {}

    def __repr__(self):
        return f"AlgebraSlice({self.which}, {self.cd.name}, N={self.chi.spec.order}, H={self.height_bound})"

    def check_height(self, mu):
        if rd.height(mu) > self.height_bound:
            raise BoundExceeded(f"weight {mu} is above the height bound {self.height_bound}")

    def dim(self, mu) -> int:
        mu = tuple(mu)
        if not rd.is_positive(mu):
            return 0
        self.check_height(mu)
        return self.pieces[mu].dim

    def dims(self) -> dict:
        return {mu: p.dim for mu, p in self.pieces.items()}

    def basis_words(self, mu):
        p = self.pieces[tuple(mu)]
        return [p.words[b] for b in p.basis]

    def word_coords(self, mu, word):
        p = self.pieces[tuple(mu)]
        return p.cols[word_index(self.cd, p.mu)[tuple(word)]]

    def product(self, mu1, mu2):
        """``P[b1][b2]`` = coordinates of the product of basis elements."""
        key = (tuple(mu1), tuple(mu2))
        if key not in self._prod:
            p1, p2 = self.pieces[key[0]], self.pieces[key[1]]
            mu = rd.add(*key)
            self.check_height(mu)
            p = self.pieces[mu]
            idx = word_index(self.cd, mu)
            self._prod[key] = [
                [p.cols[idx[p1.words[b1] + p2.words[b2]]] for b2 in p2.basis] for b1 in p1.basis
            ]
        return self._prod[key]

    def coproduct(self, mu1, mu2):
        """``C[b]`` = coordinates (flattened b1 * r2 + b2) of the (mu1, mu2) component of Delta(b)."""
        key = (tuple(mu1), tuple(mu2))
        if key not in self._coprod:
            f = self.field
            mu = rd.add(*key)
            p = self.pieces[mu]
            p1, p2 = self.pieces[key[0]], self.pieces[key[1]]
            i1 = word_index(self.cd, key[0])
            i2 = word_index(self.cd, key[1])
            r1, r2 = p1.dim, p2.dim
            out = []
            for b in p.basis:
                w = p.words[b]
                acc = [f.zero] * (r1 * r2)
                for L, R in splits(w, key[0]):
                    a, _ = self.chi.split_exps(w, L, R)
                    c = f.zeta_power(a)
                    x = p1.cols[i1[tuple(w[k] for k in L)]]
                    y = p2.cols[i2[tuple(w[k] for k in R)]]
                    for s, xs in enumerate(x):
                        if any(xs):
                            cx = f.mul(c, xs)
                            for t, yt in enumerate(y):
                                if any(yt):
                                    acc[s * r2 + t] = f.add(acc[s * r2 + t], f.mul(cx, yt))
                out.append(acc)
            self._coprod[key] = out
        return self._coprod[key]

    def dual(self):
        return DualSlice(self)

    def ideal_basis(self, mu):
        """Basis of the ideal in degree mu (kernel of the coordinate map)."""
        p = self.pieces[tuple(mu)]
        return kernel_from_rref(self.field, p.rows, p.basis, len(p.words))


class DualSlice:
    """Graded dual: multiplication is the transpose of the coproduct and vice versa."""

    def __init__(self, base):
        self.base = base
        self.which = base.which + "_dual"
        self.cd = base.cd
        self.field = base.field
        self.chi = base.chi
        self.height_bound = base.height_bound
        self._prod = {}
        self._coprod = {}

    def __repr__(self):
        return f"DualSlice({self.base!r})"

    def dim(self, mu):
        return self.base.dim(mu)

    def dims(self):
        return self.base.dims()

    def product(self, mu1, mu2):
        key = (tuple(mu1), tuple(mu2))
        if key not in self._prod:
            C = self.base.coproduct(*key)
            r1, r2 = self.base.dim(key[0]), self.base.dim(key[1])
            self._prod[key] = [
                [tuple(C[b][s * r2 + t] for b in range(len(C))) for t in range(r2)] for s in range(r1)
            ]
        return self._prod[key]

    def coproduct(self, mu1, mu2):
        key = (tuple(mu1), tuple(mu2))
        if key not in self._coprod:
            P = self.base.product(*key)
            r1, r2 = self.base.dim(key[0]), self.base.dim(key[1])
            r = self.base.dim(rd.add(*key))
            self._coprod[key] = [[P[s][t][b] for s in range(r1) for t in range(r2)] for b in range(r)]
        return self._coprod[key]

    def dual(self):
        return self.base


# --- builders ---------------------------------------------------------------

def free_slice(chi: Bicharacter, H: int) -> AlgebraSlice:
    pieces = {mu: free_piece(chi.field, chi.cd, mu) for mu in weights_below(chi.cd, H)}
    return AlgebraSlice("free", chi, H, pieces)


def _point(field, t):
    """Field element for u = t; None stays None (u = 1)."""
    if t is None:
        return None
    return field.from_rational(Q(t.numerator, t.denominator)) if isinstance(t, Fraction) else t


def nichols_pieces(chi: Bicharacter, H: int, t=None) -> dict:
    """Pieces of the Nichols quotient (image of free in cofree) at u = t."""
    field = chi.field
    tt = _point(field, t)
    cd = chi.cd
    pieces = {}
    for mu in weights_below(cd, H):
        if rd.height(mu) == 0:
            pieces[mu] = free_piece(field, cd, mu)
            continue
        ws = words_of(cd, mu)
        n = len(ws)
        rows = []
        for i, entries in enumerate(partial_coefficients(chi, mu)):
            if not entries:
                continue
            lower = list(mu)
            lower[i] -= 1
            low = pieces[tuple(lower)]
            r = low.dim
            block = [[field.zero] * n for _ in range(r)]
            for wi, src, a, b in entries:
                c = coefficient(field, a, b, tt)
                col = low.cols[src]
                for s in range(r):
                    v = col[s]
                    if any(v):
                        block[s][wi] = field.add(block[s][wi], field.mul(c, v))
            rows.extend(block)
        pieces[mu] = piece_from_rows(field, mu, ws, rows)
    return pieces


def small_slice(chi: Bicharacter, H: int) -> AlgebraSlice:
    """The small quantum group u_q(n): Nichols quotient with u inactive."""
    chi0 = chi.specialized() if chi.generic else chi
    return AlgebraSlice("small", chi0, H, nichols_pieces(chi0, H, None))


def small_dim(chi: Bicharacter, mu) -> int:
    """Rank of the Gram matrix in degree mu; at generic u this is the certified generic rank."""
    mu = tuple(mu)
    H = rd.height(mu)
    if chi.generic:
        return certified_generic_ranks(chi, H)[mu]
    return nichols_pieces(chi, H, None)[mu].dim


def serre_quotient_pieces(chi: Bicharacter, H: int, t=None) -> dict:
    """Pieces of the free algebra modulo the Serre elements specialized at u = t."""
    field = chi.field
    tt = _point(field, t)
    cd = chi.cd
    gens = [specialize_vector(S, field, tt) for S in all_serre_elements(chi)]
    pieces = {}
    for mu in weights_below(cd, H):
        if rd.height(mu) == 0:
            pieces[mu] = free_piece(field, cd, mu)
            continue
        ws = words_of(cd, mu)
        # coordinates on V_mu = (+)_i A^{mu - a_i} e_i
        offsets = {}
        D = 0
        for i in range(cd.rank):
            lower = list(mu)
            lower[i] -= 1
            if lower[i] >= 0:
                offsets[i] = (D, pieces[tuple(lower)])
                D += pieces[tuple(lower)].dim

        def embed(word, acc, coef):
            off, low = offsets[word[-1]]
            col = low.cols[word_index(cd, low.mu)[word[:-1]]]
            for s, v in enumerate(col):
                if any(v):
                    acc[off + s] = field.add(acc[off + s], field.mul(coef, v))

        relations = []
        for S in gens:
            rest = rd.sub(mu, S.degree)
            if not rd.is_positive(rest):
                continue
            for x in words_of(cd, rest):
                acc = [field.zero] * D
                for w, c in S.coeffs.items():
                    embed(x + w, acc, c)
                if any(any(v) for v in acc):
                    relations.append(acc)
        R, pivots = rref(field, relations, D) if relations else ([], [])
        P, _ = complement_projection(field, R, pivots, D)
        rows = [[field.zero] * len(ws) for _ in P]
        for wi, w in enumerate(ws):
            e = [field.zero] * D
            embed(w, e, field.one)
            for r, prow in enumerate(P):
                acc = field.zero
                for s in range(D):
                    if any(e[s]) and any(prow[s]):
                        acc = field.add(acc, field.mul(prow[s], e[s]))
                rows[r][wi] = acc
        pieces[mu] = piece_from_rows(field, mu, ws, rows)
    return pieces


def serre_quotient_slice(chi: Bicharacter, H: int, t=None) -> AlgebraSlice:
    return AlgebraSlice("serre", chi, H, serre_quotient_pieces(chi, H, t))


_CERT_CACHE = {}


def certified_generic_ranks(chi: Bicharacter, H: int) -> dict:
    """Generic (u transcendental) Gram ranks, certified by two-sided bounds.

    At a rational point u = t, the Nichols rank is a lower bound and the
    dimension of the Serre quotient is an upper bound (the Serre products
    lie in the generic kernel).  Points are tried until the bounds agree.
    """
    if not chi.generic:
        raise ValueError("generic ranks need u active")
    key = (chi, H)
    if key in _CERT_CACHE:
        return _CERT_CACHE[key]
    pending = set(weights_below(chi.cd, H))
    result = {}
    for t in CERT_POINTS:
        if chi.spec.order is None and t == 2:
            continue  # zeta is modeled as 2 there
        lower = nichols_pieces(chi, H, t)
        upper = serre_quotient_pieces(chi, H, t)
        for mu in list(pending):
            lo, hi = lower[mu].dim, upper[mu].dim
            if lo > hi:
                raise AssertionError(f"rank bounds crossed at {mu}")
            if lo == hi:
                result[mu] = lo
                pending.discard(mu)
        if not pending:
            break
    if pending:
        raise UndeterminedRank(f"could not certify generic ranks at {sorted(pending)}")
    _CERT_CACHE[key] = result
    return result


def _eval_rows(field, rows, t):
    return [[p.evaluate(t) if p.terms else field.zero for p in r] for r in rows]


def dk_saturation(chi: Bicharacter, H: int, ranks=None):
    """De Concini-Kac pieces via the saturated Laurent recursion.

    Returns ``(pieces, T)`` where ``T[mu]`` is a (u-1)-saturated Laurent
    basis of the row space whose kernel is the generic ideal in degree mu.
    """
    if not chi.generic:
        raise ValueError("the DK form needs u active")
    field = chi.field
    cd = chi.cd
    ranks = ranks or certified_generic_ranks(chi, H)
    one = LaurentPoly.const(field, field.one)
    zero = LaurentPoly(field)
    T = {cd.zero(): [[one]]}
    pieces = {cd.zero(): free_piece(field, cd, cd.zero())}
    for mu in weights_below(cd, H)[1:]:
        ws = words_of(cd, mu)
        n = len(ws)
        rows = []
        for i, entries in enumerate(partial_coefficients(chi, mu)):
            if not entries:
                continue
            lower = list(mu)
            lower[i] -= 1
            for trow in T[tuple(lower)]:
                new = [zero] * n
                for wi, src, a, b in entries:
                    p = trow[src]
                    if p.terms:
                        new[wi] = new[wi] + p.mul_monomial(field.zeta_power(a), b)
                if any(x.terms for x in new):
                    rows.append(normalize_vector(new))
        target = ranks[mu]
        chosen = _independent_rows(field, rows, n, target, chi.spec.order)
        sat = saturate_independent(field, chosen, n)
        T[mu] = sat
        pieces[mu] = piece_from_rows(field, mu, ws, [[p.at_one() for p in r] for r in sat])
    return pieces, T


def _independent_rows(field, rows, n, target, order):
    """Pick ``target`` rows independent over K(u), certified at a rational point."""
    if target == 0:
        return []
    for t in CERT_POINTS:
        if order is None and t == 2:
            continue
        tt = field.from_rational(Q(t.numerator, t.denominator))
        vals = _eval_rows(field, rows, tt)
        # pivots of the transpose pick independent rows
        cols = [[vals[r][c] for r in range(len(rows))] for c in range(n)]
        _, piv = rref(field, cols, len(rows))
        if len(piv) == target:
            return [rows[r] for r in piv]
        if len(piv) > target:
            raise AssertionError("more independent rows than the certified rank")
    raise UndeterminedRank("could not find independent rows at the certification points")


def dk_slice(spec_or_chi, H: int, method: str = "saturate", check: bool = True) -> AlgebraSlice:
    """The De Concini-Kac form U^DK_q truncated at height H.

    ``method='saturate'`` runs the (u-1)-saturated recursion; ``'serre'``
    uses the Serre quotient at u = 1, valid where its dimensions match the
    certified generic ranks (checked, falling back to saturation).
    """
    chi = spec_or_chi if isinstance(spec_or_chi, Bicharacter) else Bicharacter(spec_or_chi, True)
    if not chi.generic:
        chi = Bicharacter(chi.spec, True, chi.lift)
    ranks = certified_generic_ranks(chi, H)
    info = {"method": method, "generic_ranks": ranks}
    pieces = None
    if method == "serre":
        sq = serre_quotient_pieces(chi, H, None)
        if all(sq[mu].dim == ranks[mu] for mu in sq):
            pieces = sq
        else:
            info["method"] = "saturate"
    if pieces is None:
        pieces, T = dk_saturation(chi, H, ranks)
        info["saturated"] = T
    sl = AlgebraSlice("dk", chi.specialized(), H, pieces, info)
    if check:
        for mu, p in pieces.items():
            k = rd.kostant_partitions(chi.cd, mu)
            if p.dim != k:
                raise PredicateViolated(f"dim U^DK in degree {mu} is {p.dim}, expected {k}", mu)
    return sl


def classical_slice(cd, H: int, method: str = "saturate") -> AlgebraSlice:
    """U(n) as the De Concini-Kac form at N = 1."""
    sl = dk_slice(qf.q_min(cd, 1), H, method)
    sl.which = "classical"
    return sl


def lusztig_dual_view(spec, H: int, method: str = "saturate"):
    """U^Lus_q accessed as the graded dual of U^DK at the inverse form."""
    return dk_slice(Bicharacter(spec.inverse(), True), H, method).dual()


# --- derived quantities -----------------------------------------------------

def serre_generates(chi: Bicharacter, H: int, dk=None) -> dict:
    """Per weight: does the Serre ideal at u = 1 equal the saturated ideal?"""
    chi = chi if chi.generic else Bicharacter(chi.spec, True, chi.lift)
    dk = dk or dk_slice(chi, H, "saturate", check=False)
    sq = serre_quotient_pieces(chi, H, None)
    out = {}
    for mu, p in dk.pieces.items():
        s = sq[mu]
        same_dim = s.dim == p.dim
        out[mu] = same_dim and s.basis == p.basis and all(
            a == b for ra, rb in zip(s.rows, p.rows) for a, b in zip(ra, rb)
        )
    return out


def dk_ideal(chi: Bicharacter, mu, dk=None) -> dict:
    """The DK ideal in degree mu: saturated dual data and the basis at u = 1."""
    mu = tuple(mu)
    H = rd.height(mu)
    dk = dk or dk_slice(chi, H, "saturate")
    p = dk.pieces[mu]
    spec_basis = dk.ideal_basis(mu)
    return {
        "degree": mu,
        "words": p.words,
        "rank": len(p.words) - p.dim,
        "dk_dim": p.dim,
        "specialized_basis": spec_basis,
        "saturated_coordinates": dk.info.get("saturated", {}).get(mu),
    }


def primitives(sl, mu) -> int:
    """Dimension of the intersection of kernels of the reduced coproduct components."""
    mu = tuple(mu)
    r = sl.dim(mu)
    if r == 0:
        return 0
    f = sl.field
    stack = []
    for mu1 in rd.weights_up_to_height(sl.cd, rd.height(mu) - 1):
        mu2 = rd.sub(mu, mu1)
        if not rd.is_positive(mu2) or rd.height(mu2) == 0:
            continue
        if sl.dim(mu1) == 0 or sl.dim(mu2) == 0:
            continue
        C = sl.coproduct(mu1, mu2)
        for k in range(len(C[0]) if C else 0):
            stack.append([C[b][k] for b in range(r)])
    if not stack:
        return r
    _, piv = rref(f, stack, r)
    return r - len(piv)


def coideal_defect(sl: AlgebraSlice, mu) -> int:
    """Number of ideal basis vectors whose coproduct leaves I (x) H + H (x) I (should be 0)."""
    mu = tuple(mu)
    f = sl.field
    p = sl.pieces[mu]
    bad = 0
    for x in sl.ideal_basis(mu):
        for mu1 in weights_below(sl.cd, rd.height(mu)):
            mu2 = rd.sub(mu, mu1)
            if not rd.is_positive(mu2):
                continue
            p1, p2 = sl.pieces[mu1], sl.pieces[tuple(mu2)]
            i1, i2 = word_index(sl.cd, mu1), word_index(sl.cd, tuple(mu2))
            acc = [f.zero] * (p1.dim * p2.dim)
            for wi, c in enumerate(x):
                if not any(c):
                    continue
                w = p.words[wi]
                for L, R in splits(w, mu1):
                    a, _ = sl.chi.split_exps(w, L, R)
                    cc = f.mul(c, f.zeta_power(a))
                    u = p1.cols[i1[tuple(w[k] for k in L)]]
                    v = p2.cols[i2[tuple(w[k] for k in R)]]
                    for s, us in enumerate(u):
                        if any(us):
                            cu = f.mul(cc, us)
                            for t, vt in enumerate(v):
                                if any(vt):
                                    acc[s * p2.dim + t] = f.add(acc[s * p2.dim + t], f.mul(cu, vt))
            if any(any(v) for v in acc):
                bad += 1
                break
    return bad


def sharp_partitions(spec, gamma) -> int:
    sd = qf.sharp_data(spec)
    return rd.partitions_into(sd.sharp_positive_roots, gamma)


def frobenius_dim_identity(spec, mu, small=None) -> bool:
    """K(mu) = sum over gamma in the sharp cone of K_sharp(gamma) * dim u_q^{mu - gamma}."""
    if spec.order is None:
        raise ValueError("the identity needs a torsion form")
    if not qf.predicates(spec)["avoids_small_torsion"]:
        raise PredicateViolated("form does not avoid small torsion", tuple(mu))
    mu = tuple(mu)
    sd = qf.sharp_data(spec)
    small = small or small_slice(Bicharacter(spec, False), rd.height(mu))
    total = 0
    for gamma in rd._box(mu):
        if not sd.contains(gamma):
            continue
        k = rd.partitions_into(sd.sharp_positive_roots, gamma)
        if k:
            total += k * small.dim(rd.sub(mu, gamma))
    return total == rd.kostant_partitions(spec.cd, mu)


def field_of(spec):
    return field_for_order(spec.order)
