"""Bar/cobar complexes of graded augmented algebras and factorization fibers.

The cobar complex C^n(A)^mu is dual to the bar complex B_n(A)^mu, the sum
over compositions (mu_1, ..., mu_n) of mu into nonzero parts of
A^{mu_1} (x) ... (x) A^{mu_n}, with differential
d(a_1|...|a_n) = sum_k (-1)^k (... | a_k a_{k+1} | ...).  Dimensions of
H^n agree with those of H_n, which is what is computed.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dc_field

from . import qform as qf
from . import rootdata as rd
from .errors import BoundExceeded, NotNegativeCone
from .exactalg import rref
from .nichols.bicharacter import Bicharacter
from .nichols import slices as sl


def compositions(A, mu):
    """Compositions of mu into nonzero parts with nonzero pieces of A, grouped by length."""
    mu = tuple(mu)
    out = {}

    def rec(rest, prefix):
        if rd.height(rest) == 0:
            out.setdefault(len(prefix), []).append(tuple(prefix))
            return
        for part in _nonzero_below(rest):
            if A.dim(part):
                rec(rd.sub(rest, part), prefix + [part])

    rec(mu, [])
    return out


def _nonzero_below(mu):
    for w in rd._box(mu):
        if any(w):
            yield w


@dataclass
class BarComplex:
    """The bar complex of ``A`` in one weight, with sparse differentials."""

    algebra: object
    weight: tuple
    bases: dict = dc_field(default_factory=dict)  # n -> list of (composition, indices)
    index: dict = dc_field(default_factory=dict)  # n -> {(composition, indices): position}
    differentials: dict = dc_field(default_factory=dict)  # n -> list of sparse images in degree n-1

    def dim(self, n):
        return len(self.bases.get(n, ()))


def _tensor_basis(A, comp):
    dims = [A.dim(p) for p in comp]
    out = [()]
    for d in dims:
        out = [t + (b,) for t in out for b in range(d)]
    return out


def bar_complex(A, mu, check=True) -> BarComplex:
    mu = tuple(mu)
    if rd.height(mu) > A.height_bound:
        raise BoundExceeded(f"weight {mu} is above the height bound")
    f = A.field
    bc = BarComplex(A, mu)
    comps_by_length = compositions(A, mu)
    # lengths can skip values when merged parts land on zero pieces
    for n in range(1, max(comps_by_length, default=0) + 1):
        basis = [(c, t) for c in comps_by_length.get(n, ()) for t in _tensor_basis(A, c)]
        bc.bases[n] = basis
        bc.index[n] = {b: k for k, b in enumerate(basis)}
    for n in sorted(bc.bases):
        if n == 1:
            continue
        images = []
        target = bc.index[n - 1]
        for comp, idx in bc.bases[n]:
            img = {}
            for k in range(n - 1):
                P = A.product(comp[k], comp[k + 1])
                merged = rd.add(comp[k], comp[k + 1])
                vec = P[idx[k]][idx[k + 1]]
                new_comp = comp[:k] + (merged,) + comp[k + 2:]
                sign_odd = (k + 1) % 2 == 1
                for s, c in enumerate(vec):
                    if any(c):
                        key = target[(new_comp, idx[:k] + (s,) + idx[k + 2:])]
                        c = f.neg(c) if sign_odd else c
                        img[key] = f.add(img[key], c) if key in img else c
            images.append({k: v for k, v in img.items() if any(v)})
        bc.differentials[n] = images
    if check:
        assert_square_zero(bc)
    return bc


def assert_square_zero(bc: BarComplex):
    f = bc.algebra.field
    for n in bc.differentials:
        if n - 1 not in bc.differentials:
            continue
        lower = bc.differentials[n - 1]
        for img in bc.differentials[n]:
            acc = {}
            for k, c in img.items():
                for j, e in lower[k].items():
                    p = f.mul(c, e)
                    acc[j] = f.add(acc[j], p) if j in acc else p
            if any(any(v) for v in acc.values()):
                raise AssertionError(f"d^2 != 0 in bar degree {n}")


def _sparse_rank(f, images, ncols):
    rows = []
    for img in images:
        if img:
            row = [f.zero] * ncols
            for k, v in img.items():
                row[k] = v
            rows.append(row)
    if not rows:
        return 0
    return len(rref(f, rows, ncols)[1])


def cohomology_dims(A, mu, check=True) -> dict:
    """dim H^n of the cobar complex of A in weight mu, for n >= 1 (zeros omitted)."""
    bc = bar_complex(A, mu, check)
    f = A.field
    ranks = {}
    for n, imgs in bc.differentials.items():
        ranks[n] = _sparse_rank(f, imgs, bc.dim(n - 1))
    out = {}
    for n in bc.bases:
        h = bc.dim(n) - ranks.get(n, 0) - ranks.get(n + 1, 0)
        if h < 0:
            raise AssertionError("negative cohomology dimension")
        if h:
            out[n] = h
    return out


def euler_characteristic(A, mu) -> int:
    """Alternating sum of the dimensions of the composition spaces."""
    return sum((-1) ** n * sum(_count(A, comp) for comp in c)
               for n, c in compositions(A, mu).items())


def _count(A, comp):
    out = 1
    for p in comp:
        out *= A.dim(p)
    return out


def low_degree_homology(A, mu) -> int:
    """dim H_1 of the bar complex (indecomposables of A in weight mu)."""
    mu = tuple(mu)
    r = A.dim(mu)
    if r == 0:
        return 0
    f = A.field
    rows = []
    for mu1 in rd.weights_up_to_height(A.cd, rd.height(mu) - 1):
        mu2 = rd.sub(mu, mu1)
        if not rd.is_positive(mu2) or not any(mu2):
            continue
        if not A.dim(mu1) or not A.dim(mu2):
            continue
        for row in A.product(mu1, mu2):
            for vec in row:
                if any(any(c) for c in vec):
                    rows.append(list(vec))
    if not rows:
        return r
    return r - len(rref(f, rows, r)[1])


def _check_negative(lam):
    lam = tuple(lam)
    if not rd.is_negative(lam) or not any(lam):
        raise NotNegativeCone(f"{lam} is not a nonzero element of the negative cone")
    return rd.neg(lam)


def omega_shriek_fiber(A, lam, check=True) -> dict:
    return cohomology_dims(A, _check_negative(lam), check)


def omega_star_fiber(A, lam, check=True) -> dict:
    """Bar homology of the dual algebra in weight -lam, in degrees -n."""
    mu = _check_negative(lam)
    dims = cohomology_dims(A.dual(), mu, check)
    return {-n: d for n, d in dims.items()}


def omega_hyperbolic(A, lam) -> int:
    return A.dim(_check_negative(lam))


@dataclass
class FiberRecord:
    weight: tuple
    length: int | None
    shriek: dict
    star_h1: int
    checks: dict


def dk_theorem_report(spec: qf.QFormSpec, height_bound: int, method: str = "saturate",
                      full_star: bool = False) -> dict:
    """Check the fiber predicates of the DK factorization algebra up to a height."""
    preds = qf.predicates(spec)
    if not preds["star"]:
        warnings.warn("form does not satisfy (*); computing anyway", stacklevel=2)
    cd = spec.cd
    A = sl.dk_slice(Bicharacter(spec, True), height_bound, method)
    table = rd.kostant_table(cd)
    records = []
    violations = []
    dual = A.dual()
    for mu in rd.weights_up_to_height(cd, height_bound):
        lam = rd.neg(mu)
        length = table.get(mu)
        shriek = cohomology_dims(A, mu)
        expected = {length: 1} if length is not None else {}
        checks = {"a": shriek == expected}
        h1 = low_degree_homology(dual, mu)
        if length == 2:
            checks["b"] = h1 == 0
        elif length is not None and length >= 3 and preds["star_sharp"]:
            checks["b_prime"] = h1 == 0
        rec = FiberRecord(lam, length, shriek, h1, checks)
        if full_star:
            rec.checks["star_full"] = {-n: d for n, d in cohomology_dims(dual, mu).items()}
        records.append(rec)
        for name, ok in checks.items():
            if ok is False:
                violations.append({"weight": lam, "predicate": name})
    even = spec.order is not None and spec.order % 2 == 0
    return {
        "predicates": preds,
        "records": records,
        "violations": violations,
        "findings_only": even,
    }
