"""B(infinity) inside a semi-infinite tensor product of elementary crystals.

An element is a finitely supported sequence (a_1, a_2, ...) of nonnegative
integers; a_k sits on the elementary crystal of color i_k, with k counted
from the right.  For each position k of color i put
s_k = a_k + sum_{l > k} a_l <a_{i_l}, a_i^vee>; eps_i is the maximum of the
s_k, including positions of the vacuum tail (so it is >= 0).
The total operator (called ``e_geo`` here) raises a_k at the rightmost
maximizer; the partial one (``f_geo``) lowers a_k at the leftmost maximizer
and is undefined when eps_i = 0.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from . import qform as qf
from . import rootdata as rd
from .errors import BoundExceeded, NotMinimalForm, PredicateViolated, Undefined


@dataclass(frozen=True)
class IotaSeq:
    """Colors i_1, i_2, ... obtained by repeating ``base`` without bound."""

    base: tuple

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(self.base))
        if sorted(self.base) != list(range(len(self.base))):
            raise ValueError(f"iota base {self.base} is not a permutation")

    def color(self, k: int) -> int:
        """Color of position k (1-based, counted from the right)."""
        return self.base[(k - 1) % len(self.base)]

    @classmethod
    def default(cls, cd):
        return cls(tuple(range(cd.rank)))


@dataclass(frozen=True)
class CrystalElt:
    cd: rd.CartanDatum
    iota: IotaSeq
    entries: tuple  # a_1, a_2, ... with trailing zeros stripped

    def __post_init__(self):
        e = list(self.entries)
        while e and e[-1] == 0:
            e.pop()
        if any(a < 0 for a in e):
            raise ValueError("entries must be nonnegative")
        object.__setattr__(self, "entries", tuple(e))

    @property
    def weight(self) -> tuple:
        out = [0] * self.cd.rank
        for k, a in enumerate(self.entries, start=1):
            out[self.iota.color(k)] -= a
        return tuple(out)

    def is_vacuum(self) -> bool:
        return not self.entries

    def to_json(self):
        return list(self.entries)


def vacuum(cd, iota=None) -> CrystalElt:
    return CrystalElt(cd, iota or IotaSeq.default(cd), ())


def _window(b: CrystalElt, pad: int = 2) -> int:
    """Number of positions covering the support plus ``pad`` vacuum periods."""
    r = len(b.iota.base)
    periods = -(-len(b.entries) // r) + pad
    return periods * r


def _scores(b: CrystalElt, i: int, pad: int = 2):
    """Pairs (k, s_k) for positions of color i in the window, right to left."""
    a = b.cd.cartan
    n = _window(b, pad)
    entries = b.entries + (0,) * (n - len(b.entries))
    out = []
    shift = 0  # sum over positions strictly to the left
    for k in range(n, 0, -1):
        c = b.iota.color(k)
        if c == i:
            out.append((k, entries[k - 1] + shift))
        shift += entries[k - 1] * a[i][c]
    out.reverse()
    return out


def eps(b: CrystalElt, i: int, pad: int = 2) -> int:
    return max(s for _, s in _scores(b, i, pad))


def phi_geo(b: CrystalElt, i: int) -> int:
    return eps(b, i)


def eps_vector(b: CrystalElt) -> tuple:
    return tuple(eps(b, i) for i in range(b.cd.rank))


def _replace(b, k, delta):
    e = list(b.entries) + [0] * max(0, k - len(b.entries))
    e[k - 1] += delta
    return CrystalElt(b.cd, b.iota, tuple(e))


def f_geo(b: CrystalElt, i: int, pad: int = 2) -> CrystalElt:
    """Lower the entry at the leftmost maximizer; weight goes up by a_i."""
    sc = _scores(b, i, pad)
    top = max(s for _, s in sc)
    if top <= 0:
        raise Undefined(f"eps_{i} vanishes")
    k = max(k for k, s in sc if s == top)
    if k > len(b.entries) or b.entries[k - 1] == 0:
        raise Undefined("selected position lies in the vacuum tail")
    return _replace(b, k, -1)


def e_geo(b: CrystalElt, i: int, pad: int = 2) -> CrystalElt:
    """Raise the entry at the rightmost maximizer; weight goes down by a_i."""
    sc = _scores(b, i, pad)
    top = max(s for _, s in sc)
    k = min(k for k, s in sc if s == top)
    return _replace(b, k, 1)


@lru_cache(maxsize=None)
def _levels(cd, iota: IotaSeq, height: int) -> tuple:
    if height == 0:
        return (frozenset([vacuum(cd, iota)]),)
    prev = _levels(cd, iota, height - 1)
    nxt = set()
    for b in prev[-1]:
        for i in range(cd.rank):
            nxt.add(e_geo(b, i))
    return prev + (frozenset(nxt),)


def enumerate_weight(cd, lam, iota: IotaSeq | None = None, height_bound: int = 12) -> list:
    """All elements of weight ``lam``, sorted by entries."""
    lam = tuple(lam)
    if not rd.is_negative(lam):
        raise ValueError(f"{lam} is not in the negative cone")
    h = -rd.height(lam)
    if h > height_bound:
        raise BoundExceeded(f"height {h} exceeds {height_bound}")
    iota = iota or IotaSeq.default(cd)
    out = sorted((b for b in _levels(cd, iota, h)[h] if b.weight == lam), key=lambda b: b.entries)
    expected = rd.kostant_partitions(cd, rd.neg(lam))
    if len(out) != expected:
        raise PredicateViolated(
            f"{len(out)} elements of weight {lam}, expected {expected}", lam
        )
    return out


STRATEGIES = ("min", "max")


def string(b: CrystalElt, strategy: str = "min") -> list:
    """(j, m) steps driving b to the vacuum along eps-positive directions."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    steps = []
    while not b.is_vacuum():
        ev = eps_vector(b)
        pos = [j for j, e in enumerate(ev) if e > 0]
        j = pos[0] if strategy == "min" else pos[-1]
        m = ev[j]
        for _ in range(m):
            b = f_geo(b, j)
        steps.append((j, m))
    return steps


def _require_minimal(spec):
    target = rd.symmetrizer(spec.cd)
    if tuple(spec.reduce(v) for v in spec.qz) != tuple(spec.reduce(v) for v in target):
        raise NotMinimalForm(f"q_Z = {spec.qz} is not the minimal form")


def classify(b: CrystalElt, spec: qf.QFormSpec, strategy: str = "min") -> dict:
    _require_minimal(spec)
    cd = b.cd
    lam = b.weight
    ev = eps_vector(b)
    scrutiny = tuple(j for j, e in enumerate(ev) if e >= 1)
    suspicious = len(scrutiny) == 1 and ev[scrutiny[0]] == 1
    steps = string(b, strategy)
    qmin = rd.symmetrizer(cd)
    exponents = [m * qmin[j] for j, m in steps]
    N = spec.order
    simple = -rd.height(lam) == 1
    indicted = (
        suspicious
        and not simple
        and N is not None
        and all(e % N == 0 for e in exponents[1:])
    )
    rec = {
        "entries": list(b.entries),
        "eps": list(ev),
        "scrutiny_set": list(scrutiny),
        "suspicious": suspicious,
        "indicted": indicted,
        "string": [list(s) for s in steps],
        "exponents": exponents,
    }
    if suspicious:
        i = scrutiny[0]
        hw = rd.fundamental_coweight(cd, i)
        rec["weight_filter"] = rd.is_weight_of(cd, hw, rd.add(hw, lam))
        if N is not None and qf.predicates(spec)["nondegenerate"]:
            sd = qf.sharp_data(spec)
            up = list(lam)
            up[i] += 1
            rec["sharp_conditions"] = [sd.contains(tuple(up)), not sd.contains(lam)]
    return rec


def indicted_search(cd, spec: qf.QFormSpec, height_bound: int, iota: IotaSeq | None = None,
                    strategy: str = "min", max_height: int = 12) -> dict:
    """Scrutiny/suspicion/indictment counts for every weight of height 2..bound."""
    _require_minimal(spec)
    if height_bound > max_height:
        raise BoundExceeded(f"height {height_bound} exceeds {max_height}")
    iota = iota or IotaSeq.default(cd)
    weights = []
    violations = []
    for mu in rd.weights_up_to_height(cd, height_bound, min_height=2):
        lam = rd.neg(mu)
        elts = enumerate_weight(cd, lam, iota, max_height)
        recs = [classify(b, spec, strategy) for b in elts]
        entry = {
            "weight": list(lam),
            "components": len(recs),
            "under_scrutiny": sum(1 for r in recs if len(r["scrutiny_set"]) == 1),
            "suspicious": sum(1 for r in recs if r["suspicious"]),
            "indicted": sum(1 for r in recs if r["indicted"]),
            "suspects": [r for r in recs if r["suspicious"]],
        }
        for r in entry["suspects"]:
            if not r["weight_filter"]:
                violations.append({"weight": list(lam), "predicate": "weight_filter"})
            if r["indicted"] and "sharp_conditions" in r and not all(r["sharp_conditions"]):
                violations.append({"weight": list(lam), "predicate": "sharp_conditions"})
        weights.append(entry)
    return {
        "iota": list(iota.base),
        "strategy": strategy,
        "weights": weights,
        "indicted_weights": [w["weight"] for w in weights if w["indicted"]],
        "violations": violations,
    }


def indicted_signature(cd, spec, height_bound, iota=None, strategy="min") -> dict:
    """Per weight, the multiset of (eps vector, indicted) for intrinsicness checks.

    Elements are compared through invariants of the abstract crystal, so the
    result can be matched across different iota orders.
    """
    rep = {}
    iota = iota or IotaSeq.default(cd)
    for mu in rd.weights_up_to_height(cd, height_bound, min_height=2):
        lam = rd.neg(mu)
        elts = enumerate_weight(cd, lam, iota)
        c = Counter()
        for b in elts:
            r = classify(b, spec, strategy)
            if r["indicted"]:
                c[_intrinsic_key(b)] += 1
        rep[lam] = c
    return rep


def _intrinsic_key(b: CrystalElt) -> tuple:
    """Path back to the vacuum along smallest eps-positive colors, one step at a time.

    This identifies an element of the abstract crystal independently of the
    realization.
    """
    path = []
    while not b.is_vacuum():
        ev = eps_vector(b)
        j = next(j for j, e in enumerate(ev) if e > 0)
        path.append((j, ev))
        b = f_geo(b, j)
    return tuple(path)
