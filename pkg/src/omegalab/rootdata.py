"""Root-datum arithmetic on the coroot lattice.

Weights are integer tuples in the basis of simple coroots.  The pairing
with simple roots is ``<lam, a_i^vee> = sum_j cartan[i][j] * lam[j]`` and
``s_i(lam) = lam - <lam, a_i^vee> a_i``.  rho has half-integral
coordinates and is held as a tuple of Fractions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .errors import BoundExceeded, NotDominant, NotPositiveCone, OmegaLabError

Weight = tuple

DEFAULT_WEYL_BOUND = 2_000_000


def _bourbaki(family: str, n: int) -> list[list[int]]:
    # A[i][j] = <a_i^vee, a_j> in Bourbaki numbering
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        A[i][j] = aij
        A[j][i] = aji

    if family == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif family == "B":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -1, -2)
    elif family == "C":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -2, -1)
    elif family == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif family == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]:
            link(i, j)
    elif family == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif family == "G":
        link(0, 1, -1, -3)
    return A


_VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class CartanDatum:
    family: str
    rank: int
    cartan: tuple

    def __post_init__(self):
        a = self.cartan
        n = self.rank
        if len(a) != n or any(len(row) != n for row in a):
            raise OmegaLabError("cartan matrix has wrong shape")
        for i in range(n):
            if a[i][i] != 2:
                raise OmegaLabError("cartan diagonal must be 2")
            for j in range(n):
                if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                    raise OmegaLabError("not a generalized cartan matrix")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def pairing(self, lam, i: int):
        """<lam, a_i^vee> for a weight given in coroot coordinates."""
        row = self.cartan[i]
        return sum(row[j] * lam[j] for j in range(self.rank))

    def reflect(self, lam, i: int):
        p = self.pairing(lam, i)
        out = list(lam)
        out[i] -= p
        return tuple(out)

    def simple(self, i: int) -> Weight:
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def zero(self) -> Weight:
        return (0,) * self.rank

    def __str__(self):
        return self.name


def cartan_datum(family: str, rank: int | None = None) -> CartanDatum:
    """Build the datum for a simple type, e.g. ``cartan_datum("G", 2)`` or ``cartan_datum("G2")``."""
    if rank is None:
        family, rank = parse_type(family)
    family = family.upper()
    if family not in _VALID_RANKS or not _VALID_RANKS[family](rank):
        raise OmegaLabError(f"unsupported simple type {family}{rank}")
    A = _bourbaki(family, rank)
    # a[i][j] = <a_j, a_i^vee> is the transpose of the Bourbaki matrix
    a = tuple(tuple(A[j][i] for j in range(rank)) for i in range(rank))
    return CartanDatum(family, rank, a)


def parse_type(text: str) -> tuple[str, int]:
    text = text.strip()
    if len(text) < 2 or not text[1:].isdigit():
        raise OmegaLabError(f"cannot parse type {text!r}")
    return text[0].upper(), int(text[1:])


def height(lam) -> int:
    return sum(lam)


def is_positive(lam) -> bool:
    return all(c >= 0 for c in lam)


def is_negative(lam) -> bool:
    return all(c <= 0 for c in lam)


def add(lam, mu):
    return tuple(a + b for a, b in zip(lam, mu))


def sub(lam, mu):
    return tuple(a - b for a, b in zip(lam, mu))


def neg(lam):
    return tuple(-a for a in lam)


def scale(c, lam):
    return tuple(c * a for a in lam)


@lru_cache(maxsize=None)
def positive_coroots(cd: CartanDatum) -> tuple:
    """All positive coroots, sorted by height then coordinates."""
    seen = set()
    queue = deque(cd.simple(i) for i in range(cd.rank))
    while queue:
        r = queue.popleft()
        if r in seen:
            continue
        seen.add(r)
        for i in range(cd.rank):
            s = cd.reflect(r, i)
            if s not in seen:
                queue.append(s)
    pos = [r for r in seen if is_positive(r)]
    return tuple(sorted(pos, key=lambda r: (height(r), r)))


@lru_cache(maxsize=None)
def symmetrizer(cd: CartanDatum) -> tuple:
    """Minimal positive integers d_i with d_i a[i][j] = d_j a[j][i].

    These are the values of the minimal W-invariant form on simple coroots.
    """
    n = cd.rank
    a = cd.cartan
    vals: list = [None] * n
    vals[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and a[i][j] != 0:
                v = vals[i] * a[i][j] / a[j][i]
                if vals[j] is None:
                    vals[j] = v
                    stack.append(j)
                elif vals[j] != v:
                    raise OmegaLabError("cartan matrix is not symmetrizable")
    if any(v is None for v in vals):
        raise OmegaLabError("semisimple (disconnected) data is not supported")
    m = min(vals)
    vals = [v / m for v in vals]
    den = 1
    for v in vals:
        den = den * v.denominator // _gcd(den, v.denominator)
    return tuple(int(v * den) for v in vals)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def lacing_number(cd: CartanDatum) -> int:
    d = symmetrizer(cd)
    return max(d) // min(d)


@lru_cache(maxsize=None)
def rho(cd: CartanDatum) -> tuple:
    total = [Fraction(0)] * cd.rank
    for r in positive_coroots(cd):
        for k, c in enumerate(r):
            total[k] += c
    return tuple(t / 2 for t in total)


@lru_cache(maxsize=None)
def fundamental_coweight(cd: CartanDatum, i: int) -> tuple:
    """The rational weight w_i with <w_i, a_j^vee> = delta_ij."""
    n = cd.rank
    M = [[Fraction(cd.cartan[r][c]) for c in range(n)] + [Fraction(int(r == i))] for r in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return tuple(M[r][n] for r in range(n))


@dataclass(frozen=True)
class WeylElt:
    word: tuple
    length: int

    def act(self, cd: CartanDatum, lam):
        for i in reversed(self.word):
            lam = cd.reflect(lam, i)
        return lam


@lru_cache(maxsize=8)
def _weyl_cached(cd: CartanDatum, bound: int):
    two_rho = tuple(int(2 * c) for c in rho(cd))
    seen = {two_rho: ()}
    order = [()]
    frontier = [two_rho]
    while frontier:
        nxt = []
        for v in frontier:
            word = seen[v]
            for i in range(cd.rank):
                w = cd.reflect(v, i)
                if w not in seen:
                    seen[w] = (i,) + word
                    order.append(seen[w])
                    nxt.append(w)
                    if len(order) > bound:
                        raise BoundExceeded(f"|W({cd.name})| exceeds {bound}")
        frontier = nxt
    return tuple(WeylElt(word, len(word)) for word in order)


def weyl_group(cd: CartanDatum, bound: int = DEFAULT_WEYL_BOUND) -> tuple:
    """All Weyl group elements with reduced words, in order of length."""
    return _weyl_cached(cd, bound)


def w_rho_minus_rho(cd: CartanDatum, bound: int = DEFAULT_WEYL_BOUND) -> dict:
    two_rho = tuple(int(2 * c) for c in rho(cd))
    out = {}
    for w in weyl_group(cd, bound):
        v = w.act(cd, two_rho)
        out[w] = tuple((a - b) // 2 for a, b in zip(v, two_rho))
    return out


def kostant_table(cd: CartanDatum, bound: int = DEFAULT_WEYL_BOUND) -> dict:
    """Map rho - w(rho) (in the positive cone) to the length of w."""
    return {neg(lam): w.length for w, lam in w_rho_minus_rho(cd, bound).items()}


def kostant_partitions(cd: CartanDatum, mu) -> int:
    """Number of ways to write ``mu`` as a multiset sum of positive coroots."""
    mu = tuple(mu)
    if not is_positive(mu):
        raise NotPositiveCone(f"{mu} is not in the positive cone")
    return _kostant(cd, mu)


@lru_cache(maxsize=None)
def _kostant_box(cd: CartanDatum, box: tuple) -> dict:
    # coin-change DP over positive coroots for every weight below ``box``
    targets = [w for w in _box(box)]
    table = {w: 0 for w in targets}
    table[cd.zero()] = 1
    for r in positive_coroots(cd):
        for w in sorted(targets, key=height):
            prev = sub(w, r)
            if is_positive(prev):
                table[w] += table[prev]
    return table


def _kostant(cd, mu):
    return _kostant_box(cd, mu)[mu]


def _box(box):
    if not box:
        yield ()
        return
    for head in range(box[0] + 1):
        for rest in _box(box[1:]):
            yield (head,) + rest


def partitions_into(parts, mu) -> int:
    """Count multisets from ``parts`` (positive-cone vectors) summing to ``mu``."""
    mu = tuple(mu)
    table = {w: 0 for w in _box(mu)}
    table[tuple(0 for _ in mu)] = 1
    for r in parts:
        for w in sorted(table, key=height):
            prev = sub(w, r)
            if is_positive(prev):
                table[w] += table[prev]
    return table[mu]


def weights_up_to_height(cd: CartanDatum, max_height: int, min_height: int = 1) -> list:
    """Positive-cone weights with ``min_height <= height <= max_height``."""
    out = []

    def rec(prefix, remaining):
        if len(prefix) == cd.rank:
            h = height(prefix)
            if min_height <= h <= max_height:
                out.append(tuple(prefix))
            return
        for c in range(remaining + 1):
            rec(prefix + [c], remaining - c)

    rec([], max_height)
    return sorted(out, key=lambda w: (height(w), tuple(-c for c in w)))


def dominant_conjugate(cd: CartanDatum, lam):
    lam = tuple(lam)
    while True:
        for i in range(cd.rank):
            if cd.pairing(lam, i) < 0:
                lam = cd.reflect(lam, i)
                break
        else:
            return lam


def is_dominant(cd: CartanDatum, lam) -> bool:
    return all(cd.pairing(lam, i) >= 0 for i in range(cd.rank))


def is_weight_of(cd: CartanDatum, hw, mu) -> bool:
    """Whether ``mu`` is a weight of the irreducible with highest weight ``hw``."""
    hw = tuple(Fraction(c) for c in hw)
    if not is_dominant(cd, hw):
        raise NotDominant(f"{hw} is not dominant")
    dom = dominant_conjugate(cd, tuple(Fraction(c) for c in mu))
    diff = sub(hw, dom)
    return all(c.denominator == 1 and c >= 0 for c in diff)


def identify_cartan(matrix) -> tuple[CartanDatum, tuple]:
    """Find the simple type of a cartan matrix.

    Returns the standard datum and a permutation ``p`` with
    ``matrix[i][j] == std.cartan[p[i]][p[j]]``.
    """
    n = len(matrix)
    matrix = tuple(tuple(row) for row in matrix)
    for fam, ok in _VALID_RANKS.items():
        if not ok(n):
            continue
        std = cartan_datum(fam, n).cartan
        perm = _match(matrix, std)
        if perm is not None:
            return cartan_datum(fam, n), perm
    raise OmegaLabError("matrix is not of simple finite type")


def _match(m, std):
    n = len(m)
    if n <= 6:
        for p in permutations(range(n)):
            if all(m[i][j] == std[p[i]][p[j]] for i in range(n) for j in range(n)):
                return p
        return None
    # backtracking for larger ranks
    p = [None] * n
    used = [False] * n

    def rec(i):
        if i == n:
            return True
        for c in range(n):
            if used[c]:
                continue
            if all(m[i][k] == std[c][p[k]] and m[k][i] == std[p[k]][c] for k in range(i)):
                p[i] = c
                used[c] = True
                if rec(i + 1):
                    return True
                used[c] = False
        return False

    return tuple(p) if rec(0) else None
