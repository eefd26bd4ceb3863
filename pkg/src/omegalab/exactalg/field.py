"""Coefficient fields Q[x]/(m) for a monic irreducible integer polynomial m.

Elements are tuples of rationals of length ``deg m``.  The cyclotomic
fields Q(zeta_N) use ``m = Phi_N``; a non-torsion root is modeled by the
field Q with zeta = 2 (``m = x - 2``).
"""

from __future__ import annotations

from functools import lru_cache

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q


def _poly_divexact(num, den):
    """Exact quotient of integer polynomials (coefficients low to high)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        c //= lead
        out[k] = c
        if c:
            for t, dt in enumerate(den):
                num[k + t] -= c * dt
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("conductor must be positive")
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _poly_divexact(p, cyclotomic_poly(d))
    return tuple(p)


class NumberField:
    """Arithmetic in Q[x]/(modulus) with elements as coefficient tuples."""

    def __init__(self, modulus, label, conductor=None):
        modulus = tuple(int(c) for c in modulus)
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.modulus = modulus
        self.d = len(modulus) - 1
        self.label = label
        self.conductor = conductor
        d = self.d
        # red[j] = coefficients of x^(d+j) reduced mod the modulus
        red = []
        cur = [-c for c in modulus[:-1]]
        for _ in range(max(d - 1, 0)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * m for c, m in zip(cur, modulus[:-1])]
        self.red = tuple(red)
        self.zero = tuple(Q(0) for _ in range(d))
        self.one = self.from_int(1)
        self._zeta_cache = {}

    def __repr__(self):
        return f"NumberField({self.label})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __reduce__(self):
        return (field_for_order, (self.conductor,))

    # construction
    def from_int(self, n):
        return (Q(n),) + tuple(Q(0) for _ in range(self.d - 1))

    def from_rational(self, q):
        return (Q(q),) + tuple(Q(0) for _ in range(self.d - 1))

    def from_coeffs(self, coeffs):
        coeffs = [Q(c) for c in coeffs]
        if len(coeffs) <= self.d:
            return tuple(coeffs) + tuple(Q(0) for _ in range(self.d - len(coeffs)))
        return self._reduce_list(coeffs)

    def _reduce_list(self, c):
        d = self.d
        c = list(c)
        # fold high powers down using the monic modulus
        for k in range(len(c) - 1, d - 1, -1):
            top = c[k]
            if top:
                for t in range(d):
                    m = self.modulus[t]
                    if m:
                        c[k - d + t] -= top * m
            c[k] = 0
        return tuple(Q(x) for x in c[:d]) + tuple(Q(0) for _ in range(d - len(c[:d])))

    def zeta_power(self, k: int):
        """The element x^k (for the non-torsion field this is 2^k)."""
        v = self._zeta_cache.get(k)
        if v is None:
            if self.conductor is not None:
                n = self.conductor
                e = k % n
                v = self._reduce_list([0] * e + [1])
            else:
                root = -self.modulus[0]
                v = self.from_rational(Q(root) ** k if k >= 0 else Q(1) / Q(root) ** (-k))
            self._zeta_cache[k] = v
        return v

    def gen_power(self, k: int):
        return self.zeta_power(k)

    # arithmetic
    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def scale(self, q, a):
        return tuple(q * x for x in a)

    def mul(self, a, b):
        d = self.d
        if d == 1:
            return (a[0] * b[0],)
        c = [0] * (2 * d - 1)
        for i in range(d):
            ai = a[i]
            if ai:
                for j in range(d):
                    bj = b[j]
                    if bj:
                        c[i + j] += ai * bj
        red = self.red
        for k in range(d, 2 * d - 1):
            ck = c[k]
            if ck:
                row = red[k - d]
                for t in range(d):
                    r = row[t]
                    if r:
                        c[t] += ck * r
        return tuple(Q(x) for x in c[:d])

    def is_zero(self, a) -> bool:
        return not any(a)

    def inv(self, a):
        d = self.d
        if d == 1:
            if not a[0]:
                raise ZeroDivisionError("inverse of zero")
            return (Q(1) / a[0],)
        # columns of the multiplication-by-a matrix are a * x^k
        cols = []
        cur = a
        xgen = self.from_coeffs([0, 1])
        for _ in range(d):
            cols.append(cur)
            cur = self.mul(cur, xgen)
        M = [[cols[k][r] for k in range(d)] + [Q(1 if r == 0 else 0)] for r in range(d)]
        for col in range(d):
            piv = next((r for r in range(col, d) if M[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("inverse of zero")
            M[col], M[piv] = M[piv], M[col]
            p = M[col][col]
            M[col] = [x / p for x in M[col]]
            for r in range(d):
                if r != col and M[r][col]:
                    f = M[r][col]
                    M[r] = [x - f * y for x, y in zip(M[r], M[col])]
        return tuple(M[r][d] for r in range(d))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        out = self.one
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def equal(self, a, b) -> bool:
        return all(x == y for x, y in zip(a, b))

    def to_json(self, a):
        return [[int(Q(x).numerator), int(Q(x).denominator)] for x in a]

    def from_json(self, data):
        return tuple(Q(n, d) for n, d in data)


@lru_cache(maxsize=None)
def cyclotomic_field(n: int) -> NumberField:
    return NumberField(cyclotomic_poly(n), f"Q(zeta_{n})", conductor=n)


@lru_cache(maxsize=None)
def nontorsion_field() -> NumberField:
    return NumberField((-2, 1), "Q[zeta=2]", conductor=None)


def field_for_order(order) -> NumberField:
    """Coefficient field carrying zeta of the given order (None: non-torsion)."""
    return nontorsion_field() if order is None else cyclotomic_field(order)
