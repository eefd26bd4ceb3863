"""Laurent polynomials in u over a NumberField, and linear algebra over K(u)."""

from __future__ import annotations


class LaurentPoly:
    """Sparse Laurent polynomial: exponent -> field element, no zero terms."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = {e: c for e, c in (terms or {}).items() if any(c)}

    @classmethod
    def const(cls, field, c):
        return cls(field, {0: c})

    @classmethod
    def monomial(cls, field, c, e):
        return cls(field, {e: c})

    @classmethod
    def from_ints(cls, field, coeffs, shift=0):
        return cls(field, {shift + k: field.from_int(c) for k, c in enumerate(coeffs) if c})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        eq = self.field.equal
        return all(eq(c, other.terms[e]) for e, c in self.terms.items())

    def __repr__(self):
        parts = [f"{list(c)}*u^{e}" for e, c in sorted(self.terms.items())]
        return "LaurentPoly(" + (" + ".join(parts) or "0") + ")"

    def __add__(self, other):
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = f.add(out[e], c)
                if any(s):
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return _raw(f, out)

    def __neg__(self):
        f = self.field
        return _raw(f, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        f = self.field
        if isinstance(other, LaurentPoly):
            out = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    p = f.mul(c1, c2)
                    e = e1 + e2
                    out[e] = f.add(out[e], p) if e in out else p
            return LaurentPoly(f, out)
        return self.scale(other)

    def scale(self, c):
        f = self.field
        if not any(c):
            return _raw(f, {})
        return _raw(f, {e: f.mul(c, v) for e, v in self.terms.items()})

    def shift(self, k):
        return _raw(self.field, {e + k: c for e, c in self.terms.items()})

    def mul_monomial(self, c, k):
        f = self.field
        return _raw(f, {e + k: f.mul(c, v) for e, v in self.terms.items()})

    def min_exp(self):
        return min(self.terms) if self.terms else 0

    def max_exp(self):
        return max(self.terms) if self.terms else 0

    def degree(self):
        return self.max_exp() - self.min_exp() if self.terms else -1

    def lead(self):
        return self.terms[self.max_exp()]

    def evaluate(self, t):
        """Value at u = t for a field element t (nonzero if negative exponents occur)."""
        f = self.field
        if not self.terms:
            return f.zero
        lo = min(self.terms)
        hi = max(self.terms)
        acc = f.zero
        for e in range(hi, lo - 1, -1):
            acc = f.mul(acc, t)
            c = self.terms.get(e)
            if c is not None:
                acc = f.add(acc, c)
        if lo:
            acc = f.mul(acc, f.pow(t, lo))
        return acc

    def at_one(self):
        f = self.field
        acc = f.zero
        for c in self.terms.values():
            acc = f.add(acc, c)
        return acc

    def _dense(self):
        lo = min(self.terms)
        hi = max(self.terms)
        z = self.field.zero
        return lo, [self.terms.get(e, z) for e in range(lo, hi + 1)]

    def valuation_at_one(self):
        """Order of vanishing at u = 1 (None for the zero polynomial)."""
        if not self.terms:
            return None
        v = 0
        p = self
        while not any(p.at_one()):
            p = p.div_hbar(1)
            v += 1
        return v

    def div_hbar(self, e=1):
        """Exact division by (u - 1)^e."""
        f = self.field
        if not self.terms or e == 0:
            return self
        lo, coeffs = self._dense()
        for _ in range(e):
            # synthetic division by (u - 1), from the top
            n = len(coeffs) - 1
            q = [None] * n
            carry = f.zero
            for k in range(n, 0, -1):
                carry = f.add(carry, coeffs[k])
                q[k - 1] = carry
            if any(f.add(carry, coeffs[0])):
                raise ArithmeticError("not divisible by (u - 1)")
            coeffs = q
        return LaurentPoly(f, {lo + k: c for k, c in enumerate(coeffs)})

    def divexact(self, other):
        """Exact quotient self / other in the Laurent ring."""
        f = self.field
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return self
        lo_a, a = self._dense()
        lo_b, b = other._dense()
        if len(a) < len(b):
            raise ArithmeticError("inexact Laurent division")
        inv_lead = f.inv(b[-1])
        a = list(a)
        q = [f.zero] * (len(a) - len(b) + 1)
        for k in range(len(q) - 1, -1, -1):
            c = f.mul(a[k + len(b) - 1], inv_lead)
            q[k] = c
            if any(c):
                for t, bt in enumerate(b):
                    if any(bt):
                        a[k + t] = f.sub(a[k + t], f.mul(c, bt))
        if any(any(x) for x in a):
            raise ArithmeticError("inexact Laurent division")
        return LaurentPoly(f, {lo_a - lo_b + k: c for k, c in enumerate(q)})

    def normalized(self):
        """Shift so the lowest exponent is zero (multiplication by a unit u^k)."""
        return self.shift(-self.min_exp()) if self.terms else self

    def to_json(self):
        f = self.field
        return [[e, f.to_json(c)] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, field, data):
        return cls(field, {e: field.from_json(c) for e, c in data})


def _raw(field, terms):
    p = LaurentPoly.__new__(LaurentPoly)
    p.field = field
    p.terms = terms
    return p


def specialize_u(x, at):
    """Evaluate a LaurentPoly, or nested lists of them, at u = at."""
    if isinstance(x, LaurentPoly):
        return x.evaluate(at)
    return [specialize_u(y, at) for y in x]


def vector_min_exp(vec):
    exps = [p.min_exp() for p in vec if p.terms]
    return min(exps) if exps else 0


def normalize_vector(vec):
    """Multiply by the unit u^k making all entries polynomials with minimal shift."""
    k = vector_min_exp(vec)
    return [p.shift(-k) for p in vec] if k else list(vec)


# Linear algebra over the fraction field K(u) by fraction-free elimination.

def poly_echelon(field, M, ncols):
    """Fraction-free echelon form over K[u].

    Returns ``(rank, pivot_rows, pivot_cols)`` with original row indices.
    """
    rows = [normalize_vector(r) for r in M]
    idx = list(range(len(rows)))
    zero = LaurentPoly(field)
    one = LaurentPoly.const(field, field.one)
    prev = one
    rank = 0
    pcols = []
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        idx[rank], idx[piv] = idx[piv], idx[rank]
        p = rows[rank][c]
        for r in range(rank + 1, len(rows)):
            a = rows[r][c]
            new = []
            for j in range(ncols):
                if j < c:
                    new.append(zero)
                    continue
                v = p * rows[r][j] - a * rows[rank][j]
                new.append(v.divexact(prev) if v else v)
            rows[r] = new
        prev = p
        pcols.append(c)
        rank += 1
    return rank, idx[:rank], pcols


def poly_det(field, M):
    """Determinant of a square matrix of Laurent polynomials (Bareiss)."""
    n = len(M)
    if n == 0:
        return LaurentPoly.const(field, field.one)
    rows = [list(r) for r in M]
    sign = 1
    prev = LaurentPoly.const(field, field.one)
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if rows[r][k]), None)
        if piv is None:
            return LaurentPoly(field)
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        p = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = p * rows[i][j] - rows[i][k] * rows[k][j]
                rows[i][j] = v.divexact(prev) if v else v
            rows[i][k] = LaurentPoly(field)
        prev = p
    d = rows[n - 1][n - 1]
    return d if sign > 0 else -d


def frac_rank_and_kernel(field, M, ncols):
    """Rank over K(u) and a kernel basis with Laurent-polynomial entries."""
    rank, prows, pcols = poly_echelon(field, M, ncols)
    B = [[M[r][c] for c in pcols] for r in prows]
    det = poly_det(field, B)
    basis = []
    pset = set(pcols)
    for f in range(ncols):
        if f in pset:
            continue
        v = [LaurentPoly(field) for _ in range(ncols)]
        v[f] = det
        col = [M[r][f] for r in prows]
        for k, p in enumerate(pcols):
            Bk = [list(row) for row in B]
            for r in range(rank):
                Bk[r][k] = col[r]
            v[p] = -poly_det(field, Bk)
        basis.append(v)
    return rank, basis
