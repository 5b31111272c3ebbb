"""Univariate polynomials and rational functions over Q, and truncated series.

Coefficient lists are dense, constant term first.  Rational functions are
gcd-reduced on construction (skippable when the caller has already cancelled
known factors) and the denominator is normalized to constant term 1 whenever
its constant term is nonzero.
"""

from __future__ import annotations

from fractions import Fraction


class PolyQ:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_terms(cls, terms):
        """terms: iterable of (exponent, coefficient)."""
        terms = list(terms)
        if not terms:
            return cls()
        size = max(e for e, _ in terms) + 1
        cs = [Fraction(0)] * size
        for e, c in terms:
            cs[e] += Fraction(c)
        return cls(cs)

    @classmethod
    def one_minus_tk(cls, k):
        return cls.from_terms([(0, 1), (k, -1)])

    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyQ([self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyQ([self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return PolyQ([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PolyQ([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return PolyQ()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree()
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(0, len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = c / lead
            quot[i - dd] = q
            for j, d in enumerate(other.coeffs):
                rem[i - dd + j] -= q * d
        return PolyQ(quot), PolyQ(rem)

    def divides(self, other):
        _, r = divmod(other, self)
        return r.is_zero()

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, divmod(a, b)[1]
        if a.is_zero():
            return a
        return a * (1 / a.coeffs[-1])  # monic

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, PolyQ) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PolyQ({render_poly(self)})"

    def to_json(self):
        return [str(c) for c in self.coeffs]


def render_poly(p: PolyQ, var="t"):
    if p.is_zero():
        return "0"
    parts = []
    for e in range(p.degree(), -1, -1):
        c = p[e]
        if c == 0:
            continue
        if e == 0:
            term = str(c)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            if c == 1:
                term = mono
            elif c == -1:
                term = f"-{mono}"
            else:
                term = f"{c}*{mono}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


class RationalFunctionQ:
    __slots__ = ("num", "den")

    def __init__(self, num: PolyQ, den: PolyQ, reduce=True):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce and not num.is_zero():
            g = num.gcd(den)
            if g.degree() > 0:
                num = divmod(num, g)[0]
                den = divmod(den, g)[0]
        c0 = den[0]
        scale = 1 / c0 if c0 != 0 else 1 / den.coeffs[-1]
        self.num = num * scale
        self.den = den * scale

    def __eq__(self, other):
        """Exact equality as rational functions (cross-multiplication)."""
        return (self.num * other.den) == (self.den * other.num)

    def __add__(self, other):
        return RationalFunctionQ(self.num * other.den + other.num * self.den,
                                 self.den * other.den)

    def __repr__(self):
        return f"({render_poly(self.num)}) / ({render_poly(self.den)})"

    def series_coefficients(self, up_to):
        """First up_to+1 Taylor coefficients; requires den(0) != 0."""
        den = self.den
        assert den[0] != 0
        inv0 = 1 / den[0]
        out = []
        for i in range(up_to + 1):
            acc = self.num[i]
            for j in range(1, min(i, den.degree()) + 1):
                acc -= den[j] * out[i - j]
            out.append(acc * inv0)
        return out

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def polynomial_part(f: RationalFunctionQ):
    """Write f = p + r/q with deg r < deg q; returns (p, r/q).

    p(1) is the invariant used for the constants c_v.
    """
    p, r = divmod(f.num, f.den)
    return p, RationalFunctionQ(r, f.den, reduce=False)


class TruncatedSeries:
    """Truncated power series; coefficients are Fractions or CycloNumbers.

    Arithmetic never reads beyond the truncation bound.
    """

    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs, zero=Fraction(0)):
        self.coeffs = list(coeffs)
        self.zero = zero

    @property
    def bound(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __add__(self, other):
        n = min(len(self.coeffs), len(other.coeffs))
        return TruncatedSeries(
            [a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], self.zero)

    def __mul__(self, other):
        n = min(len(self.coeffs), len(other.coeffs))
        out = [self.zero] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a == self.zero:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b != self.zero:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out, self.zero)

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"TruncatedSeries({self.coeffs})"
