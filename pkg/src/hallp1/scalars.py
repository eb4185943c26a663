"""Exact coefficients: Q(sqrt q), Laurent polynomials, rational functions.

Everything here is exact.  A ``Scalar`` is a + b*v with v*v = q, q a fixed
prime power carried on the value.  Plain ints and Fractions mix freely.
"""
from fractions import Fraction
from math import isqrt


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("cannot make a rational from %r" % (x,))


class Scalar:
    """Element a + b*v of Q(v), v^2 = q."""

    __slots__ = ("a", "b", "q")

    def __init__(self, a=0, b=0, q=2):
        a = _frac(a)
        b = _frac(b)
        r = isqrt(q)
        if r * r == q:
            # perfect square: v is rational, fold it in
            a += b * r
            b = Fraction(0)
        self.a = a
        self.b = b
        self.q = q

    @classmethod
    def v(cls, q, n=1):
        """v^n for any integer n."""
        return vpow(n, q)

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.q != self.q:
                raise ValueError("mixing scalars over q=%d and q=%d" % (self.q, other.q))
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(other, 0, self.q)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.q)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.a - o.a, self.b - o.b, self.q)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(self.a * other, self.b * other, self.q)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.a, self.b, o.a, o.b
        return Scalar(a * c + self.q * b * d, a * d + b * c, self.q)

    __rmul__ = __mul__

    def norm(self):
        return self.a * self.a - self.q * self.b * self.b

    def conj(self):
        return Scalar(self.a, -self.b, self.q)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("scalar %s is not invertible" % self)
        return Scalar(self.a / n, -self.b / n, self.q)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Scalar(self.a / other, self.b / other, self.q)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = Scalar(1, 0, self.q)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.q == other.q and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.q))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self):
        return self.b == 0

    def to_json(self):
        return {"a": _fstr(self.a), "b": _fstr(self.b)}

    @classmethod
    def from_json(cls, d, q):
        return cls(Fraction(d["a"]), Fraction(d.get("b", "0")), q)

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return "%s*v" % (self.b,)
        return "(%s + %s*v)" % (self.a, self.b)


def _fstr(x):
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator)


def vpow(n, q):
    """v^n as a Scalar (v^2 = q)."""
    if n >= 0:
        base = Fraction(q) ** (n // 2)
    else:
        base = Fraction(1, q) ** ((-n + 1) // 2)
    if n % 2 == 0:
        return Scalar(base, 0, q)
    # odd n: v^n = q^((n-1)/2) * v
    return Scalar(0, base, q)


def is_zero(c):
    return c == 0


def fdiv(x, y):
    """x / y staying exact when both are ints."""
    if isinstance(x, int) and isinstance(y, int):
        return Fraction(x, y)
    return x / y


# ---------------------------------------------------------------- Laurent polys

class LaurentPoly:
    """Finite map exponent -> coefficient, no stored zeros."""

    __slots__ = ("c", "var")

    def __init__(self, coeffs=None, var="t"):
        self.var = var
        self.c = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
            for e, x in items:
                if x != 0:
                    self.c[e] = x

    @classmethod
    def const(cls, x, var="t"):
        return cls({0: x}, var)

    @classmethod
    def monomial(cls, e, x=1, var="t"):
        return cls({e: x}, var)

    def copy(self):
        p = LaurentPoly(var=self.var)
        p.c = dict(self.c)
        return p

    def is_zero(self):
        return not self.c

    def low(self):
        return min(self.c) if self.c else None

    def high(self):
        return max(self.c) if self.c else None

    def __getitem__(self, e):
        return self.c.get(e, 0)

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other, self.var)
        out = dict(self.c)
        for e, x in other.c.items():
            y = out.get(e, 0) + x
            if y == 0:
                out.pop(e, None)
            else:
                out[e] = y
        p = LaurentPoly(var=self.var)
        p.c = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = LaurentPoly(var=self.var)
        p.c = {e: -x for e, x in self.c.items()}
        return p

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other, self.var)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if other == 0:
                return LaurentPoly(var=self.var)
            p = LaurentPoly(var=self.var)
            p.c = {e: x * other for e, x in self.c.items()}
            p.c = {e: x for e, x in p.c.items() if x != 0}
            return p
        out = {}
        for e1, x1 in self.c.items():
            for e2, x2 in other.c.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + x1 * x2
        p = LaurentPoly(var=self.var)
        p.c = {e: x for e, x in out.items() if x != 0}
        return p

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if len(self.c) != 1:
                raise ValueError("only monomials are invertible")
            (e, x), = self.c.items()
            return LaurentPoly.monomial(e * n, fdiv(1, x) ** -n, self.var)
        out = LaurentPoly.const(1, self.var)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k):
        p = LaurentPoly(var=self.var)
        p.c = {e + k: x for e, x in self.c.items()}
        return p

    def scale_var(self, s):
        """p(s*t)."""
        p = LaurentPoly(var=self.var)
        p.c = {e: x * _power(s, e) for e, x in self.c.items()}
        return p

    def invert_var(self, s=1):
        """p(s/t)."""
        p = LaurentPoly(var=self.var)
        p.c = {-e: x * _power(s, e) for e, x in self.c.items()}
        return p

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other, self.var)
        return self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items(), key=lambda kv: kv[0])))

    def __call__(self, x):
        out = 0
        for e, c in self.c.items():
            out = out + c * _power(x, e)
        return out

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c):
            parts.append("%r*%s^%d" % (self.c[e], self.var, e))
        return " + ".join(parts)


def _power(s, e):
    if e >= 0:
        return s ** e
    return fdiv(1, s ** (-e))


# polynomial helpers on coefficient lists (index = exponent, low to high)

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a, b):
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    qt = [0] * max(len(a) - len(b) + 1, 1)
    inv = fdiv(1, b[-1])
    _trim(a)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] * inv
        qt[k] = f
        for i, x in enumerate(b):
            a[i + k] = a[i + k] - f * x
        _trim(a)
    return _trim(qt), a


def _pgcd(a, b):
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    if not a:
        return a
    lead = a[-1]
    return [fdiv(x, lead) for x in a]


class RationalFn:
    """num/den with den(0) = 1 after shifting, gcd removed."""

    __slots__ = ("num", "den", "var")

    def __init__(self, num, den=None, var=None):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.const(num, var or "t")
        var = var or num.var
        if den is None:
            den = LaurentPoly.const(1, var)
        elif not isinstance(den, LaurentPoly):
            den = LaurentPoly.const(den, var)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.var = var
        self.num, self.den = _reduce(num, den, var)

    def __add__(self, other):
        o = _as_rfn(other, self.var)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den, self.var)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, self.var)

    def __sub__(self, other):
        return self + (-_as_rfn(other, self.var))

    def __rsub__(self, other):
        return _as_rfn(other, self.var) - self

    def __mul__(self, other):
        o = _as_rfn(other, self.var)
        return RationalFn(self.num * o.num, self.den * o.den, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_rfn(other, self.var)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFn(self.num * o.den, self.den * o.num, self.var)

    def __rtruediv__(self, other):
        return _as_rfn(other, self.var) / self

    def __eq__(self, other):
        o = _as_rfn(other, self.var)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def scale_var(self, s):
        return RationalFn(self.num.scale_var(s), self.den.scale_var(s), self.var)

    def invert_var(self, s=1):
        return RationalFn(self.num.invert_var(s), self.den.invert_var(s), self.var)

    def mul_monomial(self, e, x=1):
        return RationalFn(self.num * LaurentPoly.monomial(e, x, self.var), self.den, self.var)

    def den_degree(self):
        return self.den.high()

    def expand(self, n, start=None):
        """Power-series coefficients [c_start, ..., c_{start+n-1}] about t = 0."""
        lo = self.num.low()
        if start is None:
            start = lo if lo is not None else 0
        if self.num.is_zero():
            return [0] * n
        d = [self.den[i] for i in range(self.den.high() + 1)]
        # series s with den*s = num; s starts at exponent lo
        top = start + n
        out = {}
        for k in range(lo, top):
            acc = self.num[k]
            for i in range(1, len(d)):
                if d[i] != 0 and (k - i) in out:
                    acc = acc - d[i] * out[k - i]
            out[k] = acc  # d[0] == 1
        return [out.get(k, 0) for k in range(start, top)]

    def __repr__(self):
        return "(%r)/(%r)" % (self.num, self.den)


def _as_rfn(x, var):
    if isinstance(x, RationalFn):
        return x
    return RationalFn(x, None, var)


def _reduce(num, den, var):
    if num.is_zero():
        return LaurentPoly(var=var), LaurentPoly.const(1, var)
    ln, ld = num.low(), den.low()
    a = [num[i + ln] for i in range(num.high() - ln + 1)]
    b = [den[i + ld] for i in range(den.high() - ld + 1)]
    g = _pgcd(a, b)
    if len(g) > 1:
        a, r1 = _pdivmod(a, g)
        b, r2 = _pdivmod(b, g)
        assert not r1 and not r2
    c0 = b[0]
    a = [fdiv(x, c0) for x in a]
    b = [fdiv(x, c0) for x in b]
    n = LaurentPoly({i + ln - ld: x for i, x in enumerate(a)}, var)
    d = LaurentPoly(dict(enumerate(b)), var)
    return n, d


# ------------------------------------------------------- recurrence recognition

class RecurrenceError(ValueError):
    def __init__(self, msg, position):
        super().__init__(msg)
        self.position = position


class RecurrenceSeries:
    """Terms a_offset, a_offset+1, ... with a_n = sum_i rec[i] a_{n-1-i}."""

    def __init__(self, initial, rec, offset=0):
        self.initial = list(initial)
        self.rec = list(rec)
        self.offset = offset

    def terms(self, n):
        out = list(self.initial[:n])
        L = len(self.rec)
        while len(out) < n:
            k = len(out)
            out.append(sum((self.rec[i] * out[k - 1 - i] for i in range(L)), 0))
        return out

    def check(self, terms):
        return self.terms(len(terms)) == list(terms)


def berlekamp_massey(seq):
    """Shortest LFSR over a field.  Returns (L, C, first index where L grew past each value)."""
    C = [1]
    B = [1]
    L = 0
    m = 1
    b = 1
    grow = []
    for n in range(len(seq)):
        d = seq[n]
        for i in range(1, L + 1):
            d = d + C[i] * seq[n - i]
        if d == 0:
            m += 1
            continue
        coef = fdiv(d, b)
        T = list(C)
        if len(C) < len(B) + m:
            C = C + [0] * (len(B) + m - len(C))
        for i, x in enumerate(B):
            C[i + m] = C[i + m] - coef * x
        if 2 * L <= n:
            L = n + 1 - L
            grow.append((L, n))
            B = T
            b = d
            m = 1
        else:
            m += 1
    return L, C[:L + 1] + [0] * max(0, L + 1 - len(C)), grow


def series_to_rational(terms, max_order, offset=0, var="t", guard=1):
    """Minimal rational function whose expansion (from t^offset) matches ``terms``.

    Order means linear complexity: numerator degree < L, denominator degree <= L.
    The search is the Berlekamp-Massey form of the Hankel solve; the answer is
    re-expanded and compared against every supplied term before returning.
    """
    terms = list(terms)
    if len(terms) < 2 * max_order + guard:
        raise RecurrenceError("need at least %d terms, got %d" % (2 * max_order + guard, len(terms)), len(terms))
    L, C, grow = berlekamp_massey(terms)
    if L > max_order:
        pos = next(n for (l, n) in grow if l > max_order)
        raise RecurrenceError("no recurrence of order <= %d; fit breaks at term %d" % (max_order, pos + offset), pos + offset)
    C = C[:L + 1]
    den = LaurentPoly(dict(enumerate(C)), var)
    num = {}
    for k in range(L):
        acc = 0
        for i in range(0, min(k, L) + 1):
            acc = acc + C[i] * terms[k - i]
        num[k] = acc
    r = RationalFn(LaurentPoly(num, var).shift(offset), den, var)
    if r.expand(len(terms), offset) != terms:
        bad = next(i for i, (x, y) in enumerate(zip(r.expand(len(terms), offset), terms)) if x != y)
        raise RecurrenceError("re-expansion mismatch at term %d" % (bad + offset), bad + offset)
    return r
