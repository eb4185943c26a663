"""Symmetric functions in N variables: monomial, power-sum, elementary and
Hall-Littlewood bases, the Macdonald scalar product and the Ch map.

A ``SymFn`` stores coefficients in one basis; conversions go through the
monomial basis by exact linear algebra.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .finitary import aut_partition, n_of, partitions
from .scalars import Scalar

BASES = ("monomial", "powerSum", "elementary", "hl")


def _sc(x, q):
    return x if isinstance(x, Scalar) else Scalar(x, 0, q)


class SymFn:
    __slots__ = ("basis", "coeffs", "N", "t", "q")

    def __init__(self, basis, coeffs, N, t=None, q=2):
        if basis not in BASES:
            raise ValueError("unknown basis %r" % basis)
        self.basis = basis
        self.N = N
        self.t = t
        self.q = t.q if isinstance(t, Scalar) else q
        self.coeffs = {}
        for lam, c in coeffs.items():
            c = _sc(c, self.q)
            if c:
                self.coeffs[tuple(lam)] = c

    def to_monomial(self):
        if self.basis == "monomial":
            return self
        out = {}
        for lam, c in self.coeffs.items():
            for mu, d in _basis_in_monomial(self.basis, lam, self.N, self.t, self.q).items():
                out[mu] = out.get(mu, 0) + c * d
        return SymFn("monomial", out, self.N, self.t, self.q)

    def to(self, basis, t=None):
        m = self.to_monomial()
        if basis == "monomial":
            return m
        t = t if t is not None else self.t
        out = {}
        for n in sorted(set(sum(l) for l in m.coeffs)):
            part = {l: c for l, c in m.coeffs.items() if sum(l) == n}
            for lam, c in _solve(basis, part, n, self.N, t, self.q).items():
                out[lam] = c
        return SymFn(basis, out, self.N, t, self.q)

    def __add__(self, other):
        a, b = self.to_monomial(), other.to_monomial()
        out = dict(a.coeffs)
        for k, c in b.coeffs.items():
            out[k] = out.get(k, 0) + c
        return SymFn("monomial", out, self.N, self.t, self.q)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        return SymFn(self.basis, {k: c * s for k, c in self.coeffs.items()}, self.N, self.t, self.q)

    def __mul__(self, other):
        if not isinstance(other, SymFn):
            return self.scale(other)
        a, b = _poly(self.to_monomial()), _poly(other.to_monomial())
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SymFn("monomial", _from_poly(out), self.N, self.t, self.q)

    def __eq__(self, other):
        return isinstance(other, SymFn) and self.to_monomial().coeffs == other.to_monomial().coeffs

    def to_json(self):
        d = {"basis": self.basis, "N": self.N,
             "coeffs": [{"mu": list(m), "c": c.to_json()} for m, c in sorted(self.coeffs.items())]}
        if self.t is not None:
            d["t"] = self.t.to_json()
        return d

    def __repr__(self):
        return "SymFn(%s, %s)" % (self.basis, {k: v for k, v in sorted(self.coeffs.items())})


def _poly(f):
    """Monomial-basis SymFn -> explicit polynomial {exponent tuple: coeff}."""
    out = {}
    for lam, c in f.coeffs.items():
        ex = tuple(lam) + (0,) * (f.N - len(lam))
        for e in set(permutations(ex)):
            out[e] = out.get(e, 0) + c
    return out


def _from_poly(p):
    out = {}
    for e, c in p.items():
        if c and list(e) == sorted(e, reverse=True):
            out[tuple(x for x in e if x)] = c
    return out


def _parts_upto(n, N):
    return [l for l in partitions(n) if len(l) <= N]


# ---------------------------------------------------------------- bases

def _monomial_poly(lam, N, q):
    return _poly(SymFn("monomial", {lam: 1}, N, q=q))


def power_sum(lam, N, q=2):
    p = {(0,) * N: Scalar(1, 0, q)}
    for d in lam:
        new = {}
        for e, c in p.items():
            for i in range(N):
                e2 = list(e)
                e2[i] += d
                e2 = tuple(e2)
                new[e2] = new.get(e2, 0) + c
        p = new
    return SymFn("monomial", _from_poly(p), N, q=q)


def elementary(lam, N, q=2):
    out = SymFn("monomial", {(): 1}, N, q=q)
    for k in lam:
        if k > N:
            return SymFn("monomial", {}, N, q=q)
        out = out * SymFn("monomial", {(1,) * k: 1}, N, q=q)
    return out


@lru_cache(maxsize=None)
def kostka(mu, nu):
    """Number of semistandard tableaux of shape mu and content nu."""
    if sum(mu) != sum(nu):
        return 0
    if not nu:
        return 1
    k = nu[-1]
    rest = nu[:-1]
    total = 0
    # remove a horizontal strip of size k from mu
    for inner in _horizontal_strips(mu, k):
        total += kostka(inner, rest)
    return total


def _horizontal_strips(mu, k):
    mu = list(mu)
    out = []

    def rec(i, left, acc):
        if i == len(mu):
            if left == 0:
                out.append(tuple(x for x in acc if x))
            return
        lo = mu[i + 1] if i + 1 < len(mu) else 0
        for r in range(0, min(left, mu[i] - lo) + 1):
            rec(i + 1, left - r, acc + [mu[i] - r])

    rec(0, k, [])
    return out


def _v_factor(m, t):
    out = t * 0 + 1
    for j in range(1, m + 1):
        out = out * (1 - t ** j) / (1 - t)
    return out


def hl_expand(mu, N, t):
    """P_mu(z_1..z_N; t) in the monomial basis.

    Antisymmetrise z^mu prod_{i<j}(z_i - t z_j); dividing by the Vandermonde
    turns each strictly decreasing exponent mu+delta into a Schur function,
    which the Kostka numbers expand into monomials.
    """
    mu = tuple(mu)
    if N < len(mu):
        raise ValueError("need N >= length of %r" % (mu,))
    q = t.q
    t = _sc(t, q)
    # polynomial prod_{i<j} (z_i - t z_j) times z^mu
    f = {tuple(mu) + (0,) * (N - len(mu)): Scalar(1, 0, q)}
    for i in range(N):
        for j in range(i + 1, N):
            new = {}
            for e, c in f.items():
                a = list(e)
                a[i] += 1
                a = tuple(a)
                new[a] = new.get(a, 0) + c
                b = list(e)
                b[j] += 1
                b = tuple(b)
                new[b] = new.get(b, 0) - c * t
            f = new
    delta = tuple(range(N - 1, -1, -1))
    schur = {}
    for e, c in f.items():
        if not c or len(set(e)) < N:
            continue
        order = sorted(range(N), key=lambda i: -e[i])
        sign = _perm_sign(order)
        alpha = tuple(e[i] for i in order)
        lam = tuple(a - d for a, d in zip(alpha, delta))
        lam = tuple(x for x in lam if x)
        schur[lam] = schur.get(lam, 0) + c * sign
    mult = {}
    for x in mu + (0,) * (N - len(mu)):
        mult[x] = mult.get(x, 0) + 1
    v = Scalar(1, 0, q)
    for m in mult.values():
        v = v * _v_factor(m, t)
    out = {}
    for lam, c in schur.items():
        if not c:
            continue
        for nu in _parts_upto(sum(lam), N):
            k = kostka(lam, nu)
            if k:
                out[nu] = out.get(nu, 0) + c * k
    return SymFn("monomial", {k: c / v for k, c in out.items()}, N, t)


def _perm_sign(order):
    sign = 1
    seen = [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j, L = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            L += 1
        if L % 2 == 0:
            sign = -sign
    return sign


def _basis_in_monomial(basis, lam, N, t, q):
    if basis == "monomial":
        return {lam: Scalar(1, 0, q)}
    if basis == "powerSum":
        return power_sum(lam, N, q).coeffs
    if basis == "elementary":
        return elementary(lam, N, q).coeffs
    if basis == "hl":
        return hl_expand(lam, N, t).coeffs
    raise ValueError(basis)


def _solve(basis, target, n, N, t, q):
    """Coefficients of target (monomial, weight n) in the given basis."""
    parts = _parts_upto(n, N)
    cols = [_basis_in_monomial(basis, lam, N, t, q) for lam in parts]
    M = [[cols[j].get(mu, Scalar(0, 0, q)) for j in range(len(parts))] + [_sc(target.get(mu, 0), q)]
         for mu in parts]
    x = _gauss(M, len(parts), q)
    return {lam: c for lam, c in zip(parts, x) if c}


def _gauss(M, n, q):
    M = [[_sc(x, q) for x in row] for row in M]
    for c in range(n):
        piv = next((r for r in range(c, len(M)) if M[r][c]), None)
        if piv is None:
            raise ValueError("basis change is singular (N too small for this weight?)")
        M[c], M[piv] = M[piv], M[c]
        inv = M[c][c].inverse()
        M[c] = [x * inv for x in M[c]]
        for r in range(len(M)):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[i][n] for i in range(n)]


def determinant(M, q):
    M = [[_sc(x, q) for x in row] for row in M]
    n = len(M)
    det = Scalar(1, 0, q)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Scalar(0, 0, q)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c]
        inv = M[c][c].inverse()
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] * inv
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return det


# ---------------------------------------------------------------- factors and pairing

def b_factor(mu, t):
    """b_mu(t) = prod_i phi_{m_i}(t)."""
    q = t.q if isinstance(t, Scalar) else 2
    t = _sc(t, q)
    out = Scalar(1, 0, q)
    for part in set(mu):
        for j in range(1, list(mu).count(part) + 1):
            out = out * (1 - t ** j)
    return out


def b_factor_from_aut(mu, qx):
    """q_x^(-|mu| - 2n(mu)) |Aut F_{x,mu}|, the same number through automorphism counts."""
    return Fraction(aut_partition(tuple(mu), qx), qx ** (sum(mu) + 2 * n_of(mu)))


def z_factor(lam):
    out = 1
    for part in set(lam):
        m = list(lam).count(part)
        out *= part ** m * factorial(m)
    return out


def macdonald_pair(f, g, t):
    """Bilinear form with (p_lam, p_mu) = delta z_lam prod 1/(1 - t^lam_i)."""
    q = t.q if isinstance(t, Scalar) else f.q
    t = _sc(t, q)
    a = f.to("powerSum")
    b = g.to("powerSum")
    out = Scalar(0, 0, q)
    for lam, c in a.coeffs.items():
        d = b.coeffs.get(lam)
        if d is None:
            continue
        w = Scalar(z_factor(lam), 0, q)
        for part in lam:
            w = w / (1 - t ** part)
        out = out + c * d * w
    return out


def ch_map(x, N=None):
    """Ch: torsion Hall algebra at one point -> symmetric functions.

    [F_mu] -> q_x^(-n(mu)) P_mu(z; 1/q_x).
    """
    bk = x.bk
    qx = bk.q
    t = Scalar(Fraction(1, qx), 0, qx)
    weight = max((sum(A.lam) for (_, A) in x.terms), default=0)
    N = N or max(weight, 1)
    out = SymFn("monomial", {}, N, t)
    for (k, A), c in x.terms.items():
        if any(k):
            raise ValueError("Ch is defined on object terms only")
        P = hl_expand(A.lam, N, t)
        out = out + P.scale(c * Fraction(1, qx ** n_of(A.lam)))
    return SymFn("monomial", out.coeffs, N, t)


def hl_structure_constant(lam, mu, nu, qx):
    """g^lam_{mu nu}(q_x) recovered from P_mu P_nu = sum f^lam_{mu nu}(t) P_lam at t = 1/q_x."""
    t = Scalar(Fraction(1, qx), 0, qx)
    N = max(sum(lam), 1)
    prod = hl_expand(mu, N, t) * hl_expand(nu, N, t)
    f = prod.to("hl", t).coeffs.get(tuple(lam), Scalar(0, 0, qx))
    return f * Fraction(qx ** n_of(lam), qx ** (n_of(mu) + n_of(nu)))


def cauchy_check(t, maxWeight, N, corrupt=False):
    """sum_mu b_mu P_mu(z) P_mu(w) = prod (1 - t z_i w_j)/(1 - z_i w_j) through weight maxWeight."""
    q = t.q
    cases = []
    lhs = {}
    for n in range(maxWeight + 1):
        for mu in _parts_upto(n, N):
            P = _poly(hl_expand(mu, N, t))
            b = b_factor(mu, t)
            if corrupt and mu == (1,):
                b = b + 1
            for e1, c1 in P.items():
                for e2, c2 in P.items():
                    k = e1 + e2
                    lhs[k] = lhs.get(k, 0) + b * c1 * c2
    # right side: prod over (i,j) of 1 + sum_{k>=1} (1-t) x^k, truncated
    rhs = {(0,) * (2 * N): Scalar(1, 0, q)}
    for i in range(N):
        for j in range(N):
            new = {}
            for e, c in rhs.items():
                deg = sum(e[:N])
                for k in range(0, maxWeight - deg + 1):
                    f = Scalar(1, 0, q) if k == 0 else (1 - t)
                    e2 = list(e)
                    e2[i] += k
                    e2[N + j] += k
                    e2 = tuple(e2)
                    new[e2] = new.get(e2, 0) + c * f
            rhs = new
    keys = sorted(set(lhs) | set(rhs))
    for k in keys:
        l = lhs.get(k, Scalar(0, 0, q))
        r = rhs.get(k, Scalar(0, 0, q))
        cases.append({"key": str(k), "status": "pass" if l == r else "fail", "lhs": str(l), "rhs": str(r)})
    ok = all(c["status"] == "pass" for c in cases)
    return {"suite": "symfun", "relation": "cauchy", "cases": cases, "status": "pass" if ok else "fail"}


def green_macdonald_check(qx, maxWeight=3, N=None):
    """Green pairing on the torsion Hall algebra against q_x^-d (Ch u1, Ch u2)_Macd."""
    from .finitary import TorsionLocal, Tor
    from .hallhopf import Elem, green_pair
    bk = TorsionLocal(qx)
    t = Scalar(Fraction(1, qx), 0, qx)
    N = N or max(maxWeight, 1)
    objs = [Tor(l) for n in range(maxWeight + 1) for l in partitions(n)]
    ch = {A: ch_map(Elem.obj(bk, A), N) for A in objs}
    cases = []
    for A in objs:
        for B in objs:
            g = green_pair(Elem.obj(bk, A), Elem.obj(bk, B))
            m = macdonald_pair(ch[A], ch[B], t)
            d = sum(A.lam)
            want = m * Fraction(1, qx ** d) if d == sum(B.lam) else Scalar(0, 0, qx)
            cases.append({"key": "%r,%r" % (A, B), "status": "pass" if g == want else "fail",
                          "lhs": str(g), "rhs": str(want)})
    ok = all(c["status"] == "pass" for c in cases)
    return {"suite": "symfun", "relation": "green-macdonald", "cases": cases, "status": "pass" if ok else "fail"}
