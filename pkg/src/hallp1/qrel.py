"""Quantum-group relations: Gaussian binomials, quantum Serre sums in quiver
Hall algebras, the quadratic Drinfeld relation on line bundles, and the
ordered-monomial basis of rank-2 pieces of the Hall algebra of P^1."""
from dataclasses import dataclass
from fractions import Fraction

from .autop1 import E_coeff, check_ee
from .finitary import CohP1, Window, coh
from .hallhopf import Elem, WindowInsufficient, b_mul, case, report
from .scalars import Scalar, vpow
from .symfun import determinant


def _one_like(x):
    if isinstance(x, Scalar):
        return Scalar(1, 0, x.q)
    return Fraction(1)


def gauss_binomial(m, l, x):
    """[m choose l] as a polynomial in x, evaluated at x."""
    if l < 0 or l > m:
        return 0 * _one_like(x)
    num = den = _one_like(x)
    for k in range(l):
        num = num * (1 - x ** (m - k))
        den = den * (1 - x ** (k + 1))
    return num / den


def balanced_binomial(m, l, q):
    """Bar-invariant binomial in v = q^(1/2): v^(-l(m-l)) [m choose l]_(v^2)."""
    return gauss_binomial(m, l, Scalar(q, 0, q)) * vpow(-l * (m - l), q)


@dataclass(frozen=True)
class OrderedMonomial:
    """[O(i1)]^m1 * [O(i2)]^m2 * ... with i1 > i2 > ..."""

    factors: tuple

    def __post_init__(self):
        degs = [i for i, _ in self.factors]
        if any(a <= b for a, b in zip(degs, degs[1:])):
            raise ValueError("degrees must strictly decrease")
        if any(m <= 0 for _, m in self.factors):
            raise ValueError("multiplicities must be positive")

    def rank(self):
        return sum(m for _, m in self.factors)

    def degree(self):
        return sum(i * m for i, m in self.factors)

    def expand(self, bk):
        out = Elem.one(bk)
        for i, m in self.factors:
            for _ in range(m):
                out = b_mul(out, E_coeff(bk, i))
        return out


def _power(x, n):
    out = Elem.one(x.bk)
    for _ in range(n):
        out = b_mul(out, x)
    return out


def serre_sum(Q, i, j):
    """sum_l (-1)^l [n, l] e_i^l e_j e_i^(n-l), n = 1 - a_ij, Ringel product."""
    if i == j:
        raise ValueError("Serre relation needs distinct vertices")
    a = Q.cartan()[i][j]
    n = 1 - a
    ei, ej = Elem.obj(Q, Q.simple(i)), Elem.obj(Q, Q.simple(j))
    tot = Elem(Q)
    for l in range(n + 1):
        c = balanced_binomial(n, l, Q.q) * (-1) ** l
        tot = tot + b_mul(b_mul(_power(ei, l), ej), _power(ei, n - l)).scale(c)
    return tot


def serre_check(Q, i=0, j=1):
    tot = serre_sum(Q, i, j)
    key = "%s q=%d (%d,%d)" % (Q.label, Q.q, i, j)
    if not tot:
        cases = [case(key, True)]
    else:
        cases = [case(key, False, repr(tot), "0")]
    return report("qrel", "5.2.9", cases)


def drinfeld_quadratic_check(bk, rng=3):
    """x(a)x(b+1) - q x(a+1)x(b) = q x(b+1)x(a) - x(b)x(a+1) with x(n) = [O(n)]."""
    rep = check_ee(bk, rng)
    rep = dict(rep, suite="qrel", relation="5.2.3")
    q = bk.q
    extra = []
    for a in range(-rng, rng + 1):
        lhs = b_mul(E_coeff(bk, a), E_coeff(bk, a + 1))
        rhs = b_mul(E_coeff(bk, a + 1), E_coeff(bk, a)).scale(q)
        extra.append(case("diag %d" % a, lhs == rhs, None if lhs == rhs else repr(lhs),
                          None if lhs == rhs else repr(rhs)))
    rep["cases"] = list(rep["cases"]) + extra
    return rep


def ordered_monomials(rank, deg, lo, hi):
    out = []

    def rec(top, r, d, acc):
        if r == 0:
            if d == 0:
                out.append(OrderedMonomial(tuple(acc)))
            return
        for i in range(top, lo - 1, -1):
            for m in range(1, r + 1):
                rec(i - 1, r - m, d - i * m, acc + [(i, m)])

    rec(hi, rank, deg, [])
    return out


def _spread(V):
    return V.bundle[0] - V.bundle[-1]


def monomial_basis_check(bk, degs=(0, 1), w=None):
    """Ordered monomials versus rank-2 bundles in each degree: counts, triangularity, determinant."""
    if not isinstance(bk, CohP1):
        raise ValueError("monomial basis check runs on the coh-p1 backend")
    w = w or Window(maxRank=2, minSummandDeg=-2, maxSummandDeg=2, maxTorsionLength=0)
    lo, hi = w.minSummandDeg, w.maxSummandDeg
    cases = []
    for d in degs:
        mons = ordered_monomials(2, d, lo, hi)
        buns = bk.bundles(2, lo, hi, d)
        # monomial [O(a)]^.. [O(b)] leads with O(a)+O(b); sort both by that bundle
        lead = {m: coh(tuple(i for i, k in m.factors for _ in range(k))) for m in mons}
        buns = sorted(buns, key=_spread, reverse=True)
        mons = sorted(mons, key=lambda m: _spread(lead[m]), reverse=True)
        rows = []
        tri = True
        for m in mons:
            img = m.expand(bk)
            row = []
            for V in buns:
                row.append(img.coeff(V))
            for (kap, A), c in img.terms.items():
                if A not in buns:
                    if bk.in_window(A, w):
                        raise WindowInsufficient("monomial image leaves the bundle basis: %r" % (A,))
                    # summands outside [lo, hi] only appear below the diagonal
                    tri = tri and _spread(A) < _spread(lead[m])
            rows.append(row)
            # nothing strictly more balanced than the leading bundle
            li = buns.index(lead[m]) if lead[m] in buns else None
            if li is None or not row[li]:
                tri = False
            else:
                tri = tri and all(not row[k] for k in range(li + 1, len(buns)))
        det = determinant(rows, bk.q) if len(rows) == len(buns) and rows else None
        ok = len(mons) == len(buns) and tri and det is not None and bool(det)
        cases.append(case("deg %d" % d, ok,
                          None if ok else "monomials=%d triangular=%s det=%r" % (len(mons), tri, det),
                          None if ok else "bundles=%d" % len(buns)))
    return report("qrel", "5.2.1", cases)
