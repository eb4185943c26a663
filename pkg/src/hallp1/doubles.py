"""Heisenberg and Drinfeld doubles of the extended Ringel algebra.

Two layers live here.

* ``HopfData`` and ``HDElem``: the Heisenberg double HD(Xi) and its checked
  twin built literally from structure constants of Xi = B(A).  Elements are
  normal-ordered monomials Z^a Z_b (resp. Zc_a Zc^b).  Sums over Cartan labels
  are finite when the Cartan group is reduced mod N, which is legitimate for
  torsion categories where the form (a|b) is trivial.

* ``DoubleElem``: the algebraic doubles spanned by Z^-_M K_a K^chi Z^+_N
  (side "heis") and Zc^+_M Kc_a Kc^chi Zc^-_N (side "check"), multiplied
  through the long-exact-sequence cross rule.  ``DDElem`` holds images of the
  Drinfeld double in Heis (x) Heis-check.

Cartan degrees may be half-integers (Fractions) so that c^(1/2) is available.
"""
from fractions import Fraction
from itertools import product

from .autop1 import E_coeff, _series_log, chi_trivial, log_zeta_ratio, psi_coeff, zeta_p1
from .finitary import CohP1, Quiver, TorsionLocal, UnsupportedShape, Window, coh, point_degree, torsion_length
from .hallhopf import Elem, WindowInsufficient, antipode_obj, case, coproduct_obj, kadd, kneg, kzero, report
from .scalars import Scalar, vpow


def _sc(x, q):
    return x if isinstance(x, Scalar) else Scalar(x, 0, q)


def _v(n, q):
    n = Fraction(n)
    if n.denominator != 1:
        raise ValueError("half-integer power of v in a form value")
    return vpow(int(n), q)


def _form(bk, a, b):
    return bk.chi(a, b) + bk.chi(b, a)


def _euler(bk, A, B):
    """<A, B> = v^chi(A, B) on labels."""
    return _v(bk.chi(bk.cls(A), bk.cls(B)), bk.q)


def _add(d, k, c):
    s = d.get(k)
    s = c if s is None else s + c
    if s:
        d[k] = s
    elif k in d:
        del d[k]


# ====================================================================== generic HD(Xi)

class HopfData:
    """Structure constants of B(A) on basis keys (kappa, A), computed on demand.

    ``modulus`` reduces Cartan labels mod N (torsion backends only).
    ``corrupt`` = (key, factor) rescales one comultiplication row, for negative controls.
    """

    def __init__(self, bk, w=None, modulus=None, corrupt=None):
        self.bk, self.w, self.modulus, self.corrupt = bk, w, modulus, corrupt
        # the form vanishes on torsion classes, so Cartan labels may be reduced mod N
        if modulus is not None and isinstance(bk, Quiver):
            raise ValueError("Cartan reduction mod N needs a trivial form (torsion backend)")
        self._comul = {}

    def red(self, kappa):
        if self.modulus is None:
            return tuple(kappa)
        return tuple(x % self.modulus for x in kappa)

    def cartans(self):
        """All Cartan labels of the reduced group (rank 1 class lattice)."""
        n = len(kzero(self.bk))
        return [tuple(t) for t in product(range(self.modulus), repeat=n)]

    def one(self):
        return (self.red(kzero(self.bk)), self.bk.zero())

    def mul(self, a, b):
        """m^k_{ab} as {k: c}."""
        bk = self.bk
        (k, A), (l, B) = a, b
        tw = _v(_form(bk, bk.cls(A), l) + bk.chi(bk.cls(B), bk.cls(A)), bk.q)
        kl = self.red(kadd(k, l))
        return {(kl, C): tw * g for C, g in bk.product(A, B).items()}

    def comul(self, k):
        """mu_k^{ab} as {(a, b): c}."""
        if k in self._comul:
            return self._comul[k]
        bk = self.bk
        kappa, C = k
        out = {}
        for (A1, A2), c in coproduct_obj(bk, C, self.w).items():
            out[((kappa, A1), (self.red(kadd(kappa, bk.cls(A1))), A2))] = c
        if self.corrupt and self.corrupt[0] == k:
            out = {key: c * self.corrupt[1] for key, c in out.items()}
        self._comul[k] = out
        return out

    def _subq(self, C):
        return self.bk.subquotients(C, self.w)

    def left_factors(self, c, y):
        """{x: m^c_{x y}} for fixed c, y."""
        bk = self.bk
        gamma, C = c
        ky, Y = y
        kx = self.red(kadd(gamma, kneg(ky)))
        out = {}
        for X, Y1, g in self._subq(C):
            if Y1 == Y:
                out[(kx, X)] = _v(_form(bk, bk.cls(X), ky), bk.q) * _euler(bk, Y, X) * g
        return out

    def right_factors(self, c, x):
        """{y: m^c_{x y}} for fixed c, x."""
        bk = self.bk
        gamma, C = c
        kx, X = x
        ky = self.red(kadd(gamma, kneg(kx)))
        out = {}
        for X1, Y, g in self._subq(C):
            if X1 == X:
                out[(ky, Y)] = _v(_form(bk, bk.cls(X), ky), bk.q) * _euler(bk, Y, X) * g
        return out

    def factorizations(self, c):
        """All (x, y) with m^c_{xy} != 0 (finite only with a reduced Cartan group)."""
        if self.modulus is None:
            raise ValueError("factorizations of a Cartan label are infinite without a modulus")
        out = {}
        for kx in self.cartans():
            for X, Y, g in self._subq(c[1]):
                x = (kx, X)
                for y, m in self.right_factors(c, x).items():
                    if y[1] == Y:
                        out[(x, y)] = m
        return out

    def dual_mul(self, a, x):
        """Z^a Z^x = sum mu_k^{a x} Z^k as {k: c}."""
        bk = self.bk
        (ka, A), (kx, X) = a, x
        if self.red(kadd(ka, bk.cls(A))) != kx:
            return {}
        out = {}
        for K, g in bk.product(A, X).items():
            c = self.comul((ka, K)).get((a, x))
            if c:
                out[(ka, K)] = c
        return out

    def counit(self, k):
        return 1 if self.bk.is_zero(k[1]) else 0

    def antipode_row(self, k):
        """S(e_k) as {key: c}."""
        kappa, A = k
        s = antipode_obj(self.bk, A, self.w)
        out = {}
        for (l, B), c in s.terms.items():
            out[(self.red(kadd(l, kneg(kappa))), B)] = c
        return out


def export_hopf_data(bk, w=None, maxlen=2, modulus=None):
    """Tables m, mu, eps, S for torsion objects of length <= maxlen (Cartan label 0 rows)."""
    if isinstance(bk, TorsionLocal):
        objs = [o for o in bk.objects(maxlen)]
    elif isinstance(bk, CohP1):
        objs = bk.torsion_objects(maxlen)
    else:
        objs = bk.objects(maxlen)
    hd = HopfData(bk, w, modulus)
    z = hd.red(kzero(bk))
    keys = [(z, A) for A in objs]
    m, mu, eps, S = {}, {}, {}, {}
    for a in keys:
        for b in keys:
            row = hd.mul(a, b)
            if row:
                m[(a, b)] = row
        mu[a] = hd.comul(a)
        eps[a] = hd.counit(a)
        S[a] = hd.antipode_row(a)
    return {"keys": keys, "m": m, "mu": mu, "eps": eps, "S": S}


class HDElem:
    """Element of HD(Xi) (checked=False: Z^a Z_b) or HD(Xi*) (checked=True: Zc_a Zc^b)."""

    def __init__(self, hd, checked, terms=None):
        self.hd, self.checked = hd, checked
        self.terms = {}
        for k, c in (terms or {}).items():
            c = _sc(c, hd.bk.q)
            if c:
                self.terms[k] = c

    def __add__(self, o):
        out = dict(self.terms)
        for k, c in o.terms.items():
            _add(out, k, c)
        return HDElem(self.hd, self.checked, out)

    def __sub__(self, o):
        return self + o.scale(-1)

    def scale(self, s):
        return HDElem(self.hd, self.checked, {k: c * s for k, c in self.terms.items()})

    def __mul__(self, o):
        hd = self.hd
        out = {}
        for (a, b), c1 in self.terms.items():
            for (x, y), c2 in o.terms.items():
                if not self.checked:
                    # Z^a (Z_b Z^x) Z_y
                    for (u, z), mu in hd.comul(b).items():
                        for xx, m in hd.left_factors(x, u).items():
                            for k1, d1 in hd.dual_mul(a, xx).items():
                                for k2, d2 in hd.mul(z, y).items():
                                    _add(out, (k1, k2), c1 * c2 * mu * m * d1 * d2)
                else:
                    # Zc_a (Zc^b Zc_x) Zc^y
                    for (u, z), mu in hd.comul(x).items():
                        for zz, m in hd.right_factors(b, z).items():
                            for k1, d1 in hd.mul(a, u).items():
                                for k2, d2 in hd.dual_mul(zz, y).items():
                                    _add(out, (k1, k2), c1 * c2 * mu * m * d1 * d2)
        return HDElem(hd, self.checked, out)

    def __eq__(self, o):
        return self.terms == o.terms

    def __repr__(self):
        return " + ".join("%r*%r" % (c, k) for k, c in sorted(self.terms.items(), key=repr)) or "0"


def hd_primal(hd, b, checked=False):
    """Z_b (or Zc_b): the dual unit is the finite sum of Z^(alpha, 0)."""
    z = hd.bk.zero()
    if checked:
        return HDElem(hd, True, {(b, (k, z)): 1 for k in hd.cartans()})
    return HDElem(hd, False, {((k, z), b): 1 for k in hd.cartans()})


def hd_dual(hd, a, checked=False):
    one = hd.one()
    return HDElem(hd, checked, {(one, a) if checked else (a, one): 1})


class HDTensor:
    """Element of HD(Xi) (x) HD(Xi*)."""

    def __init__(self, hd, terms=None):
        self.hd = hd
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, x, y):
        out = {}
        for a, c in x.terms.items():
            for b, d in y.terms.items():
                _add(out, (a, b), c * d)
        return cls(x.hd, out)

    def __add__(self, o):
        out = dict(self.terms)
        for k, c in o.terms.items():
            _add(out, k, c)
        return HDTensor(self.hd, out)

    def scale(self, s):
        return HDTensor(self.hd, {k: c * s for k, c in self.terms.items()})

    def __mul__(self, o):
        hd = self.hd
        out = {}
        for (a1, a2), c in self.terms.items():
            for (b1, b2), d in o.terms.items():
                p1 = HDElem(hd, False, {a1: 1}) * HDElem(hd, False, {b1: 1})
                if not p1.terms:
                    continue
                p2 = HDElem(hd, True, {a2: 1}) * HDElem(hd, True, {b2: 1})
                for k1, e1 in p1.terms.items():
                    for k2, e2 in p2.terms.items():
                        _add(out, (k1, k2), c * d * e1 * e2)
        return HDTensor(hd, out)

    def __eq__(self, o):
        return self.terms == o.terms


def kashaev_image_lower(hd, k):
    """kappa(W_k) = sum mu_k^{ij} Z_i (x) Zc_j."""
    out = HDTensor(hd)
    for (i, j), mu in hd.comul(k).items():
        out = out + HDTensor.of(hd_primal(hd, i), hd_primal(hd, j, True)).scale(mu)
    return out


def kashaev_image_upper(hd, k):
    """kappa(W^k) = sum m^k_{ji} Z^i (x) Zc^j."""
    out = HDTensor(hd)
    for (j, i), m in hd.factorizations(k).items():
        out = out + HDTensor.of(hd_dual(hd, i), hd_dual(hd, j, True)).scale(m)
    return out


def kashaev_pairs(hd, maxlen=2):
    """All (i, j) with i, j = (cartan, object) and objects of length <= maxlen."""
    keys = [(k, A) for k in hd.cartans() for A in hd.bk.objects(maxlen)]
    return [(i, j) for i in keys for j in keys]


def kashaev_check(hd, pairs):
    """Images of W_k, W^k satisfy the Drinfeld cross relation on the given (i, j)."""
    lo, up = {}, {}

    def L(k):
        if k not in lo:
            lo[k] = kashaev_image_lower(hd, k)
        return lo[k]

    def U(k):
        if k not in up:
            up[k] = kashaev_image_upper(hd, k)
        return up[k]

    cases = []
    for i, j in pairs:
        lhs = HDTensor(hd)
        for (a, b), mu in hd.comul(i).items():
            for c, m in hd.right_factors(j, b).items():
                lhs = lhs + (L(a) * U(c)).scale(mu * m)
        rhs = HDTensor(hd)
        for (b, c), mu in hd.comul(i).items():
            for a, m in hd.left_factors(j, b).items():
                rhs = rhs + (U(a) * L(c)).scale(mu * m)
        bad = next((k for k in sorted(set(lhs.terms) | set(rhs.terms), key=repr)
                    if lhs.terms.get(k) != rhs.terms.get(k)), None)
        if bad is None:
            cases.append(case("%r|%r" % (i, j), True))
        else:
            cases.append(case("%r|%r|%r" % (i, j, bad), False, lhs.terms.get(bad, 0), rhs.terms.get(bad, 0)))
    return report("doubles", "kashaev", cases)


# ====================================================================== algebraic doubles

def _det(bk, gamma):
    if isinstance(bk, CohP1):
        return gamma[1]
    if isinstance(bk, TorsionLocal):
        return gamma[0]
    return 0


def _char(bk, tag, gamma):
    """chi(gamma) for tag (beta, lam): (beta|gamma) * lam^det(gamma)."""
    beta, lam = tag
    val = _v(_form(bk, beta, gamma), bk.q)
    d = _det(bk, gamma)
    if lam != 1:
        if Fraction(d).denominator != 1:
            raise ValueError("degree character on a half-integer class")
        val = val * _sc(lam, bk.q) ** int(d)
    return val


def _tag_mul(t1, t2):
    (b1, l1), (b2, l2) = t1, t2
    return (kadd(b1, b2), l1 * l2)


def _norm_cartan(a):
    return tuple(Fraction(x) if Fraction(x).denominator != 1 else int(x) for x in a)


class DoubleElem:
    """Combination of normal-ordered words (left, alpha, tag, right).

    side "heis":  Z^-_left  K_alpha K^tag Z^+_right
    side "check": Zc^+_left Kc_alpha Kc^tag Zc^-_right
    """

    __slots__ = ("bk", "side", "terms", "w")

    def __init__(self, bk, side, terms=None, w=None):
        self.bk, self.side, self.w = bk, side, w
        self.terms = {}
        for k, c in (terms or {}).items():
            c = _sc(c, bk.q)
            if c:
                self.terms[k] = c

    def trivial_tag(self):
        return (kzero(self.bk), 1)

    def __add__(self, o):
        out = dict(self.terms)
        for k, c in o.terms.items():
            _add(out, k, c)
        return DoubleElem(self.bk, self.side, out, self.w or o.w)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, s):
        return DoubleElem(self.bk, self.side, {k: c * s for k, c in self.terms.items()}, self.w)

    def __mul__(self, o):
        if isinstance(o, DoubleElem):
            return hd_mul(self, o, self.side, self.w or o.w)
        return self.scale(o)

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, o):
        return isinstance(o, DoubleElem) and self.terms == o.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        a, b = ("Z-", "Z+") if self.side == "heis" else ("Zc+", "Zc-")
        parts = []
        for (L, al, tag, R), c in sorted(self.terms.items(), key=repr):
            parts.append("%r*%s[%r]K%sK^%s%s[%r]" % (c, a, L, list(al), tag, b, R))
        return " + ".join(parts)

    def to_json(self):
        from .finitary import label_to_json
        left, right = ("minus", "plus") if self.side == "heis" else ("plus", "minus")
        out = []
        for (L, al, tag, R), c in sorted(self.terms.items(), key=repr):
            out.append({"coeff": c.to_json(),
                        "factors": [{"side": left, "object": label_to_json(self.bk, L)},
                                    {"side": "cartan", "alpha": [str(x) for x in al],
                                     "chi": {"beta": [str(x) for x in tag[0]], "lam": str(tag[1])}},
                                    {"side": right, "object": label_to_json(self.bk, R)}]})
        return {"algebra": self.side, "terms": out}


def _word(bk, side, L=None, alpha=None, tag=None, R=None, c=1, w=None):
    z = bk.zero()
    key = (L if L is not None else z, _norm_cartan(alpha if alpha is not None else kzero(bk)),
           tag if tag is not None else (kzero(bk), 1), R if R is not None else z)
    return DoubleElem(bk, side, {key: c}, w)


def d_one(bk, side="heis", w=None):
    return _word(bk, side, w=w)


def d_plus(bk, A, side="heis", w=None):
    """Z^+_A (or Zc^+_A)."""
    if side == "heis":
        return _word(bk, side, R=A, w=w)
    return _word(bk, side, L=A, w=w)


def d_minus(bk, A, side="heis", w=None):
    if side == "heis":
        return _word(bk, side, L=A, w=w)
    return _word(bk, side, R=A, w=w)


def d_cartan(bk, alpha, side="heis", w=None):
    return _word(bk, side, alpha=alpha, w=w)


def d_char(bk, beta=None, lam=1, side="heis", w=None):
    """K^chi with chi = (beta|.) lam^deg."""
    return _word(bk, side, tag=(tuple(beta) if beta is not None else kzero(bk), lam), w=w)


_SUBQ_CACHE = {}


def _subq(bk, C, w):
    if isinstance(bk, CohP1) and w is not None and not bk.in_window(C, w):
        raise WindowInsufficient("%r lies outside the window" % (C,))
    key = (bk, C, w)
    if key not in _SUBQ_CACHE:
        _SUBQ_CACHE[key] = bk.subquotients(C, w)
    return _SUBQ_CACHE[key]


def cross_terms(bk, side, A, B, w=None):
    """Rewrite the out-of-order pair.

    heis:  Z^+_A Z^-_B  = sum g4 <N-M, B-M> K_(B-M) Z^-_M Z^+_N
    check: Zc^-_A Zc^+_B = sum <L, M><N, L> g4 Zc^+_M Kc^(L) Zc^-_N,  L = B - M
    Returns [(coef, M, alpha, tag, N)].
    """
    q = bk.q
    subsB = {}
    for M, L, g in _subq(bk, B, w):
        subsB.setdefault(L, []).append((M, g))
    acc = {}
    aA, aB = bk.aut(A), bk.aut(B)
    for L, N, g2 in _subq(bk, A, w):
        for M, g1 in subsB.get(L, ()):
            g4 = Fraction(g1 * g2 * bk.aut(M) * bk.aut(N) * bk.aut(L), aA * aB)
            acc[(M, N)] = acc.get((M, N), 0) + g4
    out = []
    z = kzero(bk)
    kB = bk.cls(B)
    for (M, N), g4 in acc.items():
        kL = tuple(b - m for b, m in zip(kB, bk.cls(M)))
        if side == "heis":
            kNM = tuple(n - m for n, m in zip(bk.cls(N), bk.cls(M)))
            c = _v(bk.chi(kNM, kL), q) * g4
            out.append((c, M, kL, (z, 1), N))
        else:
            c = _v(bk.chi(kL, bk.cls(M)) + bk.chi(bk.cls(N), kL), q) * g4
            out.append((c, M, z, (kL, 1), N))
    return out


def _ringel(bk, A, B):
    tw = _euler(bk, B, A)
    return {C: tw * g for C, g in bk.product(A, B).items()}


def _pass_left(bk, side, alpha, tag, X):
    """s with C X = s X C, C = K_alpha K^tag, X the left-type generator."""
    kx = bk.cls(X)
    if side == "heis":
        return _v(_form(bk, kx, alpha), bk.q) / _char(bk, tag, kx)
    return _char(bk, tag, kx) / _v(_form(bk, kx, alpha), bk.q)


def _pass_right(bk, side, Y, alpha, tag):
    """s with Y C = s C Y, Y the right-type generator."""
    ky = bk.cls(Y)
    if side == "heis":
        return _v(_form(bk, ky, alpha), bk.q) / _char(bk, tag, ky)
    # the checked double is given the same Cartan identities as Heis, which is
    # what makes the restriction K^a = K^-1_(pi_J a) consistent there
    return _char(bk, tag, ky) / _v(_form(bk, ky, alpha), bk.q)


_MUL_CACHE = {}


def _mul_keys(bk, side, k1, k2, w):
    ck = (bk, side, k1, k2, w)
    hit = _MUL_CACHE.get(ck)
    if hit is None:
        if len(_MUL_CACHE) > 200000:
            _MUL_CACHE.clear()
        hit = _MUL_CACHE[ck] = _mul_keys_raw(bk, side, k1, k2, w)
    return hit


def _mul_keys_raw(bk, side, k1, k2, w):
    X1, a1, t1, Y1 = k1
    X2, a2, t2, Y2 = k2
    out = {}
    if bk.is_zero(Y1) or bk.is_zero(X2):
        pieces = [(Scalar(1, 0, bk.q), X2, kzero(bk), (kzero(bk), 1), Y1)]
    else:
        pieces = cross_terms(bk, side, Y1, X2, w)
    for c0, Xp, ap, tp, Yp in pieces:
        s = c0 * _pass_left(bk, side, a1, t1, Xp) * _pass_right(bk, side, Yp, a2, t2)
        alpha = _norm_cartan(kadd(kadd(a1, ap), a2))
        tag = _tag_mul(_tag_mul(t1, tp), t2)
        for Xq, g in _ringel(bk, X1, Xp).items():
            for Yq, h in _ringel(bk, Yp, Y2).items():
                _add(out, (Xq, alpha, tag, Yq), s * g * h)
    return out


def hd_mul(x, y, variant="heis", w=None):
    """Product in Heis ("heis") or Heis-check ("heis-check"/"check").

    For the Drinfeld double use DDElem products (images under the Kashaev map).
    """
    side = "heis" if variant == "heis" else "check"
    if x.side != side or y.side != side:
        raise ValueError("hd_mul variant %r on %s/%s elements" % (variant, x.side, y.side))
    bk = x.bk
    w = w or x.w or y.w
    out = {}
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            for k, c in _mul_keys(bk, side, k1, k2, w).items():
                _add(out, k, c1 * c2 * c)
    return DoubleElem(bk, side, out, w)


def _pi_J(bk, beta):
    """Projection to the complement of the kernel of the symmetrised form."""
    if isinstance(bk, CohP1):
        return (beta[0], 0)
    if isinstance(bk, TorsionLocal):
        return (0,)
    raise UnsupportedShape("restricted identification is set up for coh-p1 and torsion backends")


def restricted_identify(x):
    """K^beta -> K_(-pi_J beta); degree characters stay."""
    bk = x.bk
    out = {}
    for (L, al, (beta, lam), R), c in x.terms.items():
        al2 = _norm_cartan(kadd(al, kneg(_pi_J(bk, beta))))
        _add(out, (L, al2, (kzero(bk), lam), R), c)
    return DoubleElem(bk, x.side, out, x.w)


# ====================================================================== Drinfeld double via Kashaev

class DDElem:
    """Element of Heis (x) Heis-check: {(heis key, check key): c}."""

    def __init__(self, bk, terms=None, w=None):
        self.bk, self.w = bk, w
        self.terms = {k: _sc(c, bk.q) for k, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, x, y):
        out = {}
        for a, c in x.terms.items():
            for b, d in y.terms.items():
                _add(out, (a, b), c * d)
        return cls(x.bk, out, x.w or y.w)

    def __add__(self, o):
        out = dict(self.terms)
        for k, c in o.terms.items():
            _add(out, k, c)
        return DDElem(self.bk, out, self.w or o.w)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, s):
        return DDElem(self.bk, {k: c * s for k, c in self.terms.items()}, self.w)

    def __mul__(self, o):
        if not isinstance(o, DDElem):
            return self.scale(o)
        bk, w = self.bk, self.w or o.w
        out = {}
        cache1, cache2 = {}, {}
        for (a1, a2), c in self.terms.items():
            for (b1, b2), d in o.terms.items():
                k1 = (a1, b1)
                if k1 not in cache1:
                    cache1[k1] = _ident(bk, _mul_keys(bk, "heis", a1, b1, w))
                p1 = cache1[k1]
                if not p1:
                    continue
                k2 = (a2, b2)
                if k2 not in cache2:
                    cache2[k2] = _ident(bk, _mul_keys(bk, "check", a2, b2, w))
                p2 = cache2[k2]
                cd = c * d
                for u, e1 in p1.items():
                    f = cd * e1
                    for v, e2 in p2.items():
                        _add(out, (u, v), f * e2)
        return DDElem(bk, out, w)

    def __eq__(self, o):
        return self.terms == o.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return " + ".join("%r*%r" % (c, k) for k, c in sorted(self.terms.items(), key=repr)) or "0"


def _ident(bk, terms):
    out = {}
    for (L, al, (beta, lam), R), c in terms.items():
        al2 = _norm_cartan(kadd(al, kneg(_pi_J(bk, beta))))
        _add(out, (L, al2, (kzero(bk), lam), R), c)
    return out


def _dd(bk, x, y, w=None):
    return DDElem.of(restricted_identify(x), restricted_identify(y))


def kappa_plus(bk, A, w=None):
    """W^+_A -> sum c Z^+_A' (x) Kc_A' Zc^+_A''."""
    out = DDElem(bk, w=w)
    for (A1, A2), c in coproduct_obj(bk, A, w).items():
        x = d_plus(bk, A1, "heis", w)
        y = _word(bk, "check", L=A2, alpha=bk.cls(A1), w=w)
        # Kc_a Zc^+_B = (B|a)^-1 Zc^+_B Kc_a in the check normal form
        y = y.scale(Scalar(1, 0, bk.q) / _v(_form(bk, bk.cls(A2), bk.cls(A1)), bk.q))
        out = out + DDElem.of(x, y).scale(c)
    return DDElem(bk, _restrict_dd(bk, out.terms), w)


def kappa_minus(bk, A, w=None, printed=False):
    """W^-_A -> sum c K^A' Z^-_(A/A') (x) Zc^-_A'.

    ``printed`` uses Z^-_(A/A') K^A instead of the character K^A' on the left.
    """
    out = DDElem(bk, w=w)
    for (A1, A2), c in coproduct_obj(bk, A, w).items():
        if printed:
            x = d_minus(bk, A2, "heis", w) * d_char(bk, bk.cls(A), side="heis", w=w)
        else:
            x = d_char(bk, bk.cls(A1), side="heis", w=w) * d_minus(bk, A2, "heis", w)
        y = d_minus(bk, A1, "check", w)
        out = out + DDElem.of(x, y).scale(c)
    return DDElem(bk, _restrict_dd(bk, out.terms), w)


def kappa_cartan(bk, alpha, w=None):
    return DDElem.of(d_cartan(bk, alpha, "heis", w), d_cartan(bk, alpha, "check", w))


def _restrict_dd(bk, terms):
    out = {}
    for (a, b), c in terms.items():
        for a2, c2 in _ident(bk, {a: 1}).items():
            for b2, c3 in _ident(bk, {b: 1}).items():
                _add(out, (a2, b2), c * c2 * c3)
    return out


# ====================================================================== P^1 generating functions

def _norm2(q):
    """||f||^2_d for the trivial form on Pic_d(P^1)."""
    return Fraction(1, q - 1)


def Eplus(bk, i, side="heis", w=None):
    return d_plus(bk, coh((i,)), side, w)


def Eminus(bk, j, side="heis", w=None):
    """Coefficient of t^j in E^-(t) = sum t^(-deg V) Z^-_V."""
    return d_minus(bk, coh((-j,)), side, w)


def Psi(bk, k, sign, side="heis", w=None):
    """Psi^+_k (coefficient of t^k) or Psi^-_k (coefficient of t^-k)."""
    out = DoubleElem(bk, side, w=w)
    if k < 0:
        return out
    if k == 0:
        return d_one(bk, side, w)
    for F in bk.torsion_objects(k, exact=k):
        c = chi_trivial(F)
        if c:
            g = d_plus(bk, F, side, w) if sign > 0 else d_minus(bk, F, side, w)
            out = out + g.scale(c * bk.aut(F))
    return out


def _c(bk, k, side, w):
    return d_cartan(bk, (0, k), side, w)


def _ratio(q, num, den):
    z = zeta_p1(q, "x")
    r = z.scale_var(num) / z.scale_var(den)
    return r.num, r.den


def _series_rel(bk, side, A, B, P, Q, i, j, e1, e2, w, cshift=1):
    """Coefficient (i, j) of Q(x) A(t1)B(t2) - P(x) B(t2)A(t1), x = c^cshift t1^e1 t2^e2."""
    lhs = DoubleElem(bk, side, w=w)
    rhs = DoubleElem(bk, side, w=w)
    for e, c in Q.c.items():
        a, b = A(i - e * e1), B(j - e * e2)
        if a and b:
            lhs = lhs + (_c(bk, e * cshift, side, w) * a * b).scale(c)
    for e, c in P.c.items():
        a, b = A(i - e * e1), B(j - e * e2)
        if a and b:
            rhs = rhs + (_c(bk, e * cshift, side, w) * b * a).scale(c)
    return restricted_identify(lhs), restricted_identify(rhs)


def _cmp(key, lhs, rhs):
    bad = next((k for k in sorted(set(lhs.terms) | set(rhs.terms), key=repr)
                if lhs.terms.get(k) != rhs.terms.get(k)), None)
    if bad is None:
        return case(key, True)
    return case("%s|%r" % (key, bad), False, lhs.terms.get(bad, 0), rhs.terms.get(bad, 0))


def _orientation_suite(bk, side, A, B, ratios, rng_i, rng_j, e1, e2, w, relation, cshift=1):
    """Check X(t1)Y(t2) = R Y X for each candidate ratio R; report which holds."""
    results = {}
    for name, (P, Q) in ratios.items():
        cases = []
        for i in rng_i:
            for j in rng_j:
                lhs, rhs = _series_rel(bk, side, A, B, P, Q, i, j, e1, e2, w, cshift)
                cases.append(_cmp((i, j), lhs, rhs))
        results[name] = cases
    good = [n for n, cs in results.items() if all(c["status"] == "pass" for c in cs)]
    pick = "printed" if "printed" in good else (good[0] if good else "printed")
    rep = report("doubles", relation, results[pick])
    rep["orientation"] = pick if good else "none"
    return rep


def default_window(rng=2):
    return Window(maxRank=2, minSummandDeg=-2 * rng - 2, maxSummandDeg=2 * rng + 2,
                  maxTorsionLength=2 * rng)


THM65 = ("6.5.1", "6.5.2", "6.5.3", "6.5.4", "6.5.5", "6.5.6", "6.5.7", "6.5.8")


def verify_thm65(bk, relation, rng=2, w=None):
    if not isinstance(bk, CohP1):
        raise ValueError("the psi+/psi- double relation suite runs on the coh-p1 backend")
    w = w or default_window(rng)
    q = bk.q
    v = Scalar.v(q)
    R = range(-rng, rng + 1)
    N = range(0, rng + 1)
    nf = _norm2(q)
    if relation == "6.5.1":
        cases = []
        for i in R:
            for k in N:
                a, b = Eplus(bk, i, w=w), Psi(bk, k, -1, w=w)
                cases.append(_cmp((i, -k), restricted_identify(a * b), restricted_identify(b * a)))
        return report("doubles", relation, cases)
    if relation == "6.5.6":
        cases = []
        for j in R:
            for k in N:
                a, b = Eminus(bk, j, "check", w), Psi(bk, k, 1, "check", w)
                cases.append(_cmp((j, k), restricted_identify(a * b), restricted_identify(b * a)))
        return report("doubles", relation, cases)
    if relation == "6.5.3":
        cases = []
        for i in R:
            for j in R:
                a, b = Eplus(bk, i, w=w), Eminus(bk, j, w=w)
                lhs = restricted_identify(a * b - b * a)
                ell = i + j
                rhs = DoubleElem(bk, "heis", w=w)
                if ell >= 0:
                    rhs = (d_cartan(bk, (1, -j), w=w) * Psi(bk, ell, 1, w=w)).scale(vpow(-ell, q) * nf)
                cases.append(_cmp((i, j), lhs, restricted_identify(rhs)))
        return report("doubles", relation, cases)
    if relation == "6.5.7":
        cases = []
        for i in R:
            for j in R:
                a, b = Eminus(bk, i, "check", w), Eplus(bk, j, "check", w)
                lhs = restricted_identify(a * b - b * a)
                ell = -i - j
                rhs = DoubleElem(bk, "check", w=w)
                if ell >= 0:
                    rhs = (d_cartan(bk, (-1, 0), "check", w) * Psi(bk, ell, -1, "check", w)).scale(
                        vpow(-ell, q) * nf)
                cases.append(_cmp((i, j), lhs, restricted_identify(rhs)))
        return report("doubles", relation, cases)
    # ratio relations: candidates are the printed ratio and its inverse
    if relation == "6.5.2":
        P, Q = _ratio(q, v, v.inverse())
        ratios = {"printed": (P, Q), "inverse": (Q, P)}
        A = lambda i: Psi(bk, i, 1, w=w)
        B = lambda j: Eminus(bk, j, w=w)
        return _orientation_suite(bk, "heis", A, B, ratios, N, R, 1, -1, w, relation)
    if relation == "6.5.4":
        P, Q = _ratio(q, 1, q)
        ratios = {"printed": (P, Q), "inverse": (Q, P)}
        A = lambda i: Psi(bk, i, 1, w=w)
        B = lambda j: Psi(bk, -j, -1, w=w)
        return _orientation_suite(bk, "heis", A, B, ratios, N, [-k for k in N], 1, -1, w, relation)
    if relation == "6.5.5":
        P, Q = _ratio(q, v, v.inverse())
        ratios = {"printed": (P, Q), "inverse": (Q, P)}
        A = lambda i: Psi(bk, -i, -1, "check", w)
        B = lambda j: Eplus(bk, j, "check", w)
        return _orientation_suite(bk, "check", A, B, ratios, [-k for k in N], R, -1, 1, w, relation, 0)
    if relation == "6.5.8":
        P, Q = _ratio(q, 1, q)
        ratios = {"printed": (P, Q), "inverse": (Q, P)}
        A = lambda i: Psi(bk, -i, -1, "check", w)
        B = lambda j: Psi(bk, j, 1, "check", w)
        return _orientation_suite(bk, "check", A, B, ratios, [-k for k in N], N, -1, 1, w, relation, 0)
    raise ValueError("unknown relation %r" % (relation,))


# ---------------------------------------------------------------- Phi relations through kappa

def Y_plus(bk, i, w):
    return kappa_plus(bk, coh((i,)), w)


def Y_minus(bk, j, w, printed=False):
    return kappa_minus(bk, coh((-j,)), w, printed)


def _kappa_c(bk, e, w):
    return kappa_cartan(bk, (0, Fraction(e)), w)


def Phi(bk, d, sign, w):
    """kappa of Phi^+_d (coefficient of t^d) or Phi^-_d (coefficient of t^-d)."""
    out = DDElem(bk, w=w)
    if d < 0:
        return out
    if d == 0:
        return DDElem.of(d_one(bk, "heis", w), d_one(bk, "check", w))
    for F in bk.torsion_objects(d, exact=d):
        c = chi_trivial(F)
        if not c:
            continue
        img = kappa_plus(bk, F, w) if sign > 0 else kappa_minus(bk, F, w)
        out = out + (_kappa_c(bk, Fraction(d, 2), w) * img).scale(c * bk.aut(F))
    return out


def Phi_printed(bk, d, sign, w):
    """Images of Phi^(+/-)_d as listed for the embedding (products of Psi and Psi-check)."""
    out = DDElem(bk, w=w)
    h = Fraction(1, 2)
    for k in range(0, d + 1):
        l = d - k
        if sign > 0:
            a = d_cartan(bk, (0, h * d), "heis", w) * Psi(bk, k, 1, "heis", w)
            b = d_cartan(bk, (0, 3 * h * k + h * l), "check", w) * Psi(bk, l, 1, "check", w)
        else:
            a = d_cartan(bk, (0, h * d), "heis", w) * Psi(bk, k, -1, "heis", w)
            b = d_cartan(bk, (0, h * d), "check", w) * Psi(bk, l, -1, "check", w)
        out = out + DDElem.of(restricted_identify(a), restricted_identify(b))
    return out


THM67 = ("6.7.2", "6.7.5", "6.7.7")


def verify_thm67(bk, relation, rng=2, w=None, printed_minus=False):
    if not isinstance(bk, CohP1):
        raise ValueError("the Phi generating function suite runs on the coh-p1 backend")
    w = w or default_window(rng)
    q = bk.q
    R = range(-rng, rng + 1)
    nf = _norm2(q)
    K = kappa_cartan(bk, (1, 0), w)
    Kinv = kappa_cartan(bk, (-1, 0), w)
    if relation == "6.7.7":
        cases = []
        for i in R:
            y = Y_plus(bk, i, w)
            cases.append(_cmp("Y+%d" % i, K * y, (y * K).scale(Fraction(1, q))))
            y = Y_minus(bk, i, w, printed_minus)
            cases.append(_cmp("Y-%d" % i, K * y, (y * K).scale(q)))
        for d in range(0, rng + 1):
            for s in (1, -1):
                f = Phi(bk, d, s, w)
                cases.append(_cmp("Phi%s%d" % ("+" if s > 0 else "-", d), K * f, f * K))
        return report("doubles", relation, cases)
    if relation == "6.7.2":
        cases = []
        for s in (1, -1):
            for d in range(0, rng + 1):
                for e in range(0, rng + 1):
                    a, b = Phi(bk, d, s, w), Phi(bk, e, s, w)
                    cases.append(_cmp("%s%d,%d" % ("+" if s > 0 else "-", d, e), a * b, b * a))
        return report("doubles", relation, cases)
    if relation == "6.7.5":
        # sign of the c^(1/2) shift inside Phi^(+/-): printed (+1) and its flip (-1)
        results = {"printed": [], "flipped": []}
        for i in R:
            for j in R:
                a, b = Y_plus(bk, i, w), Y_minus(bk, j, w, printed_minus)
                lhs = _trim(a * b - b * a, w)
                for name, s in (("printed", 1), ("flipped", -1)):
                    rhs = _trim(_rhs_675(bk, i, j, s, K, Kinv, w), w)
                    results[name].append(_cmp((i, j), lhs, rhs))
        good = [n for n, cs in results.items() if all(c["status"] == "pass" for c in cs)]
        pick = "printed" if "printed" in good else (good[0] if good else "printed")
        rep = report("doubles", relation, results[pick])
        rep["orientation"] = pick if good else "none"
        return rep
    raise ValueError("unknown relation %r" % (relation,))


def _rhs_675(bk, i, j, s, K, Kinv, w):
    """delta(c t1/t2) K Phi^+(v^-1 c^(s/2) t1) - delta(t2/t1) K^-1 Phi^-(v c^(-s/2) t2) at t1^i t2^j."""
    q = bk.q
    nf = _norm2(q)
    rhs = DDElem(bk, w=w)
    ell = i + j
    if ell >= 0:
        t = K * _kappa_c(bk, -j + Fraction((s + 1) * ell, 2), w) * _phi_plain(bk, ell, 1, w)
        rhs = rhs + t.scale(vpow(-ell, q) * nf)
    if ell <= 0:
        t = Kinv * _kappa_c(bk, Fraction((s + 1) * -ell, 2), w) * _phi_plain(bk, -ell, -1, w)
        rhs = rhs - t.scale(vpow(ell, q) * nf)
    return rhs


def _phi_plain(bk, ell, sign, w):
    """kappa of sum chi |Aut F| W^(+/-)_F over h0 F = ell (no c^(1/2) factors)."""
    if ell == 0:
        return DDElem.of(d_one(bk, "heis", w), d_one(bk, "check", w))
    out = DDElem(bk, w=w)
    for F in bk.torsion_objects(ell, exact=ell):
        c = chi_trivial(F)
        if c:
            img = kappa_plus(bk, F, w) if sign > 0 else kappa_minus(bk, F, w)
            out = out + img.scale(c * bk.aut(F))
    return out


def _trim(x, w):
    """Drop terms whose torsion exceeds what the truncated images determine."""
    lim = w.maxTorsionLength
    out = {}
    for (a, b), c in x.terms.items():
        if torsion_length(a[0]) + torsion_length(a[3]) + torsion_length(b[0]) + torsion_length(b[3]) <= lim:
            out[(a, b)] = c
    return DDElem(x.bk, out, x.w)


# ---------------------------------------------------------------- bosons

def local_psi(bk, x, d, sign, side="heis", w=None):
    """Coefficient of t^(d deg x) in the Euler factor of Psi^(+/-) at the point x."""
    out = DoubleElem(bk, side, w=w)
    if d == 0:
        return d_one(bk, side, w)
    from .finitary import partitions
    for lam in partitions(d):
        F = coh((), [(x, lam)])
        c = chi_trivial(F)
        if c:
            g = d_plus(bk, F, side, w) if sign > 0 else d_minus(bk, F, side, w)
            out = out + g.scale(c * bk.aut(F))
    return out


def boson_commutator(bk, x, d, d2, w=None):
    """[a^+_(x,d), a^-_(x,d2)] = s c^(d deg x); returns s (0 when not of that shape)."""
    maxd = max(d, d2)
    w = w or Window(maxRank=0, minSummandDeg=0, maxSummandDeg=0,
                    maxTorsionLength=maxd * point_degree(x))
    plus = [local_psi(bk, x, k, 1, w=w) for k in range(maxd + 1)]
    minus = [local_psi(bk, x, k, -1, w=w) for k in range(maxd + 1)]
    mul = lambda a, b: a * b
    ap = _series_log_d(plus, mul)
    am = _series_log_d(minus, mul)
    comm = ap[d] * am[d2] - am[d2] * ap[d]
    comm = restricted_identify(comm)
    if not comm.terms:
        return Scalar(0, 0, bk.q)
    z = bk.zero()
    key = (z, _norm_cartan((0, d * point_degree(x))), (kzero(bk), 1), z)
    if set(comm.terms) != {key}:
        raise ValueError("commutator is not a multiple of a central word: %r" % (comm,))
    return comm.terms[key]


def _series_log_d(ser, mul):
    L = [None]
    for n in range(1, len(ser)):
        acc = ser[n]
        for k in range(1, n):
            acc = acc - mul(L[k], ser[n - k]).scale(Fraction(k, n))
        L.append(acc)
    return L



# ---------------------------------------------------------------- cross formula, three routes

def cross_via_structure_constants(bk, A, B, w=None):
    """Z^+_A Z^-_B from the Heisenberg cross relation on Z_(0,A) Z^(0,B).

    Returns {(M, N): (coef, alpha)} in the Z^-_M K_alpha Z^+_N normal form.
    """
    hd = HopfData(bk, w)
    z = kzero(bk)
    c = (z, B)
    out = {}
    for ((_, Y), (kz, Nobj)), mu in hd.comul((z, A)).items():
        for (_, M), m in hd.left_factors(c, (z, Y)).items():
            kL = kz
            val = mu * m * Fraction(bk.aut(M), bk.aut(B)) / _v(_form(bk, bk.cls(M), kL), bk.q)
            prev = out.get((M, Nobj))
            out[(M, Nobj)] = (val if prev is None else prev[0] + val, kL)
    return {k: v for k, v in out.items() if v[0]}


def cross_via_morphisms(Q, A, B):
    """Same coefficients from morphisms B -> A sorted by kernel and cokernel."""
    tally = {}
    for phi in Q.homs(B, A):
        K, C = Q.kernel_cokernel(phi, B, A)
        tally[(K, C)] = tally.get((K, C), 0) + 1
    out = {}
    kB = Q.cls(B)
    for (M, N), n in tally.items():
        kL = tuple(b - m for b, m in zip(kB, Q.cls(M)))
        kNM = tuple(x - y for x, y in zip(Q.cls(N), Q.cls(M)))
        g4 = Fraction(n * Q.aut(M) * Q.aut(N), Q.aut(A) * Q.aut(B))
        out[(M, N)] = (_v(Q.chi(kNM, kL), Q.q) * g4, kL)
    return out


def verify_cross_formula(Q, maxdims=(2, 2)):
    """Cross rule used by hd_mul against morphism counting and the structure constants."""
    objs = [o for dims in product(*(range(m + 1) for m in maxdims)) for o in Q.objects_of_class(dims)]
    cases = []
    for A in objs:
        for B in objs:
            rule = {}
            for c, M, al, _, N in cross_terms(Q, "heis", A, B):
                rule[(M, N)] = (c, al)
            brute = cross_via_morphisms(Q, A, B)
            sc = cross_via_structure_constants(Q, A, B)
            key = "%r|%r" % (A, B)
            if rule == brute == sc:
                cases.append(case(key, True))
            else:
                cases.append(case(key, False, repr(rule), repr(brute if rule != brute else sc)))
    return report("doubles", "6.2.12", cases)


def embed_word(hd, side, key):
    """Image of a normal-ordered word in HD(Xi) (side "heis") or HD(Xi*) (side "check")."""
    bk = hd.bk
    L, alpha, (beta, lam), R = key
    z = bk.zero()
    checked = side == "check"
    one = hd.one()

    def minus(A):
        return HDElem(hd, checked, {((one, (g, A)) if checked else ((g, A), one)): Fraction(1, bk.aut(A))
                                    for g in hd.cartans()})

    def plus(A):
        return hd_primal(hd, (hd.red(kzero(bk)), A), checked)

    ch = HDElem(hd, checked, {((one, (g, z)) if checked else ((g, z), one)): _char(bk, (beta, lam), g)
                              for g in hd.cartans()})
    K = hd_primal(hd, (hd.red(alpha), z), checked)
    if side == "heis":
        return minus(L) * K * ch * plus(R)
    return plus(L) * K * ch * minus(R)


def _embed(hd, x):
    out = HDElem(hd, x.side == "check")
    for key, c in x.terms.items():
        out = out + embed_word(hd, x.side, key).scale(c)
    return out


def verify_embedding(hd, side, keys, skip=None):
    """Normal-form products against products of the images in the literal double.

    ``skip(k1, k2)`` excludes pairs whose product the two presentations order
    differently (a character meeting Z^+ on the heis side)."""
    bk = hd.bk
    cases = []
    for k1 in keys:
        for k2 in keys:
            if skip and skip(k1, k2):
                continue
            x, y = DoubleElem(bk, side, {k1: 1}), DoubleElem(bk, side, {k2: 1})
            lhs = _embed(hd, x * y)
            rhs = embed_word(hd, side, k1) * embed_word(hd, side, k2)
            cases.append(case((k1, k2), lhs == rhs, None if lhs == rhs else repr(lhs),
                              None if lhs == rhs else repr(rhs)))
    return report("doubles", "embedding-" + side, cases)


def presentation_skip(bk, side):
    """Pairs where the presented doubles drop the Weyl relation K_b K^chi = chi(b) K^chi K_b
    or, on the heis side, let Z^+ pass K^chi with a factor."""
    z = bk.zero()
    zk = kzero(bk)

    def skip(k1, k2):
        (L1, a1, t1, R1), (L2, a2, t2, R2) = k1, k2
        char1, char2 = t1[1] != 1, t2[1] != 1
        if side == "check":
            return char1 and tuple(a2) != tuple(zk)
        makes_cartan = R1 != z and L2 != z
        return (char1 and (tuple(a2) != tuple(zk) or makes_cartan)) or (R1 != z and char2)
    return skip
