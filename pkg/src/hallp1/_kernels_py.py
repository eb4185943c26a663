"""Pure-Python counting kernels over F_p (reference implementation).

Same API as the compiled ``_ckernels`` module; ``kernels`` picks one at import.
Vectors and matrices are plain lists of ints in [0, p).
"""
from itertools import combinations, product


def _inv(a, p):
    return pow(a, p - 2, p)


def rref_mod(rows, ncols, p):
    """Reduced row echelon form.  Returns (rows, pivots) with zero rows dropped."""
    m = [[x % p for x in r] for r in rows]
    piv = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(m)):
            if m[i][c]:
                sel = i
                break
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = _inv(m[r][c], p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        piv.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(x) for x in m[:r]], piv


def rank_mod(rows, ncols, p):
    return len(rref_mod(rows, ncols, p)[1])


def nullspace_mod(rows, ncols, p):
    """Basis of {x : A x = 0} where A has the given rows."""
    red, piv = rref_mod(rows, ncols, p)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for r, c in zip(red, piv):
            x[c] = (-r[f]) % p
        basis.append(x)
    return basis


def _reduce(vec, red, piv, p):
    v = list(vec)
    for r, c in zip(red, piv):
        if v[c]:
            f = v[c]
            v = [(x - f * y) % p for x, y in zip(v, r)]
    return v


def stable_subspaces(n, k, p, mats):
    """All k-dim subspaces of F_p^n (as RREF row tuples) stable under every matrix.

    A matrix is a list of n rows; it acts on column vectors, and a subspace is
    stable when A b lies in the span for each basis row b.
    """
    out = []
    for piv in combinations(range(n), k):
        free = [(i, c) for i in range(k) for c in range(piv[i] + 1, n) if c not in piv]
        for vals in product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, c in enumerate(piv):
                rows[i][c] = 1
            for (i, c), x in zip(free, vals):
                rows[i][c] = x
            ok = True
            for A in mats:
                for b in rows:
                    img = [sum(A[i][j] * b[j] for j in range(n)) % p for i in range(n)]
                    if any(_reduce(img, rows, piv, p)):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(tuple(tuple(r) for r in rows))
    return out


def _pdeg(a):
    d = len(a) - 1
    while d >= 0 and a[d] == 0:
        d -= 1
    return d


def _pgcd(a, b, p):
    a = list(a)
    b = list(b)
    da, db = _pdeg(a), _pdeg(b)
    while db >= 0:
        inv = _inv(b[db], p)
        while da >= db:
            f = (a[da] * inv) % p
            s = da - db
            for i in range(db + 1):
                a[i + s] = (a[i + s] - f * b[i]) % p
            da = _pdeg(a)
        a, b = b, a
        da, db = db, da
    inv = _inv(a[da], p)
    return tuple((a[i] * inv) % p for i in range(da + 1))


def form_pair_census(n1, n2, p):
    """Census of pairs (f1, f2) of binary forms of degrees n1, n2 over F_p, mod scalars.

    Forms are stored dehomogenised as polynomials of degree <= n_i (a negative
    n_i forces the zero form).  Key: (monic finite gcd coefficients, order of
    the gcd at infinity); value: number of pairs up to scalars with that gcd.
    """
    h1, h2 = max(n1 + 1, 0), max(n2 + 1, 0)
    big = h1 + h2 + 2
    tally = {}
    for vals in product(range(p), repeat=h1 + h2):
        f1 = vals[:h1]
        f2 = vals[h1:]
        d1, d2 = _pdeg(f1), _pdeg(f2)
        if d1 < 0 and d2 < 0:
            continue
        if d1 < 0:
            g = _pgcd(f2, (), p)
        elif d2 < 0:
            g = _pgcd(f1, (), p)
        else:
            g = _pgcd(f1, f2, p)
        o1 = n1 - d1 if d1 >= 0 else big
        o2 = n2 - d2 if d2 >= 0 else big
        key = (g, min(o1, o2))
        tally[key] = tally.get(key, 0) + 1
    return {k: c // (p - 1) for k, c in tally.items()}
