# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting kernels over F_p.  Mirrors ``_kernels_py`` exactly."""
from itertools import combinations
from libc.stdlib cimport malloc, free

cdef enum:
    MAXN = 32


cdef inline long _inv(long a, long p):
    cdef long r = 1, b = a % p, e = p - 2
    while e > 0:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


cdef int _rref(long* m, int nrows, int ncols, long p, int* piv):
    cdef int r = 0, c, i, j, sel
    cdef long inv, f
    for c in range(ncols):
        sel = -1
        for i in range(r, nrows):
            if m[i * ncols + c] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != r:
            for j in range(ncols):
                f = m[r * ncols + j]
                m[r * ncols + j] = m[sel * ncols + j]
                m[sel * ncols + j] = f
        inv = _inv(m[r * ncols + c], p)
        for j in range(ncols):
            m[r * ncols + j] = (m[r * ncols + j] * inv) % p
        for i in range(nrows):
            if i != r and m[i * ncols + c] != 0:
                f = m[i * ncols + c]
                for j in range(ncols):
                    m[i * ncols + j] = (m[i * ncols + j] - f * m[r * ncols + j]) % p
                    if m[i * ncols + j] < 0:
                        m[i * ncols + j] += p
        piv[r] = c
        r += 1
        if r == nrows:
            break
    return r


def rref_mod(rows, int ncols, long p):
    cdef int n = len(rows), i, j, r
    if n == 0 or ncols == 0:
        return [], []
    cdef long* m = <long*> malloc(n * ncols * sizeof(long))
    cdef int* piv = <int*> malloc((n if n < ncols else ncols) * sizeof(int) + sizeof(int))
    try:
        for i in range(n):
            row = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = row[j] % p
        r = _rref(m, n, ncols, p, piv)
        out = [tuple(m[i * ncols + j] for j in range(ncols)) for i in range(r)]
        return out, [piv[i] for i in range(r)]
    finally:
        free(m)
        free(piv)


def rank_mod(rows, int ncols, long p):
    return len(rref_mod(rows, ncols, p)[1])


def nullspace_mod(rows, int ncols, long p):
    red, piv = rref_mod(rows, ncols, p)
    pset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        x = [0] * ncols
        x[f] = 1
        for r, c in zip(red, piv):
            x[c] = (-r[f]) % p
        basis.append(x)
    return basis


def stable_subspaces(int n, int k, long p, mats):
    cdef long rows[MAXN][MAXN]
    cdef long A[8][MAXN][MAXN]
    cdef long img[MAXN]
    cdef int pv[MAXN]
    cdef int fi[MAXN * MAXN]
    cdef int fc[MAXN * MAXN]
    cdef int digits[MAXN * MAXN]
    cdef int nm = len(mats), nf, i, j, a, b, s, c
    cdef long f, total, idx
    cdef bint ok
    if n > MAXN or nm > 8:
        raise ValueError("stable_subspaces: size out of range")
    for a in range(nm):
        for i in range(n):
            for j in range(n):
                A[a][i][j] = mats[a][i][j] % p
    out = []
    for piv in combinations(range(n), k):
        pset = set(piv)
        nf = 0
        for i in range(k):
            pv[i] = piv[i]
            for c in range(piv[i] + 1, n):
                if c not in pset:
                    fi[nf] = i
                    fc[nf] = c
                    nf += 1
        total = 1
        for i in range(nf):
            total *= p
        for idx in range(total):
            f = idx
            # last free position varies fastest, as in itertools.product
            for i in range(nf - 1, -1, -1):
                digits[i] = f % p
                f //= p
            for i in range(k):
                for j in range(n):
                    rows[i][j] = 0
                rows[i][pv[i]] = 1
            for i in range(nf):
                rows[fi[i]][fc[i]] = digits[i]
            ok = True
            for a in range(nm):
                if not ok:
                    break
                for b in range(k):
                    for i in range(n):
                        f = 0
                        for j in range(n):
                            f += A[a][i][j] * rows[b][j]
                        img[i] = f % p
                    for s in range(k):
                        f = img[pv[s]]
                        if f != 0:
                            for j in range(n):
                                img[j] = (img[j] - f * rows[s][j]) % p
                                if img[j] < 0:
                                    img[j] += p
                    for j in range(n):
                        if img[j] != 0:
                            ok = False
                            break
                    if not ok:
                        break
            if ok:
                out.append(tuple(tuple(rows[i][j] for j in range(n)) for i in range(k)))
    return out


cdef inline int _pdeg(long* a, int n):
    cdef int d = n - 1
    while d >= 0 and a[d] == 0:
        d -= 1
    return d


cdef int _pgcd(long* a0, int da0, long* b0, int db0, long p, long* out):
    """Monic gcd of two polynomials given by degree; returns its degree."""
    cdef long a[MAXN]
    cdef long b[MAXN]
    cdef long* x = a
    cdef long* y = b
    cdef long* tmp
    cdef int i, s, da = da0, db = db0, dt
    cdef long inv, f
    for i in range(MAXN):
        a[i] = a0[i] if i <= da0 else 0
        b[i] = b0[i] if i <= db0 else 0
    while db >= 0:
        inv = _inv(y[db], p)
        while da >= db:
            f = (x[da] * inv) % p
            s = da - db
            for i in range(db + 1):
                x[i + s] = (x[i + s] - f * y[i]) % p
                if x[i + s] < 0:
                    x[i + s] += p
            da = _pdeg(x, da + 1)
        tmp = x
        x = y
        y = tmp
        dt = da
        da = db
        db = dt
    inv = _inv(x[da], p)
    for i in range(da + 1):
        out[i] = (x[i] * inv) % p
    return da


def form_pair_census(int n1, int n2, long p):
    cdef int h1 = n1 + 1 if n1 >= 0 else 0
    cdef int h2 = n2 + 1 if n2 >= 0 else 0
    cdef int big = h1 + h2 + 2
    cdef long f1[MAXN]
    cdef long f2[MAXN]
    cdef long g[MAXN]
    cdef long total = 1, idx, r
    cdef int i, d1, d2, dg, o1, o2
    if h1 >= MAXN or h2 >= MAXN:
        raise ValueError("form_pair_census: degree out of range")
    for i in range(h1 + h2):
        total *= p
    tally = {}
    for i in range(MAXN):
        f1[i] = 0
        f2[i] = 0
    for idx in range(total):
        r = idx
        # same digit order as itertools.product: last position varies fastest
        for i in range(h2 - 1, -1, -1):
            f2[i] = r % p
            r //= p
        for i in range(h1 - 1, -1, -1):
            f1[i] = r % p
            r //= p
        d1 = _pdeg(f1, h1)
        d2 = _pdeg(f2, h2)
        if d1 < 0 and d2 < 0:
            continue
        if d1 < 0:
            dg = _pgcd(f2, d2, f1, -1, p, g)
        elif d2 < 0:
            dg = _pgcd(f1, d1, f2, -1, p, g)
        else:
            dg = _pgcd(f1, d1, f2, d2, p, g)
        o1 = n1 - d1 if d1 >= 0 else big
        o2 = n2 - d2 if d2 >= 0 else big
        key = (tuple(g[i] for i in range(dg + 1)), o1 if o1 < o2 else o2)
        tally[key] = tally.get(key, 0) + 1
    return {k: c // (p - 1) for k, c in tally.items()}
