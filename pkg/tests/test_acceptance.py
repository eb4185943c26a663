"""End-to-end acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line; the lines are repeated in the
pytest terminal summary.
"""
import random
from fractions import Fraction
from itertools import product

import pytest

from hallp1 import autop1, doubles, qrel, symfun
from hallp1.cli import ledger_entries
from hallp1.finitary import CohP1, Quiver, Tor, TorsionLocal, Window, coh, torsion_length
from hallp1.hallhopf import (Elem, antipode_flags, antipode_obj, b_mul, hall_mul, passed, ringel_mul,
                             verify_associativity, verify_bialgebra, verify_hopf, verify_pair_adjoint)
from hallp1.scalars import Scalar


def _failures(*reps):
    out = []
    for r in reps:
        out += ["%s/%s %s" % (r["suite"], r["relation"], c["key"]) for c in r["cases"] if c["status"] == "fail"]
    return out[:5]


def _generator_triples(bk, w):
    lines = [coh((d,)) for d in range(w.minSummandDeg, w.maxSummandDeg + 1)]
    tors = [T for T in bk.torsion_objects(w.maxTorsionLength) if T.torsion]
    out = []
    for t in product(lines + tors, repeat=3):
        if (sum(len(x.bundle) for x in t) <= w.maxRank
                and sum(torsion_length(x) for x in t) <= w.maxTorsionLength):
            out.append(tuple(Elem.obj(bk, x) for x in t))
    return out


def test_criterion_01_hall_associativity(criterion):
    reps = []
    for q in (2, 3):
        bk = CohP1(q)
        triples = _generator_triples(bk, Window())
        for mul in (hall_mul, ringel_mul):
            reps.append(verify_associativity(bk, triples, mul))
    ok = all(passed(r) for r in reps) and all(r["cases"] for r in reps)
    n = sum(len(r["cases"]) for r in reps)
    criterion(1, "associativity of hall and ringel products", ok, "%d triples" % n)
    assert ok, _failures(*reps)


def test_criterion_02_green_bialgebra(criterion):
    reps = []
    bk = CohP1(2)
    tors = bk.torsion_objects(3)
    pairs = [(Elem.obj(bk, a), Elem.obj(bk, b)) for a in tors for b in tors
             if torsion_length(a) + torsion_length(b) <= 3]
    reps.append(verify_bialgebra(bk, pairs))
    for Q in (Quiver.a2(2), Quiver.kronecker(2)):
        objs = Q.objects(3)
        pairs = [(Elem.obj(Q, a), Elem.obj(Q, b)) for a in objs for b in objs
                 if sum(a.dims) + sum(b.dims) <= 3]
        reps.append(verify_bialgebra(Q, pairs))
    ok = all(passed(r) for r in reps)
    criterion(2, "coproduct is multiplicative (torsion, A2, Kronecker)", ok)
    assert ok, _failures(*reps)


def test_criterion_03_hopf_axioms(criterion):
    reps, flag_bad = [], []
    for q in (2, 3):
        bk = CohP1(q)
        tors = bk.torsion_objects(3)
        reps.append(verify_hopf(bk, [Elem.obj(bk, A) for A in tors]))
        flag_bad += [A for A in tors if antipode_obj(bk, A) != antipode_flags(bk, A)]
    ok = all(passed(r) for r in reps) and not flag_bad
    criterion(3, "antipode axiom and flag formula", ok)
    assert ok, (_failures(*reps), flag_bad[:3])


def test_criterion_04_pairing_adjointness(criterion):
    bk, w = CohP1(2), Window()
    objs = bk.objects(w)
    rng = random.Random(7)
    samples = []
    while len(samples) < 50:
        a, b = rng.choice(objs), rng.choice(objs)
        if len(a.bundle) + len(b.bundle) > 2 or torsion_length(a) + torsion_length(b) > 3:
            continue
        x, y = Elem.obj(bk, a), Elem.obj(bk, b)
        support = sorted(A for (_, A) in b_mul(x, y).terms if bk.in_window(A, w))
        if support:
            samples.append((x, y, Elem.obj(bk, rng.choice(support))))
    rep = verify_pair_adjoint(bk, samples, w)
    ok = passed(rep) and len(rep["cases"]) == 50
    criterion(4, "pairing adjointness on 50 random triples", ok)
    assert ok, _failures(rep)


def test_criterion_05_quantum_serre(criterion):
    reps = []
    for q in (2, 3):
        for Q in (Quiver.kronecker(q), Quiver.a2(q)):
            reps += [qrel.serre_check(Q, 0, 1), qrel.serre_check(Q, 1, 0)]
    ok = all(passed(r) for r in reps)
    criterion(5, "quantum Serre sums vanish (Kronecker, A2; q=2,3)", ok)
    assert ok, _failures(*reps)


def test_criterion_06_drinfeld_quadratic(criterion):
    reps = [qrel.drinfeld_quadratic_check(CohP1(q), 3) for q in (2, 3, 5)]
    ok = all(passed(r) for r in reps)
    criterion(6, "quadratic relation for |i|,|j| <= 3 (q=2,3,5)", ok)
    assert ok, _failures(*reps)


def test_criterion_07_eisenstein(criterion):
    bk = CohP1(2)
    bundles = [coh((0, 0)), coh((1, 0)), coh((2, 0))]
    rep = autop1.verify_eisenstein(bk, bundles, 12)
    table, _ = autop1.eisenstein_series(bk, coh((0, 0)), 12)
    ok = passed(rep) and table[0] == 3 and table[-1] == 6
    criterion(7, "Eisenstein rationality and functional equation", ok,
              "N_0=%d, N_-1=%d; the printed 12 is in the ledger" % (table[0], table[-1]))
    assert ok, (_failures(rep), table[0], table[-1])


@pytest.mark.xfail(strict=True, reason="the printed count 12 disagrees with the subsheaf count 6")
def test_criterion_07_printed_n_minus_1():
    table, _ = autop1.eisenstein_series(CohP1(2), coh((0, 0)), 12)
    assert table[-1] == 12


def test_criterion_08_generating_function_relations(criterion):
    bk = CohP1(2)
    reps = [autop1.verify_thm33(bk, r) for r in autop1.RELATIONS]
    ok = all(passed(r) for r in reps)
    criterion(8, "E/psi relations, coproducts, counit, antipode", ok)
    assert ok, _failures(*reps)


def test_criterion_09_macdonald_layer(criterion):
    bad = []
    for qx in (2, 3, 4):
        t = Scalar(Fraction(1, qx), 0, qx)
        for d in range(1, 5):
            p = symfun.power_sum((d,), d, qx)
            val = symfun.macdonald_pair(p, p, t)
            if val != Fraction(d) / (1 - Fraction(1, qx) ** d):
                bad.append(("p_d", qx, d))
    reps = [symfun.cauchy_check(Scalar(Fraction(1, qx), 0, qx), 3, 3) for qx in (2, 3)]
    for qx in (2, 3):
        tl = TorsionLocal(qx)
        for n in range(1, 5):
            for lam in map(tuple, _partitions(n)):
                for k in range(0, n + 1):
                    for mu in _partitions(k):
                        for nu in _partitions(n - k):
                            hl = symfun.hl_structure_constant(lam, mu, nu, qx)
                            if hl != tl.hall(Tor(tuple(mu)), Tor(tuple(nu)), Tor(lam)):
                                bad.append(("hl", qx, lam, mu, nu))
    reps += [symfun.green_macdonald_check(qx, 3) for qx in (2, 3)]
    ok = not bad and all(r["status"] == "pass" for r in reps)
    criterion(9, "power-sum norms, Cauchy identity, HL Hall numbers, pairing correspondence", ok)
    assert ok, (bad[:5], _failures(*reps))


def _partitions(n):
    from hallp1.finitary import partitions
    return partitions(n)


def test_criterion_10_pairings(criterion):
    bk = CohP1(2)
    rep, orient = autop1.verify_pairings(bk, 3, 3)
    a = autop1.a_coeffs(bk, 1)
    from hallp1.hallhopf import green_pair
    norm_a1 = green_pair(a[1], a[1])
    KK = green_pair(Elem.cartan(bk, (1, 0)), Elem.cartan(bk, (1, 0)))
    locs = [e["paperLocation"] for e in ledger_entries()]
    ok = passed(rep) and norm_a1 == 3 and KK == 2 and "(3.6.6)" in locs
    criterion(10, "pairings of E, a, K and the orientation ledger entry", ok, "orientation %s" % orient)
    assert ok, (_failures(rep), norm_a1, KK, locs)


def test_criterion_11_doubles(criterion):
    bk = CohP1(2)
    reps = [doubles.verify_cross_formula(Quiver.kronecker(2), (2, 2))]
    tl = TorsionLocal(2)
    hd = doubles.HopfData(tl, modulus=2)
    reps.append(doubles.kashaev_check(hd, doubles.kashaev_pairs(hd, 2)))
    w = doubles.default_window(2)
    reps += [doubles.verify_thm65(bk, r, 2, w) for r in ("6.5.1", "6.5.3", "6.5.4")]
    reps += [doubles.verify_thm67(bk, r, 2, w) for r in doubles.THM67]
    e, f = doubles.Eplus(bk, 0, w=w), doubles.Eminus(bk, 0, w=w)
    comm = doubles.restricted_identify(e * f - f * e)
    K = doubles.restricted_identify(doubles.d_cartan(bk, (1, 0), w=w))
    ok = all(passed(r) for r in reps) and comm == K
    criterion(11, "cross formula, Kashaev embedding, double relations, [E+_0, E-_0] = K", ok)
    assert ok, (_failures(*reps), comm == K)


def test_criterion_12_monomial_basis(criterion):
    rep = qrel.monomial_basis_check(CohP1(2), (0, 1), Window(2, -2, 2, 0))
    ok = passed(rep)
    criterion(12, "ordered monomials form a basis in degrees 0 and 1", ok)
    assert ok, rep


def test_criterion_13_positivity(criterion):
    rep = autop1.positivity_probe(CohP1(2), 4)
    ok = passed(rep) and len(rep["cases"]) == 4
    criterion(13, "Gram minors of a_1..a_4 positive", ok)
    assert ok, rep
