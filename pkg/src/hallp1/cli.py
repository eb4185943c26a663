"""Command-line front end.

Every verb prints one JSON document with sorted keys.  Exit codes: 0 when the
computation succeeds or every check passes, 1 when a check fails (the report is
still printed), 2 on usage or configuration errors.

A flat JSON config file may be given with ``--config``; its keys act as
defaults for the chosen verb.  ``HALLP1_OUTPUT_DIR`` redirects relative
``--out`` paths.
"""
import argparse
import json
import os
import sys
from fractions import Fraction

from . import autop1, doubles, hallhopf, qrel, symfun
from .finitary import PRIMES, CohP1, Quiver, TorsionLocal, UnsupportedShape, Window, coh
from .hallhopf import WindowInsufficient, parse_element
from .scalars import Scalar

BACKENDS = ("coh-p1", "torsion", "kronecker", "a2")


class ConfigError(ValueError):
    pass


def make_backend(name, q):
    if name == "coh-p1":
        return CohP1(q)
    if name == "torsion":
        return TorsionLocal(q)
    if name == "kronecker":
        return Quiver.kronecker(q)
    if name == "a2":
        return Quiver.a2(q)
    raise ConfigError("unknown backend %r" % (name,))


def _window(s, base=None):
    """'lo,hi' or 'lo,hi,torsion' for summand degrees and torsion length."""
    base = base or Window()
    if not s:
        return base
    parts = [int(x) for x in s.split(",")]
    if len(parts) not in (2, 3):
        raise ConfigError("window is lo,hi[,maxTorsionLength]")
    tors = parts[2] if len(parts) == 3 else base.maxTorsionLength
    return Window(base.maxRank, parts[0], parts[1], tors)


def _ints(s):
    return tuple(int(x) for x in s.split(",") if x.strip())


def _jsonable(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, Fraction):
        return str(x)
    return str(x)


def dump(doc):
    return json.dumps(doc, sort_keys=True, indent=2, default=_jsonable)


# ------------------------------------------------------------------ verbs

_PRODUCTS = {"hall": hallhopf.hall_mul, "ringel": hallhopf.ringel_mul, "b": hallhopf.b_mul}


def cmd_mul(a):
    bk = make_backend(a.backend, a.q)
    mul = _PRODUCTS[a.product]
    xs = [parse_element(bk, e) for e in a.elements]
    out = xs[0]
    for y in xs[1:]:
        out = mul(out, y)
    return {"product": a.product, "terms": hallhopf.elem_to_json(out)}, True


def cmd_comul(a):
    bk = make_backend(a.backend, a.q)
    t = hallhopf.coproduct(parse_element(bk, a.element), _window(a.window))
    return {"terms": hallhopf.tensor_to_json(t)}, True


def cmd_pair(a):
    bk = make_backend(a.backend, a.q)
    val = hallhopf.green_pair(parse_element(bk, a.x), parse_element(bk, a.y))
    return {"value": Scalar(val, 0, bk.q) if not isinstance(val, Scalar) else val}, True


def cmd_antipode(a):
    bk = make_backend(a.backend, a.q)
    x = hallhopf.antipode(parse_element(bk, a.element), _window(a.window))
    return {"terms": hallhopf.elem_to_json(x)}, True


def cmd_zeta(a):
    z = autop1.zeta_p1(a.q)
    return [int(c) for c in z.expand(a.terms, 0)], True


def cmd_eisenstein(a):
    bk = CohP1(a.q)
    V = coh(_ints(a.v))
    table, G = autop1.eisenstein_series(bk, V, a.trunc)
    rep = autop1.verify_eisenstein(bk, [V], a.trunc)
    doc = {"bundle": list(V.bundle), "counts": {str(k): table[k] for k in sorted(table, reverse=True)},
           "rational": repr(G), "report": rep}
    return doc, hallhopf.passed(rep)


def cmd_hl(a):
    t = Scalar(Fraction(a.t), 0, a.q)
    return symfun.hl_expand(_ints(a.mu), a.n, t).to_json(), True


def cmd_serre(a):
    rep = qrel.serre_check(make_backend(a.quiver, a.q), a.i, a.j)
    return rep, hallhopf.passed(rep)


def cmd_basis_check(a):
    w = _window(a.window, Window(2, -2, 2, 0))
    rep = qrel.monomial_basis_check(CohP1(a.q), (a.deg,), w)
    return rep, hallhopf.passed(rep)


def cmd_double(a):
    bk = CohP1(a.q)
    if a.thm == "6.5":
        rep = doubles.verify_thm65(bk, "6.5.%s" % a.rel, a.range)
    elif a.thm == "6.7":
        rep = doubles.verify_thm67(bk, "6.7.%s" % a.rel, a.range)
    elif a.thm == "cross":
        rep = doubles.verify_cross_formula(Quiver.kronecker(a.q))
    elif a.thm == "kashaev":
        rep = _kashaev(a.q)
    else:
        raise ConfigError("unknown --thm %r" % (a.thm,))
    return rep, hallhopf.passed(rep)


def _kashaev(q):
    tl = TorsionLocal(q)
    hd = doubles.HopfData(tl, modulus=2)
    return doubles.kashaev_check(hd, doubles.kashaev_pairs(hd, 2))


def _suite_reports(a):
    """Reports for ``verify <suite>``."""
    q = a.q
    name = a.suite
    if name == "serre":
        return [qrel.serre_check(make_backend(a.quiver, q), a.i, a.j)]
    if name == "thm33":
        w = _window(a.window, Window(2, -3, 3, 2)) if a.window else None
        return [autop1.verify_thm33(CohP1(q), a.rel, w)]
    if name == "drinfeld":
        return [qrel.drinfeld_quadratic_check(CohP1(q), a.range)]
    if name == "basis":
        return [qrel.monomial_basis_check(CohP1(q))]
    if name == "eisenstein":
        bs = [coh((0, 0)), coh((1, 0)), coh((2, 0))]
        return [autop1.verify_eisenstein(CohP1(q), bs)]
    if name == "pairings":
        return [autop1.verify_pairings(CohP1(q))[0]]
    if name == "positivity":
        return [autop1.positivity_probe(CohP1(q))]
    if name == "thm65":
        return [doubles.verify_thm65(CohP1(q), r, a.range) for r in doubles.THM65]
    if name == "thm67":
        return [doubles.verify_thm67(CohP1(q), r, a.range) for r in doubles.THM67]
    if name == "cross":
        return [doubles.verify_cross_formula(Quiver.kronecker(q))]
    if name == "kashaev":
        return [_kashaev(q)]
    raise ConfigError("unknown suite %r" % (name,))


SUITES = ("serre", "thm33", "drinfeld", "basis", "eisenstein", "pairings", "positivity",
          "thm65", "thm67", "cross", "kashaev")


def cmd_verify(a):
    reps = _suite_reports(a)
    ok = all(hallhopf.passed(r) for r in reps)
    if len(reps) == 1:
        return reps[0], ok
    return reps, ok


# ------------------------------------------------------------------ ledger

def _eisenstein_n(q):
    table, _ = autop1.eisenstein_series(CohP1(q), coh((0, 0)), 12)
    return table[-1]


def _antipode_ok(q):
    bk = CohP1(q)
    ok = hallhopf.passed(autop1.check_antipode(bk))
    return ok and autop1.antipode_E_piece(bk, 1, 0) != autop1.printed_antipode_E_piece(bk, 1, 0)


def _twist_ok(q):
    tl = TorsionLocal(q)
    hd = doubles.HopfData(tl, modulus=2)
    z, k0, t0 = tl.zero(), (0,), ((0,), 1)
    keys = [(A, k0, t0, z) for A in tl.objects(2)] + [(z, k0, t0, A) for A in tl.objects(2)]
    return all(hallhopf.passed(doubles.verify_embedding(hd, side, keys)) for side in ("heis", "check"))


def _ledger_rows():
    q = 2
    bk = CohP1(q)
    return [
        ("(3.3.6)", "S(E(t)) = -E(c^-1 t) psi(q^(-n/2) t)^-1 K^-n",
         "S(E(t)) = -E(c^-1 t) psi(c^-1 q^(-n/2) t)^-1 K^-n", "autop1",
         lambda: _antipode_ok(q)),
        ("(3.5.8)", "kappa_d = (1/d) sum nu_i alpha_i^d (q^d - 1) q^(n+m-3/2)",
         "kappa_d = v^-d (1 - q^(2d)) / d", "autop1",
         lambda: (lambda r: hallhopf.passed(r) and not r["printed_match"])(autop1.commutator_ad_check(bk))),
        ("(3.5.9)", "log LHom(q^(n+m-3/2) t2/t1) / LHom(q^(n+m-1/2) t2/t1)",
         "log zeta(v^-1 t2/t1) / zeta(v t2/t1)", "autop1",
         lambda: hallhopf.passed(autop1.commutator_ad_check(bk))),
        ("(3.6.6)", "(a_d, a_d) from log zeta(x)/zeta(qx)",
         "(a_d, a_d) from log zeta(qx)/zeta(x) = (q^(2d) - 1)/d", "autop1",
         lambda: autop1.verify_pairings(bk, 1, 3)[1] == "reversed"),
        ("(3.7.6)", "K^n E(t_s1) (x) K^n E(t_s2)",
         "E(t_s1) (x) K E(t_s2)", "autop1",
         lambda: hallhopf.passed(autop1.verify_constant_term(bk))),
        ("Prop 3.4.3", "N_-1(O+O) = 12", "N_-1(O+O) = 6", "autop1",
         lambda: _eisenstein_n(q) == 6),
        ("(6.2.7)", "Z_A Z_B = sum g^C_AB Z_C", "Z_A Z_B = <B,A> sum g^C_AB Z_C", "doubles",
         lambda: _twist_ok(q)),
        ("(6.2.13)", "E^L_MB x E^N_LA", "E^B_ML x E^A_LN", "doubles",
         lambda: hallhopf.passed(doubles.verify_cross_formula(Quiver.kronecker(q), (1, 1)))),
        ("(6.3.10)", "W-_A -> sum Z-_(A/A') K^(A) (x) Zc-_(A')",
         "W-_A -> sum K^(A') Z-_(A/A') (x) Zc-_(A')", "doubles",
         lambda: hallhopf.passed(doubles.verify_thm67(bk, "6.7.5", 1))),
        ("(6.5.4)", "psi+(t1) psi-(t2) = zeta(t1/t2)/zeta(q t1/t2) psi-(t2) psi+(t1)",
         "psi+(t1) psi-(t2) = zeta(q t1/t2)/zeta(t1/t2) psi-(t2) psi+(t1)", "doubles",
         lambda: doubles.verify_thm65(bk, "6.5.4", 1).get("orientation") == "inverse"),
        ("(6.5.8)", "psi-(t1) psi+(t2) = zeta(t1/t2)/zeta(q t1/t2) psi+(t2) psi-(t1)",
         "psi-(t1) psi+(t2) = zeta(q t1/t2)/zeta(t1/t2) psi+(t2) psi-(t1)", "doubles",
         lambda: doubles.verify_thm65(bk, "6.5.8", 1).get("orientation") == "inverse"),
        ("(6.7.5)", "K Phi+(v^-1 c^(1/2) t1) - K^-1 Phi-(v c^(-1/2) t2)",
         "K Phi+(v^-1 c^(-1/2) t1) - K^-1 Phi-(v c^(1/2) t2)", "doubles",
         lambda: doubles.verify_thm67(bk, "6.7.5", 1).get("orientation") == "flipped"),
    ]


def ledger_entries():
    out = []
    for loc, printed, computed, suite, check in _ledger_rows():
        if check():
            out.append({"paperLocation": loc, "printedForm": printed,
                        "computedForm": computed, "suite": suite})
    return out


def cmd_ledger(a):
    return ledger_entries(), True


# ------------------------------------------------------------------ parser

def _common(p, backend=True):
    p.add_argument("--q", type=int, default=2)
    if backend:
        p.add_argument("--backend", choices=BACKENDS, default="coh-p1")
    p.add_argument("--out")


def build_parser():
    ap = argparse.ArgumentParser(prog="hallp1", description="Hall algebra computations and checks")
    ap.add_argument("--config", help="flat JSON file of defaults")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("mul", help="multiply elements")
    _common(p)
    p.add_argument("--product", choices=sorted(_PRODUCTS), default="hall")
    p.add_argument("elements", nargs="+")
    p.set_defaults(func=cmd_mul)

    for name, fn in (("comul", cmd_comul), ("antipode", cmd_antipode)):
        p = sub.add_parser(name)
        _common(p)
        p.add_argument("--window")
        p.add_argument("element")
        p.set_defaults(func=fn)

    p = sub.add_parser("pair", help="Green pairing")
    _common(p)
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("zeta", help="coefficients of the zeta function of P^1")
    _common(p, False)
    p.add_argument("--terms", type=int, default=5)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("eisenstein")
    _common(p, False)
    p.add_argument("--v", default="0,0", help="summand degrees c1,c2")
    p.add_argument("--trunc", type=int, default=12)
    p.set_defaults(func=cmd_eisenstein)

    p = sub.add_parser("hl", help="Hall-Littlewood polynomial in the monomial basis")
    _common(p, False)
    p.add_argument("--mu", required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--t", default="1/2")
    p.set_defaults(func=cmd_hl)

    p = sub.add_parser("serre")
    _common(p, False)
    p.add_argument("--quiver", choices=("kronecker", "a2"), default="kronecker")
    p.add_argument("--i", type=int, default=0)
    p.add_argument("--j", type=int, default=1)
    p.set_defaults(func=cmd_serre)

    p = sub.add_parser("basis-check")
    _common(p, False)
    p.add_argument("--deg", type=int, default=0)
    p.add_argument("--window", default="-2,2")
    p.set_defaults(func=cmd_basis_check)

    p = sub.add_parser("double")
    dsub = p.add_subparsers(dest="action", required=True)
    pv = dsub.add_parser("verify")
    _common(pv, False)
    pv.add_argument("--thm", choices=("6.5", "6.7", "cross", "kashaev"), required=True)
    pv.add_argument("--rel", default="1")
    pv.add_argument("--range", type=int, default=2)
    pv.set_defaults(func=cmd_double)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    _common(p, False)
    p.add_argument("--quiver", choices=("kronecker", "a2"), default="kronecker")
    p.add_argument("--i", type=int, default=0)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--rel", default="e-e")
    p.add_argument("--window")
    p.add_argument("--range", type=int, default=2)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ledger", help="printed versus computed forms, each backed by a passing check")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ledger)
    return ap


def _apply_config(ap, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    try:
        with open(known.config) as fh:
            cfg = json.load(fh)
    except (OSError, ValueError) as e:
        raise ConfigError("cannot read config: %s" % e)
    if not isinstance(cfg, dict) or any(isinstance(v, (dict, list)) for v in cfg.values()):
        raise ConfigError("config must be a flat JSON object")
    stack = [ap]
    while stack:
        p = stack.pop()
        dests = {a.dest for a in p._actions}
        p.set_defaults(**{k: v for k, v in cfg.items() if k in dests})
        for act in p._actions:
            if isinstance(act, argparse._SubParsersAction):
                stack.extend(act.choices.values())


def _write(text, path):
    if not path:
        sys.stdout.write(text + "\n")
        return
    base = os.environ.get("HALLP1_OUTPUT_DIR")
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    with open(path, "w") as fh:
        fh.write(text + "\n")


def run(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        _apply_config(ap, argv)
        a = ap.parse_args(argv)
    except ConfigError as e:
        sys.stderr.write("error: %s\n" % e)
        return 2
    except SystemExit as e:
        return 2 if e.code else 0
    if hasattr(a, "q") and a.q not in PRIMES and not (a.verb == "zeta" and a.q >= 2):
        sys.stderr.write("error: q must be one of %s\n" % (", ".join(map(str, PRIMES)),))
        return 2
    try:
        doc, ok = a.func(a)
    except (ConfigError, WindowInsufficient, UnsupportedShape, ValueError) as e:
        sys.stderr.write("error: %s\n" % e)
        return 2
    _write(dump(doc), getattr(a, "out", None))
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
