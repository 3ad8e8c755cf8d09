"""Command-line surface: one subcommand per operation family, plain
structured text output with stable field ordering, explicit precision
markers on every p-adic value.

Exit status: 0 on success, 1 when a verdict comes out false (or a bounded
search finds nothing), 2 on usage or computation errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .cyclo import CycloInt, QuadCycloNum, RootOfUnity, house, loxton_bound, n_roi, quotient_reduce
from .embedding import PlaceAboveP
from .errors import NotFound, PadicRigError
from .modforms import (
    Eigensystem,
    HeckeCharacter,
    ImagQuadField,
    charpoly_from_conjugates,
    charpoly_house_bounds,
    cm_check,
    cm_family_coeff,
    conjugate_ordinarity_check,
    FrobeniusPair,
    hecke_field_degree,
    p_stabilize,
    pipeline_run,
    ramanujan_check,
    slope_check,
    theta_build,
    trivial_bound_check,
)
from .padic import DEFAULT_PREC, PadicCyclo, PadicNum
from .rigidity import (
    ExponentialForm,
    Match,
    SampleSet,
    cancellation_probe,
    cramer_recover,
    fit_bounded,
    fit_single,
    vandermonde_select,
    verify_form,
)
from .series import (
    DEFAULT_TRUNC,
    PadicSeries,
    WeightPoint,
    binomial_series,
    eval_small,
    specialize,
    stable_polygon_probe,
    weierstrass_prep,
)

# every spec operation is reachable from exactly one subcommand
OP_COMMANDS = {
    "padic.ord": "eval",
    "padic.teichmuller": "stabilize",
    "padic.log_one_unit": "pipeline",
    "padic.cyclo_embed": "specialize",
    "lambda.weierstrass_prep": "wprep",
    "lambda.eval_small": "eval",
    "lambda.root_bound": "wprep",
    "lambda.binomial_series": "binom",
    "lambda.specialize": "specialize",
    "lambda.stable_polygon_probe": "newton",
    "newton.polygon": "newton",
    "newton.root_valuations": "newton",
    "cyclo.house": "house",
    "cyclo.n_roi": "nroi",
    "cyclo.loxton_bound": "loxton",
    "cyclo.quotient_reduce": "quotient",
    "cyclo.galois_orbit": "hecke-degree",
    "cyclo.trace_to_subfield": "charpoly",
    "rigidity.fit_single": "fit",
    "rigidity.fit_bounded": "fit",
    "rigidity.verify_form": "verify",
    "rigidity.cancellation_probe": "fit",
    "rigidity.vandermonde_select": "vandermonde",
    "rigidity.cramer_recover": "cramer",
    "modforms.theta_build": "theta",
    "modforms.cm_check": "cm",
    "modforms.ramanujan_check": "bounds",
    "modforms.trivial_bound_check": "bounds",
    "modforms.p_stabilize": "stabilize",
    "modforms.slope_check": "slope",
    "modforms.conjugate_ordinarity_check": "slope",
    "modforms.hecke_field_degree": "hecke-degree",
    "modforms.charpoly_from_conjugates": "charpoly",
    "modforms.charpoly_house_bounds": "charpoly",
    "modforms.cm_family_coeff": "pipeline",
    "modforms.pipeline_run": "pipeline",
}

SUBCOMMANDS = (
    "wprep", "eval", "binom", "specialize", "newton", "house", "nroi",
    "loxton", "quotient", "fit", "verify", "vandermonde", "cramer", "theta",
    "cm", "bounds", "stabilize", "slope", "hecke-degree", "charpoly",
    "pipeline", "selftest",
)


@dataclass
class RunConfig:
    p: int = 3
    prec: int = DEFAULT_PREC
    trunc: int = DEFAULT_TRUNC
    levels: tuple[int, ...] = (1, 2, 3)
    seed: int = 0
    place_sign: int = 0
    loxton_c: float = 0.01
    loxton_d: float = 1.0

    def validate(self) -> None:
        if self.prec < 1 or self.trunc < 1:
            raise ValueError("precision and truncation must be positive")
        if list(self.levels) != sorted(set(self.levels)):
            raise ValueError("levels must be strictly increasing")
        if self.loxton_d <= 0.6931471805599453:
            raise ValueError("--loxton-d must exceed log 2")


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _config(args) -> RunConfig:
    cfg = RunConfig(
        p=args.p,
        prec=args.prec,
        trunc=args.trunc,
        levels=tuple(int(t) for t in args.levels.split(",")),
        seed=args.seed,
        place_sign=args.place,
        loxton_c=args.loxton_c,
        loxton_d=args.loxton_d,
    )
    cfg.validate()
    return cfg


def _parse_zeta(txt: str) -> tuple[int, int]:
    r, a = txt.split(":")
    return int(r), int(a)


# -- subcommand handlers -------------------------------------------------------


def cmd_wprep(args) -> int:
    F = PadicSeries.from_text(_read(args.infile))
    w = weierstrass_prep(F)
    out = [
        f"k={w.k}",
        f"deg_f={w.degree}",
        f"root_bound={w.degree}",
        f"f = {w.f_text()}",
        "u-prefix = " + ", ".join(
            PadicNum(F.p, c, w.u.N).to_string() for c in w.u.res[:4]
        ),
    ]
    _emit(args, "\n".join(out))
    return 0


def cmd_eval(args) -> int:
    F = PadicSeries.from_text(_read(args.infile))
    r, a = _parse_zeta(args.zeta)
    t = PadicCyclo.zeta(F.p, r, a, F.N) - 1
    sv = eval_small(F, t)
    out = [
        f"t = zeta_{F.p}^{r}:{a} - 1   ord(t) = {t.ord()!r}",
        f"value = {sv.value!r}",
        f"ord(value) = {sv.value.ord()!r}",
        f"guaranteed modulus exponent = {sv.abs_prec!r}",
    ]
    _emit(args, "\n".join(out))
    return 0


def cmd_binom(args) -> int:
    cfg = _config(args)
    e: object
    if "/" in args.e:
        e = Fraction(args.e)
    else:
        e = int(args.e)
    F = binomial_series(e, p=cfg.p, L=cfg.trunc, N=cfg.prec)
    _emit(args, F.to_text())
    return 0


def cmd_specialize(args) -> int:
    F = PadicSeries.from_text(_read(args.infile))
    P = WeightPoint.parse(args.point)
    sv = specialize(F, P)
    out = [
        f"point: {P.render()}",
        f"value = {sv.value!r}",
        f"ord(value) = {sv.value.ord()!r}",
        f"guaranteed modulus exponent = {sv.abs_prec!r}",
    ]
    _emit(args, "\n".join(out))
    return 0


def cmd_newton(args) -> int:
    from . import newton as newton_mod

    cfg = _config(args)
    if args.probe_series:
        coeff_files = args.probe_series.split(",")
        coeffs = [PadicSeries.from_text(_read(f)) for f in coeff_files]
        ts = []
        for spec in args.zeta.split(","):
            r, a = _parse_zeta(spec)
            ts.append(PadicCyclo.zeta(coeffs[0].p, r, a, coeffs[0].N) - 1)
        vertex_sets = stable_polygon_probe(coeffs, ts)
        lines = [
            f"t#{i} vertices: {list(vs)}" for i, vs in enumerate(vertex_sets)
        ]
        _emit(args, "\n".join(lines))
        return 0
    ints = [int(t) for t in args.coeffs.split(",")]
    poly = [PadicNum.from_int(cfg.p, c, cfg.prec) for c in ints]
    np_ = newton_mod.polygon(poly)
    vals = newton_mod.root_valuations(np_)
    out = [np_.render(), "root valuations: " + ", ".join(repr(v) for v in vals)]
    _emit(args, "\n".join(out))
    return 0


def cmd_house(args) -> int:
    alpha = CycloInt.parse(args.alpha)
    enc = house(alpha)
    _emit(args, f"house({alpha.to_string()}) in [{float(enc.lo)!r}, {float(enc.hi)!r}]"
          f" width<{float(enc.width):.3e}")
    return 0


def cmd_nroi(args) -> int:
    alpha = CycloInt.parse(args.alpha)
    try:
        k = n_roi(alpha, args.conductor, args.cap)
    except NotFound as exc:
        _emit(args, f"not-found: {exc}")
        return 1
    _emit(args, f"n_roi = {k} (within mu_{args.conductor}, cap {args.cap})")
    return 0


def cmd_loxton(args) -> int:
    cfg = _config(args)
    v = loxton_bound(args.n, cfg.loxton_c, cfg.loxton_d)
    _emit(args, f"loxton_bound({args.n}, c={cfg.loxton_c}, d={cfg.loxton_d}) = {v:.12g}")
    return 0


def cmd_quotient(args) -> int:
    alpha = CycloInt.parse(args.alpha)
    tp = quotient_reduce(alpha, args.m, p=args.p if alpha.n == 1 else None)
    _emit(args, f"F_{tp.p}[y]/(y^{tp.p}^{tp.m} - 1) image: {list(tp.coeffs)}")
    return 0


def cmd_fit(args) -> int:
    sets = [SampleSet.from_text(_read(f)) for f in args.infile]
    sets.sort(key=lambda s: s.level)
    if args.probe is not None:
        pats = cancellation_probe(sets[-1], args.probe)
        lines = []
        for pt in pats:
            lines.append(
                f"zeta^{pt.zeta_exp}: zero_coeffs={list(pt.zero_coefficients)}"
                f" collisions={[(r, list(e)) for r, e in pt.collisions]}"
                f" zero_sums={list(pt.zero_sum_residues)}"
            )
        _emit(args, "\n".join(lines))
        return 0
    if args.single:
        root, e = fit_single(sets[-1])
        _emit(args, f"xi' = zeta_{root.order}^{root.exp}\n"
              f"e = {e.residue(e.abs_prec)} mod {sets[-1].p}^{e.abs_prec}")
        return 0
    rep = fit_bounded(sets, args.bound, raise_on_failure=False)
    _emit(args, rep.render())
    return 0 if rep.status == "Exact" else 1


def cmd_verify(args) -> int:
    form = ExponentialForm.parse(_read(args.form))
    s = SampleSet.from_text(_read(args.infile[0]))
    res = verify_form(form, s)
    _emit(args, f"verify: {res.value}")
    return 0 if res is Match.EXACT else 1


def cmd_vandermonde(args) -> int:
    form = ExponentialForm.parse(_read(args.form))
    zetas = vandermonde_select(form.coefficients(), form.exponents())
    lines = [f"zeta_{z.order}^{z.exp}" for z in zetas]
    _emit(args, "selected points (determinant certified nonzero):\n" + "\n".join(lines))
    return 0


def cmd_cramer(args) -> int:
    form = ExponentialForm.parse(_read(args.form))
    samples: dict[RootOfUnity, QuadCycloNum] = {}
    for ln in _read(args.samples).strip().splitlines():
        key, _, val = ln.partition("=")
        o, e = (int(t) for t in key.strip().split(":"))
        samples[RootOfUnity(o, e)] = QuadCycloNum.parse(val.strip())
    xs = cramer_recover(form.coefficients(), form.exponents(), args.k, samples)
    lines = [f"x_{i} = {x.to_string()}" for i, x in enumerate(xs)]
    _emit(args, "\n".join(lines))
    return 0


def _standard_psi(args) -> HeckeCharacter:
    fld = ImagQuadField(args.disc)
    x, y = (int(t) for t in args.m_gen.split(","))
    return HeckeCharacter.standard(fld, fld.element(x, y), args.k)


def cmd_theta(args) -> int:
    psi = _standard_psi(args)
    f = theta_build(psi, args.bound)
    _emit(args, f.to_text())
    return 0


def cmd_cm(args) -> int:
    f = Eigensystem.from_text(_read(args.infile))
    v = cm_check(f, args.disc, args.primes)
    _emit(args, f"cm_check: {'true' if v.ok else 'false'} ({v.detail})")
    return 0 if v.ok else 1


def cmd_bounds(args) -> int:
    f = Eigensystem.from_text(_read(args.infile))
    r = ramanujan_check(f, args.ell)
    t = trivial_bound_check(f, args.ell)
    _emit(args, f"ramanujan(ell={args.ell}): {'true' if r.ok else 'false'} ({r.detail})\n"
          f"trivial(ell={args.ell}): {'true' if t.ok else 'false'} ({t.detail})")
    return 0 if (r.ok and t.ok) else 1


def cmd_stabilize(args) -> int:
    cfg = _config(args)
    f = Eigensystem.from_text(_read(args.infile))
    place = PlaceAboveP(args.p, cfg.prec, cfg.place_sign)
    fs = p_stabilize(f, args.p, place)
    _emit(args, fs.to_text())
    return 0


def cmd_slope(args) -> int:
    cfg = _config(args)
    f = Eigensystem.from_text(_read(args.infile))
    if args.weight_one_conjugates:
        v = conjugate_ordinarity_check(f, args.p)
        _emit(args, f"conjugate_ordinarity: {'true' if v.ok else 'false'} ({v.detail})")
        return 0 if v.ok else 1
    place = PlaceAboveP(f.p or args.p, cfg.prec, cfg.place_sign)
    v, slope = slope_check(f, place)
    _emit(args, f"slope = {slope!r}\nin [0, k-1]: {'true' if v.ok else 'false'}")
    return 0 if v.ok else 1


def cmd_hecke_degree(args) -> int:
    f = Eigensystem.from_text(_read(args.infile))
    degree, within = hecke_field_degree(f, args.rank_bound)
    lines = [f"degree over character field = {degree}"]
    if within is not None:
        lines.append(f"within rank bound {args.rank_bound}: {'true' if within else 'false'}")
    _emit(args, "\n".join(lines))
    return 0 if (within is None or within) else 1


def cmd_charpoly(args) -> int:
    pairs = []
    for ln in _read(args.pairs).strip().splitlines():
        parts = ln.split("|")
        ell = int(parts[0])
        alpha = QuadCycloNum.parse(parts[1].strip())
        beta = QuadCycloNum.parse(parts[2].strip())
        pairs.append(FrobeniusPair(ell, alpha, beta))
    cp = charpoly_from_conjugates(pairs, args.eps_conductor)
    lines = [cp.render()]
    if args.k:
        for j, bound, ok in charpoly_house_bounds(cp, args.k):
            lines.append(f"house bound j={j}: C={bound:.6g} verified={'true' if ok else 'false'}")
    _emit(args, "\n".join(lines))
    return 0


def cmd_pipeline(args) -> int:
    cfg = _config(args)
    from .series import exponent_boost

    psi = _standard_psi(args)
    boost = exponent_boost(args.p, cfg.trunc)
    place = PlaceAboveP(args.p, cfg.prec + boost, cfg.place_sign)
    primes = [int(t) for t in args.ell.split(",")]
    rep = pipeline_run(psi, primes, cfg.levels, args.k_target, place)
    _emit(args, rep.render())
    return 0 if rep.all_ok else 1


def cmd_selftest(args) -> int:
    import random

    from . import newton as newton_mod

    cfg = _config(args)
    rng = random.Random(cfg.seed)
    lines: list[str] = []
    ok = True

    def report(name: str, passed: bool):
        nonlocal ok
        ok = ok and passed
        lines.append(f"selftest: {name} {'PASS' if passed else 'FAIL'}")

    # operation coverage audit
    cover_ok = set(OP_COMMANDS.values()) <= set(SUBCOMMANDS) and len(OP_COMMANDS) == 35
    ops_once = all(isinstance(v, str) for v in OP_COMMANDS.values())
    report("operation-coverage", cover_ok and ops_once)

    # ring laws
    good = True
    for _ in range(10):
        p = rng.choice((3, 5))
        xs = [PadicCyclo.zeta(p, rng.randint(0, 2), rng.randint(0, 8), 20) * rng.randint(-9, 9)
              for _ in range(3)]
        a, b, c = xs
        good = good and ((a + b) * c == a * c + b * c) and (a * b == b * a)
    report("cyclotomic-ring-laws", good)

    # weierstrass round trip
    good = True
    for _ in range(8):
        p = rng.choice((3, 5))
        L = 32
        mod = p**20
        d = rng.randint(0, 4)
        k = rng.randint(0, 2)
        f = [rng.randrange(0, mod // p) * p for _ in range(d)] + [1]
        u = [rng.randrange(1, p)] + [rng.randrange(0, mod) for _ in range(L - 1)]
        F = PadicSeries(p, f, 20, L) * PadicSeries(p, u, 20, L)
        F = PadicSeries(p, [c * p**k for c in F.res], 20, L)
        w = weierstrass_prep(F)
        good = good and w.k == k and w.degree == d and w.reconstruct() == F
    report("weierstrass-roundtrip", good)

    # newton polygon oracle on planted roots
    good = True
    for _ in range(8):
        p = rng.choice((3, 5))
        roots = []
        for _ in range(rng.randint(1, 4)):
            lvl = rng.randint(0, 1)
            rt = PadicCyclo.zeta(p, lvl, rng.randint(0, 3), 20) - 1 if lvl else \
                PadicCyclo.from_int(p, p ** rng.randint(0, 2) * rng.randint(1, p - 1), 0, 20)
            roots.append(rt)
        poly = [PadicCyclo.from_int(p, 1, 0, 20)]
        for rt in roots:
            poly = [poly[i] for i in range(len(poly))]
            new = [PadicCyclo.zero(p, 0, 20) for _ in range(len(poly) + 1)]
            for i, pc in enumerate(poly):
                new[i + 1] = new[i + 1] + pc
                new[i] = new[i] - pc * rt
            poly = new
        np_ = newton_mod.polygon(poly)
        got = sorted(repr(v) for v in newton_mod.root_valuations(np_))
        want = sorted(repr(rt.ord()) for rt in roots)
        good = good and got == want
    report("newton-oracle", good)

    # fit round trip
    good = True
    for _ in range(3):
        p = rng.choice((3, 5))
        res = rng.sample(range(p**2), 2)
        form = ExponentialForm(
            p,
            [(CycloInt.from_int(rng.randint(1, 5)), PadicNum.from_int(p, res[0])),
             (CycloInt.from_int(-rng.randint(1, 5)), PadicNum.from_int(p, res[1]))],
            1,
        )
        rep = fit_bounded(form.sample_tower((1, 2)), 2)
        got = sorted(rep.form.exponent_residues(2))
        want = sorted(e.residue(2) for _, e in form.terms)
        good = good and rep.status == "Exact" and got == want
    report("fit-roundtrip", good)

    # quotient homomorphism
    good = True
    for _ in range(10):
        x = CycloInt(9, [rng.randint(-5, 5) for _ in range(6)])
        y = CycloInt(9, [rng.randint(-5, 5) for _ in range(6)])
        lhs = quotient_reduce(x * y, 1)
        rhs = quotient_reduce(x, 1) * quotient_reduce(y, 1)
        good = good and lhs == rhs
    report("quotient-homomorphism", good)

    _emit(args, "\n".join(lines))
    return 0 if ok else 1


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="padicrig",
        description="exact p-adic/cyclotomic arithmetic and CM-family recovery",
    )
    ap.add_argument("--version", action="version", version=f"padicrig {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=3)
    common.add_argument("--prec", type=int, default=DEFAULT_PREC)
    common.add_argument("--trunc", type=int, default=DEFAULT_TRUNC)
    common.add_argument("--levels", default="1,2,3")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--place", type=int, default=0, choices=(0, 1),
                        help="sign choice for sqrt(-d) at the place above p")
    common.add_argument("--loxton-c", type=float, default=0.01)
    common.add_argument("--loxton-d", type=float, default=1.0)
    common.add_argument("--out", help="write the report to a file")

    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **extra):
        sp = sub.add_parser(name, parents=[common])
        sp.set_defaults(fn=fn)
        return sp

    sp = add("wprep", cmd_wprep)
    sp.add_argument("--in", dest="infile", required=True)

    sp = add("eval", cmd_eval)
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--zeta", required=True, help="r:a for t = zeta_{p^r}^a - 1")

    sp = add("binom", cmd_binom)
    sp.add_argument("--e", required=True, help="integer or fraction exponent")

    sp = add("specialize", cmd_specialize)
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--point", required=True, help='"k=<int> zeta=<r>:<a>"')

    sp = add("newton", cmd_newton)
    sp.add_argument("--coeffs", help="integer coefficients, constant first")
    sp.add_argument("--probe-series", help="comma list of series files (coefficients of X^i)")
    sp.add_argument("--zeta", help="comma list r:a of probe points", default="1:1,2:1,3:1")

    sp = add("house", cmd_house)
    sp.add_argument("--alpha", required=True, help='"n; c0,c1,..."')

    sp = add("nroi", cmd_nroi)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--conductor", type=int, required=True)
    sp.add_argument("--cap", type=int, default=4)

    sp = add("loxton", cmd_loxton)
    sp.add_argument("--n", type=int, required=True)

    sp = add("quotient", cmd_quotient)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--m", type=int, required=True)

    sp = add("fit", cmd_fit)
    sp.add_argument("--in", dest="infile", action="append", required=True)
    sp.add_argument("--bound", type=int, default=4)
    sp.add_argument("--single", action="store_true")
    sp.add_argument("--probe", type=int, default=None,
                    help="report cancellation patterns in F_p[y]/(y^(p^m)-1)")

    sp = add("verify", cmd_verify)
    sp.add_argument("--form", required=True)
    sp.add_argument("--in", dest="infile", action="append", required=True)

    sp = add("vandermonde", cmd_vandermonde)
    sp.add_argument("--form", required=True)

    sp = add("cramer", cmd_cramer)
    sp.add_argument("--form", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--samples", required=True,
                    help='file of lines "order:exp = m; d; a; b"')

    sp = add("theta", cmd_theta)
    sp.add_argument("--disc", type=int, required=True)
    sp.add_argument("--m-gen", required=True, help="x,y for the conductor generator x + y*omega")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--bound", type=int, default=100)

    sp = add("cm", cmd_cm)
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--disc", type=int, required=True)
    sp.add_argument("--primes", type=int, default=None)

    sp = add("bounds", cmd_bounds)
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--ell", type=int, required=True)

    sp = add("stabilize", cmd_stabilize)
    sp.add_argument("--in", dest="infile", required=True)

    sp = add("slope", cmd_slope)
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--weight-one-conjugates", action="store_true")

    sp = add("hecke-degree", cmd_hecke_degree)
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--rank-bound", type=int, default=None)

    sp = add("charpoly", cmd_charpoly)
    sp.add_argument("--pairs", required=True, help='file of lines "ell | Q-alpha | Q-beta"')
    sp.add_argument("--eps-conductor", type=int, default=1)
    sp.add_argument("--k", type=int, default=None)

    sp = add("pipeline", cmd_pipeline)
    sp.add_argument("--disc", type=int, required=True)
    sp.add_argument("--m-gen", required=True)
    sp.add_argument("--k", type=int, default=2, help="weight anchor of the character")
    sp.add_argument("--ell", required=True, help="comma list of primes")
    sp.add_argument("--k-target", type=int, default=2)

    add("selftest", cmd_selftest)

    return ap


def dispatch(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except PadicRigError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    except (ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2


def main() -> None:
    sys.exit(dispatch())
