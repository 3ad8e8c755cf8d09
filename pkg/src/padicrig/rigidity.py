"""Recovery of sparse exponential forms sum d_i (1+T)^(e_i) from their
values at full levels of p-power roots of unity, plus the constructive
Vandermonde point selection and exact Cramer solve that recover the
weight-direction factors pi_i^(k-1) at higher weight.

Recovery is exact finite Fourier inversion: sampling every zeta in
mu_{p^n} makes the character sums c_hat_r = p^(-n) sum_zeta value(zeta)
zeta^(-r) exact integer computations in Z[xi, zeta_{p^n}]; division by
p^n must be exact on every coordinate, and any remainder is surfaced as a
failure, never rounded.  Cross-level support refinement replaces a
limit-point argument: exponents recovered mod p^n at one level must lift
those recovered mod p^(n-1) below with matching coefficient sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .cyclo import CycloInt, QuadCycloNum, RootOfUnity, root_of_unity_index
from .errors import (
    DegenerateInput,
    InconsistentSamples,
    LevelMismatch,
    NotDivisible,
    NotMonomial,
    SingularSystem,
    SupportTooLarge,
)
from .padic import DEFAULT_PREC, PadicNum
from .series import DEFAULT_TRUNC, PadicSeries, binomial_series


class Match(Enum):
    EXACT = "exact"
    MISMATCH = "mismatch"


# --------------------------------------------------------------------------
# exponential forms
# --------------------------------------------------------------------------


class ExponentialForm:
    """A list of (coefficient, exponent) pairs representing
    sum d_i (1+T)^(e_i), coefficients cyclotomic integers, exponents
    p-adic integers with tracked precision.

    Canonical form: zero coefficients dropped, exponents pairwise distinct
    at working precision (terms with matching exponent residues merge),
    terms sorted by exponent residue."""

    __slots__ = ("p", "terms", "tame_order")

    def __init__(self, p: int, terms, tame_order: int = 1):
        merged: list[tuple[CycloInt, PadicNum]] = []
        for d, e in terms:
            if isinstance(e, int):
                e = PadicNum.from_int(p, e)
            hit = None
            for idx, (d0, e0) in enumerate(merged):
                if e0 == e:  # equality at the shared precision
                    hit = idx
                    break
            if hit is None:
                merged.append((d, e))
            else:
                merged[hit] = (merged[hit][0] + d, merged[hit][1])
        merged = [(d, e) for d, e in merged if not d.is_zero]
        min_prec = min((e.abs_prec for _, e in merged), default=0)
        merged.sort(key=lambda te: te[1].residue(min_prec) if min_prec else 0)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "terms", tuple(merged))
        object.__setattr__(self, "tame_order", tame_order)

    def __setattr__(self, *a):
        raise AttributeError("ExponentialForm is immutable")

    def __len__(self):
        return len(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficients(self) -> list[CycloInt]:
        return [d for d, _ in self.terms]

    def exponents(self) -> list[PadicNum]:
        return [e for _, e in self.terms]

    def exponent_residues(self, level: int) -> list[int]:
        return [e.residue(level) for _, e in self.terms]

    # -- exact evaluation at weight one ------------------------------------

    def conductor_at_level(self, level: int) -> int:
        m = math.lcm(self.tame_order, self.p**level) if level else self.tame_order
        for d, _ in self.terms:
            m = math.lcm(m, d.n)
        return m

    def value_vector(self, level: int, a: int, m: int | None = None) -> list[int]:
        """Group vector (conductor m) of sum_i d_i zeta^(a e_i) with
        zeta = zeta_{p^level}."""
        m = m or self.conductor_at_level(level)
        pn = self.p**level
        out = [0] * m
        for d, e in self.terms:
            shift = (a * e.residue(level) % pn) * (m // pn)
            stretch = m // d.n
            for j, c in enumerate(d.coeffs):
                if c:
                    out[(j * stretch + shift) % m] += c
        return out

    def evaluate_weight1(self, level: int, a: int) -> CycloInt:
        m = self.conductor_at_level(level)
        return CycloInt.from_group_vector(m, self.value_vector(level, a, m))

    def sample_set(self, level: int) -> "SampleSet":
        m = self.conductor_at_level(level)
        xi = RootOfUnity(self.tame_order, 1) if self.tame_order > 1 else RootOfUnity.one()
        vectors = [self.value_vector(level, a, m) for a in range(self.p**level)]
        return SampleSet(self.p, level, xi, m, vectors)

    def sample_tower(self, levels) -> list["SampleSet"]:
        return [self.sample_set(n) for n in levels]

    def to_padic_series(self, place, L: int = DEFAULT_TRUNC, N: int = DEFAULT_PREC) -> PadicSeries:
        """The series itself, with coefficients embedded through the fixed
        place (tame parts become Teichmuller units)."""
        total = PadicSeries.zero(self.p, N, L)
        for d, e in self.terms:
            scalar = place.embed_cyclo(d).as_padicnum()
            total = total + binomial_series(e, L=L, N=N) * scalar
        return total

    def render(self) -> str:
        lines = [f"p={self.p} xi={self.tame_order} terms={len(self.terms)}"]
        for d, e in self.terms:
            lines.append(f"d={d.to_string()} | e={e.residue(e.abs_prec)} mod {self.p}^{e.abs_prec}")
        return "\n".join(lines)

    @classmethod
    def parse(cls, text: str) -> "ExponentialForm":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        head = dict(part.split("=") for part in lines[0].split())
        p = int(head["p"])
        terms = []
        for ln in lines[1:]:
            dpart, _, epart = ln.partition("|")
            d = CycloInt.parse(dpart.split("=", 1)[1])
            body = epart.split("=", 1)[1]
            res_txt, _, mod_txt = body.partition("mod")
            prec = int(mod_txt.split("^")[1])
            terms.append((d, PadicNum(p, int(res_txt), prec)))
        return cls(p, terms, int(head["xi"]))


# --------------------------------------------------------------------------
# sample sets
# --------------------------------------------------------------------------


class SampleSet:
    """Exact samples of a function on all of mu_{p^level}: one value per
    exponent a of zeta_{p^level}, held as group vectors over Z[mu_m] for a
    conductor m divisible by p^level and the declared tame order."""

    __slots__ = ("p", "level", "xi", "m", "vectors")

    def __init__(self, p, level, xi: RootOfUnity, m: int, vectors):
        pn = p**level
        if len(vectors) != pn:
            raise ValueError(f"need exactly {pn} samples, got {len(vectors)}")
        if m % pn or (xi.order > 1 and m % xi.order):
            raise ValueError("conductor must absorb the level and the tame order")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "vectors", tuple(tuple(v) for v in vectors))

    def __setattr__(self, *a):
        raise AttributeError("SampleSet is immutable")

    @classmethod
    def from_values(cls, p: int, level: int, xi: RootOfUnity, values) -> "SampleSet":
        pn = p**level
        m = math.lcm(p**level if level else 1, xi.order)
        vals = [values[a] for a in range(pn)]
        for v in vals:
            m = math.lcm(m, v.n)
        vectors = []
        for v in vals:
            g = v.group_vector()
            stretch = m // v.n
            vec = [0] * m
            for j, c in enumerate(g):
                if c:
                    vec[j * stretch] += c
            vectors.append(vec)
        return cls(p, level, xi, m, vectors)

    def value(self, a: int) -> CycloInt:
        return CycloInt.from_group_vector(self.m, list(self.vectors[a]))

    def embed_conductor(self, m2: int) -> "SampleSet":
        if m2 == self.m:
            return self
        if m2 % self.m:
            raise ValueError("conductor must grow by a multiple")
        stretch = m2 // self.m
        vectors = []
        for v in self.vectors:
            vec = [0] * m2
            for j, c in enumerate(v):
                if c:
                    vec[j * stretch] += c
            vectors.append(vec)
        return SampleSet(self.p, self.level, self.xi, m2, vectors)

    def perturbed(self, a: int, delta: int = 1) -> "SampleSet":
        """The same samples with ``delta`` added to value(a) (soundness probes)."""
        vectors = [list(v) for v in self.vectors]
        vectors[a][0] += delta
        return SampleSet(self.p, self.level, self.xi, self.m, vectors)

    # -- text form -------------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.p} {self.level} xi={self.xi.order}:{self.xi.exp}"]
        for a in range(self.p**self.level):
            lines.append(f"{a}: {self.value(a).to_string()}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SampleSet":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        head = lines[0].split()
        p, level = int(head[0]), int(head[1])
        o, e = head[2].split("=")[1].split(":")
        xi = RootOfUnity(int(o), int(e))
        values = {}
        for ln in lines[1:]:
            a_txt, _, v_txt = ln.partition(":")
            values[int(a_txt)] = CycloInt.parse(v_txt.strip())
        return cls.from_values(p, level, xi, values)


# --------------------------------------------------------------------------
# character sums (exact Fourier inversion)
# --------------------------------------------------------------------------

_INT64_SAFE = 2**60

_REDMAT_CACHE: dict[int, object] = {}


def _reduction_matrix(m: int):
    """(m, phi(m)) int64 matrix sending a group vector over Z[Z/m] to its
    canonical power-basis coordinates, or None if entries risk overflow."""
    hit = _REDMAT_CACHE.get(m)
    if hit is not None:
        return hit if hit is not False else None
    from .cyclo import _reduction_rows, euler_phi

    ph = euler_phi(m)
    rows = _reduction_rows(m)
    mat = np.zeros((m, ph), dtype=np.int64)
    for j in range(ph):
        mat[j, j] = 1
    biggest = 1
    for j in range(ph, m):
        row = rows[j - ph]
        mat[j] = row
        biggest = max(biggest, max(abs(c) for c in row))
    if biggest >= 2**20:
        _REDMAT_CACHE[m] = False
        return None
    _REDMAT_CACHE[m] = mat
    return mat


def _char_sums(s: SampleSet, m: int):
    """All sums sum_a value(a) * zeta^(-ra), reduced to canonical
    power-basis coordinates at conductor m; one row per residue r mod
    p^level.  Exact integer arithmetic throughout."""
    from .cyclo import euler_phi, reduce_vec

    pn = s.p**s.level
    sm = m // pn
    emb = s.embed_conductor(m)
    rows = [list(v) for v in emb.vectors]
    max_abs = max((abs(c) for v in rows for c in v), default=0)
    red = _reduction_matrix(m)
    if red is not None and max_abs * pn < _INT64_SAFE // 2**24:
        R = np.zeros((pn, m), dtype=np.int64)
        rvec = np.arange(pn, dtype=np.int64)
        nnz = sum(1 for v in rows for c in v if c)
        if nnz * pn <= 4 * pn * m:  # sparse scatter beats dense gathers
            for a in range(pn):
                step = (a * sm) % m
                for y, c in enumerate(rows[a]):
                    if c:
                        cols = (y - rvec * step) % m
                        np.add.at(R, (rvec, cols), c)
        else:
            V = np.array(rows, dtype=np.int64)
            base = np.arange(m, dtype=np.int64)
            for a in range(pn):
                shifts = (rvec * (a * sm)) % m
                idx = (base[None, :] + shifts[:, None]) % m
                R += V[a][idx]
        peak = int(np.abs(R).max(initial=0)) * int(np.abs(red).max(initial=1)) * m
        if peak < 2**52:  # exact in float64, and BLAS-fast
            out = np.rint(R.astype(np.float64) @ red.astype(np.float64)).astype(np.int64)
        else:
            out = R @ red
        return [list(map(int, row)) for row in out]
    # big-coefficient fallback, plain Python integers
    ph = euler_phi(m)
    out = []
    for r in range(pn):
        acc = [0] * m
        for a in range(pn):
            va = rows[a]
            sh = (r * a * sm) % m
            for x in range(m):
                acc[x] += va[(x + sh) % m]
        out.append(reduce_vec(acc, m)[:ph])
    return out


# --------------------------------------------------------------------------
# fitting
# --------------------------------------------------------------------------


def fit_single(s: SampleSet) -> tuple[RootOfUnity, PadicNum]:
    """Fit values of the shape value(zeta) = xi' * zeta^e on one full level.

    Every sample must be a root of unity times a power of its zeta; the
    exponent is determined modulo p^level."""
    pn = s.p**s.level
    m = s.m
    sm = m // pn
    signs, exps = [], []
    for a in range(pn):
        # a root of unity in Q(zeta_m) is +-zeta_m^x; anything else fails
        hit = root_of_unity_index(s.value(a))
        if hit is None:
            raise NotMonomial(f"sample at a={a} is not +-zeta^x: {s.value(a).to_string()}")
        signs.append(hit[0])
        exps.append(hit[1])
    if any(sg != signs[0] for sg in signs):
        raise InconsistentSamples("sign flips across the level cannot come from zeta powers")
    if pn == 1:
        e = PadicNum.zero(s.p, 0)
        root = RootOfUnity(m, exps[0]) * (RootOfUnity(2, 1) if signs[0] < 0 else RootOfUnity.one())
        return root, e
    delta = (exps[1] - exps[0]) % m
    if delta % sm:
        raise InconsistentSamples("exponent increment is not a power of zeta_{p^n}")
    e_res = (delta // sm) % pn
    for a in range(pn):
        if (exps[0] + a * delta - exps[a]) % m:
            raise InconsistentSamples(f"sample at a={a} breaks the geometric progression")
    root = RootOfUnity(m, exps[0])
    if signs[0] < 0:
        root = root * RootOfUnity(2, 1)
    return root, PadicNum(s.p, e_res, s.level)


@dataclass(frozen=True)
class LevelWitness:
    level: int
    divisible_by: int
    support: tuple[int, ...]


@dataclass(frozen=True)
class RecoveryReport:
    """Outcome of a bounded fit: the recovered form, the levels used, and
    per-level exact-divisibility witnesses.  status is EXACT exactly when
    every divisibility and cross-level refinement check passed."""

    form: ExponentialForm
    levels: tuple[int, ...]
    witnesses: tuple[LevelWitness, ...]
    status: str  # "Exact" | "Inconsistent"
    failure: str | None = None

    def render(self) -> str:
        lines = [f"status: {self.status}", f"levels: {','.join(str(n) for n in self.levels)}"]
        for w in self.witnesses:
            lines.append(
                f"level {w.level}: divisible by {w.divisible_by}, support {list(w.support)}"
            )
        if self.failure:
            lines.append(f"failure: {self.failure}")
        lines.append("form:")
        lines.append(self.form.render())
        return "\n".join(lines)


def fit_bounded(tower, B: int, raise_on_failure: bool = True) -> RecoveryReport:
    """Recover a <= B-term exponential form from sample sets at increasing
    full levels n0..n1.

    Per level n the character sums are divided by p^n with an exact
    divisibility requirement; at most B residues may carry nonzero
    coefficients; supports across levels must refine with matching
    coefficient sums.  Exponents come out modulo p^(n1)."""
    tower = list(tower)
    if not tower:
        raise ValueError("need at least one sample level")
    p = tower[0].p
    levels = [s.level for s in tower]
    if levels != sorted(levels) or len(set(levels)) != len(levels):
        raise ValueError("levels must be strictly increasing")
    if any(s.p != p for s in tower):
        raise ValueError("mixed primes in the tower")
    xi = tower[0].xi
    M = 1
    for s in tower:
        M = math.lcm(M, s.m)

    witnesses: list[LevelWitness] = []
    per_level: list[dict[int, list[int]]] = []

    def fail(exc):
        if raise_on_failure:
            raise exc
        form = ExponentialForm(p, [], xi.order)
        return RecoveryReport(
            form=form,
            levels=tuple(levels),
            witnesses=tuple(witnesses),
            status="Inconsistent",
            failure=f"{type(exc).__name__}: {exc}",
        )

    for s in tower:
        pn = p**s.level
        rows = _char_sums(s, M)  # canonical power-basis coordinates
        if any(c % pn for row in rows for c in row):
            return fail(NotDivisible(
                f"level {s.level}: character sums are not divisible by p^{s.level};"
                " samples are not a sparse character combination at this level"
            ))
        support: dict[int, list[int]] = {}
        for r in range(pn):
            if any(rows[r]):
                support[r] = [c // pn for c in rows[r]]
        if len(support) > B:
            return fail(SupportTooLarge(
                f"level {s.level}: {len(support)} nonzero residues exceed the bound {B}"
            ))
        witnesses.append(LevelWitness(s.level, pn, tuple(sorted(support))))
        per_level.append(support)

    ph = len(per_level[0][next(iter(per_level[0]))]) if per_level[0] else None
    for (s_lo, lo), (s_hi, hi) in zip(zip(tower, per_level), zip(tower[1:], per_level[1:])):
        pm = p**s_lo.level
        width = ph or (len(next(iter(hi.values()))) if hi else 0)
        fibers: dict[int, list[int]] = {}
        for r, vec in hi.items():
            f = fibers.setdefault(r % pm, [0] * len(vec))
            for i, c in enumerate(vec):
                f[i] += c
        keys = set(fibers) | set(lo)
        for rp in keys:
            upper = fibers.get(rp)
            lower = lo.get(rp)
            if upper is None:
                upper = [0] * len(lower)
            if lower is None:
                lower = [0] * len(upper)
            if upper != lower:
                return fail(LevelMismatch(
                    f"residue {rp} mod p^{s_lo.level} does not refine between levels"
                    f" {s_lo.level} and {s_hi.level}"
                ))

    top = per_level[-1]
    n1 = levels[-1]
    terms = [
        (CycloInt(M, vec), PadicNum(p, r, n1))
        for r, vec in sorted(top.items())
    ]
    form = ExponentialForm(p, terms, xi.order)
    return RecoveryReport(
        form=form, levels=tuple(levels), witnesses=tuple(witnesses), status="Exact"
    )


def verify_form(form: ExponentialForm, s: SampleSet) -> Match:
    """Exact re-evaluation of the form against every sample of one level."""
    m = math.lcm(s.m, form.conductor_at_level(s.level))
    emb = s.embed_conductor(m)
    for a in range(s.p**s.level):
        predicted = form.value_vector(s.level, a, m)
        diff = [x - y for x, y in zip(predicted, emb.vectors[a])]
        if any(diff) and not CycloInt.from_group_vector(m, diff).is_zero:
            return Match.MISMATCH
    return Match.EXACT


# --------------------------------------------------------------------------
# cancellation probe
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CancellationPattern:
    """Per-sample record of the three cancellation modes in the quotient
    ring F_p[y]/(y^(p^m)-1): coefficients vanishing mod p, exponent
    residues colliding mod p^m, and collided groups whose coefficient sum
    vanishes in F_p."""

    zeta_exp: int
    zero_coefficients: tuple[int, ...]
    collisions: tuple[tuple[int, tuple[int, ...]], ...]
    zero_sum_residues: tuple[int, ...]

    @property
    def clean(self) -> bool:
        return not (self.zero_coefficients or self.collisions or self.zero_sum_residues)


def cancellation_probe(s: SampleSet, m: int) -> list[CancellationPattern]:
    """Reduce each sample into F_p[y]/(y^(p^m) - 1) and report which
    cancellations occur among its terms.  Requires m below the sample
    level and a tame order dividing p - 1 (prime residue field)."""
    from .embedding import smallest_primitive_root

    if m >= s.level:
        raise ValueError(f"need m < level, got m={m}, level={s.level}")
    p = s.p
    t = s.m
    while t % p == 0:
        t //= p
    if t > 1 and (p - 1) % t:
        raise ValueError("tame order must divide p-1 to reduce into F_p")
    pn = p**s.level
    pw = s.m // t  # p-power part of the conductor, a multiple of p^level
    pmq = p**m
    g = smallest_primitive_root(p)
    r_t = pow(g, (p - 1) // t, p) if t > 1 else 1
    out = []
    for a in range(pn):
        vec = s.vectors[a]
        zero_coeffs = []
        groups: dict[int, list[tuple[int, int]]] = {}
        for x, c in enumerate(vec):
            if not c:
                continue
            # zeta_m^x = zeta_t^(x/pw mod t) * zeta_pw^(x/t mod pw)
            a_t = x * pow(pw, -1, t) % t if t > 1 else 0
            b_p = x * pow(t, -1, pw) % pw if pw > 1 else 0
            fp_coeff = c * pow(r_t, a_t, p) % p
            if fp_coeff == 0:
                zero_coeffs.append(x)
            groups.setdefault(b_p % pmq, []).append((b_p, fp_coeff))
        collisions = []
        zero_sums = []
        for res, entries in sorted(groups.items()):
            exps = tuple(sorted({b for b, _ in entries}))
            if len(exps) > 1:
                collisions.append((res, exps))
            if sum(c for _, c in entries) % p == 0:
                zero_sums.append(res)
        out.append(
            CancellationPattern(
                zeta_exp=a,
                zero_coefficients=tuple(zero_coeffs),
                collisions=tuple(collisions),
                zero_sum_residues=tuple(zero_sums),
            )
        )
    return out


# --------------------------------------------------------------------------
# Vandermonde selection and Cramer recovery
# --------------------------------------------------------------------------


def _det(rows):
    """Exact determinant by cofactor expansion (entries form a comm. ring)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def vandermonde_select(ds: list[CycloInt], es: list[PadicNum]) -> list[RootOfUnity]:
    """Distinct p-power roots zeta_1..zeta_n making det(d_i zeta_j^(e_i))
    nonzero, by the constructive induction: zeta_1 = 1, and each further
    zeta avoids the roots of an explicit determinant polynomial of degree
    below p^k inside mu_{p^k}."""
    n = len(ds)
    if n == 0:
        return []
    if any(d.is_zero for d in ds):
        raise DegenerateInput("all coefficients must be nonzero")
    if len(es) != n:
        raise ValueError("coefficient/exponent length mismatch")
    p = es[0].p
    prec_cap = min(e.abs_prec for e in es)
    k0 = None
    for k in range(0, prec_cap + 1):
        if len({e.residue(k) for e in es}) == n:
            k0 = k
            break
    if k0 is None:
        raise DegenerateInput("exponents collide at every available modulus")

    selected = [RootOfUnity.one()]
    sel_level = 0
    while len(selected) < n:
        mcur = len(selected)
        k = max(k0, sel_level, 1)
        pk = p**k
        res = [e.residue(k) for e in es[: mcur + 1]]
        found = None
        for j in range(pk):
            cand = RootOfUnity(pk, j)
            cols = selected + [cand]
            rows = []
            for i in range(mcur + 1):
                row = []
                for zeta in cols:
                    zc = (zeta ** res[i]).as_cyclo() if zeta.order > 1 else CycloInt.from_int(1)
                    row.append(ds[i] * zc)
                rows.append(row)
            if not _det(rows).is_zero:
                found = cand
                break
        if found is None:
            raise DegenerateInput("no admissible root of unity at this level")
        selected.append(found)
        sel_level = max(sel_level, k)

    # exact final certificate over the full exponent list
    k = max(k0, sel_level, 1)
    rows = [
        [ds[i] * ((z ** es[i].residue(k)).as_cyclo() if z.order > 1 else CycloInt.from_int(1))
         for z in selected]
        for i in range(n)
    ]
    if _det(rows).is_zero:
        raise SingularSystem("internal error: certified determinant vanished")
    return selected


def cramer_recover(
    ds: list[CycloInt],
    es: list[PadicNum],
    k_weight: int,
    samples: dict[RootOfUnity, QuadCycloNum],
) -> list[QuadCycloNum]:
    """Exact solution x_i of F(P_{k,zeta_j}) = sum_i d_i zeta_j^(e_i) x_i by
    Cramer's rule over Q(zeta_m, sqrt(-d)); substitution back is checked
    exactly.  The zeta_j must come from vandermonde_select."""
    if k_weight < 2:
        raise ValueError("Cramer recovery runs at weight at least 2")
    zetas = list(samples.keys())
    n = len(ds)
    if len(zetas) != n:
        raise ValueError("need exactly one sample per term")
    if n == 0:
        return []
    p = es[0].p
    d_quad = next(iter(samples.values())).d
    m = 1
    for z in zetas:
        m = math.lcm(m, z.order)
    for d in ds:
        m = math.lcm(m, d.n)
    for v in samples.values():
        m = math.lcm(m, v.m)

    def entry(i, j):
        z = zetas[j]
        if z.order > 1:
            kk, o = 0, z.order
            while o % p == 0:
                o //= p
                kk += 1
            if o != 1:
                raise ValueError("sample points must be p-power roots of unity")
            zc = z ** es[i].residue(kk)
        else:
            zc = RootOfUnity.one()
        val = ds[i] * (zc.as_cyclo(m) if zc.order > 1 else CycloInt.from_int(1, m))
        return QuadCycloNum.from_cyclo(val.embed(m), d_quad)

    A = [[entry(i, j) for i in range(n)] for j in range(n)]
    b = [samples[zetas[j]].embed(m) for j in range(n)]
    detA = _det(A)
    if detA.is_zero:
        raise SingularSystem("coefficient matrix is singular")
    det_inv = detA.inverse()
    xs = []
    for i in range(n):
        Ai = [[(b[j] if c == i else A[j][c]) for c in range(n)] for j in range(n)]
        xs.append(_det(Ai) * det_inv)
    # substitution check
    for j in range(n):
        total = None
        for i in range(n):
            t = A[j][i] * xs[i]
            total = t if total is None else total + t
        if not (total - b[j]).is_zero:
            raise SingularSystem("internal error: Cramer solution fails substitution")
    return xs
