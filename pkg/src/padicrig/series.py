"""Truncated power series over Z_p: Weierstrass preparation, evaluation at
small points, binomial series (1+T)^e, and specialization at weight points.

A PadicSeries holds L coefficients, each an integer residue known modulo
p^N (absolute precision N, uniform across the series).  Weierstrass
preparation follows the classical division argument: with G = F / p^k and
d the first index carrying a unit coefficient, divide T^d by G to obtain
T^d = q*G + r with deg r < d; then f = T^d - r is distinguished and
u = q^(-1).  The division is a p-adically contracting fixed-point
iteration, run on packed big-integer convolutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NotInMaximalIdeal,
    NotIntegral,
    TruncationTooShort,
    ZeroSeries,
)
from .padic import (
    DEFAULT_PREC,
    PadicCyclo,
    PadicNum,
    Valuation,
    _check_prime,
    val_int,
)

DEFAULT_TRUNC = 64


def _pack(vec, slot):
    acc = 0
    for c in reversed(vec):
        acc = (acc << slot) | c
    return acc


def _mul_trunc(a, b, mod, L):
    """Truncated product of residue lists (entries in [0, mod)) via
    Kronecker packing; returns exactly L coefficients mod ``mod``."""
    la = min(len(a), L)
    lb = min(len(b), L)
    if la == 0 or lb == 0:
        return [0] * L
    slot = ((mod - 1) * (mod - 1) * min(la, lb) + 1).bit_length()
    prod = _pack(a[:la], slot) * _pack(b[:lb], slot)
    mask = (1 << slot) - 1
    out = []
    for i in range(L):
        out.append((prod >> (i * slot)) & mask if i <= la + lb - 2 else 0)
    return [c % mod for c in out]


def _series_inv(a, p, mod, L):
    """Inverse of a unit series modulo (p^N, T^L) by Newton doubling."""
    inv0 = pow(a[0], -1, mod)
    v = [inv0]
    m = 1
    while m < L:
        m2 = min(2 * m, L)
        av = _mul_trunc(a[:m2], v, mod, m2)
        two_minus = [(2 - av[0]) % mod] + [(-c) % mod for c in av[1:]]
        v = _mul_trunc(v, two_minus, mod, m2)
        m = m2
    return v + [0] * (L - len(v))


class PadicSeries:
    """Truncated series sum res[i] T^i with res[i] known mod p^N."""

    __slots__ = ("p", "N", "L", "res")

    def __init__(self, p: int, res, N: int = DEFAULT_PREC, L: int | None = None):
        _check_prime(p)
        res = list(res)
        if L is None:
            L = len(res) if res else DEFAULT_TRUNC
        if len(res) < L:
            res = res + [0] * (L - len(res))
        elif len(res) > L:
            res = res[:L]
        mod = p**N
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "res", tuple(c % mod for c in res))

    def __setattr__(self, *a):
        raise AttributeError("PadicSeries is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_padicnums(cls, p, coeffs, L=None):
        res = []
        for c in coeffs:
            if c.val_shift < 0:
                raise NotIntegral("series coefficients must be p-integral")
            res.append(0 if c.is_zero else c.digits * p**c.val_shift)
        N = min((c.abs_prec for c in coeffs), default=DEFAULT_PREC)
        return cls(p, res, N, L)

    @classmethod
    def zero(cls, p, N=DEFAULT_PREC, L=DEFAULT_TRUNC):
        return cls(p, [], N, L)

    @classmethod
    def one(cls, p, N=DEFAULT_PREC, L=DEFAULT_TRUNC):
        return cls(p, [1], N, L)

    # -- structure --------------------------------------------------------------

    def coeff(self, i: int) -> PadicNum:
        return PadicNum(self.p, self.res[i], self.N)

    @property
    def is_zero(self) -> bool:
        return not any(self.res)

    # -- arithmetic ----------------------------------------------------------------

    def _meet(self, other):
        if isinstance(other, int):
            other = PadicSeries(self.p, [other], self.N, self.L)
        if not isinstance(other, PadicSeries):
            return None
        if other.p != self.p:
            raise ValueError("mixed primes")
        return other

    def __add__(self, other):
        o = self._meet(other)
        if o is None:
            return NotImplemented
        N = min(self.N, o.N)
        L = min(self.L, o.L)
        return PadicSeries(self.p, [x + y for x, y in zip(self.res, o.res)], N, L)

    __radd__ = __add__

    def __neg__(self):
        return PadicSeries(self.p, [-c for c in self.res], self.N, self.L)

    def __sub__(self, other):
        o = self._meet(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        if isinstance(other, PadicNum):
            if other.val_shift < 0:
                raise NotIntegral("scalar must be p-integral")
            v = 0 if other.is_zero else other.digits * self.p**other.val_shift
            N = min(self.N, other.abs_prec)
            mod = self.p**N
            return PadicSeries(self.p, [c * v % mod for c in self.res], N, self.L)
        o = self._meet(other)
        if o is None:
            return NotImplemented
        N = min(self.N, o.N)
        L = min(self.L, o.L)
        mod = self.p**N
        res = _mul_trunc([c % mod for c in self.res], [c % mod for c in o.res], mod, L)
        return PadicSeries(self.p, res, N, L)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._meet(other)
        if o is None:
            return NotImplemented
        N = min(self.N, o.N)
        mod = self.p**N
        return all(
            (x - y) % mod == 0 for x, y in zip(self.res, o.res)
        ) and self.L == o.L

    __hash__ = None

    def __repr__(self):
        head = ", ".join(str(c) for c in self.res[:4])
        return f"PadicSeries(p={self.p}, N={self.N}, L={self.L}, [{head}, ...])"

    # -- text form ----------------------------------------------------------------

    def to_text(self) -> str:
        """Series file body: header "p N L", then L base-p digit lines."""
        lines = [f"{self.p} {self.N} {self.L}"]
        for c in self.res:
            lines.append(_base_p(c, self.p))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PadicSeries":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        p, N, L = (int(t) for t in lines[0].split())
        res = [_parse_base_p(ln, p) for ln in lines[1 : L + 1]]
        return cls(p, res, N, L)


def _base_p(v: int, p: int) -> str:
    if v == 0:
        return "0"
    out = []
    while v:
        v, r = divmod(v, p)
        out.append(str(r))
    if p <= 10:
        return "".join(reversed(out))
    return ",".join(reversed(out))


def _parse_base_p(s: str, p: int) -> int:
    parts = list(s) if p <= 10 else s.split(",")
    v = 0
    for c in parts:
        v = v * p + int(c)
    return v


# -- Weierstrass preparation ---------------------------------------------------


@dataclass(frozen=True)
class WeierstrassData:
    """F = p^k * f * u with f distinguished (monic, non-leading coefficients
    divisible by p) and u a unit series; f and u carry precision N - k."""

    p: int
    k: int
    f: tuple[int, ...]  # monic polynomial residues, constant term first
    u: PadicSeries

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    def f_coeffs(self) -> list[PadicNum]:
        return [PadicNum(self.p, c, self.u.N) for c in self.f]

    def reconstruct(self, N: int | None = None, L: int | None = None) -> PadicSeries:
        L = L or self.u.L
        N = N or (self.u.N + self.k)
        fpoly = PadicSeries(self.p, list(self.f), self.u.N, L)
        prod = fpoly * self.u
        mod = self.p**N
        scaled = [c * self.p**self.k % mod for c in prod.res]
        return PadicSeries(self.p, scaled, N, L)

    def f_text(self) -> str:
        terms = []
        for i, c in enumerate(self.f):
            if c == 0:
                continue
            t = "1" if (c == 1 and i) else str(c)
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{t}*T" if c != 1 else "T")
            else:
                terms.append(f"{t}*T^{i}" if c != 1 else f"T^{i}")
        return " + ".join(terms) if terms else "0"


def weierstrass_prep(F: PadicSeries) -> WeierstrassData:
    """Unique decomposition F = p^k * f * u at precision N and truncation L.

    k is the minimal coefficient valuation, deg f the first index reaching
    it.  Trusts the truncation: a smaller-valuation coefficient beyond index
    L would be invisible, so TruncationTooShort can only be raised for the
    degenerate all-zero window."""
    p, N, L = F.p, F.N, F.L
    vals = [val_int(c, p) for c in F.res]
    finite = [v for v in vals if v is not None]
    if not finite:
        raise ZeroSeries(f"series is 0 mod p^{N}")
    k = min(finite)
    Nw = N - k
    if Nw <= 0:
        raise ZeroSeries("no residual precision after removing p^k")
    mod = p**Nw
    G = [(c // p**k) % mod for c in F.res]
    d = next(i for i, v in enumerate(vals) if v == k)
    if d >= L:
        raise TruncationTooShort("no unit coefficient before the truncation order")

    if d == 0:
        f = (1,)
        u = PadicSeries(p, G, Nw, L)
    else:
        U = G[d:] + [0] * d
        P = G[:d] + [0] * (L - d)
        Uinv = _series_inv(U, p, mod, L)
        qs = [0] * L
        target = [0] * L
        for _ in range(Nw + 2):
            qp = _mul_trunc(qs, P, mod, L)
            tau = qp[d:] + [0] * d
            rhs = [(1 if i == 0 else 0) - tau[i] for i in range(L)]
            new_qs = _mul_trunc(Uinv, [c % mod for c in rhs], mod, L)
            if new_qs == qs:
                break
            qs = new_qs
        else:
            raise ArithmeticError("Weierstrass division did not stabilize")
        prod = _mul_trunc(qs, G, mod, L)
        f = tuple(prod[:d]) + (1,)
        u = PadicSeries(p, _series_inv(qs, p, mod, L), Nw, L)

    wd = WeierstrassData(p=p, k=k, f=f, u=u)
    for c in wd.f[:-1]:
        assert c % p == 0, "distinguished polynomial check failed"
    assert wd.u.res[0] % p != 0, "unit series check failed"
    assert wd.reconstruct(N, L) == F, "reconstruction check failed"
    return wd


def root_bound(F: PadicSeries) -> int:
    """deg f from Weierstrass preparation; the number of roots of F in the
    open unit disc is at most this value."""
    return weierstrass_prep(F).degree


# -- evaluation and specialization ----------------------------------------------


@dataclass(frozen=True)
class SpecValue:
    """An evaluated series value together with the absolute precision
    guarantee, which caps the intrinsic precision by the discarded-tail
    bound L * ord(t)."""

    value: PadicCyclo
    abs_prec: Valuation

    def render(self) -> str:
        return f"{self.value!r} [guaranteed mod p^{self.abs_prec!r}]"


def eval_small(F: PadicSeries, t: PadicCyclo) -> SpecValue:
    """Horner evaluation of the truncated series at a point of positive
    valuation; the reported precision includes the tail bound L*ord(t)."""
    if t.p != F.p:
        raise ValueError("mixed primes")
    ot = t.ord()
    if not ot.is_infinite and ot <= 0:
        raise NotInMaximalIdeal(f"ord(t) = {ot!r} is not positive")
    acc = PadicCyclo.zero(F.p, t.r, F.N)
    for c in reversed(F.res):
        acc = acc * t + PadicCyclo.from_int(F.p, c, t.r, F.N)
    if ot.is_infinite:
        prec = Valuation(acc.abs_prec)
    else:
        prec = Valuation(min(Fraction(acc.abs_prec), F.L * ot.fraction))
    return SpecValue(value=acc, abs_prec=prec)


@dataclass(frozen=True)
class WeightPoint:
    """Arithmetic specialization datum: T -> zeta * (1+p)^(k-1) - 1 with
    zeta = zeta_{p^r}^a."""

    k: int
    zeta_level: int
    zeta_exp: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("weight must be at least 1")
        if self.zeta_level < 0:
            raise ValueError("level must be nonnegative")

    def validate(self, p: int) -> None:
        if self.zeta_level and math.gcd(self.zeta_exp, p) != 1:
            raise ValueError("zeta exponent must be prime to p at positive level")

    def eval_point(self, p: int, prec: int = DEFAULT_PREC) -> PadicCyclo:
        z = PadicCyclo.zeta(p, self.zeta_level, self.zeta_exp, prec)
        scale = PadicNum.from_int(p, pow(1 + p, self.k - 1, p**prec), prec)
        return z * scale - 1

    def render(self) -> str:
        return f"k={self.k} zeta={self.zeta_level}:{self.zeta_exp}"

    @classmethod
    def parse(cls, text: str) -> "WeightPoint":
        parts = dict(t.split("=") for t in text.split())
        r, a = parts["zeta"].split(":")
        return cls(k=int(parts["k"]), zeta_level=int(r), zeta_exp=int(a))


def specialize(F: PadicSeries, P: WeightPoint) -> SpecValue:
    """Evaluate at the weight point: eval_small at t = zeta(1+p)^(k-1) - 1
    (always of positive valuation)."""
    P.validate(F.p)
    return eval_small(F, P.eval_point(F.p, F.N))


# -- binomial series -----------------------------------------------------------


def exponent_boost(p: int, L: int) -> int:
    """Extra digits of exponent precision that keep every delivered binomial
    coefficient correct mod p^N: ord_p((L-1)!)."""
    v, q = 0, p
    while q <= L - 1:
        v += (L - 1) // q
        q *= p
    return v


def binomial_series(e, p: int | None = None, L: int = DEFAULT_TRUNC,
                    N: int = DEFAULT_PREC) -> PadicSeries:
    """The series (1+T)^e = sum_n binom(e, n) T^n truncated at L.

    ``e`` may be an exact int or Fraction (p-integral), or a PadicNum; in
    the latter case the coefficients are computed from the lifted residue
    of e at its full stored precision, so coefficient n is correct modulo
    p^(prec(e) - ord_p(n)).  Exponents constructed at the boosted precision
    N + exponent_boost(p, L) therefore deliver every coefficient mod p^N.
    """
    if isinstance(e, PadicNum):
        p = e.p
        if e.val_shift < 0:
            raise NotIntegral("exponent must lie in Z_p")
        lifted = 0 if e.is_zero else e.digits * p**e.val_shift
        loss = max((val_int(n, p) or 0) for n in range(1, L)) if L > 1 else 0
        Nd = min(N, e.abs_prec - loss)
        if Nd <= 0:
            raise NotIntegral("exponent precision too low for this truncation")
        mod = p**Nd
        res = [1]
        b = 1
        for n in range(1, L):
            b = b * (lifted - n + 1) // n
            res.append(b % mod)
        return PadicSeries(p, res, Nd, L)
    if p is None:
        raise ValueError("p is required for exact exponents")
    eq = Fraction(e)
    if eq.denominator % p == 0:
        raise NotIntegral("exponent must lie in Z_p")
    mod = p**N
    den_inv_cache: dict[int, int] = {}
    res = [1]
    b = Fraction(1)
    for n in range(1, L):
        b = b * (eq - n + 1) / n
        num, den = b.numerator, b.denominator
        if den == 1:
            res.append(num % mod)
        else:
            inv = den_inv_cache.get(den)
            if inv is None:
                inv = pow(den, -1, mod)
                den_inv_cache[den] = inv
            res.append(num * inv % mod)
    return PadicSeries(p, res, N, L)


# -- Newton polygon stability probe ----------------------------------------------


def stable_polygon_probe(R_coeffs, t_list) -> list[tuple[int, ...]]:
    """For a monic-in-X polynomial with PadicSeries coefficients (constant
    coefficient first, leading last), evaluate each coefficient at every t
    and report the vertex indices of the Newton polygon of R(t, X); once
    ord(t) is small enough the trailing entries are expected constant."""
    from . import newton

    out = []
    for t in t_list:
        values = [eval_small(c, t).value for c in R_coeffs]
        np_ = newton.polygon(values)
        out.append(np_.vertex_indices())
    return out
