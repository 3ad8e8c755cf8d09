"""A fixed place above p: embeddings of cyclotomic and quadratic data into
the p-adic cyclotomic tower.

Tame roots of unity (order dividing p-1) map to Teichmuller roots built on
the smallest primitive root mod p; p-power roots map to the formal
zeta_{p^r}; sqrt(-d) maps to a Hensel-lifted square root of -d, available
exactly when p splits in Q(sqrt(-d)).  The sign choice is part of the
place and is recorded in every report that depends on it.
"""

from __future__ import annotations

from functools import lru_cache

from .cyclo import CycloInt, QuadCycloNum, RootOfUnity
from .errors import UnsupportedPlace
from .padic import DEFAULT_PREC, PadicCyclo, PadicNum, teichmuller


@lru_cache(maxsize=None)
def smallest_primitive_root(p: int) -> int:
    for g in range(2, p):
        seen = set()
        x = 1
        for _ in range(p - 1):
            x = x * g % p
            seen.add(x)
        if len(seen) == p - 1:
            return g
    raise ValueError(f"no primitive root mod {p}?")


def hensel_sqrt(p: int, a: int, prec: int) -> int:
    """A square root of a modulo p^prec (a must be a unit square mod p)."""
    a %= p**prec
    r = None
    for x in range(1, p):
        if (x * x - a) % p == 0:
            r = x
            break
    if r is None:
        raise UnsupportedPlace(f"{a} is not a square mod {p}")
    mod = p
    x = r
    while mod < p**prec:
        mod = min(mod * mod, p**prec)
        inv2x = pow(2 * x, -1, mod)
        x = (x - (x * x - a) * inv2x) % mod
    return x


def discrete_log(p: int, g: int, u: int) -> int:
    x = 1
    for j in range(p - 1):
        if x == u % p:
            return j
        x = x * g % p
    raise ValueError("discrete log not found")


class PlaceAboveP:
    """Embedding data for a fixed place v | p, at working precision."""

    def __init__(self, p: int, prec: int = DEFAULT_PREC, sqrt_sign: int = 0):
        self.p = p
        self.prec = prec
        self.sqrt_sign = sqrt_sign % 2
        self.g = smallest_primitive_root(p)
        self.teich_g = teichmuller(PadicNum.from_int(p, self.g, prec))

    def describe(self) -> str:
        return f"p={self.p} prec={self.prec} primitive_root={self.g} sqrt_sign={self.sqrt_sign}"

    # -- roots of unity -----------------------------------------------------

    def embed_tame_root(self, root: RootOfUnity) -> PadicNum:
        t = root.order
        if (self.p - 1) % t:
            raise UnsupportedPlace(
                f"order-{t} root needs an unramified extension at p={self.p}"
            )
        return self.teich_g ** (((self.p - 1) // t) * root.exp)

    def embed_root(self, root: RootOfUnity) -> PadicCyclo:
        n = root.order
        s = 0
        t = n
        while t % self.p == 0:
            t //= self.p
            s += 1
        if (self.p - 1) % t:
            raise UnsupportedPlace(
                f"order-{n} root needs an unramified extension at p={self.p}"
            )
        a_t = root.exp * pow(self.p**s, -1, t) % t if t > 1 else 0
        b_p = root.exp * pow(t, -1, self.p**s) % self.p**s if s else 0
        tame = self.embed_tame_root(RootOfUnity(t, a_t)) if t > 1 else PadicNum.one(self.p, self.prec)
        wild = PadicCyclo.zeta(self.p, s, b_p, self.prec)
        return wild * tame

    def teichmuller_root_of(self, u: PadicNum) -> RootOfUnity:
        """The abstract (p-1)-st root of unity whose image is the
        Teichmuller part of the unit u."""
        j = discrete_log(self.p, self.g, u.residue(1))
        root = RootOfUnity(self.p - 1, j)
        assert self.embed_tame_root(root) == teichmuller(u)
        return root

    # -- cyclotomic integers ---------------------------------------------------

    def embed_cyclo(self, alpha: CycloInt) -> PadicCyclo:
        n = alpha.n
        s = 0
        t = n
        while t % self.p == 0:
            t //= self.p
            s += 1
        acc = PadicCyclo.zero(self.p, s, self.prec)
        zeta_img = self.embed_root(RootOfUnity(n, 1)) if n > 1 else PadicCyclo.from_int(self.p, 1, 0, self.prec)
        power = PadicCyclo.from_int(self.p, 1, s, self.prec)
        for j, c in enumerate(alpha.coeffs):
            if j:
                power = power * zeta_img
            if c:
                acc = acc + power * PadicNum.from_int(self.p, c, self.prec)
        return acc

    # -- quadratic extensions -----------------------------------------------------

    def sqrt_minus_d(self, d: int) -> PadicNum:
        r = hensel_sqrt(self.p, -d, self.prec)
        lo = min(r % self.p, (-r) % self.p)
        canonical = r if r % self.p == lo else (-r) % self.p**self.prec
        if self.sqrt_sign:
            canonical = (-canonical) % self.p**self.prec
        return PadicNum.from_int(self.p, canonical, self.prec)

    def embed_quad(self, q: QuadCycloNum) -> PadicCyclo:
        a = self._embed_frac_vec(q.a, q.m)
        b = self._embed_frac_vec(q.b, q.m)
        return a + b * self.sqrt_minus_d(q.d)

    def _embed_frac_vec(self, vec, m: int) -> PadicCyclo:
        s = 0
        t = m
        while t % self.p == 0:
            t //= self.p
            s += 1
        acc = PadicCyclo.zero(self.p, s, self.prec)
        zeta_img = self.embed_root(RootOfUnity(m, 1)) if m > 1 else PadicCyclo.from_int(self.p, 1, 0, self.prec)
        power = PadicCyclo.from_int(self.p, 1, s, self.prec)
        for j, c in enumerate(vec):
            if j:
                power = power * zeta_img
            if c:
                acc = acc + power * PadicNum.from_fraction(self.p, c, self.prec)
        return acc
