"""Exact cyclotomic arithmetic: integers of Q(zeta_n), quadratic extensions
by sqrt(-d), complex-embedding houses, minimal root-of-unity counts, Galois
orbits and traces, and the characteristic-p truncated quotient ring.

A cyclotomic integer is a length-phi(n) integer vector in the power basis
1, zeta_n, ..., zeta_n^(phi(n)-1), always reduced modulo the n-th
cyclotomic polynomial.  The same reduction machinery runs over Fractions
for the rational-coefficient vectors inside QuadCycloNum.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import (
    DomainError,
    LevelError,
    NotFound,
    NotIntegral,
    PrecisionExhausted,
)
from .padic import PadicCyclo, val_int

# --------------------------------------------------------------------------
# integer polynomial utilities
# --------------------------------------------------------------------------


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_divmod_monic(num, den):
    """Exact division by a monic polynomial; works over Z or Q."""
    num = list(num)
    d = len(den) - 1
    q = [0] * max(len(num) - d, 0)
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        if c:
            q[i - d] = c
            for j in range(d + 1):
                num[i - d + j] -= c * den[j]
    while num and not num[-1]:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return tuple(out)


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    ph = 1
    for q, e in factorize(n):
        ph *= (q - 1) * q ** (e - 1)
    return ph


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, constant term first."""
    if n == 1:
        return (-1, 1)
    f = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in divisors(n):
        if d < n:
            f, rem = poly_divmod_monic(f, cyclotomic_poly(d))
            assert not rem
    return tuple(f)


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds the power-basis coordinates of zeta_n^(phi(n)+j),
    enough rows to reduce any exponent below max(n, 2*phi(n)-1)."""
    ph = euler_phi(n)
    phi_poly = cyclotomic_poly(n)
    top = max(n, 2 * ph - 1)
    rows = []
    cur = [-c for c in phi_poly[:ph]]  # zeta^phi
    rows.append(tuple(cur))
    for _ in range(ph, top - 1):
        nxt = [0] + cur[: ph - 1]
        c = cur[ph - 1]
        if c:
            first = rows[0]
            nxt = [nxt[i] + c * first[i] for i in range(ph)]
        rows.append(tuple(nxt))
        cur = nxt
    return tuple(rows)


def reduce_vec(vec, n: int) -> list:
    """Reduce a coefficient list (exponents 0..len-1) mod Phi_n; length phi(n).

    Works for int or Fraction entries."""
    ph = euler_phi(n)
    out = list(vec[:ph]) + [0] * max(0, ph - len(vec))
    if len(vec) > ph:
        rows = _reduction_rows(n)
        for j in range(ph, len(vec)):
            c = vec[j]
            if c:
                row = rows[j - ph]
                for i in range(ph):
                    if row[i]:
                        out[i] += c * row[i]
    return out


def vec_mul(a, b, n: int) -> list:
    return reduce_vec(poly_mul(list(a), list(b)), n)


def vec_galois(vec, n: int, s: int) -> list:
    """Apply zeta_n -> zeta_n^s (gcd(s, n) = 1)."""
    long = [0] * n
    for j, c in enumerate(vec):
        if c:
            long[(j * s) % n] += c
    return reduce_vec(long, n)


def vec_embed(vec, n: int, m: int) -> list:
    """Embed from conductor n into conductor m (n | m)."""
    if m == n:
        return list(vec)
    assert m % n == 0
    k = m // n
    long = [0] * m
    for j, c in enumerate(vec):
        if c:
            long[j * k] += c
    return reduce_vec(long, m)


def _poly_xgcd(a, b):
    """Extended gcd over Q[x]; returns (g, u, v) with u*a + v*b = g."""
    r0, r1 = [Fraction(c) for c in a], [Fraction(c) for c in b]
    s0, s1 = [Fraction(1)], [Fraction(0)]
    t0, t1 = [Fraction(0)], [Fraction(1)]

    def pstrip(v):
        while v and not v[-1]:
            v.pop()
        return v

    def psub(u, v, q):
        out = list(u) + [Fraction(0)] * max(0, len(v) + len(q) - 1 - len(u))
        for i, qq in enumerate(q):
            if qq:
                for j, vv in enumerate(v):
                    out[i + j] -= qq * vv
        return pstrip(out)

    def pdiv(u, v):
        u = list(u)
        q = [Fraction(0)] * max(len(u) - len(v) + 1, 0)
        inv = 1 / v[-1]
        for i in range(len(u) - 1, len(v) - 2, -1):
            c = u[i] * inv
            if c:
                q[i - len(v) + 1] = c
                for j in range(len(v)):
                    u[i - len(v) + 1 + j] -= c * v[j]
        return q

    r0, r1 = pstrip(r0), pstrip(r1)
    while r1:
        q = pdiv(r0, r1)
        r0, r1 = r1, pstrip(psub(r0, r1, q))
        s0, s1 = s1, psub(s0, s1, q)
        t0, t1 = t1, psub(t0, t1, q)
    return r0, s0, t0


def vec_inv(vec, n: int) -> list:
    """Inverse in Q(zeta_n) of a nonzero coefficient vector (Fractions)."""
    g, u, _ = _poly_xgcd(list(vec), list(cyclotomic_poly(n)))
    if len(g) != 1 or g[0] == 0:
        raise ZeroDivisionError("element is not invertible mod Phi_n")
    c = 1 / g[0]
    return reduce_vec([x * c for x in u], n)


def sylvester_resultant(f, g) -> int:
    """Exact resultant of two integer polynomials (Bareiss determinant)."""
    f = list(f)
    g = list(g)
    while f and not f[-1]:
        f.pop()
    while g and not g[-1]:
        g.pop()
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        return 0
    size = m + n
    if size == 0:
        return 1
    M = [[0] * size for _ in range(size)]
    for i in range(n):
        for j, c in enumerate(reversed(f)):
            M[i][i + j] = c
    for i in range(m):
        for j, c in enumerate(reversed(g)):
            M[n + i][i + j] = c
    # fraction-free Bareiss
    prev = 1
    sign = 1
    for k in range(size - 1):
        if M[k][k] == 0:
            for r in range(k + 1, size):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[size - 1][size - 1]


def kronecker_symbol(a: int, n: int) -> int:
    """The Kronecker symbol (a|n)."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


# --------------------------------------------------------------------------
# roots of unity
# --------------------------------------------------------------------------


class RootOfUnity:
    """zeta_order^exp, stored with order minimal (gcd(exp, order) = 1)."""

    __slots__ = ("order", "exp")

    def __init__(self, order: int, exp: int):
        if order < 1:
            raise ValueError("order must be positive")
        exp %= order
        g = math.gcd(exp, order) if exp else order
        object.__setattr__(self, "order", order // g)
        object.__setattr__(self, "exp", exp // g)

    def __setattr__(self, *a):
        raise AttributeError("RootOfUnity is immutable")

    @classmethod
    def one(cls) -> "RootOfUnity":
        return cls(1, 0)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        n = math.lcm(self.order, other.order)
        return RootOfUnity(n, self.exp * (n // self.order) + other.exp * (n // other.order))

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.order, self.exp * (k % self.order))

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.order, -self.exp)

    def __eq__(self, other):
        return (
            isinstance(other, RootOfUnity)
            and self.order == other.order
            and self.exp == other.exp
        )

    def __hash__(self):
        return hash((self.order, self.exp))

    def as_cyclo(self, conductor: int | None = None) -> "CycloInt":
        n = conductor or self.order
        if n % self.order:
            raise ValueError("conductor must be a multiple of the order")
        long = [0] * n
        long[self.exp * (n // self.order)] = 1
        return CycloInt(n, reduce_vec(long, n))

    def __repr__(self):
        return f"RootOfUnity({self.order}, {self.exp})"


# --------------------------------------------------------------------------
# cyclotomic integers
# --------------------------------------------------------------------------


class CycloInt:
    """Cyclotomic integer: conductor n and phi(n) integer coordinates in the
    power basis, reduced mod Phi_n.  The conductor need not be minimal;
    :func:`normalize_conductor` finds the least one."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        coeffs = list(coeffs)
        ph = euler_phi(n)
        if len(coeffs) > ph:
            coeffs = reduce_vec(coeffs, n)
        elif len(coeffs) < ph:
            coeffs = coeffs + [0] * (ph - len(coeffs))
        if any(c % 1 for c in coeffs if isinstance(c, Fraction)):
            raise NotIntegral("cyclotomic integer needs integer coordinates")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    def __setattr__(self, *a):
        raise AttributeError("CycloInt is immutable")

    @classmethod
    def from_int(cls, v: int, n: int = 1) -> "CycloInt":
        return cls(n, [v] + [0] * (euler_phi(n) - 1))

    @classmethod
    def zeta(cls, n: int, a: int = 1) -> "CycloInt":
        return RootOfUnity(n, a).as_cyclo(n)

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> int:
        if not self.is_rational:
            raise ValueError("not a rational integer")
        return self.coeffs[0]

    def embed(self, m: int) -> "CycloInt":
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"{m} is not a multiple of conductor {self.n}")
        return CycloInt(m, vec_embed(self.coeffs, self.n, m))

    def group_vector(self) -> list[int]:
        """Length-n vector over the exponent set of zeta_n (power-basis
        exponents are all below phi(n) <= n)."""
        out = [0] * self.n
        for j, c in enumerate(self.coeffs):
            out[j] = c
        return out

    @classmethod
    def from_group_vector(cls, n: int, vec) -> "CycloInt":
        return cls(n, reduce_vec(list(vec), n))

    # -- arithmetic -----------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, int):
            other = CycloInt.from_int(other, 1)
        if not isinstance(other, CycloInt):
            return None, None
        m = math.lcm(self.n, other.n)
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return CycloInt(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloInt(self.n, [-c for c in self.coeffs])

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return CycloInt(a.n, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return CycloInt(a.n, vec_mul(a.coeffs, b.coeffs, a.n))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("CycloInt supports nonnegative powers only")
        out = CycloInt.from_int(1, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def galois(self, s: int) -> "CycloInt":
        """Image under zeta_n -> zeta_n^s."""
        if math.gcd(s, self.n) != 1:
            raise ValueError("automorphism exponent must be coprime to the conductor")
        return CycloInt(self.n, vec_galois(self.coeffs, self.n, s))

    def complex_conjugate(self) -> "CycloInt":
        return self.galois(-1 % self.n) if self.n > 1 else self

    def __eq__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        nc = normalize_conductor(self)
        return hash((nc.n, nc.coeffs))

    # -- text form -------------------------------------------------------------

    def to_string(self) -> str:
        return f"{self.n}; " + ",".join(str(c) for c in self.coeffs)

    @classmethod
    def parse(cls, text: str) -> "CycloInt":
        head, _, body = text.partition(";")
        n = int(head.strip())
        coeffs = [int(t.strip()) for t in body.split(",")] if body.strip() else []
        return cls(n, coeffs)

    def __repr__(self):
        return f"CycloInt({self.to_string()!r})"


def _subfield_matrix(n: int, k: int) -> list[list[int]]:
    """Columns: power-basis vectors (at conductor n) of zeta_k^j, j < phi(k)."""
    return [vec_embed(CycloInt.zeta(k, j).coeffs, k, n) for j in range(euler_phi(k))]


def subfield_express(alpha: CycloInt, k: int):
    """Coordinates of alpha in the power basis of Q(zeta_k), or None if
    alpha does not lie in that subfield.  k must divide the conductor."""
    n = alpha.n
    if n % k:
        raise ValueError("subfield conductor must divide the conductor")
    cols = _subfield_matrix(n, k)
    ph_n, ph_k = euler_phi(n), euler_phi(k)
    # solve sum_j y_j cols[j] = alpha.coeffs over Q
    M = [[Fraction(cols[j][i]) for j in range(ph_k)] + [Fraction(alpha.coeffs[i])]
         for i in range(ph_n)]
    piv_rows = []
    row = 0
    for col in range(ph_k):
        sel = None
        for r in range(row, ph_n):
            if M[r][col]:
                sel = r
                break
        if sel is None:
            continue
        M[row], M[sel] = M[sel], M[row]
        inv = 1 / M[row][col]
        M[row] = [x * inv for x in M[row]]
        for r in range(ph_n):
            if r != row and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[row])]
        piv_rows.append((row, col))
        row += 1
    for r in range(ph_n):
        if all(M[r][c] == 0 for c in range(ph_k)) and M[r][ph_k] != 0:
            return None
    y = [Fraction(0)] * ph_k
    for r, c in piv_rows:
        y[c] = M[r][ph_k]
    return y


def normalize_conductor(alpha: CycloInt) -> CycloInt:
    """Rewrite alpha over the smallest cyclotomic subfield containing it."""
    for k in divisors(alpha.n):
        y = subfield_express(alpha, k)
        if y is not None:
            if any(v.denominator != 1 for v in y):
                continue
            return CycloInt(k, [int(v) for v in y])
    return alpha


@lru_cache(maxsize=None)
def _root_index_table(m: int) -> dict:
    table = {}
    for g in range(m):
        vec = [0] * m
        vec[g] = 1
        table[tuple(reduce_vec(vec, m))] = g
    return table


def root_of_unity_index(alpha: CycloInt):
    """(sign, g) with alpha = sign * zeta_n^g, or None if alpha is not
    plus-or-minus a root of unity of its conductor.  The +zeta^g form is
    preferred when both exist (even conductors)."""
    table = _root_index_table(alpha.n)
    g = table.get(alpha.coeffs)
    if g is not None:
        return 1, g
    g = table.get((-alpha).coeffs)
    if g is not None:
        return -1, g
    return None


# --------------------------------------------------------------------------
# Galois orbits and traces
# --------------------------------------------------------------------------


def _fixing_exponents(n: int, k: int) -> list[int]:
    """Exponents of the automorphisms of Q(zeta_n) fixing Q(zeta_k)."""
    if n % k:
        raise ValueError("k must divide n")
    return [a for a in range(1, n + 1) if math.gcd(a, n) == 1 and a % k == 1 % k]


def galois_orbit(alpha: CycloInt, fixed_subfield_conductor: int = 1) -> list[CycloInt]:
    """Orbit of alpha under the automorphisms fixing Q(zeta_k)."""
    k = fixed_subfield_conductor
    n = math.lcm(alpha.n, k)
    a = alpha.embed(n)
    seen: list[CycloInt] = []
    for s in _fixing_exponents(n, k):
        img = a.galois(s)
        if img not in seen:
            seen.append(img)
    return seen


def trace_to_subfield(alpha: CycloInt, k: int) -> CycloInt:
    """Field trace of alpha from Q(zeta_n) down to Q(zeta_k) (full Galois sum,
    conjugates counted with multiplicity)."""
    n = math.lcm(alpha.n, k)
    a = alpha.embed(n)
    total = CycloInt.from_int(0, n)
    for s in _fixing_exponents(n, k):
        total = total + a.galois(s)
    y = subfield_express(total, k)
    assert y is not None, "trace must land in the subfield"
    return CycloInt(k, y)


# --------------------------------------------------------------------------
# house: certified enclosure of the largest complex absolute value
# --------------------------------------------------------------------------


class RealEnclosure:
    """A closed interval [lo, hi] of exact rationals enclosing a real number."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Fraction, hi: Fraction):
        object.__setattr__(self, "lo", Fraction(lo))
        object.__setattr__(self, "hi", Fraction(hi))

    def __setattr__(self, *a):
        raise AttributeError("RealEnclosure is immutable")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def entirely_leq(self, bound) -> bool:
        return self.hi <= Fraction(bound)

    def entirely_geq(self, bound) -> bool:
        return self.lo >= Fraction(bound)

    def straddles(self, bound) -> bool:
        b = Fraction(bound)
        return self.lo < b < self.hi

    def squared(self) -> "RealEnclosure":
        lo = max(self.lo, 0)
        return RealEnclosure(lo * lo, self.hi * self.hi)

    def __contains__(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def __repr__(self):
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


def _mpf_to_fraction(x) -> Fraction:
    num, den = mpmath.libmp.to_rational(x._mpf_)
    return Fraction(int(num), int(den))


def house(alpha: CycloInt, dps: int = 50) -> RealEnclosure:
    """Certified enclosure of max over complex embeddings of |alpha|.

    Rational values are returned exactly; otherwise the embeddings are
    evaluated with mpmath at ``dps`` digits and the rounding error is
    absorbed into the interval width (default width far below 1e-20)."""
    if alpha.is_rational:
        v = Fraction(abs(alpha.rational_value()))
        return RealEnclosure(v, v)
    n = alpha.n
    coeff_mass = sum(abs(c) for c in alpha.coeffs) + 1
    with mpmath.workdps(dps):
        best = mpmath.mpf(0)
        for a in range(1, n):
            if math.gcd(a, n) != 1:
                continue
            z = mpmath.mpc(0)
            for j, c in enumerate(alpha.coeffs):
                if c:
                    z += c * mpmath.expjpi(mpmath.mpf(2 * a * j) / n)
            v = abs(z)
            if v > best:
                best = v
        eps = mpmath.mpf(coeff_mass) * mpmath.mpf(10) ** (3 - dps)
        lo = _mpf_to_fraction(best - eps)
        hi = _mpf_to_fraction(best + eps)
    return RealEnclosure(max(lo, Fraction(0)), hi)


# --------------------------------------------------------------------------
# sums of roots of unity
# --------------------------------------------------------------------------


@lru_cache(maxsize=32)
def _sum_table(m: int, k: int) -> frozenset:
    """Coefficient tuples (at conductor m) of all sums of exactly k
    elements of mu_m."""
    out = set()
    for combo in itertools.combinations_with_replacement(range(m), k):
        vec = [0] * m
        for j in combo:
            vec[j] += 1
        out.add(tuple(reduce_vec(vec, m)))
    return frozenset(out)


def n_roi(alpha: CycloInt, search_conductor: int, cap: int = 4) -> int:
    """Exact minimum number of elements of mu_{search_conductor} summing to
    alpha, provided it is at most ``cap``.

    This delivers a certified value only for the declared search group: it
    is an upper bound for the unrestricted minimal count and equals it
    whenever an optimal representation exists inside mu_{search_conductor}.
    """
    if cap < 0 or cap > 8:
        raise DomainError("cap must be between 0 and 8")
    m = search_conductor
    nm = math.lcm(alpha.n, m)
    emb = alpha.embed(nm)
    y = subfield_express(emb, m) if nm != m else [Fraction(c) for c in emb.coeffs]
    if y is None or any(v.denominator != 1 for v in y):
        raise NotFound(f"alpha does not lie in Q(zeta_{m})")
    key = tuple(int(v) for v in y)
    for k in range(cap + 1):
        if key in _sum_table(m, k):
            return k
    raise NotFound(f"no representation with <= {cap} terms in mu_{m}")


def loxton_bound(n: int, c: float = 0.01, d: float = 1.0) -> float:
    """The lower-bound profile c * n * exp(-d log n / log log n).

    Valid comparison side for house(alpha)^2 >= bound(N(alpha)); the
    constant c is a configuration parameter, d must exceed log 2."""
    if n < 3:
        raise DomainError("n must be at least 3")
    if d <= math.log(2):
        raise DomainError("d must exceed log 2")
    if c <= 0:
        raise DomainError("c must be positive")
    return c * n * math.exp(-d * math.log(n) / math.log(math.log(n)))


# --------------------------------------------------------------------------
# truncated quotient ring  F_p[y]/(y^(p^m) - 1)
# --------------------------------------------------------------------------


class TruncPoly:
    """Element of F_p[y]/(y^(p^m) - 1)."""

    __slots__ = ("p", "m", "coeffs")

    def __init__(self, p: int, m: int, coeffs):
        size = p**m
        coeffs = list(coeffs)
        if len(coeffs) > size:
            folded = [0] * size
            for j, c in enumerate(coeffs):
                folded[j % size] += c
            coeffs = folded
        coeffs = coeffs + [0] * (size - len(coeffs))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", tuple(c % p for c in coeffs))

    def __setattr__(self, *a):
        raise AttributeError("TruncPoly is immutable")

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "TruncPoly") -> "TruncPoly":
        return TruncPoly(self.p, self.m, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: "TruncPoly") -> "TruncPoly":
        size = self.p**self.m
        out = [0] * size
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[(i + j) % size] += x * y
        return TruncPoly(self.p, self.m, out)

    def __eq__(self, other):
        return (
            isinstance(other, TruncPoly)
            and (self.p, self.m, self.coeffs) == (other.p, other.m, other.coeffs)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.coeffs))

    def __repr__(self):
        return f"TruncPoly(p={self.p}, m={self.m}, {list(self.coeffs)})"


def _prime_power_split(n: int) -> tuple[int, int]:
    fac = factorize(n)
    if len(fac) != 1:
        raise LevelError(f"{n} is not a prime power")
    return fac[0]


def quotient_reduce(x, m: int, p: int | None = None) -> TruncPoly:
    """Image of x in F_p[y]/(y^(p^m) - 1) under zeta_{p^n} -> y.

    x may be a PadicCyclo at level n or a CycloInt of p-power conductor;
    the map factors through Z_p[zeta]/(zeta^(p^m) - 1) and is a ring
    homomorphism."""
    if isinstance(x, PadicCyclo):
        p = x.p
        n = x.r
        if m >= n:
            raise LevelError(f"need m < level, got m={m}, level={n}")
        if x.is_zero:
            return TruncPoly(p, m, [])
        if x.shift < 0:
            raise NotIntegral("element has a pole at p")
        if x.shift >= 1:
            return TruncPoly(p, m, [])
        if x.relprec < 1:
            raise PrecisionExhausted("need at least one digit of precision")
        coords = [v % p for v in x.vec]
    elif isinstance(x, CycloInt):
        if x.n == 1:
            if p is None:
                raise LevelError("p must be given for rational input")
        else:
            q, n = _prime_power_split(x.n)
            if p is not None and p != q:
                raise LevelError("conductor is not a power of the given prime")
            p = q
            if m >= n:
                raise LevelError(f"need m < level, got m={m}, level={n}")
        coords = [c % p for c in x.coeffs]
    else:
        raise TypeError("expected PadicCyclo or CycloInt")
    size_exp = [0] * (p**m)
    pm = p**m
    for j, c in enumerate(coords):
        if c:
            size_exp[j % pm] += c
    return TruncPoly(p, m, size_exp)


# --------------------------------------------------------------------------
# quadratic extensions Q(zeta_m, sqrt(-d))
# --------------------------------------------------------------------------


def quad_disc(d: int) -> int:
    """|discriminant| of Q(sqrt(-d)) for squarefree d > 0."""
    return d if d % 4 == 3 else 4 * d


@lru_cache(maxsize=None)
def _sqrt_minus_d_vec(d: int, m: int) -> tuple:
    """Power-basis coordinates of sqrt(-d) inside Q(zeta_m), available when
    the field discriminant divides m.  Pinned by the quadratic Gauss sum
    g = sum_t chi(t) zeta_D^t = sqrt(-D), so sqrt(-d) = g / sqrt(D/d)."""
    D = quad_disc(d)
    if m % D:
        raise ValueError(f"sqrt(-{d}) is not in Q(zeta_{m})")
    long = [0] * D
    for t in range(1, D):
        ch = kronecker_symbol(-D, t)
        if ch:
            long[t] += ch
    g = reduce_vec(long, D)
    scale = Fraction(1, 2) if D != d else Fraction(1)
    vec = vec_embed([Fraction(c) * scale for c in g], D, m)
    return tuple(vec)


class QuadCycloNum:
    """Element a + b*sqrt(-d) of Q(zeta_m, sqrt(-d)), with a and b exact
    rational-coefficient cyclotomic numbers of conductor m and d a positive
    squarefree integer.

    The pair (a, b) is unique whenever sqrt(-d) does not already lie in
    Q(zeta_m); when it does, equality and zero-testing fold b into the
    cyclotomic part through a pinned Gauss-sum value of sqrt(-d)."""

    __slots__ = ("m", "d", "a", "b")

    def __init__(self, m: int, d: int, a, b=None):
        ph = euler_phi(m)
        if d <= 0:
            raise ValueError("d must be a positive squarefree integer")
        for q, e in factorize(d):
            if e > 1:
                raise ValueError("d must be squarefree")

        def to_vec(v):
            if v is None:
                return [Fraction(0)] * ph
            if isinstance(v, (int, Fraction)):
                return [Fraction(v)] + [Fraction(0)] * (ph - 1)
            vv = [Fraction(x) for x in v]
            if len(vv) != ph:
                raise ValueError(f"expected {ph} coordinates at conductor {m}")
            return vv

        object.__setattr__(self, "m", m)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "a", tuple(to_vec(a)))
        object.__setattr__(self, "b", tuple(to_vec(b)))

    def __setattr__(self, *args):
        raise AttributeError("QuadCycloNum is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rational(cls, v, d: int, m: int = 1) -> "QuadCycloNum":
        return cls(m, d, v, 0)

    @classmethod
    def from_cyclo(cls, alpha: CycloInt, d: int) -> "QuadCycloNum":
        return cls(alpha.n, d, [Fraction(c) for c in alpha.coeffs], 0)

    @classmethod
    def from_root_of_unity(cls, root: RootOfUnity, d: int) -> "QuadCycloNum":
        return cls.from_cyclo(root.as_cyclo(), d)

    # -- structure ----------------------------------------------------------

    def embed(self, m2: int) -> "QuadCycloNum":
        if m2 == self.m:
            return self
        if m2 % self.m:
            raise ValueError("conductor must grow by a multiple")
        return QuadCycloNum(
            m2,
            self.d,
            vec_embed(list(self.a), self.m, m2),
            vec_embed(list(self.b), self.m, m2),
        )

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadCycloNum(1, self.d, other, 0)
        if isinstance(other, CycloInt):
            other = QuadCycloNum.from_cyclo(other, self.d)
        if not isinstance(other, QuadCycloNum):
            return None, None
        if other.d != self.d:
            raise ValueError("mixed quadratic fields")
        m = math.lcm(self.m, other.m)
        return self.embed(m), other.embed(m)

    @property
    def is_zero(self) -> bool:
        if not any(self.b):
            return not any(self.a)
        D = quad_disc(self.d)
        if self.m % D:
            return False
        folded = self._fold_cyclotomic()
        return not any(folded)

    def _fold_cyclotomic(self) -> list[Fraction]:
        """Coordinates of a + b*sqrt(-d) inside Q(zeta_m); needs disc | m."""
        s = _sqrt_minus_d_vec(self.d, self.m)
        bs = vec_mul(list(self.b), list(s), self.m)
        return [x + y for x, y in zip(self.a, bs)]

    @property
    def has_quad_part(self) -> bool:
        """True when the value lies outside Q(zeta_m): b is nonzero and
        sqrt(-d) does not embed into the cyclotomic part."""
        return any(self.b) and self.m % quad_disc(self.d) != 0

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        x, y = self._pair(other)
        if x is None:
            return NotImplemented
        return QuadCycloNum(
            x.m,
            x.d,
            [u + v for u, v in zip(x.a, y.a)],
            [u + v for u, v in zip(x.b, y.b)],
        )

    __radd__ = __add__

    def __neg__(self):
        return QuadCycloNum(self.m, self.d, [-u for u in self.a], [-u for u in self.b])

    def __sub__(self, other):
        x, y = self._pair(other)
        if x is None:
            return NotImplemented
        return x + (-y)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        x, y = self._pair(other)
        if x is None:
            return NotImplemented
        m, d = x.m, x.d
        aa = vec_mul(list(x.a), list(y.a), m)
        bb = vec_mul(list(x.b), list(y.b), m)
        ab = vec_mul(list(x.a), list(y.b), m)
        ba = vec_mul(list(x.b), list(y.a), m)
        return QuadCycloNum(
            m,
            d,
            [u - d * v for u, v in zip(aa, bb)],
            [u + v for u, v in zip(ab, ba)],
        )

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadCycloNum(self.m, self.d, 1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def conj_quad(self) -> "QuadCycloNum":
        """sqrt(-d) -> -sqrt(-d), fixing the cyclotomic part."""
        return QuadCycloNum(self.m, self.d, self.a, [-u for u in self.b])

    def complex_conjugate(self) -> "QuadCycloNum":
        """Complex conjugation: zeta -> zeta^(-1) and sqrt(-d) -> -sqrt(-d)."""
        if self.m > 1:
            s = -1 % self.m
            a = vec_galois(list(self.a), self.m, s)
            b = vec_galois(list(self.b), self.m, s)
        else:
            a, b = list(self.a), list(self.b)
        return QuadCycloNum(self.m, self.d, a, [-u for u in b])

    def galois_cyclo(self, s: int) -> "QuadCycloNum":
        """Apply zeta_m -> zeta_m^s, fixing sqrt(-d)."""
        return QuadCycloNum(
            self.m,
            self.d,
            vec_galois(list(self.a), self.m, s),
            vec_galois(list(self.b), self.m, s),
        )

    def inverse(self) -> "QuadCycloNum":
        """(a + b sqrt(-d))^(-1) = (a - b sqrt(-d)) / (a^2 + d b^2)."""
        den = [
            u + self.d * v
            for u, v in zip(
                vec_mul(list(self.a), list(self.a), self.m),
                vec_mul(list(self.b), list(self.b), self.m),
            )
        ]
        if not any(den):
            raise ZeroDivisionError("element has zero norm to the cyclotomic part")
        den_inv = vec_inv(den, self.m)
        return QuadCycloNum(
            self.m,
            self.d,
            vec_mul(list(self.a), den_inv, self.m),
            [-u for u in vec_mul(list(self.b), den_inv, self.m)],
        )

    def __truediv__(self, other):
        x, y = self._pair(other)
        if x is None:
            return NotImplemented
        return x * y.inverse()

    def __eq__(self, other):
        x, y = self._pair(other)
        if x is None:
            return NotImplemented
        return (x - y).is_zero

    __hash__ = None  # equality folds representations; keep unhashable

    # -- conversions -----------------------------------------------------------

    def rational_value(self) -> Fraction:
        if any(self.a[1:]) or any(self.b):
            raise ValueError("not a rational number")
        return self.a[0]

    def cyclo_part_int(self) -> CycloInt:
        """The a-part as a CycloInt (requires b = 0 and integral a)."""
        if any(self.b):
            raise ValueError("value has a quadratic part")
        if any(v.denominator != 1 for v in self.a):
            raise NotIntegral("a-part is not integral")
        return CycloInt(self.m, [int(v) for v in self.a])

    def to_string(self) -> str:
        fa = ",".join(str(v) for v in self.a)
        fb = ",".join(str(v) for v in self.b)
        return f"{self.m}; {self.d}; {fa}; {fb}"

    @classmethod
    def parse(cls, text: str) -> "QuadCycloNum":
        parts = [t.strip() for t in text.split(";")]
        if len(parts) != 4:
            raise ValueError("expected 'm; d; a-part; b-part'")
        m, d = int(parts[0]), int(parts[1])
        a = [Fraction(t) for t in parts[2].split(",")] if parts[2] else []
        b = [Fraction(t) for t in parts[3].split(",")] if parts[3] else []
        return cls(m, d, a or 0, b or 0)

    def __repr__(self):
        return f"QuadCycloNum({self.to_string()!r})"
