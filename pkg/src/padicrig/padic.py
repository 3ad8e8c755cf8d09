"""Truncated p-adic arithmetic over Z_p, Q_p and the tower Q_p(zeta_{p^r}).

Representation conventions:

* ``PadicNum`` stores a unit residue ``digits`` known modulo ``p**prec``
  together with an integer exponent ``val_shift``; the value is
  ``digits * p**val_shift``.  ``digits == 0`` means "zero at working
  precision", and ``val_shift`` then records the absolute precision bound.
* ``PadicCyclo`` stores an element of Z_p[zeta_{p^r}] (or its fraction
  field) as ``p**shift`` times an integer coordinate vector in the power
  basis 1, zeta, ..., zeta^(phi(p^r)-1), reduced modulo the p^r-th
  cyclotomic polynomial, coordinates known modulo ``p**relprec``.

All values are immutable; operations are pure and track precision through
every step (division by n costs ord_p(n) digits of the logarithm, and so
on).  Only odd primes are supported.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    LevelDecrease,
    NotAUnit,
    NotIntegral,
    NotOneUnit,
    PrecisionExhausted,
)

DEFAULT_PREC = 40

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    for q in _SMALL_PRIMES:
        if p == q:
            return True
        if p % q == 0:
            return False
    i = 41
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def _check_prime(p: int) -> None:
    if not is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


def _strip_p(v: int, p: int) -> tuple[int, int]:
    """Return (unit, k) with v = unit * p**k, for v != 0."""
    k = 0
    while v % p == 0:
        v //= p
        k += 1
    return v, k


def val_int(v: int, p: int) -> int | None:
    """p-adic valuation of a plain integer, None for 0."""
    if v == 0:
        return None
    k = 0
    while v % p == 0:
        v //= p
        k += 1
    return k


class Valuation:
    """Exact rational valuation, or +infinity for a value that is zero at
    working precision (``at_precision`` then records the precision bound)."""

    __slots__ = ("num", "den", "at_precision")

    def __init__(self, value=None, at_precision=None, _infinite=False):
        if _infinite or value is None:
            self.num = None
            self.den = 0
            self.at_precision = at_precision
        else:
            f = Fraction(value)
            self.num = f.numerator
            self.den = f.denominator
            self.at_precision = None

    @classmethod
    def infinite(cls, at_precision=None) -> "Valuation":
        return cls(_infinite=True, at_precision=at_precision)

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    @property
    def fraction(self) -> Fraction:
        if self.is_infinite:
            raise PrecisionExhausted("valuation is +inf at working precision")
        return Fraction(self.num, self.den)

    @staticmethod
    def _coerce(other):
        if isinstance(other, Valuation):
            return other
        return Valuation(other)

    def __eq__(self, other):
        o = self._coerce(other)
        if self.is_infinite or o.is_infinite:
            return self.is_infinite and o.is_infinite
        return self.fraction == o.fraction

    def __lt__(self, other):
        o = self._coerce(other)
        if self.is_infinite:
            return False
        if o.is_infinite:
            return True
        return self.fraction < o.fraction

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def __add__(self, other):
        o = self._coerce(other)
        if self.is_infinite or o.is_infinite:
            return Valuation.infinite()
        return Valuation(self.fraction + o.fraction)

    __radd__ = __add__

    def __mul__(self, other):
        if self.is_infinite:
            return Valuation.infinite()
        return Valuation(self.fraction * Fraction(other))

    __rmul__ = __mul__

    def __hash__(self):
        if self.is_infinite:
            return hash("val-inf")
        return hash(self.fraction)

    def __repr__(self):
        if self.is_infinite:
            if self.at_precision is not None:
                return f"+inf(at O(p^{self.at_precision}))"
            return "+inf"
        f = self.fraction
        return f"{f.numerator}" if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


class PadicNum:
    """Element of Q_p known to finite precision.

    The value is ``digits * p**val_shift`` with ``0 <= digits < p**prec``
    and ``p`` not dividing ``digits``; the absolute precision is
    ``val_shift + prec``.  ``digits == 0`` encodes zero at precision, with
    ``val_shift`` the absolute bound and ``prec == 0``.
    """

    __slots__ = ("p", "digits", "prec", "val_shift")

    def __init__(self, p: int, digits: int, prec: int, val_shift: int = 0):
        _check_prime(p)
        if prec < 0:
            prec = 0
        digits %= p**prec if prec else 1
        if digits == 0:
            object.__setattr__(self, "p", p)
            object.__setattr__(self, "digits", 0)
            object.__setattr__(self, "prec", 0)
            object.__setattr__(self, "val_shift", val_shift + prec)
            return
        unit, k = _strip_p(digits, p)
        if k:
            prec -= k
            val_shift += k
            if prec <= 0:
                object.__setattr__(self, "p", p)
                object.__setattr__(self, "digits", 0)
                object.__setattr__(self, "prec", 0)
                object.__setattr__(self, "val_shift", val_shift + prec)
                return
            unit %= p**prec
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "digits", unit if k else digits)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "val_shift", val_shift)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("PadicNum is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def from_int(cls, p: int, v: int, prec: int = DEFAULT_PREC) -> "PadicNum":
        return cls(p, v % p**prec, prec)

    @classmethod
    def from_fraction(cls, p: int, q, prec: int = DEFAULT_PREC) -> "PadicNum":
        q = Fraction(q)
        num, den = q.numerator, q.denominator
        if num == 0:
            return cls.zero(p, prec)
        den_unit, k = _strip_p(den, p)
        mod = p**prec
        digits = num * pow(den_unit, -1, mod) % mod
        return cls(p, digits, prec, -k)

    @classmethod
    def zero(cls, p: int, abs_prec: int = DEFAULT_PREC) -> "PadicNum":
        return cls(p, 0, 0, abs_prec)

    @classmethod
    def one(cls, p: int, prec: int = DEFAULT_PREC) -> "PadicNum":
        return cls(p, 1, prec)

    # -- basic structure ------------------------------------------------

    @property
    def is_zero(self) -> bool:
        """Zero at working precision (not necessarily an exact zero)."""
        return self.digits == 0

    @property
    def abs_prec(self) -> int:
        return self.val_shift + self.prec

    def ord(self) -> Valuation:
        if self.is_zero:
            return Valuation.infinite(at_precision=self.val_shift)
        return Valuation(self.val_shift)

    def residue(self, k: int) -> int:
        """The value as an integer modulo p**k.  Requires val_shift >= 0
        and absolute precision at least k."""
        if self.val_shift < 0:
            raise NotIntegral("value has a pole at p")
        if self.abs_prec < k:
            raise PrecisionExhausted(f"known only mod p^{self.abs_prec}, need p^{k}")
        if self.is_zero:
            return 0
        return (self.digits * self.p**self.val_shift) % self.p**k

    def unit_part(self) -> "PadicNum":
        if self.is_zero:
            raise PrecisionExhausted("no unit part of a zero-at-precision value")
        return PadicNum(self.p, self.digits, self.prec, 0)

    # -- ring operations -------------------------------------------------

    def _common(self, other) -> "PadicNum":
        if isinstance(other, int):
            return PadicNum.from_int(self.p, other, max(self.prec, DEFAULT_PREC))
        if isinstance(other, Fraction):
            return PadicNum.from_fraction(self.p, other, max(self.prec, DEFAULT_PREC))
        if not isinstance(other, PadicNum):
            return NotImplemented
        if other.p != self.p:
            raise ValueError("mixed primes")
        return other

    def __add__(self, other):
        o = self._common(other)
        if o is NotImplemented:
            return o
        a_prec = min(self.abs_prec, o.abs_prec)
        if self.is_zero and o.is_zero:
            return PadicNum.zero(self.p, a_prec)
        shifts = [v.val_shift for v in (self, o) if not v.is_zero]
        m = min(shifts)
        if a_prec <= m:
            return PadicNum.zero(self.p, a_prec)
        mod = self.p ** (a_prec - m)
        total = 0
        for v in (self, o):
            if not v.is_zero:
                total += v.digits * self.p ** (v.val_shift - m)
        return PadicNum(self.p, total % mod, a_prec - m, m)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        return PadicNum(self.p, -self.digits % self.p**self.prec, self.prec, self.val_shift)

    def __sub__(self, other):
        o = self._common(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._common(other)
        if o is NotImplemented:
            return o
        if self.is_zero or o.is_zero:
            lo = self.val_shift if self.is_zero else self.ord().fraction
            ro = o.val_shift if o.is_zero else o.ord().fraction
            return PadicNum.zero(self.p, int(lo) + int(ro))
        prec = min(self.prec, o.prec)
        mod = self.p**prec
        return PadicNum(self.p, (self.digits * o.digits) % mod, prec, self.val_shift + o.val_shift)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNum":
        if self.is_zero:
            raise PrecisionExhausted("cannot invert zero at working precision")
        mod = self.p**self.prec
        return PadicNum(self.p, pow(self.digits, -1, mod), self.prec, -self.val_shift)

    def __truediv__(self, other):
        o = self._common(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if self.is_zero:
            return PadicNum.zero(self.p, self.val_shift * max(n, 1))
        mod = self.p**self.prec
        return PadicNum(self.p, pow(self.digits, n, mod), self.prec, self.val_shift * n)

    def __eq__(self, other):
        o = self._common(other)
        if o is NotImplemented:
            return o
        return (self - o).is_zero

    __hash__ = None  # equality is precision-dependent

    # -- rendering ---------------------------------------------------------

    def __repr__(self):
        return f"PadicNum({self.to_string()!r})"

    def to_string(self) -> str:
        """Render as a base-p digit string with an explicit precision
        marker, e.g. ``...(2031)_5 + O(5^40)``."""
        p = self.p
        if self.is_zero:
            return f"...(0)_{p} + O({p}^{self.val_shift})"
        if self.val_shift >= 0:
            v = self.digits * p**self.val_shift
            return f"...({_digit_str(v, p)})_{p} + O({p}^{self.abs_prec})"
        v = self.digits
        return (
            f"...({_digit_str(v, p)})_{p}*{p}^{self.val_shift}"
            f" + O({p}^{self.abs_prec})"
        )

    @classmethod
    def parse(cls, text: str, p: int) -> "PadicNum":
        """Parse the rendering produced by :meth:`to_string`."""
        text = text.strip().lstrip(".")
        body, _, tail = text.partition("+ O(")
        if not tail:
            raise ValueError(f"missing precision marker in {text!r}")
        abs_prec = int(tail.rstrip(")").split("^")[1])
        body = body.strip()
        shift = 0
        if "*" in body:
            body, _, exp = body.partition("*")
            shift = int(exp.split("^")[1])
        digits_txt = body.strip().removeprefix("(").split(")")[0]
        v = _parse_digits(digits_txt, p)
        return cls(p, v, abs_prec - shift, shift)


def _digit_str(v: int, p: int) -> str:
    if v == 0:
        return "0"
    ds = []
    while v:
        v, r = divmod(v, p)
        ds.append(r)
    if p <= 10:
        return "".join(str(d) for d in reversed(ds))
    return ",".join(str(d) for d in reversed(ds))


def _parse_digits(s: str, p: int) -> int:
    parts = list(s) if p <= 10 else s.split(",")
    v = 0
    for c in parts:
        v = v * p + int(c)
    return v


# -- the cyclotomic tower Q_p(zeta_{p^r}) -----------------------------------


def phi_pr(p: int, r: int) -> int:
    """Euler phi of p**r (phi(1) = 1 for r = 0)."""
    return 1 if r == 0 else (p - 1) * p ** (r - 1)


def _kron_mul(a: list[int], b: list[int], mod: int) -> list[int]:
    """Convolution of nonnegative coefficient lists via Kronecker packing."""
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return []
    slot = ((mod - 1) * (mod - 1) * min(la, lb) + 1).bit_length()
    A = 0
    for c in reversed(a):
        A = (A << slot) | c
    B = 0
    for c in reversed(b):
        B = (B << slot) | c
    C = A * B
    mask = (1 << slot) - 1
    return [(C >> (i * slot)) & mask for i in range(la + lb - 1)]


def _reduce_mod_cyclo(vec: list[int], p: int, r: int, mod: int) -> list[int]:
    """Reduce a coefficient list modulo Phi_{p^r}, result length phi(p^r).

    Uses zeta^phi = -(1 + zeta^{p^{r-1}} + ... + zeta^{(p-2) p^{r-1}}).
    """
    ph = phi_pr(p, r)
    if r == 0:
        return [sum(vec) % mod]
    vec = list(vec)
    step = p ** (r - 1)
    for idx in range(len(vec) - 1, ph - 1, -1):
        c = vec[idx]
        if c:
            vec[idx] = 0
            base = idx - ph
            for j in range(p - 1):
                vec[base + j * step] -= c
    return [v % mod for v in vec[:ph]]


_BINOM_CACHE: dict[int, list[list[int]]] = {}


def _binom_table(n: int) -> list[list[int]]:
    """Rows of Pascal's triangle up to C(n-1, *)."""
    rows = _BINOM_CACHE.get(n)
    if rows is None:
        rows = [[1]]
        while len(rows) < n:
            prev = rows[-1]
            rows.append([1] + [prev[i] + prev[i + 1] for i in range(len(prev) - 1)] + [1])
        _BINOM_CACHE[n] = rows
    return rows


class PadicCyclo:
    """Element of Z_p[zeta_{p^r}] or its fraction field at working precision.

    Stored as ``p**shift`` times an integer coordinate vector ``vec`` in the
    power basis of zeta_{p^r}, coordinates known modulo ``p**relprec``.  The
    canonical form strips every integer power of p common to all
    coordinates into ``shift``, so at least one coordinate is a p-unit.
    """

    __slots__ = ("p", "r", "shift", "relprec", "vec")

    def __init__(self, p, r, vec, relprec, shift=0):
        _check_prime(p)
        ph = phi_pr(p, r)
        vec = list(vec)
        if len(vec) != ph:
            raise ValueError(f"need {ph} coordinates at level {r}, got {len(vec)}")
        if relprec < 0:
            relprec = 0
        mod = p**relprec if relprec else 1
        vec = [v % mod for v in vec]
        vals = [val_int(v, p) for v in vec]
        finite = [v for v in vals if v is not None]
        if not finite or relprec == 0:
            object.__setattr__(self, "p", p)
            object.__setattr__(self, "r", r)
            object.__setattr__(self, "shift", shift + relprec)
            object.__setattr__(self, "relprec", 0)
            object.__setattr__(self, "vec", (0,) * ph)
            return
        k = min(finite)
        if k:
            relprec -= k
            shift += k
            mod = p**relprec
            vec = [(v // p**k) % mod for v in vec]
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "relprec", relprec)
        object.__setattr__(self, "vec", tuple(vec))

    def __setattr__(self, *a):
        raise AttributeError("PadicCyclo is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_padicnum(cls, x: PadicNum, r: int = 0) -> "PadicCyclo":
        ph = phi_pr(x.p, r)
        if x.is_zero:
            return cls(x.p, r, [0] * ph, 0, x.val_shift)
        vec = [0] * ph
        vec[0] = x.digits
        return cls(x.p, r, vec, x.prec, x.val_shift)

    @classmethod
    def from_int(cls, p: int, v: int, r: int = 0, prec: int = DEFAULT_PREC) -> "PadicCyclo":
        return cls.from_padicnum(PadicNum.from_int(p, v, prec), r)

    @classmethod
    def zeta(cls, p: int, r: int, a: int = 1, prec: int = DEFAULT_PREC) -> "PadicCyclo":
        """The root of unity zeta_{p^r}^a."""
        if r == 0:
            return cls.from_int(p, 1, 0, prec)
        a %= p**r
        ph = phi_pr(p, r)
        vec = [0] * (a + 1)
        vec[a] = 1
        vec = _reduce_mod_cyclo(vec, p, r, p**prec) if a >= ph else vec + [0] * (ph - a - 1)
        return cls(p, r, vec, prec)

    @classmethod
    def zero(cls, p: int, r: int = 0, abs_prec: int = DEFAULT_PREC) -> "PadicCyclo":
        return cls(p, r, [0] * phi_pr(p, r), 0, abs_prec)

    # -- structure --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.relprec == 0

    @property
    def abs_prec(self) -> int:
        """Absolute precision bound, an integer number of p-digits."""
        return self.shift + self.relprec

    @property
    def degree(self) -> int:
        return phi_pr(self.p, self.r)

    @property
    def coords(self) -> list[PadicNum]:
        """Coordinates in the power basis, as PadicNum values."""
        if self.is_zero:
            return [PadicNum.zero(self.p, self.shift) for _ in range(self.degree)]
        return [PadicNum(self.p, v, self.relprec, self.shift) for v in self.vec]

    def as_padicnum(self) -> PadicNum:
        """Convert a level-0 (or rational-coordinate) element back to Q_p."""
        if any(self.vec[1:]):
            raise ValueError("element is not in Q_p")
        if self.is_zero:
            return PadicNum.zero(self.p, self.shift)
        return PadicNum(self.p, self.vec[0], self.relprec, self.shift)

    # -- level embeddings ---------------------------------------------------

    def embed(self, r2: int) -> "PadicCyclo":
        """Image under zeta_{p^r} = zeta_{p^{r2}}^{p^{r2-r}}; ord is preserved."""
        if r2 < self.r:
            raise LevelDecrease(f"cannot embed level {self.r} into level {r2}")
        if r2 == self.r:
            return self
        if self.is_zero:
            return PadicCyclo.zero(self.p, r2, self.shift)
        stretch = self.p ** (r2 - self.r) if self.r else 1
        ph2 = phi_pr(self.p, r2)
        vec = [0] * ph2
        if self.r == 0:
            vec[0] = self.vec[0]
        else:
            for j, c in enumerate(self.vec):
                vec[j * stretch] = c
        return PadicCyclo(self.p, r2, vec, self.relprec, self.shift)

    @staticmethod
    def _align(x: "PadicCyclo", y: "PadicCyclo") -> tuple["PadicCyclo", "PadicCyclo"]:
        r = max(x.r, y.r)
        return x.embed(r), y.embed(r)

    # -- ring operations ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicCyclo):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, PadicNum):
            return PadicCyclo.from_padicnum(other, 0)
        if isinstance(other, int):
            return PadicCyclo.from_int(self.p, other, 0, max(self.relprec, DEFAULT_PREC))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        x, y = self._align(self, o)
        a_prec = min(x.abs_prec, y.abs_prec)
        if x.is_zero and y.is_zero:
            return PadicCyclo.zero(x.p, x.r, a_prec)
        shifts = [v.shift for v in (x, y) if not v.is_zero]
        m = min(shifts)
        if a_prec <= m:
            return PadicCyclo.zero(x.p, x.r, a_prec)
        mod = x.p ** (a_prec - m)
        vec = [0] * x.degree
        for v in (x, y):
            if not v.is_zero:
                scale = x.p ** (v.shift - m)
                for i, c in enumerate(v.vec):
                    vec[i] += c * scale
        return PadicCyclo(x.p, x.r, [c % mod for c in vec], a_prec - m, m)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        mod = self.p**self.relprec
        return PadicCyclo(self.p, self.r, [(-v) % mod for v in self.vec], self.relprec, self.shift)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        x, y = self._align(self, o)
        if x.is_zero or y.is_zero:
            bound = (x.shift if x.is_zero else x.shift) + (y.shift if y.is_zero else y.shift)
            return PadicCyclo.zero(x.p, x.r, bound)
        relprec = min(x.relprec, y.relprec)
        mod = x.p**relprec
        conv = _kron_mul([v % mod for v in x.vec], [v % mod for v in y.vec], mod)
        vec = _reduce_mod_cyclo(conv, x.p, x.r, mod)
        return PadicCyclo(x.p, x.r, vec, relprec, x.shift + y.shift)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported in the cyclotomic ring")
        result = PadicCyclo.from_int(self.p, 1, self.r, max(self.relprec, DEFAULT_PREC))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return (self - o).is_zero

    __hash__ = None

    # -- valuation -----------------------------------------------------------

    def _ramified_coords(self) -> list[int]:
        """Coordinates in the basis of powers of lambda = zeta - 1 (exact
        integer unitriangular change of basis)."""
        ph = self.degree
        rows = _binom_table(ph)
        mod = self.p**self.relprec
        return [
            sum(rows[j][i] * self.vec[j] for j in range(i, ph)) % mod
            for i in range(ph)
        ]

    def ord(self) -> Valuation:
        """The p-adic valuation, ord_p(p) = 1.

        Computed through the lambda-adic expansion: the i-th ramified
        coordinate contributes ord(b_i) + i/phi(p^r), and these candidates
        have pairwise distinct fractional parts, so the minimum is exact.
        Agrees with ord_p(Norm(x))/phi(p^r) for the resultant-based norm.
        """
        if self.is_zero:
            return Valuation.infinite(at_precision=self.shift)
        ph = self.degree
        best = None
        for i, b in enumerate(self._ramified_coords()):
            v = val_int(b, self.p)
            if v is None:
                continue
            cand = Fraction(v) + Fraction(i, ph)
            if best is None or cand < best:
                best = cand
        if best is None:
            return Valuation.infinite(at_precision=self.abs_prec)
        return Valuation(best + self.shift)

    def __repr__(self):
        cs = ",".join(str(v) for v in self.vec)
        return (
            f"PadicCyclo(p={self.p}, r={self.r}, p^{self.shift}*[{cs}]"
            f" + O(p^{self.abs_prec}))"
        )


# -- module-level operations -------------------------------------------------


def ord(x) -> Valuation:
    """p-adic valuation of a PadicNum or PadicCyclo (ord_p(p) = 1)."""
    return x.ord()


def teichmuller(a: PadicNum) -> PadicNum:
    """The Teichmuller lift: the unique (p-1)-st root of unity congruent to
    the unit ``a`` modulo p, computed by iterating x -> x^p to stabilization."""
    if a.is_zero or a.val_shift != 0:
        raise NotAUnit(f"teichmuller needs a unit, got ord {a.ord()!r}")
    mod = a.p**a.prec
    x = a.digits % mod
    for _ in range(a.prec + 1):
        nxt = pow(x, a.p, mod)
        if nxt == x:
            break
        x = nxt
    return PadicNum(a.p, x, a.prec, 0)


def log_one_unit(u: PadicNum) -> PadicNum:
    """log of a one-unit via the alternating series sum (-1)^(n+1) (u-1)^n / n.

    Requires ord(u - 1) > 0.  Division by n loses ord_p(n) digits; the
    result's tracked precision reflects the worst term retained.
    """
    z = u - 1
    if not z.is_zero and (z.val_shift <= 0):
        raise NotOneUnit(f"ord(u-1) = {z.ord()!r} is not positive")
    if z.is_zero:
        return PadicNum.zero(u.p, z.val_shift)
    target = u.abs_prec
    v = z.val_shift
    acc = PadicNum.zero(u.p, target)
    zn = z
    n = 1
    while n * v - int(math.log(n, u.p)) <= target + 1:
        term = zn / PadicNum.from_int(u.p, n, u.prec + 2)
        acc = acc + term if n % 2 == 1 else acc - term
        n += 1
        zn = zn * z
    return acc


def cyclo_embed(x: PadicCyclo, r2: int) -> PadicCyclo:
    """Embed a level-r element into level r2 >= r."""
    return x.embed(r2)
