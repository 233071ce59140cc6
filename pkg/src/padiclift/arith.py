"""Exact rational and truncated p-adic arithmetic.

Rationals are plain ``fractions.Fraction`` values (always stored reduced,
with a positive denominator). Residues modulo p**k are ints in [0, p**k).
``TruncatedPAdic`` holds a p-adic number of possibly negative valuation
(Laurent values such as 1/z**2 appear throughout the curve-series code)
together with an explicit relative precision, and its arithmetic never
reports more precision than the operands justify.

All values are immutable and every function is pure.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import NonIntegralError, PrecisionError

INFINITY = math.inf

# Exhaustive scan is used for square roots below this modulus; above it the
# structured (Tonelli-Shanks + Hensel) path takes over.
SQRT_BRUTE_THRESHOLD = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test, deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


def parse_rational(text: str) -> Fraction:
    """Parse "num/den" or "num" into an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse rational from {text!r}") from exc


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def padic_valuation(x: Fraction | int, p: int) -> int | float:
    """nu_p(x): the exponent of p in x, with INFINITY for x = 0."""
    require_odd_prime(p)
    x = Fraction(x)
    if x == 0:
        return INFINITY
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def reduce_mod(x: Fraction | int, p: int, k: int) -> int:
    """x as a residue in [0, p**k); requires the denominator coprime to p."""
    require_odd_prime(p)
    if k < 1:
        raise ValueError("k must be positive")
    x = Fraction(x)
    m = p**k
    if x.denominator % p == 0:
        raise NonIntegralError(f"{format_rational(x)} is non-integral at p = {p}")
    return x.numerator * pow(x.denominator, -1, m) % m


class TruncatedPAdic:
    """A p-adic number known to finite precision: p**v * u with p not dividing u.

    The unit part ``u`` is stored modulo p**prec, so the element is known
    modulo p**(v + prec) (its absolute precision). Exact zero is the
    distinguished element with v = INFINITY. A value that cancelled to zero
    within working precision is kept as an approximate zero with u = 0 and
    prec = 0: it is zero modulo p**v but its true valuation is unknown.
    """

    __slots__ = ("p", "v", "u", "prec")

    def __init__(self, p: int, v, u: int, prec: int):
        self.p = p
        self.v = v
        self.u = u
        self.prec = prec

    # -- constructors -------------------------------------------------

    @classmethod
    def exact_zero(cls, p: int) -> "TruncatedPAdic":
        require_odd_prime(p)
        return cls(p, INFINITY, 0, 0)

    @classmethod
    def zero_at(cls, p: int, abs_prec: int) -> "TruncatedPAdic":
        """A value known only to be divisible by p**abs_prec."""
        require_odd_prime(p)
        if abs_prec <= 0:
            raise PrecisionError("no certified digits remain")
        return cls(p, abs_prec, 0, 0)

    @classmethod
    def _normalize(cls, p: int, v: int, t: int, width: int) -> "TruncatedPAdic":
        # value = p**v * t with t known modulo p**width
        if width <= 0:
            raise PrecisionError("precision exhausted")
        t %= p**width
        if t == 0:
            return cls.zero_at(p, v + width)
        j = 0
        while t % p == 0:
            t //= p
            j += 1
        return cls(p, v + j, t % p ** (width - j), width - j)

    @classmethod
    def from_rational(cls, x: Fraction | int, p: int, abs_prec: int) -> "TruncatedPAdic":
        """Embed an exact rational, known to at least p**abs_prec.

        The input is exact, so when its valuation already reaches abs_prec
        the element is simply carried at one unit digit instead of failing.
        """
        require_odd_prime(p)
        x = Fraction(x)
        if x == 0:
            return cls.exact_zero(p)
        v = padic_valuation(x, p)
        unit = x / Fraction(p) ** v
        width = max(abs_prec - v, 1)
        m = p**width
        u = unit.numerator * pow(unit.denominator, -1, m) % m
        return cls(p, v, u, width)

    @classmethod
    def from_residue(cls, r: int, p: int, k: int) -> "TruncatedPAdic":
        """Embed a residue known modulo p**k."""
        require_odd_prime(p)
        return cls._normalize(p, 0, r, k)

    # -- inspection ---------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.v is INFINITY

    @property
    def is_zero(self) -> bool:
        """Zero as far as the known digits go (exact or approximate)."""
        return self.u == 0

    @property
    def abs_precision(self):
        """The element is known modulo p**abs_precision."""
        if self.is_exact_zero:
            return INFINITY
        return self.v + self.prec

    def residue(self, k: int) -> int:
        """The value modulo p**k; requires v >= 0 and abs_precision >= k."""
        if self.is_zero:
            if self.abs_precision < k:
                raise PrecisionError(f"only known modulo {self.p}^{self.abs_precision}")
            return 0
        if self.v < 0:
            raise NonIntegralError("negative valuation has no integer residue")
        if self.abs_precision < k:
            raise PrecisionError(f"only known modulo {self.p}^{self.abs_precision}")
        return self.u * self.p**self.v % self.p**k

    # -- arithmetic ---------------------------------------------------

    def _check_compat(self, other: "TruncatedPAdic") -> None:
        if self.p != other.p:
            raise ValueError(f"prime mismatch: {self.p} vs {other.p}")

    def __add__(self, other: "TruncatedPAdic") -> "TruncatedPAdic":
        self._check_compat(other)
        p = self.p
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        n = min(self.abs_precision, other.abs_precision)
        w = min(self.v, other.v)
        t = self.u * p ** (self.v - w) + other.u * p ** (other.v - w)
        return self._normalize(p, w, t, n - w)

    def __neg__(self) -> "TruncatedPAdic":
        if self.is_zero:
            return self
        return TruncatedPAdic(self.p, self.v, -self.u % self.p**self.prec, self.prec)

    def __sub__(self, other: "TruncatedPAdic") -> "TruncatedPAdic":
        return self + (-other)

    def __mul__(self, other: "TruncatedPAdic") -> "TruncatedPAdic":
        self._check_compat(other)
        p = self.p
        if self.is_exact_zero or other.is_exact_zero:
            return self.exact_zero(p)
        if self.is_zero or other.is_zero:
            # one factor is O(p^N): the product is zero to N + v(other) digits
            za, zb = (self, other) if self.is_zero else (other, self)
            return self.zero_at(p, za.v + zb.v)
        prec = min(self.prec, other.prec)
        return TruncatedPAdic(p, self.v + other.v, self.u * other.u % p**prec, prec)

    def __truediv__(self, other: "TruncatedPAdic") -> "TruncatedPAdic":
        self._check_compat(other)
        p = self.p
        if other.is_zero:
            if other.is_exact_zero:
                raise ZeroDivisionError("division by exact zero")
            raise PrecisionError("divisor is zero at working precision")
        if self.is_exact_zero:
            return self
        if self.is_zero:
            return self.zero_at(p, self.v - other.v)
        prec = min(self.prec, other.prec)
        if prec <= 0:
            raise PrecisionError("precision exhausted")
        m = p**prec
        return TruncatedPAdic(p, self.v - other.v, self.u * pow(other.u, -1, m) % m, prec)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedPAdic):
            return NotImplemented
        return (self.p, self.v, self.u, self.prec) == (other.p, other.v, other.u, other.prec)

    def __hash__(self):
        return hash((self.p, self.v, self.u, self.prec))

    def __repr__(self) -> str:
        if self.is_exact_zero:
            return f"TruncatedPAdic(0, p={self.p})"
        if self.is_zero:
            return f"TruncatedPAdic(O({self.p}^{self.v}))"
        return f"TruncatedPAdic({self.p}^{self.v}*{self.u} + O({self.p}^{self.abs_precision}))"


def padic_div(a: TruncatedPAdic, b: TruncatedPAdic) -> TruncatedPAdic:
    """Quotient a/b with honest precision: prec = min(prec(a), prec(b))."""
    return a / b


def _tonelli_shanks(a: int, p: int) -> int:
    """One square root of a modulo odd prime p; a must be a QR."""
    a %= p
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    c = pow(z, q, p)
    r = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, x = 0, t
        while x != 1:
            x = x * x % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return r


def sqrt_all_mod(a: int, p: int, k: int, *, brute_threshold: int = SQRT_BRUTE_THRESHOLD) -> set[int]:
    """All r in [0, p**k) with r*r = a (mod p**k).

    Below the threshold this is an exhaustive scan; above it the roots are
    assembled from a Tonelli-Shanks root lifted by Hensel's lemma, with the
    p-divisible branch handled separately (a = 0 has p**floor(k/2) roots).
    """
    require_odd_prime(p)
    if k < 1:
        raise ValueError("k must be positive")
    m = p**k
    a %= m
    if m <= brute_threshold:
        return {r for r in range(m) if r * r % m == a}
    if a == 0:
        step = p ** ((k + 1) // 2)
        return set(range(0, m, step))
    e = 0
    a0 = a
    while a0 % p == 0:
        a0 //= p
        e += 1
    if e % 2 == 1:
        return set()
    f = e // 2
    if pow(a0, (p - 1) // 2, p) != 1:
        return set()
    s = _tonelli_shanks(a0, p)
    # lift s to a root of x^2 = a0 modulo p^(k - e) by Newton steps
    width = k - e
    mm = p
    while mm < p**width:
        mm = min(mm * mm, p**width)
        s = (s - (s * s - a0) * pow(2 * s, -1, mm)) % mm
    base = p**f * s
    period = p ** (k - f)
    roots = set()
    for r0 in (base, period - base):
        roots.update((r0 + j * period) % m for j in range(p**f))
    return roots
