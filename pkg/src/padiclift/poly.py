"""Exact univariate polynomial arithmetic over Q, F_p, and Z/p^k.

A polynomial is an immutable tuple of coefficients in ascending degree
order (the zero polynomial is the empty tuple) together with an explicit
coefficient domain: ``QQ`` for exact rationals or ``Zmod(p, k)`` for
residues modulo p**k. ``Zmod(p, 1)`` is a field; for k > 1 it is a ring in
which non-units exist, and the operations that genuinely need a field
(extended gcd, resultants) refuse it rather than pretend.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import format_rational, padic_valuation, parse_rational, reduce_mod, require_odd_prime
from .errors import NonIntegralError, NotAFieldError


class _RationalField:
    """The field of exact rationals (singleton ``QQ``)."""

    is_field = True
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x) -> Fraction:
        if isinstance(x, str):
            return parse_rational(x)
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a) -> bool:
        return a != 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def format(self, a) -> str:
        return format_rational(a)

    def __repr__(self) -> str:
        return "QQ"


QQ = _RationalField()


@dataclass(frozen=True)
class Zmod:
    """Residues modulo p**k for an odd prime p; a field exactly when k = 1."""

    p: int
    k: int = 1

    def __post_init__(self):
        require_odd_prime(self.p)
        if self.k < 1:
            raise ValueError("k must be positive")

    @property
    def modulus(self) -> int:
        return self.p**self.k

    @property
    def is_field(self) -> bool:
        return self.k == 1

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def coerce(self, x) -> int:
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, Fraction):
            return reduce_mod(x, self.p, self.k)
        return int(x) % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def is_unit(self, a) -> bool:
        return a % self.p != 0

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not invertible modulo {self.p}^{self.k}")
        return pow(a, -1, self.modulus)

    def format(self, a) -> str:
        return str(a)

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"Z/{self.p}^{self.k}"


class Poly:
    """Immutable univariate polynomial over an explicit coefficient domain."""

    __slots__ = ("coeffs", "domain")

    def __init__(self, coeffs, domain=QQ):
        cs = [domain.coerce(c) for c in coeffs]
        while cs and cs[-1] == domain.zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "domain", domain)

    def __setattr__(self, *args):
        raise AttributeError("Poly is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, domain=QQ) -> "Poly":
        return cls((), domain)

    @classmethod
    def one(cls, domain=QQ) -> "Poly":
        return cls((1,), domain)

    @classmethod
    def x(cls, domain=QQ) -> "Poly":
        return cls((0, 1), domain)

    @classmethod
    def constant(cls, c, domain=QQ) -> "Poly":
        return cls((c,), domain)

    @classmethod
    def parse(cls, text: str, domain=QQ) -> "Poly":
        """Parse "4*x + 7" style strings; ascending or descending order accepted."""
        s = text.replace("**", "^").replace(" ", "")
        if not s:
            raise ValueError("empty polynomial string")
        s = s.replace("-", "+-")
        terms = [t for t in s.split("+") if t]
        coeffs: dict[int, Fraction] = {}
        for term in terms:
            if "x" in term:
                head, _, tail = term.partition("x")
                deg = int(tail[1:]) if tail.startswith("^") else (1 if not tail else None)
                if deg is None or deg < 0:
                    raise ValueError(f"cannot parse term {term!r} in {text!r}")
                head = head.rstrip("*")
                if head in ("", "-"):
                    head += "1"
                coef = parse_rational(head)
            else:
                deg = 0
                coef = parse_rational(term)
            coeffs[deg] = coeffs.get(deg, Fraction(0)) + coef
        out = [Fraction(0)] * (max(coeffs) + 1)
        for d, c in coeffs.items():
            out[d] = c
        return cls(out, domain)

    # -- inspection -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.lc == self.domain.one

    def coefficient(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.domain.zero

    def __call__(self, x):
        D = self.domain
        x = D.coerce(x)
        acc = D.zero
        for c in reversed(self.coeffs):
            acc = D.add(D.mul(acc, x), c)
        return acc

    # -- ring operations ---------------------------------------------------

    def _same_domain(self, other: "Poly") -> None:
        if self.domain != other.domain:
            raise ValueError(f"domain mismatch: {self.domain!r} vs {other.domain!r}")

    def __add__(self, other: "Poly") -> "Poly":
        self._same_domain(other)
        D = self.domain
        n = max(len(self.coeffs), len(other.coeffs))
        out = [D.add(self.coefficient(i), other.coefficient(i)) for i in range(n)]
        return Poly(out, D)

    def __neg__(self) -> "Poly":
        return Poly([self.domain.neg(c) for c in self.coeffs], self.domain)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._same_domain(other)
        D = self.domain
        if self.is_zero or other.is_zero:
            return Poly.zero(D)
        out = [D.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = D.add(out[i + j], D.mul(a, b))
        return Poly(out, D)

    def scale(self, c) -> "Poly":
        D = self.domain
        c = D.coerce(c)
        return Poly([D.mul(a, c) for a in self.coeffs], D)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = Poly.one(self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Exact division with remainder; the divisor's lc must be a unit."""
        self._same_domain(other)
        D = self.domain
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if not D.is_unit(other.lc):
            raise ZeroDivisionError(
                f"leading coefficient {D.format(other.lc)} is not invertible in {D!r}"
            )
        inv_lc = D.inv(other.lc)
        rem = list(self.coeffs)
        quot = [D.zero] * max(0, len(rem) - len(other.coeffs) + 1)
        while len(rem) >= len(other.coeffs):
            shift = len(rem) - len(other.coeffs)
            c = D.mul(rem[-1], inv_lc)
            quot[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = D.sub(rem[shift + i], D.mul(c, b))
            while rem and rem[-1] == D.zero:
                rem.pop()
        return Poly(quot, D), Poly(rem, D)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError("division is not exact")
        return q

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(self.domain.inv(self.lc))

    def derivative(self) -> "Poly":
        D = self.domain
        return Poly([D.mul(D.coerce(i), c) for i, c in enumerate(self.coeffs)][1:], D)

    # -- domain changes ------------------------------------------------------

    def reduce(self, p: int, k: int = 1) -> "Poly":
        """Coefficient-wise reduction into Zmod(p, k)."""
        target = Zmod(p, k)
        if self.domain == QQ:
            return Poly([reduce_mod(c, p, k) for c in self.coeffs], target)
        if isinstance(self.domain, Zmod) and self.domain.p == p and self.domain.k >= k:
            return Poly([c % target.modulus for c in self.coeffs], target)
        raise ValueError(f"cannot reduce from {self.domain!r} to {target!r}")

    # -- equality and display --------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.domain == other.domain and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, repr(self.domain)))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        D = self.domain
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coefficient(i)
            if c == D.zero:
                continue
            s = D.format(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            if i > 0:
                xs = "x" if i == 1 else f"x^{i}"
                body = xs if s == "1" else f"{s}*{xs}"
            else:
                body = s
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self}, {self.domain!r})"


def ext_gcd(f1: Poly, f2: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended gcd over a field: (d, e1, e2) with d = e1*f1 + e2*f2, d monic.

    gcd(0, 0) is the zero polynomial. Ring domains (Z/p^k, k > 1) are
    rejected: the operation has no general meaning there.
    """
    if f1.domain != f2.domain:
        raise ValueError("domain mismatch")
    D = f1.domain
    if not D.is_field:
        raise NotAFieldError(f"extended gcd needs field coefficients, got {D!r}")
    r0, r1 = f1, f2
    s0, s1 = Poly.one(D), Poly.zero(D)
    t0, t1 = Poly.zero(D), Poly.one(D)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    c = D.inv(r0.lc)
    return r0.scale(c), s0.scale(c), t0.scale(c)


def poly_gcd(f1: Poly, f2: Poly) -> Poly:
    return ext_gcd(f1, f2)[0]


def resultant(f: Poly, g: Poly):
    """Resultant over a field, as the Sylvester matrix determinant."""
    if f.domain != g.domain:
        raise ValueError("domain mismatch")
    D = f.domain
    if not D.is_field:
        raise NotAFieldError(f"resultant needs field coefficients, got {D!r}")
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return D.zero
    if m == 0 and n == 0:
        return D.one
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([D.zero] * i + fc + [D.zero] * (size - i - len(fc)))
    for i in range(m):
        rows.append([D.zero] * i + gc + [D.zero] * (size - i - len(gc)))
    # exact Gaussian elimination, tracking the sign of row swaps
    det = D.one
    for col in range(size):
        pivot = None
        for r in range(col, size):
            if rows[r][col] != D.zero:
                pivot = r
                break
        if pivot is None:
            return D.zero
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = D.neg(det)
        pv = rows[col][col]
        det = D.mul(det, pv)
        inv = D.inv(pv)
        for r in range(col + 1, size):
            factor = D.mul(rows[r][col], inv)
            if factor == D.zero:
                continue
            rows[r] = [D.sub(a, D.mul(factor, b)) for a, b in zip(rows[r], rows[col])]
    return det


def discriminant(f: Poly):
    """disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f) for deg f = n >= 2."""
    n = f.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    D = f.domain
    r = resultant(f, f.derivative())
    sign = D.coerce(-1 if (n * (n - 1) // 2) % 2 else 1)
    return D.mul(sign, D.mul(r, D.inv(f.lc)))


@dataclass(frozen=True)
class GcdCommuteReport:
    """Both routes from a pair over Q to a gcd over F_p, and whether they disagree."""

    gcd_over_q: Poly
    gcd_q_reduced: Poly
    gcd_of_reductions: Poly
    differ: bool

    def __str__(self) -> str:
        verdict = "differ" if self.differ else "agree"
        return (
            f"gcd over Q = {self.gcd_over_q} -> reduced: {self.gcd_q_reduced}; "
            f"gcd of reductions = {self.gcd_of_reductions}; routes {verdict}"
        )


def gcd_commute_check(f1: Poly, f2: Poly, p: int, k: int = 1) -> GcdCommuteReport:
    """Compare gcd-then-reduce against reduce-then-gcd for p-integral inputs.

    The first route computes gcd(f1, f2) over Q and reduces it mod p**k; the
    second reduces both inputs mod p and takes the gcd over F_p. The two can
    disagree as soon as p divides coefficients, which is exactly the failure
    that blocks divisor arithmetic over Z/p^k.
    """
    if f1.domain != QQ or f2.domain != QQ:
        raise ValueError("inputs must be polynomials over Q")
    for f in (f1, f2):
        for c in f.coeffs:
            if padic_valuation(c, p) < 0:
                raise NonIntegralError(f"coefficient {format_rational(c)} not integral at {p}")
    g_q = poly_gcd(f1, f2)
    g_q_red = g_q.reduce(p, k)
    g_fp = poly_gcd(f1.reduce(p, 1), f2.reduce(p, 1))
    differ = g_q.reduce(p, 1) != g_fp
    return GcdCommuteReport(g_q, g_q_red, g_fp, differ)
