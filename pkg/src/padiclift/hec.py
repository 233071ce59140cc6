"""Imaginary hyperelliptic curves, Mumford divisors, and Cantor addition.

Divisor classes on y^2 + h(x)y = f(x) (deg f = 2g + 1, one point at
infinity) are stored as Mumford pairs (u, v) with u monic. Addition is the
composition-and-reduction algorithm built on the extended gcd, so it needs
field coefficients: over Z/p^k with k > 1 there is no gcd and the
operations refuse to run. Coefficient-wise reduction of a Q-side divisor
into Z/p^k is provided as a raw, validity-free map: taking gcds and
reducing do not commute, and the mismatch between reduce-then-multiply and
multiply-then-reduce is exactly what noncommutativity_witness searches for.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import INFINITY, padic_valuation, require_odd_prime
from .errors import HypothesisError, NotAFieldError
from .poly import QQ, Poly, Zmod, discriminant, ext_gcd

WITNESS_DEFAULT_HMAX = 64


@dataclass(frozen=True)
class HyperellipticCurve:
    """y^2 + h(x)*y = f(x) with f monic of odd degree 2g + 1."""

    f: Poly
    h: Poly

    def __post_init__(self):
        if self.f.domain != self.h.domain:
            raise ValueError("f and h must share a coefficient domain")
        if self.f.degree < 3 or self.f.degree % 2 == 0:
            raise ValueError("f must have odd degree 2g + 1 >= 3")
        if not self.f.is_monic:
            raise ValueError("f must be monic")
        if self.h.degree > self.f.degree // 2:
            raise ValueError("deg h must be at most floor(deg f / 2)")
        if self.f.domain.is_field:
            g = self.f + (self.h * self.h).scale(Fraction(1, 4))
            if discriminant(g) == self.f.domain.zero:
                raise ValueError("singular curve: discriminant vanishes")

    @property
    def genus(self) -> int:
        return (self.f.degree - 1) // 2

    @property
    def domain(self):
        return self.f.domain

    def __str__(self) -> str:
        if self.h.is_zero:
            return f"y^2 = {self.f}"
        return f"y^2 + ({self.h})*y = {self.f}"


def complete_square(curve: HyperellipticCurve) -> HyperellipticCurve:
    """Absorb the cross term: y^2 + h*y = f becomes y^2 = f + h^2/4."""
    if curve.h.is_zero:
        return curve
    D = curve.domain
    quarter = D.inv(D.coerce(4))
    return HyperellipticCurve(curve.f + (curve.h * curve.h).scale(quarter), Poly.zero(D))


def reduce_curve(curve: HyperellipticCurve, p: int, k: int = 1) -> HyperellipticCurve:
    return HyperellipticCurve(curve.f.reduce(p, k), curve.h.reduce(p, k))


@dataclass(frozen=True)
class MumfordDivisor:
    """A (u, v) pair; validity is checked by mumford_valid, never assumed."""

    u: Poly
    v: Poly

    def __post_init__(self):
        if self.u.domain != self.v.domain:
            raise ValueError("u and v must share a coefficient domain")

    @classmethod
    def neutral(cls, domain=QQ) -> "MumfordDivisor":
        return cls(Poly.one(domain), Poly.zero(domain))

    @property
    def is_neutral(self) -> bool:
        return self.u.degree == 0 and self.v.is_zero

    def __str__(self) -> str:
        return f"({self.u}, {self.v})"


@dataclass(frozen=True)
class MumfordValidity:
    """Per-condition report for the three Mumford requirements."""

    gcd_ok: bool
    degree_ok: bool
    divides_ok: bool

    @property
    def is_valid(self) -> bool:
        return self.gcd_ok and self.degree_ok and self.divides_ok

    def __str__(self) -> str:
        def mark(b):
            return "ok" if b else "VIOLATED"

        return (
            f"gcd(u, u', v) = 1: {mark(self.gcd_ok)}; "
            f"deg v < deg u <= g: {mark(self.degree_ok)}; "
            f"u | v^2 + v*h - f: {mark(self.divides_ok)}"
        )


def mumford_valid(D: MumfordDivisor, curve: HyperellipticCurve) -> MumfordValidity:
    """Check the three Mumford conditions over a field, each reported separately.

    The divisibility condition u | v^2 + v*h - f is, over a splitting field,
    equivalent to the vanishing of the first n_i derivatives at each support
    point of multiplicity n_i, so repeated support is covered without
    factoring u.
    """
    dom = D.u.domain
    if dom != curve.domain:
        raise ValueError("divisor and curve domains differ")
    if not dom.is_field:
        raise NotAFieldError("validity is checked over a field (Q or F_p)")
    if D.u.is_zero or not D.u.is_monic:
        return MumfordValidity(False, False, False)
    g = ext_gcd(ext_gcd(D.u, D.u.derivative())[0], D.v)[0]
    gcd_ok = g.degree == 0
    degree_ok = D.v.degree < D.u.degree <= curve.genus
    divides_ok = (D.v * D.v + D.v * curve.h - curve.f) % D.u == Poly.zero(dom)
    return MumfordValidity(gcd_ok, degree_ok, divides_ok)


def _require_field_inputs(curve: HyperellipticCurve, *divisors: MumfordDivisor) -> None:
    if not curve.domain.is_field:
        raise NotAFieldError(
            "divisor addition needs field coefficients; "
            f"{curve.domain!r} has non-invertible elements"
        )
    for D in divisors:
        report = mumford_valid(D, curve)
        if not report.is_valid:
            raise ValueError(f"invalid divisor {D}: {report}")


def cantor_add(
    D1: MumfordDivisor, D2: MumfordDivisor, curve: HyperellipticCurve
) -> MumfordDivisor:
    """Composition then reduction: the divisor class sum in Mumford form."""
    _require_field_inputs(curve, D1, D2)
    dom = curve.domain
    f, h, g = curve.f, curve.h, curve.genus
    d1, e1, e2 = ext_gcd(D1.u, D2.u)
    d, c1, c2 = ext_gcd(d1, D1.v + D2.v + h)
    s1, s2, s3 = c1 * e1, c1 * e2, c2
    u = (D1.u * D2.u).exact_div(d * d)
    v = (s1 * D1.u * D2.v + s2 * D2.u * D1.v + s3 * (D1.v * D2.v + f)).exact_div(d) % u
    while u.degree > g:
        u_next = (f - v * h - v * v).exact_div(u)
        v = (-h - v) % u_next
        u = u_next
    return MumfordDivisor(u.monic(), v)


def opposite(D: MumfordDivisor, curve: HyperellipticCurve) -> MumfordDivisor:
    """The class inverse: v goes to (-h - v) mod u."""
    _require_field_inputs(curve, D)
    return MumfordDivisor(D.u, (-curve.h - D.v) % D.u)


def cantor_scalar_mul(
    n: int, D: MumfordDivisor, curve: HyperellipticCurve
) -> MumfordDivisor:
    """n*D by double-and-add; negative n through the opposite."""
    _require_field_inputs(curve, D)
    if n < 0:
        n, D = -n, opposite(D, curve)
    acc = MumfordDivisor.neutral(curve.domain)
    base = D
    while n:
        if n & 1:
            acc = cantor_add(acc, base, curve)
        n >>= 1
        if n:
            base = cantor_add(base, base, curve)
    return acc


def _reduce_poly_scaled(f: Poly, p: int, k: int, *, monicize: bool) -> Poly:
    """Coefficient reduction after primitive p-power scaling.

    Coefficients with p in denominators are admitted by scaling the whole
    polynomial by the least p-power that makes every coefficient p-integral
    (the analogue of reducing a projective point through its primitive
    triple); the scaled leading coefficient may vanish mod p, dropping the
    degree. A monic result is restored when the surviving leading
    coefficient is a unit.
    """
    if f.is_zero:
        return Poly.zero(Zmod(p, k))
    worst = min(padic_valuation(c, p) for c in f.coeffs)
    scale = Fraction(p) ** max(0, -worst) if worst is not INFINITY else Fraction(1)
    reduced = f.scale(scale).reduce(p, k)
    if monicize and not reduced.is_zero and reduced.domain.is_unit(reduced.lc):
        return reduced.monic()
    return reduced


def divisor_reduce_mod(D: MumfordDivisor, p: int, k: int) -> MumfordDivisor:
    """Raw coefficient-wise reduction of (u, v) modulo p**k.

    The output is a formal pair, not a guaranteed divisor class: callers
    must run mumford_valid. u is re-monicized when possible; v is reduced
    as-is.
    """
    require_odd_prime(p)
    if D.u.domain != QQ:
        raise ValueError("divisor_reduce_mod starts from a divisor over Q")
    return MumfordDivisor(
        _reduce_poly_scaled(D.u, p, k, monicize=True),
        _reduce_poly_scaled(D.v, p, k, monicize=False),
    )


def hec_good_reduction(curve: HyperellipticCurve, p: int) -> bool:
    """True iff the h = 0 model has p-integral coefficients and unit discriminant."""
    require_odd_prime(p)
    if not curve.h.is_zero:
        raise ValueError("apply complete_square first: good reduction is read off y^2 = f(x)")
    if curve.domain != QQ:
        raise ValueError("good reduction is a question about a curve over Q")
    for c in curve.f.coeffs:
        if padic_valuation(c, p) < 0:
            return False
    return padic_valuation(discriminant(curve.f), p) == 0


@dataclass(frozen=True)
class WitnessEvidence:
    """Both sides of the diagram at the first mismatch (or the scanned range)."""

    h: int | None
    reduced_after: MumfordDivisor | None
    multiplied_after: MumfordDivisor | None
    h_max: int

    def __str__(self) -> str:
        if self.h is None:
            return f"no mismatch for any h <= {self.h_max}"
        return (
            f"mismatch at h = {self.h}: reduce(h*D over Q) = {self.reduced_after} "
            f"but h*(reduce D) = {self.multiplied_after}"
        )


def noncommutativity_witness(
    curve: HyperellipticCurve,
    D: MumfordDivisor,
    p: int,
    h_max: int = WITNESS_DEFAULT_HMAX,
) -> tuple[int | None, WitnessEvidence]:
    """Smallest h <= h_max where reducing and multiplying stop commuting (mod p).

    Compares the coefficient reduction of h*D (computed over Q) against the
    h-fold Cantor sum of the reduced divisor over F_p, as raw pairs.
    """
    require_odd_prime(p)
    if not hec_good_reduction(complete_square(curve), p):
        raise HypothesisError(f"curve does not have good reduction at {p}")
    curve_p = reduce_curve(curve, p, 1)
    D_p = divisor_reduce_mod(D, p, 1)
    accum_q = MumfordDivisor.neutral(QQ)
    accum_p = MumfordDivisor.neutral(Zmod(p, 1))
    for h in range(1, h_max + 1):
        accum_q = cantor_add(accum_q, D, curve)
        accum_p = cantor_add(accum_p, D_p, curve_p)
        lhs = divisor_reduce_mod(accum_q, p, 1)
        if (lhs.u, lhs.v) != (accum_p.u, accum_p.v):
            return h, WitnessEvidence(h, lhs, accum_p, h_max)
    return None, WitnessEvidence(None, None, None, h_max)
