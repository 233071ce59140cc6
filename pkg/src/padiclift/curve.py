"""Elliptic curves over Q: exact group law, reductions, and small-field oracles.

Curves live in short Weierstrass form y^2 = x^3 + a*x + b with exact
rational coefficients; the generalized form is supported through an exact
transform. Rational points are stored as primitive integer triples
[Z : X : Y] with a fixed sign convention, so reduction modulo p**k is
deterministic. The group law is only ever computed over Q (or over F_p for
the small-field oracles); points over Z/p^k are obtained by reducing
Q-side results, never by ring-side addition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .arith import (
    format_rational,
    padic_valuation,
    parse_rational,
    reduce_mod,
    require_odd_prime,
    sqrt_all_mod,
)
from .errors import HypothesisError, ScaleError

# Enumeration ceilings for the brute-force oracles.
FP_ENUM_CEILING = 10**4
ENUM_CEILING = 10**5


@dataclass(frozen=True)
class ShortWeierstrass:
    """y^2 = x^3 + a*x + b over Q; must be smooth."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.discriminant == 0:
            raise ValueError("singular curve: 4a^3 + 27b^2 = 0")

    @property
    def discriminant(self) -> Fraction:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def rhs(self, x: Fraction) -> Fraction:
        return x**3 + self.a * x + self.b

    def __str__(self) -> str:
        return f"y^2 = x^3 + ({format_rational(self.a)})*x + ({format_rational(self.b)})"


@dataclass(frozen=True)
class GeneralWeierstrass:
    """y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6 over Q."""

    a1: Fraction
    a3: Fraction
    a2: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in ("a1", "a3", "a2", "a4", "a6"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))


@dataclass(frozen=True)
class PointTransform:
    """The affine change of variables carrying Eq-(general) points to the short form."""

    a1: Fraction
    a3: Fraction
    x_shift: Fraction

    def apply(self, point: tuple[Fraction, Fraction] | None):
        if point is None:
            return None
        x, y = Fraction(point[0]), Fraction(point[1])
        return (x + self.x_shift, y + (self.a1 * x + self.a3) / 2)

    def invert(self, point: tuple[Fraction, Fraction] | None):
        if point is None:
            return None
        xs, ys = Fraction(point[0]), Fraction(point[1])
        x = xs - self.x_shift
        return (x, ys - (self.a1 * x + self.a3) / 2)


def to_short(curve: GeneralWeierstrass) -> tuple[ShortWeierstrass, PointTransform]:
    """Complete the square in y, then depress the cubic in x.

    Returns the short-form curve together with the point map; applying the
    map to a point of the general curve lands on the short one.
    """
    A = curve.a2 + curve.a1**2 / 4
    B = curve.a4 + curve.a1 * curve.a3 / 2
    C = curve.a6 + curve.a3**2 / 4
    a = B - A**2 / 3
    b = C - A * B / 3 + 2 * A**3 / 27
    if 4 * a**3 + 27 * b**2 == 0:
        raise ValueError("singular curve")
    return ShortWeierstrass(a, b), PointTransform(curve.a1, curve.a3, A / 3)


class ProjPointQ:
    """Primitive integer triple [Z : X : Y]; the identity is [0 : 0 : 1].

    The affine point (x, y) = (X/Z, Y/Z). The stored triple has
    gcd(Z, X, Y) = 1 and the last nonzero coordinate of (Y, X, Z) positive,
    so every rational point has exactly one representation.
    """

    __slots__ = ("Z", "X", "Y")

    def __init__(self, Z: int, X: int, Y: int):
        if Z == 0 and X == 0 and Y == 0:
            raise ValueError("[0:0:0] is not a projective point")
        g = gcd(gcd(abs(Z), abs(X)), abs(Y))
        Z, X, Y = Z // g, X // g, Y // g
        last = Z if Z != 0 else (X if X != 0 else Y)
        if last < 0:
            Z, X, Y = -Z, -X, -Y
        object.__setattr__(self, "Z", Z)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    def __setattr__(self, *args):
        raise AttributeError("ProjPointQ is immutable")

    @classmethod
    def infinity(cls) -> "ProjPointQ":
        return cls(0, 0, 1)

    @classmethod
    def from_affine(cls, x, y) -> "ProjPointQ":
        x, y = Fraction(x), Fraction(y)
        d = lcm(x.denominator, y.denominator)
        return cls(d, x.numerator * (d // x.denominator), y.numerator * (d // y.denominator))

    @property
    def is_infinity(self) -> bool:
        return self.Z == 0

    def affine(self) -> tuple[Fraction, Fraction] | None:
        if self.is_infinity:
            return None
        return Fraction(self.X, self.Z), Fraction(self.Y, self.Z)

    def on_curve(self, curve: ShortWeierstrass) -> bool:
        Z, X, Y = Fraction(self.Z), Fraction(self.X), Fraction(self.Y)
        return Y * Y * Z == X**3 + curve.a * X * Z**2 + curve.b * Z**3

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPointQ):
            return NotImplemented
        return (self.Z, self.X, self.Y) == (other.Z, other.X, other.Y)

    def __hash__(self):
        return hash((self.Z, self.X, self.Y))

    def __repr__(self) -> str:
        return f"[{self.Z}:{self.X}:{self.Y}]"


def ec_neg(P: ProjPointQ) -> ProjPointQ:
    if P.is_infinity:
        return P
    return ProjPointQ(P.Z, P.X, -P.Y)


def _add_affine(p1, p2, curve: ShortWeierstrass):
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    x1, y1 = p1
    x2, y2 = p2
    if x1 == x2:
        if y1 == -y2:
            return None
        s = (3 * x1 * x1 + curve.a) / (2 * y1)
    else:
        s = (y2 - y1) / (x2 - x1)
    x3 = s * s - x1 - x2
    return (x3, s * (x1 - x3) - y1)


def ec_add(P: ProjPointQ, Q: ProjPointQ, curve: ShortWeierstrass) -> ProjPointQ:
    """Chord-and-tangent addition over Q, exact."""
    for pt in (P, Q):
        if not pt.on_curve(curve):
            raise ValueError(f"point {pt!r} is not on {curve}")
    r = _add_affine(P.affine(), Q.affine(), curve)
    return ProjPointQ.infinity() if r is None else ProjPointQ.from_affine(*r)


def ec_scalar_mul(n: int, P: ProjPointQ, curve: ShortWeierstrass) -> ProjPointQ:
    """n*P by double-and-add; n may be zero or negative."""
    if not P.on_curve(curve):
        raise ValueError(f"point {P!r} is not on {curve}")
    if n < 0:
        n, P = -n, ec_neg(P)
    acc = None
    base = P.affine()
    while n:
        if n & 1:
            acc = _add_affine(acc, base, curve)
        n >>= 1
        if n:
            base = _add_affine(base, base, curve)
    return ProjPointQ.infinity() if acc is None else ProjPointQ.from_affine(*acc)


class PointModPk:
    """Raw triple [Z : X : Y] of residues mod p**k with at least one unit.

    Equality is projective: two triples are equal when they agree after
    canonical unit scaling (Z scaled to 1 when Z is a unit, otherwise Y).
    """

    __slots__ = ("Z", "X", "Y", "p", "k")

    def __init__(self, Z: int, X: int, Y: int, p: int, k: int):
        require_odd_prime(p)
        if k < 1:
            raise ValueError("k must be positive")
        m = p**k
        Z, X, Y = Z % m, X % m, Y % m
        if Z % p == 0 and X % p == 0 and Y % p == 0:
            raise ValueError("no coordinate is a unit: triple is not primitive")
        for name, val in (("Z", Z), ("X", X), ("Y", Y), ("p", p), ("k", k)):
            object.__setattr__(self, name, val)

    def __setattr__(self, *args):
        raise AttributeError("PointModPk is immutable")

    @classmethod
    def infinity(cls, p: int, k: int) -> "PointModPk":
        return cls(0, 0, 1, p, k)

    def canonical_triple(self) -> tuple[int, int, int]:
        m = self.p**self.k
        if self.Z % self.p != 0:
            s = pow(self.Z, -1, m)
        elif self.Y % self.p != 0:
            s = pow(self.Y, -1, m)
        else:
            s = pow(self.X, -1, m)
        return (self.Z * s % m, self.X * s % m, self.Y * s % m)

    def canonical(self) -> "PointModPk":
        return PointModPk(*self.canonical_triple(), self.p, self.k)

    @property
    def is_infinity(self) -> bool:
        return self.canonical_triple() == (0, 0, 1)

    def reduce_to(self, j: int) -> "PointModPk":
        """Drop digits: the same point modulo p**j for j <= k."""
        if not 1 <= j <= self.k:
            raise ValueError(f"cannot reduce precision {self.k} to {j}")
        return PointModPk(self.Z, self.X, self.Y, self.p, j)

    def satisfies_curve(self, curve: ShortWeierstrass) -> bool:
        m = self.p**self.k
        a = reduce_mod(curve.a, self.p, self.k)
        b = reduce_mod(curve.b, self.p, self.k)
        Z, X, Y = self.Z, self.X, self.Y
        return (Y * Y * Z - (X**3 + a * X * Z * Z + b * Z**3)) % m == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointModPk):
            return NotImplemented
        if (self.p, self.k) != (other.p, other.k):
            return False
        return self.canonical_triple() == other.canonical_triple()

    def __hash__(self):
        return hash((self.p, self.k, self.canonical_triple()))

    def __repr__(self) -> str:
        return f"[{self.Z}:{self.X}:{self.Y}] mod {self.p}^{self.k}"


def qmod_k(P: ProjPointQ, p: int, k: int) -> PointModPk:
    """Coordinate-wise reduction of the primitive triple modulo p**k."""
    require_odd_prime(p)
    m = p**k
    return PointModPk(P.Z % m, P.X % m, P.Y % m, p, k)


def good_reduction(curve: ShortWeierstrass, p: int) -> bool:
    """True iff a, b are p-integral and p does not divide 4a^3 + 27b^2."""
    require_odd_prime(p)
    if padic_valuation(curve.a, p) < 0 or padic_valuation(curve.b, p) < 0:
        return False
    return padic_valuation(4 * curve.a**3 + 27 * curve.b**2, p) == 0


def _require_good_reduction(curve: ShortWeierstrass, p: int) -> None:
    if not good_reduction(curve, p):
        raise HypothesisError(f"{curve} does not have good reduction at {p}")


# -- F_p level oracles ------------------------------------------------------


def _fp_add(p1, p2, a: int, p: int):
    # affine points mod p as (x, y) pairs, None for the identity
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    x1, y1 = p1
    x2, y2 = p2
    if x1 == x2 and (y1 + y2) % p == 0:
        return None
    if p1 == p2:
        s = (3 * x1 * x1 + a) * pow(2 * y1, -1, p) % p
    else:
        s = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (s * s - x1 - x2) % p
    return (x3, (s * (x1 - x3) - y1) % p)


def _fp_affine(point: PointModPk) -> tuple[int, int] | None:
    if point.k != 1:
        raise ValueError("expected a point modulo p")
    Z, X, Y = point.canonical_triple()
    if Z == 0:
        return None
    return (X, Y)


def fp_group_order(curve: ShortWeierstrass, p: int, *, ceiling: int = FP_ENUM_CEILING) -> int:
    """|E(F_p)| by an x-sweep with quadratic-residue counting, plus identity."""
    _require_good_reduction(curve, p)
    if p > ceiling:
        raise ScaleError(f"p = {p} exceeds the enumeration ceiling {ceiling}")
    a = reduce_mod(curve.a, p, 1)
    b = reduce_mod(curve.b, p, 1)
    count = 1
    for x in range(p):
        t = (x * x * x + a * x + b) % p
        if t == 0:
            count += 1
        elif pow(t, (p - 1) // 2, p) == 1:
            count += 2
    return count


def fp_point_order(point: PointModPk, curve: ShortWeierstrass, p: int) -> int:
    """Order of a point of E(F_p) by iterated addition."""
    _require_good_reduction(curve, p)
    if point.p != p:
        raise ValueError("point/prime mismatch")
    a = reduce_mod(curve.a, p, 1)
    pt = _fp_affine(point)
    if pt is None:
        return 1
    acc = pt
    order = 1
    while acc is not None:
        acc = _fp_add(acc, pt, a, p)
        order += 1
    return order


def is_anomalous(curve: ShortWeierstrass, p: int) -> bool:
    """True iff |E(F_p)| = p (trace of Frobenius equal to one)."""
    return fp_group_order(curve, p) == p


def enumerate_points_mod_pk(
    curve: ShortWeierstrass, p: int, k: int, *, ceiling: int = ENUM_CEILING
) -> list[PointModPk]:
    """All projective solutions of the curve congruence mod p**k, up to unit scaling.

    Classes with Z a unit are listed as [1 : x : y]; the remaining classes
    (which force p | Z and p | X on a smooth curve) are listed as [Z : X : 1].
    """
    _require_good_reduction(curve, p)
    m = p**k
    if m > ceiling:
        raise ScaleError(f"p^k = {m} exceeds the enumeration ceiling {ceiling}")
    a = reduce_mod(curve.a, p, k)
    b = reduce_mod(curve.b, p, k)
    points = []
    for x in range(m):
        rhs = (x * x * x + a * x + b) % m
        for y in sorted(sqrt_all_mod(rhs, p, k)):
            points.append(PointModPk(1, x, y, p, k))
    step = p ** (k - 1)
    for i in range(step):
        Z = p * i
        for j in range(step):
            X = p * j
            if (Z - (X**3 + a * X * Z * Z + b * Z**3)) % m == 0:
                points.append(PointModPk(Z, X, 1, p, k))
    return points


# -- (de)serialization -------------------------------------------------------


def curve_to_dict(curve: ShortWeierstrass) -> dict:
    return {"a": format_rational(curve.a), "b": format_rational(curve.b)}


def curve_from_dict(data: dict) -> ShortWeierstrass:
    return ShortWeierstrass(parse_rational(str(data["a"])), parse_rational(str(data["b"])))


def point_to_obj(P: ProjPointQ):
    if P.is_infinity:
        return "infinity"
    x, y = P.affine()
    return {"x": format_rational(x), "y": format_rational(y)}


def point_from_obj(data) -> ProjPointQ:
    if data == "infinity":
        return ProjPointQ.infinity()
    return ProjPointQ.from_affine(parse_rational(str(data["x"])), parse_rational(str(data["y"])))


def load_curve(path: str) -> ShortWeierstrass:
    with open(path, encoding="utf-8") as fh:
        return curve_from_dict(json.load(fh))


def load_point(path: str) -> ProjPointQ:
    with open(path, encoding="utf-8") as fh:
        return point_from_obj(json.load(fh))
