"""Inverting the exponential map on the kernel of reduction modulo p**k.

Three layers, from crude to exact:

* ``naive_inv``: the coordinate ratio -X/Y, which matches the true z only
  up to terms of order z^5 (its series is z + (2/5)(-a) z^5 + ...).
* ``log_initial``: the closed form z = (X/Y) * (-1 - (a/5)(Z/X)^2), exact
  modulo p**5 when the arithmetic and the dropped series terms allow it
  (for p = 5 with a unit the dropped c_2 z^5 term already costs a digit).
* ``log_lift``: digit-by-digit search above the certified prefix, keeping
  every candidate whose exponential matches the target at the working
  precision and disambiguating by exact reproduction of the input point.

log_map composes the three and only returns values it has verified by
running the exponential map forward.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import INFINITY, TruncatedPAdic, padic_valuation
from .curve import PointModPk, ShortWeierstrass
from .errors import HypothesisError
from .wpseries import exp_map


@dataclass(frozen=True)
class LogResult:
    """A recovered z with the precision actually certified for it."""

    z: int
    certified_precision: int
    verified: bool


def _require_image_point(P: PointModPk) -> None:
    if not P.reduce_to(1).is_infinity:
        raise HypothesisError(
            "point does not reduce to the identity mod p, so it is not in the image"
        )


def naive_inv(P: PointModPk) -> int:
    """-X/Y on the canonical triple: the inverse up to terms of order z^5."""
    m = P.p**P.k
    if P.Y % P.p == 0:
        raise ValueError("Y coordinate is not a unit")
    Z, X, Y = P.canonical_triple()
    return -X * pow(Y, -1, m) % m


def _closed_form_precision(curve: ShortWeierstrass, p: int, k: int) -> int:
    # the first dropped term is c_2 z^5 with c_2 = -a/5: for nu_p(c_2) < 0
    # (p = 5 with a unit) a digit is lost
    c2 = -Fraction(curve.a) / 5
    v = padic_valuation(c2, p)
    penalty = 0 if v is INFINITY else min(0, v)
    return min(k, 5 + penalty)


def _initial_with_precision(P: PointModPk, curve: ShortWeierstrass) -> tuple[int, int]:
    """Closed-form z and the precision to which it is certified."""
    p, k = P.p, P.k
    m = p**k
    Z, X, Y = P.canonical_triple()
    if Z == 0:
        # Z vanished at working precision: 3*nu_p(z) >= k, so every dropped
        # term is below p**k and -X/Y is exact at full precision
        return -X * pow(Y, -1, m) % m, k
    if k <= 4:
        return -X * pow(Y, -1, m) % m, k
    tZ = TruncatedPAdic.from_residue(Z, p, k)
    tX = TruncatedPAdic.from_residue(X, p, k)
    tY = TruncatedPAdic.from_residue(Y, p, k)
    ratio = tZ / tX
    bracket = TruncatedPAdic.from_rational(-1, p, k) - (
        TruncatedPAdic.from_rational(Fraction(curve.a) / 5, p, k) * ratio * ratio
    )
    t = (tX / tY) * bracket
    prec = min(_closed_form_precision(curve, p, k), t.abs_precision)
    return t.residue(prec), prec


def log_initial(P: PointModPk, curve: ShortWeierstrass) -> int:
    """z modulo p**min(k, 5) from the closed form; P must be a non-identity image point."""
    _require_image_point(P)
    if P.is_infinity:
        raise ValueError("the identity has log 0; log_initial needs a finite point")
    z, prec = _initial_with_precision(P, curve)
    return z % P.p ** min(P.k, 5)


def _lift(P: PointModPk, z: int, start: int, curve: ShortWeierstrass) -> LogResult:
    p, k = P.p, P.k
    candidates = [z % p**start]
    for i in range(start, k):
        target = P.reduce_to(i + 1)
        nxt = [
            c
            for base in candidates
            for c in (base + d * p**i for d in range(p))
            if exp_map(c, curve, p, i + 1) == target
        ]
        if not nxt:
            raise HypothesisError(
                "not in image or precision bug: no candidate survives at "
                f"precision {i + 1}; last survivors mod {p}^{i}: {sorted(candidates)}"
            )
        candidates = nxt
    final = [c for c in candidates if exp_map(c, curve, p, k) == P]
    if not final:
        raise HypothesisError(
            f"not in image or precision bug: candidates {sorted(candidates)} "
            f"do not reproduce the point at precision {k}"
        )
    return LogResult(z=final[0], certified_precision=k, verified=True)


def log_lift(P: PointModPk, z5: int, curve: ShortWeierstrass) -> LogResult:
    """Extend a correct mod-p**5 prefix to p**k by digit search with exact verification."""
    _require_image_point(P)
    start = min(P.k, _closed_form_precision(curve, P.p, P.k))
    return _lift(P, z5, start, curve)


def log_map(P: PointModPk, curve: ShortWeierstrass) -> LogResult:
    """The inverse of exp_map on its image, verified by reproducing P."""
    _require_image_point(P)
    p, k = P.p, P.k
    if P.is_infinity:
        return LogResult(z=0, certified_precision=k, verified=True)
    z, prec = _initial_with_precision(P, curve)
    if prec >= k:
        if exp_map(z, curve, p, k) == P:
            return LogResult(z=z, certified_precision=k, verified=True)
        # the shortcut could not be verified; only the mod-p^2 prefix of the
        # closed form is unconditionally certified, so lift from there
        prec = min(k, 2)
    return _lift(P, z, prec, curve)
