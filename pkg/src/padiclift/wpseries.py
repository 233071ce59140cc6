"""Laurent coefficients of the curve uniformizer and the exponential map mod p**k.

For y^2 = x^3 + a*x + b the associated Laurent expansions are

    wp(z)  = 1/z^2 + sum_{l >= 2} c_l z^(2l-2),
    wp'(z) = -2/z^3 + sum_{l >= 2} (2l-2) c_l z^(2l-3),

with c_2 = -a/5, c_3 = -b/7 and
c_l = 3/((2l+1)(l-3)) * sum_{s=2}^{l-2} c_s c_{l-s} for l >= 4. All
coefficients are kept as exact rationals; evaluation at a p-divisible
integer z reduces a certified-integral partial sum modulo p**k, and the
exponential map sends z to the curve point [z^3 : z^3 wp(z) : z^3 wp'(z)/2]
(a point of the kernel of reduction, with unit Y coordinate).
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .arith import INFINITY, TruncatedPAdic, padic_valuation, reduce_mod, require_odd_prime
from .curve import PointModPk, ShortWeierstrass, _require_good_reduction
from .errors import CutoffError

# series_cutoff refuses to scan past this index.
CUTOFF_HORIZON_CAP = 4096


class WpCoefficients:
    """Exact coefficients c_2, c_3, ... for one curve; extends on demand.

    Extension appends deterministically recomputable values, so sharing an
    instance across threads is safe in the value sense: readers only ever
    observe prefixes of the same sequence.
    """

    __slots__ = ("a", "b", "_c")

    def __init__(self, a, b, upto: int = 3):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self._c = [-self.a / 5, -self.b / 7]
        self.extend(upto)

    def extend(self, upto: int) -> None:
        while len(self._c) < upto - 1:
            l = len(self._c) + 2
            s = sum((self._c[t - 2] * self._c[l - t - 2] for t in range(2, l - 1)), Fraction(0))
            self._c.append(Fraction(3, (2 * l + 1) * (l - 3)) * s)

    def coeff(self, l: int) -> Fraction:
        """c_l for l >= 2."""
        if l < 2:
            raise ValueError("coefficients start at c_2")
        self.extend(l)
        return self._c[l - 2]

    @property
    def c(self) -> tuple[Fraction, ...]:
        """The materialized coefficients c_2 .. c_L."""
        return tuple(self._c)


def wp_coeffs(a, b, upto: int) -> WpCoefficients:
    """Coefficients c_2 .. c_upto from the recurrence, exactly."""
    if upto < 3:
        raise ValueError("need upto >= 3")
    return WpCoefficients(a, b, upto)


def _pow_ceil_log(p: int, n: int) -> int:
    """Least t >= 0 with p**t >= n."""
    t, pw = 0, 1
    while pw < n:
        pw *= p
        t += 1
    return t


def series_cutoff(p: int, k: int, m: int, coeffs: WpCoefficients) -> int:
    """Least L such that all terms with l > L vanish modulo p**k.

    Certifies, for every l > L, that nu_p(c_l) + (2l-2)m >= k and the
    wp'-analogue nu_p((2l-2) c_l) + (2l-3)m >= k. Indices up to a horizon
    are checked against exact coefficient valuations; the horizon is placed
    where the factorial-type denominator bound
    nu_p(c_l) >= -2l/(p-1) - 2*log_p(2l+1) - 4 keeps every later term above
    p**k. That deficit grows logarithmically while the term valuation grows
    linearly (slope 2m - 2/(p-1) >= 1), so once the inequality holds at the
    horizon it holds beyond it.
    """
    require_odd_prime(p)
    if m < 1:
        raise ValueError("need nu_p(z) >= 1")
    if k < 1:
        raise ValueError("k must be positive")

    def tail_certified(l: int) -> bool:
        # ceil(log) over-approximates log, and the constant absorbs the
        # ceil/log gap for every later index, keeping the bound monotone.
        slack = Fraction(2 * l, p - 1) + 2 * _pow_ceil_log(p, 2 * l + 1) + 4
        return Fraction((2 * l - 3) * m) - slack >= k

    horizon = 4
    while not tail_certified(horizon):
        horizon += 1
        if horizon > CUTOFF_HORIZON_CAP:
            raise CutoffError(
                f"cutoff not certified within l <= {CUTOFF_HORIZON_CAP} for p={p}, k={k}, m={m}"
            )
    coeffs.extend(horizon)
    cutoff = 3
    for l in range(4, horizon + 1):
        v = padic_valuation(coeffs.coeff(l), p)
        if v is INFINITY:
            continue
        ok_wp = v + (2 * l - 2) * m >= k
        ok_wp_prime = v + padic_valuation(2 * l - 2, p) + (2 * l - 3) * m >= k
        if not (ok_wp and ok_wp_prime):
            cutoff = l
    return cutoff


def _partial_sums(z: int, coeffs: WpCoefficients, L: int) -> tuple[Fraction, Fraction]:
    """Exact rational partial sums of wp and wp' at z, through index L."""
    zq = Fraction(z)
    z2 = zq * zq
    wp = 1 / z2
    wpp = -2 / (z2 * zq)
    power = z2  # z^(2l-2) at l = 2
    for l in range(2, L + 1):
        cl = coeffs.coeff(l)
        wp += cl * power
        wpp += (2 * l - 2) * cl * power / zq
        power *= z2
    return wp, wpp


def _eval_prep(z: int, coeffs: WpCoefficients, p: int, k: int) -> tuple[int, int]:
    require_odd_prime(p)
    if z == 0 or z % p != 0:
        raise ValueError("z must be a nonzero multiple of p")
    m = padic_valuation(z, p)
    return m, series_cutoff(p, k, m, coeffs)


def wp_eval(z: int, coeffs: WpCoefficients, p: int, k: int) -> TruncatedPAdic:
    """wp(z) modulo p**k as a Laurent value of valuation -2*nu_p(z)."""
    m, L = _eval_prep(z, coeffs, p, k)
    wp, _ = _partial_sums(z, coeffs, L)
    return TruncatedPAdic.from_rational(wp, p, k)


def wp_prime_eval(z: int, coeffs: WpCoefficients, p: int, k: int) -> TruncatedPAdic:
    """wp'(z) modulo p**k as a Laurent value of valuation -3*nu_p(z)."""
    m, L = _eval_prep(z, coeffs, p, k)
    _, wpp = _partial_sums(z, coeffs, L)
    return TruncatedPAdic.from_rational(wpp, p, k)


@functools.lru_cache(maxsize=64)
def _coeffs_for(a: Fraction, b: Fraction) -> WpCoefficients:
    return WpCoefficients(a, b)


def exp_map(z: int, curve: ShortWeierstrass, p: int, k: int) -> PointModPk:
    """The point [z^3 : z^3 wp(z) : z^3 wp'(z)/2] modulo p**k; exp_map(0) is the identity.

    The z^3 scaling clears the pole, leaving a triple [p*h1 : p*h2 : h3]
    with h3 a unit. Representatives of the same class modulo p**k map to
    the same point.
    """
    require_odd_prime(p)
    _require_good_reduction(curve, p)
    if z % p != 0:
        raise ValueError(f"z = {z} is not a multiple of p = {p}")
    z %= p**k
    if z == 0:
        return PointModPk.infinity(p, k)
    coeffs = _coeffs_for(curve.a, curve.b)
    m, L = _eval_prep(z, coeffs, p, k)
    wp, wpp = _partial_sums(z, coeffs, L)
    z3 = Fraction(z) ** 3
    return PointModPk(
        reduce_mod(z3, p, k),
        reduce_mod(z3 * wp, p, k),
        reduce_mod(z3 * wpp / 2, p, k),
        p,
        k,
    )
