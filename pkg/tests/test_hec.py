import random
from fractions import Fraction

import pytest

from padiclift.errors import HypothesisError, NotAFieldError
from padiclift.hec import (
    HyperellipticCurve,
    MumfordDivisor,
    cantor_add,
    cantor_scalar_mul,
    complete_square,
    divisor_reduce_mod,
    hec_good_reduction,
    mumford_valid,
    noncommutativity_witness,
    opposite,
    reduce_curve,
)
from padiclift.poly import QQ, Poly, Zmod, discriminant

F_STR = "x^5 + 2*x^4 - 13*x^3 - 14*x^2 + 24*x"  # x(x-1)(x+2)(x-3)(x+4)
CURVE_Q = HyperellipticCurve(Poly.parse(F_STR), Poly.zero(QQ))
D_Q = MumfordDivisor(Poly.parse("x - 4"), Poly.parse("24"))
F11 = Zmod(11)
CURVE_11 = reduce_curve(CURVE_Q, 11)
D_11 = divisor_reduce_mod(D_Q, 11, 1)


def fp_curve_points(curve, p):
    """All affine points of y^2 = f(x) over F_p."""
    pts = []
    for x in range(p):
        rhs = curve.f(x)
        for y in range(p):
            if y * y % p == rhs:
                pts.append((x, y))
    return pts


def random_valid_divisor(rng, curve, p):
    """A random reduced divisor: a multiple of a random point divisor."""
    pts = fp_curve_points(curve, p)
    x0, y0 = rng.choice(pts)
    D = MumfordDivisor(Poly([-x0, 1], Zmod(p)), Poly([y0], Zmod(p)))
    return cantor_scalar_mul(rng.randint(1, 20), D, curve)


def test_curve_invariants():
    assert CURVE_Q.genus == 2
    with pytest.raises(ValueError):
        HyperellipticCurve(Poly.parse("x^4 + 1"), Poly.zero(QQ))  # even degree
    with pytest.raises(ValueError):
        HyperellipticCurve(Poly.parse("2*x^5 + 1"), Poly.zero(QQ))  # not monic
    with pytest.raises(ValueError):
        HyperellipticCurve(Poly.parse(F_STR), Poly.parse("x^3"))  # deg h too big
    with pytest.raises(ValueError):
        # repeated root: singular
        HyperellipticCurve(Poly.parse("x^3 - 2*x^2 + x"), Poly.zero(QQ))


def test_complete_square():
    curve = HyperellipticCurve(Poly.parse("x^5 + 1"), Poly.parse("x^2"))
    flat = complete_square(curve)
    assert flat.h.is_zero
    assert flat.f == Poly.parse("x^5 + 1/4*x^4 + 1")


def test_mumford_valid_neutral():
    assert mumford_valid(MumfordDivisor.neutral(F11), CURVE_11).is_valid
    assert mumford_valid(D_Q, CURVE_Q).is_valid
    assert mumford_valid(D_11, CURVE_11).is_valid


def test_mumford_valid_degree_violation():
    bad = MumfordDivisor(Poly.parse("x + 10", F11), Poly.parse("4*x + 7", F11))
    report = mumford_valid(bad, CURVE_11)
    assert not report.degree_ok
    assert not report.is_valid


def test_mumford_valid_gcd_violation():
    bad = MumfordDivisor(Poly.parse("x^2", F11), Poly.parse("8*x", F11))
    report = mumford_valid(bad, CURVE_11)
    assert not report.gcd_ok
    assert report.degree_ok
    assert not report.is_valid


def test_divisor_reduce_mod_examples():
    assert divisor_reduce_mod(D_Q, 11, 1) == MumfordDivisor(
        Poly.parse("x + 7", F11), Poly.parse("2", F11)
    )
    assert divisor_reduce_mod(MumfordDivisor.neutral(QQ), 11, 2) == MumfordDivisor(
        Poly.one(Zmod(11, 2)), Poly.zero(Zmod(11, 2))
    )


def test_cantor_identity_and_inverse():
    assert cantor_add(D_11, MumfordDivisor.neutral(F11), CURVE_11) == D_11
    assert cantor_add(D_11, opposite(D_11, CURVE_11), CURVE_11) == MumfordDivisor.neutral(F11)


def test_reduced_divisor_has_order_sixteen():
    seen = []
    acc = MumfordDivisor.neutral(F11)
    for i in range(1, 17):
        acc = cantor_add(acc, D_11, CURVE_11)
        seen.append(acc)
    assert seen[-1] == MumfordDivisor.neutral(F11)
    assert len(set((str(d.u), str(d.v)) for d in seen)) == 16


def test_eight_fold_multiple_mod_11():
    D8 = cantor_scalar_mul(8, D_11, CURVE_11)
    assert D8 == MumfordDivisor(Poly.parse("x + 10", F11), Poly.zero(F11))


def test_sixteen_fold_multiple_over_q_reduces_to_invalid_pair():
    D16 = divisor_reduce_mod(cantor_scalar_mul(16, D_Q, CURVE_Q), 11, 1)
    assert D16 == MumfordDivisor(Poly.parse("x^2", F11), Poly.parse("8*x", F11))
    assert not mumford_valid(D16, CURVE_11).gcd_ok


def test_eight_fold_multiple_over_q_reduces_to_the_known_raw_pair():
    D8 = divisor_reduce_mod(cantor_scalar_mul(8, D_Q, CURVE_Q), 11, 1)
    assert D8 == MumfordDivisor(Poly.parse("x + 10", F11), Poly.parse("4*x + 7", F11))


def test_good_reduction_at_11_and_at_divisors_of_the_discriminant():
    assert hec_good_reduction(CURVE_Q, 11)
    disc = discriminant(CURVE_Q.f)
    n = abs(disc.numerator)
    bad = None
    for cand in range(3, 5000, 2):
        if n % cand == 0:
            from padiclift.arith import is_prime

            if is_prime(cand):
                bad = cand
                break
    assert bad is not None
    assert not hec_good_reduction(CURVE_Q, bad)


def test_good_reduction_rejects_cross_term_models():
    curve = HyperellipticCurve(Poly.parse("x^5 + 1"), Poly.parse("x"))
    with pytest.raises(ValueError):
        hec_good_reduction(curve, 11)


def test_cantor_refuses_ring_domains():
    ring = Zmod(11, 2)
    curve = HyperellipticCurve(Poly.parse(F_STR, ring), Poly.zero(ring))
    D = MumfordDivisor(Poly.parse("x + 7", ring), Poly.parse("2", ring))
    with pytest.raises(NotAFieldError):
        cantor_add(D, D, curve)
    with pytest.raises(NotAFieldError):
        mumford_valid(D, curve)


def test_cantor_group_axioms_randomized():
    rng = random.Random(71)
    neutral = MumfordDivisor.neutral(F11)
    for _ in range(40):
        A = random_valid_divisor(rng, CURVE_11, 11)
        B = random_valid_divisor(rng, CURVE_11, 11)
        C = random_valid_divisor(rng, CURVE_11, 11)
        S = cantor_add(A, B, CURVE_11)
        assert mumford_valid(S, CURVE_11).is_valid
        assert S == cantor_add(B, A, CURVE_11)
        assert cantor_add(A, neutral, CURVE_11) == A
        assert cantor_add(A, opposite(A, CURVE_11), CURVE_11) == neutral
        assert cantor_add(S, C, CURVE_11) == cantor_add(A, cantor_add(B, C, CURVE_11), CURVE_11)


def test_noncommutativity_witness_at_eight():
    h_star, evidence = noncommutativity_witness(CURVE_Q, D_Q, 11, 20)
    assert h_star == 8
    assert evidence.reduced_after == MumfordDivisor(
        Poly.parse("x + 10", F11), Poly.parse("4*x + 7", F11)
    )
    assert evidence.multiplied_after == MumfordDivisor(Poly.parse("x + 10", F11), Poly.zero(F11))


def test_noncommutativity_trivial_at_h_max_one():
    h_star, evidence = noncommutativity_witness(CURVE_Q, D_Q, 11, 1)
    assert h_star is None
    assert "no mismatch" in str(evidence)


def test_genus_one_curve_commutes():
    # elliptic curve as a genus-1 hyperelliptic model; pick p with the
    # reduced point of order > 50 so the scan never crosses the kernel
    curve = HyperellipticCurve(Poly.parse("x^3 - x + 1"), Poly.zero(QQ))
    D = MumfordDivisor(Poly.parse("x - 1"), Poly.parse("1"))
    assert mumford_valid(D, curve).is_valid
    chosen = None
    for p in (53, 59, 61, 67, 71, 73, 79, 83, 89, 97):
        if not hec_good_reduction(curve, p):
            continue
        curve_p = reduce_curve(curve, p)
        Dp = divisor_reduce_mod(D, p, 1)
        order = 1
        acc = Dp
        while not acc.is_neutral and order <= 200:
            acc = cantor_add(acc, Dp, curve_p)
            order += 1
        if order > 50:
            chosen = p
            break
    assert chosen is not None
    h_star, _ = noncommutativity_witness(curve, D, chosen, 50)
    assert h_star is None


def test_witness_requires_good_reduction():
    disc = discriminant(CURVE_Q.f)
    n = abs(disc.numerator)
    bad = next(
        c for c in range(3, 5000, 2) if n % c == 0 and all(c % d for d in range(2, c))
    )
    with pytest.raises(HypothesisError):
        noncommutativity_witness(CURVE_Q, D_Q, bad, 10)
