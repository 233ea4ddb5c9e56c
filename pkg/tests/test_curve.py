"""Weierstrass invariants, twists, structural predicates."""

import random

import pytest

from ffmu.algebra import RationalFunction, field, parse_rational
from ffmu.curve import (
    WeierstrassModel,
    detect_constancy,
    is_isotrivial,
    j_is_pth_power,
    legendre_curve,
)
from ffmu.errors import InputError, SingularModelError


def _random_model(ctx, rng, max_deg=2):
    while True:
        coeffs = []
        for _ in range(5):
            num = [rng.randrange(ctx.q) for _ in range(rng.randrange(1, max_deg + 2))]
            den = [rng.randrange(ctx.q) for _ in range(rng.randrange(1, max_deg + 1))]
            from ffmu.algebra import Poly

            n = Poly.from_codes(ctx, num)
            d = Poly.from_codes(ctx, den)
            if d.is_zero():
                d = Poly.constant(ctx, 1)
            coeffs.append(RationalFunction(n, d))
        try:
            return WeierstrassModel(ctx, *coeffs)
        except SingularModelError:
            continue


def test_invariant_identities_random():
    rng = random.Random(5)
    for ctx in (field(3), field(5), field(7), field(2)):
        for _ in range(8):
            m = _random_model(ctx, rng)
            b2, b4, b6, b8, c4, c6, delta, j = m.invariants()
            assert 4 * b8 == b2 * b6 - b4 * b4
            assert 1728 * delta == c4**3 - c6 * c6
            assert j == c4**3 / delta


def test_legendre_discriminant_closed_form():
    # Delta_eq = 16 f^2 (f-1)^2, via symbolic expansion
    for ctx in (field(3), field(5), field(7)):
        t = RationalFunction.t(ctx)
        for f in (t, (t * t + 1) / t, 1 / (t * t)):
            if f.is_zero() or f == RationalFunction.constant(ctx, 1):
                continue
            m = legendre_curve(f)
            assert m.discriminant() == 16 * f * f * (f - 1) * (f - 1)


def test_legendre_coefficients():
    f7 = field(7)
    x = RationalFunction.t(f7)
    f = 1 / (x * x)
    m = legendre_curve(f)
    assert m.a1.is_zero() and m.a3.is_zero() and m.a6.is_zero()
    assert m.a2 == -(1 + f)
    assert m.a4 == f
    with pytest.raises(SingularModelError):
        legendre_curve(RationalFunction.constant(f7, 1))
    with pytest.raises(InputError):
        legendre_curve(RationalFunction.t(field(2)))


def test_char3_worked_example_j_invariant():
    f3 = field(3)
    f = parse_rational("(1+t+t^2)/(1+t)", f3)
    m = legendre_curve(f)
    expected = parse_rational(
        "(t^12+t^9+2t^6+2t^3+1)/(t^10+t^9+2t^8+t^7+2t^6+t^5+t^4)", f3
    )
    assert m.j_invariant() == expected


def test_j_zero_curve():
    f5 = field(5)
    m = WeierstrassModel(f5, 0, 0, 0, 0, 1)  # y^2 = x^3 + 1
    assert m.j_invariant().is_zero()
    assert m.invariants()[4].is_zero()  # c4 = 0


def test_transform_laws():
    f5 = field(5)
    t = RationalFunction.t(f5)
    m = WeierstrassModel(f5, 0, 0, 0, 0, 1)
    ident = m.transform()
    assert ident.coefficients == m.coefficients
    scaled = m.transform(u=t)
    assert scaled.discriminant() == m.discriminant() / t**12
    assert scaled.invariants()[4] == m.invariants()[4] / t**4
    assert scaled.j_invariant() == m.j_invariant()
    rng = random.Random(1)
    m2 = _random_model(f5, rng)
    moved = m2.transform(u=t + 1, r=t, s=2 * t, w=1 / t)
    assert moved.j_invariant() == m2.j_invariant()
    assert moved.discriminant() == m2.discriminant() / (t + 1) ** 12


def test_legendre_even_pole_shape():
    # pole of order 2e at v: (x, y) -> (x pi^-2e, y pi^-3e) gives
    # y^2 = x(x - pi^2e)(x - unit)
    f3 = field(3)
    t = RationalFunction.t(f3)
    f = 1 / (t * t)  # pole of order 2 at (t), e = 1
    m = legendre_curve(f)
    moved = m.transform(u=1 / t)
    # y^2 = x(x - t^2)(x - u) has a2 = -(t^2 + u), a4 = t^2 u, a6 = 0, u unit
    assert moved.a1.is_zero() and moved.a3.is_zero() and moved.a6.is_zero()
    u_candidate = -moved.a2 - t * t
    assert moved.a4 == t * t * u_candidate


def test_quadratic_twist_laws():
    f7 = field(7)
    x = RationalFunction.t(f7)
    m = legendre_curve(1 / (x * x))
    tw1 = m.quadratic_twist(1)
    assert tw1.j_invariant() == m.j_invariant()
    assert m.is_isomorphic_candidate(tw1)
    d = x**3 + 5 * x
    tw = m.quadratic_twist(d)
    assert tw.j_invariant() == m.j_invariant()
    twice = tw.quadratic_twist(d)
    assert m.is_isomorphic_candidate(twice)
    assert not m.is_isomorphic_candidate(tw)  # d is not a square


def test_frobenius_twist():
    f3 = field(3)
    t = RationalFunction.t(f3)
    f = (t * t + 1) / t
    m = legendre_curve(f)
    tw = m.frobenius_twist(1)
    assert tw.a4 == f**3
    assert tw.j_invariant() == m.j_invariant() ** 3
    # composition law
    assert m.frobenius_twist(1).frobenius_twist(2).coefficients == m.frobenius_twist(
        3
    ).coefficients
    assert j_is_pth_power(tw)


def test_j_pth_power_cases():
    f3 = field(3)
    t = RationalFunction.t(f3)
    m_iso = WeierstrassModel(f3, 0, 0, 0, 1, 1)  # constant j
    assert j_is_pth_power(m_iso)
    f = parse_rational("(1+t+t^2)/(1+t)", f3)
    assert not j_is_pth_power(legendre_curve(f))
    # Legendre(g^p) has j a p-th power by construction
    g = (t + 2) / (t * t + 1)
    assert j_is_pth_power(legendre_curve(g**3))


def test_detect_constancy_literal_constant():
    f5 = field(5)
    m = WeierstrassModel(f5, 0, 0, 0, 1, 1)  # y^2 = x^3 + x + 1
    c = detect_constancy(m)
    assert c.is_constant()
    assert c.constant_model is not None


def test_detect_constancy_nonconstant():
    f3 = field(3)
    f = parse_rational("(1+t+t^2)/(1+t)", f3)
    assert detect_constancy(legendre_curve(f)).kind == "nonconstant"


def test_detect_constancy_twist_by_odd_nonsquare():
    f5 = field(5)
    t = RationalFunction.t(f5)
    m0 = WeierstrassModel(f5, 0, 0, 0, 1, 1)
    tw = m0.quadratic_twist(t)  # odd-degree twist: isotrivial but not constant
    assert is_isotrivial(tw)
    assert detect_constancy(tw).kind == "nonconstant"
    # twist by a square stays constant
    tw2 = m0.quadratic_twist(t * t)
    assert detect_constancy(tw2).is_constant()
    # twist by a nonsquare constant is still a constant curve
    tw3 = m0.quadratic_twist(2)  # 2 is a nonsquare mod 5
    assert detect_constancy(tw3).is_constant()


def test_detect_constancy_j_zero_cases():
    f7 = field(7)
    t = RationalFunction.t(f7)
    m = WeierstrassModel(f7, 0, 0, 0, 0, t**6)  # y^2 = x^3 + t^6: constant
    assert detect_constancy(m).is_constant()
    m2 = WeierstrassModel(f7, 0, 0, 0, 0, t)  # sextic twist class nontrivial
    assert detect_constancy(m2).kind == "nonconstant"


def test_detect_constancy_char3_undetermined():
    f3 = field(3)
    t = RationalFunction.t(f3)
    # isotrivial non-literal coefficients in char 3 stay undetermined
    m = WeierstrassModel(f3, 0, 0, 0, t**4, 0)
    if is_isotrivial(m):
        assert detect_constancy(m).kind == "undetermined"
