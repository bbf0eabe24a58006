"""Rational functions of q: canonical form, checks, and the parser."""

import random
from fractions import Fraction

import pytest
import sympy

from pdc.fields import FIELDS, Q
from pdc.polynomial import Polynomial
from pdc.ratfun import (RationalFunction, RFParseError, fe_check, invert_q,
                        parse_rf, pole_check, q_ddq, rf_make)


def rand_rf(rng):
    def rand_poly(nonzero=False):
        while True:
            coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                      for _ in range(rng.randint(1, 6))]
            p = Polynomial(Q, coeffs)
            if not (nonzero and p.is_zero):
                return p
    return RationalFunction(rand_poly(), rand_poly(nonzero=True))


def to_sympy(F):
    x = sympy.symbols("q")

    def conv(p):
        return sum(sympy.Rational(c.numerator, c.denominator) * x ** k
                   for k, c in enumerate(p.coeffs))

    return conv(F.num) / conv(F.den)


class TestCanonicalForm:
    def test_gcd_cancelled_and_denominator_normalized(self):
        num = Polynomial(Q, [0, 2, 2])        # 2q(1+q)
        den = Polynomial(Q, [0, 0, 4, 4])     # 4q^2(1+q)
        F = RationalFunction(num, den)
        assert F.num.coeffs == (Fraction(1, 2),)
        assert F.den.coeffs == (0, 1)

    def test_equality_is_structural_on_canonical_forms(self):
        a = parse_rf("(1 - q^2)/(1 - q)")
        b = parse_rf("1 + q")
        assert a == b

    def test_zero(self):
        F = RationalFunction(Polynomial.zero(Q), Polynomial(Q, [3, 1]))
        assert F.is_zero and F.den.coeffs == (1,)

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RationalFunction(Polynomial.one(Q), Polynomial.zero(Q))

    def test_arithmetic_matches_sympy(self):
        rng = random.Random(6)
        for _ in range(25):
            a, b = rand_rf(rng), rand_rf(rng)
            assert sympy.simplify(to_sympy(a + b)
                                  - (to_sympy(a) + to_sympy(b))) == 0
            assert sympy.simplify(to_sympy(a * b)
                                  - to_sympy(a) * to_sympy(b)) == 0
            if not b.is_zero:
                assert sympy.simplify(to_sympy(a / b)
                                      - to_sympy(a) / to_sympy(b)) == 0

    def test_pow_negative(self):
        F = parse_rf("q/(1+q)")
        assert F ** -2 == parse_rf("(1+q)^2/q^2")


class TestScaleMonomial:
    def test_matches_generic_multiply(self):
        rng = random.Random(7)
        for _ in range(40):
            F = rand_rf(rng)
            c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            k = rng.randint(-3, 3)
            qk = RationalFunction(Polynomial.monomial(Q, 1, max(k, 0)),
                                  Polynomial.monomial(Q, 1, max(-k, 0)))
            assert F.scale_monomial(c, k) == F * qk * c

    def test_result_is_canonical(self):
        F = parse_rf("(1+q)/q^2")
        G = F.scale_monomial(Fraction(1, 2), 3)
        assert G == parse_rf("(q + q^2)/2")
        assert G.den.coeffs == (1,)

    def test_param_field_scaling(self):
        fs = FIELDS["Q_s"]
        s1, s2, _ = fs.gens()
        F = RationalFunction(Polynomial(fs, [0, 1]), Polynomial(fs, [1, 1]))
        G = F.scale_monomial(s1 + s2, 1)
        assert G.num == Polynomial(fs, [0, 0, s1 + s2])
        assert G.den == Polynomial(fs, [1, 1])


class TestInversionAndDerivation:
    def test_invert_q_involution_random(self):
        rng = random.Random(8)
        for _ in range(30):
            F = rand_rf(rng)
            assert invert_q(invert_q(F)) == F

    def test_invert_q_matches_sympy(self):
        rng = random.Random(9)
        x = sympy.symbols("q")
        for _ in range(20):
            F = rand_rf(rng)
            if F.is_zero:
                continue
            expect = sympy.simplify(to_sympy(F).subs(x, 1 / x))
            assert sympy.simplify(to_sympy(invert_q(F)) - expect) == 0

    def test_q_ddq_matches_sympy(self):
        rng = random.Random(10)
        x = sympy.symbols("q")
        for _ in range(20):
            F = rand_rf(rng)
            expect = sympy.simplify(x * sympy.diff(to_sympy(F), x))
            assert sympy.simplify(to_sympy(q_ddq(F)) - expect) == 0

    def test_q_ddq_product_rule(self):
        rng = random.Random(11)
        for _ in range(15):
            a, b = rand_rf(rng), rand_rf(rng)
            assert q_ddq(a * b) == q_ddq(a) * b + a * q_ddq(b)


class TestFunctionalEquation:
    def test_agrees_with_direct_substitution(self):
        rng = random.Random(12)
        for _ in range(40):
            F = rand_rf(rng)
            for sign in (1, -1):
                for d in (-2, 0, 1, 4):
                    direct = (invert_q(F)
                              == F.scale_monomial(sign, -d))
                    assert fe_check(F, d, sign) == direct

    def test_known_cases(self):
        assert fe_check(parse_rf("q/(1+q)^2"), 0, 1)
        assert fe_check(parse_rf("q + 2*q^2 + q^3"), 4, 1)
        assert not fe_check(parse_rf("q + 2*q^2 + q^3"), 4, -1)
        assert not fe_check(parse_rf("q + 2*q^2 + 3*q^3"), 4, 1)
        assert not fe_check(parse_rf("q + 2*q^2 + 3*q^3"), 4, -1)
        assert fe_check(RationalFunction.zero(Q), 3, -1)

    def test_sign_validation(self):
        with pytest.raises(ValueError):
            fe_check(parse_rf("q"), 1, 2)


class TestPoleCheck:
    def test_accepts_allowed_denominators(self):
        assert pole_check(parse_rf("1/(q^2*(1+q)^3)"), 1)
        assert pole_check(parse_rf("1/((1+q)^2*(1-q^2))"), 2)
        # 1+q+q^2 divides 1-q^6 = 1-(-q)^6
        assert pole_check(parse_rf("(3+q)/(1+q+q^2)"), 6)
        assert pole_check(parse_rf("5 + q^7"), 1)

    def test_rejects_disallowed_poles(self):
        assert not pole_check(parse_rf("1/(1-q)"), 1)
        assert not pole_check(parse_rf("1/(1+q+q^2)"), 2)
        assert not pole_check(parse_rf("1/(2+q)"), 5)

    def test_d_validation(self):
        with pytest.raises(ValueError):
            pole_check(parse_rf("q"), 0)


class TestParser:
    def test_round_trip_through_str(self):
        rng = random.Random(13)
        for _ in range(25):
            F = rand_rf(rng)
            assert parse_rf(F.to_str()) == F

    def test_precedence_and_unary(self):
        assert parse_rf("1 + 2*q^2/(1 - q)") == (
            RationalFunction(Polynomial(Q, [1]), Polynomial.one(Q))
            + RationalFunction(Polynomial(Q, [0, 0, 2]),
                               Polynomial(Q, [1, -1])))
        assert parse_rf("-q^2") == parse_rf("0 - q^2")
        assert parse_rf("3/4*q") == parse_rf("(3/4)*q")

    def test_error_position_reported(self):
        with pytest.raises(RFParseError) as info:
            parse_rf("q + (1 -")
        assert info.value.pos == 8
        with pytest.raises(RFParseError):
            parse_rf("q q")
        with pytest.raises(RFParseError, match="division by zero"):
            parse_rf("1/(q - q)")

    def test_rf_make_type_checks(self):
        with pytest.raises(TypeError):
            rf_make("q", Polynomial.one(Q))
