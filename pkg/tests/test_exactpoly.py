from fractions import Fraction

import pytest
import sympy

from ehrhart.core.errors import InterpolationError, ParseError
from ehrhart.core.exactpoly import (
    ArithOp,
    Poly,
    big_binom,
    binom_linear,
    compose_linear,
    format_rational,
    has_integer_coefficients,
    lagrange_interpolate,
    parse_rational,
    poly_arith,
    poly_derivative,
    poly_divmod,
    poly_eval,
    poly_from_strings,
    poly_gcd,
    poly_to_strings,
    render_poly,
    to_rational,
)

from conftest import N, from_sympy, random_poly, to_sympy

ST2 = Poly.of(["1", "7/2", "7/2"])
ST3 = Poly.of([1, 5, 9, 6])


class TestRational:
    def test_parse_forms(self):
        assert parse_rational("7/2") == Fraction(7, 2)
        assert parse_rational(" -3 / 4 ") == Fraction(-3, 4)
        assert parse_rational("5") == 5
        assert parse_rational("4/2") == 2

    @pytest.mark.parametrize("text", ["1/0", "abc", "1.5", "", "2/-3"])
    def test_parse_rejects(self, text):
        with pytest.raises(ParseError):
            parse_rational(text)

    def test_format_lowest_terms(self):
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(Fraction(-142, 15)) == "-142/15"
        assert format_rational(Fraction(0)) == "0"

    def test_to_rational_rejects_floats_and_bools(self):
        with pytest.raises(ParseError):
            to_rational(0.5)
        with pytest.raises(ParseError):
            to_rational(True)


class TestPolyArith:
    def test_square(self):
        one_plus_n = Poly.linear(1, 1)
        assert poly_arith(one_plus_n, one_plus_n, ArithOp.MUL) == Poly.of([1, 2, 1])

    def test_scale(self):
        assert poly_arith(Poly.linear(2, 1), None, "scale", Fraction(1, 2)) == Poly.of(["1/2", 1])

    def test_sub_self_is_zero(self, rng):
        p = random_poly(rng)
        difference = poly_arith(p, p, "sub")
        assert difference.is_zero
        assert difference.degree is None
        assert difference.to_strings() == ["0"]

    def test_degree_after_cancellation(self):
        p = Poly.of([1, 2, 3])
        q = Poly.of([0, 0, 3])
        assert (p - q).degree == 1

    def test_scale_needs_scalar(self):
        with pytest.raises(ValueError):
            poly_arith(ST2, None, "scale")

    def test_binary_needs_second_operand(self):
        with pytest.raises(ValueError):
            poly_arith(ST2, None, "add")

    def test_distributive(self, rng):
        for _ in range(20):
            p, q, r = (random_poly(rng, 6) for _ in range(3))
            assert (p + q) * r == p * r + q * r

    def test_matches_sympy_product(self, rng):
        for _ in range(10):
            p, q = random_poly(rng, 8), random_poly(rng, 8)
            assert from_sympy((to_sympy(p) * to_sympy(q)).as_expr()) == p * q


class TestEval:
    def test_stasheff_values(self):
        assert poly_eval(ST2, 1) == 8
        assert poly_eval(ST3, -1) == -1

    def test_constant_term(self, rng):
        p = random_poly(rng)
        assert p(0) == p.coefficient(0)

    def test_rational_point(self):
        assert Poly.of([0, 0, 4])(Fraction(1, 2)) == 1


class TestBinomials:
    def test_big_binom(self):
        assert big_binom(11, 5) == 462
        assert big_binom(7, 0) == 1
        assert big_binom(3, 5) == 0

    def test_big_binom_rejects_negative(self):
        with pytest.raises(ValueError):
            big_binom(-1, 2)

    def test_binom_linear_examples(self):
        assert binom_linear(3, 2, 2) == Poly.of([1, "9/2", "9/2"])
        assert binom_linear(5, -7, 0) == Poly.constant(1)
        assert binom_linear(1, 0, 2) == Poly.of([0, "-1/2", "1/2"])

    @pytest.mark.parametrize("d", range(0, 9))
    def test_binom_linear_counts(self, d):
        p = binom_linear(1, d, d)
        for n in range(12):
            assert p(n) == big_binom(n + d, d)

    @pytest.mark.parametrize("a,b,d", [(3, 2, 4), (7, 6, 6), (-2, 5, 3), (5, 4, 8)])
    def test_binom_linear_matches_sympy(self, a, b, d):
        expected = from_sympy(sympy.expand_func(sympy.binomial(a * N + b, d)))
        assert binom_linear(a, b, d) == expected


class TestInterpolation:
    def test_three_points(self):
        assert lagrange_interpolate([(0, 1), (1, 7), (2, 19)]) == Poly.of([1, 3, 3])

    def test_single_point(self):
        assert lagrange_interpolate([(0, 1)]) == Poly.constant(1)

    def test_stasheff_samples(self):
        points = [(n, ST2(n)) for n in range(3)]
        assert lagrange_interpolate(points) == ST2

    def test_round_trip(self, rng):
        for _ in range(25):
            p = random_poly(rng, 12)
            size = (p.degree or 0) + 1
            assert lagrange_interpolate([(x, p(x)) for x in range(size)]) == p

    def test_duplicate_nodes(self):
        with pytest.raises(InterpolationError):
            lagrange_interpolate([(0, 1), (1, 2), (0, 3)])

    def test_empty(self):
        with pytest.raises(InterpolationError):
            lagrange_interpolate([])


class TestDivision:
    def test_divmod_identity(self, rng):
        for _ in range(20):
            p = random_poly(rng, 10)
            q = random_poly(rng, 5)
            if q.is_zero:
                continue
            quotient, remainder = poly_divmod(p, q)
            assert quotient * q + remainder == p
            assert remainder.is_zero or remainder.degree < q.degree

    def test_divide_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            poly_divmod(ST2, Poly())

    def test_gcd_is_monic_common_factor(self):
        a = Poly.of([2, 3, 1])      # (n+1)(n+2)
        b = Poly.of([3, 4, 1])      # (n+1)(n+3)
        assert poly_gcd(a.scale(5), b) == Poly.of([1, 1])

    def test_gcd_of_zero(self):
        assert poly_gcd(Poly(), Poly()).is_zero

    def test_derivative(self):
        assert poly_derivative(ST3) == Poly.of([5, 18, 18])
        assert poly_derivative(Poly.constant(4)).is_zero


class TestHelpers:
    def test_compose_linear_reflection(self):
        # E(-1-n) for 2n+1 is -(2n+1)
        assert compose_linear(Poly.linear(2, 1), -1, -1) == Poly.linear(-2, -1)

    def test_integer_coefficients(self):
        assert has_integer_coefficients(ST3)
        assert not has_integer_coefficients(ST2)

    def test_string_codec(self):
        assert poly_to_strings(ST2) == ["1", "7/2", "7/2"]
        assert poly_from_strings(["1", "7/2", "7/2"]) == ST2
        assert poly_to_strings(Poly()) == ["0"]

    def test_render(self):
        assert render_poly(ST2) == "7/2*n^2 + 7/2*n + 1"
        assert render_poly(Poly.of([0, -1, 1])) == "n^2 - n"
        assert render_poly(Poly()) == "0"

    def test_trailing_zeros_trimmed(self):
        assert Poly.of([1, 0, 0]).coeffs == (Fraction(1),)
        assert Poly.of([0, 0]).degree is None

    def test_poly_is_hashable_and_frozen(self):
        assert len({ST2, Poly.of(["1", "7/2", "7/2"])}) == 1
        with pytest.raises(Exception):
            ST2.coeffs = ()
