from fractions import Fraction
from math import comb, factorial

import pytest

from ehrhart.core.bases import (
    HStarVector,
    MagicForm,
    hstar_sum_matches,
    hstar_to_power,
    is_magic_positive,
    is_palindromic,
    magic_add,
    magic_lift,
    magic_scale,
    magic_shift,
    magic_to_power,
    power_to_hstar,
    power_to_magic,
    reciprocity_holds,
)
from ehrhart.core.errors import DegreeError
from ehrhart.core.exactpoly import Poly
from ehrhart.core.families import cross_dual, cycle_dual, stasheff_dual, type_a_dual

from conftest import random_poly

ST2 = Poly.of([1, "7/2", "7/2"])
ST3 = Poly.of([1, 5, 9, 6])
ST4 = Poly.of([1, "13/2", "67/4", "41/2", "41/4"])
ST5_MAGIC = MagicForm(5, (1, 3, "19/4", "19/4", 3, 1))


class TestPowerToMagic:
    def test_segment(self):
        assert power_to_magic(Poly.linear(2, 1), 1).a == (1, 1)

    def test_stasheff_plane(self):
        assert power_to_magic(ST2, 2).a == (1, Fraction(3, 2), 1)

    def test_stasheff_four(self):
        assert power_to_magic(ST4, 4).a == (1, Fraction(5, 2), Fraction(13, 4), Fraction(5, 2), 1)

    @pytest.mark.parametrize("d", [1, 2, 5, 9])
    def test_type_c_shape(self, d):
        p = Poly.linear(1, 1)
        power = Poly.constant(1)
        for _ in range(d):
            power = power * p
        form = power_to_magic(power + Poly.monomial(d), d)
        assert form.a == (1,) + (0,) * (d - 1) + (1,)

    def test_degree_too_high(self):
        with pytest.raises(DegreeError):
            power_to_magic(ST3, 2)

    def test_lower_degree_is_padded(self):
        # 1 = ((n+1) - n)^2 in degree 2
        assert power_to_magic(Poly.constant(1), 2).a == (1, -2, 1)

    def test_endpoint_identities(self, rng):
        for _ in range(20):
            p = random_poly(rng, 9)
            d = (p.degree or 0) + rng.randint(0, 3)
            form = power_to_magic(p, d)
            assert form.a[0] == p(0)
            assert form.a[d] == (-1) ** d * p(-1)

    def test_round_trip(self, rng):
        for _ in range(20):
            p = random_poly(rng, 10)
            d = (p.degree or 0) + rng.randint(0, 2)
            assert magic_to_power(power_to_magic(p, d)) == p


class TestMagicToPower:
    def test_examples(self):
        assert magic_to_power(MagicForm(1, (1, 1))) == Poly.linear(2, 1)
        assert magic_to_power(MagicForm(3, (1, 2, 2, 1))) == ST3
        assert magic_to_power(MagicForm(2, (1, 2, 1))) == Poly.of([1, 4, 4])

    def test_binomial_row_is_cross(self):
        for d in range(8):
            row = MagicForm(d, tuple(comb(d, i) for i in range(d + 1)))
            assert magic_to_power(row) == cross_dual(d)

    def test_form_validates_length(self):
        with pytest.raises(ValueError):
            MagicForm(2, (1, 1))


class TestMagicVerdicts:
    def test_stasheff_four_positive(self):
        verdict = is_magic_positive(power_to_magic(ST4, 4))
        assert verdict.positive
        assert verdict.witnesses == ()

    def test_witnesses_are_exact(self):
        form = MagicForm(4, (1, "-1/3", 2, "-1/3", 1))
        verdict = is_magic_positive(form)
        assert not verdict.positive
        assert verdict.witnesses == ((1, Fraction(-1, 3)), (3, Fraction(-1, 3)))
        assert verdict.to_record() == {"positive": False, "witnesses": [[1, "-1/3"], [3, "-1/3"]]}

    def test_zero_coefficients_are_nonnegative(self):
        assert is_magic_positive(MagicForm(3, (1, 0, 0, 1))).positive

    def test_palindromic(self):
        assert is_palindromic(ST5_MAGIC)
        assert not is_palindromic(MagicForm(1, (1, 2)))
        assert is_palindromic(MagicForm(0, (7,)))


class TestHStar:
    def test_examples(self):
        assert power_to_hstar(Poly.linear(2, 1), 1).h == (1, 1)
        assert power_to_hstar(Poly.of([1, 4, 4]), 2).h == (1, 6, 1)
        assert power_to_hstar(Poly.constant(1), 0).h == (1,)

    def test_inverse_examples(self):
        assert hstar_to_power(HStarVector(1, (1, 1))) == Poly.linear(2, 1)
        assert hstar_to_power(HStarVector(2, (1, 6, 1))) == Poly.of([1, 4, 4])
        assert hstar_to_power(HStarVector(1, (1, 0))) == Poly.linear(1, 1)

    def test_degree_too_high(self):
        with pytest.raises(DegreeError):
            power_to_hstar(ST3, 1)

    @pytest.mark.parametrize("builder", [stasheff_dual, cycle_dual, type_a_dual, cross_dual])
    def test_sum_is_normalized_volume(self, builder):
        for d in range(1, 9):
            p = builder(d)
            h = power_to_hstar(p, d)
            assert hstar_sum_matches(h, p)
            assert sum(h.h) == factorial(d) * p.leading
            assert h.h[0] == 1

    def test_round_trip(self, rng):
        for _ in range(15):
            p = random_poly(rng, 8)
            d = (p.degree or 0) + rng.randint(0, 2)
            assert hstar_to_power(power_to_hstar(p, d)) == p

    def test_as_poly(self):
        assert HStarVector(2, (1, 6, 1)).as_poly() == Poly.of([1, 6, 1])


class TestMagicAlgebra:
    def test_shift_is_multiplication_by_n(self):
        form = power_to_magic(ST2, 2)
        assert magic_to_power(magic_shift(form)) == ST2 * Poly.monomial(1)

    def test_lift_is_multiplication_by_n_plus_one(self):
        form = power_to_magic(ST2, 2)
        assert magic_to_power(magic_lift(form)) == ST2 * Poly.linear(1, 1)

    def test_add_and_scale(self):
        left = MagicForm(2, (1, 2, 1))
        right = MagicForm(2, (0, "1/2", 0))
        assert magic_add(left, magic_scale(right, 2)).a == (1, 3, 1)

    def test_add_rejects_mixed_degrees(self):
        with pytest.raises(DegreeError):
            magic_add(MagicForm(1, (1, 1)), MagicForm(2, (1, 1, 1)))


class TestReciprocity:
    @pytest.mark.parametrize("d", range(1, 12))
    def test_families(self, d):
        assert reciprocity_holds(stasheff_dual(d), d)
        assert reciprocity_holds(cycle_dual(d), d)
        assert reciprocity_holds(cross_dual(d), d)

    def test_non_reflexive(self):
        assert not reciprocity_holds(Poly.linear(1, 1), 1)
