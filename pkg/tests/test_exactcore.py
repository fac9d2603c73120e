"""Prime-factored rationals, radicals and the exact-value text grammar."""
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rungelenz.errors import DomainError, ExactParseError, FactorialLimitError
from rungelenz.halfint import HalfInt, twice
from rungelenz.pfrational import (
    FactorialTable,
    PFRational,
    factorize,
    pf_factorial,
    sqrt_extract,
)
from rungelenz.radical import RadicalSum, SqrtRational, parse_exact, render_exact


class TestHalfInt:
    def test_parse_forms(self):
        assert HalfInt.parse("1/2").twice == 1
        assert HalfInt.parse("0.5").twice == 1
        assert HalfInt.parse("-3/2").twice == -3
        assert HalfInt.parse("2").twice == 4

    def test_rejects_non_half_integers(self):
        with pytest.raises(DomainError):
            HalfInt.parse("1/3")
        with pytest.raises(DomainError):
            HalfInt.from_value(0.3)

    def test_arithmetic_and_order(self):
        a = HalfInt(3)  # 3/2
        b = HalfInt(1)  # 1/2
        assert (a + b).twice == 4
        assert (a - b) == 1
        assert -a == HalfInt(-3)
        assert abs(HalfInt(-3)) == a
        assert b < a
        assert str(a) == "3/2" and str(HalfInt(4)) == "2"

    def test_integer_access(self):
        assert HalfInt(4).as_int() == 2
        with pytest.raises(DomainError):
            HalfInt(3).as_int()
        assert twice("5/2") == 5


class TestPFFactorial:
    def test_zero_is_empty_product(self):
        assert pf_factorial(0) == PFRational.one()
        assert pf_factorial(0).factors == {}

    def test_small_factorization(self):
        assert pf_factorial(4).factors == {2: 3, 3: 1}

    def test_ten_against_integer_oracle(self):
        pf = pf_factorial(10)
        assert pf.factors == {2: 8, 3: 4, 5: 2, 7: 1}
        assert pf.value == math.factorial(10)

    def test_limit_error_names_needed_limit(self):
        table = FactorialTable(limit=10)
        table.factorial(10)
        with pytest.raises(FactorialLimitError) as err:
            table.factorial(11)
        assert err.value.needed == 11
        assert err.value.limit == 10
        assert "11" in str(err.value)

    def test_factorial_int_matches_pf(self):
        table = FactorialTable(limit=30)
        for k in range(31):
            assert table.factorial_int(k) == table.factorial(k).value


nonzero_fractions = st.fractions(
    min_value=Fraction(-400), max_value=Fraction(400), max_denominator=60,
).filter(lambda f: f != 0)


class TestPFRational:
    @given(nonzero_fractions, nonzero_fractions)
    def test_mul_div_roundtrip(self, a, b):
        pa, pb = PFRational.from_fraction(a), PFRational.from_fraction(b)
        assert (pa * pb) / pb == pa
        assert (pa * pb).value == a * b

    @given(nonzero_fractions, nonzero_fractions)
    def test_sign_algebra(self, a, b):
        pa, pb = PFRational.from_fraction(a), PFRational.from_fraction(b)
        assert (pa * pb).sign == (1 if a * b > 0 else -1)

    def test_zero_conventions(self):
        zero = PFRational.zero()
        assert zero.is_zero and zero.factors == {}
        assert (zero * PFRational.from_int(7)).is_zero
        with pytest.raises(ZeroDivisionError):
            PFRational.one() / zero

    def test_pow(self):
        x = PFRational.from_fraction(Fraction(-8, 27))
        assert (x**2).value == Fraction(64, 729)
        assert (x**-1).value == Fraction(-27, 8)

    def test_factorize_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            factorize(0)


class TestSqrtExtract:
    @pytest.mark.parametrize("value, rational, radicand", [
        (12, 2, 3),
        (1, 1, 1),
        (Fraction(18, 25), Fraction(3, 5), 2),
    ])
    def test_worked_examples(self, value, rational, radicand):
        part, d = sqrt_extract(PFRational.from_fraction(value))
        assert part.value == rational
        assert d == radicand

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            sqrt_extract(PFRational.from_int(-2))

    def test_zero(self):
        assert sqrt_extract(PFRational.zero()) == (PFRational.zero(), 1)

    @given(st.integers(min_value=1, max_value=100000))
    def test_idempotent_on_squarefree_part(self, k):
        _, d = sqrt_extract(PFRational.from_int(k))
        part2, d2 = sqrt_extract(PFRational.from_int(d))
        assert part2 == PFRational.one()
        assert d2 == d

    @given(st.fractions(min_value=Fraction(0), max_value=Fraction(500),
                        max_denominator=80))
    def test_reconstructs_value(self, value):
        part, d = sqrt_extract(PFRational.from_fraction(value))
        assert part.value**2 * d == value


class TestSqrtRational:
    def test_square(self):
        s = SqrtRational.from_fraction(Fraction(3, 5), sign=-1)
        assert s.square().value == Fraction(3, 5)
        assert s.to_radical_sum().to_float() == pytest.approx(-math.sqrt(0.6))

    @given(st.fractions(min_value=Fraction(0), max_value=Fraction(100),
                        max_denominator=30),
           st.fractions(min_value=Fraction(0), max_value=Fraction(100),
                        max_denominator=30))
    def test_mul_matches_square(self, a, b):
        sa, sb = SqrtRational.from_fraction(a), SqrtRational.from_fraction(b)
        prod = sa * sb
        assert prod.square().value == a * b
        assert prod.to_radical_sum() == sa.to_radical_sum() * sb.to_radical_sum()

    def test_negative_radicand_rejected(self):
        with pytest.raises(DomainError):
            SqrtRational.from_fraction(-1)


def rs(x):
    return RadicalSum.from_rational(x)


def root(x, sign=1):
    return RadicalSum.from_sqrt(x, sign)


class TestRadicalSum:
    def test_add_cancellation(self):
        assert root(2) + root(2, -1) == RadicalSum.zero()

    def test_add_merges_rationals(self):
        assert (rs(1) + root(3)) + rs(2) == rs(3) + root(3)

    def test_add_coefficients(self):
        half_root6 = root(6) * Fraction(1, 2)
        assert half_root6 + half_root6 == root(6)

    def test_mul_same_radicand(self):
        assert root(2) * root(2) == rs(2)

    def test_mul_extracts_square_part(self):
        assert root(6) * root(10) == root(15) * 2

    def test_mul_distributes(self):
        assert (rs(1) + root(2)) * (rs(1) - root(2)) == rs(-1)

    def test_rational_predicate(self):
        assert rs(Fraction(7, 3)).is_rational
        assert not (rs(1) + root(5)).is_rational
        assert (root(5) - root(5)).is_rational
        with pytest.raises(DomainError):
            (rs(1) + root(5)).as_fraction()

    @given(st.lists(st.tuples(
        st.sampled_from([1, 2, 3, 5, 6, 7, 10, 11, 13, 15]),
        st.fractions(min_value=Fraction(-9), max_value=Fraction(9),
                     max_denominator=12)),
        max_size=5))
    def test_rationality_predicate_matches_float_shadow(self, pairs):
        terms = {}
        for d, c in pairs:
            terms[d] = terms.get(d, Fraction(0)) + c
        value = RadicalSum(terms)
        shadow = value.to_float()
        rational_shadow = float(value.coefficient(1))
        if value.is_rational:
            assert shadow == pytest.approx(rational_shadow, abs=1e-12)
        else:
            # squarefree radicals over Q are linearly independent
            assert abs(shadow - rational_shadow) > 1e-12

    @given(st.lists(st.tuples(
        st.sampled_from([1, 2, 3, 5, 6, 7]),
        st.fractions(min_value=Fraction(-9), max_value=Fraction(9),
                     max_denominator=10)), max_size=4),
        st.lists(st.tuples(
            st.sampled_from([1, 2, 3, 5, 6, 7]),
            st.fractions(min_value=Fraction(-9), max_value=Fraction(9),
                         max_denominator=10)), max_size=4))
    @settings(max_examples=60)
    def test_ring_laws_against_float_shadow(self, ta, tb):
        a = RadicalSum(dict(ta))
        b = RadicalSum(dict(tb))
        assert (a + b).to_float() == pytest.approx(a.to_float() + b.to_float(),
                                                   abs=1e-9)
        assert (a * b).to_float() == pytest.approx(a.to_float() * b.to_float(),
                                                   abs=1e-9)
        assert a * b == b * a
        assert a + b == b + a

    def test_rejects_bad_radicands(self):
        with pytest.raises(DomainError):
            RadicalSum({0: Fraction(1)})
        with pytest.raises(DomainError):
            RadicalSum({-2: Fraction(1)})


class TestExactGrammar:
    @pytest.mark.parametrize("value, text", [
        (RadicalSum.zero(), "0/1"),
        (rs(Fraction(-1, 2)), "-1/2"),
        (rs(3), "3/1"),
        (root(6) * Fraction(1, 6), "(1/6)*sqrt(6)"),
        (rs(3) + root(3), "3/1 + (1/1)*sqrt(3)"),
        (root(2, -1) + rs(Fraction(1, 4)), "1/4 - (1/1)*sqrt(2)"),
        (root(2) * Fraction(-1, 3) + root(3) * Fraction(2, 5),
         "-(1/3)*sqrt(2) + (2/5)*sqrt(3)"),
    ])
    def test_rendering(self, value, text):
        assert render_exact(value) == text
        assert parse_exact(text) == value

    def test_radicands_render_in_increasing_order(self):
        value = root(7) + root(2) + rs(1)
        assert render_exact(value) == "1/1 + (1/1)*sqrt(2) + (1/1)*sqrt(7)"

    @given(st.lists(st.tuples(
        st.sampled_from([1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21]),
        st.fractions(min_value=Fraction(-50), max_value=Fraction(50),
                     max_denominator=40)), max_size=6))
    def test_round_trip_bit_exact(self, pairs):
        terms = {}
        for d, c in pairs:
            terms[d] = terms.get(d, Fraction(0)) + c
        value = RadicalSum(terms)
        assert parse_exact(render_exact(value)) == value

    @pytest.mark.parametrize("bad", [
        "", "1", "1/2 + 1/3", "sqrt(2)", "(1/2)*sqrt(4)", "(1/2)*sqrt(-3)",
        "1/2 + (1/3)*sqrt(2) + (1/5)*sqrt(2)", "0/2",
    ])
    def test_parse_rejects_malformed(self, bad):
        with pytest.raises(ExactParseError):
            parse_exact(bad)
