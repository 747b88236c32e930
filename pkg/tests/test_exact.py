from decimal import Decimal, getcontext, ROUND_HALF_UP
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from seshadri.exact import (
    Cmp,
    RadicalRational,
    format_rr,
    is_squarefree,
    parse_rr,
    rr_cmp,
    rr_mul,
    rr_normalize,
    rr_sqrt,
    rr_square,
    to_decimal,
)

SQUAREFREE = [s for s in range(1, 200) if is_squarefree(s)]

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
radicals = st.builds(rr_normalize, rationals, st.integers(0, 300))


@pytest.mark.parametrize(
    "coeff, radicand, expected",
    [(1, 12, (2, 3)), (Fraction(3, 2), 1, (Fraction(3, 2), 1)), (Fraction(1, 2), 0, (0, 1)), (5, 72, (30, 2))],
)
def test_normalize(coeff, radicand, expected):
    x = rr_normalize(coeff, radicand)
    assert (x.coeff, x.radicand) == expected


def test_squarefree_oracle():
    def brute(n):
        return all(n % (k * k) for k in range(2, n + 1))

    assert [n for n in range(1, 500) if is_squarefree(n)] == [n for n in range(1, 500) if brute(n)]


def test_cmp_examples():
    a = rr_mul(rr_sqrt(Fraction(3, 4)), rr_sqrt(3))
    assert rr_cmp(a, RadicalRational(Fraction(3, 2))) is Cmp.EQ
    assert rr_cmp(RadicalRational(Fraction(1, 2)), rr_sqrt(Fraction(1, 2))) is Cmp.LT
    assert rr_cmp(rr_sqrt(Fraction(1, 2)), rr_sqrt(Fraction(2, 3))) is Cmp.LT


def test_mul_examples():
    assert rr_mul(rr_sqrt(Fraction(3, 4)), rr_sqrt(3)) == Fraction(3, 2)
    half = rr_sqrt(Fraction(1, 2))
    assert rr_mul(half, half) == Fraction(1, 2)
    x = rr_normalize(Fraction(-7, 3), 10)
    assert rr_mul(x, RadicalRational(1)) == x


def test_square_examples():
    assert rr_square(rr_sqrt(Fraction(1, 2))) == Fraction(1, 2)
    assert rr_square(RadicalRational(Fraction(3, 2))) == Fraction(9, 4)
    assert rr_square(rr_sqrt(Fraction(4, 5))) == Fraction(4, 5)


def test_invalid_construction():
    with pytest.raises(ValueError):
        RadicalRational(Fraction(1), 12)
    with pytest.raises(ValueError):
        RadicalRational(Fraction(0), 3)
    with pytest.raises(ValueError):
        rr_normalize(1, -2)


@given(radicals)
def test_normalize_idempotent(x):
    assert rr_normalize(x.coeff, x.radicand) == x


@given(radicals, radicals)
def test_cmp_antisymmetric(a, b):
    assert rr_cmp(a, b) == -rr_cmp(b, a)
    assert (rr_cmp(a, b) is Cmp.EQ) == (a == b)


@given(radicals, radicals, radicals)
def test_cmp_transitive(a, b, c):
    if rr_cmp(a, b) <= 0 and rr_cmp(b, c) <= 0:
        assert rr_cmp(a, c) <= 0


@given(rationals, rationals)
def test_rational_subcase_is_fraction_arithmetic(p, q):
    assert rr_mul(RadicalRational(p), RadicalRational(q)) == p * q
    assert rr_cmp(RadicalRational(p), RadicalRational(q)) == Cmp.of(p, q)


@given(radicals, radicals)
def test_mul_squares_multiply(a, b):
    assert rr_square(rr_mul(a, b)) == rr_square(a) * rr_square(b)
    assert rr_mul(a, b).sign() == a.sign() * b.sign()


@given(st.sampled_from(SQUAREFREE))
def test_roundtrip_square(s):
    assert rr_square(rr_normalize(1, s)) == s


@given(radicals)
def test_parse_format_roundtrip(x):
    assert parse_rr(format_rr(x)) == x
    assert RadicalRational.from_json(x.to_json()) == x


def test_parse_grammar():
    assert parse_rr("1/2*sqrt(8)") == rr_sqrt(2)
    assert parse_rr("sqrt(3)") == rr_sqrt(3)
    assert parse_rr("3/2") == Fraction(3, 2)
    assert parse_rr("-2*sqrt(5)") == rr_normalize(-2, 5)
    with pytest.raises(ValueError):
        parse_rr("1.5")


def _decimal_oracle(x: RadicalRational, places=6) -> str:
    getcontext().prec = 60
    v = Decimal(x.coeff.numerator) / Decimal(x.coeff.denominator) * Decimal(x.radicand).sqrt()
    return str(v.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP))


@given(radicals.filter(lambda x: x.sign() >= 0))
def test_decimal_matches_high_precision(x):
    assert to_decimal(x) == _decimal_oracle(x)


def test_decimal_examples():
    assert to_decimal(rr_sqrt(3)) == "1.732051"
    assert to_decimal(rr_sqrt(Fraction(1, 2))) == "0.707107"
    assert to_decimal(rr_normalize(-1, 2)) == "-1.414214"
