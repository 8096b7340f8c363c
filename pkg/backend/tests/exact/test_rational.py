import math
from fractions import Fraction

import pytest

from app.exact.rational import (
    bernoulli,
    double_factorial,
    falling_factorial,
    from_domain,
    gen_binom,
    parse_rat,
    rat_str,
    to_qq,
)


@pytest.mark.parametrize(
    ("m", "expected"),
    [
        (0, Fraction(1)),
        (1, Fraction(-1, 2)),
        (2, Fraction(1, 6)),
        (3, Fraction(0)),
        (4, Fraction(-1, 30)),
        (6, Fraction(1, 42)),
        (8, Fraction(-1, 30)),
        (12, Fraction(-691, 2730)),
    ],
)
def test_bernoulli(m: int, expected: Fraction) -> None:
    assert bernoulli(m) == expected


def test_bernoulli_rejects_negative_index() -> None:
    with pytest.raises(ValueError):
        bernoulli(-1)


@pytest.mark.parametrize(
    ("p", "k", "expected"),
    [(5, 2, 10), (-1, 2, 1), (2, 3, 0), (-3, 3, -10), (7, 0, 1)],
)
def test_gen_binom_examples(p: int, k: int, expected: int) -> None:
    assert gen_binom(p, k) == expected


def test_gen_binom_matches_falling_factorial() -> None:
    for p in range(-20, 21):
        for k in range(11):
            assert gen_binom(p, k) * math.factorial(k) == falling_factorial(p, k)


def test_gen_binom_agrees_with_comb_for_natural_arguments() -> None:
    for p in range(12):
        for k in range(12):
            assert gen_binom(p, k) == math.comb(p, k)


def test_double_factorial() -> None:
    assert double_factorial(-1) == 1
    assert double_factorial(0) == 1
    assert double_factorial(5) == 15
    assert double_factorial(7) == 105
    assert double_factorial(8) == 384


def test_rat_arithmetic_is_reduced_and_exact() -> None:
    r = Fraction(6, -4)
    assert (r.numerator, r.denominator) == (-3, 2)
    assert r + (-r) == 0
    assert Fraction(3, 7) * Fraction(7, 3) == 1


@pytest.mark.parametrize(
    ("value", "text"),
    [(Fraction(1, 24), "1/24"), (Fraction(-5, 1), "-5"), (0, "0"), (3, "3")],
)
def test_rat_str_round_trip(value: Fraction, text: str) -> None:
    assert rat_str(value) == text
    assert parse_rat(text) == value


def test_parse_rat_rejects_garbage() -> None:
    with pytest.raises(ValueError):
        parse_rat("one half")
    with pytest.raises(ValueError):
        parse_rat("1/0")


def test_domain_conversion() -> None:
    assert from_domain(to_qq(Fraction(-7, 3))) == Fraction(-7, 3)
    assert from_domain(5) == 5
