import random

import pytest
from hypothesis import given, strategies as st

from numprobe.numparse import (NotANumberPhrase, NumericValue, OutOfRange, format_ordinal,
                               numeral_to_words, parse_ordinal, words_to_numeral, year_to_words)


@pytest.mark.parametrize("words,value", [
    ("thirty seven", 37),
    ("zero", 0),
    ("nineteen eighty six", 1986),
    ("one hundred and forty-four", 144),
    ("one hundred forty four", 144),
    ("fifteen hundred", 1500),
    ("nineteen oh five", 1905),
    ("twenty ten", 2010),
    ("two thousand and three", 2003),
    ("minus five", -5),
    ("three point one four", "3.14"),
    ("Two Million", 2_000_000),
])
def test_words_to_numeral(words, value):
    assert words_to_numeral(words) == NumericValue.of(value)


@pytest.mark.parametrize("bad", ["", "hello", "and", "hundred", "two two", "point five", "million two"])
def test_words_to_numeral_rejects(bad):
    with pytest.raises(NotANumberPhrase):
        words_to_numeral(bad)


@pytest.mark.parametrize("value,words", [
    (2, "two"),
    (0, "zero"),
    (144, "one hundred and forty-four"),
    (1005, "one thousand and five"),
    (-7, "minus seven"),
    ("2.05", "two point zero five"),
])
def test_numeral_to_words(value, words):
    assert numeral_to_words(value) == words


def test_numeral_to_words_range():
    with pytest.raises(OutOfRange):
        numeral_to_words(10**15)
    assert numeral_to_words(10**15 - 1).startswith("nine hundred and ninety-nine trillion")


def test_year_reading():
    assert year_to_words(1986) == "nineteen eighty six"
    assert year_to_words(1992) == "nineteen ninety two"
    assert year_to_words(1900) == "nineteen hundred"
    assert words_to_numeral(year_to_words(1907)) == 1907


@given(st.integers(min_value=-(10**12), max_value=10**12), st.booleans())
def test_words_round_trip_integers(n, hyphen):
    assert words_to_numeral(numeral_to_words(n, hyphen=hyphen)) == n


@given(st.decimals(min_value=-(10**9), max_value=10**9, places=4, allow_nan=False, allow_infinity=False))
def test_words_round_trip_decimals(d):
    v = NumericValue.of(d)
    assert words_to_numeral(numeral_to_words(v)) == v


def test_words_round_trip_sampled():
    rng = random.Random(7)
    for _ in range(2000):
        v = NumericValue.of(rng.randint(-10**12, 10**12)).scaleb(-rng.randint(0, 3))
        assert words_to_numeral(numeral_to_words(v)) == v


@pytest.mark.parametrize("surface,n", [("3rd", 3), ("first", 1), ("twenty-first", 21), ("11th", 11),
                                       ("112th", 112), ("hundredth", 100)])
def test_parse_ordinal(surface, n):
    assert parse_ordinal(surface) == n


def test_format_ordinal():
    assert format_ordinal(3, "word") == "third"
    assert format_ordinal(3) == "3rd"
    assert format_ordinal(12) == "12th"
    assert format_ordinal(22) == "22nd"
    with pytest.raises(NotANumberPhrase):
        parse_ordinal("3th")


def test_long_word_ordinals():
    assert format_ordinal(101, "word") == "one hundred and first"
    assert format_ordinal(2000, "word") == "two thousandth"
    assert parse_ordinal("forty-two thousand and twelfth") == 42012


@given(st.integers(min_value=1, max_value=10**15 - 1))
def test_ordinal_round_trip(n):
    assert parse_ordinal(format_ordinal(n, "word")) == n
    assert parse_ordinal(format_ordinal(n, "suffix")) == n
