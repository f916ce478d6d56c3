import pytest
from hypothesis import given, strategies as st

from numprobe.numparse import (DateValue, MentionKind, NumericValue, numeral_to_words, parse_mention,
                               scan_mentions, words_to_numeral)

K = MentionKind


def kinds(text):
    return [(m.kind, m.surface) for m in scan_mentions(text)]


def test_golden_hypothesis_h1():
    ms = scan_mentions("Born in 1986, Nadal is age 37 currently.")
    assert [(m.kind, m.value) for m in ms] == [(K.CARDINAL_DIGITS, 1986), (K.CARDINAL_DIGITS, 37)]


def test_empty():
    assert scan_mentions("") == []


def test_negative_with_magnitude_and_currency():
    (m,) = scan_mentions("The company's monthly closing resulted in -5 million USD.")
    assert m.kind is K.NEGATIVE
    assert m.value == -5_000_000
    assert m.unit == "USD"
    assert m.surface.startswith("-")


def test_longest_match_date_beats_ordinal():
    (m,) = scan_mentions("The player's birth date is on 3rd June, 1986.")
    assert m.kind is K.DATE and m.value == DateValue(3, 6, 1986)


@pytest.mark.parametrize("text,expected", [
    ("With $116,111,561 prize money, he is the 3rd highest", [(K.CURRENCY, "$116,111,561"), (K.ORDINAL, "3rd")]),
    ("a height of 1.85 meters.", [(K.MEASURED, "1.85 meters")]),
    ("1.85m tall", [(K.MEASURED, "1.85m")]),
    ("about two hours", [(K.MEASURED, "two hours")]),
    ("grew 35% or thirty five percent", [(K.PERCENTAGE, "35%"), (K.PERCENTAGE, "thirty five percent")]),
    ("a $116.111561e6 prize", [(K.CURRENCY, "$116.111561e6")]),
    ("roughly 2.5e3 units", [(K.SCIENTIFIC, "2.5e3")]),
    ("between 31-43", [(K.CARDINAL_DIGITS, "31"), (K.CARDINAL_DIGITS, "43")]),
    ("scored 1-3 on 12-12-2022 and -2", [(K.CARDINAL_DIGITS, "1"), (K.CARDINAL_DIGITS, "3"),
                                          (K.DATE, "12-12-2022"), (K.NEGATIVE, "-2")]),
    ("minus 3 degrees and negative five", [(K.NEGATIVE, "minus 3"), (K.NEGATIVE, "negative five")]),
    ("the one with the second highest", [(K.ORDINAL, "second")]),
    ("two and three", [(K.CARDINAL_WORDS, "two"), (K.CARDINAL_WORDS, "three")]),
    ("at 14:30 sharp", [(K.TIME, "14:30")]),
    ("speeds of 80 km/h", [(K.MEASURED, "80 km/h")]),
    ("version v1.2 of H2", []),
])
def test_scan_cases(text, expected):
    assert kinds(text) == expected


def test_spans_are_exact_and_disjoint():
    text = "Hulk earned $245.4 million on June 20, 2003, about two hours and 35% more than -3 units."
    ms = scan_mentions(text)
    last = 0
    for m in ms:
        assert text[m.start:m.end] == m.surface
        assert m.start >= last and m.end > m.start
        last = m.end
    for m in ms:
        if m.kind is K.NEGATIVE:
            assert m.value.sign < 0
            assert m.surface.lower().startswith(("-", "minus", "negative"))


def test_value_equal_words_and_digits():
    assert parse_mention("two").value == parse_mention("2").value == words_to_numeral("two")


def test_rendering_keeps_format():
    (m,) = scan_mentions("a $137 million budget")
    assert m.render(NumericValue.of(150_000_000)) == "$150 million"
    (d,) = scan_mentions("on June 20, 2003")
    assert d.render(DateValue(1, 2, 2004)) == "February 1, 2004"


_template_values = st.one_of(
    st.integers(min_value=-10**9, max_value=10**9),
    st.decimals(min_value=0, max_value=10**6, places=2, allow_nan=False, allow_infinity=False),
)


@given(_template_values)
def test_rescan_is_idempotent(x):
    v = NumericValue.of(x)
    text = f"It measured {v.plain()} meters and cost ${abs(v).plain()} while {numeral_to_words(abs(v))} people came."
    first = scan_mentions(text)
    assert scan_mentions(text) == first
    rebuilt = "".join(
        text[(first[i - 1].end if i else 0):m.start] + m.render() for i, m in enumerate(first)
    ) + text[first[-1].end:]
    again = scan_mentions(rebuilt)
    assert [(m.kind, m.value, m.unit) for m in again] == [(m.kind, m.value, m.unit) for m in first]
