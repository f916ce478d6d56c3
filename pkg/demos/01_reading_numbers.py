"""
Reading numbers out of sentences
================================

A walk through the number layer: spotting mentions, parsing them exactly,
and rendering them back in another form.
"""

# The scanner finds every number-like span in a sentence and tags its kind.
from numprobe.numparse import scan_mentions

sentence = "With $116,111,561 prize money, he is the 3rd highest earning all-time player."
for m in scan_mentions(sentence):
    print(f"{m.kind.value:>12}  {m.surface!r:>18}  value={m.value}  unit={m.unit}")

# Values are exact.  Decimals never pass through binary floats.
from numprobe.numparse import parse_number

print(parse_number("1.85"), parse_number("thirty seven"), parse_number("116.111561e6"))

# Words and digits convert both ways.
from numprobe.numparse import integer_to_words, words_to_numeral, year_to_words

print(integer_to_words(1986), "|", year_to_words(1986), "|", words_to_numeral("two thousand and twelve"))

# Ordinals come in a suffix style and a word style.
from numprobe.numparse import format_ordinal, parse_ordinal

print(format_ordinal(3), format_ordinal(3, "word"), parse_ordinal("twenty-first"), format_ordinal(101, "word"))

# Dates keep the pattern they were read from, so they can be re-rendered.
from numprobe.numparse import format_date, parse_date

d = parse_date("3rd June, 1986")
print(d.source_format, "->", format_date(d, "dmy-hyphen"), "/", format_date(d, "monthname-day-comma-year"))

# Unit conversion uses rational factors from the bundled catalog.
from numprobe.numparse import NumericValue, convert_unit

height = NumericValue.of("1.85")
print(convert_unit(height, "meter", "centimeter"), "cm")
print(round(float(convert_unit(height, "meter", "foot").to_fraction()), 4), "ft")

# Rounding to a coarser magnitude is what approximation probes build on.
from numprobe.numparse import round_magnitude

for v in (138, 4321, 116111561):
    print(v, "->", round_magnitude(NumericValue.of(v)))
