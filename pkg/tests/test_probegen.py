import json
import random
import re
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from numprobe.corpus import Corpus, Hypothesis, Label, Table, load_dataset
from numprobe.numparse import (MentionKind, NumericValue, integer_to_words, convert_unit, default_catalog, parse_number,
                               scan_mentions)
from numprobe.probegen import (GenerationConfig, Mode, NoApplicableMention, Probe, apply_cell_edits,
                               apply_edits, derive_seed, gen_approximation, gen_arithmetic, gen_comparison,
                               gen_counterfactual, gen_heterogeneous, gen_negative, gen_numeration, gen_range,
                               gen_scale, gen_sorting, gen_wordproblem, generate_all, generate_for,
                               read_probes, revert_cell_edits, revert_edits, validate, write_probes)
from numprobe.probegen.sense import parse_range, range_bounds, render_range
from numprobe.taxonomy import Level, ReasoningType

RT = ReasoningType
DATA = Path(__file__).parent / "data"
CFG = GenerationConfig()


@pytest.fixture(scope="module")
def corpus():
    return load_dataset(DATA / "fixture.jsonl")


@pytest.fixture(scope="module")
def probes(corpus):
    return generate_all(corpus, CFG)


def hyp(corpus, hid):
    return next(h for h in corpus.hypotheses if h.id == hid)


def run(gen, corpus, hid, mode):
    h = hyp(corpus, hid)
    return gen(h, corpus.tables.get(h.table_id), mode, CFG)


def one(ps, submode=None):
    ps = [p for p in ps if submode is None or p.submode == submode]
    assert ps, f"no probe for submode {submode}"
    return ps[0]


def adhoc(text, label="entail", table=None, answer=None):
    return Hypothesis("adhoc", text, table.id if table else "t", Label(label.capitalize()), answer=answer)


def value_of(surface):
    (m,) = scan_mentions(surface)
    return m.value.to_fraction()


# taxonomy --------------------------------------------------------------------

def test_levels():
    expect = {RT.NUMERATION: "R1", RT.HETEROGENEOUS: "R1", RT.NEGATIVE: "R1", RT.SCALE: "R2",
              RT.COMPARISON: "R2", RT.APPROXIMATION: "R2", RT.RANGE: "R2", RT.SORTING: "R3",
              RT.ARITHMETIC: "R3", RT.WORD_PROBLEM: "R4", RT.COUNTERFACTUAL: "R4"}
    assert {t: t.level.value for t in RT} == expect
    assert len(RT) == 11 and set(Level) == {Level.R1, Level.R2, Level.R3, Level.R4}


# numeration -----------------------------------------------------------------

def test_numeration_preserve_golden(corpus):
    p = one(run(gen_numeration, corpus, "nadal-01", Mode.PRESERVE))
    assert p.text == "Born in nineteen eighty six, Nadal is age thirty seven currently."
    assert p.expected_label is Label.ENTAIL and not p.flip


def test_numeration_flip_of_112_stays_in_window():
    t = Table.from_dict({"id": "t", "headers": ["k", "v"], "rows": [["a", "1"]]})
    h = adhoc("The film runs 112 minutes.", table=t)
    seen = set()
    for seed in range(40):
        cfg = GenerationConfig(master_seed=seed)
        for p in gen_numeration(h, t, Mode.FLIP, cfg):
            (e,) = p.edits
            assert re.fullmatch(r"[a-z -]+ minutes", e.new), e.new
            v = parse_number(e.new.removesuffix(" minutes"))
            assert 56 <= v.to_fraction() <= 168 and v != NumericValue.of(112)
            seen.add(v)
    assert len(seen) > 10


def test_numeration_flip_windows_on_fixture(probes):
    for p in probes.probes:
        if p.type is RT.NUMERATION and p.flip:
            for e in p.edits:
                if e.rule == "numeration.resample":
                    x, y = value_of(e.old), value_of(e.new)
                    assert y != x and abs(y - x) <= abs(x) / 2


def test_numeration_requires_cardinal():
    with pytest.raises(NoApplicableMention):
        gen_numeration(adhoc("Hulk was directed by Ang Lee."), None, Mode.PRESERVE, CFG)


# heterogeneous ---------------------------------------------------------------

def test_heterogeneous_date_preserve_golden(corpus):
    p = one(run(gen_heterogeneous, corpus, "nadal-02", Mode.PRESERVE))
    assert p.text == "The player's birth date is on 03-06-1986."


def test_heterogeneous_date_flip_window(corpus):
    for seed in range(30):
        h = hyp(corpus, "nadal-02")
        p = one(gen_heterogeneous(h, None, Mode.FLIP, GenerationConfig(master_seed=seed)))
        m = re.fullmatch(r"The player's birth date is on (\d\d)-(\d\d)-(\d{4})\.", p.text)
        assert m, p.text
        d, mo, y = map(int, m.groups())
        assert abs(y - 1986) <= 15 and (d, mo, y) != (3, 6, 1986)


def test_heterogeneous_big_number_scientific(corpus):
    p = one(run(gen_heterogeneous, corpus, "nadal-03", Mode.PRESERVE))
    assert "$116.111561e6" in p.text
    assert parse_number("116.111561e6") == NumericValue.of(116111561)


# negative --------------------------------------------------------------------

def test_negative_preserve_and_flip(corpus):
    pre = one(run(gen_negative, corpus, "company-01", Mode.PRESERVE))
    flip = one(run(gen_negative, corpus, "company-01", Mode.FLIP))
    assert pre.text in ("The company's monthly closing resulted in minus 5 million USD.",
                        "The company's monthly closing resulted in negative 5 million USD.")
    assert flip.text == "The company's monthly closing resulted in 5 million USD."
    assert (pre.expected_label, flip.expected_label) == (Label.ENTAIL, Label.CONTRADICT)


def test_negative_words_alternate_over_seeds(corpus):
    h = hyp(corpus, "company-01")
    words = {one(gen_negative(h, None, Mode.PRESERVE, GenerationConfig(master_seed=s))).edits[0].new.split()[0]
             for s in range(12)}
    assert words == {"minus", "negative"}


def test_negative_requires_negative():
    with pytest.raises(NoApplicableMention):
        gen_negative(adhoc("no negatives here 5"), None, Mode.PRESERVE, CFG)


# scale -----------------------------------------------------------------------

def test_scale_conversion_preserve_golden(corpus):
    ps = run(gen_scale, corpus, "nadal-04", Mode.PRESERVE)
    assert one(ps, "convert-preserve").text == "Rafael Nadal has a height of 185 centimeters."
    alias = one(ps, "map-preserve")
    assert value_of(alias.edits[0].new) == Fraction("1.85")


def test_scale_conversion_flip_is_corrupted(corpus):
    cat = default_catalog()
    true_ft = convert_unit(NumericValue.of("1.85"), "meter", "foot", cat).to_fraction()
    assert float(true_ft) == pytest.approx(6.0696, abs=1e-4)  # the 6.07 ft anchor
    for seed in range(25):
        h = hyp(corpus, "nadal-04")
        p = one(gen_scale(h, None, Mode.FLIP, GenerationConfig(master_seed=seed)), "convert-flip")
        (m,) = [m for m in scan_mentions(p.edits[0].new)]
        assert m.unit == "foot"
        ratio = m.value.to_fraction() / true_ft
        slack = Fraction(1, 100)  # rendering to two decimals
        assert Fraction("0.5") - slack <= ratio <= Fraction("0.9") + slack or \
            Fraction("1.1") - slack <= ratio <= Fraction("1.5") + slack


def test_scale_mapping_flip_changes_family(corpus):
    cat = default_catalog()
    for seed in range(10):
        h = hyp(corpus, "nadal-04")
        p = one(gen_scale(h, None, Mode.FLIP, GenerationConfig(master_seed=seed)), "map-flip")
        (m,) = scan_mentions(p.edits[0].new)
        assert m.value == NumericValue.of("1.85")
        assert cat.unit(m.unit).family != cat.unit("meter").family


# comparison ------------------------------------------------------------------

def test_comparison_modes(corpus):
    fact = 2001  # "Turned pro" in the table
    pre = one(run(gen_comparison, corpus, "nadal-05", Mode.PRESERVE), "number-preserve")
    m = re.fullmatch(r"After the year (\d{4}), the player Nadal turned pro\.", pre.text)
    assert m and int(m.group(1)) < fact and int(m.group(1)) != 2000
    flips = run(gen_comparison, corpus, "nadal-05", Mode.FLIP)
    assert one(flips, "word-flip").text == "Before the year 2000, the player Nadal turned pro."
    both = one(flips, "both-flip")
    m = re.fullmatch(r"Before the year (\d{4}), the player Nadal turned pro\.", both.text)
    assert m and not fact < int(m.group(1))


def test_comparison_margin_is_ten_percent(probes, corpus):
    for p in probes.probes:
        if p.type is RT.COMPARISON and p.submode == "number-preserve":
            assert "fact" in p.meta
            fact = Fraction(p.meta["fact"])
            (e,) = p.edits
            x, y = value_of(e.old), value_of(e.new)
            assert abs(y - fact) >= abs(x - fact) + abs(x - fact) / 10 - Fraction(1, 10**9)


def test_comparison_needs_signal_word(corpus):
    h = hyp(corpus, "hulk-05")
    with pytest.raises(NoApplicableMention):
        gen_comparison(h, corpus.tables["hulk"], Mode.PRESERVE, CFG)


# approximation ---------------------------------------------------------------

def test_approximation_preserve_golden(corpus):
    p = one(run(gen_approximation, corpus, "nadal-03", Mode.PRESERVE))
    assert p.text.startswith(("With about $116,000,000 prize money", "With approximately $116,000,000 prize money"))


def test_approximation_flip_is_wrong_rounding(corpus):
    for seed in range(20):
        h = hyp(corpus, "hulk-02")
        p = one(gen_approximation(h, None, Mode.FLIP, GenerationConfig(master_seed=seed)))
        m = re.fullmatch(r"The movie has a length of (?:about|approximately) (\d+) minutes\.", p.text)
        assert m, p.text
        v = int(m.group(1))
        assert v % 10 == 0 and v != 140 and abs(v - 138) >= 10 and abs(v - 140) <= 30
        assert p.expected_label is Label.CONTRADICT


def test_approximation_skips_round_values():
    h = adhoc("The club has 5000 members.")
    with pytest.raises(NoApplicableMention, match="already round"):
        gen_approximation(h, None, Mode.PRESERVE, CFG)


def test_approximation_skips_single_digits():
    with pytest.raises(NoApplicableMention):
        gen_approximation(adhoc("She owns 7 cats."), None, Mode.PRESERVE, CFG)


# range -----------------------------------------------------------------------

def test_range_contains_original(probes):
    found = 0
    for p in probes.probes:
        if p.type is RT.RANGE:
            (e,) = p.edits
            (m,) = scan_mentions(e.old)
            lo, hi = parse_range(e.new, m)
            assert lo < m.value < hi, (e.old, e.new)
            found += 1
    assert found > 0


def test_range_word_form_for_nadal(corpus):
    p = one(run(gen_range, corpus, "nadal-10", Mode.PRESERVE))
    m = re.fullmatch(r"Nadal is between ([a-z -]+) and ([a-z -]+) years old\.", p.text)
    a, b = parse_number(m.group(1)).to_fraction(), parse_number(m.group(2)).to_fraction()
    # radius drawn from 10-50% of 37
    assert Fraction(37 * 10, 100) <= 37 - a <= Fraction(37 * 50, 100)
    assert Fraction(37 * 10, 100) <= b - 37 <= Fraction(37 * 50, 100)


def test_range_small_numbers_use_integer_radius():
    for seed in range(40):
        lo, hi = range_bounds(random.Random(seed), NumericValue.of(7), 0, CFG)
        assert 1 <= 7 - lo <= 5 and 1 <= hi - 7 <= 5
    (m,) = scan_mentions("7")
    assert render_range(m, Fraction(5), Fraction(9), 0) == "between 5-9"
    (m,) = scan_mentions("7 kg")
    assert render_range(m, Fraction(5), Fraction(9), 0) == "between 5-9 kg"


def test_range_lower_bound_stays_positive():
    assert range_bounds(random.Random(0), NumericValue.of(1), 0, CFG) is None
    for seed in range(20):
        lo, hi = range_bounds(random.Random(seed), NumericValue.of("1.5"), 1, CFG)
        assert 0 < lo < Fraction(3, 2) < hi


def test_range_containment_example():
    (m,) = scan_mentions("$137")
    lo, hi = parse_range("between $130-$245.4".replace("-$", "-"), m)
    assert lo <= NumericValue.of(137) <= hi


def test_range_has_no_flip(corpus):
    h = hyp(corpus, "nadal-10")
    with pytest.raises(ValueError):
        generate_for(h, None, RT.RANGE, Mode.FLIP, CFG)


# sorting ---------------------------------------------------------------------

def test_sorting_flip_takes_ranked_value(corpus):
    p = one(run(gen_sorting, corpus, "anglee-01", Mode.FLIP))
    m = re.search(r"the (\w+) highest box office of Ang Lee's films with \$([\d.]+) million", p.text)
    rank = {"first": 1, "third": 3, "fourth": 4, "fifth": 5}[m.group(1)]
    column = [135, 213.5, 245.4, 178.1, 609]
    by_count = [v for v in column if sum(w > v for w in column) == rank - 1]  # brute-force oracle
    assert float(m.group(2)) == by_count[0]


def test_sorting_preserve_keeps_rank(corpus):
    p = one(run(gen_sorting, corpus, "company-02", Mode.PRESERVE))
    assert p.text == "The revenue in the 1st quarter of 2018 was $5.2 million."


def test_sorting_rank_beyond_column():
    t = Table.from_dict({"id": "t", "headers": ["Film", "Box office"],
                         "rows": [["A", "$10 million"], ["B", "$20 million"]]})
    h = Hypothesis("x", "A had the ninth highest box office with $10 million.", "t", Label.ENTAIL)
    with pytest.raises(NoApplicableMention):
        gen_sorting(h, t, Mode.FLIP, CFG)


# arithmetic / word problems --------------------------------------------------

def test_arithmetic(corpus):
    pre = one(run(gen_arithmetic, corpus, "finance-01", Mode.PRESERVE))
    assert pre.text == "The change in revenue from 2018 to 2019 was 150."
    for seed in range(20):
        h = hyp(corpus, "finance-01")
        p = one(gen_arithmetic(h, None, Mode.FLIP, GenerationConfig(master_seed=seed)))
        v = value_of(p.edits[0].new)
        r = v / 150
        assert v != 150 and (Fraction("0.8") - Fraction(1, 150) <= r <= Fraction("0.95") + Fraction(1, 150)
                             or Fraction("1.05") - Fraction(1, 150) <= r <= Fraction("1.2") + Fraction(1, 150))


def test_arithmetic_needs_metadata(corpus):
    with pytest.raises(NoApplicableMention):
        run(gen_arithmetic, corpus, "hulk-05", Mode.PRESERVE)


def test_wordproblem_flip_uses_column(corpus):
    p = one(run(gen_wordproblem, corpus, "pizza-01", Mode.FLIP))
    assert int(p.edits[0].new) in {7, 30, 18}
    assert p.text.endswith("pizzas were sold on Monday.")


# counterfactual tables -------------------------------------------------------

def test_counterfactual_tables(corpus, probes):
    cf = [p for p in probes.probes if p.type is RT.COUNTERFACTUAL]
    assert cf
    for p in cf:
        base = corpus.tables[hyp(corpus, p.base_id).table_id]
        new = probes.tables[p.table_ref]
        assert p.text == hyp(corpus, p.base_id).text
        assert revert_cell_edits(new, p.edits, base.id).rows == base.rows
        assert apply_cell_edits(base, p.edits, new.id).rows == new.rows


# shared invariants -----------------------------------------------------------

def test_fixture_probes_validate(corpus, probes):
    assert validate(probes.probes, corpus, probes.tables, CFG) == []
    assert not [s for s in probes.skips if s.reason.startswith("error:")]


def test_every_type_and_mode_is_produced(probes):
    kinds = {(p.type, p.flip) for p in probes.probes}
    for t in RT:
        assert (t, False) in kinds, t
        if t is not RT.RANGE:
            assert (t, True) in kinds, t


def test_label_algebra_and_reversal(corpus, probes):
    base = {h.id: h for h in corpus.hypotheses}
    for p in probes.probes:
        h = base[p.base_id]
        assert p.expected_label is (h.label.opposite if p.flip else h.label)
        assert revert_edits(p.text, p.edits) == h.text
        assert apply_edits(h.text, p.edits) == p.text
        spans = sorted(e.span for e in p.edits if e.target == "text")
        assert all(a[1] <= b[0] for a, b in zip(spans, spans[1:]))


def test_flips_only_from_entailed_bases(corpus, probes):
    # comparison flips are re-checked against the table, so they may start from either label
    base = {h.id: h for h in corpus.hypotheses}
    assert all(base[p.base_id].label is Label.ENTAIL for p in probes.probes
               if p.flip and p.type is not RT.COMPARISON)
    assert any(base[p.base_id].label is Label.CONTRADICT for p in probes.probes if p.type is RT.COMPARISON)


def test_determinism(corpus):
    a = [p.to_dict() for p in generate_all(corpus, GenerationConfig(master_seed=11)).probes]
    b = [p.to_dict() for p in generate_all(corpus, GenerationConfig(master_seed=11)).probes]
    c = [p.to_dict() for p in generate_all(corpus, GenerationConfig(master_seed=12)).probes]
    assert a == b and a != c


def test_seed_derivation_is_stable():
    s = derive_seed(1, "h", RT.SCALE, "flip", 0)
    assert s == derive_seed(1, "h", RT.SCALE, "flip", 0)
    assert s != derive_seed(1, "h", RT.SCALE, "flip", 1)
    assert 0 <= s < 2**64


def test_empty_corpus():
    ps = generate_all(Corpus({}, []), CFG)
    assert ps.probes == [] and ps.tables == {} and ps.skips == []


def test_types_can_be_disabled(corpus):
    ps = generate_all(corpus, GenerationConfig(enabled_types=frozenset({RT.NEGATIVE})))
    assert {p.type for p in ps.probes} == {RT.NEGATIVE}


@pytest.mark.parametrize("kw", [{"flip_halfwidth": Decimal("1")}, {"flip_halfwidth": Decimal("0")},
                                {"range_small_radius": (0, 5)}, {"master_seed": -1},
                                {"max_probes_per_hypothesis": 0}])
def test_config_rejects_bad_values(kw):
    with pytest.raises(ValueError):
        GenerationConfig(**kw)


def test_config_from_mapping():
    cfg = GenerationConfig.from_mapping({"master_seed": "5", "enabled_types": "scale,range",
                                         "flip_halfwidth": "0.25"})
    assert cfg.master_seed == 5 and cfg.flip_halfwidth == Decimal("0.25")
    assert cfg.enabled_types == {RT.SCALE, RT.RANGE}
    with pytest.raises(ValueError):
        GenerationConfig.from_mapping({"nope": "1"})


def test_probe_file_round_trip(corpus, probes, tmp_path):
    out = tmp_path / "p.jsonl"
    tpath = write_probes(probes.probes, out, CFG, probes.tables)
    header, back = read_probes(out)
    assert header["seed"] == CFG.master_seed
    assert [p.to_dict() for p in back] == [p.to_dict() for p in probes.probes]
    assert tpath.exists()


def test_validator_catches_tampering(corpus, probes):
    p = next(p for p in probes.probes if p.type is RT.NEGATIVE and p.flip)
    bad = Probe(**{**p.__dict__, "expected_label": Label.ENTAIL})
    found = validate([bad], corpus, probes.tables, CFG)
    assert [v.check for v in found] == ["label-algebra"]
    moved = Probe(**{**p.__dict__, "text": p.text + " "})
    assert validate([moved], corpus, probes.tables, CFG)


# property: synthetic hypotheses ----------------------------------------------

SYN_TABLE = Table.from_dict({"id": "syn", "title": "Shops", "headers": ["Shop", "Sales", "Staff", "Opened"],
                             "rows": [["North", "1,250", "14", "1998"], ["South", "980", "9", "2004"],
                                      ["East", "2,430", "31", "2011"], ["West", "640", "6", "1987"]]})

TEMPLATES = [
    "North sold {n} units last year.",
    "The shop has {n} staff and opened in {y}.",
    "Sales at East were more than {n}.",
    "The West store is {m} meters wide.",
    "Profit fell to -{n} USD on {d} June, {y}.",
    "About {p}% of {n} visitors bought something.",
    "North had the second highest sales with {n}.",
    "The parcel weighed {m} kg.",
    "Sales were less than {n} units but more than {d} units.",
    "The store has {w} employees.",
]


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(TEMPLATES), st.integers(1, 99999), st.integers(1950, 2030),
       st.decimals(min_value=Decimal("0.1"), max_value=Decimal("999"), places=2), st.integers(1, 28),
       st.integers(1, 99), st.sampled_from(["entail", "contradict"]), st.integers(0, 2**32))
def test_synthetic_probes_validate(template, n, y, m, d, pct, label, seed):
    text = template.format(n=n, y=y, m=m, d=d, p=pct, w=integer_to_words(n % 1000 or 1))
    h = Hypothesis("syn-1", text, "syn", Label(label.capitalize()))
    corpus = Corpus({"syn": SYN_TABLE}, [h])
    cfg = GenerationConfig(master_seed=seed)
    ps = generate_all(corpus, cfg)
    assert not [s for s in ps.skips if s.reason.startswith("error:")], ps.skips
    assert validate(ps.probes, corpus, ps.tables, cfg) == []
    for p in ps.probes:
        assert revert_edits(p.text, p.edits) == text
