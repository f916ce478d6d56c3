"""Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.

Run with ``pytest tests/test_acceptance.py -v`` and the verdict lines appear in the
terminal output (printed outside capture).
"""
import csv
import io
import json
import random
import re
import shutil
import time
from datetime import date, timedelta
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest

from numprobe.cli import main
from numprobe.corpus import Label, load_dataset, load_tables, recast_file
from numprobe.numparse import (DATE_PATTERNS, DateValue, MentionKind, NumericValue, convert_unit, default_catalog,
                               format_date, format_ordinal, format_scientific, integer_to_words, numeral_to_words,
                               parse_date, parse_ordinal, parse_scientific, scan_mentions, words_to_numeral)
from numprobe.probegen import GenerationConfig, generate_all, read_probes, validate
from numprobe.probegen.sense import parse_range
from numprobe.taxonomy import ReasoningType as RT

DATA = Path(__file__).parent / "data"
FIXTURE = DATA / "fixture.jsonl"
TABLES = DATA / "fixture.tables.jsonl"

SHIFT_TOL = 0.1
METRIC_BUDGET_S = 1.0
GOLDEN_BUDGET_S = 1.0
PROPERTY_BUDGET_S = 30.0
ROUND_TRIP_CASES = 10_000
COMPOSE_TOL = 1e-9
RECAST_MIN_RATE = 0.90


def raw_records(path):
    return [json.loads(line) for line in Path(path).read_text().splitlines() if line.strip()]


@pytest.fixture
def verdict(capsys):
    def emit(tag, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {tag}: {'PASS' if ok else 'FAIL'} | {detail}")
        return ok
    return emit


def _value(surface):
    ms = [m for m in scan_mentions(surface) if m.kind is not MentionKind.ORDINAL]
    return ms[-1].value.to_fraction()


# 1 -------------------------------------------------------------------------------------------------------

# (setting, type, base accuracy, probe accuracy, published shift)
ANCHOR_ROWS = [
    ("flant5-zero", "Negative", "20.37", "28.98", 42.3),
    ("flant5-few", "Negative", "70.8", "84.4", 19.21),
    ("flant5-zero", "Range", "20.09", "55.87", 178.1),
    ("gpt35-zero", "Negative", "87", "89", 2.3),
]


def test_c1_metric_reproduction(tmp_path, capsys, verdict):
    t0 = time.perf_counter()
    errors = []
    for i, (setting, rtype, base, probe, want) in enumerate(ANCHOR_ROWS):
        acc = tmp_path / f"{i}.csv"
        acc.write_text(f"type,flip,acc_base,acc_probe\n{rtype},0,{base},{probe}\n")
        assert main(["eval", "--accuracies", str(acc), "--report", "csv"]) == 0
        (row,) = csv.DictReader(io.StringIO(capsys.readouterr().out))
        errors.append((setting, rtype, float(row["shift_pct"]), want))
    elapsed = time.perf_counter() - t0
    worst = max(abs(got - want) for *_, got, want in errors)
    ok = worst <= SHIFT_TOL and elapsed < METRIC_BUDGET_S
    rows = "; ".join(f"{s} {r} {got:+.2f} vs {want:+}" for s, r, got, want in errors)
    assert verdict("C1 metric reproduction", ok,
                   f"max |shift err| {worst:.3f} <= {SHIFT_TOL}; {elapsed:.3f} s < {METRIC_BUDGET_S} s; {rows}")


# 2 -------------------------------------------------------------------------------------------------------

def test_c2_golden_probes(verdict):
    t0 = time.perf_counter()
    corpus = load_dataset(FIXTURE)
    ps = generate_all(corpus, GenerationConfig())
    by = lambda hid, rtype, flip=False: [p for p in ps.probes if p.base_id == hid and p.type is rtype and p.flip == flip]
    checks = {}

    checks["numeration H1"] = any(p.text == "Born in nineteen eighty six, Nadal is age thirty seven currently."
                                  for p in by("nadal-01", RT.NUMERATION))
    checks["date H2"] = any(p.text == "The player's birth date is on 03-06-1986."
                            for p in by("nadal-02", RT.HETEROGENEOUS))
    checks["approx H3"] = any(p.text == "With about $116,000,000 prize money, he is the 3rd highest earning "
                                        "all-time player." for p in by("nadal-03", RT.APPROXIMATION))
    checks["scale H4"] = any(p.text == "Rafael Nadal has a height of 185 centimeters."
                             for p in by("nadal-04", RT.SCALE))

    ranges = by("nadal-01", RT.RANGE)
    contained = []
    for p in ranges:
        (e,) = p.edits
        (m,) = scan_mentions(e.old)
        lo, hi = parse_range(e.new, m)
        contained.append(lo <= Fraction(37) <= hi and m.value == NumericValue.of(37))
    checks["range contains 37"] = bool(contained) and all(contained)

    flips = []
    for p in ps.probes:
        if not (p.flip and p.type is RT.NUMERATION):
            continue
        for e in p.edits:
            if e.rule != "numeration.resample":
                continue  # companion digit->word rewrites keep their value
            x, y = _value(e.old), _value(e.new)
            flips.append(y != x and x - abs(x) / 2 <= y <= x + abs(x) / 2)
    checks["flips in [x±0.5x], != x"] = bool(flips) and all(flips)

    elapsed = time.perf_counter() - t0
    ok = all(checks.values()) and elapsed < GOLDEN_BUDGET_S
    detail = ", ".join(f"{k}={'ok' if v else 'MISS'}" for k, v in checks.items())
    assert verdict("C2 golden probes", ok, f"{detail}; {len(flips)} flip edits; {elapsed:.3f} s < {GOLDEN_BUDGET_S} s")


# 3 -------------------------------------------------------------------------------------------------------

def _round_trips(rng):
    fails = {"words": 0, "dates": 0, "ordinals": 0, "scientific": 0}

    for i in range(ROUND_TRIP_CASES):
        if i % 2:
            n = rng.randrange(-10**15 + 1, 10**15)
            ok = words_to_numeral(integer_to_words(n, hyphen=bool(i % 4 == 1))) == NumericValue.of(n)
        else:
            v = NumericValue.of(f"{rng.randrange(0, 10**6)}.{rng.randrange(0, 10**4):04d}".rstrip("0").rstrip("."))
            ok = words_to_numeral(numeral_to_words(v)) == v
        fails["words"] += not ok

    patterns = list(DATE_PATTERNS)
    start = date(1000, 1, 1)
    for i in range(ROUND_TRIP_CASES):
        d = start + timedelta(days=rng.randrange(0, 365 * 1000))
        pat = patterns[i % len(patterns)]
        day = None if pat == "monthname-year" else d.day
        dv = DateValue(day, d.month, d.year, pat)
        back = parse_date(format_date(dv, pat))
        fails["dates"] += not (back == dv and (back.day, back.month, back.year) == (day, d.month, d.year))

    for i in range(ROUND_TRIP_CASES):
        n = rng.randrange(1, 10**6)
        fails["ordinals"] += parse_ordinal(format_ordinal(n, "suffix" if i % 2 else "word")) != n

    for i in range(ROUND_TRIP_CASES):
        mant = rng.randrange(1, 10**9) * (-1 if i % 7 == 0 else 1)
        v = NumericValue.of(Fraction(mant) * Fraction(10) ** rng.randrange(-12, 13))
        fails["scientific"] += parse_scientific(format_scientific(v)) != v
    return fails


def _composition(rng):
    cat = default_catalog()
    fams = {}
    for u in cat.units.values():
        if not u.is_currency:
            fams.setdefault(u.family, []).append(u.id)
    worst, cases = 0.0, 0
    for fam, ids in sorted(fams.items()):
        for a, b, c in (t for t in combinations(sorted(ids), 3)):
            for _ in range(3):
                v = NumericValue.of(Fraction(rng.randrange(1, 10**6), rng.choice([1, 10, 100, 1000])))
                via = convert_unit(convert_unit(v, a, b, cat), b, c, cat).to_fraction()
                direct = convert_unit(v, a, c, cat).to_fraction()
                back = convert_unit(convert_unit(v, a, b, cat), b, a, cat).to_fraction()
                worst = max(worst, float(abs(via - direct) / abs(direct)), float(abs(back - v.to_fraction()) / v.to_fraction()))
                cases += 1
    return worst, cases


def _fixture_invariants():
    corpus = load_dataset(FIXTURE)
    ps = generate_all(corpus, GenerationConfig())
    violations = [f"{v.probe_id}:{v.check}" for v in validate(ps.probes, corpus, ps.tables)]
    hyps = {h.id: h for h in corpus.hypotheses}
    raw_tables = {t["id"]: t for t in raw_records(TABLES)}
    oracle = {"sort": 0, "arith": 0}

    for p in ps.probes:
        want = hyps[p.base_id].label if not p.flip else (Label.CONTRADICT if hyps[p.base_id].label is Label.ENTAIL
                                                         else Label.ENTAIL)
        if p.expected_label is not want:
            violations.append(f"{p.probe_id}:oracle-label")

        if p.type is RT.SORTING and p.flip:
            rows = raw_tables[hyps[p.base_id].table_id]["rows"]
            col = [_value(r[p.meta["column"]]) for r in rows]
            ranked = sorted(col, reverse=p.meta["direction"] == "desc")
            oracle["sort"] += 1
            if _value(p.text) != ranked[p.meta["rank"] - 1]:
                violations.append(f"{p.probe_id}:oracle-sort")

        if p.type is RT.ARITHMETIC:
            deriv = next(r for r in raw_records(FIXTURE) if r["id"] == p.base_id)["derivation"]
            ops = [Fraction(o[0]) for o in deriv["operands"]]
            truth = {"add": lambda: sum(ops), "subtract": lambda: ops[0] - sum(ops[1:]),
                     "multiply": lambda: ops[0] * ops[1], "divide": lambda: ops[0] / ops[1]}[deriv["op"]]()
            oracle["arith"] += 1
            stated = _value(p.edits[0].new) if p.flip else _value(hyps[p.base_id].text)
            if (stated == truth) == p.flip:
                violations.append(f"{p.probe_id}:oracle-arith")
    return ps, violations, oracle


def test_c3_property_suite(verdict):
    t0 = time.perf_counter()
    rng = random.Random(20240101)
    fails = _round_trips(rng)
    worst, cases = _composition(rng)
    ps, violations, oracle = _fixture_invariants()
    elapsed = time.perf_counter() - t0
    n_hyp = len(load_dataset(FIXTURE).hypotheses)
    ok = (not any(fails.values()) and worst <= COMPOSE_TOL and not violations and n_hyp == 50 and all(oracle.values())
          and elapsed < PROPERTY_BUDGET_S)
    rt = ", ".join(f"{k} {ROUND_TRIP_CASES - v}/{ROUND_TRIP_CASES}" for k, v in fails.items())
    assert verdict("C3 property suite", ok,
                   f"round trips: {rt}; unit composition worst rel err {worst:.2e} <= {COMPOSE_TOL:g} over {cases} "
                   f"chains; {len(ps.probes)} probes on {n_hyp} hypotheses ({oracle['sort']} sort and {oracle['arith']} arithmetic "
                   f"oracle checks), {len(violations)} violations "
                   f"{violations[:3]}; {elapsed:.2f} s < {PROPERTY_BUDGET_S} s")


# 4 -------------------------------------------------------------------------------------------------------

def _generate(tmp, name, seed, capsys):
    out = tmp / name
    assert main(["generate", "--in", str(FIXTURE), "--out", str(out), "--seed", str(seed)]) == 0
    capsys.readouterr()
    return out


def test_c4_determinism(tmp_path, capsys, verdict):
    shutil.copy(TABLES, tmp_path / "fixture.tables.jsonl")
    a = _generate(tmp_path, "a.jsonl", 7, capsys)
    b = _generate(tmp_path, "b.jsonl", 7, capsys)
    c = _generate(tmp_path, "c.jsonl", 8, capsys)
    same = a.read_bytes() == b.read_bytes()
    pa = {p.probe_id: p.text for p in read_probes(a)[1]}
    pc = {p.probe_id: p.text for p in read_probes(c)[1]}
    changed = sum(1 for k in pa.keys() & pc.keys() if pa[k] != pc[k]) + len(pa.keys() ^ pc.keys())
    ok = same and changed >= 1
    assert verdict("C4 determinism", ok,
                   f"seed 7 twice byte-identical={same} ({a.stat().st_size} bytes); seed 7 vs 8 differs in "
                   f"{changed} probes (need >= 1)")


# 5 -------------------------------------------------------------------------------------------------------

def test_c5_coverage(tmp_path, capsys, verdict):
    out = _generate(tmp_path, "p.jsonl", 0, capsys)
    _, probes = read_probes(out)
    pre = {p.type for p in probes if not p.flip}
    flip = {p.type for p in probes if p.flip}
    need_flip = set(RT) - {RT.RANGE}
    code = main(["validate", "--in", str(out), "--dataset", str(FIXTURE)])
    n_viol = json.loads(capsys.readouterr().out)["violations"]
    ok = pre == set(RT) and need_flip <= flip and code == 0 and n_viol == 0
    missing = sorted(t.value for t in (set(RT) - pre) | (need_flip - flip))
    assert verdict("C5 coverage", ok,
                   f"preserve {len(pre)}/11 types, flip {len(flip & need_flip)}/10 types, missing {missing}; "
                   f"validate exit {code}, {n_viol} violations")


# 6 -------------------------------------------------------------------------------------------------------

_NEG = re.compile(r"\b(not|never|no)\b|n't\b", re.I)


def test_c6_recasting(verdict):
    records = list(raw_records(DATA / "recast20.jsonl"))
    hyps, skipped = recast_file(DATA / "recast20.jsonl", load_tables(TABLES))
    answers = {r["id"]: r["answer"] for r in records}
    good = verbatim = 0
    for h in hyps:
        ans = answers[h.id]
        ends = h.text.endswith(".") and "?" not in h.text
        if ans.lower() in ("yes", "no"):
            hit = bool(_NEG.search(h.text)) == (ans.lower() == "no")
        else:
            hit = ans in h.text
            verbatim += hit and ends
        good += hit and ends
    unsupported_ok = all(s["id"] not in {h.id for h in hyps} for s in skipped) and \
        len(hyps) + len(skipped) == len(records) == 20
    rate = good / len(records)
    ok = rate >= RECAST_MIN_RATE and unsupported_ok
    assert verdict("C6 recasting", ok,
                   f"{good}/{len(records)} = {rate:.0%} >= {RECAST_MIN_RATE:.0%} (wh answers verbatim: {verbatim}, "
                   f"yes/no by polarity); skipped {[s['id'] for s in skipped]} unmangled={unsupported_ok}")
