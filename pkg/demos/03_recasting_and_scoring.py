"""
From questions to scores
========================

Turn question/answer pairs into hypotheses, build a prompt for a model,
and measure how accuracy moves between base hypotheses and their probes.
"""
from pathlib import Path

from numprobe.corpus import load_dataset, load_tables, recast_with_trace
from numprobe.evalkit import PromptSpec, build_prompt, evaluate, linearize, report_text, shift_pct
from numprobe.probegen import GenerationConfig, generate_all
from numprobe.taxonomy import ReasoningType

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"

# Recasting is rule based.  The trace names the rules that fired.
for q, a in [("Who directed Hulk?", "Ang Lee"),
             ("When was Hulk released?", "June 20, 2003"),
             ("Did Hulk earn more than $300 million?", "no"),
             ("In which year did Nadal turn pro?", "2001")]:
    res = recast_with_trace(q, a)
    print(f"{q:<40} -> {res.sentence}   {res.trace}")

# Tables are linearized into one line before they reach a model.
tables = load_tables(DATA / "fixture.tables.jsonl")
print("\n" + linearize(tables["hulk"]))
print("\n" + build_prompt(PromptSpec(k=0), tables["hulk"], "Hulk was released in 2003."))

# A toy "model" that trusts any sentence with digits in it.  It does fine on
# the base hypotheses and stumbles once numbers become words.
corpus = load_dataset(DATA / "fixture.jsonl")
ps = generate_all(corpus, GenerationConfig(master_seed=0))
probes = [p for p in ps.probes if p.type is ReasoningType.NUMERATION]


def digit_lover(text):
    return "entail" if any(ch.isdigit() for ch in text) else "contradict"


base = {h.id: digit_lover(h.text) for h in corpus.hypotheses if h.id in {p.base_id for p in probes}}
probe = {p.probe_id: digit_lover(p.text) for p in probes}
print(report_text(evaluate(probes, base, probe)))

# The shift itself is a relative change: (P - H) / H * 100.
print("\n20.37 -> 28.98 gives", round(shift_pct(20.37, 28.98), 2))
