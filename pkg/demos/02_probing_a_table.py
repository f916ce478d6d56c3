"""
Probing hypotheses about a table
================================

Load a small corpus, build preserve and flip probes for each reasoning
type, look at the edits, and confirm every probe passes validation.
"""
from pathlib import Path

from numprobe.corpus import load_dataset
from numprobe.probegen import GenerationConfig, Mode, gen_numeration, gen_scale, generate_all, validate
from numprobe.taxonomy import ReasoningType

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
corpus = load_dataset(DATA / "fixture.jsonl")
print(len(corpus.hypotheses), "hypotheses over", len(corpus.tables), "tables")

# One hypothesis, two generators.  Preserve keeps the label, flip inverts it.
h = next(x for x in corpus.hypotheses if x.id == "nadal-01")
cfg = GenerationConfig(master_seed=0)
print("\nbase: ", h.text, f"[{h.label.value}]")
for p in gen_numeration(h, None, Mode.PRESERVE, cfg) + gen_numeration(h, None, Mode.FLIP, cfg):
    print(f"{p.submode:>9}: {p.text} [{p.expected_label.value}]")

h = next(x for x in corpus.hypotheses if x.id == "nadal-04")
for p in gen_scale(h, None, Mode.PRESERVE, cfg):
    print(f"{p.submode:>16}: {p.text}")

# Every probe records its edits, so the base text can always be rebuilt.
p = gen_scale(h, None, Mode.FLIP, cfg)[0]
for e in p.edits:
    print(f"\n{e.rule}: {e.old!r} -> {e.new!r} at {e.span}")

# The whole corpus at once.  Counts per type, then the validator.
ps = generate_all(corpus, cfg)
print()
for rtype in ReasoningType:
    pre = sum(1 for p in ps.probes if p.type is rtype and not p.flip)
    flip = sum(1 for p in ps.probes if p.type is rtype and p.flip)
    print(f"{rtype.value:>14}  preserve={pre:<3} flip={flip}")

violations = validate(ps.probes, corpus, ps.tables)
print("\nprobes:", len(ps.probes), " skipped:", len(ps.skips), " violations:", len(violations))

# Counterfactual probes leave the sentence alone and swap cells in a copy of
# the table, so the same hypothesis now contradicts its premise.
cf = next(p for p in ps.probes if p.type is ReasoningType.COUNTERFACTUAL and p.table_ref)
print("\n", cf.text, f"[{cf.expected_label.value}]")
for e in cf.edits:
    print(f"  cell {e.span}: {e.old} -> {e.new}")
edited = ps.tables[cf.table_ref]
print("  edited row:", [c.raw for c in edited.rows[cf.meta["cell"][0]]])
