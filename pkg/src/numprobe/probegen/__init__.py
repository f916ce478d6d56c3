"""Label-preserving and label-flipping probes for eleven numerical reasoning types."""

from .generate import GENERATORS, MODES, ProbeSet, Skip, generate_all, generate_for
from .io import (header_record, probe_stats, read_probe_tables, read_probes, stats_csv, tables_path_for,
                 write_probes)
from .model import (EditRecord, GenerationConfig, Mode, NoApplicableMention, Probe, apply_cell_edits,
                    apply_edits, derive_seed, revert_cell_edits, revert_edits)
from .numeracy import gen_heterogeneous, gen_negative, gen_numeration
from .sense import gen_approximation, gen_comparison, gen_range, gen_scale
from .structure import (counterfactual_table, filter_counterfactual_triples, gen_arithmetic,
                        gen_counterfactual, gen_counterfactual_table, gen_sorting, gen_wordproblem)
from .validate import Violation, validate, validate_probe

__all__ = [
    "EditRecord", "GENERATORS", "GenerationConfig", "MODES", "Mode", "NoApplicableMention", "Probe",
    "ProbeSet", "Skip", "Violation", "apply_cell_edits", "apply_edits", "counterfactual_table",
    "derive_seed", "filter_counterfactual_triples", "gen_approximation", "gen_arithmetic",
    "gen_comparison", "gen_counterfactual", "gen_counterfactual_table", "gen_heterogeneous",
    "gen_negative", "gen_numeration", "gen_range", "gen_scale", "gen_sorting", "gen_wordproblem",
    "generate_all", "generate_for", "header_record", "probe_stats", "read_probe_tables", "read_probes",
    "revert_cell_edits", "revert_edits", "stats_csv", "tables_path_for", "validate", "validate_probe",
    "write_probes",
]
