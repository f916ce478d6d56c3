"""TNLI corpora: loading, QA recasting, mention linking and candidate filtering."""

from .errors import (CorpusError, DanglingTableRef, DuplicateId, InvalidArithMetadata, NoNumericCells,
                     ParseError, TableShapeError, UnsupportedQuestionForm)
from .filters import (PositionIndicator, SignalWord, filter_candidates, find_position_indicators,
                      find_signal_words, has_trigger)
from .io import Corpus, dump_hypotheses, dump_tables, load_dataset, load_tables, recast_file
from .linking import (MentionLink, NumericColumn, comparable_value, extract_numeric_column,
                      ground_mention, link_mentions, rank_value)
from .model import (ArithMetadata, Cell, Hypothesis, Label, Operation, Orientation, Table,
                    parse_label)
from .recast import RecastResult, recast_qa_to_nli, recast_with_trace

__all__ = [
    "ArithMetadata", "Cell", "Corpus", "CorpusError", "DanglingTableRef", "DuplicateId", "Hypothesis",
    "InvalidArithMetadata", "Label", "MentionLink", "NoNumericCells", "NumericColumn", "Operation",
    "Orientation", "ParseError", "PositionIndicator", "RecastResult", "SignalWord", "Table",
    "TableShapeError", "UnsupportedQuestionForm", "comparable_value", "dump_hypotheses", "dump_tables",
    "extract_numeric_column", "filter_candidates", "find_position_indicators", "find_signal_words",
    "ground_mention", "has_trigger", "link_mentions", "load_dataset", "load_tables", "parse_label",
    "rank_value", "recast_file", "recast_qa_to_nli", "recast_with_trace",
]
