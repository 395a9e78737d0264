"""Two-dimensional typewriter automata: simulators, closure constructions and bounded oracles."""

from .grid import Word2D, cell_at, enumerate_words, format_word, parse_word, reverse_rows, row_concat
from .machines import Kind, Machine, Move, ValidationReport, format_machine, parse_machine, validate
from .simulate import RunOutcome, accepts, bottom_chain_analysis, run, trace
from .constructions import (
    Banf,
    complement_tdfa,
    reverse_tfa,
    rfa_to_tfa,
    row_concat_tfa,
    row_step_relation,
    tfa_to_rfa,
    to_bottom_accepting,
    union_tfa,
)
from .fixtures import build_fixture, pred, random_pool

__version__ = "0.1.0"
