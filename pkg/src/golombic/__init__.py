"""Golombic and Levine sequences over the free group on the integers, computed
exactly through Vardi's integer-valued polynomials."""

from .fastseq import SeqReport, bootstrap, golombic_numbers, levine_numbers
from .freegroup import IDENTITY, IntTuple, Word, format_word, parse_seed, parse_word
from .goloper import gol, gol_seq_oracle, lev, lev_seq_oracle, orbit
from .vardi import VardiSet, generate, load, save, verify

__all__ = [
    "IDENTITY", "IntTuple", "SeqReport", "VardiSet", "Word", "bootstrap", "format_word", "generate",
    "gol", "gol_seq_oracle", "golombic_numbers", "lev", "lev_seq_oracle", "levine_numbers", "load",
    "orbit", "parse_seed", "parse_word", "save", "verify",
]
