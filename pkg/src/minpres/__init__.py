"""Minimal presentations of bi-graded persistence modules over GF(2)."""

from .errors import (
    BAProductNonzero,
    DimensionMismatch,
    EntryRuleViolation,
    MeshFormatError,
    MinpresError,
    OptionConflict,
    ParseError,
    ReparamFailure,
    TooLarge,
)
from .fast import PipelineOptions, chunk, ker_basis_new, min_gens_new, min_pres_fast, minimize_lazy
from .grades import Grade, colex_key, join, leq, meet
from .io import parse_firep, read_firep, write_firep, write_presentation
from .lw import ker_basis_lw, min_gens_lw, min_pres_lw, minimize_lw, reparam
from .matrix import Firep, GradedMatrix, rank_gf2, sort_firep, sort_graded

__version__ = "0.1.0"
