"""Rough approximations and leveled approximate equalities of IF sets."""
from .approximation import (
    BlockApproximation, RoughIFPair, approximate, block_values, boundary_crisp, is_definable,
    lower_crisp, lower_fuzzy, lower_if, upper_crisp, upper_fuzzy, upper_if,
)
from .core import (
    SCALE, CrispSet, CutParams, IFSet, Partition, Universe, complement_if, crisp, embed_crisp,
    embed_fuzzy, format_degree, intersect_if, subset_if, to_ticks, union_if,
)
from .equality import (
    EqualityVerdict, Kind, Mode, Side, SideVerdict, alpha_cut, classify, classify_crisp,
    classify_fuzzy, comparable, cut, included, side_verdict,
)
from .errors import *  # noqa: F401,F403

__version__ = "0.1.0"
