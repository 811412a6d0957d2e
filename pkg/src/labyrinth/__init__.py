"""Mixed labyrinth fractals: patterns, substitution, exit paths, path matrices and arc lengths."""

__version__ = "0.1.0"

from .compose import LevelSet, compose, compose_seq
from .curves import Polyline, arc_length_lower_bound, curve_from_path, curve_length, length_sequence
from .distance import HausdorffDistance, hausdorff_distance
from .generators import (
    SequenceSpec,
    Verdict,
    classify_arc_length,
    half_blocked_cross,
    plus_pattern,
    random_labyrinth,
    special_cross,
)
from .paths import (
    ORDER,
    ExitPath,
    PathMatrix,
    PathType,
    SquareType,
    classify_squares,
    exit_path,
    expand_path,
    matrix_product,
    path_matrix,
    row_lengths,
)
from .pattern import (
    Cell,
    ExitSet,
    Pattern,
    ValidationReport,
    blockedness,
    find_exits,
    parse_pattern,
    read_pattern,
    serialize_pattern,
    validate,
    write_pattern,
)
