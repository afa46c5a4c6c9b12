"""Reduction passes between tiling problems and the constraint systems that encode them."""

from .boolean import abc_table, antipode_to_linear, boolean_to_antipode, boolean_to_linear, symmetrize
from .coloring import tileset_to_boolean
from .functional import functional_to_tilings, functional_to_tilings_zd
from .hamming import hamming_to_functional, pullback_z2z
from .ir import (
    AntipodeSystem,
    BadStackHeight,
    BooleanLocalSystem,
    EmptyTile,
    FunctionalEquation,
    FunctionalSystem,
    HammingEquation,
    HammingSystem,
    LinearBooleanSystem,
    NotAGraph,
    NotConfined,
    Reduction,
    TwoTileInstance,
)
from .linear import linear_to_hamming
from .pipeline import PipelineTrace, compile_pipeline, compile_two_tiles, dry_run
from .rigid import BadBumpPosition, lattice_cosets, rigid_tile
from .stacking import combine, combine_zd

__all__ = [
    "AntipodeSystem", "BadBumpPosition", "BadStackHeight", "BooleanLocalSystem", "EmptyTile",
    "FunctionalEquation", "FunctionalSystem", "HammingEquation", "HammingSystem", "LinearBooleanSystem",
    "NotAGraph", "NotConfined", "PipelineTrace", "Reduction", "TwoTileInstance", "abc_table",
    "antipode_to_linear", "boolean_to_antipode", "boolean_to_linear", "combine", "combine_zd",
    "compile_pipeline", "compile_two_tiles", "dry_run", "functional_to_tilings", "functional_to_tilings_zd",
    "hamming_to_functional", "lattice_cosets", "linear_to_hamming", "pullback_z2z", "rigid_tile", "symmetrize",
    "tileset_to_boolean",
]
