"""geo2tiles: compile geography-style graph games into turning-tiles boards.

Exact solvers for both rulesets, a machine-checked gadget catalog, a planar
layout pipeline, and an end-to-end winner-equivalence harness.
"""

from geo2tiles.tiles import (
    Board,
    Dir,
    IllegalMove,
    Move,
    Player,
    SolveResult,
    TileColor,
    apply_move,
    format_board,
    legal_moves,
    parse_board,
    replay,
    solve,
)

__version__ = "0.1.0"
