"""Shared test helpers: independent oracles and random position generators.

The oracles deliberately avoid the engine's search code paths. Move
generation re-scans whole runs per step count, and both minimax oracles are
plain unmemoized recursions over the public apply functions.
"""

from __future__ import annotations

import random

from geo2tiles.geography import GeoInstance
from geo2tiles.tiles import (
    Board,
    Dir,
    Move,
    Player,
    TileColor,
    apply_move,
)


def naive_scan_moves(board: Board) -> list[Move]:
    """O(N^2)-per-move oracle: recheck the whole run for every step count."""
    want = board.turn.tile
    out = []
    for ti, (x, y) in enumerate(board.tokens):
        for d in Dir:
            k = 1
            while True:
                cells = [(x + d.dx * i, y + d.dy * i) for i in range(1, k + 1)]
                if not all(board.in_bounds(cx, cy)
                           and board.tile_at(cx, cy) == want
                           for cx, cy in cells):
                    break
                out.append(Move(ti, d, k))
                k += 1
    return out


def naive_minimax_tt(board: Board) -> Player:
    """Plain unmemoized minimax; mover with no slide loses."""
    moves = naive_scan_moves(board)
    if not moves:
        return board.turn.other
    for m in moves:
        if naive_minimax_tt(apply_move(board, m)) is board.turn:
            return board.turn
    return board.turn.other


def naive_gg_minimax(inst: GeoInstance, current: str,
                     visited: frozenset[str]) -> Player:
    """Plain unmemoized recursion; winner mapped through the mover colour."""
    adjacency: dict[str, list[str]] = {v: [] for v in inst.colors}
    for a, b in inst.arcs:
        adjacency[a].append(b)

    def mover_wins(cur: str, vis: frozenset[str]) -> bool:
        opts = [n for n in sorted(adjacency[cur]) if n not in vis]
        return any(not mover_wins(n, vis | {n}) for n in opts)

    mover = inst.colors[current]
    return mover if mover_wins(current, visited) else mover.other


def random_board(rng: random.Random, max_side: int = 4,
                 max_colored: int = 8, tokens: int = 1) -> Board:
    w = rng.randint(1, max_side)
    h = rng.randint(1, max_side)
    cells = [(x, y) for y in range(h) for x in range(w)]
    while len(cells) < tokens:
        w = rng.randint(2, max_side)
        h = rng.randint(2, max_side)
        cells = [(x, y) for y in range(h) for x in range(w)]
    rng.shuffle(cells)
    toks = tuple(cells[:tokens])
    rest = cells[tokens:]
    ncolor = rng.randint(0, min(max_colored, len(rest)))
    tiles = bytearray(w * h)
    for x, y in rest[:ncolor]:
        tiles[y * w + x] = rng.choice((TileColor.BLUE, TileColor.RED))
    turn = rng.choice((Player.BLUE, Player.RED))
    return Board(w, h, bytes(tiles), toks, turn)


def random_relaxed_instance(rng: random.Random,
                            max_vertices: int = 12) -> GeoInstance:
    n = rng.randint(2, max_vertices)
    names = [f"n{i}" for i in range(n)]
    colors = {v: rng.choice((Player.BLUE, Player.RED)) for v in names}
    arcs = []
    for a in names:
        for b in names:
            if a != b and rng.random() < 0.22:
                arcs.append((a, b))
    return GeoInstance(colors, arcs, names[0])
