"""End-to-end reduction pipeline and its empirical correctness harness.

``reduce_instance`` compiles a graph instance into a board; solving both
sides and comparing winners is the ground truth for the whole construction,
so ``verify_equivalence`` runs exactly that over a corpus and reports one
row per instance. ``add_isolated_tokens`` covers the multi-token extension:
tokens dropped on all-black neighbourhoods can never move and never change
the winner.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from geo2tiles import tiles
from geo2tiles.geography import (
    GeoInstance,
    GeoPosition,
    InvalidInstance,
    gg_solve,
    normalize,
    validate,
)
from geo2tiles.layout import (
    LayoutPlan,
    ParityUnfixable,
    RoutingFailed,
    fix_parity,
    lint,
    paint,
    plan_layout,
)
from geo2tiles.tiles import Board, Move, Player, TileColor, solve


class LintFailed(Exception):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations[:5]))
        self.violations = violations


class NoIsolatedSpace(Exception):
    pass


@dataclass
class ReductionTrace:
    instance: GeoInstance
    normalized: GeoInstance
    plan: LayoutPlan
    board: Board
    timings: dict[str, float] = field(default_factory=dict)

    def area_report(self) -> list[tuple[str, object]]:
        counts = self.plan.structure_counts()
        b = self.board
        return [
            ("width", b.width),
            ("height", b.height),
            ("area", b.width * b.height),
            ("vertices", len(self.normalized.colors)),
            ("arcs", len(self.normalized.arcs)),
            ("gadget_cells", counts["gadget_cells"]),
            ("corridor_cells", counts["corridor_cells"]),
            ("parity_cells", counts["parity_cells"]),
            ("parity_insertions", len(self.plan.parity)),
            ("area_budget", self.plan.area_budget()),
        ]


def reduce_instance(instance: GeoInstance) -> ReductionTrace:
    """Validate, normalize, lay out, and paint one instance.

    Purely constructive: no game solver runs anywhere in this path.
    """
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    report = validate(instance, "strict")
    if not report.ok:
        raise InvalidInstance(report.violations)
    timings["validate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    norm = normalize(instance)
    timings["normalize"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    try:
        plan = fix_parity(plan_layout(norm))
    except ParityUnfixable as e:
        raise RoutingFailed(None, str(e)) from None
    timings["layout"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    board = paint(plan)
    timings["paint"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    lint_report = lint(plan, board)
    if not lint_report.ok:
        raise LintFailed(lint_report.violations)
    timings["lint"] = time.perf_counter() - t0
    return ReductionTrace(instance, norm, plan, board, timings)


@dataclass(frozen=True)
class EquivalenceRow:
    instance_id: str
    gg_winner: Optional[Player]
    tt_winner: Optional[Player]
    match: Optional[bool]
    gg_nodes: int
    tt_nodes: int
    exhausted: bool
    vertices: int = 0
    area: int = 0
    board_side: int = 0
    tt_branching: int = 0
    tt_playout: int = 0


@dataclass
class EquivalenceReport:
    rows: list[EquivalenceRow] = field(default_factory=list)

    @property
    def solved(self) -> list[EquivalenceRow]:
        return [r for r in self.rows if not r.exhausted]

    @property
    def matches(self) -> int:
        return sum(1 for r in self.solved if r.match)

    @property
    def exhausted_count(self) -> int:
        return sum(1 for r in self.rows if r.exhausted)

    @property
    def all_match(self) -> bool:
        return all(r.match for r in self.solved)

    def to_tsv(self) -> str:
        out = []
        for r in sorted(self.rows, key=lambda r: r.instance_id):
            tt = r.tt_winner.value if r.tt_winner else "-"
            match = "-" if r.match is None else ("yes" if r.match else "NO")
            out.append("\t".join([
                r.instance_id, r.gg_winner.value if r.gg_winner else "-", tt,
                match, str(r.gg_nodes), str(r.tt_nodes)]))
        summary = f"summary\tmatch {self.matches}/{len(self.solved)}"
        if not self.rows:
            summary += "\tundefined"
        if self.exhausted_count:
            summary += f"\texhausted {self.exhausted_count}"
        out.append(summary)
        return "\n".join(out) + "\n"


def verify_equivalence(corpus: list[tuple[str, GeoInstance]],
                       max_nodes: int = 5_000_000,
                       on_row: Optional[Callable[[EquivalenceRow], None]] = None,
                       ) -> EquivalenceReport:
    """Solve each instance on both sides of the reduction and compare.

    Rows are independent and sorted by instance id in the report; exhausted
    rows are flagged and excluded from the match rate.
    """
    report = EquivalenceReport()
    for inst_id, inst in sorted(corpus, key=lambda t: t[0]):
        gg = gg_solve(GeoPosition.initial(inst), principal=False)
        trace = reduce_instance(inst)
        tt = solve(trace.board, max_nodes=max_nodes, principal=False)
        row = EquivalenceRow(
            instance_id=inst_id,
            gg_winner=gg.winner,
            tt_winner=tt.winner,
            match=None if tt.exhausted else (gg.winner is tt.winner),
            gg_nodes=gg.nodes_expanded,
            tt_nodes=tt.nodes_expanded,
            exhausted=tt.exhausted,
            vertices=len(trace.normalized.colors),
            area=trace.board.width * trace.board.height,
            board_side=trace.board.side(),
            tt_branching=tt.max_branching,
            tt_playout=tt.max_playout,
        )
        report.rows.append(row)
        if on_row is not None:
            on_row(row)
    return report


def pad_board(board: Board, rings: int = 1) -> Board:
    """Add a black margin; never changes the winner."""
    if rings < 0:
        raise ValueError("rings must be >= 0")
    if rings == 0:
        return board
    w = board.width + 2 * rings
    h = board.height + 2 * rings
    tiles_out = bytearray(w * h)
    for y in range(board.height):
        row = board.tiles[y * board.width:(y + 1) * board.width]
        tiles_out[(y + rings) * w + rings:(y + rings) * w + rings
                  + board.width] = row
    tokens = tuple((x + rings, y + rings) for x, y in board.tokens)
    return Board(w, h, bytes(tiles_out), tokens, board.turn)


def isolated_cells(board: Board) -> list[tuple[int, int]]:
    """Black cells whose 4-neighbourhood is black or off-board.

    A token dropped there can never move: it has no coloured neighbour and
    tiles never gain colour.
    """
    taken = set(board.tokens)
    out = []
    for y in range(board.height):
        for x in range(board.width):
            if board.tile_at(x, y) != TileColor.BLACK or (x, y) in taken:
                continue
            nbrs = [(x, y - 1), (x + 1, y), (x, y + 1), (x - 1, y)]
            if all(not board.in_bounds(nx, ny)
                   or board.tile_at(nx, ny) == TileColor.BLACK
                   for nx, ny in nbrs):
                out.append((x, y))
    return out


def add_isolated_tokens(board: Board, k: int, seed: int = 0) -> Board:
    """Drop k immobile tokens on isolated black cells; winner unchanged."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return board
    cands = isolated_cells(board)
    if len(cands) < k:
        raise NoIsolatedSpace(
            f"need {k} isolated cells, found {len(cands)}; pad the board "
            "with a black margin first")
    rng = random.Random(seed)
    chosen = rng.sample(cands, k)
    return Board(board.width, board.height, board.tiles,
                 board.tokens + tuple(chosen), board.turn)


def vertex_trail(plan: LayoutPlan, board: Board,
                 line: tuple[Move, ...]) -> list[str]:
    """Vertices whose gadgets the token enters along a play, in order."""
    def placement_at(cell):
        for v, pl in plan.placements.items():
            x0, y0, x1, y1 = pl.rect()
            if x0 <= cell[0] <= x1 and y0 <= cell[1] <= y1:
                return v
        return None

    trail = [plan.instance.start]
    cur = board
    for m in line:
        cur = tiles.apply_move(cur, m)
        v = placement_at(cur.tokens[m.token])
        if v is not None and v != trail[-1]:
            trail.append(v)
    return trail
