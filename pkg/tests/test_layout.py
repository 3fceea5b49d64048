"""Layout tests: placement, routing, parity splicing, painting, linting."""

from __future__ import annotations

import pytest

from geo2tiles.geography import GeoInstance, generate, normalize
from geo2tiles.layout import (
    AREA_COEFF,
    LayoutPlan,
    UnsupportedDegree,
    fix_parity,
    lint,
    paint,
    plan_layout,
)
from geo2tiles.tiles import (
    Board,
    Player,
    TileColor,
    apply_move,
    format_board,
    legal_moves,
    parse_board,
)

MINIMAL = GeoInstance(
    {"s": Player.BLUE, "a": Player.RED, "b": Player.RED},
    [("s", "a"), ("s", "b")], "s",
    coords={"s": (0, 0), "a": (1, 0), "b": (0, 1)})


def build(instance: GeoInstance) -> tuple[LayoutPlan, Board]:
    plan = fix_parity(plan_layout(normalize(instance)))
    return plan, paint(plan)


def test_minimal_plan_structure():
    plan, board = build(MINIMAL)
    assert set(plan.placements) == {"s", "a", "b"}
    assert plan.placements["s"].spec.kind.value == "Start"
    assert sorted(plan.routes) == [("s", "a"), ("s", "b")]
    assert lint(plan, board).ok


def test_unsupported_degree():
    inst = GeoInstance(
        {"s": Player.BLUE, "a": Player.RED, "b": Player.RED,
         "m": Player.BLUE, "t": Player.RED},
        [("s", "a"), ("s", "b"), ("a", "m"), ("b", "m"), ("m", "t"),
         ("m", "a")], "s",
        coords={"s": (0, 0), "a": (1, 0), "b": (0, 1), "m": (1, 1),
                "t": (2, 1)})
    # m has outdegree 2 and indegree 2: not among the five gadget shapes
    with pytest.raises(UnsupportedDegree):
        plan_layout(inst)


def test_routes_are_disjoint_and_clear():
    for seed in (0, 3, 9):
        plan, board = build(generate(8, seed))
        seen: set[tuple[int, int]] = set()
        for arc, route in plan.routes.items():
            inner = set(route[1:-1])
            assert not (inner & seen)
            seen |= inner
        assert lint(plan, board).ok


def test_parity_insertions_match_route_parity():
    found_insert = found_plain = False
    for seed in range(12):
        plan, board = build(generate(8, seed))
        for arc, route in plan.routes.items():
            steps = len(route) - 1
            if arc in plan.parity:
                assert steps % 2 == 0
                found_insert = True
            else:
                assert steps % 2 == 1
                found_plain = True
        assert lint(plan, board).ok
    assert found_insert and found_plain


def test_fix_parity_idempotent():
    plan = plan_layout(normalize(generate(8, 1)))
    once = fix_parity(plan)
    routes_snapshot = {a: list(r) for a, r in once.routes.items()}
    parity_snapshot = dict(once.parity)
    again = fix_parity(once)
    assert again.parity == parity_snapshot
    assert {a: list(r) for a, r in again.routes.items()} == routes_snapshot


def corridor_probe(plan: LayoutPlan, board: Board, arc) -> None:
    """Independent parity oracle: walk the painted corridor with real moves.

    Paints only this arc's chain, drops the token at the out-portal, and
    checks the token is carried to the in-portal by forced slides with the
    destination owner making the arrival move.
    """
    route = plan.routes[arc]
    src_owner = plan.instance.colors[arc[0]]
    dst_owner = plan.instance.colors[arc[1]]
    tiles = bytearray(plan.width * plan.height)
    chain = set(route[1:])
    pi = plan.parity.get(arc)
    if pi is not None:
        chain |= set(pi.placement.colored_cells())
    for x, y in chain:
        tiles[y * plan.width + x] = board.tiles[y * plan.width + x]
    probe = Board(plan.width, plan.height, bytes(tiles), (route[0],),
                  src_owner.other)
    plies = 0
    while probe.tokens[0] != route[-1]:
        moves = legal_moves(probe)
        assert 1 <= len(moves) <= 2, f"corridor not forced at ply {plies}"
        if len(moves) == 2:
            # the only two-way point is the parity double: same direction,
            # one- vs two-step; the honest line takes the full run
            assert {m.steps for m in moves} == {1, 2}
            move = max(moves, key=lambda m: m.steps)
        else:
            move = moves[0]
        probe = apply_move(probe, move)
        plies += 1
        assert plies < 10_000
    assert probe.turn is dst_owner.other, \
        f"arc {arc}: arrival mover wrong after {plies} plies"
    expected_plies = (len(route) - 1) - (1 if pi is not None else 0)
    assert plies == expected_plies


def test_corridor_ply_simulation():
    for seed in (0, 2, 5, 8):
        plan, board = build(generate(8, seed))
        for arc in plan.routes:
            corridor_probe(plan, board, arc)


def test_lint_flags_alternation_break():
    plan, board = build(MINIMAL)
    arc = ("s", "a")
    cell = plan.routes[arc][1]
    tiles = bytearray(board.tiles)
    idx = cell[1] * board.width + cell[0]
    tiles[idx] = (TileColor.RED if tiles[idx] == TileColor.BLUE
                  else TileColor.BLUE)
    bad = Board(board.width, board.height, bytes(tiles), board.tokens,
                board.turn)
    rep = lint(plan, bad)
    assert any("alternation" in v for v in rep.violations)


def test_lint_flags_clearance_break():
    plan, board = build(MINIMAL)
    arc = ("s", "a")
    mid = plan.routes[arc][len(plan.routes[arc]) // 2]
    intruder = (mid[0], mid[1] + 2)
    tiles = bytearray(board.tiles)
    tiles[intruder[1] * board.width + intruder[0]] = TileColor.BLUE
    # a colored cell two cells away is a stray; one cell away is a clearance
    # violation against the corridor
    intruder2 = (mid[0], mid[1] + 1)
    tiles[intruder2[1] * board.width + intruder2[0]] = TileColor.BLUE
    bad = Board(board.width, board.height, bytes(tiles), board.tokens,
                board.turn)
    rep = lint(plan, bad)
    assert any("stray" in v for v in rep.violations)


def test_lint_flags_foreign_touch():
    plan, board = build(MINIMAL)
    # recolor a black cell adjacent to a corridor cell and claim nothing:
    # forcedness audit reports the foreign colored neighbour
    arc = ("s", "a")
    route = plan.routes[arc]
    span = set(plan._patch_span(arc))
    target = None
    for c in route[1:-1]:
        if c in span:
            continue
        for n in ((c[0] + 1, c[1]), (c[0] - 1, c[1]),
                  (c[0], c[1] + 1), (c[0], c[1] - 1)):
            if n not in route and board.tile_at(*n) is TileColor.BLACK:
                near_patch = any(abs(n[0] - p[0]) + abs(n[1] - p[1]) <= 1
                                 for p in span)
                if not near_patch:
                    target = n
                    break
        if target:
            break
    assert target is not None
    tiles = bytearray(board.tiles)
    tiles[target[1] * board.width + target[0]] = TileColor.RED
    bad = Board(board.width, board.height, bytes(tiles), board.tokens,
                board.turn)
    rep = lint(plan, bad)
    assert rep.violations


def test_paint_cell_arithmetic():
    plan, board = build(generate(8, 4))
    counts = plan.structure_counts()
    colored = board.colored_count()
    assert colored == (counts["gadget_cells"] + counts["corridor_cells"]
                       + counts["parity_cells"])


def test_painted_board_round_trips():
    plan, board = build(MINIMAL)
    assert parse_board(format_board(board)) == board


def test_area_budget():
    for seed, n in ((0, 4), (1, 8), (2, 12)):
        plan, board = build(generate(n, seed))
        nv = len(plan.instance.colors)
        assert board.width * board.height <= AREA_COEFF * nv * nv


def test_plan_determinism():
    a = build(generate(8, 6))[1]
    b = build(generate(8, 6))[1]
    assert format_board(a) == format_board(b)


def test_start_turn_and_single_token():
    _, board = build(MINIMAL)
    assert board.turn is Player.BLUE
    assert len(board.tokens) == 1
