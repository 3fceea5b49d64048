"""Graph-game tests: validation, solving, normalization, generation, I/O."""

from __future__ import annotations

import random

import pytest

from conftest import naive_gg_minimax, random_relaxed_instance
from geo2tiles.geography import (
    GeoInstance,
    GeoParseError,
    GeoPosition,
    ResourceExhausted,
    format_instance,
    generate,
    gg_moves,
    gg_solve,
    normalize,
    parse_instance,
    validate,
)
from geo2tiles.tiles import Player


def path_instance(*colors: str) -> GeoInstance:
    names = [f"p{i}" for i in range(len(colors))]
    cmap = {n: Player(c) for n, c in zip(names, colors)}
    arcs = list(zip(names, names[1:]))
    return GeoInstance(cmap, arcs, names[0])


def test_parse_format_round_trip():
    text = ("GG v1\nvertex a B\nvertex b R\nstart a\narc a b\n"
            "coord a 0 0\ncoord b 1 0\n")
    inst = parse_instance(text)
    assert format_instance(inst) == text
    assert parse_instance(format_instance(inst)) == inst


def test_parse_comments_and_blank_lines():
    inst = parse_instance("GG v1\n# hello\nvertex a B\n\nstart a # trailing\n")
    assert inst.start == "a"


def test_rotation_round_trip_and_normalize():
    text = ("GG v1\nvertex a R\nvertex b R\nvertex s B\nvertex t B\n"
            "start s\narc a t\narc b t\narc s a\narc s b\n"
            "coord a 1 0\ncoord b 0 1\ncoord s 0 0\ncoord t 1 1\n"
            "rot a s t\nrot b s t\nrot s a b\nrot t a b\n")
    inst = parse_instance(text)
    assert format_instance(inst) == text
    assert validate(inst, "strict").ok
    norm = normalize(inst)  # t is a sink with indegree 2 -> split
    assert len(norm.colors) == 5
    assert norm.rotation is not None
    for v, order in norm.rotation.items():
        und = set(norm.out_neighbors(v)) | set(norm.in_neighbors(v))
        assert set(order) == und, v


@pytest.mark.parametrize("name,lineno", [
    ("unknown_directive.gg", 2),
    ("dup_vertex.gg", 3),
    ("badheader.gg", 1),
])
def test_parse_negative_fixtures(name, lineno, request):
    path = request.path.parent / "fixtures" / "negative" / name
    with pytest.raises(GeoParseError) as exc:
        parse_instance(path.read_text())
    assert exc.value.line == lineno


def test_parse_undeclared_arc_and_missing_start(request):
    base = request.path.parent / "fixtures" / "negative"
    with pytest.raises(GeoParseError):
        parse_instance((base / "undeclared_arc.gg").read_text())
    with pytest.raises(GeoParseError):
        parse_instance((base / "missing_start.gg").read_text())


def test_validate_start_outdegree():
    inst = GeoInstance({"s": Player.BLUE, "a": Player.RED},
                       [("s", "a")], "s")
    rep = validate(inst, "strict")
    assert not rep.ok
    assert any("outdegree 1" in v for v in rep.violations)
    assert validate(inst, "relaxed").ok


def test_validate_bipartiteness():
    inst = GeoInstance(
        {"s": Player.BLUE, "a": Player.BLUE, "b": Player.RED},
        [("s", "a"), ("s", "b")], "s")
    rep = validate(inst, "strict")
    assert any("joins two blue" in v for v in rep.violations)


def test_validate_degree_cap():
    colors = {"s": Player.BLUE, "a": Player.RED, "b": Player.RED,
              "c": Player.RED, "d": Player.RED, "m": Player.BLUE}
    arcs = [("s", "a"), ("s", "b"), ("a", "m"), ("b", "m"), ("c", "m"),
            ("d", "m")]
    rep = validate(GeoInstance(colors, arcs, "s"), "strict")
    assert any("m" in v and "degree" in v for v in rep.violations)


def test_validate_embedding_crossings():
    inst = GeoInstance(
        {"s": Player.BLUE, "a": Player.RED, "b": Player.RED,
         "c": Player.BLUE},
        [("s", "a"), ("s", "b"), ("c", "b")], "s",
        coords={"s": (0, 0), "a": (2, 2), "b": (2, 0), "c": (0, 2)})
    # segment s->a crosses segment c->b at (1,1)
    rep = validate(inst, "strict")
    assert any("cross" in v for v in rep.violations)


def test_gg_moves_start_and_scan_oracle():
    inst = generate(8, 2)
    pos = GeoPosition.initial(inst)
    assert len(gg_moves(pos)) == 2  # start has exactly two exits
    rng = random.Random(7)
    for _ in range(200):
        ri = random_relaxed_instance(rng)
        names = sorted(ri.colors)
        cur = rng.choice(names)
        visited = frozenset(rng.sample(names, rng.randint(1, len(names))))
        visited |= {cur}
        pos = GeoPosition(ri, cur, visited, ri.colors[cur])
        expect = sorted({b for a, b in ri.arcs if a == cur} - visited)
        assert gg_moves(pos) == expect


def test_gg_solve_paths():
    two = path_instance("B", "R")
    assert gg_solve(GeoPosition.initial(two)).winner is Player.BLUE
    three = path_instance("B", "R", "B")
    assert gg_solve(GeoPosition.initial(three)).winner is Player.RED


def test_gg_solve_matches_naive_minimax():
    rng = random.Random(13)
    for _ in range(150):
        inst = random_relaxed_instance(rng, max_vertices=9)
        got = gg_solve(GeoPosition.initial(inst), principal=False).winner
        want = naive_gg_minimax(inst, inst.start, frozenset({inst.start}))
        assert got is want


def test_gg_solve_vertex_cap():
    inst = generate(30, 3)
    with pytest.raises(ResourceExhausted):
        gg_solve(GeoPosition.initial(inst))


def test_gg_solve_rename_invariance():
    for seed in range(10):
        inst = generate(9, seed)
        renamed = GeoInstance(
            {"x" + v: c for v, c in inst.colors.items()},
            [("x" + a, "x" + b) for a, b in inst.arcs],
            "x" + inst.start)
        a = gg_solve(GeoPosition.initial(inst), principal=False)
        b = gg_solve(GeoPosition.initial(renamed), principal=False)
        assert a.winner is b.winner


def test_normalize_fixpoint():
    inst = generate(8, 4)
    once = normalize(inst)
    assert normalize(once) == once


def test_normalize_splits_sink():
    # t is a sink with indegree 2; the split peels one arc onto a fresh copy
    inst = GeoInstance(
        {"s": Player.BLUE, "a": Player.RED, "b": Player.RED,
         "t": Player.BLUE},
        [("s", "a"), ("s", "b"), ("a", "t"), ("b", "t")], "s",
        coords={"s": (0, 0), "a": (1, 0), "b": (0, 1), "t": (1, 1)})
    norm = normalize(inst)
    assert len(norm.colors) == len(inst.colors) + 1
    sinks = [v for v in norm.colors if norm.out_degree(v) == 0]
    assert all(norm.in_degree(v) == 1 for v in sinks)
    before = gg_solve(GeoPosition.initial(inst), principal=False).winner
    after = gg_solve(GeoPosition.initial(norm), principal=False).winner
    assert before is after


def test_normalize_deletes_dangling():
    inst = GeoInstance(
        {"s": Player.BLUE, "a": Player.RED, "b": Player.RED,
         "z": Player.RED, "y": Player.BLUE},
        [("s", "a"), ("s", "b"), ("z", "y")], "s",
        coords={"s": (0, 0), "a": (1, 0), "b": (0, 1), "z": (3, 3),
                "y": (3, 4)})
    norm = normalize(inst)
    # z has indegree 0 -> deleted; then y dangles -> deleted too
    assert set(norm.colors) == {"s", "a", "b"}
    before = gg_solve(GeoPosition.initial(inst), principal=False).winner
    after = gg_solve(GeoPosition.initial(norm), principal=False).winner
    assert before is after


def test_normalize_preserves_winner_on_corpus():
    for seed in range(40):
        inst = generate(10, seed)
        norm = normalize(inst)
        a = gg_solve(GeoPosition.initial(inst), principal=False).winner
        b = gg_solve(GeoPosition.initial(norm), principal=False).winner
        assert a is b, f"seed {seed}"


def test_generate_deterministic_and_strict():
    for seed in (0, 1, 17, 99):
        g1 = generate(8, seed)
        g2 = generate(8, seed)
        assert g1 == g2
        assert format_instance(g1) == format_instance(g2)
        assert validate(g1, "strict").ok
        assert g1.colors[g1.start] is Player.BLUE


def test_generate_rejects_tiny():
    with pytest.raises(ValueError):
        generate(2, 0)


def test_strict_play_alternates_colors():
    rng = random.Random(47)
    for seed in range(15):
        inst = generate(8, seed)
        pos = GeoPosition.initial(inst)
        expect = Player.BLUE
        while True:
            assert inst.colors[pos.current] is expect
            moves = gg_moves(pos)
            if not moves:
                break
            nxt = rng.choice(moves)
            pos = GeoPosition(inst, nxt, pos.visited | {nxt},
                              inst.colors[nxt])
            expect = expect.other
