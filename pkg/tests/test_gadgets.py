"""Gadget catalog tests: structure invariants and behavioural contracts."""

from __future__ import annotations

import pytest

from geo2tiles.gadgets import (
    GadgetKind,
    GadgetSpec,
    HarnessTooLarge,
    base_specs,
    builtin_catalog,
    check_contract,
    color_swap,
    format_gadget,
    orient,
    parse_gadget,
)
from geo2tiles.tiles import Player, TileColor

PORTAL_SHAPE = {
    GadgetKind.START: (0, 2),
    GadgetKind.SINK01: (1, 0),
    GadgetKind.PASS11: (1, 1),
    GadgetKind.MERGE12: (2, 1),
    GadgetKind.BRANCH21: (1, 2),
    GadgetKind.PARITY: (1, 1),
}


def test_catalog_size_and_shapes():
    cat = builtin_catalog()
    assert len(cat) == len(base_specs()) * 2 * 8
    for g in cat:
        ins, outs = len(g.ins()), len(g.outs())
        assert (ins, outs) == PORTAL_SHAPE[g.kind]
        assert len(g.portals) <= 3


def test_sink_is_one_blue_one_red():
    sink = next(g for g in base_specs() if g.kind is GadgetKind.SINK01)
    counts = {c: 0 for c in TileColor}
    for t in sink.tiles:
        counts[TileColor(t)] += 1
    assert counts[TileColor.BLUE] == 1 and counts[TileColor.RED] == 1


def test_border_black_except_portals():
    for g in builtin_catalog():
        portal_cells = {g.portal_cell(p) for p in g.portals}
        for x in range(g.width):
            for y in range(g.height):
                on_border = (x in (0, g.width - 1) or y in (0, g.height - 1))
                if on_border and (x, y) not in portal_cells:
                    assert g.tile_at(x, y) is TileColor.BLACK, (g.kind, x, y)


def test_portal_colors():
    # portals carry the owner's colour; the parity out-portal is the one
    # deliberate exception (it is where the turn parity flips)
    for g in builtin_catalog():
        for p in g.portals:
            color = g.tile_at(*g.portal_cell(p))
            if g.kind is GadgetKind.PARITY and p.role == "out":
                assert color is g.owner.other.tile
            else:
                assert color is g.owner.tile


def test_start_has_token_cell():
    for g in builtin_catalog():
        if g.kind is GadgetKind.START:
            assert g.token_cell is not None
            assert g.tile_at(*g.token_cell) is TileColor.BLACK
        else:
            assert g.token_cell is None


def test_color_swap_involution():
    for g in builtin_catalog():
        assert color_swap(color_swap(g)) == g


def test_orient_group_laws():
    for g in base_specs():
        assert orient(g, 0) == g
        assert orient(orient(g, 1), 1) == orient(g, 2)
        assert orient(orient(g, 2), 2) == g
        assert orient(orient(g, 4), 4) == g


def test_all_base_contracts_pass():
    for owner in (Player.BLUE, Player.RED):
        for g in base_specs(owner):
            rep = check_contract(g)
            assert rep.ok, (g.kind, g.variant, owner,
                            [c for c in rep.cases if not c.passed])


def test_orientation_invariance_sample():
    for g in base_specs():
        for t in (1, 3, 5, 6):
            assert check_contract(orient(g, t)).ok


def test_color_swap_duality():
    for g in base_specs():
        rep = check_contract(g)
        swapped = check_contract(color_swap(g))
        assert len(rep.cases) == len(swapped.cases)
        for a, b in zip(rep.cases, swapped.cases):
            assert b.expected is a.expected.other
            assert b.got is a.got.other
            assert a.passed and b.passed


def test_merge_second_visit_cases():
    for variant in ("a", "b"):
        g = next(s for s in base_specs()
                 if s.kind is GadgetKind.MERGE12 and s.variant == variant)
        rep = check_contract(g)
        second = [c for c in rep.cases if "second visit" in c.description]
        assert len(second) == 4
        assert all(c.expected is g.owner and c.passed for c in second)


def test_parity_early_stop_cases():
    g = next(s for s in base_specs() if s.kind is GadgetKind.PARITY)
    rep = check_contract(g)
    dev = [c for c in rep.cases if "early stop" in c.description]
    assert len(dev) == 2
    assert all(c.expected is g.owner.other and c.passed for c in dev)


def test_padding_isolation():
    for g in base_specs():
        r2 = check_contract(g, pad=2)
        r3 = check_contract(g, pad=3)
        for a, b in zip(r2.cases, r3.cases):
            assert a.got is b.got


def test_gadget_file_round_trip():
    for g in base_specs() + [orient(base_specs()[0], 3)]:
        text = format_gadget(g)
        back = parse_gadget(text)
        assert back == g


def test_gadget_file_rejects_garbage():
    from geo2tiles.gadgets import GadgetParseError

    with pytest.raises(GadgetParseError):
        parse_gadget("gadget v2\n")
    with pytest.raises(GadgetParseError):
        parse_gadget("gadget v1\nkind Nope\n")
    with pytest.raises(GadgetParseError):
        parse_gadget("gadget v1\nkind Pass11\nowner B\npatch 2 1\nbr\n"
                     "portal in Q 0 x\n")


def test_harness_too_large():
    g = base_specs()[0]
    big = GadgetSpec(g.kind, g.owner, "huge", 200, 200, bytes(200 * 200),
                     (), (5, 5))
    with pytest.raises(HarnessTooLarge):
        check_contract(big)
