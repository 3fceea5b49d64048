"""Planar layout: place gadgets on a coarse grid, route corridors, paint.

Every vertex gets a fixed-size super-cell on a coarse grid ordered by the
instance's integer embedding, so the board side grows linearly in the
vertex count and the area stays within AREA_COEFF * |V|^2. Corridors run
through the streets between super-cells as shortest rectilinear paths with
one cell of clearance around every coloured structure; shortest paths can
never sit next to themselves, which keeps every corridor slide forced.

Turn parity along an arc is fixed purely by the Manhattan parity between
its two portals. Arcs with the wrong parity are routed with a straight
runway near the source portal, and ``fix_parity`` splices exactly one
parity gadget into that runway.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Optional

from geo2tiles.gadgets import (
    GadgetKind,
    GadgetSpec,
    Portal,
    base_specs,
    orient,
)
from geo2tiles.geography import GeoInstance
from geo2tiles.tiles import Board, Dir, Player, TileColor

SUPER = 20          # super-cell side in tiles
MARGIN = 8          # black margin around the coarse grid
AREA_COEFF = 676    # board area is asserted <= AREA_COEFF * |V|^2
RUNWAY = 7          # straight cells reserved after a portal for parity work

Cell = tuple[int, int]
Arc = tuple[str, str]


class RoutingFailed(Exception):
    def __init__(self, arc, reason: str):
        super().__init__(f"arc {arc}: {reason}" if arc else reason)
        self.arc = arc


class UnsupportedDegree(Exception):
    pass


class ParityUnfixable(Exception):
    pass


class OverlapDetected(Exception):
    pass


_SHAPE_TO_KIND = {
    (0, 1): GadgetKind.SINK01,
    (1, 1): GadgetKind.PASS11,
    (1, 2): GadgetKind.MERGE12,
    (2, 1): GadgetKind.BRANCH21,
}


@dataclass
class Placement:
    vertex: Optional[str]
    spec: GadgetSpec
    origin: Cell
    portal_for: dict[Arc, str] = field(default_factory=dict)

    def rect(self) -> tuple[int, int, int, int]:
        x, y = self.origin
        return (x, y, x + self.spec.width - 1, y + self.spec.height - 1)

    def rect_cells(self) -> Iterable[Cell]:
        x0, y0, x1, y1 = self.rect()
        for y in range(y0, y1 + 1):
            for x in range(x0, x1 + 1):
                yield (x, y)

    def colored_cells(self) -> list[Cell]:
        ox, oy = self.origin
        return [(ox + x, oy + y) for x, y in self.spec.colored_cells()]

    def portal(self, label: str) -> Portal:
        return next(p for p in self.spec.portals if p.label == label)

    def portal_cell(self, label: str) -> Cell:
        p = self.portal(label)
        px, py = self.spec.portal_cell(p)
        return (self.origin[0] + px, self.origin[1] + py)

    def portal_outside(self, label: str) -> Cell:
        p = self.portal(label)
        x, y = self.portal_cell(label)
        return (x + p.side.dx, y + p.side.dy)

    def token_fine(self) -> Cell:
        assert self.spec.token_cell is not None
        return (self.origin[0] + self.spec.token_cell[0],
                self.origin[1] + self.spec.token_cell[1])


@dataclass
class ParityInsert:
    splice: int              # route index whose cell is the patch in-portal
    placement: Placement


@dataclass
class LayoutPlan:
    width: int
    height: int
    instance: GeoInstance
    placements: dict[str, Placement]
    routes: dict[Arc, list[Cell]]
    parity: dict[Arc, ParityInsert] = field(default_factory=dict)
    runway_splice: dict[Arc, int] = field(default_factory=dict)

    def area_budget(self) -> int:
        return AREA_COEFF * len(self.instance.colors) ** 2

    def structure_counts(self) -> dict[str, int]:
        gadget_cells = sum(len(p.colored_cells())
                           for p in self.placements.values())
        parity_cells = sum(len(pi.placement.colored_cells())
                           for pi in self.parity.values())
        corridor_cells = 0
        for arc, route in self.routes.items():
            covered = set(self._patch_span(arc))
            corridor_cells += sum(1 for c in route[1:-1] if c not in covered)
        return {
            "gadget_cells": gadget_cells,
            "corridor_cells": corridor_cells,
            "parity_cells": parity_cells,
        }

    def _patch_span(self, arc: Arc) -> list[Cell]:
        pi = self.parity.get(arc)
        if pi is None:
            return []
        return self.routes[arc][pi.splice:pi.splice + 5]


def _dominant_dir(dx: int, dy: int) -> Dir:
    if abs(dx) >= abs(dy) and dx != 0:
        return Dir.E if dx > 0 else Dir.W
    return Dir.S if dy > 0 else Dir.N


def _compact_coords(instance: GeoInstance) -> dict[str, Cell]:
    coords = instance.coords
    if not coords or set(coords) != set(instance.colors):
        raise RoutingFailed(None, "layout requires integer coords for every "
                                  "vertex")
    xs = sorted({x for x, _ in coords.values()})
    ys = sorted({y for _, y in coords.values()})
    xr = {x: i for i, x in enumerate(xs)}
    yr = {y: i for i, y in enumerate(ys)}
    out = {v: (xr[x], yr[y]) for v, (x, y) in coords.items()}
    if len(set(out.values())) != len(out):
        raise RoutingFailed(None, "two vertices share a coarse cell")
    return out


def _variants(kind: GadgetKind, owner: Player) -> list[GadgetSpec]:
    return [g for g in base_specs(owner) if g.kind is kind]


def _choose_orientation(kind: GadgetKind, owner: Player,
                        needs: dict[Arc, tuple[str, Dir]],
                        ) -> tuple[GadgetSpec, dict[Arc, str], int]:
    """Pick variant + dihedral transform + portal assignment for a vertex.

    Scores exact portal-side/arc-direction agreement; generated instances
    always admit a perfect match, hand instances fall back to best effort.
    """
    out_arcs = sorted(a for a, (r, _) in needs.items() if r == "out")
    in_arcs = sorted(a for a, (r, _) in needs.items() if r == "in")
    best: Optional[tuple[int, GadgetSpec, dict[Arc, str]]] = None
    for variant in _variants(kind, owner):
        for t in range(8):
            g = orient(variant, t)
            outs, ins = g.outs(), g.ins()
            if len(outs) != len(out_arcs) or len(ins) != len(in_arcs):
                raise UnsupportedDegree(
                    f"{kind.value} has {len(outs)}/{len(ins)} portals but the "
                    f"vertex carries {len(out_arcs)}/{len(in_arcs)} arcs")
            for owhich in permutations(range(len(outs))):
                for iwhich in permutations(range(len(ins))):
                    assign = {}
                    score = 0
                    for arc, pi in zip(out_arcs, owhich):
                        assign[arc] = outs[pi].label
                        if outs[pi].side is needs[arc][1]:
                            score += 1
                    for arc, pi in zip(in_arcs, iwhich):
                        assign[arc] = ins[pi].label
                        if ins[pi].side is needs[arc][1]:
                            score += 1
                    if score == len(needs):
                        return g, assign, 0
                    if best is None or score > best[0]:
                        best = (score, g, dict(assign))
    assert best is not None
    return best[1], best[2], len(needs) - best[0]


def _neighbors(cell: Cell) -> list[Cell]:
    x, y = cell
    return [(x, y - 1), (x + 1, y), (x, y + 1), (x - 1, y)]


def _bfs_route(blocked: set[Cell], start: Cell, goal: Cell,
               bounds: tuple[int, int, int, int]) -> Optional[list[Cell]]:
    """Shortest path, ties broken toward fewer turns, then N<E<S<W.

    Shortest-in-steps matters: such a path never runs 4-adjacent to itself,
    which is what keeps corridors forced single slides.
    """
    x0, y0, x1, y1 = bounds
    dist: dict[tuple[Cell, int], tuple[int, int]] = {}
    parent: dict[tuple[Cell, int], tuple[Cell, int]] = {}
    heap: list[tuple[int, int, int, int, int, Cell, int]] = []
    heapq.heappush(heap, (0, 0, start[1], start[0], -1, start, -1))
    while heap:
        steps, turns, _, _, _, cell, din = heapq.heappop(heap)
        if cell == goal:
            path = [cell]
            key = (cell, din)
            while key in parent:
                key = parent[key]
                path.append(key[0])
            path.reverse()
            return path
        if dist.get((cell, din), (steps, turns)) < (steps, turns):
            continue
        for di, d in enumerate(Dir):
            nxt = (cell[0] + d.dx, cell[1] + d.dy)
            if not (x0 <= nxt[0] <= x1 and y0 <= nxt[1] <= y1):
                continue
            if nxt in blocked and nxt != goal:
                continue
            cost = (steps + 1, turns + (0 if din in (-1, di) else 1))
            key = (nxt, di)
            if key not in dist or cost < dist[key]:
                dist[key] = cost
                parent[key] = (cell, din)
                heapq.heappush(heap, (cost[0], cost[1], nxt[1], nxt[0], di,
                                      nxt, di))
    return None


def plan_layout(instance: GeoInstance) -> LayoutPlan:
    """Place one gadget per vertex and route every arc without crossings."""
    coarse = _compact_coords(instance)
    ncols = max(x for x, _ in coarse.values()) + 1
    nrows = max(y for _, y in coarse.values()) + 1
    width = ncols * SUPER + 2 * MARGIN
    height = nrows * SUPER + 2 * MARGIN

    placements: dict[str, Placement] = {}
    for v in sorted(instance.colors):
        out_arcs = [(v, u) for u in instance.out_neighbors(v)]
        in_arcs = [(u, v) for u in instance.in_neighbors(v)]
        shape = (len(out_arcs), len(in_arcs))
        if v == instance.start:
            if shape != (2, 0):
                raise UnsupportedDegree(f"start {v} has shape {shape}")
            kind = GadgetKind.START
        else:
            kind = _SHAPE_TO_KIND.get(shape)
            if kind is None:
                raise UnsupportedDegree(f"vertex {v} has shape {shape}")
        needs: dict[Arc, tuple[str, Dir]] = {}
        vx, vy = coarse[v]
        for arc in out_arcs:
            ux, uy = coarse[arc[1]]
            needs[arc] = ("out", _dominant_dir(ux - vx, uy - vy))
        for arc in in_arcs:
            ux, uy = coarse[arc[0]]
            needs[arc] = ("in", _dominant_dir(ux - vx, uy - vy))
        spec, assign, _ = _choose_orientation(kind, instance.colors[v], needs)
        ox = MARGIN + vx * SUPER + (SUPER - spec.width) // 2
        oy = MARGIN + vy * SUPER + (SUPER - spec.height) // 2
        placements[v] = Placement(v, spec, (ox, oy), assign)

    # routing obstacles: patch rectangles plus a clearance ring around every
    # coloured cell; each portal's doorstep cell and its surroundings are
    # reserved so later routes can still depart without touching anything
    blocked: set[Cell] = set()
    for x in range(width):
        blocked.add((x, 0))
        blocked.add((x, height - 1))
    for y in range(height):
        blocked.add((0, y))
        blocked.add((width - 1, y))
    for pl in placements.values():
        blocked.update(pl.rect_cells())
        for c in pl.colored_cells():
            blocked.update(_neighbors(c))
    door_zone: dict[Arc, set[Cell]] = {}
    for v, pl in placements.items():
        for arc, label in pl.portal_for.items():
            ds = pl.portal_outside(label)
            door_zone.setdefault(arc, set()).update({ds, *_neighbors(ds)})

    routes: dict[Arc, list[Cell]] = {}
    runway_splice: dict[Arc, int] = {}
    reserved_zones: dict[Arc, set[Cell]] = {}

    def route_one(arc: Arc) -> None:
        src, dst = arc
        p_out = placements[src]
        p_in = placements[dst]
        out_cell = p_out.portal_cell(p_out.portal_for[arc])
        in_cell = p_in.portal_cell(p_in.portal_for[arc])
        start = p_out.portal_outside(p_out.portal_for[arc])
        goal = p_in.portal_outside(p_in.portal_for[arc])
        needs_parity = (abs(out_cell[0] - in_cell[0])
                        + abs(out_cell[1] - in_cell[1])) % 2 == 0

        local = set(blocked)
        for a2, zone in door_zone.items():
            if a2 != arc:
                local |= zone
        for zone in reserved_zones.values():
            local |= zone
        local.discard(start)
        local.discard(goal)

        bx0 = max(0, min(start[0], goal[0]) - 2 * SUPER)
        by0 = max(0, min(start[1], goal[1]) - 2 * SUPER)
        bx1 = min(width - 1, max(start[0], goal[0]) + 2 * SUPER)
        by1 = min(height - 1, max(start[1], goal[1]) + 2 * SUPER)
        bounds = (bx0, by0, bx1, by1)

        prefix: list[Cell] = []
        zone: set[Cell] = set()
        if needs_parity:
            d = p_out.portal(p_out.portal_for[arc]).side
            runway = [start]
            for _ in range(RUNWAY - 1):
                runway.append((runway[-1][0] + d.dx, runway[-1][1] + d.dy))
            perp = (d.dy, d.dx)
            for cx, cy in runway:
                for off in range(-2, 3):
                    zone.add((cx + perp[0] * off, cy + perp[1] * off))
            if (all(c == start or c not in local for c in runway)
                    and all(z not in blocked or z == start for z in zone)):
                prefix = runway
            else:
                prefix, zone = [], set()

        if prefix:
            search_blocked = local | set(prefix[:-1])
            for c in prefix[:-1]:
                search_blocked.update(_neighbors(c))
            search_blocked.discard(prefix[-1])
            search_blocked.discard(goal)
            path = _bfs_route(search_blocked, prefix[-1], goal, bounds)
            if path is None:
                path = _bfs_route(search_blocked, prefix[-1], goal,
                                  (0, 0, width - 1, height - 1))
            if path is None:
                raise RoutingFailed(arc, "no corridor found past the runway")
            cells = prefix + path[1:]
        else:
            path = _bfs_route(local, start, goal, bounds)
            if path is None:
                path = _bfs_route(local, start, goal,
                                  (0, 0, width - 1, height - 1))
            if path is None:
                raise RoutingFailed(arc, "no corridor found")
            cells = path

        route = [out_cell] + cells + [in_cell]
        routes[arc] = route
        if needs_parity and prefix:
            runway_splice[arc] = 2
            reserved_zones[arc] = zone
        for c in route[1:-1]:
            blocked.add(c)
            blocked.update(_neighbors(c))

    # local arcs first: they own the street between their super-cells, and a
    # long-haul corridor routed earlier could cut straight through it
    def arc_order(arc: Arc) -> tuple[int, Arc]:
        (ax, ay), (bx, by) = coarse[arc[0]], coarse[arc[1]]
        return (abs(ax - bx) + abs(ay - by), arc)

    for arc in sorted(instance.arcs, key=arc_order):
        route_one(arc)

    return LayoutPlan(width, height, instance, placements, routes,
                      runway_splice=runway_splice)


def _route_color(plan: LayoutPlan, arc: Arc, index: int) -> Player:
    """Colour the corridor cell at route[index] receives (no parity insert)."""
    src_owner = plan.instance.colors[arc[0]]
    return src_owner.other if index % 2 == 1 else src_owner


def _straight_runs(route: list[Cell]) -> list[tuple[int, int, Dir]]:
    """Maximal straight segments as (start_index, end_index, direction)."""
    runs = []
    i = 0
    while i < len(route) - 1:
        dx = route[i + 1][0] - route[i][0]
        dy = route[i + 1][1] - route[i][1]
        d = next(dd for dd in Dir if (dd.dx, dd.dy) == (dx, dy))
        j = i + 1
        while (j < len(route) - 1
               and (route[j + 1][0] - route[j][0],
                    route[j + 1][1] - route[j][1]) == (dx, dy)):
            j += 1
        runs.append((i, j, d))
        i = j
    return runs


def fix_parity(plan: LayoutPlan) -> LayoutPlan:
    """Splice one parity gadget into every route with even step count."""
    all_claimed: set[Cell] = set()
    for pl in plan.placements.values():
        all_claimed.update(pl.rect_cells())
    route_cells: dict[Arc, set[Cell]] = {
        arc: set(r) for arc, r in plan.routes.items()}

    for arc in sorted(plan.routes):
        route = plan.routes[arc]
        if arc in plan.parity or (len(route) - 1) % 2 == 1:
            continue  # arrival parity already correct
        insert = _find_splice(plan, arc, all_claimed, route_cells)
        if insert is None:
            raise ParityUnfixable(f"arc {arc}: no room to splice the parity "
                                  "gadget")
        plan.parity[arc] = insert
        all_claimed.update(insert.placement.rect_cells())
    return plan


def _find_splice(plan: LayoutPlan, arc: Arc, claimed: set[Cell],
                 route_cells: dict[Arc, set[Cell]]) -> Optional[ParityInsert]:
    route = plan.routes[arc]
    base_candidates = []
    hint = plan.runway_splice.get(arc)
    for i, j, d in _straight_runs(route):
        lo = max(i, 1)
        hi = min(j, len(route) - 2) - 4
        for k in range(lo, hi + 1):
            base_candidates.append((0 if hint == k else 1, k, d))
    base_candidates.sort()

    other_colored: set[Cell] = set()
    for pl in plan.placements.values():
        other_colored.update(pl.colored_cells())
    for pi in plan.parity.values():
        other_colored.update(pi.placement.colored_cells())
    foreign_routes: set[Cell] = set()
    for a2, cells in route_cells.items():
        if a2 != arc:
            foreign_routes |= cells

    for _, k, d in base_candidates:
        owner = _route_color(plan, arc, k)
        for transform in range(8):
            spec = orient(next(g for g in base_specs(owner)
                               if g.kind is GadgetKind.PARITY), transform)
            pin = spec.ins()[0]
            pout = spec.outs()[0]
            if pin.side.dx != -d.dx or pin.side.dy != -d.dy:
                continue
            ox = route[k][0] - spec.portal_cell(pin)[0]
            oy = route[k][1] - spec.portal_cell(pin)[1]
            pl = Placement(None, spec, (ox, oy))
            if pl.portal_cell(pout.label) != route[k + 4]:
                continue
            if _splice_fits(plan, arc, pl, k, claimed, foreign_routes,
                            other_colored):
                return ParityInsert(k, pl)
    return None


def _splice_fits(plan: LayoutPlan, arc: Arc, pl: Placement, k: int,
                 claimed: set[Cell], foreign_routes: set[Cell],
                 other_colored: set[Cell]) -> bool:
    route = plan.routes[arc]
    span = set(route[k:k + 5])
    rect = set(pl.rect_cells())
    if any(not (0 < x < plan.width - 1 and 0 < y < plan.height - 1)
           for x, y in rect):
        return False
    if rect & claimed:
        return False
    if rect & foreign_routes:
        return False
    own_outside = set(route) - span
    if rect & own_outside:
        return False
    allowed = {route[k - 1], route[k + 5]}
    for c in pl.colored_cells():
        for n in _neighbors(c):
            if n in span or n in rect:
                continue
            if n in allowed:
                continue
            if n in other_colored or n in foreign_routes or n in own_outside:
                return False
    return True


def paint(plan: LayoutPlan) -> Board:
    """Stamp gadgets and corridors onto an all-black board."""
    width, height = plan.width, plan.height
    tiles = bytearray(width * height)

    def stamp(pl: Placement):
        ox, oy = pl.origin
        for x, y in pl.spec.colored_cells():
            bx, by = ox + x, oy + y
            idx = by * width + bx
            if tiles[idx] != TileColor.BLACK:
                raise OverlapDetected(f"cell ({bx},{by}) painted twice")
            tiles[idx] = pl.spec.tiles[y * pl.spec.width + x]

    for v in sorted(plan.placements):
        stamp(plan.placements[v])
    for arc in sorted(plan.parity):
        stamp(plan.parity[arc].placement)

    for arc in sorted(plan.routes):
        route = plan.routes[arc]
        src_owner = plan.instance.colors[arc[0]]
        dst_owner = plan.instance.colors[arc[1]]
        pi = plan.parity.get(arc)
        mover = src_owner.other
        i = 1
        while i < len(route) - 1:
            if pi is not None and i == pi.splice:
                patch_owner = pi.placement.spec.owner
                if mover is not patch_owner:
                    raise OverlapDetected(
                        f"arc {arc}: parity patch colour mismatch at "
                        f"{route[i]}")
                mover = patch_owner
                i += 5
                continue
            x, y = route[i]
            idx = y * width + x
            if tiles[idx] != TileColor.BLACK:
                raise OverlapDetected(f"cell ({x},{y}) painted twice")
            tiles[idx] = mover.tile
            mover = mover.other
            i += 1
        if mover is not dst_owner:
            raise OverlapDetected(f"arc {arc}: corridor arrives with the "
                                  "wrong turn parity")

    token = plan.placements[plan.instance.start].token_fine()
    return Board(width, height, bytes(tiles), (token,), Player.BLUE)


@dataclass
class LintReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def lint(plan: LayoutPlan, board: Board) -> LintReport:
    """Structural audit of a painted plan.

    Checks the colored-cell ownership partition, the clearance discipline,
    corridor alternation and arrival parity, portal alignment, corridor
    forcedness, and the area budget. Violations are data, not exceptions.
    """
    rep = LintReport()
    bad = rep.violations

    owner_of: dict[Cell, str] = {}

    def claim(cell: Cell, tag: str):
        if cell in owner_of:
            bad.append(f"cell {cell} claimed by {owner_of[cell]} and {tag}")
        owner_of[cell] = tag

    for v, pl in plan.placements.items():
        for c in pl.colored_cells():
            claim(c, f"gadget:{v}")
    for arc, pi in plan.parity.items():
        for c in pi.placement.colored_cells():
            claim(c, f"parity:{arc}")
    chains: dict[Arc, list[Cell]] = {}
    for arc, route in plan.routes.items():
        span = set(plan._patch_span(arc))
        for c in route[1:-1]:
            if c not in span:
                claim(c, f"corridor:{arc}")
        chains[arc] = route

    for y in range(board.height):
        for x in range(board.width):
            colored = board.tile_at(x, y) != TileColor.BLACK
            if colored and (x, y) not in owner_of:
                bad.append(f"stray colored cell ({x},{y})")
            if not colored and (x, y) in owner_of:
                bad.append(f"cell ({x},{y}) of {owner_of[(x, y)]} is black")

    allowed_pairs: set[frozenset[Cell]] = set()
    for arc, route in chains.items():
        for a, b in zip(route, route[1:]):
            allowed_pairs.add(frozenset((a, b)))
    for cell, tag in owner_of.items():
        for n in _neighbors(cell):
            tag2 = owner_of.get(n)
            if tag2 is None or tag2 == tag:
                continue
            if frozenset((cell, n)) in allowed_pairs:
                continue
            bad.append(f"clearance: {tag} cell {cell} touches {tag2} "
                       f"cell {n}")

    for arc, route in chains.items():
        src_owner = plan.instance.colors[arc[0]]
        dst_owner = plan.instance.colors[arc[1]]
        pi = plan.parity.get(arc)
        pl_src = plan.placements[arc[0]]
        pl_dst = plan.placements[arc[1]]
        if route[0] != pl_src.portal_cell(pl_src.portal_for[arc]):
            bad.append(f"arc {arc}: route does not start at the out-portal")
        if route[-1] != pl_dst.portal_cell(pl_dst.portal_for[arc]):
            bad.append(f"arc {arc}: route does not end at the in-portal")
        mover = src_owner.other
        i = 1
        broken = False
        while i < len(route) - 1:
            if pi is not None and i == pi.splice:
                if mover is not pi.placement.spec.owner:
                    bad.append(f"arc {arc}: parity insert entered with the "
                               "wrong colour")
                    broken = True
                    break
                mover = pi.placement.spec.owner
                i += 5
                continue
            x, y = route[i]
            if board.tile_at(x, y) != mover.tile:
                bad.append(f"arc {arc}: corridor alternation broken at "
                           f"({x},{y})")
                broken = True
                break
            mover = mover.other
            i += 1
        if not broken and mover is not dst_owner:
            bad.append(f"arc {arc}: corridor arrives with the wrong parity")

        span = set(plan._patch_span(arc))
        chain_cells = set(route) | set(
            plan.parity[arc].placement.colored_cells()) if pi else set(route)
        for c in route[1:-1]:
            if c in span:
                continue
            colored_nbrs = [n for n in _neighbors(c)
                            if board.in_bounds(*n)
                            and board.tile_at(*n) != TileColor.BLACK]
            if len(colored_nbrs) > 2:
                bad.append(f"arc {arc}: corridor cell {c} has "
                           f"{len(colored_nbrs)} colored neighbours")
            for n in colored_nbrs:
                if n not in chain_cells:
                    bad.append(f"arc {arc}: corridor cell {c} touches "
                               f"foreign cell {n}")

    if board.width * board.height > plan.area_budget():
        bad.append(
            f"area {board.width * board.height} exceeds budget "
            f"{plan.area_budget()} = {AREA_COEFF} * {len(plan.instance.colors)}^2")
    return rep
