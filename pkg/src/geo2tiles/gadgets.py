"""Gadget catalog and its behavioural contract harness.

Each gadget is a small tile patch with typed portals. The token enters a
blue gadget by a blue slide ending on a blue in-portal (red moves next) and
leaves by a blue slide onto a blue out-portal (red moves next); red gadgets
mirror this. The parity gadget is the one exception: its out-portal carries
the opposite colour, so crossing it shifts which player carries the token
onward by one ply relative to the cell count.

The layouts here are hand-authored; ``check_contract`` is the acceptance
authority. It builds micro-boards around a patch (token feeds at in-portals,
calibrated win/lose stubs at out-portals) and verifies every behavioural
case by exhaustive search, including second visits and deviation lines.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from geo2tiles.tiles import (
    Board,
    Dir,
    Move,
    Player,
    TileColor,
    apply_move,
    legal_moves,
    replay,
    solve,
)


class GadgetKind(Enum):
    START = "Start"
    SINK01 = "Sink01"
    PASS11 = "Pass11"
    MERGE12 = "Merge12"
    BRANCH21 = "Branch21"
    PARITY = "Parity"


class HarnessTooLarge(Exception):
    pass


class GadgetParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Portal:
    role: str  # "in" | "out"
    side: Dir
    offset: int
    label: str


@dataclass(frozen=True)
class GadgetSpec:
    kind: GadgetKind
    owner: Player
    variant: str
    width: int
    height: int
    tiles: bytes
    portals: tuple[Portal, ...]
    token_cell: Optional[tuple[int, int]] = None

    def tile_at(self, x: int, y: int) -> TileColor:
        return TileColor(self.tiles[y * self.width + x])

    def portal_cell(self, p: Portal) -> tuple[int, int]:
        if p.side is Dir.N:
            return (p.offset, 0)
        if p.side is Dir.S:
            return (p.offset, self.height - 1)
        if p.side is Dir.W:
            return (0, p.offset)
        return (self.width - 1, p.offset)

    def ins(self) -> list[Portal]:
        return sorted((p for p in self.portals if p.role == "in"),
                      key=lambda p: p.label)

    def outs(self) -> list[Portal]:
        return sorted((p for p in self.portals if p.role == "out"),
                      key=lambda p: p.label)

    def colored_cells(self) -> list[tuple[int, int]]:
        return [(x, y) for y in range(self.height) for x in range(self.width)
                if self.tiles[y * self.width + x] != TileColor.BLACK]


def _patch(rows: list[str]) -> tuple[int, int, bytes, Optional[tuple[int, int]]]:
    width = len(rows[0])
    tiles = bytearray()
    token = None
    table = {".": 0, "b": 1, "r": 2}
    for y, row in enumerate(rows):
        assert len(row) == width, "ragged patch row"
        for x, ch in enumerate(row):
            if ch == "*":
                token = (x, y)
                tiles.append(0)
            else:
                tiles.append(table[ch])
    return width, len(rows), bytes(tiles), token


def _spec(kind: GadgetKind, variant: str, rows: list[str],
          portals: list[tuple[str, Dir, int, str]]) -> GadgetSpec:
    w, h, tiles, token = _patch(rows)
    ps = tuple(Portal(role, side, off, label)
               for role, side, off, label in portals)
    return GadgetSpec(kind, Player.BLUE, variant, w, h, tiles, ps, token)


# Blue base layouts. Two slides open each game: the owner's forced step and
# the opponent's forced reply; after that the run geometry makes choices.
# Variant "a"/"b" differ only in which sides the portals face, so routing can
# always match a vertex's arc directions exactly.

_BASES = [
    # token, forced b-r opening, then a 2-run: stopping early branches south,
    # running through branches east
    _spec(GadgetKind.START, "a", [
        "........",
        ".*brbbrb",
        "....r...",
        "....b...",
    ], [("out", Dir.S, 4, "out1"), ("out", Dir.E, 1, "out2")]),
    # same mechanism with the early-stop branch folded back to the west side;
    # the return chain keeps a black buffer row under the main line
    _spec(GadgetKind.START, "b", [
        ".........",
        "..*brbbrb",
        ".....r...",
        ".brbrb...",
        "br.......",
        ".........",
    ], [("out", Dir.W, 4, "out1"), ("out", Dir.E, 1, "out2")]),
    _spec(GadgetKind.SINK01, "a", [
        "...",
        "br.",
        "...",
    ], [("in", Dir.W, 1, "in1")]),
    _spec(GadgetKind.PASS11, "a", [
        "...",
        "brb",
        "...",
    ], [("in", Dir.W, 1, "in1"), ("out", Dir.E, 1, "out1")]),
    _spec(GadgetKind.PASS11, "b", [
        "...",
        "br.",
        ".b.",
    ], [("in", Dir.W, 1, "in1"), ("out", Dir.S, 1, "out1")]),
    # two in-portals flank a three-stop red run; only the middle stop avoids
    # a dead-end punishment, and it releases the token through the out-portal
    _spec(GadgetKind.MERGE12, "a", [
        ".....",
        ".b.b.",
        "brrrb",
        "..b..",
    ], [("in", Dir.W, 2, "in1"), ("in", Dir.E, 2, "in2"),
        ("out", Dir.S, 2, "out1")]),
    # north entry rides a private forced chain down to the run's west end
    _spec(GadgetKind.MERGE12, "b", [
        ".b.....",
        ".r.....",
        ".b.b.b.",
        ".rbrrrb",
        "....b..",
    ], [("in", Dir.N, 1, "in1"), ("in", Dir.E, 3, "in2"),
        ("out", Dir.S, 4, "out1")]),
    _spec(GadgetKind.BRANCH21, "a", [
        "......",
        "brbbrb",
        "..r...",
        "..b...",
    ], [("in", Dir.W, 1, "in1"),
        ("out", Dir.S, 2, "out1"), ("out", Dir.E, 1, "out2")]),
    _spec(GadgetKind.BRANCH21, "b", [
        "..b..",
        "..r..",
        "brbb.",
        "...r.",
        "...b.",
    ], [("in", Dir.W, 2, "in1"),
        ("out", Dir.N, 2, "out1"), ("out", Dir.S, 3, "out2")]),
    # the double run bbr->t shifts turn parity; the lone red tile under the
    # first double cell makes any early stop immediately losing
    _spec(GadgetKind.PARITY, "a", [
        ".....",
        "brbbr",
        "..r..",
        ".....",
    ], [("in", Dir.W, 1, "in1"), ("out", Dir.E, 1, "out1")]),
]


def color_swap(g: GadgetSpec) -> GadgetSpec:
    swapped = bytes({0: 0, 1: 2, 2: 1}[t] for t in g.tiles)
    return replace(g, owner=g.owner.other, tiles=swapped)


_SIDE_ROT = {Dir.N: Dir.E, Dir.E: Dir.S, Dir.S: Dir.W, Dir.W: Dir.N}
_SIDE_MIRROR = {Dir.N: Dir.N, Dir.S: Dir.S, Dir.E: Dir.W, Dir.W: Dir.E}


def orient(g: GadgetSpec, transform: int) -> GadgetSpec:
    """Apply one of the 8 dihedral symmetries.

    Transforms 0..3 are clockwise quarter turns; 4..7 mirror east-west
    first, then rotate. Portal sides and offsets follow the cells.
    """
    if not 0 <= transform <= 7:
        raise ValueError("transform must be 0..7")
    mirror = transform >= 4
    rot = transform % 4

    w, h = g.width, g.height

    def map_cell(x: int, y: int) -> tuple[int, int]:
        cw, ch = w, h
        if mirror:
            x = cw - 1 - x
        for _ in range(rot):
            x, y = ch - 1 - y, x
            cw, ch = ch, cw
        return x, y

    nw, nh = (h, w) if rot % 2 else (w, h)
    tiles = bytearray(nw * nh)
    for y in range(h):
        for x in range(w):
            tx, ty = map_cell(x, y)
            tiles[ty * nw + tx] = g.tiles[y * w + x]

    portals = []
    for p in g.portals:
        cx, cy = map_cell(*g.portal_cell(p))
        on_n, on_s = cy == 0, cy == nh - 1
        on_w, on_e = cx == 0, cx == nw - 1
        assert sum((on_n, on_s, on_w, on_e)) == 1, "portal landed on a corner"
        if on_n:
            side, off = Dir.N, cx
        elif on_s:
            side, off = Dir.S, cx
        elif on_w:
            side, off = Dir.W, cy
        else:
            side, off = Dir.E, cy
        portals.append(Portal(p.role, side, off, p.label))

    token = map_cell(*g.token_cell) if g.token_cell else None
    return replace(g, width=nw, height=nh, tiles=bytes(tiles),
                   portals=tuple(portals), token_cell=token)


def builtin_catalog() -> list[GadgetSpec]:
    """Every base layout, in both colours, in all 8 orientations."""
    out = []
    for base in _BASES:
        for spec in (base, color_swap(base)):
            for t in range(8):
                out.append(orient(spec, t))
    return out


def base_specs(owner: Player = Player.BLUE) -> list[GadgetSpec]:
    if owner is Player.BLUE:
        return list(_BASES)
    return [color_swap(g) for g in _BASES]


# ---------------------------------------------------------------------------
# Contract harness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CaseResult:
    description: str
    expected: Player
    got: Optional[Player]
    passed: bool


@dataclass
class ContractReport:
    spec: GadgetSpec
    cases: list[CaseResult]
    nodes_expanded: int

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.cases)


def _exit_mover(g: GadgetSpec, p: Portal) -> Player:
    """Who is to move right after the token exits through portal p."""
    color = g.tile_at(*g.portal_cell(p))
    arriving = Player.BLUE if color == TileColor.BLUE else Player.RED
    return arriving.other


class _Harness:
    def __init__(self, g: GadgetSpec, pad: int = 2):
        if (g.width + 2 * pad) * (g.height + 2 * pad) > 20000:
            raise HarnessTooLarge(f"{g.width}x{g.height} patch with pad {pad}")
        self.g = g
        self.pad = pad
        self.width = g.width + 2 * pad
        self.height = g.height + 2 * pad

    def cell(self, xy: tuple[int, int]) -> tuple[int, int]:
        return (xy[0] + self.pad, xy[1] + self.pad)

    def outside(self, p: Portal) -> tuple[int, int]:
        x, y = self.cell(self.g.portal_cell(p))
        return (x + p.side.dx, y + p.side.dy)

    def board(self, feed: Optional[Portal],
              stubs: dict[str, bool]) -> Board:
        """Assemble the case board.

        ``feed`` places the token just outside an in-portal so the arrival
        slide is the forced first move. ``stubs`` maps an out-portal label to
        whether the exit should be winning for the owner; the stub is either
        empty or a single tile for whoever moves after the exit.
        """
        tiles = bytearray(self.width * self.height)
        for x, y in self.g.colored_cells():
            bx, by = self.cell((x, y))
            tiles[by * self.width + bx] = self.g.tiles[y * self.g.width + x]
        by_label = {p.label: p for p in self.g.portals}
        for label, owner_wins in stubs.items():
            p = by_label[label]
            mover = _exit_mover(self.g, p)
            if (mover is self.g.owner) == owner_wins:
                sx, sy = self.outside(p)
                tiles[sy * self.width + sx] = mover.tile
        if feed is not None:
            token = self.outside(feed)
        else:
            assert self.g.token_cell is not None
            token = self.cell(self.g.token_cell)
        return Board(self.width, self.height, bytes(tiles), (token,),
                     self.g.owner)


def _find_exit_line(board: Board, exit_cell: tuple[int, int],
                    depth: int = 10) -> Optional[list[Move]]:
    """Shortest legal sequence whose last slide lands on exit_cell."""
    frontier: list[tuple[Board, list[Move]]] = [(board, [])]
    for _ in range(depth):
        nxt = []
        for b, seq in frontier:
            for m in legal_moves(b):
                b2 = apply_move(b, m)
                if b2.tokens[0] == exit_cell:
                    return seq + [m]
                nxt.append((b2, seq + [m]))
        frontier = nxt
    return None


def check_contract(g: GadgetSpec, pad: int = 2,
                   max_nodes: int = 2_000_000) -> ContractReport:
    """Prove the gadget's behavioural contract by exhaustive search."""
    h = _Harness(g, pad)
    owner, opp = g.owner, g.owner.other
    outs = g.outs()
    cases: list[CaseResult] = []
    total_nodes = 0

    def run(description: str, board: Board, expected: Player):
        nonlocal total_nodes
        res = solve(board, max_nodes=max_nodes, principal=False)
        total_nodes += res.nodes_expanded
        got = res.winner
        cases.append(CaseResult(description, expected, got, got is expected))

    def stub_combo(bits: tuple[bool, ...]) -> dict[str, bool]:
        return {p.label: b for p, b in zip(outs, bits)}

    kind = g.kind
    if kind in (GadgetKind.START, GadgetKind.BRANCH21):
        feed = None if kind is GadgetKind.START else g.ins()[0]
        for bits in ((True, True), (True, False), (False, True),
                     (False, False)):
            expected = owner if any(bits) else opp
            desc = "exit stubs " + "/".join(
                f"{p.label}={'W' if b else 'L'}" for p, b in zip(outs, bits))
            run(desc, h.board(feed, stub_combo(bits)), expected)
    elif kind is GadgetKind.SINK01:
        run("arrival in1", h.board(g.ins()[0], {}), opp)
    elif kind in (GadgetKind.PASS11, GadgetKind.PARITY):
        feed = g.ins()[0]
        for bit in (True, False):
            desc = f"arrival, stub {'W' if bit else 'L'}"
            run(desc, h.board(feed, stub_combo((bit,))), owner if bit else opp)
        if kind is GadgetKind.PARITY:
            for bit in (True, False):
                board = h.board(feed, stub_combo((bit,)))
                prefix, dev = _early_stop_deviation(board, owner)
                staged = replay(board, prefix + [dev])
                desc = f"early stop on the double, stub {'W' if bit else 'L'}"
                run(desc, staged, opp)
    elif kind is GadgetKind.MERGE12:
        in1, in2 = g.ins()
        for arrive in (in1, in2):
            for bit in (True, False):
                desc = f"arrival {arrive.label}, stub {'W' if bit else 'L'}"
                run(desc, h.board(arrive, stub_combo((bit,))),
                    owner if bit else opp)
        exit_cell = h.cell(g.portal_cell(outs[0]))
        for first, second in ((in1, in2), (in2, in1)):
            base = h.board(first, {})
            line = _find_exit_line(base, exit_cell)
            assert line is not None, "no traversal reaches the out-portal"
            after = replay(base, line)
            for bit in (True, False):
                sx, sy = h.outside(outs[0])
                tiles = bytearray(after.tiles)
                mover = _exit_mover(g, outs[0])
                if (mover is owner) == bit:
                    tiles[sy * h.width + sx] = mover.tile
                board2 = Board(h.width, h.height, bytes(tiles),
                               (h.outside(second),), owner)
                desc = (f"second visit via {second.label} after "
                        f"{first.label}, stub {'W' if bit else 'L'}")
                run(desc, board2, owner)
    else:
        raise AssertionError(f"unhandled kind {kind}")
    return ContractReport(g, cases, total_nodes)


def _early_stop_deviation(board: Board, owner: Player) -> tuple[list[Move], Move]:
    """Walk forced slides to the double-run choice, return prefix + short stop."""
    prefix: list[Move] = []
    cur = board
    for _ in range(64):
        moves = legal_moves(cur)
        if len(moves) != 1:
            break
        prefix.append(moves[0])
        cur = apply_move(cur, moves[0])
    moves = legal_moves(cur)
    assert cur.turn is owner and len(moves) == 2, \
        "expected the owner's two-stop run choice"
    assert {m.steps for m in moves} == {1, 2}
    short = next(m for m in moves if m.steps == 1)
    return prefix, short


# ---------------------------------------------------------------------------
# gadget file format
# ---------------------------------------------------------------------------

_TILE_CH = {0: ".", 1: "b", 2: "r"}


def format_gadget(g: GadgetSpec) -> str:
    out = ["gadget v1", f"kind {g.kind.value}", f"owner {g.owner.value}",
           f"variant {g.variant}", f"patch {g.width} {g.height}"]
    for y in range(g.height):
        row = []
        for x in range(g.width):
            if g.token_cell == (x, y):
                row.append("*")
            else:
                row.append(_TILE_CH[g.tiles[y * g.width + x]])
        out.append("".join(row))
    for p in g.portals:
        out.append(f"portal {p.role} {p.side.name} {p.offset} {p.label}")
    return "\n".join(out) + "\n"


def parse_gadget(text: str) -> GadgetSpec:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "gadget v1":
        raise GadgetParseError(1, "expected header 'gadget v1'")
    kind: Optional[GadgetKind] = None
    owner: Optional[Player] = None
    variant = "custom"
    width = height = 0
    rows: list[str] = []
    portals: list[Portal] = []
    i = 1
    n = len(lines)
    while i < n:
        line = lines[i].split("#", 1)[0].strip()
        i += 1
        if not line:
            continue
        parts = line.split()
        if parts[0] == "kind":
            try:
                kind = GadgetKind(parts[1])
            except (ValueError, IndexError):
                raise GadgetParseError(i, f"unknown kind in {line!r}")
        elif parts[0] == "owner":
            if len(parts) != 2 or parts[1] not in ("B", "R"):
                raise GadgetParseError(i, "expected 'owner B' or 'owner R'")
            owner = Player(parts[1])
        elif parts[0] == "variant":
            variant = parts[1]
        elif parts[0] == "patch":
            if len(parts) != 3:
                raise GadgetParseError(i, "expected 'patch <w> <h>'")
            width, height = int(parts[1]), int(parts[2])
            rows = []
            while len(rows) < height and i < n:
                row = lines[i].strip()
                i += 1
                if len(row) != width:
                    raise GadgetParseError(i, f"patch row must be {width} wide")
                rows.append(row)
            if len(rows) != height:
                raise GadgetParseError(i, "patch rows missing")
        elif parts[0] == "portal":
            if (len(parts) != 5 or parts[1] not in ("in", "out")
                    or parts[2] not in Dir.__members__):
                raise GadgetParseError(
                    i, "expected 'portal <in|out> <N|E|S|W> <offset> <label>'")
            portals.append(Portal(parts[1], Dir[parts[2]], int(parts[3]),
                                  parts[4]))
        else:
            raise GadgetParseError(i, f"unknown directive {parts[0]!r}")
    if kind is None or owner is None or not rows:
        raise GadgetParseError(n, "gadget file needs kind, owner and patch")
    w, h, tiles, token = _patch(rows)
    spec = GadgetSpec(kind, owner, variant, w, h, tiles, tuple(portals), token)
    for p in portals:
        cx, cy = spec.portal_cell(p)
        if not (0 <= cx < w and 0 <= cy < h):
            raise GadgetParseError(n, f"portal {p.label} offset out of range")
    return spec
