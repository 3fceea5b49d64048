"""Turning-tiles game engine: boards, move generation, exact search, text I/O.

Two players, blue and red, alternately slide a shared token in a straight
line over consecutive face-up tiles of their own colour; every tile crossed
flips to black and never flips back. A player with no legal slide loses.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import NamedTuple, Optional


class TileColor(IntEnum):
    BLACK = 0
    BLUE = 1
    RED = 2


class Player(Enum):
    BLUE = "B"
    RED = "R"

    @property
    def other(self) -> Player:
        return Player.RED if self is Player.BLUE else Player.BLUE

    @property
    def tile(self) -> TileColor:
        return TileColor.BLUE if self is Player.BLUE else TileColor.RED


class Dir(Enum):
    # Enum order is the canonical move order: N, E, S, W.
    N = (0, -1)
    E = (1, 0)
    S = (0, 1)
    W = (-1, 0)

    @property
    def dx(self) -> int:
        return self.value[0]

    @property
    def dy(self) -> int:
        return self.value[1]


DIRS = tuple(Dir)


class Move(NamedTuple):
    """One straight slide: token index, compass direction, step count >= 1."""

    token: int
    dir: Dir
    steps: int

    def text(self) -> str:
        return f"{self.token}:{self.dir.name}{self.steps}"

    @classmethod
    def parse(cls, s: str) -> Move:
        tok, _, rest = s.partition(":")
        if not rest or rest[0] not in Dir.__members__:
            raise ValueError(f"bad move literal {s!r}")
        return cls(int(tok), Dir[rest[0]], int(rest[1:]))


class IllegalMove(Exception):
    """A slide that leaves the board or crosses a wrong-coloured tile."""


class BoardParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Board:
    """An immutable position: tile grid, token coordinates, player to move.

    Tiles are row-major bytes indexed (x east from 0, y south from 0); tokens
    always sit on black tiles and are pairwise distinct.
    """

    width: int
    height: int
    tiles: bytes
    tokens: tuple[tuple[int, int], ...]
    turn: Player

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("board dimensions must be positive")
        if len(self.tiles) != self.width * self.height:
            raise ValueError("tile grid does not match dimensions")
        if not self.tokens:
            raise ValueError("at least one token required")
        if len(set(self.tokens)) != len(self.tokens):
            raise ValueError("token coordinates must be pairwise distinct")
        for x, y in self.tokens:
            if not (0 <= x < self.width and 0 <= y < self.height):
                raise ValueError(f"token ({x},{y}) out of bounds")
            if self.tiles[y * self.width + x] != TileColor.BLACK:
                raise ValueError(f"token ({x},{y}) not on a black tile")

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def tile_at(self, x: int, y: int) -> TileColor:
        return TileColor(self.tiles[y * self.width + x])

    def colored_count(self) -> int:
        return sum(1 for t in self.tiles if t != TileColor.BLACK)

    def side(self) -> int:
        return max(self.width, self.height)


def legal_moves(board: Board) -> list[Move]:
    """All legal slides for the player to move.

    Ordered by token index, then direction N < E < S < W, then step count.
    An empty list means the mover has lost.
    """
    want = board.turn.tile
    out: list[Move] = []
    for ti, (x, y) in enumerate(board.tokens):
        for d in DIRS:
            cx, cy, k = x, y, 0
            while True:
                cx += d.dx
                cy += d.dy
                if not board.in_bounds(cx, cy):
                    break
                if board.tiles[cy * board.width + cx] != want:
                    break
                k += 1
                out.append(Move(ti, d, k))
    return out


def apply_move(board: Board, move: Move) -> Board:
    """Apply one slide, flipping every traversed tile to black."""
    if not (0 <= move.token < len(board.tokens)):
        raise IllegalMove(f"no token {move.token}")
    if move.steps < 1:
        raise IllegalMove("a slide must traverse at least one tile")
    want = board.turn.tile
    x, y = board.tokens[move.token]
    tiles = bytearray(board.tiles)
    for _ in range(move.steps):
        x += move.dir.dx
        y += move.dir.dy
        if not board.in_bounds(x, y):
            raise IllegalMove(f"cell ({x},{y}) is off the board")
        idx = y * board.width + x
        if tiles[idx] != want:
            raise IllegalMove(
                f"cell ({x},{y}) is {TileColor(tiles[idx]).name}, "
                f"not {want.name}"
            )
        tiles[idx] = TileColor.BLACK
    tokens = list(board.tokens)
    tokens[move.token] = (x, y)
    return Board(board.width, board.height, bytes(tiles), tuple(tokens),
                 board.turn.other)


def replay(board: Board, line: list[Move] | tuple[Move, ...]) -> Board:
    """Fold apply_move over a move sequence; errors carry the failing index."""
    cur = board
    for i, m in enumerate(line):
        try:
            cur = apply_move(cur, m)
        except IllegalMove as e:
            raise IllegalMove(f"move {i} ({m.text()}): {e}") from None
    return cur


@dataclass(frozen=True)
class SolveResult:
    winner: Optional[Player]
    principal_line: Optional[tuple[Move, ...]]
    nodes_expanded: int
    exhausted: bool = False
    max_branching: int = 0
    max_playout: int = 0


class _Exhausted(Exception):
    pass


_solve_calls = 0


def solve_call_count() -> int:
    """Total solve() invocations in this process (instrumentation)."""
    return _solve_calls


_MASK64 = (1 << 64) - 1


def _mix64(x: int) -> int:
    # splitmix64 finalizer; gives reproducible per-cell hash material
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def _zobrist_key(slot: int, salt: int) -> int:
    # 128-bit key from two independent 64-bit streams
    return (_mix64(slot ^ salt) << 64) | _mix64(slot ^ (salt * 3 + 1))


def solve(board: Board, max_nodes: Optional[int] = None,
          principal: bool = True) -> SolveResult:
    """Exact winner under optimal play, by memoized game-tree search.

    Transposition entries are exact: play is loop-free because every slide
    strictly reduces the number of coloured tiles. When ``max_nodes`` is hit
    the result comes back with ``exhausted`` set and no winner.
    """
    global _solve_calls
    _solve_calls += 1
    w = board.width
    ncells = w * board.height
    tiles = bytearray(board.tiles)
    tokens = list(board.tokens)

    # per-slot 128-bit keys: slots 0/1 = blue/red tile, 2 = token
    zt = [(_zobrist_key(c * 4 + 1, 0xA5A5), _zobrist_key(c * 4 + 2, 0xA5A5),
           _zobrist_key(c * 4 + 3, 0xA5A5)) for c in range(ncells)]
    zturn = _zobrist_key(1, 0xC3C3)

    h = zturn if board.turn is Player.RED else 0
    for c in range(ncells):
        if tiles[c]:
            h ^= zt[c][tiles[c] - 1]
    for x, y in tokens:
        h ^= zt[y * w + x][2]

    memo: dict[int, tuple[bool, Optional[Move]]] = {}
    stats = {"nodes": 0, "branch": 0, "deepest": 0}

    def gen(player: Player) -> list[tuple[int, Dir, int]]:
        want = player.tile
        moves = []
        for ti, (x, y) in enumerate(tokens):
            for d in DIRS:
                cx, cy, k = x, y, 0
                while True:
                    cx += d.dx
                    cy += d.dy
                    if not (0 <= cx < w and 0 <= cy < board.height):
                        break
                    if tiles[cy * w + cx] != want:
                        break
                    k += 1
                    moves.append((ti, d, k))
        return moves

    def search(turn: Player, depth: int) -> bool:
        nonlocal h
        key = h
        hit = memo.get(key)
        if hit is not None:
            return hit[0]
        if max_nodes is not None and stats["nodes"] >= max_nodes:
            raise _Exhausted
        stats["nodes"] += 1
        if depth > stats["deepest"]:
            stats["deepest"] = depth
        moves = gen(turn)
        if len(moves) > stats["branch"]:
            stats["branch"] = len(moves)
        if not moves:
            memo[key] = (False, None)
            return False
        # longer slides first: reaches terminal states sooner, never changes
        # the winner
        moves.sort(key=lambda m: -m[2])
        win = False
        best: Optional[Move] = None
        want = turn.tile
        for ti, d, k in moves:
            x0, y0 = tokens[ti]
            x1, y1 = x0 + d.dx * k, y0 + d.dy * k
            flipped = []
            cx, cy = x0, y0
            for _ in range(k):
                cx += d.dx
                cy += d.dy
                idx = cy * w + cx
                flipped.append(idx)
                tiles[idx] = 0
                h ^= zt[idx][want - 1]
            tokens[ti] = (x1, y1)
            h ^= zt[y0 * w + x0][2] ^ zt[y1 * w + x1][2]
            h ^= zturn
            opp_wins = search(turn.other, depth + 1)
            h ^= zturn
            h ^= zt[y0 * w + x0][2] ^ zt[y1 * w + x1][2]
            tokens[ti] = (x0, y0)
            for idx in flipped:
                tiles[idx] = want
                h ^= zt[idx][want - 1]
            if not opp_wins:
                win = True
                best = Move(ti, d, k)
                break
        if best is None:
            # losing side: keep the first-ordered reply for line reconstruction
            ti, d, k = moves[0]
            best = Move(ti, d, k)
        memo[key] = (win, best)
        return win

    # the recursion limit only ever grows: restoring it would race with
    # concurrent solves on deeper boards
    depth_budget = board.colored_count() + 64
    if sys.getrecursionlimit() < depth_budget * 4:
        sys.setrecursionlimit(depth_budget * 4)
    try:
        mover_wins = search(board.turn, 0)
    except _Exhausted:
        return SolveResult(None, None, stats["nodes"], exhausted=True,
                           max_branching=stats["branch"],
                           max_playout=stats["deepest"])

    winner = board.turn if mover_wins else board.turn.other
    line: Optional[tuple[Move, ...]] = None
    if principal:
        line = tuple(_principal_from_memo(board, memo, w, ncells, zt, zturn))
    return SolveResult(winner, line, stats["nodes"],
                       max_branching=stats["branch"],
                       max_playout=stats["deepest"])


def _principal_from_memo(board: Board, memo, w, ncells, zt, zturn):
    seq: list[Move] = []
    cur = board
    while True:
        h = zturn if cur.turn is Player.RED else 0
        for c in range(ncells):
            if cur.tiles[c]:
                h ^= zt[c][cur.tiles[c] - 1]
        for x, y in cur.tokens:
            h ^= zt[y * w + x][2]
        hit = memo.get(h)
        if hit is None or hit[1] is None:
            break
        seq.append(hit[1])
        cur = apply_move(cur, hit[1])
    return seq


# ---------------------------------------------------------------------------
# "TT v1" text format
# ---------------------------------------------------------------------------

_CHAR_TO_TILE = {".": TileColor.BLACK, "b": TileColor.BLUE, "r": TileColor.RED}
_TILE_TO_CHAR = {v: k for k, v in _CHAR_TO_TILE.items()}


def parse_board(text: str) -> Board:
    """Parse the TT v1 format.

    Line 1 ``TT v1``; line 2 ``turn B`` or ``turn R``; then one row per board
    rank over ``.`` black, ``b`` blue, ``r`` red, ``*`` token on black.
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != "TT v1":
        raise BoardParseError(1, "expected header 'TT v1'")
    if len(lines) < 2 or lines[1].strip() not in ("turn B", "turn R"):
        raise BoardParseError(2, "expected 'turn B' or 'turn R'")
    turn = Player.BLUE if lines[1].strip() == "turn B" else Player.RED
    rows = [ln.strip() for ln in lines[2:] if ln.strip()]
    if not rows:
        raise BoardParseError(3, "no board rows")
    width = len(rows[0])
    tiles = bytearray()
    tokens: list[tuple[int, int]] = []
    for y, row in enumerate(rows):
        if len(row) != width:
            raise BoardParseError(3 + y, f"ragged row (expected width {width})")
        for x, ch in enumerate(row):
            if ch == "*":
                tokens.append((x, y))
                tiles.append(TileColor.BLACK)
            elif ch in _CHAR_TO_TILE:
                tiles.append(_CHAR_TO_TILE[ch])
            else:
                raise BoardParseError(3 + y, f"unknown tile character {ch!r}")
    if not tokens:
        raise BoardParseError(3, "board has no token")
    return Board(width, len(rows), bytes(tiles), tuple(tokens), turn)


def format_board(board: Board) -> str:
    toks = set(board.tokens)
    out = ["TT v1", f"turn {board.turn.value}"]
    for y in range(board.height):
        row = []
        for x in range(board.width):
            if (x, y) in toks:
                row.append("*")
            else:
                row.append(_TILE_TO_CHAR[board.tile_at(x, y)])
        out.append("".join(row))
    return "\n".join(out) + "\n"


def color_swap_board(board: Board) -> Board:
    """Swap blue and red everywhere, including the player to move."""
    swapped = bytes(
        {TileColor.BLACK: 0, TileColor.BLUE: 2, TileColor.RED: 1}[TileColor(t)]
        for t in board.tiles
    )
    return Board(board.width, board.height, swapped, board.tokens,
                 board.turn.other)
