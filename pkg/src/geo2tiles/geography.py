"""Geography-style graph game on bipartite max-degree-3 digraphs.

Players alternately push a token along an arc to a never-visited vertex; a
stuck player loses. On a bipartite graph the mover is always the owner of
the colour class being left, so the impartial game splits into blue and red
roles. Includes validation, winner-preserving normalization, exact solving,
and a seeded instance generator that builds planar-by-construction inputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from geo2tiles.tiles import Player


class GeoParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NormalizationFailed(Exception):
    pass


class GenerationFailed(Exception):
    pass


class ResourceExhausted(Exception):
    pass


class InvalidInstance(Exception):
    """Raised by pipeline stages that require a strict-valid instance."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass
class GeoInstance:
    """A directed graph game instance. Treat as immutable after construction.

    ``colors`` maps vertex name to its owner; ``coords`` (optional) is an
    integer-grid straight-line embedding; ``rotation`` (optional) gives the
    cyclic order of incident arc neighbours around each vertex.
    """

    colors: dict[str, Player]
    arcs: list[tuple[str, str]]
    start: str
    coords: Optional[dict[str, tuple[int, int]]] = None
    rotation: Optional[dict[str, list[str]]] = None

    def vertex_names(self) -> list[str]:
        return list(self.colors)

    def out_neighbors(self, v: str) -> list[str]:
        return sorted(b for a, b in self.arcs if a == v)

    def in_neighbors(self, v: str) -> list[str]:
        return sorted(a for a, b in self.arcs if b == v)

    def out_degree(self, v: str) -> int:
        return sum(1 for a, _ in self.arcs if a == v)

    def in_degree(self, v: str) -> int:
        return sum(1 for _, b in self.arcs if b == v)

    def arc_slots(self, v: str) -> int:
        return self.out_degree(v) + self.in_degree(v)


@dataclass(frozen=True)
class GeoPosition:
    instance: GeoInstance
    current: str
    visited: frozenset[str]
    mover: Player

    @classmethod
    def initial(cls, instance: GeoInstance) -> GeoPosition:
        return cls(instance, instance.start, frozenset({instance.start}),
                   instance.colors[instance.start])


@dataclass(frozen=True)
class GeoSolveResult:
    winner: Player
    nodes_expanded: int
    principal: Optional[tuple[str, ...]] = None


@dataclass
class ValidationReport:
    profile: str
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _segments_cross(p1, p2, q1, q2) -> bool:
    # proper or touching intersection of two closed segments, shared
    # endpoints excluded by the caller
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 0) - (v < 0)

    def on_seg(a, b, c):
        return (min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= c[1] <= max(a[1], b[1]))

    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    if o1 != o2 and o3 != o4:
        return True
    for a, b, c in ((p1, p2, q1), (p1, p2, q2), (q1, q2, p1), (q1, q2, p2)):
        if orient(a, b, c) == 0 and on_seg(a, b, c):
            return True
    return False


def validate(instance: GeoInstance, profile: str = "strict") -> ValidationReport:
    """Check an instance. ``relaxed`` checks only well-formedness; ``strict``
    adds bipartiteness, degree <= 3, the start-vertex shape, and (when an
    embedding is supplied) its planarity consistency. Violations are data,
    not exceptions.
    """
    if profile not in ("strict", "relaxed"):
        raise ValueError(f"unknown profile {profile!r}")
    rep = ValidationReport(profile)
    bad = rep.violations
    names = set(instance.colors)

    if instance.start not in names:
        bad.append(f"start vertex {instance.start!r} is not declared")
    seen_arcs = set()
    for a, b in instance.arcs:
        if a not in names or b not in names:
            bad.append(f"arc ({a},{b}) references an undeclared vertex")
            continue
        if a == b:
            bad.append(f"self-loop at {a}")
        if (a, b) in seen_arcs:
            bad.append(f"duplicate arc ({a},{b})")
        seen_arcs.add((a, b))
    if instance.coords is not None:
        for v in instance.coords:
            if v not in names:
                bad.append(f"coord for undeclared vertex {v}")
    if bad or profile == "relaxed":
        return rep

    for a, b in instance.arcs:
        if instance.colors[a] == instance.colors[b]:
            bad.append(f"arc ({a},{b}) joins two "
                       f"{instance.colors[a].name.lower()} vertices")
    for v in names:
        und = {u for u, w in instance.arcs if w == v} | \
              {w for u, w in instance.arcs if u == v}
        if len(und) > 3:
            bad.append(f"vertex {v} has underlying degree {len(und)} > 3")
        if instance.arc_slots(v) > 3 and v != instance.start:
            bad.append(f"vertex {v} has {instance.arc_slots(v)} arc slots > 3")
    s = instance.start
    if s in names:
        if instance.colors[s] is not Player.BLUE:
            bad.append(f"start vertex {s} is not blue")
        if instance.in_degree(s) != 0:
            bad.append(f"start vertex {s} has indegree "
                       f"{instance.in_degree(s)} != 0")
        if instance.out_degree(s) != 2:
            bad.append(f"start vertex {s} has outdegree "
                       f"{instance.out_degree(s)} != 2")

    if instance.coords is not None:
        pts = instance.coords
        missing = [v for v in names if v not in pts]
        if missing:
            bad.append(f"coords missing for {sorted(missing)}")
        else:
            if len(set(pts.values())) != len(pts):
                bad.append("two vertices share a grid point")
            segs = [((a, b), pts[a], pts[b]) for a, b in instance.arcs]
            for i in range(len(segs)):
                for j in range(i + 1, len(segs)):
                    (a1, b1), p1, p2 = segs[i]
                    (a2, b2), q1, q2 = segs[j]
                    if {a1, b1} & {a2, b2}:
                        continue
                    if _segments_cross(p1, p2, q1, q2):
                        bad.append(f"arcs ({a1},{b1}) and ({a2},{b2}) cross "
                                   "in the supplied embedding")
    if instance.rotation is not None:
        for v, order in instance.rotation.items():
            und = set(instance.out_neighbors(v)) | set(instance.in_neighbors(v))
            if set(order) != und:
                bad.append(f"rotation at {v} does not list its neighbours")
    return rep


def gg_moves(pos: GeoPosition) -> list[str]:
    """Unvisited out-neighbours of the current vertex, in name order."""
    return [v for v in pos.instance.out_neighbors(pos.current)
            if v not in pos.visited]


_solve_calls = 0


def solve_call_count() -> int:
    """Total gg_solve() invocations in this process (instrumentation)."""
    return _solve_calls


def gg_solve(pos: GeoPosition, max_vertices: int = 26,
             principal: bool = True) -> GeoSolveResult:
    """Exact winner by memoized search on (current vertex, visited set)."""
    global _solve_calls
    _solve_calls += 1
    inst = pos.instance
    names = sorted(inst.colors)
    if len(names) > max_vertices:
        raise ResourceExhausted(
            f"{len(names)} vertices exceeds the exact-solve cap {max_vertices}")
    index = {n: i for i, n in enumerate(names)}
    succ: list[list[int]] = [[] for _ in names]
    for a, b in sorted(inst.arcs):
        succ[index[a]].append(index[b])
    memo: dict[tuple[int, int], tuple[bool, int]] = {}
    nodes = 0

    def search(cur: int, visited: int) -> tuple[bool, int]:
        nonlocal nodes
        key = (cur, visited)
        hit = memo.get(key)
        if hit is not None:
            return hit
        nodes += 1
        result = (False, -1)
        for nxt in succ[cur]:
            if visited & (1 << nxt):
                continue
            w, _ = search(nxt, visited | (1 << nxt))
            if not w:
                result = (True, nxt)
                break
        memo[key] = result
        return result

    c0 = index[pos.current]
    v0 = 0
    for v in pos.visited:
        v0 |= 1 << index[v]
    mover_wins, _ = search(c0, v0)
    winner = pos.mover if mover_wins else pos.mover.other

    line = None
    if principal:
        seq = [pos.current]
        cur, vis = c0, v0
        while True:
            entry = memo.get((cur, vis))
            if entry is None:
                break
            w, best = entry
            if w:
                nxt = best
            else:
                opts = [n for n in succ[cur] if not vis & (1 << n)]
                if not opts:
                    break
                nxt = opts[0]
            seq.append(names[nxt])
            cur, vis = nxt, vis | (1 << nxt)
        line = tuple(seq)
    return GeoSolveResult(winner, nodes, line)


def normalize(instance: GeoInstance) -> GeoInstance:
    """Winner-preserving cleanup before layout.

    Iteratively deletes non-start vertices of indegree 0 (never reachable in
    play), then splits every sink of indegree >= 2 so that each sink keeps
    exactly one incoming arc. The split peels arcs onto fresh copies of the
    sink, which cannot change who wins.
    """
    colors = dict(instance.colors)
    arcs = list(instance.arcs)
    coords = dict(instance.coords) if instance.coords is not None else None
    rotation = ({v: list(order) for v, order in instance.rotation.items()}
                if instance.rotation is not None else None)

    while True:
        dangling = sorted(v for v in colors
                          if v != instance.start
                          and not any(b == v for _, b in arcs))
        if not dangling:
            break
        for v in dangling:
            del colors[v]
            if coords is not None:
                coords.pop(v, None)
            if rotation is not None:
                rotation.pop(v, None)
                for order in rotation.values():
                    while v in order:
                        order.remove(v)
            arcs = [(a, b) for a, b in arcs if a != v and b != v]

    def fresh(base: str) -> str:
        k = 2
        while f"{base}_{k}" in colors:
            k += 1
        return f"{base}_{k}"

    for v in sorted(colors):
        if any(a == v for a, _ in arcs):
            continue  # not a sink
        incoming = sorted((a, b) for a, b in arcs if b == v)
        for a, _ in incoming[1:]:
            v2 = fresh(v)
            colors[v2] = colors[v]
            arcs[arcs.index((a, v))] = (a, v2)
            if coords is not None:
                coords[v2] = _free_point_near(coords, coords.get(a, (0, 0)))
            if rotation is not None:
                if a in rotation:
                    rotation[a] = [v2 if n == v else n for n in rotation[a]]
                if v in rotation and a in rotation[v]:
                    rotation[v].remove(a)
                rotation[v2] = [a]

    out = GeoInstance(colors, arcs, instance.start, coords, rotation)
    for v in colors:
        if out.out_degree(v) == 0 and out.in_degree(v) != 1:
            raise NormalizationFailed(
                f"sink {v} still has indegree {out.in_degree(v)}")
        if v != instance.start and out.in_degree(v) == 0:
            raise NormalizationFailed(f"vertex {v} still has indegree 0")
    return out


def _free_point_near(coords: dict[str, tuple[int, int]],
                     anchor: tuple[int, int]) -> tuple[int, int]:
    taken = set(coords.values())
    ax, ay = anchor
    for radius in range(1, 64):
        ring = []
        for dx in range(-radius, radius + 1):
            for dy in range(-radius, radius + 1):
                if max(abs(dx), abs(dy)) == radius:
                    ring.append((abs(dx) + abs(dy), ay + dy, ax + dx))
        for _, y, x in sorted(ring):
            if (x, y) not in taken:
                return (x, y)
    raise NormalizationFailed("no free grid point near split sink")


# ---------------------------------------------------------------------------
# Instance generation
# ---------------------------------------------------------------------------

_GRID_STEPS = ((0, -1), (1, 0), (0, 1), (-1, 0))


def generate(max_vertices: int, seed: int) -> GeoInstance:
    """Deterministic strict-valid instance on an integer grid.

    Vertices occupy distinct grid points and every arc joins grid
    neighbours, so the straight-line embedding is planar by construction and
    the two-colouring by point parity is bipartite for free. Sinks of
    indegree 2 are allowed (normalize splits them later).
    """
    if max_vertices < 3:
        raise ValueError("need at least 3 vertices")
    rng = random.Random(seed)
    for _ in range(64):
        inst = _grow_instance(rng, max_vertices)
        if inst is not None and validate(inst, "strict").ok:
            return inst
    raise GenerationFailed(f"could not generate an instance (seed {seed})")


def _grow_instance(rng: random.Random, n: int) -> Optional[GeoInstance]:
    pts: set[tuple[int, int]] = {(0, 0)}
    while len(pts) < n:
        growable = sorted(
            p for p in pts
            if any((p[0] + dx, p[1] + dy) not in pts for dx, dy in _GRID_STEPS))
        p = rng.choice(growable)
        free = sorted((p[0] + dx, p[1] + dy) for dx, dy in _GRID_STEPS
                      if (p[0] + dx, p[1] + dy) not in pts)
        pts.add(rng.choice(free))

    def nbrs(p):
        return sorted(q for q in
                      ((p[0] + dx, p[1] + dy) for dx, dy in _GRID_STEPS)
                      if q in pts)

    starts = sorted(p for p in pts if len(nbrs(p)) >= 2)
    if not starts:
        return None
    s = rng.choice(starts)

    # BFS tree from the start: guarantees indegree >= 1 everywhere else
    out_deg: dict[tuple[int, int], int] = {p: 0 for p in pts}
    in_deg: dict[tuple[int, int], int] = {p: 0 for p in pts}
    arcs_pts: list[tuple[tuple[int, int], tuple[int, int]]] = []
    visited = {s}
    queue = [s]
    while queue:
        u = queue.pop(0)
        cap = 2 if u == s else min(2 - out_deg[u], 3 - out_deg[u] - in_deg[u])
        cands = [v for v in nbrs(u) if v not in visited]
        rng.shuffle(cands)
        for v in cands[:max(cap, 0)]:
            arcs_pts.append((u, v))
            out_deg[u] += 1
            in_deg[v] += 1
            visited.add(v)
            queue.append(v)
    if out_deg[s] != 2:
        return None
    kept = visited
    if len(kept) < 3:
        return None

    # extra arcs for merges and richer shapes
    pairs = sorted({tuple(sorted((p, q), key=lambda t: (t[1], t[0])))
                    for p in kept for q in nbrs(p) if q in kept})
    rng.shuffle(pairs)
    arc_set = set(arcs_pts)
    for p, q in pairs:
        for u, v in ((p, q), (q, p)):
            if (u, v) in arc_set or (v, u) in arc_set:
                continue
            if v == s or u == s:
                continue
            if out_deg[u] >= 2 or in_deg[v] >= 2:
                continue
            if out_deg[u] + in_deg[u] >= 3 or out_deg[v] + in_deg[v] >= 3:
                continue
            if rng.random() < 0.45:
                arcs_pts.append((u, v))
                arc_set.add((u, v))
                out_deg[u] += 1
                in_deg[v] += 1
            break

    order = sorted(kept, key=lambda p: (p != s, p[1], p[0]))
    names = {p: ("v%02d" % i) for i, p in enumerate(order)}
    parity = (s[0] + s[1]) % 2
    colors = {
        names[p]: Player.BLUE if (p[0] + p[1]) % 2 == parity else Player.RED
        for p in order
    }
    arcs = sorted((names[a], names[b]) for a, b in arcs_pts)
    coords = {names[p]: p for p in order}
    return GeoInstance(colors, arcs, names[s], coords, None)


# ---------------------------------------------------------------------------
# "GG v1" text format
# ---------------------------------------------------------------------------

def parse_instance(text: str) -> GeoInstance:
    colors: dict[str, Player] = {}
    arcs: list[tuple[str, str]] = []
    start: Optional[str] = None
    coords: dict[str, tuple[int, int]] = {}
    rotation: dict[str, list[str]] = {}

    lines = text.splitlines()
    if not lines or lines[0].strip() != "GG v1":
        raise GeoParseError(1, "expected header 'GG v1'")
    for i, raw in enumerate(lines[1:], start=2):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex":
            if len(parts) != 3 or parts[2] not in ("B", "R"):
                raise GeoParseError(i, "expected 'vertex <name> <B|R>'")
            if parts[1] in colors:
                raise GeoParseError(i, f"duplicate vertex {parts[1]!r}")
            colors[parts[1]] = Player(parts[2])
        elif kind == "arc":
            if len(parts) != 3:
                raise GeoParseError(i, "expected 'arc <from> <to>'")
            arcs.append((parts[1], parts[2]))
        elif kind == "start":
            if len(parts) != 2:
                raise GeoParseError(i, "expected 'start <name>'")
            start = parts[1]
        elif kind == "coord":
            if len(parts) != 4:
                raise GeoParseError(i, "expected 'coord <name> <x> <y>'")
            try:
                coords[parts[1]] = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise GeoParseError(i, "coord values must be integers")
        elif kind == "rot":
            if len(parts) < 3:
                raise GeoParseError(i, "expected 'rot <name> <nbr> ...'")
            rotation[parts[1]] = parts[2:]
        else:
            raise GeoParseError(i, f"unknown directive {kind!r}")
    for a, b in arcs:
        if a not in colors or b not in colors:
            raise GeoParseError(
                len(lines), f"arc ({a},{b}) references an undeclared vertex")
    if start is None:
        raise GeoParseError(len(lines), "missing 'start' directive")
    if start not in colors:
        raise GeoParseError(len(lines), f"start vertex {start!r} undeclared")
    return GeoInstance(colors, arcs, start,
                       coords or None, rotation or None)


def format_instance(instance: GeoInstance) -> str:
    out = ["GG v1"]
    for v in sorted(instance.colors):
        out.append(f"vertex {v} {instance.colors[v].value}")
    out.append(f"start {instance.start}")
    for a, b in sorted(instance.arcs):
        out.append(f"arc {a} {b}")
    if instance.coords:
        for v in sorted(instance.coords):
            x, y = instance.coords[v]
            out.append(f"coord {v} {x} {y}")
    if instance.rotation:
        for v in sorted(instance.rotation):
            out.append(f"rot {v} " + " ".join(instance.rotation[v]))
    return "\n".join(out) + "\n"
