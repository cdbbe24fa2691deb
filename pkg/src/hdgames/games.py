"""Game arenas with edge-labelled parity, 2-D parity and Muller objectives."""

from dataclasses import dataclass, field, replace
from enum import IntEnum
from functools import cached_property

import numpy as np

from . import kernels
from .errors import ParseError, ValidationError


class Player(IntEnum):
    EVE = 0
    ADAM = 1

    def __str__(self):
        return self.name.capitalize()

    @property
    def opponent(self):
        return Player(1 - self)


EVE, ADAM = Player.EVE, Player.ADAM


class GraphArrays:
    """CSR view of an arena consumed by the kernels."""

    def __init__(self, n, owner, src, dst):
        self.n = n
        self.owner = np.asarray(owner, dtype=np.int64)
        self.src = np.asarray(src, dtype=np.int64)
        self.dst = np.asarray(dst, dtype=np.int64)
        self.succ_ptr, self.succ_edge = kernels.csr(n, self.src)
        self.pred_ptr, self.pred_edge = kernels.csr(n, self.dst)


@dataclass(frozen=True)
class GameArena:
    vertex_count: int
    owner: tuple  # Player per vertex
    initial: int
    edges: tuple  # (src, dst); labels live in the game objects

    def __post_init__(self):
        object.__setattr__(self, "owner", tuple(Player(o) for o in self.owner))
        object.__setattr__(self, "edges", tuple((int(s), int(d)) for s, d in self.edges))

    @cached_property
    def arrays(self):
        src = [e[0] for e in self.edges]
        dst = [e[1] for e in self.edges]
        return GraphArrays(self.vertex_count, [int(o) for o in self.owner], src, dst)

    def out_edges(self, v):
        g = self.arrays
        return [int(e) for e in g.succ_edge[g.succ_ptr[v]:g.succ_ptr[v + 1]]]

    def eve_vertices(self):
        return [v for v, o in enumerate(self.owner) if o == EVE]


@dataclass(frozen=True)
class ParityGame:
    arena: GameArena
    priority: tuple
    max_priority: int
    name: str = field(default="G", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "priority", tuple(int(p) for p in self.priority))


@dataclass(frozen=True)
class TwoDimGame:
    """Eve wins a play iff (it satisfies priority1) implies (it satisfies priority2)."""

    arena: GameArena
    priority1: tuple
    priority2: tuple
    max1: int
    max2: int
    name: str = field(default="G", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "priority1", tuple(int(p) for p in self.priority1))
        object.__setattr__(self, "priority2", tuple(int(p) for p in self.priority2))


@dataclass(frozen=True)
class MullerGame:
    arena: GameArena
    color: tuple  # color index per edge
    condition: object  # zielonka.MullerCondition
    name: str = field(default="G", compare=False)


@dataclass(frozen=True)
class PositionalStrategy:
    """Edge id chosen at each vertex the strategy covers."""

    choice: dict

    def edge_mask(self, arena, player):
        """Edges usable once ``player`` commits to this strategy."""
        keep = np.ones(len(arena.edges), dtype=bool)
        for e, (s, _) in enumerate(arena.edges):
            if arena.owner[s] == player and self.choice.get(s) != e:
                keep[e] = False
        return keep


def validate_arena(arena):
    n = arena.vertex_count
    if n < 1:
        raise ValidationError("arena needs at least one vertex")
    if len(arena.owner) != n:
        raise ValidationError("owner list length differs from vertex count")
    if not 0 <= arena.initial < n:
        raise ValidationError(f"vertex index out of range: initial {arena.initial}")
    outdeg = [0] * n
    for s, d in arena.edges:
        if not (0 <= s < n and 0 <= d < n):
            raise ValidationError(f"vertex index out of range in edge ({s}, {d})")
        outdeg[s] += 1
    for v, k in enumerate(outdeg):
        if k == 0:
            raise ValidationError(f"dead vertex {v}")


def _check_labels(values, bound, what, m):
    if len(values) != m:
        raise ValidationError(f"{what}: one label per edge expected")
    for e, p in enumerate(values):
        if not 0 <= p <= bound:
            raise ValidationError(f"{what} {p} of edge {e} outside [0, {bound}]")


def validate_game(g):
    validate_arena(g.arena)
    m = len(g.arena.edges)
    if isinstance(g, ParityGame):
        _check_labels(g.priority, g.max_priority, "priority", m)
    elif isinstance(g, TwoDimGame):
        _check_labels(g.priority1, g.max1, "priority1", m)
        _check_labels(g.priority2, g.max2, "priority2", m)
    elif isinstance(g, MullerGame):
        _check_labels(g.color, len(g.condition.colors) - 1, "color", m)
    else:
        raise TypeError(f"not a game: {type(g).__name__}")


def dualize_priorities(g):
    """Shift every priority by one: a play wins the result iff it loses ``g``."""
    return replace(g, priority=tuple(p + 1 for p in g.priority), max_priority=g.max_priority + 1)


def permute(g, perm):
    """Rename vertex v to ``perm[v]`` (edge order unchanged)."""
    a = g.arena
    owner = [None] * a.vertex_count
    for v, o in enumerate(a.owner):
        owner[perm[v]] = o
    arena = GameArena(a.vertex_count, owner, perm[a.initial],
                      [(perm[s], perm[d]) for s, d in a.edges])
    return replace(g, arena=arena)


def contract_forced(g):
    """Remove every non-initial vertex with a single outgoing edge.

    An edge into such a vertex is redirected to its successor and labelled
    with the componentwise max of both labels.  Plays are the same up to
    these forced steps and every component keeps its maximum seen
    infinitely often, so the winner of a 2-D game does not change.  Forced
    cycles keep one vertex.
    """
    a = g.arena
    out = [a.out_edges(v) for v in range(a.vertex_count)]
    forced = [v != a.initial and len(out[v]) == 1 for v in range(a.vertex_count)]
    labels = list(zip(g.priority1, g.priority2))
    # resolve each forced vertex to (final target, merged label of the chain)
    hop = {}
    for v in range(a.vertex_count):
        if not forced[v] or v in hop:
            continue
        chain, seen = [], set()
        w = v
        while forced[w] and w not in hop and w not in seen:
            seen.add(w)
            chain.append(w)
            w = a.edges[out[w][0]][1]
        if w in seen:  # forced cycle: keep w as a real vertex
            forced[w] = False
        for u in reversed(chain):
            if not forced[u]:
                continue
            e = out[u][0]
            nxt = a.edges[e][1]
            tail, lab = hop[nxt] if nxt in hop else (nxt, (0, 0))
            hop[u] = (tail, (max(labels[e][0], lab[0]), max(labels[e][1], lab[1])))
    keep = [v for v in range(a.vertex_count) if not forced[v]]
    new_id = {v: i for i, v in enumerate(keep)}
    edges, p1, p2 = [], [], []
    for v in keep:
        for e in out[v]:
            w = a.edges[e][1]
            tail, lab = hop[w] if forced[w] else (w, (0, 0))
            edges.append((new_id[v], new_id[tail]))
            p1.append(max(labels[e][0], lab[0]))
            p2.append(max(labels[e][1], lab[1]))
    arena = GameArena(len(keep), [a.owner[v] for v in keep], new_id[a.initial], edges)
    return TwoDimGame(arena, p1, p2, g.max1, g.max2, name=g.name)


def is_bipartite(arena):
    return all(arena.owner[s] != arena.owner[d] for s, d in arena.edges)


# ------------------------------------------------------------------ text format

def parse_game(text):
    from .automata import _int, _tokens

    name = dims = n = initial = None
    owners = {}
    edges = []
    ended = False
    for lineno, parts in _tokens(text):
        if ended:
            raise ParseError("content after 'end'", lineno)
        key, args = parts[0], parts[1:]
        if key == "pg":
            if len(args) != 2 or args[1] not in ("1", "2"):
                raise ParseError("expected 'pg <name> <1|2>'", lineno)
            name, dims = args[0], int(args[1])
        elif name is None:
            raise ParseError("file must start with 'pg <name> <dims>'", lineno)
        elif key == "vertices" and len(args) == 1:
            n = _int(args[0], lineno)
        elif key == "initial" and len(args) == 1:
            initial = _int(args[0], lineno)
        elif key == "owner":
            if len(args) != 2 or args[1] not in ("E", "A"):
                raise ParseError("expected 'owner <v> <E|A>'", lineno)
            owners[_int(args[0], lineno)] = EVE if args[1] == "E" else ADAM
        elif key == "edge":
            if len(args) != 2 + dims:
                raise ParseError(f"expected 'edge <src> <dst>' and {dims} priorities", lineno)
            edges.append(tuple(_int(x, lineno) for x in args))
        elif key == "end":
            ended = True
        else:
            raise ParseError(f"unexpected line {' '.join(parts)!r}", lineno)
    if not ended:
        raise ParseError("missing 'end'")
    if n is None or initial is None:
        raise ParseError("missing vertices or initial")
    missing = [v for v in range(n) if v not in owners]
    if missing:
        raise ValidationError(f"no owner for vertex {missing[0]}")
    if any(not 0 <= v < n for v in owners):
        raise ValidationError("owner line for vertex out of range")
    arena = GameArena(n, [owners[v] for v in range(n)], initial, [e[:2] for e in edges])
    if dims == 1:
        pr = [e[2] for e in edges]
        g = ParityGame(arena, pr, max(pr, default=0), name=name)
    else:
        p1 = [e[2] for e in edges]
        p2 = [e[3] for e in edges]
        g = TwoDimGame(arena, p1, p2, max(p1, default=0), max(p2, default=0), name=name)
    validate_game(g)
    return g


def emit_game(g):
    a = g.arena
    dims = 1 if isinstance(g, ParityGame) else 2
    lines = [f"pg {g.name} {dims}", f"vertices {a.vertex_count}", f"initial {a.initial}"]
    lines += [f"owner {v} {'E' if o == EVE else 'A'}" for v, o in enumerate(a.owner)]
    for e, (s, d) in enumerate(a.edges):
        if dims == 1:
            lines.append(f"edge {s} {d} {g.priority[e]}")
        else:
            lines.append(f"edge {s} {d} {g.priority1[e]} {g.priority2[e]}")
    lines.append("end")
    return "\n".join(lines) + "\n"
