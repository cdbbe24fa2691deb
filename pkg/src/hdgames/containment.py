"""Language containment L(A) ⊆ L(B) for a history-deterministic B.

For such B, containment coincides with B simulating A.  A is first turned
into a Büchi automaton A', the simulation game Sim(B, A') is read as a
Muller game over (Büchi priority, B priority) pairs after contracting
forced moves, and the Zielonka-tree product gives a parity game with at
most d2 + 1 priorities.
"""

from dataclasses import dataclass

from .automata import complete, parity_to_buchi, validate
from .constructions import build_sim_game
from .errors import ValidationError
from .games import EVE, contract_forced
from .solvers import solve_parity_recursive, two_dim_as_muller
from .zielonka import muller_product


@dataclass(frozen=True)
class ContainmentReport:
    contained: bool
    vertices: int  # parity game after the Zielonka product
    priorities: int  # distinct priorities in that game
    sim_vertices: int  # 2-D simulation game before the product
    leaves: int
    height: int
    d2: int
    vertex_bound: int  # n1 * d1 * n2 * |Σ| * leaves, n2 after completing B


def containment_report(a, b, assume_hd=False, backend=None):
    if not assume_hd:
        raise ValidationError("check_containment needs assume_hd: B must be history-deterministic")
    validate(a)
    validate(b)
    if tuple(a.alphabet) != tuple(b.alphabet):
        raise ValidationError("alphabet mismatch")
    buchi = parity_to_buchi(a)
    sim = build_sim_game(b, buchi)
    # with a deterministic B every Eve position is forced, and contracting
    # those leaves one vertex per reachable (A' state, B state) pair
    small = contract_forced(sim)
    pg, tree, stats = muller_product(two_dim_as_muller(small), backend)
    contained = solve_parity_recursive(pg, backend).winner == EVE
    d1 = a.max_priority + 1
    # B is completed inside the simulation game, so its sink counts in n2, d2
    b_done = complete(b)
    d2 = b_done.max_priority
    bound = a.state_count * d1 * b_done.state_count * len(a.alphabet) * stats.leaves
    return ContainmentReport(contained, stats.vertices, stats.priorities,
                             sim.arena.vertex_count, stats.leaves, stats.height, d2, bound)


def check_containment(a, b, assume_hd=False, backend=None):
    """Is L(a) ⊆ L(b)?  Only meaningful when ``b`` is history-deterministic,
    which the caller asserts through ``assume_hd``."""
    return containment_report(a, b, assume_hd, backend).contained
