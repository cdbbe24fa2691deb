"""Zielonka trees of Muller conditions and the parity objects built from them.

A Muller condition is kept extensionally, either as an explicit family of
bitmasks over the color indices or, for colors that are priority vectors,
as a rule on the componentwise maxima of a color set.  The second form is
what every game-derived condition in this package uses; for it the
children of a tree node can be found among threshold cuts of the node
label instead of scanning the whole subset lattice.
"""

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from . import kernels
from .automata import ParityAutomaton
from .games import GameArena, ParityGame


def _is_even(x):
    return x % 2 == 0


def implication_rule(maxima):
    """(max of component 0 even) implies (max of component 1 even)."""
    m1, m2 = maxima
    return ~_is_even(m1) | _is_even(m2) if isinstance(m1, np.ndarray) else (
        not _is_even(m1) or _is_even(m2))


def token2_rule(maxima):
    """(one of Adam's two components has an even max) implies Eve's max is even."""
    me, a1, a2 = maxima
    if isinstance(me, np.ndarray):
        return ~(_is_even(a1) | _is_even(a2)) | _is_even(me)
    return not (_is_even(a1) or _is_even(a2)) or _is_even(me)


@dataclass(frozen=True)
class MullerCondition:
    colors: tuple
    family: Optional[frozenset] = None
    rule: Optional[Callable] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        if (self.family is None) == (self.rule is None):
            raise ValueError("give exactly one of family or rule")
        if len(set(self.colors)) != len(self.colors):
            raise ValueError("colors must be pairwise distinct")
        if self.family is not None:
            object.__setattr__(self, "family", frozenset(int(m) for m in self.family))
            full = (1 << len(self.colors)) - 1
            if any(m & ~full for m in self.family):
                raise ValueError("family member uses an unknown color")

    @property
    def size(self):
        return len(self.colors)

    @cached_property
    def _vectors(self):
        return np.array(self.colors, dtype=np.int64).reshape(len(self.colors), -1)

    def maxima(self, mask):
        idx = [i for i in range(self.size) if mask >> i & 1]
        return tuple(int(x) for x in self._vectors[idx].max(axis=0))

    def __contains__(self, mask):
        mask = int(mask)
        if self.family is not None:
            return mask in self.family
        if mask == 0:
            return False
        return bool(self.rule(self.maxima(mask)))

    def accepts_colors(self, color_set):
        """Membership of a set of color descriptors (an infinity set)."""
        mask = 0
        for c in color_set:
            mask |= 1 << self.colors.index(c)
        return mask in self

    @cached_property
    def table(self):
        """Membership of every bitmask, as a boolean array of length 2^|C|."""
        n = self.size
        if n > 26:
            raise ValueError(f"{n} colors: explicit table too large")
        out = np.zeros(1 << n, dtype=np.bool_)
        if self.family is not None:
            out[list(self.family)] = True
            return out
        dims = self._vectors.shape[1]
        maxes = []
        for k in range(dims):
            m = np.full(1 << n, -1, dtype=np.int64)
            for j in range(n):
                lo, hi = 1 << j, 1 << (j + 1)
                m[lo:hi] = np.maximum(m[0:lo], self._vectors[j, k])
            maxes.append(m)
        out[:] = self.rule(tuple(maxes))
        out[0] = False
        return out

    def restricted(self, keep):
        """Same rule on the sub-alphabet ``keep`` (color descriptors)."""
        if self.rule is None:
            raise ValueError("restriction implemented for rule-based conditions only")
        return MullerCondition(tuple(keep), rule=self.rule)


def containment_condition(d2):
    colors = [(p1, p2) for p1 in (1, 2) for p2 in range(d2 + 1)]
    return MullerCondition(colors, rule=implication_rule)


def implication_condition(colors):
    colors = tuple(tuple(c) for c in colors)
    if not colors:
        raise ValueError("need at least one color")
    return MullerCondition(colors, rule=implication_rule)


def token2_condition(colors):
    colors = tuple(tuple(c) for c in colors)
    if not colors:
        raise ValueError("need at least one color")
    return MullerCondition(colors, rule=token2_rule)


# ------------------------------------------------------------------ the tree

@dataclass(eq=False)
class ZNode:
    label: int
    in_family: bool
    depth: int
    children: list = field(default_factory=list)
    parent: Optional["ZNode"] = field(default=None, repr=False)

    @property
    def is_leaf(self):
        return not self.children


@dataclass(eq=False)
class ZielonkaTree:
    condition: MullerCondition
    root: ZNode
    leaves: list
    height: int

    def nodes(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


def _threshold_children(cond, mask, root_in):
    vec = cond._vectors
    members = [i for i in range(cond.size) if mask >> i & 1]
    dims = vec.shape[1]
    cuts = []
    for k in range(dims):
        per = {}
        for t in sorted({int(vec[i, k]) for i in members}):
            per[t] = sum(1 << i for i in members if vec[i, k] <= t)
        cuts.append(per)
    found = set()
    for combo in itertools.product(*[list(c.items()) for c in cuts]):
        sub = mask
        for _, m in combo:
            sub &= m
        if sub and sub != mask and (sub in cond) != root_in:
            found.add(sub)
    return [s for s in found if not any(s != o and s & o == s for o in found)]


def _children(cond, mask, root_in, method, backend):
    if method == "thresholds":
        kids = _threshold_children(cond, mask, root_in)
    else:
        kids = kernels.maximal_flipped_submasks(cond.table, mask, backend)
    return sorted(kids)


def build_zielonka(cond, method="auto", backend=None):
    """Zielonka tree of ``cond``; children sorted by ascending bitmask.

    ``method="thresholds"`` (default for rule-based conditions) only looks at
    the sets cut out by per-component thresholds, which contain every
    maximal flipped subset when membership depends on the maxima alone.
    ``method="lattice"`` scans the full subset lattice of every node.
    """
    if method == "auto":
        method = "thresholds" if cond.rule is not None else "lattice"
    if method == "thresholds" and cond.rule is None:
        raise ValueError("threshold search needs a rule-based condition")
    full = (1 << cond.size) - 1
    root = ZNode(full, full in cond, 0)
    leaves = []
    height = 0
    stack = [root]
    while stack:
        node = stack.pop()
        height = max(height, node.depth)
        for sub in _children(cond, node.label, node.in_family, method, backend):
            node.children.append(ZNode(sub, not node.in_family, node.depth + 1, parent=node))
        stack.extend(reversed(node.children))
    # left-to-right leaf order
    stack = [root]
    while stack:
        node = stack.pop()
        if node.is_leaf:
            leaves.append(node)
        stack.extend(reversed(node.children))
    return ZielonkaTree(cond, root, leaves, height)


def zielonka_shape(tree):
    return len(tree.leaves), tree.height


def check_tree(tree):
    """Assert the structural invariants; returns the tree for chaining."""
    cond = tree.condition
    for node in tree.nodes():
        assert (node.label in cond) == node.in_family
        labels = [c.label for c in node.children]
        assert len(set(labels)) == len(labels)
        for child in node.children:
            assert child.label and child.label & node.label == child.label
            assert child.label != node.label
            assert child.in_family != node.in_family
    return tree


# ------------------------------------------------------ deterministic automaton

def color_token(c):
    return "/".join(str(x) for x in c) if isinstance(c, tuple) else str(c)


def _top_priority(tree):
    h = tree.height
    return h if tree.root.in_family == (h % 2 == 0) else h + 1


def dpa_tables(tree):
    """Successor and priority of every (leaf, color) pair of the tree automaton."""
    cond = tree.condition
    top = _top_priority(tree)
    leaf_index = {id(leaf): i for i, leaf in enumerate(tree.leaves)}
    nxt = np.zeros((len(tree.leaves), cond.size), dtype=np.int64)
    prio = np.zeros((len(tree.leaves), cond.size), dtype=np.int64)
    for li, leaf in enumerate(tree.leaves):
        path = []
        node = leaf
        while node is not None:
            path.append(node)
            node = node.parent
        path.reverse()  # root first
        for x in range(cond.size):
            bit = 1 << x
            depth = max(i for i, node in enumerate(path) if node.label & bit)
            m = path[depth]
            prio[li, x] = top - depth
            if m is leaf:
                nxt[li, x] = li
                continue
            below = path[depth + 1]
            k = next(i for i, c in enumerate(m.children) if c is below)
            target = m.children[(k + 1) % len(m.children)]
            while target.children:
                target = target.children[0]
            nxt[li, x] = leaf_index[id(target)]
    return nxt, prio


def tree_to_dpa(tree, cond=None):
    """Deterministic complete parity automaton over the colors whose states
    are the leaves of ``tree`` and which accepts exactly the color
    sequences whose infinity set belongs to the condition."""
    cond = cond or tree.condition
    nxt, prio = dpa_tables(tree)
    trans = tuple((q, x, int(nxt[q, x]), int(prio[q, x]))
                  for q in range(nxt.shape[0]) for x in range(nxt.shape[1]))
    return ParityAutomaton(tuple(color_token(c) for c in cond.colors), nxt.shape[0], 0,
                           trans, int(prio.max()), name="zielonka")


# ------------------------------------------------------------- game products

@dataclass
class ProductStats:
    vertices: int
    priorities: int
    leaves: int
    height: int


def muller_product(g, backend=None):
    """``muller_game_to_parity`` plus the size figures of the construction."""
    tree = build_zielonka(g.condition, backend=backend)
    nxt, prio = dpa_tables(tree)
    arena = g.arena
    L = len(tree.leaves)
    src = np.array([e[0] for e in arena.edges], dtype=np.int64)
    dst = np.array([e[1] for e in arena.edges], dtype=np.int64)
    col = np.array(g.color, dtype=np.int64)
    q = np.arange(L, dtype=np.int64)
    psrc = (src[:, None] * L + q[None, :]).ravel()
    pdst = (dst[:, None] * L + nxt[:, col].T).ravel()
    ppri = prio[:, col].T.ravel()
    n = arena.vertex_count * L
    ptr, order = kernels.csr(n, psrc)
    seen = kernels.reachable(n, ptr, order, psrc, pdst, arena.initial * L, backend=backend)
    newid = np.cumsum(seen) - 1
    keep = seen[psrc]
    owner = [arena.owner[v // L] for v in np.flatnonzero(seen)]
    parena = GameArena(int(seen.sum()), owner, int(newid[arena.initial * L]),
                       list(zip(newid[psrc[keep]].tolist(), newid[pdst[keep]].tolist())))
    pr = ppri[keep].tolist()
    pg = ParityGame(parena, pr, max(pr, default=0), name=g.name + "_parity")
    return pg, tree, ProductStats(parena.vertex_count, len(set(pr)), L, tree.height)


def muller_game_to_parity(g, backend=None):
    return muller_product(g, backend)[0]
