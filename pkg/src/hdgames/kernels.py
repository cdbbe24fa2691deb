"""Hot graph and subset-lattice kernels.

Every public function here has two implementations: a loop-based one
compiled with numba and a vectorised numpy/scipy one.  ``_accel.BACKEND``
picks the default; the ``backend`` keyword overrides it (used by the tests
and the benchmark to compare the two paths).

Graphs are passed in CSR form over edge ids: ``succ_ptr``/``succ_edge``
list the outgoing edge ids of every vertex, ``pred_ptr``/``pred_edge`` the
incoming ones, and ``src``/``dst`` map an edge id to its endpoints.
"""

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from . import _accel


def _pick(backend):
    backend = backend or _accel.BACKEND
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not _accel.USE_NUMBA:
        raise RuntimeError("numba backend requested but numba is disabled")
    return backend


def _maybe_jit(fn):
    return _accel.njit(fn) if _accel.USE_NUMBA else fn


def csr(n, keys):
    """Group edge ids by ``keys`` (src or dst): returns (ptr, edge ids)."""
    keys = np.asarray(keys, dtype=np.int64)
    order = np.argsort(keys, kind="stable").astype(np.int64)
    counts = np.bincount(keys, minlength=n)
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=ptr[1:])
    return ptr, order


# ---------------------------------------------------------------- reachability

@_maybe_jit
def _reachable_nb(n, succ_ptr, succ_edge, dst, edge_on, start):
    seen = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    seen[start] = True
    stack[0] = start
    top = 1
    while top > 0:
        top -= 1
        v = stack[top]
        for k in range(succ_ptr[v], succ_ptr[v + 1]):
            e = succ_edge[k]
            if edge_on[e]:
                w = dst[e]
                if not seen[w]:
                    seen[w] = True
                    stack[top] = w
                    top += 1
    return seen


def _reachable_np(n, src, dst, edge_on, start):
    on = np.flatnonzero(edge_on)
    m = csr_matrix((np.ones(on.size, dtype=np.int8), (src[on], dst[on])), shape=(n, n))
    order = breadth_first_order(m, start, directed=True, return_predecessors=False)
    seen = np.zeros(n, dtype=bool)
    seen[order] = True
    return seen


def reachable(n, succ_ptr, succ_edge, src, dst, start, edge_on=None, backend=None):
    """Boolean mask of vertices reachable from ``start`` over enabled edges."""
    if edge_on is None:
        edge_on = np.ones(len(dst), dtype=np.bool_)
    if _pick(backend) == "numba":
        return _reachable_nb(n, succ_ptr, succ_edge, dst, edge_on, start)
    return _reachable_np(n, src, dst, edge_on, start)


# ------------------------------------------------------------------ attractors

@_maybe_jit
def _attractor_nb(n, succ_ptr, succ_edge, pred_ptr, pred_edge, src, dst,
                  owner, in_game, target, player, strategy):
    attr = target & in_game
    # count[v]: successors of v inside the subgame not yet attracted
    count = np.zeros(n, dtype=np.int64)
    for v in range(n):
        if in_game[v]:
            c = 0
            for k in range(succ_ptr[v], succ_ptr[v + 1]):
                if in_game[dst[succ_edge[k]]]:
                    c += 1
            count[v] = c
    queue = np.empty(n, dtype=np.int64)
    head = 0
    tail = 0
    for v in range(n):
        if attr[v]:
            queue[tail] = v
            tail += 1
    while head < tail:
        w = queue[head]
        head += 1
        for k in range(pred_ptr[w], pred_ptr[w + 1]):
            e = pred_edge[k]
            u = src[e]
            if not in_game[u] or attr[u]:
                continue
            if owner[u] == player:
                attr[u] = True
                strategy[u] = e
                queue[tail] = u
                tail += 1
            else:
                count[u] -= 1
                if count[u] == 0:
                    attr[u] = True
                    queue[tail] = u
                    tail += 1
    return attr


def _attractor_np(n, src, dst, owner, in_game, target, player, strategy):
    attr = target & in_game
    live = in_game[src] & in_game[dst]
    esrc, edst = src[live], dst[live]
    eids = np.flatnonzero(live)
    total = np.bincount(esrc, minlength=n)
    mine = owner == player
    while True:
        hit = attr[edst]
        into = np.bincount(esrc[hit], minlength=n)
        grab = in_game & ~attr & ((mine & (into > 0)) | (~mine & (into == total)))
        if not grab.any():
            return attr
        # player vertices: remember the first edge (lowest id) into the attractor
        pick = hit & grab[esrc] & mine[esrc]
        if pick.any():
            cand_src = esrc[pick][::-1]
            cand_eid = eids[pick][::-1]
            strategy[cand_src] = cand_eid
        attr = attr | grab


def attractor(game, in_game, target, player, strategy, backend=None):
    """Attractor of ``target`` for ``player`` inside the ``in_game`` mask.

    ``game`` is any object exposing the CSR arrays (see ``games.GraphArrays``).
    Attracted vertices owned by ``player`` get their attracting edge written
    into ``strategy`` (an edge-id array, modified in place).
    """
    g = game
    if _pick(backend) == "numba":
        return _attractor_nb(g.n, g.succ_ptr, g.succ_edge, g.pred_ptr, g.pred_edge,
                             g.src, g.dst, g.owner, in_game, target, player, strategy)
    return _attractor_np(g.n, g.src, g.dst, g.owner, in_game, target, player, strategy)


# ----------------------------------------------------- dominating-cycle checks

@_maybe_jit
def _bad_pair_nb(n, succ_ptr, succ_edge, dst, active, a, b, ta, tb, comp,
                 index, low, onstack, stack, cstack, kstack):
    """Tarjan SCC over active edges; True iff some SCC holds an internal edge
    with a == ta and one with b == tb."""
    for v in range(n):
        index[v] = -1
        onstack[v] = False
        comp[v] = -1
    counter = 0
    top = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        depth = 0
        cstack[0] = root
        kstack[0] = succ_ptr[root]
        index[root] = counter
        low[root] = counter
        counter += 1
        stack[top] = root
        top += 1
        onstack[root] = True
        while depth >= 0:
            v = cstack[depth]
            k = kstack[depth]
            if k < succ_ptr[v + 1]:
                kstack[depth] = k + 1
                e = succ_edge[k]
                if not active[e]:
                    continue
                w = dst[e]
                if index[w] == -1:
                    index[w] = counter
                    low[w] = counter
                    counter += 1
                    stack[top] = w
                    top += 1
                    onstack[w] = True
                    depth += 1
                    cstack[depth] = w
                    kstack[depth] = succ_ptr[w]
                elif onstack[w]:
                    if index[w] < low[v]:
                        low[v] = index[w]
            else:
                if low[v] == index[v]:
                    while True:
                        top -= 1
                        x = stack[top]
                        onstack[x] = False
                        comp[x] = ncomp
                        if x == v:
                            break
                    ncomp += 1
                depth -= 1
                if depth >= 0:
                    u = cstack[depth]
                    if low[v] < low[u]:
                        low[u] = low[v]
    has_a = np.zeros(ncomp, dtype=np.bool_)
    has_b = np.zeros(ncomp, dtype=np.bool_)
    for v in range(n):
        for k in range(succ_ptr[v], succ_ptr[v + 1]):
            e = succ_edge[k]
            if active[e] and comp[dst[e]] == comp[v]:
                if a[e] == ta:
                    has_a[comp[v]] = True
                if b[e] == tb:
                    has_b[comp[v]] = True
    for c in range(ncomp):
        if has_a[c] and has_b[c]:
            return True
    return False


@_maybe_jit
def _any_bad_nb(n, succ_ptr, succ_edge, src, dst, edge_on, vmask, a, b, pairs_a, pairs_b):
    m = dst.shape[0]
    active = np.zeros(m, dtype=np.bool_)
    comp = np.empty(n, dtype=np.int64)
    index = np.empty(n, dtype=np.int64)
    low = np.empty(n, dtype=np.int64)
    onstack = np.empty(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    cstack = np.empty(n, dtype=np.int64)
    kstack = np.empty(n, dtype=np.int64)
    for i in range(pairs_a.shape[0]):
        ta = pairs_a[i]
        tb = pairs_b[i]
        found_a = False
        found_b = False
        for e in range(m):
            ok = edge_on[e] and vmask[src[e]] and vmask[dst[e]] and a[e] <= ta and b[e] <= tb
            active[e] = ok
            if ok:
                if a[e] == ta:
                    found_a = True
                if b[e] == tb:
                    found_b = True
        if not (found_a and found_b):
            continue
        if _bad_pair_nb(n, succ_ptr, succ_edge, dst, active, a, b, ta, tb, comp,
                        index, low, onstack, stack, cstack, kstack):
            return True
    return False


def _any_bad_np(n, src, dst, edge_on, vmask, a, b, pairs_a, pairs_b):
    base = edge_on & vmask[src] & vmask[dst]
    for ta, tb in zip(pairs_a, pairs_b):
        active = base & (a <= ta) & (b <= tb)
        if not ((a[active] == ta).any() and (b[active] == tb).any()):
            continue
        on = np.flatnonzero(active)
        m = csr_matrix((np.ones(on.size, dtype=np.int8), (src[on], dst[on])), shape=(n, n))
        _, labels = connected_components(m, directed=True, connection="strong")
        inner = on[labels[src[on]] == labels[dst[on]]]
        ca = set(labels[src[inner[a[inner] == ta]]].tolist())
        cb = set(labels[src[inner[b[inner] == tb]]].tolist())
        if ca & cb:
            return True
    return False


def any_bad_cycle(g, a, b, pairs, start, edge_on=None, backend=None, vmask=None):
    """Is there a cycle reachable from ``start`` whose maxima are some pair?

    For each threshold pair (ta, tb) the graph is cut down to enabled edges
    with ``a <= ta`` and ``b <= tb``; a cycle with ``max a == ta`` and
    ``max b == tb`` exists iff one strongly connected component of that
    subgraph contains an edge with ``a == ta`` and an edge with ``b == tb``.
    ``vmask`` replaces the reachable set when given (``start`` is ignored).
    """
    backend = _pick(backend)
    if edge_on is None:
        edge_on = np.ones(len(g.dst), dtype=np.bool_)
    pairs_a = np.array([p[0] for p in pairs], dtype=np.int64)
    pairs_b = np.array([p[1] for p in pairs], dtype=np.int64)
    if vmask is None:
        vmask = reachable(g.n, g.succ_ptr, g.succ_edge, g.src, g.dst, start, edge_on, backend)
    if backend == "numba":
        return bool(_any_bad_nb(g.n, g.succ_ptr, g.succ_edge, g.src, g.dst, edge_on, vmask,
                                a, b, pairs_a, pairs_b))
    return _any_bad_np(g.n, g.src, g.dst, edge_on, vmask, a, b, pairs_a, pairs_b)


# ------------------------------------------------ positional strategy search

@_maybe_jit
def _search_nb(n, succ_ptr, succ_edge, src, dst, is_eve, a, b, pairs_a, pairs_b, start, limit):
    m = dst.shape[0]
    eve = np.empty(n, dtype=np.int64)
    ne = 0
    for v in range(n):
        if is_eve[v]:
            eve[ne] = v
            ne += 1
    digit = np.zeros(ne, dtype=np.int64)
    edge_on = np.ones(m, dtype=np.bool_)
    for e in range(m):
        if is_eve[src[e]]:
            edge_on[e] = False
    for i in range(ne):
        edge_on[succ_edge[succ_ptr[eve[i]]]] = True
    tried = 0
    while True:
        tried += 1
        if tried > limit:
            return -2, digit
        vmask = _reachable_nb(n, succ_ptr, succ_edge, dst, edge_on, start)
        if not _any_bad_nb(n, succ_ptr, succ_edge, src, dst, edge_on, vmask, a, b, pairs_a, pairs_b):
            return 1, digit
        # mixed-radix increment
        i = 0
        while i < ne:
            v = eve[i]
            deg = succ_ptr[v + 1] - succ_ptr[v]
            edge_on[succ_edge[succ_ptr[v] + digit[i]]] = False
            digit[i] += 1
            if digit[i] < deg:
                edge_on[succ_edge[succ_ptr[v] + digit[i]]] = True
                break
            digit[i] = 0
            edge_on[succ_edge[succ_ptr[v]]] = True
            i += 1
        if i == ne:
            return 0, digit


def _search_np(g, is_eve, a, b, pairs, start):
    import itertools

    eve = np.flatnonzero(is_eve)
    choices = [g.succ_edge[g.succ_ptr[v]:g.succ_ptr[v + 1]] for v in eve]
    base = ~is_eve[g.src]
    # itertools.product varies the last position fastest; reverse so the
    # first Eve vertex is the fastest digit, matching the numba kernel
    for combo in itertools.product(*[list(c) for c in reversed(choices)]):
        picked = np.array(combo[::-1], dtype=np.int64)
        edge_on = base.copy()
        edge_on[picked] = True
        if not any_bad_cycle(g, a, b, pairs, start, edge_on, backend="numpy"):
            digit = np.array([int(np.flatnonzero(c == e)[0]) for c, e in zip(choices, picked)],
                             dtype=np.int64)
            return 1, digit
    return 0, None


def search_positional(g, a, b, pairs, start, limit, backend=None):
    """Look for a positional Eve strategy that avoids every bad cycle.

    Returns ``(found, digits)``: ``digits[i]`` is the position (within the
    CSR successor list) of the edge chosen at the i-th Eve vertex.  Raises
    nothing; callers check the strategy count against ``limit`` first.
    """
    backend = _pick(backend)
    is_eve = np.asarray(g.owner == 0)
    pairs_a = np.array([p[0] for p in pairs], dtype=np.int64)
    pairs_b = np.array([p[1] for p in pairs], dtype=np.int64)
    if backend == "numba":
        found, digit = _search_nb(g.n, g.succ_ptr, g.succ_edge, g.src, g.dst, is_eve,
                                  a, b, pairs_a, pairs_b, start, limit)
        return int(found) == 1, (digit.copy() if found == 1 else None)
    found, digit = _search_np(g, is_eve, a, b, pairs, start)
    return found == 1, digit


# ----------------------------------------------------------- subset lattices

@_maybe_jit
def _maximal_flipped_nb(table, positions, root_in):
    k = positions.shape[0]
    size = 1 << k
    full = np.zeros(size, dtype=np.int64)
    for i in range(1, size):
        low = i & (-i)
        j = 0
        while (1 << j) != low:
            j += 1
        full[i] = full[i ^ low] | (np.int64(1) << positions[j])
    flipped = np.zeros(size, dtype=np.bool_)
    for i in range(1, size - 1):
        flipped[i] = table[full[i]] != root_in
    up = flipped.copy()
    for j in range(k):
        bit = 1 << j
        for i in range(size):
            if not (i & bit) and up[i | bit]:
                up[i] = True
    out = np.empty(size, dtype=np.int64)
    cnt = 0
    for i in range(1, size - 1):
        if not flipped[i]:
            continue
        maximal = True
        for j in range(k):
            bit = 1 << j
            if not (i & bit) and up[i | bit]:
                maximal = False
                break
        if maximal:
            out[cnt] = full[i]
            cnt += 1
    return out[:cnt]


def _maximal_flipped_np(table, positions, root_in):
    k = len(positions)
    size = 1 << k
    full = np.zeros(size, dtype=np.int64)
    for j, p in enumerate(positions):
        lo = 1 << j
        full[lo:2 * lo] = full[:lo] | (1 << int(p))
    flipped = table[full] != root_in
    flipped[0] = False
    flipped[size - 1] = False
    up = flipped.copy()
    for j in range(k):
        view = up.reshape(-1, 2, 1 << j)
        view[:, 0, :] |= view[:, 1, :]
    # blocked[i]: some strict superset i | bit is flipped or below a flipped mask
    blocked = np.zeros(size, dtype=np.bool_)
    for j in range(k):
        b = blocked.reshape(-1, 2, 1 << j)
        b[:, 0, :] |= up.reshape(-1, 2, 1 << j)[:, 1, :]
    return full[flipped & ~blocked]


def maximal_flipped_submasks(table, mask, backend=None):
    """Maximal proper nonempty submasks of ``mask`` whose membership in the
    family (``table[m]``) differs from that of ``mask`` itself."""
    positions = np.array([i for i in range(int(mask).bit_length()) if mask >> i & 1],
                         dtype=np.int64)
    root_in = bool(table[mask])
    if _pick(backend) == "numba":
        out = _maximal_flipped_nb(table, positions, root_in)
    else:
        out = _maximal_flipped_np(table, positions, root_in)
    return sorted(int(x) for x in out)
