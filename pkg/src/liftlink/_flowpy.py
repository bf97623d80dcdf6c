"""Pure-Python unit-capacity flow kernel.

Behavioural twin of the compiled kernel in ``_flowcore``: same augmenting
order (breadth-first, ascending adjacency order), same returned state
arrays.  Certificates must not depend on which backend happens to be
active, so any change here has to be mirrored there.
"""

from array import array
from collections import deque


def unit_flow(n, eu, ev, dirflag, adj_start, adj_edge, s, t, limit):
    """Count edge-disjoint s-t paths under unit capacities.

    ``eu``/``ev`` hold edge endpoints and ``adj_edge[adj_start[v]:adj_start[v+1]]``
    lists the edges touching ``v``.  An edge with ``dirflag`` set may only be
    traversed from ``eu`` to ``ev``; others are undirected.

    Returns ``(value, state, reach)``: ``state[i]`` is 0 (unused), 1 (carries
    flow eu->ev) or 2 (flow ev->eu, undirected edges only); ``reach`` flags
    the vertices scanned by the final failing search, i.e. the source side
    of a minimum cut.  ``reach`` is all-zero when the search stopped early
    because ``limit`` was reached.
    """
    lim = -1 if limit is None else int(limit)  # negative means unlimited
    state = bytearray(len(eu))
    value = 0
    while True:
        if 0 <= lim <= value:
            return value, state, bytearray(n)
        pred = array("i", bytes(4 * n))
        reach = bytearray(n)
        for i in range(n):
            pred[i] = -1
        pred[s] = -2
        reach[s] = 1
        queue = deque((s,))
        found = False
        while queue:
            x = queue.popleft()
            if x == t:
                found = True
                break
            for j in range(adj_start[x], adj_start[x + 1]):
                e = adj_edge[j]
                u = eu[e]
                v = ev[e]
                st = state[e]
                if dirflag[e]:
                    if st == 0:
                        if x != u:
                            continue
                        y = v
                    elif st == 1:
                        if x != v:
                            continue
                        y = u
                    else:
                        continue
                else:
                    if st == 0:
                        y = v if x == u else u
                    elif st == 1:
                        if x != v:
                            continue
                        y = u
                    else:
                        if x != u:
                            continue
                        y = v
                if pred[y] == -1:
                    pred[y] = e
                    reach[y] = 1
                    queue.append(y)
        if not found:
            return value, state, reach
        x = t
        while x != s:
            e = pred[x]
            u = eu[e]
            v = ev[e]
            y = v if x == u else u
            st = state[e]
            if st == 0:
                if dirflag[e]:
                    state[e] = 1
                else:
                    state[e] = 1 if x == v else 2
            else:
                state[e] = 0
            x = y
        value += 1
