# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled unit-capacity flow kernel.

Twin of ``_flowpy.unit_flow``: identical traversal order and results.
"""

from cpython.bytearray cimport PyByteArray_AS_STRING
from libc.stdlib cimport free, malloc


def unit_flow(n, eu, ev, dirflag, adj_start, adj_edge, s, t, limit):
    cdef int nn = n
    cdef int m = len(eu)
    cdef int src = s
    cdef int dst = t
    cdef int lim = -1 if limit is None else limit

    cdef const int[::1] ceu = eu
    cdef const int[::1] cev = ev
    cdef const int[::1] cstart = adj_start
    cdef const int[::1] cedge = adj_edge
    cdef const unsigned char[::1] cdir = dirflag

    state_py = bytearray(m)
    reach_py = bytearray(nn)
    cdef unsigned char * state = <unsigned char *> PyByteArray_AS_STRING(state_py)
    cdef unsigned char * reach = <unsigned char *> PyByteArray_AS_STRING(reach_py)

    cdef int * pred = <int *> malloc((nn if nn > 0 else 1) * sizeof(int))
    cdef int * queue = <int *> malloc((nn if nn > 0 else 1) * sizeof(int))
    if pred == NULL or queue == NULL:
        if pred != NULL:
            free(pred)
        if queue != NULL:
            free(queue)
        raise MemoryError()

    cdef int value = 0
    cdef int i, j, e, u, v, x, y, st, head, tail
    cdef bint found
    try:
        while True:
            if lim >= 0 and value >= lim:
                for i in range(nn):
                    reach[i] = 0
                return value, state_py, reach_py
            for i in range(nn):
                pred[i] = -1
                reach[i] = 0
            pred[src] = -2
            reach[src] = 1
            queue[0] = src
            head = 0
            tail = 1
            found = 0
            while head < tail:
                x = queue[head]
                head += 1
                if x == dst:
                    found = 1
                    break
                for j in range(cstart[x], cstart[x + 1]):
                    e = cedge[j]
                    u = ceu[e]
                    v = cev[e]
                    st = state[e]
                    if cdir[e]:
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
                        queue[tail] = y
                        tail += 1
            if not found:
                return value, state_py, reach_py
            x = dst
            while x != src:
                e = pred[x]
                u = ceu[e]
                v = cev[e]
                y = v if x == u else u
                st = state[e]
                if st == 0:
                    if cdir[e]:
                        state[e] = 1
                    else:
                        state[e] = 1 if x == v else 2
                else:
                    state[e] = 0
                x = y
            value += 1
    finally:
        free(pred)
        free(queue)
