# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot loops; same contracts as ``_pykernels``."""

from libc.stdlib cimport malloc, free

NAME = "cython"


def reduce_codes(codes):
    cdef list out = []
    cdef Py_ssize_t top = 0
    cdef long c
    for c in codes:
        if top and <long>out[top - 1] == -c:
            out.pop()
            top -= 1
        else:
            out.append(c)
            top += 1
    return out


cdef int* _flatten(list rows, Py_ssize_t nverts) except NULL:
    cdef Py_ssize_t rank = len(rows), g, v
    cdef int* buf = <int*>malloc(max(rank * nverts, 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    for g in range(rank):
        row = rows[g]
        for v in range(nverts):
            buf[g * nverts + v] = row[v]
    return buf


def traversal(list fwd, list bwd, Py_ssize_t nverts, Py_ssize_t base):
    cdef Py_ssize_t rank = len(fwd), g, f = 0, r = 0, n = 1, v, w
    cdef int* F = _flatten(fwd, nverts)
    cdef int* B
    try:
        B = _flatten(bwd, nverts)
    except MemoryError:
        free(F)
        raise
    cdef int* order = <int*>malloc(nverts * sizeof(int))
    cdef int* seen = <int*>malloc(nverts * sizeof(int))
    parent = [-1] * nverts
    pgen = [-1] * nverts
    pdir = [0] * nverts
    try:
        for v in range(nverts):
            seen[v] = 0
        seen[base] = 1
        order[0] = <int>base
        while True:
            if f < n:
                v = order[f]
                f += 1
                for g in range(rank):
                    w = F[g * nverts + v]
                    if w >= 0 and not seen[w]:
                        seen[w] = 1
                        order[n] = <int>w
                        n += 1
                        parent[w] = v
                        pgen[w] = g
                        pdir[w] = 1
            elif r < n:
                v = order[r]
                r += 1
                for g in range(rank):
                    w = B[g * nverts + v]
                    if w >= 0 and not seen[w]:
                        seen[w] = 1
                        order[n] = <int>w
                        n += 1
                        parent[w] = v
                        pgen[w] = g
                        pdir[w] = -1
            else:
                break
        result = [order[v] for v in range(n)]
    finally:
        free(F)
        free(B)
        free(order)
        free(seen)
    return result, parent, pgen, pdir


def encode(list fwd, list order, Py_ssize_t nverts):
    cdef Py_ssize_t rank = len(fwd), g, i, n = len(order), w
    cdef list newid = [-1] * nverts
    for i in range(n):
        newid[order[i]] = i
    cdef list out = [rank, n]
    for g in range(rank):
        row = fwd[g]
        for i in range(n):
            w = row[order[i]]
            if w >= 0:
                out.append(g)
                out.append(i)
                out.append(newid[w])
    return tuple(out)


def perm_key(perms, Py_ssize_t e):
    cdef list plist = list(perms)
    cdef Py_ssize_t rank = len(plist), g, i, f = 0, n = 1, v, w
    cdef int* P = _flatten(plist, e)
    cdef int* newid = <int*>malloc(e * sizeof(int))
    cdef int* order = <int*>malloc(e * sizeof(int))
    try:
        for v in range(e):
            newid[v] = -1
        newid[0] = 0
        order[0] = 0
        while f < n:
            v = order[f]
            f += 1
            for g in range(rank):
                w = P[g * e + v]
                if newid[w] < 0:
                    newid[w] = <int>n
                    order[n] = <int>w
                    n += 1
        if n < e:
            return None
        out = [None] * (2 + 3 * rank * e)
        out[0] = rank
        out[1] = e
        v = 2
        for g in range(rank):
            for i in range(e):
                out[v] = g
                out[v + 1] = i
                out[v + 2] = newid[P[g * e + order[i]]]
                v += 3
        return tuple(out)
    finally:
        free(P)
        free(newid)
        free(order)


def trace(list fwd, list bwd, codes, Py_ssize_t start):
    cdef Py_ssize_t v = start
    cdef long c
    for c in codes:
        if c > 0:
            v = (<list>fwd[c - 1])[v]
        else:
            v = (<list>bwd[-c - 1])[v]
        if v < 0:
            return -1
    return v
