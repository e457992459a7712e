"""Pure-Python hot loops.

Letters are encoded as nonzero ints: generator ``g`` is ``g + 1`` and its
inverse is ``-(g + 1)``.  Graph maps are per-generator lists indexed by
vertex, with ``-1`` marking an undefined edge.
"""

NAME = "python"


def reduce_codes(codes):
    out = []
    for c in codes:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return out


def traversal(fwd, bwd, nverts, base):
    """Forward-first breadth-first traversal from ``base``.

    Forward edges of discovered vertices are exhausted (in discovery order)
    before a single vertex's backward edges are scanned.  Returns
    ``(order, parent, pgen, pdir)``; the last three are indexed by vertex.
    """
    rank = len(fwd)
    parent = [-1] * nverts
    pgen = [-1] * nverts
    pdir = [0] * nverts
    seen = [False] * nverts
    seen[base] = True
    order = [base]
    f = r = 0
    while True:
        if f < len(order):
            v = order[f]
            f += 1
            for g in range(rank):
                w = fwd[g][v]
                if w >= 0 and not seen[w]:
                    seen[w] = True
                    order.append(w)
                    parent[w] = v
                    pgen[w] = g
                    pdir[w] = 1
        elif r < len(order):
            v = order[r]
            r += 1
            for g in range(rank):
                w = bwd[g][v]
                if w >= 0 and not seen[w]:
                    seen[w] = True
                    order.append(w)
                    parent[w] = v
                    pgen[w] = g
                    pdir[w] = -1
        else:
            break
    return order, parent, pgen, pdir


def encode(fwd, order, nverts):
    """Canonical int tuple: rank, vertex count, then sorted (gen, src, dst)."""
    newid = [-1] * nverts
    for i, v in enumerate(order):
        newid[v] = i
    out = [len(fwd), len(order)]
    for g, row in enumerate(fwd):
        for i, v in enumerate(order):
            w = row[v]
            if w >= 0:
                out.append(g)
                out.append(i)
                out.append(newid[w])
    return tuple(out)


def perm_key(perms, e):
    """Canonical code of the cover given by ``perms`` based at 0, or None.

    None means the action is not transitive.  Forward edges suffice because
    every finite permutation's inverse is one of its positive powers.
    """
    newid = [-1] * e
    newid[0] = 0
    order = [0]
    f = 0
    while f < len(order):
        v = order[f]
        f += 1
        for p in perms:
            w = p[v]
            if newid[w] < 0:
                newid[w] = len(order)
                order.append(w)
    if len(order) < e:
        return None
    out = [len(perms), e]
    for g, p in enumerate(perms):
        for i in range(e):
            out.append(g)
            out.append(i)
            out.append(newid[p[order[i]]])
    return tuple(out)


def trace(fwd, bwd, codes, start):
    """End vertex of the path spelled by ``codes`` from ``start``; -1 if it falls off."""
    v = start
    for c in codes:
        if c > 0:
            v = fwd[c - 1][v]
        else:
            v = bwd[-c - 1][v]
        if v < 0:
            return -1
    return v
