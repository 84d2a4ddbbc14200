"""Independent brute-force reference implementations for the tests.

These deliberately avoid the package internals: sets instead of bitmasks,
permutations instead of refinement, direct readings of the rule definitions.
"""

from itertools import combinations, permutations


def decode_graph6(s):
    """Reference decoder from the published graph6 layout (n <= 62)."""
    vals = [ord(c) - 63 for c in s]
    n = vals[0]
    bitstream = []
    for v in vals[1:]:
        bitstream.extend((v >> (5 - i)) & 1 for i in range(6))
    edges = set()
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bitstream[k]:
                edges.add(frozenset((i, j)))
            k += 1
    return n, edges


def edge_set(g):
    return {frozenset(e) for e in g.edges()}


def nbrs(n, edges, v):
    return {u for u in range(n) if frozenset((u, v)) in edges}


def perm_isomorphic(n1, e1, n2, e2):
    if n1 != n2 or len(e1) != len(e2):
        return False
    for p in permutations(range(n1)):
        if {frozenset((p[a], p[b])) for a, b in map(tuple, e1)} == e2:
            return True
    return False


def brute_induced(h, g):
    """Exhaustive injection search: h an induced subgraph of g?"""
    eh, eg = edge_set(h), edge_set(g)
    for image in permutations(range(g.n), h.n):
        if all((frozenset((image[a], image[b])) in eg) == (frozenset((a, b)) in eh)
               for a, b in combinations(range(h.n), 2)):
            return True
    return False


def white_components(n, edges, blue):
    white = set(range(n)) - blue
    comps, seen = [], set()
    for s in sorted(white):
        if s in seen:
            continue
        comp, stack = set(), [s]
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(nbrs(n, edges, v) & white - comp)
        seen |= comp
        comps.append(comp)
    return comps


def ref_forces(name, param, n, edges, blue):
    """Valid forces straight from the rule definitions (stateless rules)."""
    blue = set(blue)
    white = set(range(n)) - blue
    out = set()
    if name == "z":
        for v in blue:
            wn = nbrs(n, edges, v) & white
            if len(wn) == 1:
                out.add((v, wn.pop()))
    elif name == "zplus":
        for comp in white_components(n, edges, blue):
            for v in blue:
                wn = nbrs(n, edges, v) & comp
                if len(wn) == 1:
                    out.add((v, wn.pop()))
    elif name == "skew":
        for v in range(n):
            wn = nbrs(n, edges, v) & white
            if len(wn) == 1:
                out.add((v, wn.pop()))
    elif name == "kforce":
        for v in blue:
            wn = nbrs(n, edges, v) & white
            if 1 <= len(wn) <= param:
                out |= {(v, w) for w in wn}
    elif name == "boot":
        for w in white:
            bn = nbrs(n, edges, w) & blue
            if len(bn) >= param:
                out |= {(v, w) for v in bn}
    return out


def ref_pt(name, param, n, edges, blue):
    """Synchronous propagation time from the reference rules; None if stuck."""
    blue = set(blue)
    t = 0
    while len(blue) < n:
        new = {w for _, w in ref_forces(name, param, n, edges, blue)}
        if not new:
            return None
        blue |= new
        t += 1
    return t


def ref_throttle(name, param, g, omega, product=False):
    """min |B| + omega*pt (or min |B|*pt over proper subsets) by full enumeration."""
    n, edges = g.n, edge_set(g)
    best = None
    for size in range(n + 1):
        for b in combinations(range(n), size):
            if product and size == n:
                continue
            pt = ref_pt(name, param, n, edges, b)
            if pt is None:
                continue
            val = size * pt if product else size + omega * pt
            if best is None or val < best:
                best = val
    return best
