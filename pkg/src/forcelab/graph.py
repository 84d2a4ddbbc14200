"""Small simple graphs stored as adjacency bitmasks.

Vertex sets everywhere in the package are plain ``int`` bitmasks: bit ``v`` is
set iff vertex ``v`` is a member.  This keeps subset iteration cheap, which is
where almost all of the running time goes.
"""

from __future__ import annotations

import os
from itertools import combinations
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Sequence

# Number of isomorphism classes of graphs on n vertices, n = 0..10.
GRAPH_COUNTS = (1, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668, 12005168)

MAX_GRAPH6_ORDER = 62
MAX_CANONICAL_ORDER = 10
MAX_INTERNAL_ORDER = 8

CENSUS_ENV = "FORCELAB_CENSUS_DIR"


class Graph6Error(ValueError):
    pass


class GraphSizeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# bitmask helpers

def bits(mask: int) -> Iterator[int]:
    """Yield the members of a vertex bitmask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def full_mask(n: int) -> int:
    return (1 << n) - 1


def popcount(mask: int) -> int:
    return mask.bit_count()


def subsets_of_size(n: int, k: int) -> Iterator[int]:
    """All k-subsets of {0..n-1} as bitmasks, in lexicographic order of their
    sorted vertex lists ({0,3} before {1,2})."""
    if k < 0 or k > n:
        return
    for combo in combinations(range(n), k):
        m = 0
        for v in combo:
            m |= 1 << v
        yield m


def subsets_by_size(n: int) -> Iterator[int]:
    for k in range(n + 1):
        yield from subsets_of_size(n, k)


# ---------------------------------------------------------------------------
# Graph

class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Immutable; ``adj[v]`` is the neighbourhood bitmask of ``v``.
    """

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(adj))

    @classmethod
    def from_adjacency(cls, adj: Sequence[int]) -> "Graph":
        n = len(adj)
        for v, nb in enumerate(adj):
            if nb >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            if nb >> n:
                raise ValueError(f"neighbour out of range at vertex {v}")
            for u in bits(nb):
                if not adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        g = cls.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", tuple(adj))
        return g

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph({self.n}, {self.edges()})"

    @property
    def vertices(self) -> int:
        return full_mask(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in bits(self.adj[v] & ((1 << v) - 1))]

    def num_edges(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def closed_nbhd(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def induced(self, vertices) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on ``vertices`` (mask or iterable), relabelled in
        increasing order.  Returns the subgraph and the map new -> old."""
        mask = vertices if isinstance(vertices, int) else to_mask(vertices)
        old = tuple(bits(mask))
        pos = {v: i for i, v in enumerate(old)}
        adj = []
        for v in old:
            nb = 0
            for u in bits(self.adj[v] & mask):
                nb |= 1 << pos[u]
            adj.append(nb)
        return Graph.from_adjacency(adj), old

    def delete(self, mask: int) -> tuple["Graph", tuple[int, ...]]:
        """G - mask, relabelled; returns the subgraph and the map new -> old."""
        return self.induced(self.vertices & ~mask)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is old vertex ``perm[i]``."""
        pos = [0] * self.n
        for i, v in enumerate(perm):
            pos[v] = i
        adj = [0] * self.n
        for i, v in enumerate(perm):
            nb = 0
            for u in bits(self.adj[v]):
                nb |= 1 << pos[u]
            adj[i] = nb
        return Graph.from_adjacency(adj)

    def complement(self) -> "Graph":
        full = self.vertices
        return Graph.from_adjacency([full & ~a & ~(1 << v) for v, a in enumerate(self.adj)])

    def components(self, mask: int | None = None) -> list[int]:
        """Connected components of G[mask] as bitmasks, ordered by least vertex."""
        rest = self.vertices if mask is None else mask
        out = []
        adj = self.adj
        while rest:
            frontier = rest & -rest
            comp = frontier
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= adj[v]
                nxt &= rest & ~comp
                comp |= nxt
                frontier = nxt
            out.append(comp)
            rest &= ~comp
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


# ---------------------------------------------------------------------------
# named families

def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for j in range(n) for i in range(j)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def grid_graph(rows: int, cols: int) -> Graph:
    """rows x cols grid; vertex (r, c) is r * cols + c."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph(offset, edges)


def matching_graph(k: int) -> Graph:
    """k disjoint edges (kK2)."""
    return Graph(2 * k, [(2 * i, 2 * i + 1) for i in range(k)])


def random_tree(n: int, rng) -> Graph:
    """Uniform random labelled tree via a random Prufer sequence."""
    if n <= 1:
        return Graph(n)
    if n == 2:
        return Graph(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = [v for v in range(n) if degree[v] == 1]
    edges.append((u, w))
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# graph6

def to_graph6(g: Graph) -> str:
    """graph6 encoding (no ``>>graph6<<`` header) of ``g`` as labelled."""
    n = g.n
    if n > MAX_GRAPH6_ORDER:
        raise GraphSizeError(f"graph6 writer supports n <= {MAX_GRAPH6_ORDER}, got {n}")
    out = [chr(63 + n)]
    acc = nbits = 0
    adj = g.adj
    for j in range(1, n):
        for i in range(j):
            acc = (acc << 1) | (adj[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def parse_graph6(line: str) -> Graph:
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise Graph6Error("empty graph6 string (byte 0)")
    data = s.encode("ascii", errors="replace")
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {i} out of range: {b!r}")
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 4 and data[1] != 126:
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        raise Graph6Error("unsupported or truncated length header at byte 0")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos != nbytes:
        raise Graph6Error(
            f"expected {nbytes} data bytes for n={n}, found {len(data) - pos} "
            f"(byte {min(len(data), pos + nbytes)})")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = data[pos + k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if nbits % 6:
        pad = 6 - nbits % 6
        if (data[-1] - 63) & ((1 << pad) - 1):
            raise Graph6Error(f"nonzero padding bits in byte {len(data) - 1}")
    return Graph.from_adjacency(adj)


def read_graph6_file(path, strict: bool = True, errors: list | None = None) -> Iterator[Graph]:
    """Graphs from a graph6 file; '#' lines and blank lines are skipped.

    With ``strict=False`` malformed lines are reported into ``errors`` as
    ``(line_number, message)`` and skipped.
    """
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                yield parse_graph6(line)
            except Graph6Error as exc:
                if strict:
                    raise Graph6Error(f"{path}:{lineno}: {exc}") from None
                if errors is not None:
                    errors.append((lineno, str(exc)))


def write_graph6_file(path, graphs: Iterable[Graph], header: Sequence[str] = ()) -> None:
    with open(path, "w") as fh:
        for h in header:
            fh.write(f"# {h}\n")
        for g in graphs:
            fh.write(to_graph6(g) + "\n")


# ---------------------------------------------------------------------------
# canonical labelling

def _refine(adj, cells):
    # Equitable refinement: split cells by neighbour counts into every cell.
    # Cell order is derived from invariants only, so it commutes with relabelling.
    while True:
        masks = [to_mask(c) for c in cells]
        new = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            sig = {v: tuple(popcount(adj[v] & m) for m in masks) for v in cell}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                new.append(cell)
                continue
            split = True
            for key in keys:
                new.append([v for v in cell if sig[v] == key])
        cells = new
        if not split:
            return cells


def _code(adj, order):
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    code = 0
    for j in range(1, len(order)):
        aj = adj[order[j]]
        for i in range(j):
            code = (code << 1) | (aj >> order[i] & 1)
    return code


def _canonical_order(g: Graph) -> list[int]:
    adj = g.adj
    best = [None, None]

    def search(cells):
        cells = _refine(adj, cells)
        idx = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if idx is None:
            order = [c[0] for c in cells]
            code = _code(adj, order)
            if best[0] is None or code > best[0]:
                best[0], best[1] = code, order
            return
        cell = cells[idx]
        tried = []
        for v in cell:
            # twins u, v: the transposition (u v) fixes the partition, so the
            # subtree under v is isomorphic to the one already explored under u
            if any((adj[u] & ~(1 << v)) == (adj[v] & ~(1 << u)) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:idx] + [[v], rest] + cells[idx + 1:])

    if g.n:
        search([list(range(g.n))])
        return best[1]
    return []


def canonical_graph(g: Graph) -> Graph:
    if g.n > MAX_CANONICAL_ORDER:
        raise GraphSizeError(f"canonical labelling supports n <= {MAX_CANONICAL_ORDER}, got {g.n}")
    return g.relabel(_canonical_order(g))


@lru_cache(maxsize=1 << 16)
def canonical_form(g: Graph) -> str:
    """Canonical key: graph6 of the canonical relabelling.

    Equal keys iff the graphs are isomorphic; keys of equal order sort by the
    canonical adjacency bit string.
    """
    return to_graph6(canonical_graph(g))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges() != h.num_edges():
        return False
    if sorted(map(popcount, g.adj)) != sorted(map(popcount, h.adj)):
        return False
    return canonical_form(g) == canonical_form(h)


# ---------------------------------------------------------------------------
# induced subgraph search

def find_induced(h: Graph, g: Graph) -> tuple[int, ...] | None:
    """An embedding phi (tuple, phi[i] = image of h-vertex i) of ``h`` as an
    induced subgraph of ``g``, or None."""
    if h.n > g.n:
        return None
    if h.n == 0:
        return ()
    # most-constrained first: high degree, then connected to earlier choices
    order = []
    remaining = set(range(h.n))
    while remaining:
        placed = to_mask(order)
        v = max(remaining, key=lambda x: (popcount(h.adj[x] & placed), h.degree(x), -x))
        order.append(v)
        remaining.discard(v)
    phi = [-1] * h.n
    gdeg = [g.degree(x) for x in range(g.n)]
    hdeg = [h.degree(x) for x in range(h.n)]

    def extend(i, used):
        if i == h.n:
            return True
        v = order[i]
        cand = g.vertices & ~used
        for x in bits(cand):
            if gdeg[x] < hdeg[v]:
                continue
            ok = True
            for u in order[:i]:
                if h.has_edge(u, v) != g.has_edge(phi[u], x):
                    ok = False
                    break
            if ok:
                phi[v] = x
                if extend(i + 1, used | (1 << x)):
                    return True
        phi[v] = -1
        return False

    return tuple(phi) if extend(0, 0) else None


def contains_induced(h: Graph, g: Graph) -> bool:
    return find_induced(h, g) is not None


# ---------------------------------------------------------------------------
# census enumeration

@lru_cache(maxsize=None)
def _census(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph(0),)
    seen = {}
    for base in _census(n - 1):
        for nb in range(1 << (n - 1)):
            adj = list(base.adj)
            for u in bits(nb):
                adj[u] |= 1 << (n - 1)
            adj.append(nb)
            g = Graph.from_adjacency(adj)
            key = canonical_form(g)
            if key not in seen:
                seen[key] = canonical_graph(g)
    return tuple(seen[k] for k in sorted(seen))


def census_file(n: int, directory=None) -> Path | None:
    d = directory or os.environ.get(CENSUS_ENV)
    if not d:
        return None
    p = Path(d) / f"graph{n}.g6"
    return p if p.exists() else None


def enumerate_graphs(n: int, source: str | os.PathLike = "internal",
                     expected_count: int | None = None) -> Iterator[Graph]:
    """One representative per isomorphism class of order ``n``.

    ``source`` is ``"internal"`` (augmentation + canonical deduplication,
    n <= 8), ``"catalog"`` (``graph{n}.g6`` under ``$FORCELAB_CENSUS_DIR``), or a
    path to a graph6 file.  Internal output is in canonical-key order.
    """
    if source == "internal":
        if n > MAX_INTERNAL_ORDER:
            raise GraphSizeError(f"internal enumeration supports n <= {MAX_INTERNAL_ORDER}")
        graphs = _census(n)
    else:
        path = census_file(n) if source == "catalog" else Path(source)
        if path is None or not Path(path).exists():
            raise FileNotFoundError(f"no readable census catalog for n={n}: {path}")
        graphs = [g for g in read_graph6_file(path) if g.n == n]
    if expected_count is not None and len(graphs) != expected_count:
        raise ValueError(f"census count mismatch for n={n}: {len(graphs)} != {expected_count}")
    yield from graphs


def census(max_order: int, min_order: int = 0, source="internal") -> list[Graph]:
    """All graphs with min_order <= n <= max_order, smallest order first."""
    out = []
    for n in range(min_order, max_order + 1):
        out.extend(enumerate_graphs(n, source))
    return out
