"""Graphs, vertex partitions, and equitability machinery.

Vertices are labelled 1..n everywhere a caller can see them.  Graphs are
simple, undirected, and connected; connectivity is enforced at construction
so downstream dynamics never has to special-case isolated components.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    BadParameterError,
    DisconnectedError,
    EmptyGraphError,
    FormatError,
    PartitionMismatchError,
    SelfLoopError,
    TooLargeError,
    VertexOutOfRangeError,
)

__all__ = [
    "Graph",
    "VertexPartition",
    "DegreeProfile",
    "QuotientMatrix",
    "from_edge_list",
    "degree_profile",
    "is_equitable",
    "coarsest_equitable_refinement",
    "automorphisms_brute_force",
    "orbit_partition_brute_force",
    "enumerate_bipartitions",
    "linear_family_graph",
    "latoro_profile_graph",
    "right_angle_profile_graph",
    "star_graph",
    "cycle_graph",
    "complete_graph",
    "path_graph",
    "petersen_graph",
    "read_edge_list",
    "write_edge_list",
    "partition_from_json",
    "partition_to_json",
]


@dataclass(frozen=True)
class Graph:
    """Simple undirected connected graph on vertices 1..n."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise EmptyGraphError(f"graph needs at least one vertex, got n={self.n}")
        seen: set[tuple[int, int]] = set()
        for u, v in self.edges:
            if u == v:
                raise SelfLoopError(f"self loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise VertexOutOfRangeError(f"edge ({u}, {v}) outside 1..{self.n}")
            seen.add((min(u, v), max(u, v)))
        canonical = tuple(sorted(seen))
        object.__setattr__(self, "edges", canonical)
        nbrs: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in canonical:
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in nbrs))
        self._check_connected()

    def _check_connected(self) -> None:
        reached = {1}
        frontier = [1]
        while frontier:
            v = frontier.pop()
            for w in self.adjacency[v]:
                if w not in reached:
                    reached.add(w)
                    frontier.append(w)
        if len(reached) != self.n:
            missing = sorted(set(range(1, self.n + 1)) - reached)
            raise DisconnectedError(f"vertices {missing} unreachable from vertex 1")

    def neighbors(self, v: int) -> tuple[int, ...]:
        if not 1 <= v <= self.n:
            raise VertexOutOfRangeError(f"vertex {v} outside 1..{self.n}")
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u] if 1 <= u <= self.n else False

    def adjacency_matrix(self) -> np.ndarray:
        """Dense 0/1 matrix A with A[i-1, j-1] = 1 iff i ~ j."""
        a = np.zeros((self.n, self.n))
        for u, v in self.edges:
            a[u - 1, v - 1] = 1.0
            a[v - 1, u - 1] = 1.0
        return a


def from_edge_list(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from unordered vertex pairs; duplicates collapse."""
    return Graph(n, tuple(pairs))


@dataclass(frozen=True)
class VertexPartition:
    """Ordered partition of 1..n; blocks sorted by their smallest vertex."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.blocks:
            raise PartitionMismatchError("partition has no blocks")
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise PartitionMismatchError("empty block")
            for v in b:
                if not isinstance(v, int) or v < 1:
                    raise PartitionMismatchError(f"bad vertex label {v!r}")
                if v in seen:
                    raise PartitionMismatchError(f"vertex {v} appears in two blocks")
                seen.add(v)
        canonical = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        object.__setattr__(self, "blocks", canonical)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "VertexPartition":
        return cls(tuple(tuple(b) for b in blocks))

    @property
    def k(self) -> int:
        return len(self.blocks)

    def vertices(self) -> frozenset[int]:
        return frozenset(v for b in self.blocks for v in b)

    def index_map(self) -> dict[int, int]:
        """Vertex -> block position."""
        return {v: i for i, b in enumerate(self.blocks) for v in b}

    def refines(self, other: "VertexPartition") -> bool:
        """True when every block here sits inside a single block of other."""
        omap = other.index_map()
        for b in self.blocks:
            targets = {omap.get(v) for v in b}
            if len(targets) != 1 or None in targets:
                return False
        return True


def _check_partition(g: Graph, p: VertexPartition) -> None:
    if p.vertices() != frozenset(range(1, g.n + 1)):
        raise PartitionMismatchError(
            f"partition covers {sorted(p.vertices())}, graph has 1..{g.n}"
        )


@dataclass(frozen=True)
class DegreeProfile:
    """Per-vertex neighbour counts into each block of a partition.

    Row v-1 holds, for vertex v, the number of its neighbours inside each
    block, in block order.  Row sums equal vertex degrees.
    """

    delta: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.delta[0]) if self.delta else 0

    def row(self, v: int) -> tuple[int, ...]:
        return self.delta[v - 1]

    def as_array(self) -> np.ndarray:
        return np.array(self.delta, dtype=int)


@dataclass(frozen=True)
class QuotientMatrix:
    """Block-to-block neighbour counts of an equitable partition."""

    gamma: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.gamma)

    def as_array(self) -> np.ndarray:
        return np.array(self.gamma, dtype=float)


def degree_profile(g: Graph, p: VertexPartition) -> DegreeProfile:
    """Count each vertex's neighbours per block of p."""
    _check_partition(g, p)
    imap = p.index_map()
    rows = []
    for v in range(1, g.n + 1):
        counts = [0] * p.k
        for w in g.adjacency[v]:
            counts[imap[w]] += 1
        rows.append(tuple(counts))
    return DegreeProfile(tuple(rows))


def is_equitable(g: Graph, p: VertexPartition) -> QuotientMatrix | None:
    """Return the quotient matrix when every block sees constant counts, else None."""
    prof = degree_profile(g, p)
    gamma = []
    for b in p.blocks:
        first = prof.row(b[0])
        for v in b[1:]:
            if prof.row(v) != first:
                return None
        gamma.append(first)
    return QuotientMatrix(tuple(gamma))


def coarsest_equitable_refinement(g: Graph, seed: VertexPartition) -> VertexPartition:
    """Split blocks of seed by neighbour-count signature until stable.

    Splitting is forced: two vertices can stay together only while their
    per-block neighbour counts agree, so the fixpoint is refined by every
    equitable partition that refines the seed.  Block order is canonical
    (ascending smallest vertex), making the result deterministic.
    """
    _check_partition(g, seed)
    blocks = [list(b) for b in seed.blocks]
    while True:
        index = {v: i for i, b in enumerate(blocks) for v in b}
        sig = {}
        for v in range(1, g.n + 1):
            counts = [0] * len(blocks)
            for w in g.adjacency[v]:
                counts[index[w]] += 1
            sig[v] = tuple(counts)
        new_blocks: list[list[int]] = []
        for b in blocks:
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in b:
                groups.setdefault(sig[v], []).append(v)
            new_blocks.extend(sorted(groups.values(), key=lambda grp: min(grp)))
        if len(new_blocks) == len(blocks):
            return VertexPartition.from_blocks(blocks)
        blocks = sorted(new_blocks, key=min)


def automorphisms_brute_force(g: Graph, limit: int = 10) -> list[tuple[int, ...]]:
    """Exhaustive adjacency-preserving permutations, as image tuples.

    Backtracks vertex by vertex, pruning candidates by degree and by
    adjacency with the already-placed prefix, so the full permutation
    space is never materialised.  Capped at n <= limit.
    """
    if g.n > limit:
        raise TooLargeError(f"n={g.n} exceeds brute-force limit {limit}")
    degs = [g.degree(v) for v in range(1, g.n + 1)]
    adj = [set(g.adjacency[v]) for v in range(g.n + 1)]
    found: list[tuple[int, ...]] = []
    image = [0] * (g.n + 1)
    used = [False] * (g.n + 1)

    def place(v: int) -> None:
        if v > g.n:
            found.append(tuple(image[1:]))
            return
        for w in range(1, g.n + 1):
            if used[w] or degs[w - 1] != degs[v - 1]:
                continue
            ok = True
            for u in range(1, v):
                if (u in adj[v]) != (image[u] in adj[w]):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                place(v + 1)
                used[w] = False
        image[v] = 0

    place(1)
    return found


def orbit_partition_brute_force(g: Graph, limit: int = 10) -> list[VertexPartition]:
    """All distinct cycle partitions of single automorphisms of g."""
    partitions: set[VertexPartition] = set()
    for image in automorphisms_brute_force(g, limit=limit):
        seen: set[int] = set()
        blocks = []
        for v in range(1, g.n + 1):
            if v in seen:
                continue
            orbit = []
            w = v
            while w not in seen:
                seen.add(w)
                orbit.append(w)
                w = image[w - 1]
            blocks.append(orbit)
        partitions.add(VertexPartition.from_blocks(blocks))
    ordered = sorted(partitions, key=lambda p: p.blocks)
    return ordered


def enumerate_bipartitions(g: Graph) -> Iterator[VertexPartition]:
    """Yield every unordered 2-block partition of 1..n exactly once.

    Vertex 1 stays in the first block; the complement runs through all
    2**(n-1) - 1 nonempty proper subsets of 2..n in ascending mask order.
    """
    if g.n < 2:
        raise BadParameterError("bipartitions need n >= 2")
    rest = list(range(2, g.n + 1))
    for mask in range(1, 1 << (g.n - 1)):
        s2 = [rest[i] for i in range(g.n - 1) if mask >> i & 1]
        s1 = [1] + [v for v in rest if v not in set(s2)]
        yield VertexPartition.from_blocks([s1, s2])


# Named graph constructions.

def linear_family_graph(p: int) -> tuple[Graph, VertexPartition]:
    """Hub-and-matching construction on 2p+1 vertices, p even and >= 4.

    Vertex 1 joins 2..p+1; a perfect matching pairs i with i+p for
    i in 2..p+1; p/2 independent edges pair p+2..2p+1 consecutively.
    Returned with the hub-versus-rest bipartition, which is not equitable
    but admits a unique exact parameter triple.
    """
    if p < 4 or p % 2 != 0:
        raise BadParameterError(f"p must be even and >= 4, got {p}")
    edges = []
    for i in range(2, p + 2):
        edges.append((1, i))
        edges.append((i, i + p))
    for a in range(p + 2, 2 * p + 2, 2):
        edges.append((a, a + 1))
    g = from_edge_list(2 * p + 1, edges)
    part = VertexPartition.from_blocks([[1], list(range(2, 2 * p + 2))])
    return g, part


def latoro_profile_graph() -> tuple[Graph, VertexPartition]:
    """Seven-vertex graph whose hub bipartition has counts (0,4) at the hub,
    (1,1) at four vertices, and (0,2) at two."""
    edges = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 6), (3, 7), (4, 5), (6, 7)]
    g = from_edge_list(7, edges)
    part = VertexPartition.from_blocks([[1], [2, 3, 4, 5, 6, 7]])
    return g, part


def right_angle_profile_graph() -> tuple[Graph, VertexPartition]:
    """Ten-vertex graph whose 5+5 bipartition solves to equal block gains.

    Counts satisfy d_in = d_cross / 2 on both sides, forcing the unique
    parameter triple (1/2, 1/2, 0): a right-angle boundary case with a
    constant closed-form solution at cross-block offset 2*pi/3.
    """
    edges = [
        (1, 5), (2, 5), (3, 4),
        (6, 10), (7, 10), (8, 9),
        (5, 6), (5, 7), (5, 8), (5, 9),
        (1, 10), (2, 10), (3, 10), (4, 10),
        (1, 6), (2, 7), (3, 8), (4, 9),
    ]
    g = from_edge_list(10, edges)
    part = VertexPartition.from_blocks([[1, 2, 3, 4, 5], [6, 7, 8, 9, 10]])
    return g, part


def star_graph(leaves: int) -> tuple[Graph, VertexPartition]:
    """Centre vertex 1 joined to leaves 2..leaves+1."""
    if leaves < 1:
        raise BadParameterError(f"star needs >= 1 leaf, got {leaves}")
    g = from_edge_list(leaves + 1, [(1, i) for i in range(2, leaves + 2)])
    part = VertexPartition.from_blocks([[1], list(range(2, leaves + 2))])
    return g, part


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise BadParameterError(f"cycle needs n >= 3, got {n}")
    return from_edge_list(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete_graph(n: int) -> Graph:
    if n < 2:
        raise BadParameterError(f"complete graph needs n >= 2, got {n}")
    return from_edge_list(n, list(itertools.combinations(range(1, n + 1), 2)))


def path_graph(n: int) -> Graph:
    if n < 2:
        raise BadParameterError(f"path needs n >= 2, got {n}")
    return from_edge_list(n, [(i, i + 1) for i in range(1, n)])


def petersen_graph() -> Graph:
    outer = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(6, 8), (8, 10), (10, 7), (7, 9), (9, 6)]
    return from_edge_list(10, outer + spokes + inner)


# Plain-text and JSON formats.

def read_edge_list(text: str) -> Graph:
    """Parse 'u v' lines; '#' starts a comment; optional 'n <count>' header."""
    n: int | None = None
    pairs: list[tuple[int, int]] = []
    max_label = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if n is not None or len(parts) != 2:
                raise FormatError(f"line {lineno}: bad header {raw!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise FormatError(f"line {lineno}: bad vertex count {parts[1]!r}") from None
            continue
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer label in {raw!r}") from None
        pairs.append((u, v))
        max_label = max(max_label, u, v)
    if n is None:
        n = max_label
    if n < 1:
        raise FormatError("no vertices")
    return from_edge_list(n, pairs)


def write_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def partition_from_json(text: str) -> VertexPartition:
    """Parse {"blocks": [[...], ...]} into a partition."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad JSON: {exc}") from None
    if not isinstance(data, dict) or "blocks" not in data:
        raise FormatError('partition JSON needs a "blocks" key')
    blocks = data["blocks"]
    if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
        raise FormatError('"blocks" must be a list of lists')
    for b in blocks:
        for v in b:
            if not isinstance(v, int):
                raise FormatError(f"non-integer vertex {v!r}")
    return VertexPartition.from_blocks(blocks)


def partition_to_json(p: VertexPartition) -> str:
    return json.dumps({"blocks": [list(b) for b in p.blocks]})
