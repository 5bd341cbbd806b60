"""Simple undirected graphs, their file formats, generators, and the
generalized adjacency matrices supported on their edges."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .config import max_vertices
from .errors import GraphParseError

__all__ = [
    "Graph",
    "GeneralizedAdjacency",
    "parse_graph",
    "render_graph",
    "parse_weights",
    "as_weights",
    "complement",
    "relabel",
    "permute_weights",
    "adjacency_matrix",
    "random_generalized_adjacency",
    "find_automorphism",
    "is_vertex_transitive",
    "generate",
    "cycle",
    "complete",
    "edgeless",
    "path",
    "star",
    "petersen",
    "kneser",
    "circulant",
    "erdos_renyi",
    "disjoint_union",
]


def _edge(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Graph on vertices ``0..n-1``; ``edges`` holds pairs ``(i, j)`` with ``i < j``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not 1 <= self.n <= max_vertices():
            raise ValueError(f"vertex count must lie in [1, {max_vertices()}], got {self.n}")
        canon = set()
        for i, j in self.edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={self.n}")
            canon.add(_edge(i, j))
        object.__setattr__(self, "edges", frozenset(canon))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and _edge(i, j) in self.edges

    def neighbor_masks(self) -> list[int]:
        masks = [0] * self.n
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return masks

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def non_edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in itertools.combinations(range(self.n), 2)
                if (i, j) not in self.edges]

    def is_connected(self) -> bool:
        masks = self.neighbor_masks()
        seen, frontier = 1, 1
        while frontier:
            nxt = 0
            for v in range(self.n):
                if frontier >> v & 1:
                    nxt |= masks[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True, eq=False)
class GeneralizedAdjacency:
    """Symmetric matrix with zero diagonal vanishing off the edges of ``graph``."""

    graph: Graph
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        n = self.graph.n
        if m.shape != (n, n):
            raise ValueError(f"matrix must be {n}x{n}, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("matrix entries must be finite")
        if np.any(m != m.T):
            if np.max(np.abs(m - m.T)) > 1e-12 * (1.0 + np.max(np.abs(m))):
                raise ValueError("matrix is not symmetric")
            m = 0.5 * (m + m.T)
        if np.any(np.diag(m) != 0.0):
            raise ValueError("generalized adjacency matrices have zero diagonal")
        support = adjacency_matrix(self.graph, raw=True)
        if np.any((support == 0) & (m != 0) & ~np.eye(n, dtype=bool)):
            raise ValueError("matrix has nonzero entries on non-edges")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def nonneg(self) -> bool:
        return bool(np.all(self.matrix >= 0))

    @property
    def is_zero(self) -> bool:
        return not np.any(self.matrix)

    def scaled(self, factor: float) -> "GeneralizedAdjacency":
        return GeneralizedAdjacency(self.graph, factor * self.matrix)

    def edge_weights(self) -> np.ndarray:
        return np.array([self.matrix[i, j] for i, j in self.graph.sorted_edges()])

    @classmethod
    def from_edge_weights(cls, graph: Graph, weights: Sequence[float]) -> "GeneralizedAdjacency":
        edges = graph.sorted_edges()
        if len(weights) != len(edges):
            raise ValueError("one weight per edge required")
        m = np.zeros((graph.n, graph.n))
        for (i, j), a in zip(edges, weights):
            m[i, j] = m[j, i] = a
        return cls(graph, m)


# ----------------------------------------------------------------------------
# file formats


def _decode(text) -> str:
    if isinstance(text, (bytes, bytearray)):
        return text.decode("utf-8")
    return str(text)


def _parse_dimacs(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphParseError("malformed header, expected 'p edge <n> <m>'", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphParseError("malformed header, expected integer counts", lineno) from None
            if n < 1 or m < 0:
                raise GraphParseError("malformed header, counts out of range", lineno)
        elif parts[0] == "e":
            if n is None:
                raise GraphParseError("edge line before header", lineno)
            if len(parts) != 3:
                raise GraphParseError("malformed edge line, expected 'e <i> <j>'", lineno)
            try:
                i, j = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphParseError("non-integer vertex index", lineno) from None
            if not (1 <= i <= n and 1 <= j <= n):
                raise GraphParseError(f"vertex index out of range 1..{n}", lineno)
            if i == j:
                raise GraphParseError(f"self-loop at vertex {i}", lineno)
            edges.append((i - 1, j - 1))
        else:
            raise GraphParseError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise GraphParseError("missing header 'p edge <n> <m>'")
    return _build(n, edges)


def _parse_edge_list(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise GraphParseError("non-integer token", lineno) from None
        if n is None:
            if len(values) != 1 or values[0] < 1:
                raise GraphParseError("malformed header, expected vertex count", lineno)
            n = values[0]
            continue
        if len(values) != 2:
            raise GraphParseError("expected a pair 'i j'", lineno)
        i, j = values
        if not (0 <= i < n and 0 <= j < n):
            raise GraphParseError(f"vertex index out of range 0..{n - 1}", lineno)
        if i == j:
            raise GraphParseError(f"self-loop at vertex {i}", lineno)
        edges.append((i, j))
    if n is None:
        raise GraphParseError("empty input")
    return _build(n, edges)


def _build(n: int, edges) -> Graph:
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise GraphParseError(str(exc)) from None


def parse_graph(text, format: str = "dimacs") -> Graph:
    """Parse DIMACS (``p edge n m`` / ``e i j``, 1-based) or edge-list text.

    Repeated edges are collapsed; self-loops and out-of-range indices raise
    :class:`GraphParseError` naming the offending line.
    """
    text = _decode(text)
    if format == "dimacs":
        return _parse_dimacs(text)
    if format in ("edge-list", "edgelist"):
        return _parse_edge_list(text)
    raise ValueError(f"unknown graph format {format!r}")


def render_graph(g: Graph, format: str = "dimacs") -> str:
    edges = g.sorted_edges()
    if format == "dimacs":
        lines = [f"p edge {g.n} {g.m}"] + [f"e {i + 1} {j + 1}" for i, j in edges]
    elif format in ("edge-list", "edgelist"):
        lines = [str(g.n)] + [f"{i} {j}" for i, j in edges]
    else:
        raise ValueError(f"unknown graph format {format!r}")
    return "\n".join(lines) + "\n"


def parse_weights(text, n: int) -> np.ndarray:
    tokens = _decode(text).split()
    if len(tokens) != n:
        raise ValueError(f"expected {n} weights, got {len(tokens)}")
    try:
        values = [float(t) for t in tokens]
    except ValueError:
        raise ValueError("weights must be decimal numbers") from None
    return as_weights(values, n)


def as_weights(w, n: int | None = None) -> np.ndarray:
    """Validate a nonnegative weight vector; ``None`` means all ones."""
    if w is None:
        if n is None:
            raise ValueError("length needed for default weights")
        return np.ones(n)
    arr = np.array(w, dtype=float).reshape(-1)
    if n is not None and arr.shape[0] != n:
        raise ValueError(f"weight vector must have length {n}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("weights must be finite")
    if np.any(arr < 0):
        raise ValueError("weights must be nonnegative")
    return arr


# ----------------------------------------------------------------------------
# operations


def complement(g: Graph) -> Graph:
    return Graph(g.n, frozenset(g.non_edges()))


def _check_permutation(sigma, n: int) -> list[int]:
    sigma = [int(s) for s in sigma]
    if sorted(sigma) != list(range(n)):
        raise ValueError("sigma is not a permutation of 0..n-1")
    return sigma


def relabel(g: Graph, sigma: Sequence[int]) -> Graph:
    """Graph with edge ``sigma[i] sigma[j]`` for every edge ``ij`` of ``g``."""
    sigma = _check_permutation(sigma, g.n)
    return Graph(g.n, frozenset(_edge(sigma[i], sigma[j]) for i, j in g.edges))


def permute_weights(w, sigma: Sequence[int]) -> np.ndarray:
    """Return ``sigma w`` with ``(sigma w)[sigma[i]] = w[i]``."""
    w = np.asarray(w, dtype=float)
    sigma = _check_permutation(sigma, w.shape[0])
    out = np.empty_like(w)
    out[sigma] = w
    return out


def adjacency_matrix(g: Graph, raw: bool = False):
    a = np.zeros((g.n, g.n))
    if g.edges:
        idx = np.array(g.sorted_edges())
        a[idx[:, 0], idx[:, 1]] = 1.0
        a[idx[:, 1], idx[:, 0]] = 1.0
    if raw:
        return a
    return GeneralizedAdjacency(g, a)


def _extend_automorphism(nbr, deg, phi, used, order, k):
    if k == len(order):
        return True
    u = order[k]
    for v in range(len(nbr)):
        if used >> v & 1 or deg[v] != deg[u]:
            continue
        # adjacency to every already-mapped vertex must be preserved
        if all(((nbr[u] >> x) & 1) == ((nbr[v] >> phi[x]) & 1) for x in order[:k]):
            phi[u] = v
            if _extend_automorphism(nbr, deg, phi, used | (1 << v), order, k + 1):
                return True
    phi[u] = -1
    return False


def find_automorphism(g: Graph, u: int, v: int) -> list[int] | None:
    """An automorphism of ``g`` sending ``u`` to ``v``, by backtracking."""
    nbr = g.neighbor_masks()
    deg = [bin(m).count("1") for m in nbr]
    if deg[u] != deg[v]:
        return None
    # breadth-first order from u keeps the partial maps connected
    order, seen = [u], 1 << u
    for x in order:
        for y in range(g.n):
            if nbr[x] >> y & 1 and not seen >> y & 1:
                order.append(y)
                seen |= 1 << y
    order += [y for y in range(g.n) if not seen >> y & 1]
    phi = [-1] * g.n
    phi[u] = v
    if _extend_automorphism(nbr, deg, phi, 1 << v, order, 1):
        return phi
    return None


def is_vertex_transitive(g: Graph) -> bool:
    return all(find_automorphism(g, 0, v) is not None for v in range(1, g.n))


def random_generalized_adjacency(g: Graph, nonneg: bool = False, seed=None) -> GeneralizedAdjacency:
    """Edge entries uniform on [-1, 1] (or [0, 1] if ``nonneg``), in sorted-edge order."""
    rng = np.random.default_rng(seed)
    low = 0.0 if nonneg else -1.0
    weights = rng.uniform(low, 1.0, size=g.m)
    return GeneralizedAdjacency.from_edge_weights(g, weights)


# ----------------------------------------------------------------------------
# generators


def edgeless(n: int) -> Graph:
    return Graph(n)


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def star(k: int) -> Graph:
    """The star K_{1,k}: centre vertex 0 joined to leaves 1..k."""
    if k < 1:
        raise ValueError("star needs at least one leaf")
    return Graph.from_edges(k + 1, ((0, i) for i in range(1, k + 1)))


def kneser(n: int, k: int) -> Graph:
    """Kneser graph: k-subsets of {0..n-1} in lexicographic order, adjacent when disjoint."""
    if k < 1 or n < 1 or k > n:
        raise ValueError(f"invalid Kneser parameters n={n}, k={k}")
    subsets = [frozenset(c) for c in itertools.combinations(range(n), k)]
    edges = [(a, b) for a, b in itertools.combinations(range(len(subsets)), 2)
             if not subsets[a] & subsets[b]]
    return Graph.from_edges(len(subsets), edges)


def petersen() -> Graph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


def circulant(n: int, connections: Iterable[int]) -> Graph:
    if n < 1:
        raise ValueError("circulant needs n >= 1")
    conns = sorted({int(c) % n for c in connections} - {0})
    return Graph.from_edges(n, ((i, (i + c) % n) for i in range(n) for c in conns))


def erdos_renyi(n: int, p: float, seed=None) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return Graph.from_edges(n, (e for e, k in zip(pairs, keep) if k))


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges.extend((i + offset, j + offset) for i, j in g.edges)
        offset += g.n
    return Graph.from_edges(offset, edges)


_FAMILIES = {
    "cycle": (cycle, (int,)),
    "complete": (complete, (int,)),
    "edgeless": (edgeless, (int,)),
    "path": (path, (int,)),
    "star": (star, (int,)),
    "petersen": (petersen, ()),
    "kneser": (kneser, (int, int)),
    "circulant": (circulant, (int, lambda s: [int(c) for c in s.split(",") if c])),
    "erdos_renyi": (erdos_renyi, (int, float, int)),
}


def generate(spec: str) -> Graph:
    """Build a graph from a family spec such as ``cycle:5``, ``kneser:5:2``,
    ``circulant:8:1,3`` or ``erdos_renyi:9:0.4:7`` (n, p, seed)."""
    name, *args = spec.strip().split(":")
    name = name.replace("-", "_")
    if name not in _FAMILIES:
        raise ValueError(f"unknown graph family {name!r}")
    fn, types = _FAMILIES[name]
    if len(args) != len(types):
        raise ValueError(f"family {name!r} takes {len(types)} parameter(s), got {len(args)}")
    try:
        parsed = [t(a) for t, a in zip(types, args)]
    except ValueError:
        raise ValueError(f"bad parameters for family {name!r}: {args}") from None
    return fn(*parsed)
