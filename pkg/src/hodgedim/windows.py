"""Finite windows cut out of infinite families.

A FiniteWindow is a finite induced subgraph together with the ambient degree
of each vertex, which is all the later stages ever need to know about the
exterior. Canonical edge orientation is (min, max) in the vertex order;
since window vertices are stored sorted, canonical edges are exactly the
index pairs (i, j) with i < j, and the edge list is lexicographically sorted
by construction.

Construction is matrix-free friendly: edges live in two parallel numpy index
arrays, not an adjacency matrix.
"""

from __future__ import annotations

import json
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import (InvalidWindowError, MissingEdgeError, SizeLimitError)
from .families import GraphFamily, VertexId

DEFAULT_SIZE_CAP = 2_000_000


class OrientedEdge(NamedTuple):
    tail: VertexId
    head: VertexId

    def reversed(self) -> "OrientedEdge":
        return OrientedEdge(self.head, self.tail)

    def canonical(self) -> "OrientedEdge":
        return self if self.tail < self.head else self.reversed()


class FiniteWindow:
    """Sorted vertex list, canonical edge arrays, ambient degrees.

    Attributes:
        vertices      tuple of vertex ids, sorted
        edge_tails    int array, tail index of each canonical edge
        edge_heads    int array, head index (always > tail index)
        full_degree   int array, ambient degree per vertex
        boundary      bool array, True where some ambient neighbor is outside
    """

    def __init__(self, vertices, edge_tails, edge_heads, full_degree,
                 check: bool = True):
        self.vertices = tuple(vertices)
        self.edge_tails = np.asarray(edge_tails, dtype=np.int64)
        self.edge_heads = np.asarray(edge_heads, dtype=np.int64)
        self.full_degree = np.asarray(full_degree, dtype=np.int64)
        n = len(self.vertices)
        if n == 0:
            raise InvalidWindowError("window has no vertices")
        if self.edge_tails.size == 0:
            raise InvalidWindowError("window has no edges")
        deg = np.zeros(n, dtype=np.int64)
        np.add.at(deg, self.edge_tails, 1)
        np.add.at(deg, self.edge_heads, 1)
        self.internal_degree = deg
        self.boundary = self.internal_degree < self.full_degree
        self._index = None
        self._edge_key = None
        if check:
            self._validate()

    # -- basic views -------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return int(self.edge_tails.size)

    @property
    def intra_edges(self):
        """Edges as a list of (i, j) index pairs, i < j. Materialized on
        demand; large windows should use edge_tails/edge_heads directly."""
        return list(zip(self.edge_tails.tolist(), self.edge_heads.tolist()))

    @property
    def index(self) -> dict:
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.vertices)}
        return self._index

    def vertex_index(self, x: VertexId) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise InvalidWindowError(f"vertex {x} not in window") from None

    def sigma_indices(self) -> np.ndarray:
        return np.nonzero(self.boundary)[0]

    def edge_lookup(self, e: OrientedEdge):
        """Return (edge position, sign) for an oriented edge of the window.

        sign is +1 when e is canonically oriented, -1 otherwise.
        """
        i = self.index.get(e.tail)
        j = self.index.get(e.head)
        if i is None or j is None:
            raise MissingEdgeError(f"edge {e} has an endpoint outside the window")
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        elif i == j:
            raise MissingEdgeError(f"degenerate edge {e}")
        if self._edge_key is None:
            self._edge_key = self.edge_tails * self.n_vertices + self.edge_heads
        key = i * self.n_vertices + j
        k = int(np.searchsorted(self._edge_key, key))
        if k >= self.n_edges or self._edge_key[k] != key:
            raise MissingEdgeError(f"{e} is not an edge of the window")
        return k, sign

    def has_vertex(self, x: VertexId) -> bool:
        return x in self.index

    # -- consistency -------------------------------------------------------

    def _validate(self):
        n = self.n_vertices
        if list(self.vertices) != sorted(self.vertices):
            raise InvalidWindowError("window vertices must be sorted")
        if len(set(self.vertices)) != n:
            raise InvalidWindowError("duplicate vertices in window")
        if self.full_degree.shape != (n,):
            raise InvalidWindowError("full_degree has wrong length")
        t, h = self.edge_tails, self.edge_heads
        if t.shape != h.shape:
            raise InvalidWindowError("edge arrays disagree in length")
        if np.any(t >= h) or np.any(t < 0) or np.any(h >= n):
            raise InvalidWindowError("edges must be canonical index pairs i < j")
        key = t * n + h
        if np.any(np.diff(key) <= 0):
            raise InvalidWindowError("edge list must be sorted and duplicate free")
        if np.any(self.internal_degree > self.full_degree):
            raise InvalidWindowError("internal degree exceeds ambient degree")
        if not self._connected():
            raise InvalidWindowError("window is not connected")

    def _connected(self) -> bool:
        n = self.n_vertices
        nbr_heads = [[] for _ in range(n)]
        for a, b in zip(self.edge_tails.tolist(), self.edge_heads.tolist()):
            nbr_heads[a].append(b)
            nbr_heads[b].append(a)
        seen = np.zeros(n, dtype=bool)
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            a = stack.pop()
            for b in nbr_heads[a]:
                if not seen[b]:
                    seen[b] = True
                    count += 1
                    stack.append(b)
        return count == n


def same_window(a: FiniteWindow, b: FiniteWindow) -> bool:
    return a is b or a.vertices == b.vertices


def _window_from_vertex_list(family: GraphFamily, vertices, check: bool):
    verts = sorted(set(vertices))
    index = {x: i for i, x in enumerate(verts)}
    n = len(verts)
    tails, heads = [], []
    full_degree = np.empty(n, dtype=np.int64)
    for i, x in enumerate(verts):
        nb = family.neighbors(x)
        full_degree[i] = len(nb)
        for y in nb:
            j = index.get(y)
            if j is not None and j > i:
                tails.append(i)
                heads.append(j)
    w = FiniteWindow(verts, np.array(tails, dtype=np.int64),
                     np.array(heads, dtype=np.int64), full_degree, check=check)
    w._index = index
    return w


def induced_window(family: GraphFamily, vertices: Iterable[VertexId]) -> FiniteWindow:
    """Induced subgraph on a vertex set; must come out connected with >= 1
    edge."""
    vertices = list(vertices)
    if not vertices:
        raise InvalidWindowError("empty vertex set")
    return _window_from_vertex_list(family, vertices, check=True)


def _bfs_collect(family: GraphFamily, sources: Sequence[VertexId], radius: int,
                 size_cap: int):
    """All vertices within graph distance `radius` of the source set."""
    if radius < 0:
        raise InvalidWindowError("radius must be >= 0")
    seen = set(sources)
    if len(seen) > size_cap:
        raise SizeLimitError(f"window would exceed {size_cap} vertices")
    frontier = list(seen)
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for y in family.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
            if len(seen) > size_cap:
                raise SizeLimitError(
                    f"window would exceed {size_cap} vertices")
        if not nxt:
            break
        frontier = nxt
    return seen


def ball(family: GraphFamily, center, radius: int,
         size_cap: int = DEFAULT_SIZE_CAP) -> FiniteWindow:
    """Window on all vertices within `radius` of `center`.

    `center` may be a single vertex id or an iterable of them (a ball around
    an edge is the ball around its endpoint pair). Balls are connected by
    construction, so the connectivity recheck is skipped on the hot path.
    """
    if isinstance(center, tuple) and all(isinstance(c, int) for c in center):
        sources = [center]
    else:
        sources = list(center)
    seen = _bfs_collect(family, sources, radius, size_cap)
    return _window_from_vertex_list(family, seen, check=False)


def neighborhood(family: GraphFamily, vertex_set: Iterable[VertexId],
                 k: int, size_cap: int = DEFAULT_SIZE_CAP):
    """C_k(A): sorted tuple of vertices within distance k of the set A."""
    sources = list(vertex_set)
    if not sources:
        return ()
    return tuple(sorted(_bfs_collect(family, sources, k, size_cap)))


def distance(family: GraphFamily, x: VertexId, y: VertexId,
             cutoff: int) -> Optional[int]:
    """Graph distance, or None once the search passes `cutoff`."""
    if x == y:
        return 0
    seen = {x}
    frontier = [x]
    for depth in range(1, cutoff + 1):
        nxt = []
        for a in frontier:
            for b in family.neighbors(a):
                if b == y:
                    return depth
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        if not nxt:
            return None
        frontier = nxt
    return None


def sigma(window: FiniteWindow):
    """Vertex ids with at least one ambient neighbor outside the window."""
    idx = window.sigma_indices()
    return tuple(window.vertices[i] for i in idx.tolist())


def family_edge(family: GraphFamily, tail: VertexId, head: VertexId) -> OrientedEdge:
    """Validate that (tail, head) is an edge of the family."""
    if head not in family.neighbors(tail):
        raise MissingEdgeError(f"({tail}, {head}) is not an edge of {family.name}")
    return OrientedEdge(tail, head)


def origin_edge(family: GraphFamily) -> OrientedEdge:
    """Deterministic default edge: origin to its largest neighbor (canonical)."""
    return OrientedEdge(family.origin, family.neighbors(family.origin)[-1])


# -- serialization ---------------------------------------------------------

def window_to_json(window: FiniteWindow) -> str:
    payload = {
        "vertices": [list(x) for x in window.vertices],
        "edges": [[int(a), int(b)] for a, b in
                  zip(window.edge_tails, window.edge_heads)],
        "full_degree": [int(d) for d in window.full_degree],
        "sigma": [int(i) for i in window.sigma_indices()],
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def window_from_json(text: str) -> FiniteWindow:
    try:
        payload = json.loads(text)
        vertices = [tuple(int(c) for c in v) for v in payload["vertices"]]
        edges = payload["edges"]
        full_degree = payload["full_degree"]
        sigma_idx = set(int(i) for i in payload.get("sigma", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidWindowError(f"malformed window JSON: {exc}") from exc
    tails = np.array([e[0] for e in edges], dtype=np.int64)
    heads = np.array([e[1] for e in edges], dtype=np.int64)
    w = FiniteWindow(vertices, tails, heads, np.asarray(full_degree))
    if set(w.sigma_indices().tolist()) != sigma_idx:
        raise InvalidWindowError("sigma indices disagree with degrees")
    return w
