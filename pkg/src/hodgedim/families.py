"""Built-in infinite graph families.

A family is an infinite, connected, bounded-degree graph given by a local
rule: a neighbor function on vertex ids plus a degree bound and a marked
origin. Vertex ids are tuples of ints throughout, ordered lexicographically
(shorter tuples compare as prefixes), which fixes a strict total order used
for canonical edge orientation everywhere else.

Families:
    lattice(d)    hypercubic lattice Z^d, degree 2d
    tree(d)       d-regular tree (d >= 3), vertices are reduced words
    ladder        Z x {0,1}, degree 3
    comb          Z^2 with all vertical edges but horizontal edges only on
                  the y = 0 spine, degree 4
    diag_lattice  Z^2 plus one fixed diagonal per unit square, degree 6

`family_from_window` additionally wraps a finite window as its own ambient
graph so the generic machinery can run on finite graphs with no exterior.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Tuple

from .errors import InvalidFamilyError

VertexId = Tuple[int, ...]


@dataclass(frozen=True)
class GraphFamily:
    """Local description of an infinite bounded-degree graph.

    neighbors(x) returns the sorted tuple of neighbors of x. Sortedness is
    part of the contract: deterministic iteration order makes every breadth
    first search in the package reproducible.
    """

    name: str
    origin: VertexId
    degree_bound: int
    neighbors: Callable[[VertexId], Tuple[VertexId, ...]] = field(repr=False)

    def degree(self, x: VertexId) -> int:
        return len(self.neighbors(x))


def _lattice_neighbors(d: int):
    def nbrs(x: VertexId) -> Tuple[VertexId, ...]:
        out = []
        for i in range(d):
            for step in (-1, 1):
                y = list(x)
                y[i] += step
                out.append(tuple(y))
        return tuple(sorted(out))

    return nbrs


def _tree_neighbors(d: int):
    # Vertices are reduced words: the root is (), the root's children carry a
    # first letter in range(d), every later letter is in range(d-1). Each
    # non-root vertex has one parent and d-1 children, so degrees are d
    # everywhere.
    def nbrs(x: VertexId) -> Tuple[VertexId, ...]:
        if len(x) == 0:
            out = [(i,) for i in range(d)]
        else:
            out = [x[:-1]] + [x + (i,) for i in range(d - 1)]
        return tuple(sorted(out))

    return nbrs


def _ladder_neighbors(x: VertexId) -> Tuple[VertexId, ...]:
    a, b = x
    return tuple(sorted([(a - 1, b), (a + 1, b), (a, 1 - b)]))


def _comb_neighbors(x: VertexId) -> Tuple[VertexId, ...]:
    a, b = x
    out = [(a, b - 1), (a, b + 1)]
    if b == 0:
        out += [(a - 1, 0), (a + 1, 0)]
    return tuple(sorted(out))


def _diag_neighbors(x: VertexId) -> Tuple[VertexId, ...]:
    a, b = x
    out = [(a - 1, b), (a + 1, b), (a, b - 1), (a, b + 1),
           (a + 1, b + 1), (a - 1, b - 1)]
    return tuple(sorted(out))


def make_family(name: str, d: int | None = None) -> GraphFamily:
    """Build a family from its name.

    Accepts both parameterized names ("lattice" / "tree" with d) and the
    compact spellings used by the CLI ("z2", "tree3"). The stored name is
    always the compact one so reports and CSV output are uniform.
    """
    name = name.strip().lower()
    if name.startswith("z") and name[1:].isdigit():
        name, d = "lattice", int(name[1:])
    elif name.startswith("tree") and name[4:].isdigit():
        name, d = "tree", int(name[4:])

    if name == "lattice":
        if d is None or d < 1:
            raise InvalidFamilyError("lattice needs a dimension d >= 1")
        return GraphFamily(name=f"z{d}", origin=(0,) * d, degree_bound=2 * d,
                           neighbors=_lattice_neighbors(d))
    if name == "tree":
        if d is None or d < 3:
            raise InvalidFamilyError("tree needs a branching degree d >= 3")
        return GraphFamily(name=f"tree{d}", origin=(), degree_bound=d,
                           neighbors=_tree_neighbors(d))
    if d is not None:
        raise InvalidFamilyError(f"family {name!r} takes no degree parameter")
    if name == "ladder":
        return GraphFamily(name="ladder", origin=(0, 0), degree_bound=3,
                           neighbors=_ladder_neighbors)
    if name == "comb":
        return GraphFamily(name="comb", origin=(0, 0), degree_bound=4,
                           neighbors=_comb_neighbors)
    if name in ("diag_lattice", "diag"):
        return GraphFamily(name="diag_lattice", origin=(0, 0), degree_bound=6,
                           neighbors=_diag_neighbors)
    raise InvalidFamilyError(f"unknown family {name!r}")


BUILTIN_FAMILY_NAMES = ("z1", "z2", "z3", "tree3", "tree4", "ladder", "comb",
                        "diag_lattice")


def family_from_window(window) -> GraphFamily:
    """Treat a finite window as its own ambient graph.

    The wrapped family is finite (balls saturate at the component), which
    breaks the infinite-by-contract convention on purpose: it is the standard
    trick for cross-checking the estimators against dense linear algebra on a
    graph with no exterior.
    """
    adj = {}
    verts = window.vertices
    for i, j in window.intra_edges:
        adj.setdefault(verts[i], []).append(verts[j])
        adj.setdefault(verts[j], []).append(verts[i])
    table = {x: tuple(sorted(ys)) for x, ys in adj.items()}

    def nbrs(x: VertexId) -> Tuple[VertexId, ...]:
        return table.get(x, ())

    degree_bound = max(len(v) for v in table.values())
    return GraphFamily(name="window", origin=verts[0],
                       degree_bound=degree_bound, neighbors=nbrs)


def encode_vertex(x: VertexId) -> str:
    """Compact string form used in CSV cells, e.g. (0,1) -> '(0,1)'."""
    return "(" + ",".join(str(c) for c in x) + ")"


def decode_vertex(s: str) -> VertexId:
    s = s.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    s = s.strip()
    if not s:
        return ()
    return tuple(int(c) for c in s.split(","))
