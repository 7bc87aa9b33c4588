"""Vertex functions, antisymmetric edge functions, and the discrete calculus.

Edge functions are antisymmetric (u(y,x) = -u(x,y)) and stored on canonical
edges only, so the half-weighted inner product over oriented edges reduces to
a plain sum over the canonical edge list:

    <u, w> = 1/2 sum_{oriented e} u(e) w(e) = sum_{canonical e} u(e) w(e).

The differential of a vertex function is dv(x,y) = v(y) - v(x); the
codifferential (d* u)(x) = sum_{y ~ x} u(y, x) is its adjoint. All window
functions use the zero-outside convention: a window function stands for its
extension by zero to the ambient graph.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from .errors import IncompatibleDomainError, InvalidWindowError, MissingEdgeError
from .families import VertexId, decode_vertex, encode_vertex
from .windows import FiniteWindow, OrientedEdge, same_window


def _as_values(window_size: int, values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape != (window_size,):
        raise IncompatibleDomainError(
            f"expected {window_size} values, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise IncompatibleDomainError("values must be finite")
    return arr


class VertexFunction:
    def __init__(self, window: FiniteWindow, values):
        self.window = window
        self.values = _as_values(window.n_vertices, values)

    def at(self, x: VertexId) -> float:
        return float(self.values[self.window.vertex_index(x)])

    def _check(self, other: "VertexFunction"):
        if not same_window(self.window, other.window):
            raise IncompatibleDomainError("vertex functions on different windows")

    def __add__(self, other):
        self._check(other)
        return VertexFunction(self.window, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return VertexFunction(self.window, self.values - other.values)

    def __mul__(self, scalar):
        return VertexFunction(self.window, self.values * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return VertexFunction(self.window, -self.values)


class EdgeFunction:
    def __init__(self, window: FiniteWindow, values):
        self.window = window
        self.values = _as_values(window.n_edges, values)

    def at(self, e: OrientedEdge) -> float:
        """Value on an oriented edge; antisymmetric in the orientation."""
        k, sign = self.window.edge_lookup(e)
        return sign * float(self.values[k])

    def _check(self, other: "EdgeFunction"):
        if not same_window(self.window, other.window):
            raise IncompatibleDomainError("edge functions on different windows")

    def __add__(self, other):
        self._check(other)
        return EdgeFunction(self.window, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return EdgeFunction(self.window, self.values - other.values)

    def __mul__(self, scalar):
        return EdgeFunction(self.window, self.values * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return EdgeFunction(self.window, -self.values)


# -- calculus ---------------------------------------------------------------

def differential(v: VertexFunction) -> EdgeFunction:
    """dv(x,y) = v(y) - v(x) on the window's canonical edges."""
    w = v.window
    return EdgeFunction(w, v.values[w.edge_heads] - v.values[w.edge_tails])


def codifferential(u: EdgeFunction) -> VertexFunction:
    """(d* u)(x) = sum over neighbors y of u(y, x)."""
    w = u.window
    n = w.n_vertices
    into = np.bincount(w.edge_heads, weights=u.values, minlength=n)
    outof = np.bincount(w.edge_tails, weights=u.values, minlength=n)
    return VertexFunction(w, into - outof)


def inner(u: EdgeFunction, w: EdgeFunction) -> float:
    """Half-weighted inner product over oriented edges (see module docstring).

    Compensated: the pointwise products are summed with math.fsum.
    """
    u._check(w)
    return math.fsum((u.values * w.values).tolist())


def vertex_inner(f: VertexFunction, g: VertexFunction) -> float:
    f._check(g)
    return math.fsum((f.values * g.values).tolist())


def energy(v: VertexFunction) -> float:
    """Dirichlet energy <dv, dv> over the window's own edges."""
    dv = differential(v)
    return inner(dv, dv)


def edge_indicator(window: FiniteWindow, e: OrientedEdge) -> EdgeFunction:
    """chi_e: +1 on e, -1 on the reversal, 0 elsewhere. Unit norm."""
    k, sign = window.edge_lookup(e)
    values = np.zeros(window.n_edges)
    values[k] = sign
    return EdgeFunction(window, values)


def chi(window: FiniteWindow, vertex_subset: Iterable[VertexId]) -> np.ndarray:
    """0/1 edge mask: 1 exactly where both endpoints lie in the subset.

    Orientation-free by construction.
    """
    subset = set(vertex_subset)
    flags = np.array([x in subset for x in window.vertices], dtype=bool)
    return (flags[window.edge_tails] & flags[window.edge_heads]).astype(np.float64)


def mask_edges(u: EdgeFunction, mask: np.ndarray) -> EdgeFunction:
    if mask.shape != u.values.shape:
        raise IncompatibleDomainError("mask length does not match edge count")
    return EdgeFunction(u.window, u.values * mask)


# -- residual checks --------------------------------------------------------

def flow_residual(u: EdgeFunction, interior_only: bool = True) -> float:
    """max |d* u| over the checked vertices."""
    w = u.window
    res = np.abs(codifferential(u).values)
    if interior_only:
        res = res[~w.boundary]
        if res.size == 0:
            return 0.0
    return float(res.max())


def is_flow(u: EdgeFunction, tol: float = 1e-10,
            interior_only: bool = True) -> bool:
    """True iff d* u vanishes (up to tol) at every checked vertex.

    With interior_only, boundary vertices are skipped: the window cannot see
    the ambient edges that would balance them.
    """
    return flow_residual(u, interior_only) <= tol


def harmonic_residual(v: VertexFunction, interior_only: bool = True) -> float:
    """max |v(x) - average of neighbor values| with the ambient degree as
    denominator (missing neighbors count as zero)."""
    w = v.window
    n = w.n_vertices
    adj = (np.bincount(w.edge_tails, weights=v.values[w.edge_heads], minlength=n)
           + np.bincount(w.edge_heads, weights=v.values[w.edge_tails], minlength=n))
    res = np.abs(v.values - adj / w.full_degree)
    if interior_only:
        res = res[~w.boundary]
        if res.size == 0:
            return 0.0
    return float(res.max())


def is_harmonic(v: VertexFunction, tol: float = 1e-10,
                interior_only: bool = True) -> bool:
    return harmonic_residual(v, interior_only) <= tol


# -- moving between windows ---------------------------------------------------

def transfer_edge_function(u: EdgeFunction, target: FiniteWindow) -> EdgeFunction:
    """Re-express u on a window that contains every edge u is supported on."""
    values = np.zeros(target.n_edges)
    src = u.window
    nz = np.nonzero(u.values)[0]
    for k in nz.tolist():
        e = OrientedEdge(src.vertices[src.edge_tails[k]],
                         src.vertices[src.edge_heads[k]])
        kk, sign = target.edge_lookup(e)
        values[kk] = sign * u.values[k]
    return EdgeFunction(target, values)


def support_vertices(u: EdgeFunction):
    """Sorted ids touched by a nonzero edge value."""
    w = u.window
    nz = np.nonzero(u.values)[0]
    ids = set()
    for k in nz.tolist():
        ids.add(w.vertices[w.edge_tails[k]])
        ids.add(w.vertices[w.edge_heads[k]])
    return tuple(sorted(ids))


# -- CSV --------------------------------------------------------------------

def _fmt(x: float) -> str:
    return repr(float(x))


def vertex_function_to_csv(v: VertexFunction) -> str:
    lines = ["id,value"]
    for x, val in zip(v.window.vertices, v.values):
        lines.append(f"\"{encode_vertex(x)}\",{_fmt(val)}")
    return "\n".join(lines) + "\n"


def edge_function_to_csv(u: EdgeFunction) -> str:
    w = u.window
    lines = ["tail,head,value"]
    for a, b, val in zip(w.edge_tails.tolist(), w.edge_heads.tolist(),
                         u.values):
        lines.append(f"\"{encode_vertex(w.vertices[a])}\","
                     f"\"{encode_vertex(w.vertices[b])}\",{_fmt(val)}")
    return "\n".join(lines) + "\n"


def edge_function_from_csv(window: FiniteWindow, text: str) -> EdgeFunction:
    """Rows are (tail, head, value); omitted edges default to zero."""
    import csv
    import io

    values = np.zeros(window.n_edges)
    seen = set()
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [c.strip().lower() for c in header[:3]] != \
            ["tail", "head", "value"]:
        raise InvalidWindowError("edge CSV must start with tail,head,value")
    for row in reader:
        if not row:
            continue
        if len(row) != 3:
            raise InvalidWindowError(f"bad edge CSV row: {row}")
        e = OrientedEdge(decode_vertex(row[0]), decode_vertex(row[1]))
        k, sign = window.edge_lookup(e)
        if k in seen:
            raise MissingEdgeError(f"duplicate edge row for {e}")
        seen.add(k)
        values[k] = sign * float(row[2])
    return EdgeFunction(window, values)
