"""Quasi-isometries between families and their effect on Dirichlet energy.

A QuasiMap is a vertex map f between two families together with a claimed
distortion k: for all x, y

    (1/k) d(x,y) - 1 <= d(f x, f y) <= k d(x,y)

and the image is coarsely dense. The checks in this module are finite-window
estimators for that contract and for the two energy comparison inequalities
used to transport Dirichlet functions across such maps:

  * pulling back along f multiplies energy by at most c(k, D)^2, where the
    constant comes from routing each source edge through a fixed shortest
    path of length <= k and counting how many such paths can share one edge
    (all endpoints involved sit within distance 2k^2, so a degree bound D
    caps the count);
  * for a bounded-displacement endomap (max d(x, f x) = s), the pointwise
    difference f*v - v has squared norm at most K(s, D) times the energy,
    by routing each x -> f(x) along a fixed path of length <= s.

Estimated distortion is reported as the smallest integer k >= 1 satisfying
both inequalities for every window pair (the lower bound is compared
non-strictly: the set of admissible real k is open, so no real minimum
exists).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Tuple

import numpy as np

from .edgespace import (EdgeFunction, VertexFunction, chi, differential,
                        inner, support_vertices, transfer_edge_function)
from .errors import (CutoffExceededError, IncompatibleDomainError,
                     InsufficientWindowError, InvalidWindowError)
from .families import GraphFamily, VertexId, make_family
from .solver import LaplacianMode, project_star
from .windows import (DEFAULT_SIZE_CAP, FiniteWindow, ball, neighborhood)


@dataclass(frozen=True)
class QuasiMap:
    name: str
    source: GraphFamily
    target: GraphFamily
    mapping: Callable[[VertexId], VertexId] = field(repr=False)
    claimed_distortion: float = 1.0

    def __call__(self, x: VertexId) -> VertexId:
        return self.mapping(x)

    @property
    def is_endomap(self) -> bool:
        return self.source.name == self.target.name


# -- distances and deterministic paths ---------------------------------------

def _bfs_distances(family: GraphFamily, source: VertexId, depth: int,
                   targets: Optional[Iterable[VertexId]] = None) -> dict:
    """Distances from source out to `depth`. With `targets`, stop after the
    first complete layer containing the last of them; layers are never cut
    short, so every vertex at distance <= the returned maximum is present."""
    dist = {source: 0}
    todo = None if targets is None else set(targets) - {source}
    frontier = [source]
    for d in range(1, depth + 1):
        if todo is not None and not todo:
            break
        nxt = []
        for x in frontier:
            for y in family.neighbors(x):
                if y not in dist:
                    dist[y] = d
                    nxt.append(y)
                    if todo is not None:
                        todo.discard(y)
        if not nxt:
            break
        frontier = nxt
    return dist


def lex_min_path(family: GraphFamily, a: VertexId, b: VertexId,
                 cutoff: int) -> Tuple[VertexId, ...]:
    """One deterministic shortest path from a to b: walk back from b, always
    through the smallest predecessor id."""
    dist = _bfs_distances(family, a, cutoff, targets=(b,))
    if b not in dist:
        raise CutoffExceededError(f"no path within {cutoff} between {a} and {b}")
    path = [b]
    cur = b
    while dist[cur] > 0:
        cur = min(y for y in family.neighbors(cur)
                  if dist.get(y) == dist[cur] - 1)
        path.append(cur)
    path.reverse()
    return tuple(path)


# -- distortion ---------------------------------------------------------------

@dataclass(frozen=True)
class DistortionReport:
    k_est: int
    density_gap: int
    violations: Tuple[tuple, ...]
    inconclusive: Tuple[tuple, ...]


def distortion_estimate(f: QuasiMap, window: FiniteWindow,
                        cutoff: int) -> DistortionReport:
    """Exhaustive pair check of the distortion inequalities on a window.

    violations lists the pairs (x, y, d, d') that break the *claimed*
    distortion; pairs whose distance query passes `cutoff` land in
    `inconclusive` instead of being silently dropped.
    """
    verts = window.vertices
    vert_set = frozenset(verts)
    src_dist = {x: _bfs_distances(f.source, x, cutoff, targets=vert_set)
                for x in verts}
    images = {x: f(x) for x in verts}
    image_set = frozenset(images.values())
    tgt_dist = {}
    for img in image_set:
        if img not in tgt_dist:
            tgt_dist[img] = _bfs_distances(f.target, img, cutoff,
                                           targets=image_set)

    kc = f.claimed_distortion
    k_needed = 1
    violations = []
    inconclusive = []
    for i, x in enumerate(verts):
        dx = src_dist[x]
        dfx = tgt_dist[images[x]]
        for y in verts[i + 1:]:
            d = dx.get(y)
            dp = dfx.get(images[y])
            if d is None or dp is None:
                inconclusive.append((x, y, d, dp))
                continue
            # smallest integer k with d' <= k d and (1/k) d - 1 <= d'
            k_pair = max(-(-dp // d), -(-d // (dp + 1)))
            k_needed = max(k_needed, k_pair)
            if dp > kc * d or d / kc - 1 > dp:
                violations.append((x, y, d, dp))

    return DistortionReport(k_est=k_needed,
                            density_gap=_density_gap(f, window, cutoff),
                            violations=tuple(violations),
                            inconclusive=tuple(inconclusive))


def _density_gap(f: QuasiMap, window: FiniteWindow, cutoff: int) -> int:
    """Covering radius of the image over the connecting-path skeleton.

    For every window edge (x, y) take the deterministic shortest target path
    between f(x) and f(y); the probe is the union of those paths. This stays
    inside the image's footprint (a free-floating ball probe would report
    spurious gaps at its own fringe) while catching images that skip over
    intermediate target vertices.
    """
    verts = window.vertices
    image = {f(x) for x in verts}
    probe = set()
    for a, b in zip(window.edge_tails.tolist(), window.edge_heads.tolist()):
        fa, fb = f(verts[a]), f(verts[b])
        if fa == fb:
            probe.add(fa)
        else:
            probe.update(lex_min_path(f.target, fa, fb, cutoff))
    todo = probe - image
    if not todo:
        return 0
    # multi-source BFS out of the image until the probe is exhausted
    dist = {x: 0 for x in image}
    frontier = sorted(image)
    gap = 0
    for d in range(1, cutoff + 1):
        nxt = []
        for x in frontier:
            for y in f.target.neighbors(x):
                if y not in dist:
                    dist[y] = d
                    nxt.append(y)
                    if y in todo:
                        todo.discard(y)
                        gap = d
        if not todo:
            return gap
        if not nxt:
            break
        frontier = nxt
    raise CutoffExceededError("density probe ran past the cutoff")


def wobbling_displacement(f: QuasiMap, window: FiniteWindow,
                          cutoff: int = 64) -> int:
    """max over window vertices of d(x, f x); endomaps only."""
    if not f.is_endomap:
        raise IncompatibleDomainError(
            "displacement needs source and target to coincide")
    worst = 0
    for x in window.vertices:
        fx = f(x)
        if fx == x:
            continue
        dist = _bfs_distances(f.source, x, cutoff, targets=(fx,))
        d = dist.get(fx)
        if d is None:
            raise CutoffExceededError(
                f"displacement of {x} exceeds cutoff {cutoff}")
        worst = max(worst, d)
    return worst


# -- pullback and the energy inequalities ------------------------------------

def pullback(f: QuasiMap, v: VertexFunction,
             source_window: FiniteWindow) -> VertexFunction:
    """(f* v)(x) = v(f x) on the source window, zero where f leaves v's
    window."""
    idx = v.window.index
    vals = np.zeros(source_window.n_vertices)
    for i, x in enumerate(source_window.vertices):
        j = idx.get(f(x))
        if j is not None:
            vals[i] = v.values[j]
    return VertexFunction(source_window, vals)


def _tree_ball_bound(degree_bound: int, r: int) -> int:
    """Vertex count of a radius-r ball in the degree-D tree: an upper bound
    for any graph with degree bound D."""
    if r <= 0:
        return 1
    if degree_bound <= 1:
        return 2
    if degree_bound == 2:
        return 2 * r + 1
    q = degree_bound - 1
    return 1 + degree_bound * (q ** r - 1) // (q - 1)


def lemma5_constant(k: float, degree_bound: int) -> float:
    """Energy comparison constant c(k, D): sqrt(k * M) with M the count of
    oriented source edges whose endpoints fit in a radius-ceil(2k^2) ball."""
    kk = math.ceil(k)
    radius = math.ceil(2 * k * k)
    m = degree_bound * _tree_ball_bound(degree_bound, radius)
    return math.sqrt(kk * m)


def lemma6_constant(displacement: int, degree_bound: int) -> float:
    """Difference-vs-energy constant K(s, D): s paths of length <= s, each
    edge shared by at most the vertices within distance s of it."""
    if displacement == 0:
        return 0.0
    return displacement * 2.0 * _tree_ball_bound(degree_bound, displacement)


@dataclass(frozen=True)
class Lemma5Result:
    lhs: float
    rhs: float
    ratio: float
    bound: float
    holds: bool


def lemma5_check(f: QuasiMap, v: VertexFunction, source_window: FiniteWindow,
                 a: Optional[Iterable[VertexId]] = None,
                 size_cap: int = DEFAULT_SIZE_CAP) -> Lemma5Result:
    """Compare |d(f* v) . chi_A| against |dv . chi_B|, B = C_k(f(A)).

    v must live on a target window containing C_k of the full image of the
    source window; anything smaller raises InsufficientWindowError rather
    than silently truncating B.
    """
    k = math.ceil(f.claimed_distortion)
    tw = v.window
    for x in source_window.vertices:
        if not tw.has_vertex(f(x)):
            raise InsufficientWindowError(
                f"target window misses f({x}) = {f(x)}")
    if a is None:
        a_verts = tuple(source_window.vertices)
    else:
        a_verts = tuple(a)
        for x in a_verts:
            if not source_window.has_vertex(x):
                raise IncompatibleDomainError(
                    f"localization vertex {x} is outside the source window")
    image_a = {f(x) for x in a_verts}
    b = neighborhood(f.target, sorted(image_a), k, size_cap=size_cap)
    for y in b:
        if not tw.has_vertex(y):
            raise InsufficientWindowError(
                f"target window misses {y} in the k-neighborhood of the image")

    fv = pullback(f, v, source_window)
    lhs_vals = differential(fv).values * chi(source_window, a_verts)
    lhs = math.sqrt(math.fsum((lhs_vals * lhs_vals).tolist()))
    rhs_vals = differential(v).values * chi(tw, b)
    rhs = math.sqrt(math.fsum((rhs_vals * rhs_vals).tolist()))

    bound = lemma5_constant(f.claimed_distortion, f.source.degree_bound)
    if rhs > 0.0:
        ratio = lhs / rhs
    else:
        ratio = 0.0 if lhs == 0.0 else math.inf
    return Lemma5Result(lhs=lhs, rhs=rhs, ratio=ratio, bound=bound,
                        holds=ratio <= bound * (1.0 + 1e-12))


@dataclass(frozen=True)
class Lemma6Result:
    diff_norm: float
    energy: float
    ratio: float
    bound: float
    displacement: int
    holds: bool


def lemma6_check(f: QuasiMap, v: VertexFunction, window: FiniteWindow,
                 cutoff: int = 64,
                 size_cap: int = DEFAULT_SIZE_CAP) -> Lemma6Result:
    """Check |f* v - v|^2 <= K(s, D) * energy(v) over a window.

    v must be defined on an enlargement of the window by the displacement
    bound s, since the connecting paths (and the energy they price) may step
    outside the window itself.
    """
    s = wobbling_displacement(f, window, cutoff=cutoff)
    needed = neighborhood(f.source, window.vertices, s, size_cap=size_cap)
    tw = v.window
    for y in needed:
        if not tw.has_vertex(y):
            raise InsufficientWindowError(
                f"window enlarged by displacement {s} misses {y}")

    idx = tw.index
    diffs = [v.values[idx[f(x)]] - v.values[idx[x]] for x in window.vertices]
    diff_sq = math.fsum(d * d for d in diffs)
    e = inner(differential(v), differential(v))
    bound = lemma6_constant(s, f.source.degree_bound)
    if e > 0.0:
        ratio = diff_sq / e
    else:
        ratio = 0.0 if diff_sq == 0.0 else math.inf
    return Lemma6Result(diff_norm=math.sqrt(diff_sq), energy=e, ratio=ratio,
                        bound=bound, displacement=s,
                        holds=diff_sq <= bound * e + 1e-12)


# -- membership residuals -----------------------------------------------------

def star_membership_residual(family: GraphFamily, u: EdgeFunction,
                             radii: Sequence[int], tol: float = 1e-10,
                             size_cap: int = DEFAULT_SIZE_CAP):
    """Distance from u to the compactly-supported gradient space, along a
    growing ball schedule around the support of u.

    Returns [(r, residual)]; the residual at r is |u - P_r u| with P_r the
    EMBEDDED-mode projection on the radius-r ball. Nonincreasing in r; tends
    to 0 exactly for members of the closed gradient space, and to the
    distance otherwise (a unit square circulation keeps residual |u| = 2).
    """
    radii = tuple(radii)
    if not radii or any(r < 1 for r in radii):
        raise InvalidWindowError("radius schedule must be nonempty, all >= 1")
    if list(radii) != sorted(radii):
        raise InvalidWindowError("radius schedule must be increasing")
    supp = support_vertices(u)
    norm_sq = inner(u, u)
    if not supp:
        return [(r, 0.0) for r in radii]
    out = []
    for r in radii:
        w = ball(family, supp, r, size_cap=size_cap)
        ur = transfer_edge_function(u, w)
        sp = project_star(w, ur, LaplacianMode.EMBEDDED, tol=tol)
        out.append((r, math.sqrt(max(0.0, norm_sq - sp.score))))
    return out


# -- quasi-inverse synthesis --------------------------------------------------

def nearest_preimage(f: QuasiMap, source_window: FiniteWindow,
                     targets: Iterable[VertexId], cutoff: int = 64) -> dict:
    """Map each target vertex to the source vertex whose image is nearest,
    ties broken by vertex id order. The standard coarse inverse."""
    image_of = {}
    for x in source_window.vertices:
        image_of.setdefault(f(x), []).append(x)
    out = {}
    for y in targets:
        dist = _bfs_distances(f.target, y, cutoff, targets=image_of.keys())
        best = None
        for img, xs in image_of.items():
            d = dist.get(img)
            if d is None:
                continue
            cand = (d, min(xs))
            if best is None or cand < best:
                best = cand
        if best is None:
            raise CutoffExceededError(
                f"no image point within {cutoff} of {y}")
        out[y] = best[1]
    return out


# -- built-in map suite -------------------------------------------------------

def _shift_map(family: GraphFamily) -> Callable[[VertexId], VertexId]:
    def shift(x: VertexId) -> VertexId:
        return (x[0] + 1,) + x[1:]
    return shift


def _coarsen(x: VertexId) -> VertexId:
    return tuple(c // 2 for c in x)


def builtin_maps(family: GraphFamily) -> Tuple[QuasiMap, ...]:
    """The stock comparison maps applicable to a family."""
    maps = [QuasiMap("identity", family, family, lambda x: x, 1.0)]
    if not family.name.startswith("tree"):
        maps.append(QuasiMap("translation", family, family,
                             _shift_map(family), 1.0))
    if family.name.startswith("z") and family.name[1:].isdigit():
        # a cell of the halving map has L1 diameter d, collapsed to a point
        k_coarse = max(2.0, float(family.name[1:]))
        maps.append(QuasiMap("coarsen", family, family, _coarsen, k_coarse))
    if family.name == "z2":
        maps.append(QuasiMap("z2_to_diag", family, make_family("diag_lattice"),
                             lambda x: x, 2.0))
    if family.name == "diag_lattice":
        maps.append(QuasiMap("diag_to_z2", family, make_family("z2"),
                             lambda x: x, 2.0))
    return tuple(maps)


@dataclass(frozen=True)
class QiRow:
    map_name: str
    window_radius: int
    k_est: int
    density_gap: int
    wobble: int
    lemma5_ratio: float
    lemma5_bound: float
    lemma6_ratio: float
    lemma6_bound: float


def _radial_bump(family: GraphFamily, window: FiniteWindow, center: VertexId,
                 radius: int) -> VertexFunction:
    """Tent function of the distance to `center`, zero beyond `radius`."""
    dist = _bfs_distances(family, center, radius + 1)
    vals = np.zeros(window.n_vertices)
    for i, x in enumerate(window.vertices):
        d = dist.get(x)
        if d is not None and d < radius:
            vals[i] = (radius - d) / radius
    return VertexFunction(window, vals)


def suite_row(f: QuasiMap, window_radius: int, tol: float = 1e-10,
              size_cap: int = DEFAULT_SIZE_CAP) -> QiRow:
    """Run the full check battery for one built-in map at one window radius.

    The Dirichlet test function is a radial tent centered at the image of the
    origin, supported strictly inside the source window's footprint so the
    identity row reproduces ratio 1 exactly.
    """
    r = window_radius
    if r < 1:
        raise InvalidWindowError("window radius must be >= 1")
    src = f.source
    w = ball(src, src.origin, r, size_cap=size_cap)
    k = math.ceil(f.claimed_distortion)
    cutoff = 2 * k * (r + 2) + 4

    rep = distortion_estimate(f, w, cutoff)

    if f.is_endomap:
        wobble = wobbling_displacement(f, w, cutoff=cutoff)
    else:
        wobble = -1

    fo = f(src.origin)
    ecc = 0
    dist_fo = _bfs_distances(f.target, fo, cutoff,
                             targets={f(x) for x in w.vertices})
    for x in w.vertices:
        d = dist_fo.get(f(x))
        if d is None:
            raise CutoffExceededError("image eccentricity exceeds cutoff")
        ecc = max(ecc, d)
    margin = max(wobble, 0)
    t_radius = max(ecc + k, r + 2 * margin) + 2
    tw = ball(f.target, fo, t_radius, size_cap=size_cap)
    v = _radial_bump(f.target, tw, fo, max(1, r - 2))

    l5 = lemma5_check(f, v, w, a=None, size_cap=size_cap)
    if f.is_endomap:
        l6 = lemma6_check(f, v, w, cutoff=cutoff, size_cap=size_cap)
        l6_ratio, l6_bound = l6.ratio, l6.bound
    else:
        l6_ratio, l6_bound = -1.0, -1.0

    return QiRow(map_name=f.name, window_radius=r, k_est=rep.k_est,
                 density_gap=rep.density_gap, wobble=wobble,
                 lemma5_ratio=l5.ratio, lemma5_bound=l5.bound,
                 lemma6_ratio=l6_ratio, lemma6_bound=l6_bound)
