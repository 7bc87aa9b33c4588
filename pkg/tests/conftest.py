"""Shared fixtures and the dense linear-algebra oracles.

Every solver-facing assertion in this suite is checked against plain dense
numpy on the incidence matrix, built independently of the package's edge
bookkeeping. Keep these helpers free of hodgedim internals beyond the public
window API.
"""

from __future__ import annotations

import numpy as np
import pytest

from hodgedim import FiniteWindow, ball, induced_window, make_family


def incidence(window: FiniteWindow) -> np.ndarray:
    """n x m signed incidence matrix over the canonical edge list."""
    n, m = window.n_vertices, window.n_edges
    b = np.zeros((n, m))
    for j, (t, h) in enumerate(zip(window.edge_tails, window.edge_heads)):
        b[t, j] = -1.0
        b[h, j] = 1.0
    return b


def dense_star_projection(window: FiniteWindow, u: np.ndarray,
                          embedded: bool) -> np.ndarray:
    """Least-squares projection of u onto the gradient subspace.

    embedded adds the exterior-degree grounding term, which is what makes
    the system nonsingular on windows with boundary.
    """
    b = incidence(window)
    lap = b @ b.T
    if embedded:
        lap = lap + np.diag(window.full_degree - window.internal_degree)
        v = np.linalg.solve(lap, b @ u)
    else:
        v = np.linalg.lstsq(lap, b @ u, rcond=None)[0]
    return b.T @ v


def cycle_space_dim(window: FiniteWindow) -> int:
    b = incidence(window)
    return window.n_edges - np.linalg.matrix_rank(b)


def random_window(family, rng: np.random.Generator, n_target: int,
                  spread: int = 6) -> FiniteWindow:
    """Random connected induced window grown by biased BFS from a random
    start vertex. Deterministic given the generator state."""
    origin = family.origin
    start = origin
    for _ in range(rng.integers(0, spread)):
        nbrs = family.neighbors(start)
        start = nbrs[rng.integers(0, len(nbrs))]
    chosen = {start}
    fringe = list(family.neighbors(start))
    while len(chosen) < n_target and fringe:
        i = int(rng.integers(0, len(fringe)))
        x = fringe.pop(i)
        if x in chosen:
            continue
        chosen.add(x)
        fringe.extend(y for y in family.neighbors(x) if y not in chosen)
    if len(chosen) < 2:
        chosen.update(family.neighbors(start)[:1])
    return induced_window(family, chosen)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0x5EED)


@pytest.fixture(scope="session")
def z1():
    return make_family("z1")


@pytest.fixture(scope="session")
def z2():
    return make_family("z2")


@pytest.fixture(scope="session")
def tree3():
    return make_family("tree3")


@pytest.fixture(scope="session")
def small_z2_window(z2):
    return ball(z2, (0, 0), 2)
