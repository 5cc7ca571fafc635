"""Seeded random instances: polytopes with interior origin and random
trigonometric polynomials.  Everything is deterministic per seed."""

from __future__ import annotations

import itertools

import numpy as np

from .geometry import HPolytope, TriangularPiece, h_from_vertices, VPolytope
from .spectral import TrigPolynomial

__all__ = [
    "random_polytope",
    "random_trig_polynomial",
    "random_piece_points",
]


def random_polytope(
    dim: int,
    m: int,
    seed,
    margin: float = 0.1,
    max_tries: int = 200,
) -> HPolytope:
    """Hull of m random unit-sphere points, rejected until the origin is
    interior with distance >= margin to every facet plane.

    Returns the normalized irredundant half-space form; d = 2 gives an m-gon,
    d = 3 a simplicial polytope with up to 2m-4 facets.
    """
    if dim not in (2, 3):
        raise ValueError("random polytopes are generated for d in {2, 3}")
    if m < dim + 1:
        raise ValueError("need at least d+1 generating points")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        pts = rng.normal(size=(m, dim))
        norms = np.linalg.norm(pts, axis=1)
        if np.any(norms < 1e-9):
            continue
        pts /= norms[:, None]
        try:
            P = h_from_vertices(VPolytope(dim, pts))
        except ValueError:
            continue
        # rows are scaled to b = 1, so the plane distance is 1/|a_i|
        if np.all(1.0 / np.linalg.norm(P.A, axis=1) >= margin):
            return P
    raise ValueError("rejection budget exhausted; loosen the margin or reseed")


def random_trig_polynomial(
    dim: int,
    bandwidth: int,
    density: float,
    seed,
) -> TrigPolynomial:
    """Random coefficients on the box |n_j| <= B.

    Each lattice point is kept independently with the given probability and
    receives a complex Gaussian coefficient (independent standard normal real
    and imaginary parts).
    """
    if bandwidth < 1:
        raise ValueError("bandwidth must be at least 1")
    if not 0.0 < density <= 1.0:
        raise ValueError("density must lie in (0, 1]")
    rng = np.random.default_rng(seed)
    lattice = np.array(
        list(itertools.product(range(-bandwidth, bandwidth + 1), repeat=dim)),
        dtype=np.int64,
    )
    keep = rng.random(lattice.shape[0]) < density
    k = int(keep.sum())
    coeffs = rng.normal(size=k) + 1j * rng.normal(size=k)
    return TrigPolynomial(dim, lattice[keep], coeffs)


def random_piece_points(piece: TriangularPiece, count: int, seed) -> np.ndarray:
    """Random points of the piece in its defining form t * (facet point).

    Facet points are random convex combinations of the generators and t is
    uniform on [0, 1], so every sample lies in the piece by construction.
    """
    rng = np.random.default_rng(seed)
    V = piece.generators
    w = rng.exponential(size=(count, V.shape[0]))
    w /= w.sum(axis=1, keepdims=True)
    t = rng.random(size=(count, 1))
    return t * (w @ V)
