"""Convex polytopes with the origin interior: half-space and vertex forms,
Minkowski gauges, facet enumeration, and the fan triangulation over facets.

Half-space data is ``A x <= b`` with every offset positive; constructors
rescale each row so ``b = 1``, which makes the gauge of a point simply
``max(A @ x, 0)`` and makes rows comparable entrywise.  Vertex and facet
enumeration solve pairwise (d = 2) or triple (d = 3) hyperplane intersections
exactly and are deliberately capped at d <= 3; gauges, membership, and piece
assignment work in any dimension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GEO_TOL",
    "DEDUP_TOL",
    "HPolytope",
    "VPolytope",
    "Facet",
    "TriangularPiece",
    "hypercube",
    "cross_polytope",
    "interval",
    "gauge",
    "contains",
    "vertices_from_h",
    "h_from_vertices",
    "facets",
    "triangulate",
    "assign_rows",
    "piece_assign",
    "piece_contains",
    "rotation_to_e1",
    "cone_halfspaces",
]

GEO_TOL = 1e-9    # tightness tolerance for enumeration and membership
DEDUP_TOL = 1e-7  # relative distance below which enumerated vertices merge

_ENUM_DIMS = (1, 2, 3)


@dataclass(eq=False)
class HPolytope:
    """Bounded polytope ``{x : A x <= b}`` with the origin in its interior.

    Rows are rescaled on construction so every offset equals one.  ``b`` is
    kept as an explicit (all-ones) vector so the ``(a_i, b_i)`` pairing stays
    visible to callers; row order is preserved and is semantically meaningful
    (it fixes the tie-break in :func:`piece_assign`).
    """

    dim: int
    A: np.ndarray
    b: np.ndarray | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be a positive integer")
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        if A.ndim != 2 or A.shape[1] != self.dim:
            raise ValueError(f"constraint matrix must have {self.dim} columns")
        if A.shape[0] < self.dim + 1:
            raise ValueError("a bounded polytope with interior needs at least d+1 rows")
        if self.b is None:
            b = np.ones(A.shape[0])
        else:
            b = np.asarray(self.b, dtype=float).reshape(-1)
        if b.shape[0] != A.shape[0]:
            raise ValueError("row count mismatch between A and b")
        if not np.all(np.isfinite(A)) or not np.all(np.isfinite(b)):
            raise ValueError("non-finite constraint data")
        if np.any(b <= 0.0):
            raise ValueError("every offset must be positive (origin must be interior)")
        A = A / b[:, None]
        if np.any(np.linalg.norm(A, axis=1) < 1e-14):
            raise ValueError("zero constraint row")
        self.A = A
        self.b = np.ones(A.shape[0])
        self.A.setflags(write=False)
        self.b.setflags(write=False)

    @property
    def m(self) -> int:
        """Number of half-space rows."""
        return self.A.shape[0]

    def row(self, i: int) -> tuple[np.ndarray, float]:
        return self.A[i], float(self.b[i])

    def validate(self) -> "HPolytope":
        """Certify irredundancy and boundedness by vertex enumeration (d <= 3).

        A row is accepted as irredundant when at least ``dim`` vertices are
        tight on it; duplicated rows and inputs where that criterion cannot
        decide (no vertices, rank defects) raise ``ValueError``.
        """
        if self.dim not in _ENUM_DIMS:
            raise ValueError("validate() requires d <= 3")
        dup = _duplicate_rows(self.A)
        if dup:
            raise ValueError(f"duplicate constraint rows: {dup}")
        if not _bounded_rows(self.A):
            raise ValueError("unbounded: row normals do not positively span R^d")
        verts = vertices_from_h(self).vertices
        vals = verts @ self.A.T
        for i in range(self.m):
            n_tight = int(np.sum(np.abs(vals[:, i] - self.b[i]) <= GEO_TOL))
            if n_tight < self.dim:
                raise ValueError(
                    f"row {i} supports only {n_tight} vertices; redundant or degenerate"
                )
        return self


@dataclass(eq=False)
class VPolytope:
    """Polytope as the convex hull of its vertex set."""

    dim: int
    vertices: np.ndarray

    def __post_init__(self):
        V = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        if V.ndim != 2 or V.shape[1] != self.dim:
            raise ValueError(f"vertices must be {self.dim}-vectors")
        if V.shape[0] < self.dim + 1:
            raise ValueError("need at least d+1 vertices")
        if not np.all(np.isfinite(V)):
            raise ValueError("non-finite vertex data")
        self.vertices = V
        self.vertices.setflags(write=False)

    def validate(self) -> "VPolytope":
        """Check minimality (every point is extreme) and the interior origin."""
        if self.dim == 1:
            pts = np.unique(self.vertices.ravel())
            if pts.size != 2:
                raise ValueError("a 1-d vertex set must be two distinct points")
        else:
            from scipy.spatial import ConvexHull, QhullError

            try:
                hull = ConvexHull(self.vertices)
            except QhullError as exc:
                raise ValueError(f"degenerate hull: {exc}") from exc
            if len(hull.vertices) != len(self.vertices):
                raise ValueError("vertex set is not minimal: some point is interior")
        h_from_vertices(self)  # raises unless the origin is interior
        return self


@dataclass(eq=False)
class Facet:
    """One bounding row together with the vertices tight on it."""

    index: int
    a: np.ndarray
    b: float
    vertices: np.ndarray

    @property
    def supporting(self) -> tuple[np.ndarray, float]:
        return self.a, self.b

    @property
    def normal(self) -> np.ndarray:
        """Unit outward normal of the supporting hyperplane."""
        return self.a / np.linalg.norm(self.a)


@dataclass(eq=False)
class TriangularPiece:
    """Cone over one facet, cut by that facet's supporting half-space.

    Equals ``{t x : x in facet, 0 <= t <= 1}``; the facet vertices generate
    the cone.
    """

    facet: Facet

    @property
    def index(self) -> int:
        return self.facet.index

    @property
    def generators(self) -> np.ndarray:
        return self.facet.vertices

    @property
    def halfspace(self) -> tuple[np.ndarray, float]:
        return self.facet.a, self.facet.b


def hypercube(dim: int, radius: float = 1.0) -> HPolytope:
    """Sup-norm ball ``{|x_j| <= radius}`` with rows ordered +e_1, -e_1, +e_2, ..."""
    rows = []
    for j in range(dim):
        e = np.zeros(dim)
        e[j] = 1.0
        rows.append(e)
        rows.append(-e)
    return HPolytope(dim, np.array(rows) / radius)

def cross_polytope(dim: int, radius: float = 1.0) -> HPolytope:
    """l1 ball ``{sum |x_j| <= radius}``; one row per sign pattern."""
    rows = np.array(list(itertools.product((1.0, -1.0), repeat=dim)))
    return HPolytope(dim, rows / radius)

def interval(lo: float, hi: float) -> HPolytope:
    """The 1-d polytope [lo, hi]; requires lo < 0 < hi."""
    if not lo < 0.0 < hi:
        raise ValueError("interval must contain the origin in its interior")
    return HPolytope(1, [[1.0 / hi], [1.0 / lo]])


def gauge(P: HPolytope, x) -> float | np.ndarray:
    """Minkowski gauge inf{t >= 0 : x in tP} = max(max_i a_i.x / b_i, 0).

    Accepts a single d-vector or any array of shape (..., d); positively
    homogeneous of degree one.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or x.shape[-1] != P.dim:
        raise ValueError(f"expected points with trailing dimension {P.dim}")
    vals = x @ P.A.T
    g = np.maximum(np.max(vals, axis=-1), 0.0)
    return float(g) if g.ndim == 0 else g


def contains(P: HPolytope, x, lam: float):
    """Closed-dilate membership: x in lam*P, i.e. gauge(P, x) <= lam."""
    if lam < 0.0:
        raise ValueError("dilate parameter must be nonnegative")
    return gauge(P, x) <= lam


def _duplicate_rows(A: np.ndarray, tol: float = 1e-9) -> list[tuple[int, int]]:
    dups = []
    for i, j in itertools.combinations(range(A.shape[0]), 2):
        if np.linalg.norm(A[i] - A[j]) <= tol * (1.0 + np.linalg.norm(A[i])):
            dups.append((i, j))
    return dups


def _bounded_rows(A: np.ndarray) -> bool:
    """True iff the recession cone {u : A u <= 0} is trivial (d <= 3).

    Nontrivial recession cones contain either a direction orthogonal to all
    rows or an extreme ray lying on d-1 row boundaries, so checking row
    perpendiculars (d = 2) and pairwise cross products (d = 3) is exact.
    """
    d = A.shape[1]
    if np.linalg.matrix_rank(A, tol=1e-9) < d:
        return False
    if d == 1:
        return bool(A.max() > 0.0 and A.min() < 0.0)
    if d == 2:
        cands = np.stack([-A[:, 1], A[:, 0]], axis=1)
    else:
        pairs = list(itertools.combinations(range(A.shape[0]), 2))
        cands = np.array([np.cross(A[i], A[j]) for i, j in pairs])
    for u in np.concatenate([cands, -cands]):
        nu = np.linalg.norm(u)
        if nu < 1e-12:
            continue
        if np.max(A @ (u / nu)) <= 1e-9:
            return False
    return True


def _dedup_points(pts: np.ndarray) -> np.ndarray:
    order = np.lexsort(pts.T[::-1])
    pts = pts[order]
    kept: list[np.ndarray] = []
    for p in pts:
        tol = DEDUP_TOL * (1.0 + np.linalg.norm(p))
        if all(np.linalg.norm(p - q) > tol for q in kept):
            kept.append(p)
    return np.array(kept)


def vertices_from_h(P: HPolytope) -> VPolytope:
    """Enumerate vertices as feasible intersections of d tight rows (d <= 3).

    Raises ``ValueError`` on unbounded or lower-dimensional input.
    """
    if P.dim not in _ENUM_DIMS:
        raise ValueError("vertex enumeration supports d in {1, 2, 3}")
    if not _bounded_rows(P.A):
        raise ValueError("unbounded: row normals do not positively span R^d")
    found = []
    for rows in itertools.combinations(range(P.m), P.dim):
        M = P.A[list(rows)]
        scale = np.prod(np.linalg.norm(M, axis=1))
        if abs(np.linalg.det(M)) <= 1e-12 * max(scale, 1e-30):
            continue
        v = np.linalg.solve(M, P.b[list(rows)])
        if np.all(P.A @ v <= P.b + GEO_TOL):
            found.append(v)
    if not found:
        raise ValueError("degenerate input: no vertices found")
    verts = _dedup_points(np.array(found))
    if verts.shape[0] < P.dim + 1:
        raise ValueError("degenerate input: fewer than d+1 vertices")
    return VPolytope(P.dim, verts)


def h_from_vertices(Q: VPolytope) -> HPolytope:
    """Irredundant half-space form of a vertex set, rows normalized to b = 1.

    Requires the origin interior to the hull; round-trips with
    :func:`vertices_from_h` up to row and vertex order.
    """
    if Q.dim not in _ENUM_DIMS:
        raise ValueError("hull conversion supports d in {1, 2, 3}")
    pts = Q.vertices
    if Q.dim == 1:
        lo, hi = float(pts.min()), float(pts.max())
        if not lo < 0.0 < hi:
            raise ValueError("origin not interior")
        return HPolytope(1, [[1.0 / hi], [1.0 / lo]])

    from scipy.spatial import ConvexHull, QhullError

    try:
        hull = ConvexHull(pts)
    except QhullError as exc:
        raise ValueError(f"degenerate hull: {exc}") from exc
    normals = hull.equations[:, :-1]
    offsets = -hull.equations[:, -1]
    if np.any(offsets <= GEO_TOL):
        raise ValueError("origin not interior to the hull")
    A = normals / offsets[:, None]
    # qhull may split a non-simplicial facet into coplanar pieces; after the
    # b = 1 scaling those produce identical rows, so merge them.
    order = np.lexsort(A.T[::-1])
    kept: list[np.ndarray] = []
    for row in A[order]:
        tol = 1e-9 * (1.0 + np.linalg.norm(row))
        if all(np.linalg.norm(row - other) > tol for other in kept):
            kept.append(row)
    return HPolytope(Q.dim, np.array(kept))


def facets(P: HPolytope, Q: VPolytope) -> list[Facet]:
    """One facet per H-row: the row plus the vertices of Q tight on it.

    ``P`` and ``Q`` must describe the same polytope; rows supported by fewer
    than d vertices (redundant rows) and vertices violating a row raise
    ``ValueError``.
    """
    if P.dim != Q.dim:
        raise ValueError("dimension mismatch")
    V = Q.vertices
    vals = V @ P.A.T
    if np.any(vals > P.b + GEO_TOL):
        raise ValueError("inconsistent representations: a vertex violates a row")
    out = []
    for i in range(P.m):
        tight = V[np.abs(vals[:, i] - P.b[i]) <= GEO_TOL]
        if tight.shape[0] < P.dim:
            raise ValueError(
                f"row {i} supports fewer than d vertices; redundant or inconsistent"
            )
        if P.dim >= 2:
            rank = np.linalg.matrix_rank(tight - tight[0], tol=1e-8)
            if rank != P.dim - 1:
                raise ValueError(f"facet {i} does not span a (d-1)-dimensional set")
        a = P.A[i].copy()
        a.setflags(write=False)
        out.append(Facet(index=i, a=a, b=float(P.b[i]), vertices=tight))
    return out


def triangulate(P: HPolytope) -> list[TriangularPiece]:
    """Fan triangulation: one cone-over-facet piece per H-row.

    The pieces cover P, have pairwise disjoint interiors, and each equals the
    facet's cone intersected with its supporting half-space.
    """
    Q = vertices_from_h(P)
    return [TriangularPiece(f) for f in facets(P, Q)]


def assign_rows(P: HPolytope, x) -> int | np.ndarray:
    """Index of the first row attaining max_i a_i.x (vectorized piece label)."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != P.dim:
        raise ValueError(f"expected points with trailing dimension {P.dim}")
    idx = np.argmax(x @ P.A.T, axis=-1)
    return int(idx) if idx.ndim == 0 else idx


def piece_assign(pieces: list[TriangularPiece], P: HPolytope, x) -> int:
    """Deterministic piece label for x: lowest row index attaining the gauge.

    Total on all inputs; the zero vector goes to piece 0.  Together with the
    closed pieces this turns the fan into an exact partition rule for any
    finite point set (shared boundaries go to the lowest index).
    """
    if len(pieces) != P.m:
        raise ValueError("pieces do not match the polytope rows")
    return int(assign_rows(P, x))


def piece_contains(piece: TriangularPiece, P: HPolytope, x, tol: float = GEO_TOL):
    """Closed membership in the piece: its row attains the gauge and a.x <= b."""
    x = np.asarray(x, dtype=float)
    vals = x @ P.A.T
    g = np.maximum(np.max(vals, axis=-1), 0.0)
    row = x @ piece.facet.a
    return (row >= g - tol) & (row <= piece.facet.b + tol)


def rotation_to_e1(facet) -> np.ndarray:
    """Orthogonal matrix with determinant +1 sending the facet normal to e_1.

    Built from a Householder reflection composed with a coordinate-flip
    reflection that restores orientation.  Accepts a :class:`Facet` or a raw
    normal vector; raises on zero normals and on the 1-d mirror case, which no
    orientation-preserving map covers.
    """
    a = np.asarray(facet.a if isinstance(facet, Facet) else facet, dtype=float).reshape(-1)
    nrm = np.linalg.norm(a)
    if nrm < 1e-14:
        raise ValueError("zero normal")
    n = a / nrm
    d = n.shape[0]
    if d == 1:
        if n[0] > 0:
            return np.eye(1)
        raise ValueError("no determinant +1 rotation reverses a 1-d normal")
    e1 = np.zeros(d)
    e1[0] = 1.0
    if n[0] >= 0.0:
        # reflect n onto -e1 (no cancellation in w), then flip the first axis
        w = n + e1
        flip = 0
    else:
        w = n - e1
        flip = d - 1
    H = np.eye(d) - 2.0 * np.outer(w, w) / (w @ w)
    R = H.copy()
    R[flip, :] *= -1.0
    assert np.linalg.norm(R @ n - e1) < 1e-12
    return R


def _orthonormal_basis_of_plane(normal: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = normal / np.linalg.norm(normal)
    k = int(np.argmin(np.abs(n)))
    u = np.zeros(3)
    u[k] = 1.0
    u = u - (u @ n) * n
    u /= np.linalg.norm(u)
    return u, np.cross(n, u)


def cone_halfspaces(piece: TriangularPiece) -> np.ndarray:
    """Homogeneous rows a with a.x <= 0 cutting out the piece's cone (d <= 3).

    The generators must span the ambient space together with the origin, i.e.
    the cone is full-dimensional; degenerate cones raise ``ValueError``.
    Returned rows are unit-normalized, one per boundary ray (d = 2) or per
    facet-polygon edge (d = 3).
    """
    V = piece.generators
    d = V.shape[1]
    if d not in _ENUM_DIMS:
        raise ValueError("cone conversion supports d in {1, 2, 3}")
    if np.linalg.matrix_rank(V, tol=1e-9) < d:
        raise ValueError("degenerate cone: generators do not span the space")
    if d == 1:
        g = V[0, 0]
        return np.array([[-1.0]]) if g > 0 else np.array([[1.0]])
    if d == 2:
        t = np.array([-piece.facet.a[1], piece.facet.a[0]])
        proj = V @ t
        lo, hi = V[np.argmin(proj)], V[np.argmax(proj)]
        rows = []
        for v, other in ((lo, hi), (hi, lo)):
            u = np.array([-v[1], v[0]])
            s = u @ other
            if abs(s) <= 1e-12 * (np.linalg.norm(u) * np.linalg.norm(other)):
                raise ValueError("degenerate cone: parallel generators")
            if s > 0:
                u = -u
            rows.append(u / np.linalg.norm(u))
        return np.array(rows)
    # d == 3: one row per edge of the facet polygon, ordered around its centroid
    u, w = _orthonormal_basis_of_plane(piece.facet.a)
    c = V.mean(axis=0)
    ang = np.arctan2((V - c) @ w, (V - c) @ u)
    ordered = V[np.argsort(ang)]
    rows = []
    for p, q in zip(ordered, np.roll(ordered, -1, axis=0)):
        r = np.cross(p, q)
        nr = np.linalg.norm(r)
        if nr <= 1e-12 * (np.linalg.norm(p) * np.linalg.norm(q)):
            raise ValueError("degenerate cone edge")
        r /= nr
        if r @ c > 0:
            r = -r
        if abs(r @ c) <= 1e-12:
            raise ValueError("degenerate cone: centroid on an edge plane")
        if np.any(ordered @ r > 1e-9):
            raise ValueError("facet polygon is not convex around its centroid")
        rows.append(r)
    return np.array(rows)
