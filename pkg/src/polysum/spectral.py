"""Trigonometric polynomials on the torus and their polytopal partial sums.

A cutoff at parameter ``lam`` keeps the frequencies whose gauge is at most
``lam`` (closed condition), so as ``lam`` sweeps the half-line the partial
sums at a fixed point form a right-continuous step function whose jumps sit
at the finitely many gauge values of the support; those values are the
breakpoints.  Everything is evaluated directly, O(#coeffs * #points), which
keeps every identity exact to rounding and doubles as the oracle for any
faster path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import HPolytope, TriangularPiece, assign_rows, gauge
from .variation import GridSamples, StepFunction

__all__ = [
    "TrigPolynomial",
    "FrozenFunction",
    "partial_sum",
    "breakpoints",
    "family_at_point",
    "family_values_on_grid",
    "partial_sum_by_pieces",
    "freeze",
    "frozen_partial_sum",
    "frozen_threshold",
    "cone_multiplier",
    "halfspace_multiplier",
    "sample_grid",
    "grid_points",
]

_TWO_PI_I = 2j * np.pi
_CHUNK_BUDGET = 4_000_000  # complex entries per evaluation chunk


def _as_points(x, dim: int) -> np.ndarray:
    """Coerce to float points of shape (..., dim); bare scalars work at dim 1."""
    x = np.asarray(x, dtype=float)
    if dim == 1 and (x.ndim == 0 or x.shape[-1] != 1):
        x = x[..., None]
    if x.shape[-1] != dim:
        raise ValueError(f"expected points with trailing dimension {dim}")
    return x


class TrigPolynomial:
    """Finitely supported Fourier coefficients on the integer lattice.

    Frequencies are stored lexicographically sorted with duplicates combined;
    evaluation at x is sum of c(n) exp(2 pi i n.x) in that fixed order, the
    single source of truth for every operator built on top.
    """

    __slots__ = ("dim", "freqs", "coeffs")

    def __init__(self, dim: int, freqs, coeffs=None):
        if dim < 1:
            raise ValueError("dimension must be a positive integer")
        if coeffs is None:
            items = freqs.items() if hasattr(freqs, "items") else list(freqs)
            fr = np.array([n for n, _ in items], dtype=np.int64).reshape(-1, dim)
            co = np.array([c for _, c in items], dtype=complex)
        else:
            fr = np.asarray(freqs, dtype=np.int64).reshape(-1, dim)
            co = np.asarray(coeffs, dtype=complex).reshape(-1)
        if fr.shape[0] != co.shape[0]:
            raise ValueError("frequency/coefficient count mismatch")
        if fr.shape[0]:
            uniq, inverse = np.unique(fr, axis=0, return_inverse=True)
            merged = np.zeros(uniq.shape[0], dtype=complex)
            np.add.at(merged, inverse.reshape(-1), co)
            fr, co = uniq, merged
        else:
            fr = fr.reshape(0, dim)
        self.dim = dim
        self.freqs = fr
        self.coeffs = co
        self.freqs.setflags(write=False)
        self.coeffs.setflags(write=False)

    @classmethod
    def zero(cls, dim: int) -> "TrigPolynomial":
        return cls(dim, np.zeros((0, dim), dtype=np.int64), np.zeros(0, dtype=complex))

    def __len__(self) -> int:
        return self.freqs.shape[0]

    def __iter__(self):
        for n, c in zip(self.freqs, self.coeffs):
            yield tuple(int(v) for v in n), complex(c)

    @property
    def bandwidth(self) -> int:
        """Smallest B with every supported |n_j| <= B (0 for empty support)."""
        return int(np.max(np.abs(self.freqs))) if len(self) else 0

    def coeff(self, n) -> complex:
        n = np.asarray(n, dtype=np.int64).reshape(-1)
        hits = np.all(self.freqs == n, axis=1)
        idx = np.nonzero(hits)[0]
        return complex(self.coeffs[idx[0]]) if idx.size else 0.0j

    def coeff_dict(self) -> dict[tuple[int, ...], complex]:
        return dict(self)

    def evaluate(self, x):
        """Evaluate at x of shape (..., dim); for dim = 1 bare scalars work too."""
        x = _as_points(x, self.dim)
        if not len(self):
            out = np.zeros(x.shape[:-1], dtype=complex)
            return complex(out) if out.ndim == 0 else out
        out = np.exp(_TWO_PI_I * (x @ self.freqs.T)) @ self.coeffs
        return complex(out) if out.ndim == 0 else out

    def __add__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        if not isinstance(other, TrigPolynomial) or other.dim != self.dim:
            return NotImplemented
        return TrigPolynomial(
            self.dim,
            np.concatenate([self.freqs, other.freqs]),
            np.concatenate([self.coeffs, other.coeffs]),
        )

    def __rmul__(self, scalar) -> "TrigPolynomial":
        return TrigPolynomial(self.dim, self.freqs, scalar * self.coeffs)

    def __repr__(self) -> str:
        return f"TrigPolynomial(dim={self.dim}, support={len(self)}, B={self.bandwidth})"


@dataclass(eq=False)
class FrozenFunction:
    """1-d coefficient function obtained by freezing the last d-1 variables.

    ``sign`` records the facet orientation: +1 when the facet normal is +e_1
    and the cutoff keeps n_1 <= mu, -1 for the mirrored facet keeping
    -n_1 <= mu.
    """

    freqs1: np.ndarray
    coeffs1: np.ndarray
    sign: int = 1

    def __post_init__(self):
        fr = np.asarray(self.freqs1, dtype=np.int64).reshape(-1)
        co = np.asarray(self.coeffs1, dtype=complex).reshape(-1)
        if fr.shape != co.shape:
            raise ValueError("frequency/coefficient count mismatch")
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        order = np.argsort(fr)
        self.freqs1 = fr[order]
        self.coeffs1 = co[order]
        self.freqs1.setflags(write=False)
        self.coeffs1.setflags(write=False)


def partial_sum(f: TrigPolynomial, P: HPolytope, lam: float, x):
    """Partial sum over frequencies in the closed dilate: gauge(P, n) <= lam.

    For lam past the largest gauge of the support this is f(x) itself.
    Accepts a single point or a batch of shape (..., d).
    """
    if f.dim != P.dim:
        raise ValueError("dimension mismatch between polynomial and polytope")
    if lam < 0.0:
        raise ValueError("cutoff parameter must be nonnegative")
    x = _as_points(x, f.dim)
    if not len(f):
        out = np.zeros(x.shape[:-1], dtype=complex)
        return complex(out) if out.ndim == 0 else out
    mask = gauge(P, f.freqs.astype(float)) <= lam
    out = np.exp(_TWO_PI_I * (x @ f.freqs[mask].T)) @ f.coeffs[mask]
    return complex(out) if out.ndim == 0 else out


def breakpoints(f: TrigPolynomial, P: HPolytope) -> np.ndarray:
    """Sorted distinct gauge values of the support, with 0 always prefixed.

    Partial sums are constant in lam on each interval between consecutive
    entries and right-continuous at each entry.
    """
    if f.dim != P.dim:
        raise ValueError("dimension mismatch between polynomial and polytope")
    if not len(f):
        return np.zeros(1)
    g = gauge(P, f.freqs.astype(float))
    return np.unique(np.concatenate([[0.0], g]))


def _shell_order(f: TrigPolynomial, P: HPolytope):
    """Frequencies sorted by (gauge, lex); returns order, sorted gauges."""
    g = gauge(P, f.freqs.astype(float))
    order = np.lexsort(tuple(f.freqs.T[::-1]) + (g,))
    return order, g[order]


def family_at_point(f: TrigPolynomial, P: HPolytope, x) -> StepFunction:
    """The full one-parameter family of partial sums at x as a step function.

    Frequencies are accumulated shell by shell in gauge order, so building the
    whole family costs one pass over the support.  The first value is the
    constant coefficient, the last is f(x).
    """
    bps = breakpoints(f, P)
    if not len(f):
        return StepFunction(bps[1:], np.zeros(1, dtype=complex))
    x = _as_points(x, f.dim)
    if x.ndim != 1:
        raise ValueError("one point at a time; use family_values_on_grid for batches")
    order, g_sorted = _shell_order(f, P)
    terms = f.coeffs[order] * np.exp(_TWO_PI_I * (x @ f.freqs[order].T))
    csum = np.cumsum(terms)
    counts = np.searchsorted(g_sorted, bps, side="right")
    values = np.where(counts > 0, csum[counts - 1], 0.0j)
    return StepFunction(bps[1:], values)


def grid_points(dim: int, resolution: int) -> np.ndarray:
    """All grid points (j_1/M, ..., j_d/M), shape (M^d, d), row-major in j."""
    idx = np.indices((resolution,) * dim).reshape(dim, -1).T
    return idx / float(resolution)


def family_values_on_grid(f: TrigPolynomial, P: HPolytope, resolution: int, at=None):
    """Family values at every breakpoint for every grid point.

    Returns (cutoffs, values) with values of shape (M^d, len(cutoffs));
    column k holds the partial sum at the k-th cutoff.  The cutoffs default
    to the breakpoints of f but any nondecreasing nonnegative array works.
    Requires an alias-free grid, resolution >= 2B+1.
    """
    if resolution < 2 * f.bandwidth + 1:
        raise ValueError("aliasing: grid resolution must be at least 2B+1")
    bps = breakpoints(f, P) if at is None else np.asarray(at, dtype=float).reshape(-1)
    pts = grid_points(f.dim, resolution)
    if not len(f):
        return bps, np.zeros((pts.shape[0], bps.shape[0]), dtype=complex)
    order, g_sorted = _shell_order(f, P)
    counts = np.searchsorted(g_sorted, bps, side="right")
    freqs = f.freqs[order]
    coeffs = f.coeffs[order]
    values = np.empty((pts.shape[0], bps.shape[0]), dtype=complex)
    chunk = max(1, _CHUNK_BUDGET // max(len(f), 1))
    for lo in range(0, pts.shape[0], chunk):
        sl = slice(lo, lo + chunk)
        terms = np.exp(_TWO_PI_I * (pts[sl] @ freqs.T)) * coeffs
        csum = np.cumsum(terms, axis=1)
        block = np.zeros((terms.shape[0], bps.shape[0]), dtype=complex)
        pos = counts > 0
        block[:, pos] = csum[:, counts[pos] - 1]
        values[sl] = block
    return bps, values


def partial_sum_by_pieces(f: TrigPolynomial, P: HPolytope, pieces, lam: float, x):
    """Partial sum computed piece by piece over the fan.

    Each supported frequency goes to exactly one piece (lowest row index
    attaining its gauge), so the per-piece sums add up to the direct partial
    sum with every frequency counted once.
    """
    if len(pieces) != P.m:
        raise ValueError("pieces do not match the polytope rows")
    if lam < 0.0:
        raise ValueError("cutoff parameter must be nonnegative")
    x = _as_points(x, f.dim)
    if not len(f):
        out = np.zeros(x.shape[:-1], dtype=complex)
        return complex(out) if out.ndim == 0 else out
    owner = assign_rows(P, f.freqs.astype(float))
    g = gauge(P, f.freqs.astype(float))
    total = np.zeros(x.shape[:-1], dtype=complex)
    for piece in pieces:
        mask = (owner == piece.index) & (g <= lam)
        if not np.any(mask):
            continue
        total = total + np.exp(_TWO_PI_I * (x @ f.freqs[mask].T)) @ f.coeffs[mask]
    return complex(total) if total.ndim == 0 else total


def _axis_alignment(piece: TriangularPiece) -> tuple[int, float]:
    """(sign, |a_1|) of an e_1-aligned facet row; raises otherwise."""
    a = piece.facet.a
    if a.shape[0] >= 2 and np.linalg.norm(a[1:]) > 1e-12 * abs(a[0]):
        raise ValueError(
            "freezing needs a facet normal of +-e_1; rotations do not preserve "
            "the integer lattice"
        )
    if abs(a[0]) < 1e-14:
        raise ValueError("zero first component in facet normal")
    return (1 if a[0] > 0 else -1), abs(float(a[0]))


def freeze(f: TrigPolynomial, P: HPolytope, piece: TriangularPiece, xprime) -> FrozenFunction:
    """Collapse the piece's frequencies onto n_1 at a fixed x'.

    The coefficient at n_1 is the sum over assigned frequencies (n_1, n') of
    c(n) exp(2 pi i x'.n').  Only facets with normal +-e_1 are supported, the
    axis-aligned case where the cone cutoff is a pure n_1 threshold on the
    lattice.
    """
    sign, _ = _axis_alignment(piece)
    xprime = np.asarray(xprime, dtype=float).reshape(-1)
    if xprime.shape[0] != f.dim - 1:
        raise ValueError("x' must have d-1 coordinates")
    if not len(f):
        return FrozenFunction(np.zeros(0, dtype=np.int64), np.zeros(0, dtype=complex), sign)
    owner = assign_rows(P, f.freqs.astype(float))
    sel = owner == piece.index
    n1 = f.freqs[sel, 0]
    nprime = f.freqs[sel, 1:]
    weights = f.coeffs[sel] * np.exp(_TWO_PI_I * (nprime @ xprime))
    uniq, inverse = np.unique(n1, return_inverse=True)
    acc = np.zeros(uniq.shape[0], dtype=complex)
    np.add.at(acc, inverse, weights)
    return FrozenFunction(uniq, acc, sign)


def frozen_threshold(piece: TriangularPiece, lam: float) -> float:
    """Cutoff mu for the frozen 1-d sum matching the dilate lam of the piece.

    An assigned frequency lies in lam*P exactly when sign * n_1 <= mu with
    mu = lam * b / |a_1|.
    """
    sign, a1 = _axis_alignment(piece)
    del sign
    return lam * piece.facet.b / a1


def frozen_partial_sum(g: FrozenFunction, mu: float, x1: float) -> complex:
    """1-d partial sum of the frozen function: sign * n_1 <= mu, closed."""
    mask = g.sign * g.freqs1 <= mu
    if not np.any(mask):
        return 0.0j
    return complex(
        (g.coeffs1[mask] * np.exp(_TWO_PI_I * g.freqs1[mask] * float(x1))).sum()
    )


def cone_multiplier(
    f: TrigPolynomial, piece: TriangularPiece, P: HPolytope, pieces=None
) -> TrigPolynomial:
    """Sharp cone cutoff: keep exactly the coefficients assigned to the piece.

    Idempotent; summing the outputs over all pieces of a fan reproduces f
    coefficient for coefficient.
    """
    if pieces is not None and len(pieces) != P.m:
        raise ValueError("pieces do not match the polytope rows")
    if not len(f):
        return TrigPolynomial.zero(f.dim)
    owner = assign_rows(P, f.freqs.astype(float))
    keep = owner == piece.index
    return TrigPolynomial(f.dim, f.freqs[keep], f.coeffs[keep])


def halfspace_multiplier(f: TrigPolynomial, a, c: float) -> TrigPolynomial:
    """Sharp half-space cutoff: keep coefficients with a.n <= c (closed).

    Composing the rows of a cone's half-space form yields the closed-cone
    cutoff, which differs from :func:`cone_multiplier` exactly on shared
    boundary frequencies, where the lowest-index tie-break governs.
    """
    a = np.asarray(a, dtype=float).reshape(-1)
    if a.shape[0] != f.dim:
        raise ValueError("normal vector has wrong dimension")
    if not len(f):
        return TrigPolynomial.zero(f.dim)
    keep = f.freqs @ a <= c
    return TrigPolynomial(f.dim, f.freqs[keep], f.coeffs[keep])


def sample_grid(f: TrigPolynomial, resolution: int) -> GridSamples:
    """Evaluate f at every grid point j/M; requires M >= 2B+1 (no aliasing)."""
    if resolution < 2 * f.bandwidth + 1:
        raise ValueError("aliasing: grid resolution must be at least 2B+1")
    pts = grid_points(f.dim, resolution)
    vals = np.empty(pts.shape[0], dtype=complex)
    chunk = max(1, _CHUNK_BUDGET // max(len(f), 1))
    for lo in range(0, pts.shape[0], chunk):
        sl = slice(lo, lo + chunk)
        vals[sl] = f.evaluate(pts[sl])
    return GridSamples(f.dim, resolution, vals.reshape((resolution,) * f.dim))
