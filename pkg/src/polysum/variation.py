"""Exact r-variation of step families, maximal functions, and grid norms.

A one-parameter family of partial sums at a fixed point is a right-continuous
step function of the cutoff parameter, so its r-variation over the whole
half-line equals the r-variation of the finite value sequence at the jump
points; :func:`v_r_exact` computes that by dynamic programming and
:func:`v_r_bruteforce` by exhaustive enumeration.  Norms and distribution
functions use the uniform probability measure on the sampling grid, with no
interpolation, so identities like the Fubini slice reordering hold exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "StepFunction",
    "GridSamples",
    "ExperimentConfig",
    "v_r_exact",
    "v_r_bruteforce",
    "sup_family",
    "distribution_function",
    "weak_lp_norm",
    "lorentz_p1_norm",
    "lp_norm",
    "fubini_slice_check",
    "v_r_field",
]

BRUTE_FORCE_CAP = 16


@dataclass(eq=False)
class StepFunction:
    """Right-continuous step function on [0, inf).

    ``values[k]`` is the value on ``[breakpoints[k-1], breakpoints[k])``, with
    ``values[0]`` holding left of the first breakpoint, so there is always one
    more value than breakpoints.
    """

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        bp = np.asarray(self.breakpoints, dtype=float).reshape(-1)
        vals = np.asarray(self.values, dtype=complex).reshape(-1)
        if vals.shape[0] != bp.shape[0] + 1:
            raise ValueError("need exactly one more value than breakpoints")
        if bp.size and np.any(np.diff(bp) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        self.breakpoints = bp
        self.values = vals
        self.breakpoints.setflags(write=False)
        self.values.setflags(write=False)

    def value_at(self, lam: float) -> complex:
        idx = int(np.searchsorted(self.breakpoints, lam, side="right"))
        return complex(self.values[idx])


@dataclass(eq=False)
class GridSamples:
    """Function samples on the uniform grid (j_1/M, ..., j_d/M) of the torus.

    Carries the uniform probability measure: each of the M^d cells has volume
    M^{-d}, so cell volume times cell count is one.
    """

    dim: int
    resolution: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.dtype.kind not in "cfiu":
            raise ValueError("grid values must be numeric")
        expected = (self.resolution,) * self.dim
        if vals.shape != expected:
            vals = vals.reshape(expected)
        self.values = vals

    @property
    def cell_volume(self) -> float:
        return float(self.resolution) ** (-self.dim)

    @property
    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    def abs(self) -> "GridSamples":
        return GridSamples(self.dim, self.resolution, np.abs(self.values))


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters of a variation-ratio experiment and their admissibility.

    The conjugate exponent of ``r`` bounds ``p`` from below, and the grid must
    resolve the bandwidth without aliasing.
    """

    r: float
    p: float
    bandwidth: int
    resolution: int
    ensemble: int
    seed: int

    def __post_init__(self):
        if not self.r > 2.0:
            raise ValueError("variation exponent must exceed 2")
        if not np.isfinite(self.p) or self.p < self.rprime:
            raise ValueError("norm exponent must satisfy r' <= p < inf")
        if self.resolution < 2 * self.bandwidth + 1:
            raise ValueError("grid resolution below 2B+1 aliases")
        if self.ensemble < 1:
            raise ValueError("ensemble must be nonempty")

    @property
    def rprime(self) -> float:
        return self.r / (self.r - 1.0)


def v_r_exact(values, r: float) -> float:
    """r-variation of a value sequence: sup over subsequences of the l^r norm
    of consecutive differences.

    Dynamic programming on r-th powers: W(j) = max_{i<j} W(i) + |v_j - v_i|^r,
    answer (max_j W(j))^{1/r}; O(L^2).  For the step families produced by
    cutoff sweeps this equals the supremum over all real parameter sequences,
    because every difference is realized at jump points.
    """
    if r < 1.0:
        raise ValueError("variation exponent must be >= 1")
    v = np.asarray(values, dtype=complex).reshape(-1)
    L = v.shape[0]
    if L <= 1:
        return 0.0
    D = np.abs(v[None, :] - v[:, None]) ** r
    W = np.zeros(L)
    for j in range(1, L):
        W[j] = np.max(W[:j] + D[:j, j])
    return float(np.max(W) ** (1.0 / r))


def v_r_bruteforce(values, r: float) -> float:
    """Reference r-variation by exhaustive enumeration of all subsequences.

    Visits every increasing index chain once (2^L - 1 of them), so the length
    is capped at 16.
    """
    if r < 1.0:
        raise ValueError("variation exponent must be >= 1")
    v = np.asarray(values, dtype=complex).reshape(-1)
    L = v.shape[0]
    if L > BRUTE_FORCE_CAP:
        raise ValueError(f"brute force capped at length {BRUTE_FORCE_CAP}")
    if L <= 1:
        return 0.0
    D = (np.abs(v[None, :] - v[:, None]) ** r).tolist()
    best = 0.0

    def extend(i: int, acc: float):
        nonlocal best
        row = D[i]
        for j in range(i + 1, L):
            s = acc + row[j]
            if s > best:
                best = s
            extend(j, s)

    for i in range(L - 1):
        extend(i, 0.0)
    return float(best ** (1.0 / r))


def sup_family(values) -> float:
    """Largest modulus in the family: the maximal function on a step family."""
    v = np.asarray(values, dtype=complex).reshape(-1)
    if v.shape[0] == 0:
        raise ValueError("empty family")
    return float(np.max(np.abs(v)))


def _nonneg_values(h: GridSamples) -> np.ndarray:
    vals = h.values
    if vals.dtype.kind == "c":
        raise ValueError("expected nonnegative real samples (take .abs() first)")
    if np.any(vals < 0):
        raise ValueError("expected nonnegative samples")
    return vals.reshape(-1)


def distribution_function(h: GridSamples, alpha: float) -> float:
    """Measure of {h >= alpha} under the uniform grid probability measure."""
    if alpha < 0.0:
        raise ValueError("threshold must be nonnegative")
    vals = _nonneg_values(h)
    return float(np.count_nonzero(vals >= alpha)) * h.cell_volume


def _level_fractions(vals: np.ndarray, levels: np.ndarray) -> np.ndarray:
    """Fraction of samples >= each level (levels ascending)."""
    svals = np.sort(vals)
    return (vals.shape[0] - np.searchsorted(svals, levels, side="left")) / vals.shape[0]


def weak_lp_norm(h: GridSamples, p: float) -> float:
    """Weak-L^p norm sup_alpha alpha * d_h(alpha)^{1/p}.

    The distribution function is a right-continuous step function on a grid,
    so the supremum is attained at a distinct sample value.
    """
    if p < 1.0:
        raise ValueError("norm exponent must be >= 1")
    vals = _nonneg_values(h)
    levels = np.unique(vals)
    frac = _level_fractions(vals, levels)
    return float(np.max(levels * frac ** (1.0 / p), initial=0.0))


def lorentz_p1_norm(h: GridSamples, p: float) -> float:
    """Lorentz L^{p,1} norm p * integral of d_h(s)^{1/p} ds, evaluated exactly.

    The distribution function is constant between consecutive distinct sample
    values, so the integral is a finite sum.
    """
    if p < 1.0:
        raise ValueError("norm exponent must be >= 1")
    vals = _nonneg_values(h)
    levels = np.unique(vals)
    levels = levels[levels > 0.0]
    if not levels.size:
        return 0.0
    frac = _level_fractions(vals, levels)
    widths = np.diff(np.concatenate([[0.0], levels]))
    return p * float(np.sum(widths * frac ** (1.0 / p)))


def lp_norm(h: GridSamples, p: float) -> float:
    """L^p norm (cell volume * sum |h|^p)^{1/p}; accepts complex samples."""
    if p < 1.0:
        raise ValueError("norm exponent must be >= 1")
    vals = np.abs(h.flat)
    return float((h.cell_volume * np.sum(vals**p)) ** (1.0 / p))


def fubini_slice_check(h: GridSamples, alpha: float) -> tuple[float, float]:
    """Global distribution of h at alpha vs the slice average of 1-d ones.

    Slicing along the first coordinate and averaging the 1-d distribution
    functions over the remaining coordinates reorders the same finite sum, so
    the two returned numbers agree exactly.
    """
    if h.dim < 2:
        raise ValueError("slice check needs d >= 2")
    vals = _nonneg_values(h).reshape(h.resolution, -1)
    global_d = distribution_function(h, alpha)
    per_slice = np.count_nonzero(vals >= alpha, axis=0) / h.resolution
    return global_d, float(per_slice.mean())


def v_r_field(f, P, resolution: int, r: float) -> GridSamples:
    """Pointwise r-variation of the cutoff family over the full sampling grid.

    Evaluates the step family of partial sums at every grid point and applies
    :func:`v_r_exact` to each value sequence; requires resolution >= 2B+1.
    """
    from .spectral import family_values_on_grid

    _, values = family_values_on_grid(f, P, resolution)
    field = np.array([v_r_exact(row, r) for row in values])
    return GridSamples(f.dim, resolution, field.reshape((resolution,) * f.dim))
