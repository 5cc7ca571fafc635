"""Seeded verification suites and the empirical variation-ratio experiments.

``run_verify`` executes every module's invariant suite on seeded random
instances and reports one pass/fail row per check.  ``run_ratio_experiment``
sweeps random coefficient ensembles over a bandwidth ladder and tabulates the
ratio of the r-variation field's L^p norm to the function's; the design of
that experiment (ensemble law, ladder) is illustrative, there is no external
table to reproduce.  ``run_convergence`` tracks the sup-norm error of partial
sums of a smooth-coefficient polynomial along its breakpoints.
"""

from __future__ import annotations

import itertools
import json
import zlib
from dataclasses import dataclass, asdict, field

import numpy as np

from . import fileio
from .geometry import (
    HPolytope,
    cone_halfspaces,
    contains,
    gauge,
    hypercube,
    cross_polytope,
    piece_assign,
    piece_contains,
    rotation_to_e1,
    triangulate,
    vertices_from_h,
    h_from_vertices,
)
from .generators import random_piece_points, random_polytope, random_trig_polynomial
from .spectral import (
    TrigPolynomial,
    breakpoints,
    cone_multiplier,
    family_at_point,
    family_values_on_grid,
    freeze,
    frozen_partial_sum,
    frozen_threshold,
    grid_points,
    halfspace_multiplier,
    partial_sum,
    partial_sum_by_pieces,
    sample_grid,
)
from .variation import (
    ExperimentConfig,
    GridSamples,
    distribution_function,
    fubini_slice_check,
    lorentz_p1_norm,
    lp_norm,
    sup_family,
    v_r_bruteforce,
    v_r_exact,
    v_r_field,
    weak_lp_norm,
)

__all__ = [
    "CheckResult",
    "RatioRow",
    "RatioReport",
    "run_verify",
    "run_ratio_experiment",
    "run_convergence",
    "smooth_polynomial",
    "default_resolution",
]


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str


@dataclass
class RatioRow:
    member: int
    bandwidth: int
    r: float
    p: float
    f_lp: float
    vr_lp: float
    ratio: float
    vr_weak: float
    f_lorentz: float


@dataclass
class RatioReport:
    rows: list[RatioRow]
    medians: dict[int, float]
    maxima: dict[int, float]
    config: dict = field(default_factory=dict)


def default_resolution(bandwidth: int) -> int:
    """Alias-free grid size 2B+1, bumped to odd if a custom size is even."""
    m = 2 * bandwidth + 1
    return m if m % 2 == 1 else m + 1


def _config_comments(config: dict) -> list[str]:
    return [
        "config " + json.dumps(config, sort_keys=True),
        "illustrative desk-scale run; quantities defined by the library, "
        "not reproduced from an external table",
    ]


# ---------------------------------------------------------------------------
# verify


def _box_samples(rng, dim: int, count: int, half_width: float = 1.5) -> np.ndarray:
    return rng.uniform(-half_width, half_width, size=(count, dim))


def _label_seed(label: str) -> int:
    # stable across processes, unlike hash()
    return zlib.crc32(label.encode()) & 0xFFFF


def _geometry_checks(results: list[CheckResult], P: HPolytope, label: str, rng) -> None:
    suite = "geometry"
    X = _box_samples(rng, P.dim, 2000)
    g = gauge(P, X)

    t = rng.uniform(0.0, 50.0, size=X.shape[0])
    hom = np.abs(gauge(P, t[:, None] * X) - t * g) / (1.0 + t * g)
    results.append(CheckResult(suite, f"gauge_homogeneity[{label}]",
                               bool(np.max(hom) <= 1e-12), f"max={np.max(hom):.3e}"))

    ok = True
    for xi in X[:50]:
        gi = gauge(P, xi)
        for li in (0.5 * gi, gi, 1.5 * gi):  # includes the boundary dilate
            member = bool(contains(P, xi, li))
            if member != (gi <= li):
                ok = False
    results.append(CheckResult(suite, f"sublevel_identity[{label}]", ok, ""))

    Q = vertices_from_h(P)
    P2 = h_from_vertices(Q)
    g2 = gauge(P2, X)
    rt = np.max(np.abs(g - g2) / (1.0 + g))
    results.append(CheckResult(suite, f"roundtrip[{label}]",
                               bool(rt <= 1e-9), f"max={rt:.3e}"))

    pieces = triangulate(P)
    inside = X / np.maximum(g, 1e-12)[:, None] * rng.random(X.shape[0])[:, None]
    member = np.stack([piece_contains(pc, P, inside) for pc in pieces], axis=0)
    counts = member.sum(axis=0)
    results.append(CheckResult(suite, f"cover[{label}]",
                               bool(np.all(counts >= 1)), f"min_count={counts.min()}"))

    vals = inside @ P.A.T
    srt = np.sort(vals, axis=1)
    unique_arg = srt[:, -1] - srt[:, -2] > 1e-7
    results.append(CheckResult(
        suite, f"disjoint[{label}]",
        bool(np.all(counts[unique_arg] == 1)),
        f"points={int(unique_arg.sum())}",
    ))

    worst = 0.0
    for k, pc in enumerate(pieces):
        pts = random_piece_points(pc, 400, seed=_label_seed(label) + k)
        worst = max(worst, float(np.max(gauge(P, pts)) - 1.0))
    results.append(CheckResult(suite, f"piece_bounded[{label}]",
                               bool(worst <= 1e-9), f"max_excess={worst:.3e}"))

    assigned = np.array([piece_assign(pieces, P, x) for x in inside[:300]])
    ok = all(
        bool(piece_contains(pieces[a], P, x)) for a, x in zip(assigned, inside[:300])
    )
    results.append(CheckResult(suite, f"assign_in_piece[{label}]", ok, ""))

    rot_err = 0.0
    for pc in pieces:
        R = rotation_to_e1(pc.facet)
        n = pc.facet.normal
        e1 = np.zeros(P.dim)
        e1[0] = 1.0
        rot_err = max(
            rot_err,
            float(np.linalg.norm(R.T @ R - np.eye(P.dim))),
            float(np.linalg.norm(R @ n - e1)),
            abs(float(np.linalg.det(R)) - 1.0),
        )
        P_rot = HPolytope(P.dim, P.A @ R.T)
        sample = X[:200]
        rot_err = max(rot_err, float(np.max(np.abs(
            gauge(P, sample) - gauge(P_rot, sample @ R.T)))))
    results.append(CheckResult(suite, f"rotation[{label}]",
                               bool(rot_err <= 1e-9), f"max={rot_err:.3e}"))

    ok = True
    for k, pc in enumerate(pieces):
        rows = cone_halfspaces(pc)
        own = random_piece_points(pc, 200, seed=_label_seed(label) + 31 * k)
        if np.max(own @ rows.T) > 1e-9:
            ok = False
        gap = srt[:, -1] - srt[:, -2] > 1e-6
        foreign = inside[gap & (np.argmax(vals, axis=1) != pc.index)]
        if foreign.shape[0] and np.any(np.max(foreign @ rows.T, axis=1) <= 0.0):
            ok = False
    results.append(CheckResult(suite, f"cone_rows_agree[{label}]", ok, ""))


def _spectral_checks(results: list[CheckResult], P: HPolytope, label: str, seed: int) -> None:
    suite = "spectral"
    rng = np.random.default_rng(seed)
    f = random_trig_polynomial(P.dim, 6 if P.dim <= 2 else 3, 0.6, seed)
    pieces = triangulate(P)
    bps = breakpoints(f, P)
    X = rng.random(size=(20, P.dim))

    worst = 0.0
    for left, right in zip(bps[:-1], bps[1:]):
        mid = 0.5 * (left + right)
        worst = max(worst, float(np.max(np.abs(
            partial_sum(f, P, mid, X) - partial_sum(f, P, left, X)))))
    results.append(CheckResult(suite, f"step_constancy[{label}]",
                               bool(worst <= 1e-14), f"max={worst:.3e}"))

    sat = float(np.max(np.abs(partial_sum(f, P, float(bps[-1]), X) - f.evaluate(X))))
    results.append(CheckResult(suite, f"saturation[{label}]",
                               bool(sat <= 1e-12), f"max={sat:.3e}"))

    worst = 0.0
    for lam in bps:
        worst = max(worst, float(np.max(np.abs(
            partial_sum_by_pieces(f, P, pieces, float(lam), X)
            - partial_sum(f, P, float(lam), X)))))
    results.append(CheckResult(suite, f"piecewise_equals_direct[{label}]",
                               bool(worst <= 1e-12), f"max={worst:.3e}"))

    total = TrigPolynomial.zero(f.dim)
    for pc in pieces:
        total = total + cone_multiplier(f, pc, P, pieces)
    diff = dict(total)
    worst = 0.0
    for n, c in f:
        worst = max(worst, abs(diff.pop(n, 0.0j) - c))
    worst = max([worst] + [abs(c) for c in diff.values()])
    results.append(CheckResult(suite, f"multiplier_partition[{label}]",
                               bool(worst <= 1e-15), f"max={worst:.3e}"))

    g2 = random_trig_polynomial(P.dim, 6 if P.dim <= 2 else 3, 0.6, seed + 1)
    alpha, beta = 1.5 - 0.5j, -0.75 + 0.25j
    lam = float(bps[len(bps) // 2])
    lin = np.max(np.abs(
        partial_sum(alpha * f + beta * g2, P, lam, X)
        - alpha * partial_sum(f, P, lam, X) - beta * partial_sum(g2, P, lam, X)))
    results.append(CheckResult(suite, f"linearity[{label}]",
                               bool(lin <= 1e-12), f"max={float(lin):.3e}"))

    M = default_resolution(f.bandwidth)
    samples = sample_grid(f, M)
    pars = abs(float(np.mean(np.abs(samples.flat) ** 2)) - float(np.sum(np.abs(f.coeffs) ** 2)))
    results.append(CheckResult(suite, f"parseval[{label}]",
                               bool(pars <= 1e-10), f"err={pars:.3e}"))


def _freezing_check(results: list[CheckResult], seed: int) -> None:
    P = hypercube(2)
    f = random_trig_polynomial(2, 6, 0.7, seed)
    pieces = triangulate(P)
    bps = breakpoints(f, P)
    M = 13
    pts = grid_points(2, M)
    worst = 0.0
    for pc in pieces:
        if np.linalg.norm(pc.facet.a[1:]) > 1e-12:
            continue  # freezing is defined only for facet normals +-e_1
        restricted = cone_multiplier(f, pc, P, pieces)
        for xp in np.unique(pts[:, 1]):
            g = freeze(f, P, pc, [xp])
            for lam in bps:
                mu = frozen_threshold(pc, float(lam))
                for x1 in np.unique(pts[:, 0]):
                    direct = partial_sum(restricted, P, float(lam), np.array([x1, xp]))
                    frozen = frozen_partial_sum(g, mu, x1)
                    worst = max(worst, abs(direct - frozen))
    results.append(CheckResult("spectral", "freezing_identity[square]",
                               bool(worst <= 1e-12), f"max={worst:.3e}"))


def _halfspace_boundary_check(results: list[CheckResult], seed: int) -> None:
    # composition of closed half-space cutoffs = closed-cone cutoff, which can
    # exceed the assigned (tie-broken) cone cutoff only on shared boundaries
    P = hypercube(2)
    pieces = triangulate(P)
    f = random_trig_polynomial(2, 4, 1.0, seed)
    ok = True
    for pc in pieces:
        rows = cone_halfspaces(pc)
        composed = f
        for a in rows:
            composed = halfspace_multiplier(composed, a, 0.0)
        assigned = cone_multiplier(f, pc, P, pieces)
        comp = composed.coeff_dict()
        assg = assigned.coeff_dict()
        for n, c in assg.items():
            if abs(comp.get(n, 0.0j) - c) > 0.0:
                ok = False
        for n in set(comp) - set(assg):
            vals = np.asarray(n, dtype=float) @ P.A.T
            ties = np.sum(np.abs(vals - vals.max()) <= 1e-12)
            if ties < 2 or np.argmax(vals) >= pc.index:
                ok = False
    results.append(CheckResult("spectral", "halfspace_cone_boundary", ok, ""))


def _variation_checks(results: list[CheckResult], seed: int) -> None:
    suite = "variation"
    rng = np.random.default_rng(seed)

    worst = 0.0
    for _ in range(60):
        L = rng.integers(2, 11)
        v = rng.normal(size=L) + 1j * rng.normal(size=L)
        for r in (1.0, 2.0, 3.0):
            worst = max(worst, abs(v_r_exact(v, r) - v_r_bruteforce(v, r)))
    results.append(CheckResult(suite, "dp_equals_bruteforce",
                               bool(worst <= 1e-12), f"max={worst:.3e}"))

    mono_ok, scale_ok, sup_ok, concat_ok = True, True, True, True
    for _ in range(40):
        L = int(rng.integers(2, 14))
        v = rng.normal(size=L) + 1j * rng.normal(size=L)
        ladder = [v_r_exact(v, r) for r in (1.0, 2.0, 2.5, 3.0, 4.0)]
        if any(b > a + 1e-12 for a, b in zip(ladder, ladder[1:])):
            mono_ok = False
        c = complex(rng.normal(), rng.normal())
        if abs(v_r_exact(c * v, 3.0) - abs(c) * v_r_exact(v, 3.0)) > 1e-12 * (1 + abs(c)):
            scale_ok = False
        if sup_family(v) > abs(v[0]) + v_r_exact(v, 3.0) + 1e-12:
            sup_ok = False
        cut = int(rng.integers(1, L))
        whole = v_r_exact(v, 3.0)
        if whole + 1e-12 < max(v_r_exact(v[: cut + 1], 3.0), v_r_exact(v[cut:], 3.0)):
            concat_ok = False
    results.append(CheckResult(suite, "r_monotonicity", mono_ok, ""))
    results.append(CheckResult(suite, "scaling", scale_ok, ""))
    results.append(CheckResult(suite, "maximal_control", sup_ok, ""))
    results.append(CheckResult(suite, "concatenation", concat_ok, ""))

    h = GridSamples(2, 9, rng.exponential(size=(9, 9)))
    weak_ok = all(
        weak_lp_norm(h, p) <= lp_norm(h, p) + 1e-12 for p in (1.0, 1.5, 2.0, 3.0)
    )
    results.append(CheckResult(suite, "weak_le_strong", weak_ok, ""))

    fub = max(
        abs(a - b)
        for a, b in (fubini_slice_check(h, al) for al in (0.0, 0.3, 1.0, 2.5))
    )
    results.append(CheckResult(suite, "fubini_slices",
                               bool(fub <= 1e-14), f"max={fub:.3e}"))

    P = hypercube(2)
    f = random_trig_polynomial(2, 3, 0.8, seed + 7)
    M = default_resolution(3)
    field = v_r_field(f, P, M, 3.0)
    pts = grid_points(2, M)
    worst = 0.0
    for k in range(0, pts.shape[0], 7):
        fam = family_at_point(f, P, pts[k])
        worst = max(worst, abs(field.flat[k] - v_r_exact(fam.values, 3.0)))
    results.append(CheckResult(suite, "field_vs_pointwise",
                               bool(worst <= 1e-12), f"max={worst:.3e}"))

    dist_ok = True
    for al in (0.0, 0.5, 1.0):
        d1 = distribution_function(field, al)
        if not 0.0 <= d1 <= 1.0:
            dist_ok = False
    results.append(CheckResult(suite, "distribution_range", dist_ok, ""))


def run_verify(seed: int = 42, out=None, polytope_file=None) -> tuple[int, list[CheckResult]]:
    """Run every invariant suite on seeded instances; 0 exit iff all pass.

    When a polytope file is given it is loaded first (so a corrupt file fails
    before any output is written) and joins the instance list.
    """
    instances: list[tuple[str, HPolytope]] = []
    if polytope_file is not None:
        instances.append(("file", fileio.load_polytope(polytope_file)))
    instances += [
        ("square", hypercube(2)),
        ("cross2", cross_polytope(2)),
        ("cube3", hypercube(3)),
        ("rand2a", random_polytope(2, 6, seed)),
        ("rand2b", random_polytope(2, 8, seed + 1)),
        ("rand3", random_polytope(3, 5, seed + 2)),
    ]

    results: list[CheckResult] = []
    rng = np.random.default_rng(seed + 1000)
    for label, P in instances:
        _geometry_checks(results, P, label, rng)
    for label, P in instances[:2] + instances[-2:]:
        _spectral_checks(results, P, label, seed + 17)
    _freezing_check(results, seed + 23)
    _halfspace_boundary_check(results, seed + 29)
    _variation_checks(results, seed + 31)

    status = 0 if all(r.passed for r in results) else 1
    if out is not None:
        config = {"seed": seed, "polytope_file": str(polytope_file) if polytope_file else None}
        fileio.write_csv(
            out,
            _config_comments(config),
            ["suite", "check", "passed", "detail"],
            ([r.suite, r.name, r.passed, r.detail] for r in results),
        )
    return status, results


# ---------------------------------------------------------------------------
# ratio experiment


def run_ratio_experiment(
    bandwidths=(4, 8, 16),
    r: float = 3.0,
    p: float = 2.0,
    dim: int = 2,
    ensemble: int = 32,
    density: float = 1.0,
    seed: int = 42,
    polytope: HPolytope | None = None,
    out=None,
) -> RatioReport:
    """Tabulate ||V_r(S_lam f)||_p / ||f||_p over a random ensemble per bandwidth.

    Requires r > 2 and p >= r' = r/(r-1).  Headline statistics are the
    per-bandwidth medians, reported alongside maxima so a single outlier draw
    cannot dominate the table.
    """
    rows: list[RatioRow] = []
    config = {
        "bandwidths": list(bandwidths),
        "r": r,
        "p": p,
        "dim": dim,
        "ensemble": ensemble,
        "density": density,
        "seed": seed,
        "polytope": "custom" if polytope is not None else "hypercube",
    }
    for B in bandwidths:
        M = default_resolution(B)
        ExperimentConfig(r=r, p=p, bandwidth=B, resolution=M, ensemble=ensemble, seed=seed)
        P = polytope if polytope is not None else hypercube(dim)
        for member in range(ensemble):
            child = np.random.SeedSequence((seed, B, member))
            f = random_trig_polynomial(dim, B, density, child)
            fs = sample_grid(f, M).abs()
            f_lp = lp_norm(fs, p)
            field = v_r_field(f, P, M, r)
            vr_lp = lp_norm(field, p)
            ratio = vr_lp / f_lp if f_lp > 0.0 else 0.0
            rows.append(
                RatioRow(
                    member=member,
                    bandwidth=B,
                    r=r,
                    p=p,
                    f_lp=f_lp,
                    vr_lp=vr_lp,
                    ratio=ratio,
                    vr_weak=weak_lp_norm(field, p),
                    f_lorentz=lorentz_p1_norm(fs, p),
                )
            )
    medians = {
        B: float(np.median([row.ratio for row in rows if row.bandwidth == B]))
        for B in bandwidths
    }
    maxima = {
        B: float(np.max([row.ratio for row in rows if row.bandwidth == B]))
        for B in bandwidths
    }
    report = RatioReport(rows=rows, medians=medians, maxima=maxima, config=config)
    if out is not None:
        comments = _config_comments(config)
        comments += [
            f"median_ratio B={B}: {fileio.format_number(medians[B])}" for B in bandwidths
        ]
        comments += [
            f"max_ratio B={B}: {fileio.format_number(maxima[B])}" for B in bandwidths
        ]
        fileio.write_csv(
            out,
            comments,
            ["member", "bandwidth", "r", "p", "f_lp", "vr_lp", "ratio", "vr_weak", "f_lorentz"],
            (list(asdict(row).values()) for row in rows),
        )
    return report


# ---------------------------------------------------------------------------
# convergence


def smooth_polynomial(dim: int, bandwidth: int) -> TrigPolynomial:
    """Coefficients (1 + |n|^2)^{-2} on the box |n_j| <= B; real and rapidly decaying."""
    freqs = np.array(
        list(itertools.product(range(-bandwidth, bandwidth + 1), repeat=dim)),
        dtype=np.int64,
    )
    coeffs = (1.0 + np.sum(freqs.astype(float) ** 2, axis=1)) ** -2.0
    return TrigPolynomial(dim, freqs, coeffs.astype(complex))


def run_convergence(
    bandwidth: int = 8,
    dim: int = 2,
    polytope: HPolytope | None = None,
    resolution: int | None = None,
    out=None,
) -> list[tuple]:
    """Sup-norm error of partial sums along the breakpoint ladder.

    Returns rows (k, lam, sup_err, running_min, tail_bound); the final row's
    error is exactly zero (bandlimited saturation) and every error is bounded
    by the tail coefficient sum.
    """
    P = polytope if polytope is not None else hypercube(dim)
    f = smooth_polynomial(dim, bandwidth)
    M = resolution if resolution is not None else default_resolution(bandwidth)
    bps, values = family_values_on_grid(f, P, M)
    final = values[:, -1]
    g = gauge(P, f.freqs.astype(float))
    abs_c = np.abs(f.coeffs)
    rows = []
    running = np.inf
    for k, lam in enumerate(bps):
        err = float(np.max(np.abs(values[:, k] - final)))
        running = min(running, err)
        tail = float(np.sum(abs_c[g > lam]))
        rows.append((k, float(lam), err, running, tail))
    if out is not None:
        config = {"bandwidth": bandwidth, "dim": dim, "resolution": M}
        fileio.write_csv(
            out,
            _config_comments(config),
            ["k", "lam", "sup_err", "running_min", "tail_bound"],
            rows,
        )
    return rows
