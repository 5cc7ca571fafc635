"""On-disk formats: JSON polytopes and coefficient tables, deterministic CSV.

Polytope files carry either half-space data {"dim": d, "H": {"A": ..., "b": ...}}
or vertex data {"dim": d, "V": {"vertices": ...}}; rows need not be normalized
on input.  Coefficient files are {"dim": d, "coeffs": [{"n": [...], "re": r,
"im": i}, ...]}.  CSV output uses '#'-prefixed comment lines for the resolved
configuration and shortest round-trip float formatting, so a fixed seed yields
byte-identical files.
"""

from __future__ import annotations

import json
from typing import Iterable

import numpy as np

from .geometry import HPolytope, VPolytope, TriangularPiece, h_from_vertices, cone_halfspaces
from .spectral import TrigPolynomial
from .variation import GridSamples

__all__ = [
    "load_polytope",
    "save_polytope",
    "load_coefficients",
    "save_coefficients",
    "pieces_as_dict",
    "write_csv",
    "write_grid_csv",
    "write_field_csv",
    "write_norm_summary_csv",
    "format_number",
]


def load_polytope(path) -> HPolytope:
    """Read a polytope file; vertex data is converted to half-space form."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        dim = int(data["dim"])
        if "H" in data:
            return HPolytope(dim, np.array(data["H"]["A"], dtype=float),
                             np.array(data["H"]["b"], dtype=float))
        if "V" in data:
            return h_from_vertices(VPolytope(dim, np.array(data["V"]["vertices"], dtype=float)))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed polytope file {path}: {exc}") from exc
    raise ValueError(f"polytope file {path} has neither 'H' nor 'V' data")


def save_polytope(P: HPolytope, path) -> None:
    data = {"dim": P.dim, "H": {"A": P.A.tolist(), "b": P.b.tolist()}}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")


def load_coefficients(path) -> TrigPolynomial:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        dim = int(data["dim"])
        entries = data["coeffs"]
        freqs = np.array([e["n"] for e in entries], dtype=np.int64).reshape(-1, dim)
        coeffs = np.array(
            [complex(float(e.get("re", 0.0)), float(e.get("im", 0.0))) for e in entries]
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed coefficient file {path}: {exc}") from exc
    return TrigPolynomial(dim, freqs, coeffs)


def save_coefficients(f: TrigPolynomial, path) -> None:
    entries = [
        {"n": [int(v) for v in n], "re": float(c.real), "im": float(c.imag)}
        for n, c in f
    ]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"dim": f.dim, "coeffs": entries}, fh, indent=1)
        fh.write("\n")


def pieces_as_dict(P: HPolytope, pieces: list[TriangularPiece]) -> dict:
    """JSON-ready description of a fan: facets, generators, cone rows."""
    out = []
    for piece in pieces:
        out.append(
            {
                "facet_index": piece.index,
                "a": piece.facet.a.tolist(),
                "b": piece.facet.b,
                "generators": piece.generators.tolist(),
                "cone_rows": cone_halfspaces(piece).tolist(),
            }
        )
    return {"dim": P.dim, "pieces": out}


def format_number(v) -> str:
    """Shortest round-trip decimal for floats, plain digits for ints."""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def write_csv(path, comments: Iterable[str], header: list[str], rows: Iterable) -> None:
    """CSV with '#'-prefixed comment lines; values rendered deterministically."""
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(format_number(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def write_norm_summary_csv(path, entries: Iterable, comments: Iterable[str] = ()) -> None:
    """Norm summary rows (quantity, p, r, value)."""
    write_csv(path, comments, ["quantity", "p", "r", "value"], entries)


def _index_columns(dim: int, resolution: int) -> np.ndarray:
    return np.indices((resolution,) * dim).reshape(dim, -1).T


def write_grid_csv(samples: GridSamples, path, comments: Iterable[str] = ()) -> None:
    """Complex grid samples as rows (j_1, ..., j_d, re, im)."""
    idx = _index_columns(samples.dim, samples.resolution)
    header = [f"j{k + 1}" for k in range(samples.dim)] + ["re", "im"]
    flat = samples.flat
    rows = (
        list(idx[i]) + [float(flat[i].real), float(flat[i].imag)]
        for i in range(flat.shape[0])
    )
    write_csv(path, comments, header, rows)


def write_field_csv(samples: GridSamples, path, comments: Iterable[str] = ()) -> None:
    """Real nonnegative grid field as rows (j_1, ..., j_d, value)."""
    idx = _index_columns(samples.dim, samples.resolution)
    header = [f"j{k + 1}" for k in range(samples.dim)] + ["value"]
    flat = samples.flat
    rows = (list(idx[i]) + [float(flat[i].real)] for i in range(flat.shape[0]))
    write_csv(path, comments, header, rows)
