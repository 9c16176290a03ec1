"""Instance families, endpoint defaults, and the JSON file format.

Every generator is deterministic in its arguments (seeded draws use numpy's
default generator), returns a canonical :class:`~polywalk.polytope.Instance`,
and fills ``x1``/``x2`` with a sensible endpoint pair: pinned corners for the
structured families, the farthest pair in the edge graph for the sampled
ones.

The on-disk format is JSON with the keys ``name, m, n, A, b, integral, x1,
x2`` (the endpoints optional).  Integral matrices are written as exact
integers, floats with full round-trip precision; non-finite numbers are
rejected on read.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping

import numpy as np

from .errors import (
    InfeasibleTotals,
    ParseError,
    SchemaError,
    Unbounded,
    UnboundedSample,
)
from .flatness import random_orthogonal, rotate_rows
from .polytope import (
    ENUM_CAP,
    Instance,
    build_instance,
    edge_directions,
    enumerate_vertices,
    ratio_step,
    vertex_graph,
)

_SPHERE_RESAMPLE_LIMIT = 64
_TOTALS_RESAMPLE_LIMIT = 10_000


@dataclass(frozen=True)
class GeneratorSpec:
    """A family name plus its size/seed parameters, as used by the CLI.

    ``m`` is family-dependent: the row count for random-sphere, the second
    grid dimension for transportation, ignored by the structured families.
    """

    family: str
    n: int
    m: int | None = None
    seed: int = 0
    params: Mapping[str, float] = field(default_factory=dict)


def gen_hypercube(n: int) -> Instance:
    """The unit cube 0 <= x <= 1 with endpoints at opposite corners."""
    if n < 1:
        raise ValueError("dimension must be positive")
    eye = np.eye(n, dtype=int)
    A = np.vstack([eye, -eye])
    b = np.concatenate([np.ones(n), np.zeros(n)])
    return build_instance(A, b, name=f"hypercube-n{n}", integral=True,
                          x1=np.zeros(n), x2=np.ones(n))


def gen_simplex(n: int) -> Instance:
    """The standard simplex x >= 0, sum x <= 1, from the origin to e1."""
    if n < 1:
        raise ValueError("dimension must be positive")
    A = np.vstack([-np.eye(n, dtype=int), np.ones((1, n), dtype=int)])
    b = np.concatenate([np.zeros(n), [1.0]])
    x2 = np.zeros(n)
    x2[0] = 1.0
    return build_instance(A, b, name=f"simplex-n{n}", integral=True,
                          x1=np.zeros(n), x2=x2)


def gen_cut_cube(n: int) -> Instance:
    """The unit cube with the all-ones corner cut off by sum x <= n - 1/2.

    The cut plane misses every cube vertex, so the polytope stays
    non-degenerate; x2 sits on the cut facet.
    """
    if n < 2:
        raise ValueError("dimension must be at least 2")
    eye = np.eye(n, dtype=int)
    A = np.vstack([eye, -eye, np.ones((1, n), dtype=int)])
    b = np.concatenate([np.ones(n), np.zeros(n), [n - 0.5]])
    x2 = np.ones(n)
    x2[-1] = 0.5
    return build_instance(A, b, name=f"cut-cube-n{n}", integral=True,
                          x1=np.zeros(n), x2=x2)


def gen_transportation(p: int, q: int, seed: int) -> Instance:
    """A p x q transportation polytope in its full-dimensional reduction.

    Supplies and demands are drawn as small positive integers and redrawn
    until their totals agree.  The free variables are the (p-1)(q-1) interior
    cells; eliminating the balance equations turns every nonnegativity
    constraint into an inequality with coefficients in {-1, 0, 1}, so the
    matrix stays totally unimodular.  Endpoints default to a farthest pair in
    the edge graph.
    """
    if p < 2 or q < 2:
        raise ValueError("transportation needs p, q >= 2")
    rng = np.random.default_rng(seed)
    for _ in range(_TOTALS_RESAMPLE_LIMIT):
        supplies = rng.integers(1, 6, size=p)
        demands = rng.integers(1, 6, size=q)
        if int(supplies.sum()) == int(demands.sum()):
            break
    else:
        raise InfeasibleTotals(
            f"no matching totals in {_TOTALS_RESAMPLE_LIMIT} draws")

    n = (p - 1) * (q - 1)
    rows: list[list[int]] = []
    offsets: list[float] = []

    def cell(i: int, j: int) -> int:
        return i * (q - 1) + j

    # x_ij >= 0 for the free cells.
    for i in range(p - 1):
        for j in range(q - 1):
            row = [0] * n
            row[cell(i, j)] = -1
            rows.append(row)
            offsets.append(0.0)
    # last-column cells: sum_j x_ij <= s_i.
    for i in range(p - 1):
        row = [0] * n
        for j in range(q - 1):
            row[cell(i, j)] = 1
        rows.append(row)
        offsets.append(float(supplies[i]))
    # last-row cells: sum_i x_ij <= d_j.
    for j in range(q - 1):
        row = [0] * n
        for i in range(p - 1):
            row[cell(i, j)] = 1
        rows.append(row)
        offsets.append(float(demands[j]))
    # the corner cell: its nonnegativity flips every sign.
    rows.append([-1] * n)
    offsets.append(float(demands[q - 1] - supplies[:-1].sum()))

    inst = build_instance(rows, offsets, integral=True,
                          name=f"transportation-p{p}q{q}-s{seed}")
    x1, x2 = farthest_vertex_pair(inst)
    return replace(inst, x1=x1, x2=x2)


def gen_random_sphere(m: int, n: int, seed: int) -> Instance:
    """m unit-normal facets at distance 1, redrawn until bounded and clean.

    Rows are uniform on the sphere (normalized Gaussians), b = 1.  A draw is
    rejected when the polytope is unbounded, has fewer than two vertices, or
    has a degenerate vertex; rejection is bounded and deterministic in the
    seed.  Endpoints default to a farthest pair in the edge graph.
    """
    if m < n + 1:
        raise ValueError("need at least n+1 rows for a bounded polytope")
    rng = np.random.default_rng(seed)
    for attempt in range(_SPHERE_RESAMPLE_LIMIT):
        rows = rng.standard_normal((m, n))
        norms = np.sqrt((rows * rows).sum(axis=1))
        if np.any(norms <= 1e-12):
            continue
        inst = build_instance(rows / norms[:, None], np.ones(m), integral=False,
                              name=f"sphere-m{m}-n{n}-s{seed}")
        if _clean_bounded(inst):
            x1, x2 = farthest_vertex_pair(inst)
            return replace(inst, x1=x1, x2=x2)
    raise UnboundedSample(
        f"no bounded non-degenerate draw in {_SPHERE_RESAMPLE_LIMIT} attempts")


def _clean_bounded(inst: Instance) -> bool:
    """True when every vertex is non-degenerate and every edge is bounded."""
    verts = enumerate_vertices(inst)
    if len(verts) < 2:
        return False
    for v in verts:
        if v.degenerate:
            return False
        for _, d in edge_directions(inst, v):
            try:
                ratio_step(inst, v, d)
            except Unbounded:
                return False
    return True


def gen_rotated(base: Instance, seed: int) -> Instance:
    """The base instance with all rows (and endpoints) rotated at random."""
    Q = random_orthogonal(base.n, seed)
    rotated = rotate_rows(base, Q)
    return replace(rotated, name=f"rotated-{base.name}-s{seed}")


def gen_degenerate_pyramid() -> Instance:
    """A square pyramid whose apex carries four tight rows (degenerate).

    Base corners (+-1, +-1, 0), apex (0, 0, 1); the four slanted facets all
    meet at the apex.  Endpoints run from a base corner to the apex.
    """
    A = [[1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1], [0, 0, -1]]
    b = [1.0, 1.0, 1.0, 1.0, 0.0]
    return build_instance(A, b, name="pyramid-3d", integral=True,
                          x1=[1.0, 1.0, 0.0], x2=[0.0, 0.0, 1.0])


def farthest_vertex_pair(inst: Instance, *, cap: int = ENUM_CAP
                         ) -> tuple[np.ndarray, np.ndarray]:
    """The lexicographically first vertex pair maximizing edge-graph distance."""
    verts, adjacency = vertex_graph(inst, cap=cap)
    count = len(verts)
    if count < 2:
        raise ValueError("need at least two vertices for an endpoint pair")
    best = (-1, 0, 0)
    for s in range(count):
        dist = [-1] * count
        dist[s] = 0
        queue = [s]
        while queue:
            nxt: list[int] = []
            for u in queue:
                for w in adjacency[u]:
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            queue = sorted(nxt)
        for t in range(count):
            if dist[t] > best[0]:
                best = (dist[t], s, t)
    return verts[best[1]].x, verts[best[2]].x


def generate(spec: GeneratorSpec) -> Instance:
    """Dispatch a :class:`GeneratorSpec` to its family generator."""
    family = spec.family.lower()
    if family == "hypercube":
        return gen_hypercube(spec.n)
    if family == "simplex":
        return gen_simplex(spec.n)
    if family == "cut-cube":
        return gen_cut_cube(spec.n)
    if family == "random-sphere":
        m = spec.m if spec.m is not None else 3 * spec.n
        return gen_random_sphere(m, spec.n, spec.seed)
    if family == "transportation":
        q = spec.m if spec.m is not None else spec.n
        return gen_transportation(spec.n, q, spec.seed)
    if family == "rotated":
        return gen_rotated(gen_hypercube(spec.n), spec.seed)
    raise ValueError(f"unknown family {spec.family!r}")


# --- file format -----------------------------------------------------------


def _reject_constant(token: str):
    raise ParseError(f"non-finite number {token!r} in instance file")


def write_instance(inst: Instance, path) -> None:
    """Serialize an instance to JSON with lossless numbers.

    Integral matrices are written as exact integers; everything else uses
    Python's shortest round-trip float representation.
    """
    if inst.integral and inst.int_A is not None:
        matrix = [list(row) for row in inst.int_A]
    else:
        matrix = [[float(v) for v in row] for row in inst.raw_A]
    payload: dict = {
        "name": inst.name,
        "m": inst.m,
        "n": inst.n,
        "A": matrix,
        "b": [float(v) for v in inst.raw_b],
        "integral": inst.integral,
    }
    if inst.x1 is not None:
        payload["x1"] = [float(v) for v in inst.x1]
    if inst.x2 is not None:
        payload["x2"] = [float(v) for v in inst.x2]
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def _number_list(values, length: int, label: str) -> list[float]:
    if not isinstance(values, list) or len(values) != length:
        raise SchemaError(f"{label} must be a list of {length} numbers")
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise SchemaError(f"{label} contains a non-number: {v!r}")
        if not math.isfinite(v):
            raise ParseError(f"{label} contains a non-finite number")
        out.append(float(v))
    return out


def read_instance(path) -> Instance:
    """Parse and validate an instance file.

    Raises :class:`ParseError` for broken JSON or non-finite numbers and
    :class:`SchemaError` for missing or ill-shaped fields.
    """
    try:
        data = json.loads(Path(path).read_text(), parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("instance file must hold a JSON object")
    for key in ("name", "m", "n", "A", "b", "integral"):
        if key not in data:
            raise SchemaError(f"missing field {key!r}")
    name = data["name"]
    if not isinstance(name, str):
        raise SchemaError("name must be a string")
    m, n = data["m"], data["n"]
    if not isinstance(m, int) or not isinstance(n, int) or isinstance(m, bool) \
            or isinstance(n, bool) or m < 1 or n < 1:
        raise SchemaError("m and n must be positive integers")
    integral = data["integral"]
    if not isinstance(integral, bool):
        raise SchemaError("integral must be a boolean")
    if not isinstance(data["A"], list) or len(data["A"]) != m:
        raise SchemaError(f"A must be a list of {m} rows")
    matrix = [_number_list(row, n, f"A[{i}]") for i, row in enumerate(data["A"])]
    if integral:
        for i, row in enumerate(matrix):
            if any(not float(v).is_integer() for v in row):
                raise SchemaError(f"A[{i}] must be integers in an integral instance")
    offsets = _number_list(data["b"], m, "b")
    x1 = _number_list(data["x1"], n, "x1") if "x1" in data else None
    x2 = _number_list(data["x2"], n, "x2") if "x2" in data else None
    try:
        return build_instance(matrix, offsets, name=name, integral=integral,
                              x1=x1, x2=x2)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
