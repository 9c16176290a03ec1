"""H-representation polytopes and their vertex/edge machinery.

A polytope is stored as ``{x : A x <= b}`` with every row of ``A`` scaled to
unit norm at construction (``b`` rescaled alongside), which the walk and the
flatness computations both assume.  When the ingested matrix is integer, the
original integer rows are retained for exact sub-determinant work.

Row indices are 0-based everywhere.  Three tolerances govern the geometry:

* ``TIGHT_TOL``  -- |a_i.x - b_i| at or below this counts the row as tight,
* ``DIR_TOL``    -- a_j.d must exceed this for row j to stop a ray,
* ``POINT_TOL``  -- points closer than this (max-norm) are the same vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from . import linalg
from .errors import (
    CapExceeded,
    Disconnected,
    Infeasible,
    MappingFailed,
    NotAVertex,
    Singular,
    Unbounded,
)

TIGHT_TOL = 1e-9
DIR_TOL = 1e-12
POINT_TOL = 1e-7

ENUM_CAP = 2_000_000


@dataclass(frozen=True, eq=False)
class Instance:
    """An H-polytope with canonical unit rows.

    ``A``/``b`` are the canonical (row-normalized) system used by all
    geometry.  ``raw_A``/``raw_b`` keep the data exactly as ingested for
    lossless serialization, and ``int_A`` keeps the exact integer rows when
    the ingested matrix was integer-valued.
    """

    name: str
    A: np.ndarray
    b: np.ndarray
    integral: bool
    raw_A: np.ndarray
    raw_b: np.ndarray
    int_A: tuple[tuple[int, ...], ...] | None = None
    x1: np.ndarray | None = None
    x2: np.ndarray | None = None

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    def slack(self, x) -> np.ndarray:
        """b - A x for a point x (positive where strictly inside)."""
        return self.b - self.A @ linalg.as_vector(x)


@dataclass(frozen=True)
class VertexWithBasis:
    """A vertex together with one choice of n tight, independent rows."""

    x: np.ndarray
    basis: tuple[int, ...]
    degenerate: bool = False


@dataclass(frozen=True)
class PerturbationRecord:
    """What :func:`perturb` did to the right-hand side, for reproducibility."""

    original_b: np.ndarray
    perturbed_b: np.ndarray
    magnitude: float
    seed: int


def build_instance(A, b, *, name: str = "", integral: bool | None = None,
                   x1=None, x2=None) -> Instance:
    """Validate and canonicalize an H-polytope.

    ``integral`` defaults to auto-detection: a matrix whose entries are all
    integer-valued is ingested as exact integers.  Requires m >= n and a
    nonzero norm on every row.
    """
    raw_A = linalg.as_matrix(A)
    raw_b = linalg.as_vector(b)
    m, n = raw_A.shape
    if raw_b.size != m:
        raise ValueError(f"b has length {raw_b.size}, expected {m}")
    if m < n:
        raise ValueError(f"need at least n={n} rows, got m={m}")
    norms = np.sqrt((raw_A * raw_A).sum(axis=1))
    if np.any(norms <= 0.0):
        raise ValueError(f"row {int(np.argmin(norms))} of A has zero norm")

    if integral is None:
        integral = bool(np.all(raw_A == np.round(raw_A)))
    int_A = None
    if integral:
        int_A = tuple(tuple(int(v) for v in row) for row in np.round(raw_A))
        raw_A = np.array(int_A, dtype=float)

    canon_A = raw_A / norms[:, None]
    canon_b = raw_b / norms
    for arr in (canon_A, canon_b, raw_A, raw_b):
        arr.flags.writeable = False

    def _point(p):
        if p is None:
            return None
        v = linalg.as_vector(p)
        if v.size != n:
            raise ValueError(f"endpoint has length {v.size}, expected {n}")
        v.flags.writeable = False
        return v

    return Instance(name=name, A=canon_A, b=canon_b, integral=integral,
                    raw_A=raw_A, raw_b=raw_b, int_A=int_A,
                    x1=_point(x1), x2=_point(x2))


def tight_rows(inst: Instance, x, *, tol: float = TIGHT_TOL) -> tuple[int, ...]:
    """Indices of rows tight at x, ascending.

    Raises :class:`Infeasible` naming the most violated row when x is outside
    the polytope by more than ``tol``.
    """
    slack = inst.slack(x)
    worst = int(np.argmin(slack))
    if slack[worst] < -tol:
        raise Infeasible(
            f"row {worst} violated: a[{worst}]@x exceeds b[{worst}] by {-slack[worst]:.3e}"
        )
    return tuple(int(i) for i in np.flatnonzero(np.abs(slack) <= tol))


def verify_vertex(inst: Instance, x) -> VertexWithBasis:
    """Check that x is a vertex and pick its lexicographically first basis.

    The basis is the first n tight rows that are linearly independent; a
    vertex with more than n tight rows is flagged degenerate.
    """
    point = linalg.as_vector(x)
    tight = tight_rows(inst, point)
    if len(tight) < inst.n:
        raise NotAVertex(f"only {len(tight)} tight rows, need {inst.n}")
    basis: list[int] = []
    for i in tight:
        if len(basis) == inst.n:
            break
        candidate = basis + [i]
        if linalg.rank(inst.A[candidate]) == len(candidate):
            basis.append(i)
    if len(basis) < inst.n:
        raise NotAVertex(f"tight rows have rank {len(basis)} < {inst.n}")
    frozen = point.copy()
    frozen.flags.writeable = False
    return VertexWithBasis(x=frozen, basis=tuple(basis),
                           degenerate=len(tight) > inst.n)


def edge_directions(inst: Instance, v: VertexWithBasis) -> list[tuple[int, np.ndarray]]:
    """Edge directions leaving vertex v, one per basis row.

    Relaxing basis row k gives the direction d with A_basis d = -e_k, i.e.
    the ray along which only row k goes slack.  Returned in basis order as
    (leaving_row, d) pairs.
    """
    basis_inv = linalg.inverse(inst.A[list(v.basis)])
    dirs = []
    for k, row in enumerate(v.basis):
        d = -basis_inv[:, k]
        d.flags.writeable = False
        dirs.append((row, d))
    return dirs


def ratio_step(inst: Instance, v: VertexWithBasis, d) -> tuple[int, float]:
    """Largest feasible step from v along d: (entering_row, step).

    Only rows with a_j.d > ``DIR_TOL`` can stop the ray; ties go to the
    smallest row index.  Raises :class:`Unbounded` when no row does.
    """
    direction = linalg.as_vector(d)
    denom = inst.A @ direction
    movers = np.flatnonzero(denom > DIR_TOL)
    if movers.size == 0:
        raise Unbounded("the polytope is unbounded along this direction")
    steps = inst.slack(v.x)[movers] / denom[movers]
    best = int(np.argmin(steps))
    return int(movers[best]), float(max(steps[best], 0.0))


def feasible_bases(inst: Instance, *, cap: int = ENUM_CAP) -> Iterator[VertexWithBasis]:
    """Yield every feasible basic solution, one per independent row subset.

    Degenerate vertices appear once per feasible basis; consumers that want
    geometric vertices must deduplicate by point.  Guarded by ``cap`` on the
    number of subsets C(m, n).
    """
    total = math.comb(inst.m, inst.n)
    if total > cap:
        raise CapExceeded(f"C({inst.m},{inst.n}) = {total} subsets exceeds cap {cap}")
    for subset in combinations(range(inst.m), inst.n):
        rows = list(subset)
        try:
            x = linalg.solve(inst.A[rows], inst.b[rows])
        except Singular:
            continue
        slack = inst.slack(x)
        if float(np.min(slack)) < -TIGHT_TOL:
            continue
        degenerate = int(np.count_nonzero(np.abs(slack) <= TIGHT_TOL)) > inst.n
        yield VertexWithBasis(x=x, basis=subset, degenerate=degenerate)


def enumerate_vertices(inst: Instance, *, cap: int = ENUM_CAP) -> list[VertexWithBasis]:
    """All vertices by brute-force basis enumeration, deduplicated by point.

    Each returned vertex keeps the lexicographically first feasible basis
    that produced it.  Intended for desk-scale audits and oracles.
    """
    found: list[VertexWithBasis] = []
    points: list[np.ndarray] = []
    for cand in feasible_bases(inst, cap=cap):
        if _locate(points, cand.x) is None:
            found.append(cand)
            points.append(cand.x)
    return found


def vertex_graph(inst: Instance, *, cap: int = ENUM_CAP
                 ) -> tuple[list[VertexWithBasis], list[set[int]]]:
    """Vertices plus adjacency over the polytope's edge graph.

    Adjacency is the union of ratio-test targets over every feasible basis of
    every vertex, which exposes all edges even at degenerate vertices (a
    single basis can hide some of them).  Unbounded rays are skipped.
    """
    bases = list(feasible_bases(inst, cap=cap))
    verts: list[VertexWithBasis] = []
    points: list[np.ndarray] = []
    owners: list[list[VertexWithBasis]] = []
    for cand in bases:
        idx = _locate(points, cand.x)
        if idx is None:
            verts.append(cand)
            points.append(cand.x)
            owners.append([cand])
        else:
            owners[idx].append(cand)
    adjacency: list[set[int]] = [set() for _ in verts]
    for i, vertex_bases in enumerate(owners):
        for vb in vertex_bases:
            for _, d in edge_directions(inst, vb):
                try:
                    _, step = ratio_step(inst, vb, d)
                except Unbounded:
                    continue
                target = _locate(points, vb.x + step * d)
                if target is not None and target != i:
                    adjacency[i].add(target)
                    adjacency[target].add(i)
    return verts, adjacency


def _locate(points: list[np.ndarray], x: np.ndarray) -> int | None:
    """Index of the point matching x within POINT_TOL, else None."""
    for i, p in enumerate(points):
        if float(np.max(np.abs(p - x))) <= POINT_TOL:
            return i
    return None


def bfs_distance(inst: Instance, s, t, *, graph=None, cap: int = ENUM_CAP) -> int:
    """Edge-graph distance between vertices s and t by breadth-first search.

    ``graph`` may pass a precomputed :func:`vertex_graph` result to amortize
    enumeration across calls.  Raises :class:`Disconnected` when no route
    exists.
    """
    source = linalg.as_vector(s.x if isinstance(s, VertexWithBasis) else s)
    target = linalg.as_vector(t.x if isinstance(t, VertexWithBasis) else t)
    verts, adjacency = graph if graph is not None else vertex_graph(inst, cap=cap)
    points = [v.x for v in verts]
    si = _locate(points, source)
    ti = _locate(points, target)
    if si is None or ti is None:
        raise NotAVertex("endpoint does not match any enumerated vertex")
    dist = {si: 0}
    queue = [si]
    while queue:
        nxt: list[int] = []
        for u in queue:
            if u == ti:
                return dist[u]
            for w in adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        queue = nxt
    raise Disconnected("no path between the requested vertices")


def perturb(inst: Instance, magnitude: float, seed: int) -> tuple[Instance, PerturbationRecord]:
    """Push every facet outward by an independent draw from (0, magnitude].

    Returns the perturbed instance plus a record of what was done.  The
    polytope only grows (b increases), so original points stay feasible; with
    probability one, the perturbed polytope has no degenerate vertex.
    """
    if not magnitude > 0.0:
        raise ValueError("perturbation magnitude must be positive")
    rng = np.random.default_rng(seed)
    noise = magnitude * (1.0 - rng.random(inst.m))
    new_b = inst.b + noise
    perturbed = build_instance(inst.A, new_b, name=f"{inst.name}~perturbed",
                               integral=False)
    record = PerturbationRecord(original_b=inst.b, perturbed_b=perturbed.b,
                                magnitude=float(magnitude), seed=int(seed))
    return perturbed, record


def map_to_original(original: Instance, v: VertexWithBasis) -> np.ndarray:
    """Solve v's basis system against the original right-hand side.

    This is the collapse step for perturbed walks: the basis rows pin the
    original-polytope point the perturbed vertex came from.  Raises
    :class:`MappingFailed` when that point leaves the original polytope.
    """
    rows = list(v.basis)
    x = linalg.solve(original.A[rows], original.b[rows])
    slack = original.b - original.A @ x
    worst = int(np.argmin(slack))
    if slack[worst] < -TIGHT_TOL:
        raise MappingFailed(
            f"collapsed point violates row {worst} by {-slack[worst]:.3e}"
        )
    return x


def collapse_path(original: Instance, perturbed_path: Sequence[VertexWithBasis]
                  ) -> list[np.ndarray]:
    """Map a walk on a perturbed instance back to the original polytope.

    Every path vertex is collapsed through its basis; consecutive duplicates
    (several perturbed vertices standing in for one degenerate original
    vertex) are merged.  An empty path collapses to an empty walk.
    """
    walk: list[np.ndarray] = []
    for pv in perturbed_path:
        x = map_to_original(original, pv)
        if not walk or float(np.max(np.abs(x - walk[-1]))) > POINT_TOL:
            walk.append(x)
    return walk
