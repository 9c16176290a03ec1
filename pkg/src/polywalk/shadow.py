"""Randomized shadow walks between two vertices of a polytope.

Given vertices x1 and x2 of ``{x : A x <= b}``, two random objectives are
built from the tight rows at the endpoints: w1 makes x1 the unique minimizer
and w2 makes x2 the unique maximizer.  Projecting the polytope onto
(w1.x, w2.x) yields a polygon; the path from the image of x1 to the image of
x2 along the polygon's upper-left boundary lifts to an edge path on the
polytope.  The walk follows exactly that boundary: at every vertex it picks,
among the edges improving the second coordinate, the one with the largest
slope in the projection plane.  Slopes are positive and strictly decrease,
which is also the invariant the walk enforces step by step.

Degenerate vertices (more than n tight rows) break the pivot bookkeeping, so
:func:`find_path` reroutes such cases through a tiny random enlargement of b,
walks the perturbed polytope, and collapses the result back.  Numeric
failures are handled by redrawing the objectives with the next seed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from itertools import combinations

import numpy as np

from . import linalg
from .errors import (
    DegenerateVertex,
    InfeasibleStep,
    LeftwardEdge,
    MappingFailed,
    NonMonotoneSlopes,
    PerturbationFailed,
    RetriesExhausted,
    Singular,
    StalledWalk,
    StepLimit,
    TooShort,
    Unbounded,
    UnboundedShadow,
    VerticalEdge,
    WalkFailure,
)
from .polytope import (
    DIR_TOL,
    POINT_TOL,
    TIGHT_TOL,
    Instance,
    PerturbationRecord,
    VertexWithBasis,
    edge_directions,
    map_to_original,
    perturb,
    ratio_step,
    tight_rows,
    verify_vertex,
)

SLOPE_TOL = 1e-12
# Required strict decrease between consecutive recorded slopes.
SLOPE_GAP_TOL = 1e-12
ENDPOINT_TOL = 1e-7

MAX_ATTEMPTS = 16

PERTURB_SCALE = 1e-5
MAGNITUDE_FLOOR = 1e-7


@dataclass(frozen=True)
class ObjectivePair:
    """The two random objectives spanning the projection plane.

    ``w1`` is minus the tight rows at x1 mixed with weights ``lam``; ``w2``
    is the tight rows at x2 mixed with ``mu``.  Both weight vectors are drawn
    uniformly from (0, 1]^n, so each endpoint optimizes its objective
    uniquely and both norms stay at most n.
    """

    lam: np.ndarray
    mu: np.ndarray
    w1: np.ndarray
    w2: np.ndarray
    u_rows: tuple[int, ...]
    v_rows: tuple[int, ...]
    seed: int


@dataclass(frozen=True)
class SlopeGapDiagnostic:
    """Smallest gap between consecutive slopes and where it occurs."""

    min_gap: float
    attained_at: tuple[int, int]


@dataclass(frozen=True)
class ShadowPath:
    """An edge path plus everything needed to audit it.

    ``slopes`` has one entry per traversed edge, ``projections`` one (xi,
    eta) pair per vertex (empty for a zero-length path, which samples no
    objectives), ``pivot_trace`` one (leaving_row, entering_row, step) triple
    per edge.  ``status`` is "Completed", "Perturbed+Completed" or
    "Failed(...)".
    """

    vertices: tuple[VertexWithBasis, ...]
    slopes: tuple[float, ...]
    projections: tuple[tuple[float, float], ...]
    pivot_trace: tuple[tuple[int, int, float], ...]
    status: str
    seed: int
    retries: int = 0
    perturbation: PerturbationRecord | None = None
    objective: ObjectivePair | None = None

    @property
    def length(self) -> int:
        return max(len(self.vertices) - 1, 0)

    def to_json(self) -> str:
        record = {
            "status": self.status,
            "seed": int(self.seed),
            "retries": int(self.retries),
            "vertices": [[float(c) for c in v.x] for v in self.vertices],
            "bases": [[int(i) for i in v.basis] for v in self.vertices],
            "slopes": [float(s) for s in self.slopes],
            "projections": [[float(a), float(b)] for a, b in self.projections],
            "perturbation": None if self.perturbation is None else {
                "original_b": [float(v) for v in self.perturbation.original_b],
                "perturbed_b": [float(v) for v in self.perturbation.perturbed_b],
                "magnitude": float(self.perturbation.magnitude),
                "seed": int(self.perturbation.seed),
            },
        }
        return json.dumps(record, indent=2)


def sample_objectives(inst: Instance, v1: VertexWithBasis, v2: VertexWithBasis,
                      seed: int) -> ObjectivePair:
    """Draw the two endpoint objectives from the seeded generator.

    Weights are 1 - U with U uniform on [0, 1), so they land in (0, 1]; lam
    is drawn before mu.  Requires both endpoints non-degenerate (perturb
    first otherwise).
    """
    if v1.degenerate or v2.degenerate:
        raise DegenerateVertex("sample_objectives needs non-degenerate endpoints")
    rng = np.random.default_rng(seed)
    lam = 1.0 - rng.random(inst.n)
    mu = 1.0 - rng.random(inst.n)
    u_cols = np.column_stack([linalg.normalize(inst.A[i]) for i in v1.basis])
    v_cols = np.column_stack([linalg.normalize(inst.A[i]) for i in v2.basis])
    w1 = -(u_cols @ lam)
    w2 = v_cols @ mu
    return ObjectivePair(lam=lam, mu=mu, w1=w1, w2=w2,
                         u_rows=v1.basis, v_rows=v2.basis, seed=int(seed))


def project(pair: ObjectivePair, x) -> tuple[float, float]:
    """Image of a point in the (w1.x, w2.x) shadow plane."""
    point = linalg.as_vector(x)
    return float(pair.w1 @ point), float(pair.w2 @ point)


def slope(pair: ObjectivePair, src, dst) -> float:
    """Slope of the projected segment from src to dst.

    Raises :class:`VerticalEdge` when the segment has no extent along the
    first projection axis.
    """
    move = linalg.as_vector(dst) - linalg.as_vector(src)
    run = float(pair.w1 @ move)
    if abs(run) <= SLOPE_TOL:
        raise VerticalEdge(f"projected run {run:.3e} is below {SLOPE_TOL:.1e}")
    return float(pair.w2 @ move) / run


def default_max_steps(inst: Instance) -> int:
    """Step budget: ten times the basis count, capped at one million."""
    return 10 * min(math.comb(inst.m, inst.n), 10**5)


def walk(inst: Instance, start: VertexWithBasis, target: VertexWithBasis,
         pair: ObjectivePair, max_steps: int | None = None) -> ShadowPath:
    """Follow the shadow boundary from start to target.

    At each vertex the candidate edges are those gaining on the second
    projection axis; the walk takes the candidate with the largest slope
    (ties to the smallest leaving row).  Termination is by basis-set match
    with the target, with a point-proximity fallback.  Raises a
    :class:`WalkFailure` subtype on numeric trouble and
    :class:`DegenerateVertex` when it runs into a vertex with extra tight
    rows.
    """
    if start.degenerate or target.degenerate:
        raise DegenerateVertex("walk needs non-degenerate endpoints")
    limit = default_max_steps(inst) if max_steps is None else max_steps
    target_basis = set(target.basis)

    current = start
    vertices = [start]
    slopes: list[float] = []
    projections = [project(pair, start.x)]
    trace: list[tuple[int, int, float]] = []
    prev_slope = math.inf

    for _ in range(limit):
        if set(current.basis) == target_basis or \
                float(np.max(np.abs(current.x - target.x))) <= ENDPOINT_TOL:
            return ShadowPath(vertices=tuple(vertices), slopes=tuple(slopes),
                              projections=tuple(projections), pivot_trace=tuple(trace),
                              status="Completed", seed=pair.seed, objective=pair)

        try:
            directions = edge_directions(inst, current)
        except Singular as exc:
            raise InfeasibleStep(f"basis {current.basis} became singular") from exc
        best: tuple[float, int, np.ndarray] | None = None
        for leaving, d in directions:
            rise = float(pair.w2 @ d)
            if rise <= SLOPE_TOL:
                continue
            run = float(pair.w1 @ d)
            if run <= SLOPE_TOL:
                raise LeftwardEdge(
                    f"edge relaxing row {leaving} gains eta but w1.d = {run:.3e}")
            edge_slope = rise / run
            if best is None or edge_slope > best[0]:
                best = (edge_slope, leaving, d)
        if best is None:
            raise StalledWalk("no improving edge although the target was not reached")
        edge_slope, leaving, d = best
        if edge_slope > prev_slope - SLOPE_GAP_TOL:
            raise NonMonotoneSlopes(
                f"slope {edge_slope!r} does not decrease below {prev_slope!r}")

        try:
            entering, step = ratio_step(inst, current, d)
        except Unbounded as exc:
            raise UnboundedShadow(str(exc)) from exc

        new_basis = tuple(sorted(set(current.basis) - {leaving} | {entering}))
        try:
            x_new = linalg.solve(inst.A[list(new_basis)], inst.b[list(new_basis)])
        except Singular as exc:
            raise InfeasibleStep(f"pivot to basis {new_basis} is singular") from exc
        slack = inst.slack(x_new)
        worst = int(np.argmin(slack))
        if slack[worst] < -TIGHT_TOL:
            raise InfeasibleStep(f"pivot landed outside the polytope at row {worst}")
        if int(np.count_nonzero(np.abs(slack) <= TIGHT_TOL)) > inst.n:
            raise DegenerateVertex(
                f"walk reached a degenerate vertex (basis {new_basis})")

        current = VertexWithBasis(x=x_new, basis=new_basis)
        vertices.append(current)
        slopes.append(edge_slope)
        projections.append(project(pair, x_new))
        trace.append((leaving, entering, step))
        prev_slope = edge_slope

    raise StepLimit(f"no termination within {limit} steps")


def slope_gap(path: ShadowPath) -> SlopeGapDiagnostic:
    """Smallest decrease between consecutive slopes of a path.

    Needs at least two edges; the location is the index pair of the two
    consecutive edges attaining the minimum.
    """
    if len(path.slopes) < 2:
        raise TooShort("slope gap needs at least two edges")
    gaps = [path.slopes[i] - path.slopes[i + 1] for i in range(len(path.slopes) - 1)]
    k = int(np.argmin(gaps))
    return SlopeGapDiagnostic(min_gap=float(gaps[k]), attained_at=(k, k + 1))


def _default_magnitude(inst: Instance, v1: VertexWithBasis, v2: VertexWithBasis) -> float:
    """Perturbation size: well below the endpoint slacks, well above TIGHT_TOL.

    The scale has to separate two regimes.  It must stay far under the
    smallest positive slack so every perturbed vertex keeps the tight set of
    the original vertex it splits from, and far over the tightness tolerance
    so the perturbed slacks never read as spuriously tight.  Collapse
    accuracy does not constrain it: mapped vertices are re-solved against the
    original right-hand side exactly.
    """
    slacks = np.concatenate([inst.slack(v1.x), inst.slack(v2.x)])
    positive = slacks[slacks > TIGHT_TOL]
    if positive.size == 0:
        return max(PERTURB_SCALE * (1.0 + float(np.max(np.abs(inst.b)))),
                   MAGNITUDE_FLOOR)
    return max(PERTURB_SCALE * float(np.min(positive)), MAGNITUDE_FLOOR)


def _representative(perturbed: Instance, original: Instance,
                    v: VertexWithBasis) -> VertexWithBasis:
    """Nearest perturbed vertex whose tight set sits inside v's tight set.

    The perturbation splits a degenerate vertex into an equivalence class of
    perturbed vertices; any basis drawn from the original tight rows that is
    feasible on the perturbed polytope identifies a member.  The closest one
    is the class representative used as a walk endpoint.
    """
    tight = tight_rows(original, v.x)
    best: tuple[float, np.ndarray] | None = None
    for subset in combinations(tight, original.n):
        rows = list(subset)
        try:
            x = linalg.solve(perturbed.A[rows], perturbed.b[rows])
        except Singular:
            continue
        if float(np.min(perturbed.slack(x))) < -TIGHT_TOL:
            continue
        dist = float(np.max(np.abs(x - v.x)))
        if best is None or dist < best[0]:
            best = (dist, x)
    if best is None:
        raise PerturbationFailed(
            f"no feasible basis from the {len(tight)} tight rows survives perturbation")
    rep = verify_vertex(perturbed, best[1])
    if rep.degenerate:
        raise PerturbationFailed("representative vertex is still degenerate")
    slack = perturbed.slack(rep.x)
    loose = np.delete(slack, list(rep.basis))
    if loose.size and float(np.min(loose)) <= 10.0 * TIGHT_TOL:
        raise PerturbationFailed("representative tightness is not cleanly separated")
    return rep


def _collapse_result(original: Instance, tilde_path: ShadowPath,
                     record: PerturbationRecord, seed: int, retries: int) -> ShadowPath:
    """Map a completed perturbed walk back onto the original polytope.

    Consecutive perturbed vertices that collapse to one original vertex are
    merged; each surviving step keeps the slope and pivot of the perturbed
    edge that crossed between the merged groups.
    """
    mapped = [map_to_original(original, pv) for pv in tilde_path.vertices]
    kept = [0]
    for i in range(1, len(mapped)):
        if float(np.max(np.abs(mapped[i] - mapped[kept[-1]]))) > POINT_TOL:
            kept.append(i)

    vertices = []
    for i in kept:
        x = mapped[i]
        degenerate = len(tight_rows(original, x)) > original.n
        frozen = x.copy()
        frozen.flags.writeable = False
        vertices.append(VertexWithBasis(x=frozen, basis=tilde_path.vertices[i].basis,
                                        degenerate=degenerate))
    pair = tilde_path.objective
    slopes = tuple(tilde_path.slopes[j - 1] for j in kept[1:])
    trace = tuple(tilde_path.pivot_trace[j - 1] for j in kept[1:])
    projections = tuple(project(pair, v.x) for v in vertices)
    return ShadowPath(vertices=tuple(vertices), slopes=slopes,
                      projections=projections, pivot_trace=trace,
                      status="Perturbed+Completed", seed=seed, retries=retries,
                      perturbation=record, objective=pair)


def find_path(inst: Instance, x1, x2, seed: int, *,
              max_attempts: int = MAX_ATTEMPTS) -> ShadowPath:
    """Short edge path between two vertices, with retries and perturbation.

    Verifies the endpoints, then walks with objectives drawn from ``seed``.
    Numeric walk failures redraw with seed+1 (up to ``max_attempts``
    draws).  Degenerate endpoints, or a degenerate vertex discovered
    mid-walk, switch to the perturbed pipeline: enlarge b slightly, walk
    there, collapse the result back.  Raises :class:`RetriesExhausted` with
    the collected failure reasons when every attempt fails.
    """
    v1 = verify_vertex(inst, x1)
    v2 = verify_vertex(inst, x2)
    if float(np.max(np.abs(v1.x - v2.x))) <= POINT_TOL:
        return ShadowPath(vertices=(v1,), slopes=(), projections=(),
                          pivot_trace=(), status="Completed", seed=int(seed))

    reasons: list[str] = []
    perturbing = v1.degenerate or v2.degenerate
    magnitude: float | None = None
    for attempt in range(max_attempts):
        attempt_seed = seed + attempt
        try:
            if not perturbing:
                pair = sample_objectives(inst, v1, v2, attempt_seed)
                path = walk(inst, v1, v2, pair)
                return replace(path, seed=int(seed), retries=attempt)
            if magnitude is None:
                magnitude = _default_magnitude(inst, v1, v2)
            perturbed, record = perturb(inst, magnitude, attempt_seed)
            r1 = _representative(perturbed, inst, v1)
            r2 = _representative(perturbed, inst, v2)
            pair = sample_objectives(perturbed, r1, r2, attempt_seed)
            tilde_path = walk(perturbed, r1, r2, pair)
            return _collapse_result(inst, tilde_path, record, int(seed), attempt)
        except DegenerateVertex:
            reasons.append("DegenerateVertex")
            perturbing = True
        except WalkFailure as exc:
            reasons.append(type(exc).__name__)
        except PerturbationFailed as exc:
            # A murky representative wants a fresh draw, not a smaller
            # magnitude: shrinking only pushes slacks toward the tightness
            # tolerance and makes the ambiguity worse.
            reasons.append(type(exc).__name__)
        except MappingFailed as exc:
            reasons.append(type(exc).__name__)
            if magnitude is not None:
                magnitude = max(0.1 * magnitude, MAGNITUDE_FLOOR)

    failed = ShadowPath(vertices=(v1,), slopes=(), projections=(),
                        pivot_trace=(), status=f"Failed({';'.join(reasons)})",
                        seed=int(seed), retries=max_attempts)
    raise RetriesExhausted(
        f"no walk succeeded in {max_attempts} attempts: {', '.join(reasons)}",
        reasons, path=failed)
