"""Flatness of row systems and exact sub-determinant bounds.

The flatness of n independent vectors is the smallest sine of the angle
between any one of them (normalized) and the span of the others; the
flatness of a whole constraint matrix is the minimum over all independent
n-row subsets.  It is invariant under row scaling and under orthogonal maps,
and for integer matrices it is bounded below through the largest
sub-determinants, which are computed exactly here.

Numerically, everything runs through the inverse of the normalized row
matrix, whose conditioning is itself bounded by 1/flatness; reports carry
the number of bases checked so callers can judge the enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import linalg
from .errors import CapExceeded, DependentVectors, NotOrthogonal, Singular
from .polytope import Instance, build_instance

DELTA_CAP = 1_000_000
SUBDET_CAP = 10_000_000

# Tolerance used when certifying the integral lower bound.
CERT_TOL = 1e-6


@dataclass(frozen=True)
class FlatnessReport:
    """Flatness of a whole matrix with the witnessing row subset."""

    delta: float
    argmin_basis: tuple[int, ...]
    method: str
    n_bases_checked: int


@dataclass(frozen=True)
class SubdetReport:
    """Largest absolute sub-determinants of an integer matrix.

    ``Delta`` ranges over all square submatrices up to order n, ``Delta1``
    over single entries, ``Delta_n_minus_1`` over order n-1.  The product
    n * Delta1 * Delta_n_minus_1 upper-bounds the inverse flatness.
    """

    Delta: int
    Delta1: int
    Delta_n_minus_1: int
    bound_on_inv_delta: float


def _normalized_columns(vectors) -> np.ndarray:
    cols = [linalg.normalize(z) for z in vectors]
    n = cols[0].size
    if any(c.size != n for c in cols):
        raise ValueError("vectors must share one dimension")
    return np.column_stack(cols)


def delta_hat(span_vectors, z) -> float:
    """Sine of the angle between z and the span of ``span_vectors``.

    Computed from one linear solve: with B holding the normalized vectors as
    columns (z last), the solution x of B^T x = e_n has 1/||x|| equal to the
    wanted sine.  In dimension one the span list is empty and the sine is
    1.0.  Raises :class:`DependentVectors` when the n vectors together are
    dependent.
    """
    vectors = list(span_vectors) + [z]
    B = _normalized_columns(vectors)
    if B.shape[0] != B.shape[1]:
        raise ValueError(f"need n-1 span vectors for dimension {B.shape[0]}, "
                         f"got {B.shape[1] - 1}")
    try:
        x = linalg.solve(B.T, np.eye(B.shape[0])[:, -1])
    except Singular as exc:
        raise DependentVectors(str(exc)) from exc
    return min(1.0, 1.0 / float(np.sqrt(x @ x)))


def delta_basis(vectors) -> float:
    """Flatness of n independent vectors.

    Equals the minimum over k of :func:`delta_hat` with vector k singled
    out, but is computed in one shot as the reciprocal of the largest column
    norm of the inverse transposed (normalized) vector matrix.
    """
    B = _normalized_columns(vectors)
    if B.shape[0] != B.shape[1]:
        raise ValueError(f"need exactly {B.shape[0]} vectors, got {B.shape[1]}")
    try:
        M = linalg.inverse(B.T)
    except Singular as exc:
        raise DependentVectors(str(exc)) from exc
    col_norms = np.sqrt((M * M).sum(axis=0))
    return min(1.0, 1.0 / float(np.max(col_norms)))


def delta_A(inst: Instance, *, cap: int = DELTA_CAP) -> FlatnessReport:
    """Flatness of the constraint matrix: minimum over all independent bases.

    Exhaustive over the C(m, n) row subsets, skipping dependent ones, with a
    cap guard.  The witnessing subset is the first one attaining the minimum.
    """
    total = math.comb(inst.m, inst.n)
    if total > cap:
        raise CapExceeded(f"C({inst.m},{inst.n}) = {total} bases exceeds cap {cap}")
    best = None
    argmin: tuple[int, ...] = ()
    checked = 0
    for subset in combinations(range(inst.m), inst.n):
        try:
            value = delta_basis([inst.A[i] for i in subset])
        except DependentVectors:
            continue
        checked += 1
        if best is None or value < best:
            best = value
            argmin = subset
    if best is None:
        raise DependentVectors("no independent n-row subset exists")
    return FlatnessReport(delta=best, argmin_basis=argmin,
                          method="enumeration", n_bases_checked=checked)


def subdet_report(int_mat, *, cap: int = SUBDET_CAP) -> SubdetReport:
    """Exact largest sub-determinants of an integer matrix, all orders.

    Enumerates every square submatrix up to order n with exact integer
    determinants; the total count is guarded by ``cap``.
    """
    mat = linalg.as_int_matrix(int_mat)
    m, n = len(mat), len(mat[0])
    k_max = min(m, n)
    total = sum(math.comb(m, k) * math.comb(n, k) for k in range(1, k_max + 1))
    if total > cap:
        raise CapExceeded(f"{total} square submatrices exceed cap {cap}")
    delta_by_order = [0] * (k_max + 1)
    for k in range(1, k_max + 1):
        biggest = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                det = linalg.int_determinant([[mat[r][c] for c in cols] for r in rows])
                biggest = max(biggest, abs(det))
        delta_by_order[k] = biggest
    Delta1 = delta_by_order[1]
    Delta_n_minus_1 = delta_by_order[n - 1] if n >= 2 else 1
    return SubdetReport(Delta=max(delta_by_order),
                        Delta1=Delta1,
                        Delta_n_minus_1=Delta_n_minus_1,
                        bound_on_inv_delta=float(n * Delta1 * Delta_n_minus_1))


def certify_delta_Delta(inst: Instance, *, delta_cap: int = DELTA_CAP,
                        subdet_cap: int = SUBDET_CAP) -> tuple[bool, float]:
    """Check 1/delta <= n * Delta1 * Delta_{n-1} for an integral instance.

    Returns (holds, slack) with slack = bound - 1/delta; ``holds`` allows a
    1e-6 tolerance on the comparison.
    """
    if not inst.integral or inst.int_A is None:
        raise ValueError("certificate needs an instance ingested with integer A")
    report = delta_A(inst, cap=delta_cap)
    subdets = subdet_report(inst.int_A, cap=subdet_cap)
    inv_delta = 1.0 / report.delta
    slack = subdets.bound_on_inv_delta - inv_delta
    return inv_delta <= subdets.bound_on_inv_delta + CERT_TOL, slack


def rotate_rows(inst: Instance, Q) -> Instance:
    """Apply an orthogonal map to every row of A, keeping b.

    Flatness is invariant under this.  Stored endpoints are rotated along
    (x -> Q x keeps them vertices of the rotated system).  The result is a
    float instance even when the input was integral.
    """
    mat = linalg.as_matrix(Q)
    n = inst.n
    if mat.shape != (n, n):
        raise ValueError(f"rotation must be {n}x{n}, got {mat.shape}")
    defect = float(np.max(np.abs(mat.T @ mat - np.eye(n))))
    if defect > 1e-9:
        raise NotOrthogonal(f"Q^T Q deviates from identity by {defect:.3e}")
    rotated = inst.raw_A @ mat.T
    return build_instance(rotated, inst.raw_b, name=f"{inst.name}~rotated",
                          integral=False,
                          x1=None if inst.x1 is None else mat @ inst.x1,
                          x2=None if inst.x2 is None else mat @ inst.x2)


def random_orthogonal(n: int, seed: int) -> np.ndarray:
    """A seeded random orthogonal matrix (QR of a Gaussian, signs fixed)."""
    rng = np.random.default_rng(seed)
    gauss = rng.standard_normal((n, n))
    q, r = np.linalg.qr(gauss)
    return q * np.sign(np.diag(r))
