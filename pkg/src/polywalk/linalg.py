"""Dense real kernel and exact integer determinants.

Real vectors and matrices are plain float64 numpy arrays; :func:`as_vector`
and :func:`as_matrix` validate shape and finiteness at the package boundary.
Exact integer work (sub-determinant enumeration) runs on nested Python ints,
whose width is unbounded, so intermediate products can never overflow.

Two thresholds are used package-wide and kept here: ``PIVOT_TOL`` is the
absolute pivot floor below which elimination reports :class:`Singular`, and
``RANK_TOL`` is the relative floor (against the largest pivot seen) deciding
numerical rank.
"""

from __future__ import annotations

import numpy as np

from .errors import NonIntegerEntry, Singular, ZeroVector

PIVOT_TOL = 1e-12
RANK_TOL = 1e-9

# Norms at or below this are treated as exactly zero.
_ZERO_NORM_FLOOR = 1e-300


def as_vector(values) -> np.ndarray:
    """Coerce to a finite 1-d float64 array."""
    v = np.asarray(values, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError(f"expected a nonempty 1-d vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def as_matrix(values) -> np.ndarray:
    """Coerce to a finite 2-d float64 array."""
    a = np.asarray(values, dtype=float)
    if a.ndim != 2 or a.size == 0:
        raise ValueError(f"expected a nonempty 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def normalize(values) -> np.ndarray:
    """Return v / ||v||, raising :class:`ZeroVector` when the norm vanishes."""
    v = as_vector(values)
    norm = float(np.sqrt(v @ v))
    if norm <= _ZERO_NORM_FLOOR:
        raise ZeroVector("cannot normalize a vector of (near-)zero norm")
    return v / norm


def _eliminate(aug: np.ndarray, pivot_tol: float) -> None:
    """Forward elimination with partial pivoting, in place.

    ``aug`` is an (n, n+k) augmented system.  Raises :class:`Singular` when
    the best available pivot falls below ``pivot_tol``.
    """
    n = aug.shape[0]
    for col in range(n):
        p = col + int(np.argmax(np.abs(aug[col:, col])))
        if abs(aug[p, col]) < pivot_tol:
            raise Singular(f"pivot {abs(aug[p, col]):.3e} below {pivot_tol:.1e} in column {col}")
        if p != col:
            aug[[col, p]] = aug[[p, col]]
        if col + 1 < n:
            factors = aug[col + 1 :, col] / aug[col, col]
            aug[col + 1 :, col:] -= np.outer(factors, aug[col, col:])


def solve(mat, rhs, *, pivot_tol: float = PIVOT_TOL) -> np.ndarray:
    """Solve the square system mat @ x = rhs by partial-pivot elimination."""
    a = as_matrix(mat)
    b = as_vector(rhs)
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError(f"matrix must be square, got {a.shape}")
    if b.size != n:
        raise ValueError(f"rhs length {b.size} does not match matrix order {n}")
    aug = np.hstack([a, b[:, None]])
    _eliminate(aug, pivot_tol)
    x = np.empty(n)
    for i in range(n - 1, -1, -1):
        x[i] = (aug[i, n] - aug[i, i + 1 : n] @ x[i + 1 :]) / aug[i, i]
    return x


def inverse(mat, *, pivot_tol: float = PIVOT_TOL) -> np.ndarray:
    """Invert a square matrix via elimination on the augmented identity."""
    a = as_matrix(mat)
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError(f"matrix must be square, got {a.shape}")
    aug = np.hstack([a, np.eye(n)])
    _eliminate(aug, pivot_tol)
    inv = np.empty((n, n))
    for i in range(n - 1, -1, -1):
        inv[i] = (aug[i, n:] - aug[i, i + 1 : n] @ inv[i + 1 :]) / aug[i, i]
    return inv


def rank(mat, *, rel_tol: float = RANK_TOL) -> int:
    """Numerical rank by row echelon with partial pivoting.

    A column pivot counts only while it stays above ``rel_tol`` times the
    largest pivot seen so far, which makes the answer invariant under global
    scaling of the matrix.
    """
    a = as_matrix(mat).copy()
    m, n = a.shape
    r = 0
    largest = 0.0
    for col in range(n):
        if r == m:
            break
        p = r + int(np.argmax(np.abs(a[r:, col])))
        size = abs(a[p, col])
        largest = max(largest, size)
        if largest <= 0.0 or size <= rel_tol * largest:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        if r + 1 < m:
            factors = a[r + 1 :, col] / a[r, col]
            a[r + 1 :, col:] -= np.outer(factors, a[r, col:])
        r += 1
    return r


def as_int_matrix(rows) -> list[list[int]]:
    """Coerce nested data to a rectangular matrix of exact Python ints.

    Floats are accepted only when integer-valued; everything else raises
    :class:`NonIntegerEntry`.
    """
    out: list[list[int]] = []
    width = None
    for row in rows:
        converted: list[int] = []
        for v in row:
            if isinstance(v, (bool, np.bool_)):
                raise NonIntegerEntry(f"boolean entry {v!r} is not a valid integer entry")
            if isinstance(v, (int, np.integer)):
                converted.append(int(v))
            elif isinstance(v, (float, np.floating)) and float(v).is_integer():
                converted.append(int(v))
            else:
                raise NonIntegerEntry(f"entry {v!r} is not exactly an integer")
        if width is None:
            width = len(converted)
        elif len(converted) != width:
            raise ValueError("matrix rows have differing lengths")
        out.append(converted)
    if not out or width == 0:
        raise ValueError("expected a nonempty integer matrix")
    return out


def int_determinant(mat) -> int:
    """Exact determinant of a square integer matrix.

    Fraction-free elimination: every interior division is exact, so the
    arithmetic stays in Python ints throughout and the result is the exact
    determinant regardless of magnitude.
    """
    a = as_int_matrix(mat)
    k = len(a)
    if any(len(row) != k for row in a):
        raise ValueError(f"matrix must be square, got {k}x{len(a[0])}")
    sign = 1
    prev = 1
    for i in range(k - 1):
        if a[i][i] == 0:
            for p in range(i + 1, k):
                if a[p][i] != 0:
                    a[i], a[p] = a[p], a[i]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[i][i]
        for r in range(i + 1, k):
            lead = a[r][i]
            row_r = a[r]
            row_i = a[i]
            for c in range(i + 1, k):
                row_r[c] = (row_r[c] * piv - lead * row_i[c]) // prev
            row_r[i] = 0
        prev = piv
    return sign * a[-1][-1]
