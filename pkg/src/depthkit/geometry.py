"""Simplex containment and volume in d dimensions.

A point p lies inside the simplex with vertices v_0..v_d iff its
barycentric coordinates are all nonnegative, i.e. the solution w of

    [v_1-v_0 | ... | v_d-v_0] w = p - v_0

satisfies w_i >= 0 and sum(w) <= 1. The linear solve is a hand-rolled LU
with partial pivoting so that the degeneracy rule below is under our
control rather than delegated to a library's error semantics.

Degenerate simplices (affinely dependent vertices): any pivot smaller than
1e-12 times the largest column norm of the edge matrix marks the simplex
degenerate. The containment predicate then answers False, except when the
query point coincides with one of the vertices within tolerance; depth
computations count a degenerate simplex as containing nothing.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "barycentric_coordinates",
    "point_in_simplex",
    "points_in_simplex",
    "simplex_volume",
]

_PIVOT_RATIO = 1e-12


def _lu_solve(A: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Solve A w = b by LU with partial pivoting; None if A is degenerate.

    Degeneracy threshold: pivot magnitude below _PIVOT_RATIO times the
    largest euclidean column norm of A. An all-zero A (all vertices equal)
    is degenerate by the same rule.
    """
    n = A.shape[0]
    M = np.hstack([A.astype(float, copy=True), b.reshape(-1, 1).astype(float)])
    col_norms = np.sqrt((A * A).sum(axis=0))
    scale = float(col_norms.max()) if n else 0.0
    threshold = _PIVOT_RATIO * scale

    for k in range(n):
        pivot_row = k + int(np.argmax(np.abs(M[k:, k])))
        pivot = M[pivot_row, k]
        if abs(pivot) <= threshold:
            return None
        if pivot_row != k:
            M[[k, pivot_row]] = M[[pivot_row, k]]
        factors = M[k + 1:, k] / pivot
        M[k + 1:, k:] -= np.outer(factors, M[k, k:])

    w = np.empty(n)
    for k in range(n - 1, -1, -1):
        w[k] = (M[k, n] - M[k, k + 1: n] @ w[k + 1: n]) / M[k, k]
    return w


def barycentric_coordinates(point, vertices) -> np.ndarray | None:
    """Weights (w_1..w_d) of ``point`` w.r.t. a (d+1, d) vertex matrix.

    The implied weight of v_0 is 1 - sum(w). Returns None when the simplex
    is degenerate.
    """
    V = np.asarray(vertices, dtype=float)
    p = np.asarray(point, dtype=float)
    d = V.shape[1]
    if V.shape[0] != d + 1:
        raise ValueError(f"a simplex in {d} dimensions needs {d + 1} vertices, got {V.shape[0]}")
    A = (V[1:] - V[0]).T
    return _lu_solve(A, p - V[0])


def point_in_simplex(point, vertices, tol: float = 1e-9) -> bool:
    """True iff ``point`` lies in the closed simplex spanned by ``vertices``.

    tol relaxes the barycentric inequalities (w_i >= -tol, sum <= 1 + tol).
    For a degenerate simplex the answer is False unless the point coincides
    with some vertex within tol (per coordinate).
    """
    V = np.asarray(vertices, dtype=float)
    p = np.asarray(point, dtype=float)
    w = barycentric_coordinates(p, V)
    if w is None:
        return bool(np.any(np.all(np.abs(V - p) <= tol, axis=1)))
    return bool(np.all(w >= -tol) and w.sum() <= 1.0 + tol)


def points_in_simplex(points, vertices, tol: float = 1e-9, on_degenerate: str = "vertices") -> np.ndarray:
    """Vectorized :func:`point_in_simplex` over a (k, d) stack of points.

    One LU factorization serves all queries. For a degenerate simplex,
    on_degenerate="vertices" keeps the predicate's coincidence rule while
    "none" reports every point as outside; depth sums use "none" so a
    degenerate simplex contributes nothing.
    """
    V = np.asarray(vertices, dtype=float)
    P = np.atleast_2d(np.asarray(points, dtype=float))
    d = V.shape[1]
    if V.shape[0] != d + 1:
        raise ValueError(f"a simplex in {d} dimensions needs {d + 1} vertices, got {V.shape[0]}")
    if on_degenerate not in ("vertices", "none"):
        raise ValueError(f"on_degenerate must be 'vertices' or 'none', got {on_degenerate!r}")

    A = (V[1:] - V[0]).T
    col_norms = np.sqrt((A * A).sum(axis=0))
    scale = float(col_norms.max()) if d else 0.0
    # Factor once; reuse the row-echelon form for every right-hand side.
    M = A.astype(float, copy=True)
    perm = np.arange(d)
    degenerate = False
    for k in range(d):
        pivot_row = k + int(np.argmax(np.abs(M[k:, k])))
        if abs(M[pivot_row, k]) <= _PIVOT_RATIO * scale:
            degenerate = True
            break
        if pivot_row != k:
            M[[k, pivot_row]] = M[[pivot_row, k]]
            perm[[k, pivot_row]] = perm[[pivot_row, k]]
        factors = M[k + 1:, k] / M[k, k]
        M[k + 1:, k] = factors
        M[k + 1:, k + 1:] -= np.outer(factors, M[k, k + 1:])

    if degenerate:
        out = np.zeros(P.shape[0], dtype=bool)
        if on_degenerate == "vertices":
            for i, p in enumerate(P):
                out[i] = bool(np.any(np.all(np.abs(V - p) <= tol, axis=1)))
        return out

    B = (P - V[0])[:, perm].T.copy()
    for k in range(d):
        B[k + 1:] -= np.outer(M[k + 1:, k], B[k])
    W = np.empty_like(B)
    for k in range(d - 1, -1, -1):
        W[k] = (B[k] - M[k, k + 1:] @ W[k + 1:]) / M[k, k]
    W = W.T
    return np.logical_and(np.all(W >= -tol, axis=1), W.sum(axis=1) <= 1.0 + tol)


def simplex_volume(vertices) -> float:
    """Euclidean volume |det(edge matrix)| / d! of a (d+1, d) simplex."""
    V = np.asarray(vertices, dtype=float)
    d = V.shape[1]
    if V.shape[0] != d + 1:
        raise ValueError(f"a simplex in {d} dimensions needs {d + 1} vertices, got {V.shape[0]}")
    A = (V[1:] - V[0]).T
    det = _lu_det(A)
    return abs(det) / _factorial(d)


def _lu_det(A: np.ndarray) -> float:
    n = A.shape[0]
    M = A.astype(float, copy=True)
    det = 1.0
    for k in range(n):
        pivot_row = k + int(np.argmax(np.abs(M[k:, k])))
        pivot = M[pivot_row, k]
        if pivot == 0.0:
            return 0.0
        if pivot_row != k:
            M[[k, pivot_row]] = M[[pivot_row, k]]
            det = -det
        det *= pivot
        factors = M[k + 1:, k] / pivot
        M[k + 1:, k + 1:] -= np.outer(factors, M[k, k + 1:])
    return det


def _factorial(d: int) -> float:
    out = 1.0
    for i in range(2, d + 1):
        out *= i
    return out
