"""Dense two-phase simplex for small equality-form linear programs.

Solves  min c.x  s.t.  A x = b, x >= 0  in floating point.  Instances here
are tiny (tens of variables at most), so the implementation favors
robustness over speed: Bland's anti-cycling pivot rule throughout, a fixed
pivot tolerance, and an explicitly re-verified Farkas certificate whenever
phase 1 proves infeasibility.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["FarkasCertificate", "LpResult", "linear_program", "feasible_point"]

PIVOT_TOL = 1e-9


@dataclass(frozen=True)
class FarkasCertificate:
    """Separating dual vector for an infeasible system A x = b, x >= 0.

    Satisfies  y.A <= tol componentwise  and  y.b = 1, which no nonnegative
    x can reconcile with A x = b.  ``margin`` is max(y.A) as re-verified.
    """

    y: np.ndarray
    margin: float


@dataclass(frozen=True)
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None
    objective: float | None
    certificate: FarkasCertificate | None


def _pivot(tableau, basis, row, col):
    tableau[row] /= tableau[row, col]
    for r in range(tableau.shape[0]):
        if r != row and abs(tableau[r, col]) > 0:
            tableau[r] -= tableau[r, col] * tableau[row]
    basis[row] = col


def _simplex_core(tableau, basis, cost_row, ncols):
    """Run Bland-rule simplex on an (m+1) x (ncols+1) tableau in place.

    Row ``cost_row`` holds reduced costs (minimization); rightmost column is
    the rhs.  Returns "optimal" or "unbounded".
    """
    m = cost_row
    while True:
        enter = -1
        for j in range(ncols):
            if tableau[m, j] < -PIVOT_TOL:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave = -1
        best = np.inf
        for r in range(m):
            a = tableau[r, enter]
            if a > PIVOT_TOL:
                ratio = tableau[r, -1] / a
                if ratio < best - PIVOT_TOL or (
                        abs(ratio - best) <= PIVOT_TOL
                        and (leave < 0 or basis[r] < basis[leave])):
                    best = ratio
                    leave = r
        if leave < 0:
            return "unbounded"
        _pivot(tableau, basis, leave, enter)


def linear_program(c, a_eq, b_eq) -> LpResult:
    """Two-phase simplex for min c.x, A x = b, x >= 0."""
    a = np.array(a_eq, dtype=float)
    b = np.array(b_eq, dtype=float).ravel()
    c = np.array(c, dtype=float).ravel()
    if a.ndim != 2:
        raise ValueError("A must be 2-D")
    m, n = a.shape
    if b.shape != (m,) or c.shape != (n,):
        raise ValueError("A, b, c shapes disagree")

    # keep a pristine copy for certificate re-verification
    a0 = a.copy()
    b0 = b.copy()

    flip = b < 0
    a[flip] *= -1
    b[flip] *= -1

    # ---- phase 1: artificials, minimize their sum -------------------------
    t = np.zeros((m + 1, n + m + 1))
    t[:m, :n] = a
    t[:m, n:n + m] = np.eye(m)
    t[:m, -1] = b
    basis = list(range(n, n + m))
    # reduced costs for sum of artificials
    t[m, :n] = -a.sum(axis=0)
    t[m, -1] = -b.sum()

    status = _simplex_core(t, basis, m, n + m)
    if status == "unbounded":  # cannot happen for a bounded-below phase 1
        raise AssertionError("phase 1 unbounded")
    phase1 = -t[m, -1]

    if phase1 > 1e-7 * max(1.0, np.abs(b).max()):
        # infeasible: dual multipliers of phase 1 separate b from the cone.
        # Recover y from the final reduced costs of the artificial columns:
        # for artificial j, reduced cost = 1 - y_j (flipped rows negate y_j).
        y = 1.0 - t[m, n:n + m].copy()
        y[flip] *= -1
        num = float(y @ b0)
        if num <= PIVOT_TOL:
            raise AssertionError("Farkas extraction failed: y.b not positive")
        y /= num
        margin = float((y @ a0).max()) if n else 0.0
        if margin > 1e-7:
            raise AssertionError(f"Farkas certificate failed re-verification ({margin:.3e})")
        return LpResult("infeasible", None, None, FarkasCertificate(y=y, margin=margin))

    # drive leftover artificials out of the basis where possible
    for r in range(m):
        if basis[r] >= n:
            for j in range(n):
                if abs(t[r, j]) > PIVOT_TOL:
                    _pivot(t, basis, r, j)
                    break

    # ---- phase 2 ----------------------------------------------------------
    t2 = np.zeros((m + 1, n + 1))
    t2[:m, :n] = t[:m, :n]
    t2[:m, -1] = t[:m, -1]
    # redundant rows may keep an artificial basic at zero level; freeze them
    frozen = [r for r in range(m) if basis[r] >= n]
    t2[m, :n] = c
    for r in range(m):
        if basis[r] < n:
            t2[m, :] -= c[basis[r]] * t2[r, :]
    for r in frozen:
        t2[r, :] = 0.0

    status = _simplex_core(t2, basis, m, n)
    if status == "unbounded":
        return LpResult("unbounded", None, None, None)

    x = np.zeros(n)
    for r in range(m):
        if basis[r] < n:
            x[basis[r]] = t2[r, -1]
    x[np.abs(x) < 1e-12] = 0.0
    resid = np.max(np.abs(a0 @ x - b0)) if m else 0.0
    if resid > 1e-7:
        raise AssertionError(f"simplex solution violates constraints ({resid:.3e})")
    return LpResult("optimal", x, float(c @ x), None)


def feasible_point(a_eq, b_eq) -> LpResult:
    """Feasibility of A x = b, x >= 0 (zero objective two-phase run)."""
    a = np.asarray(a_eq, dtype=float)
    return linear_program(np.zeros(a.shape[1]), a, b_eq)
