"""Small dense linear-programming core.

A single-phase tableau simplex solver sized for desk-scale feasibility
subproblems (tens of rows, a handful of variables). The solver works on
the full dense tableau with explicit Gauss-Jordan pivoting; pivot columns
are chosen by Dantzig's rule with a fallback to Bland's rule so the
iteration cannot cycle. Exact rational arithmetic is deliberately not
used; float64 plus pivot tolerances is adequate at this scale.

The one problem shape the rest of the package needs is the max-margin
witness search: given half-space constraints with prescribed signs, find
the point inside a coordinate box that maximizes the smallest signed
distance to the constraint hyperplanes.
"""

from __future__ import annotations

import math

import numpy as np

# Pivot tolerances for the float64 tableau.
_REDUCED_COST_TOL = 1e-9
_PIVOT_TOL = 1e-11
_BLAND_AFTER = 2000
_MAX_ITER = 20000


class LPError(RuntimeError):
    """Raised when the simplex iteration fails (unbounded or stalled)."""


def simplex_max(c, a_ub, b_ub):
    """Maximize ``c @ z`` subject to ``a_ub @ z <= b_ub`` and ``z >= 0``.

    Requires ``b_ub >= 0`` so the slack basis is immediately feasible;
    callers are expected to shift their variables accordingly.

    Returns ``(z, value)`` at the optimum.
    """
    a = np.asarray(a_ub, dtype=float)
    b = np.asarray(b_ub, dtype=float)
    c = np.asarray(c, dtype=float)
    m, nv = a.shape
    if b.shape != (m,) or c.shape != (nv,):
        raise ValueError("inconsistent LP shapes")
    if m and b.min() < 0:
        raise ValueError("simplex_max needs a nonnegative right-hand side")

    # Tableau: constraint rows | slack identity | rhs, objective row last.
    t = np.zeros((m + 1, nv + m + 1))
    t[:m, :nv] = a
    t[:m, nv:nv + m] = np.eye(m)
    t[:m, -1] = b
    t[-1, :nv] = -c
    basis = np.arange(nv, nv + m)

    for it in range(_MAX_ITER):
        red = t[-1, :-1]
        if it < _BLAND_AFTER:
            col = int(np.argmin(red))
            if red[col] >= -_REDUCED_COST_TOL:
                break
        else:
            elig = np.nonzero(red < -_REDUCED_COST_TOL)[0]
            if elig.size == 0:
                break
            col = int(elig[0])

        colvals = t[:m, col]
        rows = np.nonzero(colvals > _PIVOT_TOL)[0]
        if rows.size == 0:
            raise LPError("objective is unbounded")
        ratios = t[rows, -1] / colvals[rows]
        # Minimum ratio; break ties on the smallest basis label (Bland).
        best = rows[0]
        best_ratio = ratios[0]
        for r, ratio in zip(rows[1:], ratios[1:]):
            if ratio < best_ratio - _PIVOT_TOL or (
                abs(ratio - best_ratio) <= _PIVOT_TOL and basis[r] < basis[best]
            ):
                best = r
                best_ratio = ratio
        _pivot(t, int(best), col)
        basis[best] = col
    else:
        raise LPError("simplex iteration limit reached")

    z = np.zeros(nv)
    for r, bv in enumerate(basis):
        if bv < nv:
            z[bv] = t[r, -1]
    return z, float(t[-1, -1])


def _pivot(t, row, col):
    t[row] /= t[row, col]
    factors = t[:, col].copy()
    factors[row] = 0.0
    t -= np.outer(factors, t[row])
    t[:, col] = 0.0
    t[row, col] = 1.0


def max_margin_point(normals, offsets, signs, box):
    """Deepest point of a sign-constrained cell inside ``[-box, box]^n``.

    Solves ``max m`` subject to ``signs[j] * (normals[j] @ x + offsets[j]) >= m``
    for every row j and ``|x_c| <= box``. Rows should be normalized to unit
    length if the margin is to mean Euclidean distance.

    Returns ``(margin, x)`` where ``margin`` is recomputed directly from the
    returned point, so it is trustworthy independent of tableau round-off.
    A negative margin means the cell is empty at every interior depth.
    """
    v = np.atleast_2d(np.asarray(normals, dtype=float))
    bvec = np.asarray(offsets, dtype=float)
    s = np.asarray(signs, dtype=float)
    k, n = v.shape
    if k == 0:
        return math.inf, np.zeros(n)

    # Substitute u = x + box (so u >= 0) and mu = m - m_lb with a lower
    # bound m_lb low enough that the slack basis starts feasible.
    x0 = np.full(n, -box)
    d0 = s * (v @ x0 + bvec)
    m_lb = min(0.0, float(d0.min())) - 1.0

    a = np.zeros((k + n, n + 1))
    a[:k, :n] = -(s[:, None] * v)
    a[:k, n] = 1.0
    a[k:, :n] = np.eye(n)
    rhs = np.concatenate([d0 - m_lb, np.full(n, 2.0 * box)])
    c = np.zeros(n + 1)
    c[n] = 1.0

    z, _ = simplex_max(c, a, rhs)
    x = z[:n] - box
    margin = float(np.min(s * (v @ x + bvec)))
    return margin, x
