"""Small dense LP solver for box-bounded programs with <= constraints.

Two-phase tableau simplex with Bland's rule. Bounds are handled by shifting each
variable onto its finite bound and adding an explicit row for a finite width;
the problem sizes here (tens of variables) make that cheaper than a bounded-
variable ratio test to get right.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class LpIterationLimit(RuntimeError):
    pass


@dataclass
class LinearProgram:
    num_vars: int
    lower: Sequence[float]
    upper: Sequence[float]
    constraints: list[tuple[Mapping[int, float], float]] = field(default_factory=list)
    objective: Mapping[int, float] = field(default_factory=dict)
    maximize: bool = True

    def __post_init__(self):
        self.lower = [float(v) for v in self.lower]
        self.upper = [float(v) for v in self.upper]
        if len(self.lower) != self.num_vars or len(self.upper) != self.num_vars:
            raise ValueError("bound vectors must have num_vars entries")
        for v, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            if lo > hi or lo == math.inf or hi == -math.inf or math.isnan(lo) or math.isnan(hi):
                raise ValueError(f"variable {v}: bad bounds [{lo}, {hi}]")
        for coeffs, _ in self.constraints:
            for v in coeffs:
                if not 0 <= v < self.num_vars:
                    raise ValueError(f"constraint references unknown variable {v}")
        for v in self.objective:
            if not 0 <= v < self.num_vars:
                raise ValueError(f"objective references unknown variable {v}")

    def add(self, coeffs: Mapping[int, float], rhs: float) -> None:
        """Append the constraint sum(coeffs[v] * x_v) <= rhs."""
        self.constraints.append((dict(coeffs), float(rhs)))

    def dense(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        m, n = len(self.constraints), self.num_vars
        A = np.zeros((m, n))
        b = np.zeros(m)
        for i, (coeffs, rhs) in enumerate(self.constraints):
            for v, a in coeffs.items():
                A[i, v] += a
            b[i] = rhs
        c = np.zeros(n)
        for v, a in self.objective.items():
            c[v] += a
        return A, b, c


@dataclass
class LpVerdict:
    status: LpStatus
    point: np.ndarray | None = None
    value: float | None = None
    duals: np.ndarray | None = None  # one multiplier >= 0 per constraint
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


def lagrangian_bound(lp: LinearProgram, duals: np.ndarray, zero_tol: float = 1e-9) -> float:
    """Upper bound on the max-sense objective implied by multipliers ``duals`` >= 0.

    For y >= 0, max c.x over {Ax <= b, l <= x <= u} is at most
    y.b + sum_j max_{x_j in [l_j, u_j]} (c - A^T y)_j x_j.
    Reduced costs below ``zero_tol`` on unbounded variables count as zero.
    """
    A, b, c = lp.dense()
    sign = 1.0 if lp.maximize else -1.0
    red = sign * c - A.T @ duals if len(b) else sign * c
    total = float(duals @ b) if len(b) else 0.0
    for j, g in enumerate(red):
        if abs(g) <= zero_tol and (math.isinf(lp.lower[j]) or math.isinf(lp.upper[j])):
            continue  # round-off on an unbounded direction
        if g > 0:
            hi = lp.upper[j]
            if math.isinf(hi):
                return math.inf
            total += g * hi
        elif g < 0:
            lo = lp.lower[j]
            if math.isinf(lo):
                return math.inf
            total += g * lo
    return total


def duality_gap(lp: LinearProgram, verdict: LpVerdict) -> float:
    """Certified gap between the returned objective and the dual bound (>= 0 up to round-off)."""
    if not verdict.optimal:
        raise ValueError("gap is only defined for optimal verdicts")
    if np.any(verdict.duals < -1e-12):
        return math.inf
    sign = 1.0 if lp.maximize else -1.0
    return lagrangian_bound(lp, np.maximum(verdict.duals, 0.0)) - sign * verdict.value


def check_feasible(lp: LinearProgram, x: Sequence[float], tol: float = 1e-9) -> bool:
    x = np.asarray(x, dtype=float)
    for j, v in enumerate(x):
        if v < lp.lower[j] - tol or v > lp.upper[j] + tol:
            return False
    for coeffs, rhs in lp.constraints:
        if sum(a * x[v] for v, a in coeffs.items()) > rhs + tol:
            return False
    return True


def solve(lp: LinearProgram, feas_tol: float = 1e-9, pivot_tol: float = 1e-11,
          max_iter: int = 50_000) -> LpVerdict:
    """Solve ``lp``; deterministic for identical input."""
    A, b, c = lp.dense()
    m, n = A.shape
    sign = 1.0 if lp.maximize else -1.0
    c = sign * c

    # x_j = offset_j + s * x'_j, or x+ - x- for free variables
    col_map: list[tuple[int, float]] = []  # transformed column -> (var, sign)
    offset = np.zeros(n)
    for j in range(n):
        lo, hi = lp.lower[j], lp.upper[j]
        if not math.isinf(lo):
            offset[j] = lo
            col_map.append((j, 1.0))
        elif not math.isinf(hi):
            offset[j] = hi
            col_map.append((j, -1.0))
        else:
            col_map += [(j, 1.0), (j, -1.0)]
    nt = len(col_map)
    At = np.zeros((m, nt))
    ct = np.zeros(nt)
    for t, (j, s) in enumerate(col_map):
        At[:, t] = s * A[:, j] if m else 0.0
        ct[t] = s * c[j]
    bt = b - (A @ offset if m else 0.0)
    width_rows: list[tuple[int, float]] = []
    for t, (j, s) in enumerate(col_map):
        lo, hi = lp.lower[j], lp.upper[j]
        if not math.isinf(lo) and not math.isinf(hi):
            width_rows.append((t, hi - lo))

    rows = m + len(width_rows)
    M = np.zeros((rows, nt))
    rhs = np.zeros(rows)
    if m:
        M[:m] = At
        rhs[:m] = bt
    for i, (t, w) in enumerate(width_rows):
        M[m + i, t] = 1.0
        rhs[m + i] = w

    neg = rhs < 0
    n_art = int(neg.sum())
    # columns: structural | slacks | artificials
    ncol = nt + rows + n_art
    T = np.zeros((rows + 1, ncol + 1))
    T[1:, :nt] = M
    T[1:, nt:nt + rows] = np.eye(rows)
    T[1:, -1] = rhs
    basis = np.zeros(rows, dtype=int)
    a = 0
    for i in range(rows):
        if neg[i]:
            T[i + 1] *= -1.0
            T[i + 1, nt + rows + a] = 1.0
            basis[i] = nt + rows + a
            a += 1
        else:
            basis[i] = nt + i

    iters = 0
    if n_art:
        # phase 1: maximise -(sum of artificials)
        T[0, :] = 0.0
        T[0, nt + rows:ncol] = 1.0
        for i in range(rows):
            if basis[i] >= nt + rows:
                T[0] -= T[i + 1]
        iters += _simplex(T, basis, ncol, pivot_tol, max_iter)
        if T[0, -1] < -feas_tol:
            return LpVerdict(LpStatus.INFEASIBLE, iterations=iters)
        # drive remaining artificials out of the basis
        for i in range(rows):
            if basis[i] >= nt + rows:
                row = T[i + 1, :nt + rows]
                nz = np.nonzero(np.abs(row) > pivot_tol)[0]
                if len(nz):
                    _pivot(T, basis, i, int(nz[0]))
        T = np.delete(T, np.s_[nt + rows:ncol], axis=1)
        ncol = nt + rows
        keep = basis < ncol
        if not keep.all():
            # redundant rows whose artificial stayed basic at zero
            drop = np.nonzero(~keep)[0]
            T = np.delete(T, drop + 1, axis=0)
            basis = basis[keep]
            rows = len(basis)

    T[0, :] = 0.0
    T[0, :nt] = -ct
    for i in range(rows):
        j = basis[i]
        if T[0, j] != 0.0:
            T[0] -= T[0, j] * T[i + 1]
    try:
        iters += _simplex(T, basis, ncol, pivot_tol, max_iter - iters)
    except _Unbounded:
        return LpVerdict(LpStatus.UNBOUNDED, iterations=iters)

    xt = np.zeros(ncol)
    xt[basis] = T[1:, -1]
    x = offset.copy()
    for t, (j, s) in enumerate(col_map):
        x[j] += s * xt[t]
    x = np.clip(x, lp.lower, lp.upper)
    value = float(sign * (c @ x)) if n else 0.0
    # multipliers of the original rows are the reduced costs of their slacks
    y = np.maximum(T[0, nt:nt + m].copy(), 0.0) if m else np.zeros(0)
    return LpVerdict(LpStatus.OPTIMAL, x, value, y, iters)


class _Unbounded(Exception):
    pass


def _pivot(T: np.ndarray, basis: np.ndarray, r: int, col: int) -> None:
    T[r + 1] /= T[r + 1, col]
    pr = T[r + 1]
    f = T[:, col].copy()
    f[r + 1] = 0.0
    T -= np.outer(f, pr)
    basis[r] = col


def _simplex(T: np.ndarray, basis: np.ndarray, ncol: int, tol: float, max_iter: int) -> int:
    it = 0
    while True:
        red = T[0, :ncol]
        cand = np.nonzero(red < -tol)[0]
        if not len(cand):
            return it
        if it >= max_iter:
            raise LpIterationLimit(f"simplex exceeded {max_iter} pivots")
        col = int(cand[0])  # Bland: lowest index
        colv = T[1:, col]
        pos = np.nonzero(colv > tol)[0]
        if not len(pos):
            raise _Unbounded()
        ratios = T[1:, -1][pos] / colv[pos]
        best = ratios.min()
        ties = pos[ratios <= best + 1e-12 * max(1.0, abs(best))]
        r = int(ties[np.argmin(basis[ties])])
        _pivot(T, basis, r, col)
        it += 1
