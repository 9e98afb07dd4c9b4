"""Radius feasibility for a fixed scaled set and target graph.

The program has one variable x_p per scaled point plus the slack eps, and is
solved with a randomized incremental (Seidel) LP: the dimension is at most
k + 1 while the number of half-planes grows with n * k.
"""
import logging
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import networkx as nx
from scipy.spatial.distance import pdist

from diskscale import DEFAULTS, DEFAULT_SEED, TAU, EPS_MIN_FACTOR
from diskscale.errors import IllConditionedLpError, UnscaledMismatchError
from diskscale.geometry import RadiusAssignment, DistanceTable, build_disk_graph

FEASIBILITY_TOL = float(DEFAULTS['lp_feasibility_tol'])
RESIDUAL_TOL = float(DEFAULTS['lp_residual_tol'])
PIVOT_TOL = 1e-12


# =============================================================================
# Data model
# =============================================================================
@dataclass
class LpProblem():
    """maximize objective . x  subject to  A x <= b, inside the box |x_j| <= bound"""

    A: np.ndarray
    b: np.ndarray
    objective: np.ndarray
    bound: float
    labels: list = field(default_factory=list)

    def __post_init__(self):
        self.A = np.asarray(self.A, dtype=np.float64).reshape(-1, len(self.objective))
        self.b = np.asarray(self.b, dtype=np.float64)
        self.objective = np.asarray(self.objective, dtype=np.float64)
        assert self.A.shape[0] == len(self.b), "one bound per constraint row"
        assert self.dimension >= 1, "at least one variable"

    @property
    def dimension(self):
        return len(self.objective)

    @property
    def n_constraints(self):
        return len(self.b)

    def residual(self, x):
        return float(np.max(self.A @ x - self.b, initial=0.0))

    def __str__(self):
        return f"LpProblem(d={self.dimension}, m={self.n_constraints})"


@dataclass
class LpSolution():
    eps: float
    x: np.ndarray


@dataclass
class ConscalInput():
    points: list
    scaled: tuple
    target: nx.Graph
    r_min: Fraction
    r_max: Fraction

    def __post_init__(self):
        self.scaled = tuple(sorted(int(p) for p in self.scaled))
        assert set(self.target) == set(range(len(self.points))), "target graph must live on the point ids"
        assert nx.number_of_selfloops(self.target) == 0, "target graph must be loop-free"


def eps_cap(points) -> float:
    """Max pairwise distance + 1; bounds eps when no strict constraint exists"""
    if len(points) < 2:
        return 1.0
    coords = np.array([[float(p.x), float(p.y)] for p in points])
    return float(pdist(coords).max()) + 1.0


def eps_min(cap: float) -> float:
    return EPS_MIN_FACTOR * max(1.0, cap)


# =============================================================================
# Building the program
# =============================================================================
def check_unscaled_consistency(inp: ConscalInput, table: DistanceTable = None):
    """Raise UnscaledMismatchError if H disagrees with G(S \\ T, 1)"""

    table = DistanceTable(inp.points) if table is None else table
    unit = table.le(4)
    scaled = set(inp.scaled)
    free = [i for i in range(len(inp.points)) if i not in scaled]
    adj = inp.target.adj
    for a, i in enumerate(free):
        for j in free[a + 1:]:
            if bool(unit[i, j]) != (j in adj[i]):
                raise UnscaledMismatchError((i, j), bool(unit[i, j]))


def build_conscal_lp(inp: ConscalInput, table: DistanceTable = None) -> LpProblem:
    table = DistanceTable(inp.points) if table is None else table
    check_unscaled_consistency(inp, table)

    T = inp.scaled
    d = len(T) + 1
    e = d - 1
    column = {p: j for j, p in enumerate(T)}
    r_min, r_max = float(inp.r_min), float(inp.r_max)
    cap = eps_cap(inp.points)
    adj = inp.target.adj
    dist = table.dist

    rows, rhs, labels = [], [], []

    def add(coefs, bound, label):
        row = np.zeros(d)
        for j, c in coefs:
            row[j] += c
        rows.append(row)
        rhs.append(bound)
        labels.append(label)

    for p in T:
        j = column[p]
        add([(j, -1.0)], -r_min, f"x{p} >= r_min")
        add([(j, 1.0)], r_max, f"x{p} <= r_max")
        for u in range(len(inp.points)):
            if u == p or u in column:
                continue
            if u in adj[p]:
                add([(j, -1.0)], 1.0 - dist[p, u], f"x{p} + 1 >= |p{p} - p{u}|")
            else:
                add([(j, 1.0), (e, 1.0)], dist[p, u] - 1.0, f"x{p} + 1 <= |p{p} - p{u}| - eps")

    for a, p in enumerate(T):
        for q in T[a + 1:]:
            if q in adj[p]:
                add([(column[p], -1.0), (column[q], -1.0)], -dist[p, q], f"x{p} + x{q} >= |p{p} - p{q}|")
            else:
                add([(column[p], 1.0), (column[q], 1.0), (e, 1.0)], dist[p, q], f"x{p} + x{q} <= |p{p} - p{q}| - eps")

    add([(e, -1.0)], 0.0, "eps >= 0")
    add([(e, 1.0)], cap, "eps <= cap")

    objective = np.zeros(d)
    objective[e] = 1.0
    return LpProblem(np.array(rows), np.array(rhs), objective,
                     bound=10.0 * max(r_max, cap, 1.0), labels=labels)


# =============================================================================
# Seidel's algorithm
# =============================================================================
def _solve_interval(a, b, c, lo, hi, tol):
    """One variable: maximize c*x subject to a_i*x <= b_i and lo <= x <= hi"""

    for ai, bi in zip(a, b):
        if abs(ai) <= PIVOT_TOL:
            if bi < -tol:
                return None
        elif ai > 0:
            hi = min(hi, bi / ai)
        else:
            lo = max(lo, bi / ai)
    if lo > hi + tol:
        return None
    if lo > hi:
        lo = hi = (lo + hi) / 2
    return np.array([hi if c > 0 else lo])


def _seidel(A, b, c, lo, hi, tol):
    d = len(c)
    if d == 1:
        return _solve_interval(A[:, 0], b, c[0], lo[0], hi[0], tol)

    x = np.where(c > 0, hi, lo)
    for i in range(len(b)):
        a = A[i]
        if a @ x <= b[i] + tol:
            continue

        # The optimum now lies on a.x = b_i: eliminate the largest coefficient
        j = int(np.argmax(np.abs(a)))
        if abs(a[j]) <= PIVOT_TOL:
            return None
        keep = np.arange(d) != j
        coef = -a[keep] / a[j]
        const = b[i] / a[j]

        A2 = A[:i][:, keep] + np.outer(A[:i, j], coef)
        b2 = b[:i] - A[:i, j] * const
        A2 = np.vstack([A2, coef, -coef])
        b2 = np.concatenate([b2, [hi[j] - const, const - lo[j]]])
        c2 = c[keep] + c[j] * coef

        y = _seidel(A2, b2, c2, lo[keep], hi[keep], tol)
        if y is None:
            return None
        x = np.empty(d)
        x[keep] = y
        x[j] = const + coef @ y
    return x


def solve_lp_max_eps(lp: LpProblem, rng_seed=None) -> Optional[LpSolution]:
    """Optimal vertex of the boxed program, or None if infeasible

    Constraint order is shuffled with a generator seeded by rng_seed, so the
    result is deterministic per seed.
    """

    seed = DEFAULT_SEED if rng_seed is None else rng_seed
    rng = np.random.default_rng(seed)
    order = rng.permutation(lp.n_constraints)
    d = lp.dimension
    lo = np.full(d, -lp.bound)
    hi = np.full(d, lp.bound)
    scale = max(1.0, lp.bound)

    x = _seidel(lp.A[order], lp.b[order], lp.objective, lo, hi, FEASIBILITY_TOL * scale)
    if x is None:
        return None

    residual = lp.residual(x)
    if residual > RESIDUAL_TOL * scale:
        raise IllConditionedLpError(f"LP optimum violates a constraint by {residual:.3g}")
    return LpSolution(eps=float(x[-1]), x=x[:-1])


def conscal(inp: ConscalInput, rng_seed=None, table: DistanceTable = None) -> Optional[RadiusAssignment]:
    """Radii realizing the target graph with the given scaled set, if any

    Scaled radii are x_p + tau/2 so that edges gain the tolerance margin; the
    result is re-checked against the target graph.
    """

    table = DistanceTable(inp.points) if table is None else table
    lp = build_conscal_lp(inp, table)
    solution = solve_lp_max_eps(lp, rng_seed)
    cap = eps_cap(inp.points)
    if solution is None or solution.eps < eps_min(cap):
        logging.debug(f"ConScal infeasible for T={inp.scaled} ({lp})")
        return None

    radii = np.ones(len(inp.points))
    radii[list(inp.scaled)] = solution.x + TAU / 2
    r = RadiusAssignment(radii)

    realized = build_disk_graph(inp.points, r)
    if set(map(frozenset, realized.edges)) != set(map(frozenset, inp.target.edges)):
        raise IllConditionedLpError(f"radii for T={inp.scaled} do not realize the target graph")
    return r
