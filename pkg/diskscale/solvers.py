"""Decision algorithms for scaling a unit disk graph into a graph class.

solve_xp guesses the scaled set and, per scaled disk, its furthest unscaled
neighbour; solve_cluster_fpt replaces the guess of the scaled set by bounded
branching on colorful P3s; solve_complete reduces to a unit disk clique.
All of them hand the final target graph to the LP in diskscale.lp.
"""
import time
import logging
from itertools import combinations, product
from dataclasses import dataclass, field

import numpy as np
import networkx as nx

from diskscale import DEFAULT_SEED
from diskscale.errors import UsageError
from diskscale.geometry import GraphClass, Instance, RadiusAssignment
from diskscale.graphs import recognize, maximal_p3_packing, clusters_of, max_clique_udg
from diskscale.lp import ConscalInput, conscal
from diskscale.models import SolveStats, SolveOutcome, Deadline
from diskscale.oracle import OracleBudget, brute_force_solve

ALGORITHMS = ['auto', 'xp', 'cluster-fpt', 'complete', 'oracle']

RED, BLUE, GREEN = 0, 1, 2


# =============================================================================
# Shared search context
# =============================================================================
class _Search():
    """Distance predicates and counters for one solve call"""

    def __init__(self, inst: Instance, cls: GraphClass, algorithm, deadline=None, seed=None):
        self.inst = inst
        self.cls = cls
        self.n = inst.n
        self.k = inst.k
        self.deadline = deadline or Deadline()
        self.seed = DEFAULT_SEED if seed is None else seed
        self.stats = SolveStats(algorithm)
        self.started = time.perf_counter()

        table = inst.distances
        self.table = table
        self.num = table.num
        self.unit = table.le(4)
        np.fill_diagonal(self.unit, False)
        self.reach_min = table.le((inst.r_min + 1) ** 2)
        self.reach_max = table.le((inst.r_max + 1) ** 2)
        self.pair_min = table.le((2 * inst.r_min) ** 2)
        self.pair_max = table.le((2 * inst.r_max) ** 2)

    def unit_graph(self, nodes=None) -> nx.Graph:
        nodes = range(self.n) if nodes is None else sorted(nodes)
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        for a, i in enumerate(nodes):
            for j in nodes[a + 1:]:
                if self.unit[i, j]:
                    g.add_edge(i, j)
        return g

    def try_target(self, scaled, target):
        self.stats.lp_calls += 1
        inp = ConscalInput(self.inst.points, scaled, target, self.inst.r_min, self.inst.r_max)
        return conscal(inp, rng_seed=self.seed, table=self.table)

    def finish(self, witness=None):
        self.stats.millis = (time.perf_counter() - self.started) * 1000
        outcome = SolveOutcome(witness is not None, witness, self.stats)
        logging.info(f"{self.stats.algorithm} on n={self.n}, k={self.k}, class={self.cls.value}: {outcome}")
        return outcome


# =============================================================================
# XP: guess the scaled set and one furthest neighbour per scaled disk
# =============================================================================
def _far_options(search: _Search, p, unscaled):
    """Possible furthest unscaled neighbours of scaled p, one per distance

    None stands for "no unscaled neighbour" and is only offered when no
    unscaled disk lies within r_min + 1.
    """

    num = search.num
    forced = [u for u in unscaled if search.reach_min[p, u]]
    need = max((num[p, u] for u in forced), default=None)

    options = [] if forced else [None]
    seen = set()
    for u in sorted(unscaled, key=lambda u: (num[p, u], u)):
        if not search.reach_max[p, u] or (need is not None and num[p, u] < need):
            continue
        if num[p, u] in seen:
            continue
        seen.add(num[p, u])
        options.append(u)
    return options


def _scaled_pair_options(search: _Search, p, q):
    if search.pair_min[p, q]:
        return [True]
    if not search.pair_max[p, q]:
        return [False]
    return [True, False]


def _xp_search(search: _Search):
    n, k, cls = search.n, search.k, search.cls
    num = search.num
    full = search.unit_graph()

    for size in range(min(k, n) + 1):
        for T in combinations(range(n), size):
            search.deadline.check()
            scaled = set(T)
            unscaled = [u for u in range(n) if u not in scaled]

            base = full.copy()
            base.remove_edges_from([e for e in full.edges if e[0] in scaled or e[1] in scaled])
            if cls.hereditary and not recognize(base.subgraph(unscaled), cls):
                continue

            far_options = [_far_options(search, p, unscaled) for p in T]
            if any(not opts for opts in far_options):
                continue
            pairs = list(combinations(T, 2))
            pair_options = [_scaled_pair_options(search, p, q) for p, q in pairs]

            for fars in product(*far_options):
                reach_edges = []
                for p, far in zip(T, fars):
                    if far is not None:
                        reach_edges.extend((p, u) for u in unscaled if num[p, u] <= num[p, far])

                for choice in product(*pair_options):
                    search.stats.branches += 1
                    H = base.copy()
                    H.add_edges_from(reach_edges)
                    H.add_edges_from(pair for pair, keep in zip(pairs, choice) if keep)
                    if not recognize(H, cls):
                        continue
                    r = search.try_target(T, H)
                    if r is not None:
                        return r
    return None


def solve_xp(inst: Instance, cls: GraphClass, deadline=None, seed=None) -> SolveOutcome:
    search = _Search(inst, cls, 'xp', deadline, seed)
    return search.finish(_xp_search(search))


# =============================================================================
# FPT algorithm for cluster graphs
# =============================================================================
@dataclass
class ColoredGraph():
    """Complete graph with every pair colored red (non-edge), blue (edge) or green (open)"""

    colors: np.ndarray

    @classmethod
    def from_adjacency(cls, adjacency):
        colors = np.where(adjacency, BLUE, RED).astype(np.int8)
        np.fill_diagonal(colors, RED)
        return cls(colors)

    @property
    def n(self):
        return len(self.colors)

    def copy(self):
        return ColoredGraph(self.colors.copy())

    def color(self, u, v):
        return int(self.colors[u, v])

    def set(self, u, v, color):
        self.colors[u, v] = self.colors[v, u] = color

    def set_block(self, nodes, color):
        idx = np.array(sorted(nodes), dtype=np.int64)
        self.colors[np.ix_(idx, idx)] = color
        self.colors[idx, idx] = RED

    def blue_neighbours(self, u) -> frozenset:
        return frozenset(int(v) for v in np.flatnonzero(self.colors[u] == BLUE))

    def find_colorful_p3(self):
        """First (v, u, w) with uv, uw blue and vw red, scanning centers u ascending"""
        for u in range(self.n):
            blue = np.flatnonzero(self.colors[u] == BLUE)
            if len(blue) < 2:
                continue
            red = np.triu(self.colors[np.ix_(blue, blue)] == RED, 1)
            hits = np.argwhere(red)
            if len(hits):
                a, b = hits[0]
                return (int(blue[a]), u, int(blue[b]))
        return None

    def blue_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from((int(u), int(v)) for u, v in zip(*np.nonzero(np.triu(self.colors == BLUE, 1))))
        return g

    def __str__(self):
        counts = np.bincount(self.colors[np.triu_indices(self.n, 1)], minlength=3)
        return f"ColoredGraph(red={counts[RED]}, blue={counts[BLUE]}, green={counts[GREEN]})"


@dataclass
class ClusterBranchState():
    T: tuple
    F: frozenset
    N: frozenset
    H: ColoredGraph
    far: dict = field(default_factory=dict)
    clo: dict = field(default_factory=dict)

    def __post_init__(self):
        assert not self.F.intersection(self.T), "forbidden disks are never scaled"
        assert not self.N.intersection(self.T), "queued disks are not scaled yet"


def restricted_growth_strings(m, max_blocks):
    """Set partitions of range(m) into at most max_blocks blocks, as block labels"""

    if m == 0:
        yield ()
        return

    def extend(prefix, blocks):
        if len(prefix) == m:
            yield tuple(prefix)
            return
        for label in range(min(blocks + 1, max_blocks)):
            prefix.append(label)
            yield from extend(prefix, max(blocks, label + 1))
            prefix.pop()

    if max_blocks >= 1:
        yield from extend([0], 1)


class _ClusterSearch(_Search):

    def __init__(self, inst, deadline=None, seed=None):
        super().__init__(inst, GraphClass.CLUSTER, 'cluster-fpt', deadline, seed)
        self.G = self.unit_graph()
        self.packing = maximal_p3_packing(self.G)
        remainder = self.G.subgraph(set(range(self.n)) - self.packing.covered)
        self.clusters = clusters_of(remainder)

    def far_options(self, st: ClusterBranchState, w, excluded):
        num = self.num
        options = [None]
        options += sorted(p for p in self.packing.covered if p not in excluded)

        ranked = []
        for cluster in self.clusters:
            others = cluster - {w}
            if others:
                ranked.append((min(num[w, m] for m in others), min(others), cluster))
        ranked.sort(key=lambda t: (t[0], t[1]))
        for _, _, cluster in ranked[:self.k]:
            members = sorted((m for m in cluster if m not in excluded), key=lambda m: (-num[w, m], m))
            options += members[:self.k]

        unique = []
        for o in options:
            if o not in unique:
                unique.append(o)
        return unique

    def clo_options(self, w, excluded, far):
        num = self.num
        d_far = 0 if far is None else num[w, far]
        beyond = [q for q in range(self.n) if q not in excluded and num[w, q] > d_far]
        beyond.sort(key=lambda q: (num[w, q], q))
        return [None] + beyond[:self.k]

    def apply_rule1(self, st: ClusterBranchState, w, far, clo):
        num = self.num
        T1 = st.T + (w,)
        F1 = st.F | {x for x in (far, clo) if x is not None}
        H = st.H.copy()
        X = set()
        skip = set(T1) | st.N
        for x in range(self.n):
            if x in skip:
                continue
            d = num[w, x]
            if far is not None and d <= num[w, far]:
                H.set(w, x, BLUE)
            elif clo is not None and d >= num[w, clo]:
                H.set(w, x, RED)
            else:
                H.set(w, x, GREEN)
                X.add(x)
        if X & F1:
            return None
        N1 = (st.N - {w}) | frozenset(X)
        H.set_block(set(T1) | N1, GREEN)
        return ClusterBranchState(T1, F1, N1, H, {**st.far, w: far}, {**st.clo, w: clo})

    def phase1(self, st: ClusterBranchState):
        self.deadline.check()
        if len(st.T) + len(st.N) > self.k:
            return None

        if st.N:
            candidates = [min(st.N)]
        else:
            Y = st.H.find_colorful_p3()
            if Y is None:
                return self.phase2(st)
            candidates = sorted(set(Y) - set(st.T) - st.F)
            if not candidates:
                return None

        for w in candidates:
            excluded = set(st.T) | st.N | {w}
            for far in self.far_options(st, w, excluded):
                if far is not None and not self.reach_max[w, far]:
                    continue
                for clo in self.clo_options(w, excluded, far):
                    if clo is not None and self.reach_min[w, clo]:
                        continue
                    self.stats.branches += 1
                    child = self.apply_rule1(st, w, far, clo)
                    if child is None:
                        continue
                    r = self.phase1(child)
                    if r is not None:
                        return r
        return None

    def phase2(self, st: ClusterBranchState):
        T = st.T
        H = st.H.copy()
        B = {u: st.H.blue_neighbours(u) for u in T}

        for u, w in combinations(T, 2):
            if not B[u] and not B[w]:
                continue
            if B[u] == B[w]:
                H.set(u, w, BLUE)
            elif not B[u] & B[w]:
                H.set(u, w, RED)
            else:
                logging.debug(f"Rejecting branch T={T}: overlapping blue neighbourhoods of {u} and {w}")
                return None

        X = [u for u in T if not B[u]]
        for labels in restricted_growth_strings(len(X), self.k):
            self.deadline.check()
            self.stats.branches += 1
            final = H.copy()
            for (a, u), (b, w) in combinations(enumerate(X), 2):
                final.set(u, w, BLUE if labels[a] == labels[b] else RED)
            target = final.blue_graph()
            if not recognize(target, GraphClass.CLUSTER):
                continue
            r = self.try_target(T, target)
            if r is not None:
                return r
        return None


def solve_cluster_fpt(inst: Instance, deadline=None, seed=None) -> SolveOutcome:
    if inst.n <= inst.k:
        search = _Search(inst, GraphClass.CLUSTER, 'cluster-fpt', deadline, seed)
        return search.finish(_xp_search(search))

    search = _ClusterSearch(inst, deadline, seed)
    if len(search.packing) >= inst.k + 1:
        logging.debug(f"{len(search.packing)} disjoint P3s exceed the budget {inst.k}")
        return search.finish(None)

    root = ClusterBranchState((), frozenset(), frozenset(), ColoredGraph.from_adjacency(search.unit))
    return search.finish(search.phase1(root))


# =============================================================================
# Complete graphs
# =============================================================================
def solve_complete(inst: Instance, deadline=None, seed=None) -> SolveOutcome:
    search = _Search(inst, GraphClass.COMPLETE, 'complete', deadline, seed)
    n, k = inst.n, inst.k

    if inst.r_max <= 1:
        if recognize(search.unit_graph(), GraphClass.COMPLETE):
            return search.finish(RadiusAssignment.ones(n))
        return search.finish(None)

    iu = np.triu_indices(n, 1)
    unit = search.unit[iu]
    reach = search.reach_max[iu]
    pair = search.pair_max[iu]
    search.stats.branches = 1

    if not pair.all():
        return search.finish(None)

    e1 = ~unit & reach
    e2 = ~reach & pair
    must = set(iu[0][e2].tolist()) | set(iu[1][e2].tolist())
    if len(must) > k:
        return search.finish(None)

    X = sorted((set(iu[0][e1].tolist()) | set(iu[1][e1].tolist())) - must)
    budget = k - len(must)
    clique = max_clique_udg([inst.points[i] for i in X])
    if len(clique) < len(X) - budget:
        return search.finish(None)

    scale = must | {X[i] for i in range(len(X)) if i not in clique}
    witness = RadiusAssignment.ones(n).with_radius(scale, float(inst.r_max)) if scale else RadiusAssignment.ones(n)
    return search.finish(witness)


# =============================================================================
# Dispatcher
# =============================================================================
def solve(inst: Instance, cls: GraphClass, algo='auto', timeout=None, seed=None, budget: OracleBudget = None) -> SolveOutcome:
    """Run one algorithm; auto picks complete, cluster-fpt or xp by class"""

    assert algo in ALGORITHMS, f"unknown algorithm {algo}"
    chosen = algo
    if algo == 'auto':
        chosen = {GraphClass.COMPLETE: 'complete', GraphClass.CLUSTER: 'cluster-fpt'}.get(cls, 'xp')
    if chosen == 'complete' and cls is not GraphClass.COMPLETE:
        raise UsageError(f"the complete solver cannot decide {cls.value}")
    if chosen == 'cluster-fpt' and cls is not GraphClass.CLUSTER:
        raise UsageError(f"the cluster solver cannot decide {cls.value}")

    deadline = Deadline(timeout)
    if chosen == 'xp':
        outcome = solve_xp(inst, cls, deadline, seed)
    elif chosen == 'cluster-fpt':
        outcome = solve_cluster_fpt(inst, deadline, seed)
    elif chosen == 'complete':
        outcome = solve_complete(inst, deadline, seed)
    else:
        outcome = brute_force_solve(inst, cls, budget, seed=seed, deadline=deadline)

    if algo == 'auto':
        outcome.stats.routed_from = 'auto'
    return outcome
