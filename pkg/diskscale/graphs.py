from itertools import combinations
from dataclasses import dataclass, field

import numpy as np
import networkx as nx

from diskscale.geometry import GraphClass, DistanceTable, _compare_le


# =============================================================================
# P3 machinery and recognizers
# =============================================================================
def find_induced_p3(g: nx.Graph):
    """Lexicographically smallest (u, v, w) with uv, vw edges and uw a non-edge

    v is the middle vertex. Returns None iff g is a cluster graph.
    """

    adj = g.adj
    for u in sorted(g):
        nu = adj[u]
        for v in sorted(nu):
            for w in sorted(adj[v]):
                if w != u and w not in nu:
                    return (u, v, w)
    return None


def all_induced_p3(g: nx.Graph) -> list:
    """Every induced P3 as (u, v, w) with middle v and u < w"""

    adj = g.adj
    triples = []
    for v in sorted(g):
        for u, w in combinations(sorted(adj[v]), 2):
            if w not in adj[u]:
                triples.append((u, v, w))
    return triples


def _components_are_cliques(g):
    degree = g.degree
    for comp in nx.connected_components(g):
        s = len(comp)
        if sum(degree[v] for v in comp) != s * (s - 1):
            return False
    return True


def recognize(g: nx.Graph, cls: GraphClass) -> bool:
    n = g.number_of_nodes()
    m = g.number_of_edges()
    if cls is GraphClass.CLUSTER:
        return _components_are_cliques(g)
    if cls is GraphClass.COMPLETE:
        return m == n * (n - 1) // 2
    if cls is GraphClass.CONNECTED:
        return n <= 1 or nx.is_connected(g)
    if cls is GraphClass.EDGELESS:
        return m == 0
    raise ValueError(f"no recognizer for {cls}")


@dataclass
class P3Packing():
    triples: list = field(default_factory=list)
    covered: set = field(default_factory=set)

    def __len__(self):
        return len(self.triples)

    def add(self, triple):
        assert not self.covered.intersection(triple), "packing triples must be disjoint"
        self.triples.append(tuple(triple))
        self.covered.update(triple)


def maximal_p3_packing(g: nx.Graph) -> P3Packing:
    """Greedy packing, always taking the smallest P3 among uncovered vertices"""

    packing = P3Packing()
    remaining = set(g)
    while True:
        triple = find_induced_p3(g.subgraph(remaining))
        if triple is None:
            return packing
        packing.add(triple)
        remaining.difference_update(triple)


def p3_packing_lower_bound(g: nx.Graph) -> int:
    """Disjoint P3s each need their own scaling operation"""
    return len(maximal_p3_packing(g))


def clusters_of(g: nx.Graph) -> list:
    """Connected components of a cluster graph, ordered by smallest member"""
    assert recognize(g, GraphClass.CLUSTER), "clusters_of needs a cluster graph"
    return sorted((set(c) for c in nx.connected_components(g)), key=min)


# =============================================================================
# Matching and cliques
# =============================================================================
@dataclass
class BipartiteMatching():
    size: int
    pairs: list
    cover_left: set
    cover_right: set

    @property
    def cover_size(self):
        return len(self.cover_left) + len(self.cover_right)


def max_bipartite_matching(left: int, right: int, edges) -> BipartiteMatching:
    """Maximum matching and a minimum vertex cover (König) of a bipartite graph

    Vertices are 0..left-1 and 0..right-1; edges are (left, right) pairs.
    """

    B = nx.Graph()
    top = [('L', i) for i in range(left)]
    B.add_nodes_from(top, bipartite=0)
    B.add_nodes_from((('R', j) for j in range(right)), bipartite=1)
    B.add_edges_from((('L', int(a)), ('R', int(b))) for a, b in edges)

    matching = nx.bipartite.hopcroft_karp_matching(B, top_nodes=top)
    cover = nx.bipartite.to_vertex_cover(B, matching, top_nodes=top)
    pairs = sorted((u[1], v[1]) for u, v in matching.items() if u[0] == 'L')

    return BipartiteMatching(size=len(pairs),
                             pairs=pairs,
                             cover_left={c[1] for c in cover if c[0] == 'L'},
                             cover_right={c[1] for c in cover if c[0] == 'R'})


def max_clique_udg(points) -> set:
    """Maximum clique of the unit disk graph of points (positions in the list)

    For every pair (a, b) at distance <= 2, taken as the diametral pair, the
    candidates are the points of the lens within |ab| of both. Each side of
    line ab is a clique, so the complement on the candidates is bipartite and
    the best clique is the candidates minus a minimum vertex cover.
    """

    n = len(points)
    if n == 0:
        return set()

    table = DistanceTable(points)
    D, X, Y = table.num, table.x, table.y
    adjacent = _compare_le(D, 4 * table.scale2)

    best = {0}
    for a in range(n):
        for b in range(a + 1, n):
            if not adjacent[a, b]:
                continue
            dab = D[a, b]
            cand = np.flatnonzero((D[a] <= dab) & (D[b] <= dab))
            if len(cand) <= len(best):
                continue

            cross = (X[b] - X[a]) * (Y[cand] - Y[a]) - (Y[b] - Y[a]) * (X[cand] - X[a])
            # Points on line ab go left
            left = cand[cross >= 0]
            right = cand[cross < 0]
            far = ~adjacent[np.ix_(left, right)]
            matching = max_bipartite_matching(len(left), len(right), np.argwhere(far))
            if len(cand) - matching.size <= len(best):
                continue

            best = {int(left[i]) for i in range(len(left)) if i not in matching.cover_left}
            best |= {int(right[j]) for j in range(len(right)) if j not in matching.cover_right}
    return best
