"""Instance generators: random layouts, heavy P3s and the two hardness
constructions on rectilinear embeddings of cubic planar graphs.

Every construction is emitted through an _Emitter, so point ids come out in
contiguous blocks, one block per role (vertex disk, chain disk, blocker...).
Heavy groups are exactly coincident copies.
"""
import math
import bisect
import logging
from fractions import Fraction
from dataclasses import dataclass, field

import numpy as np
import networkx as nx

from diskscale import DEFAULT_SEED
from diskscale.errors import ConstructionError, InstanceFormatError
from diskscale.geometry import Instance, Point, RadiusAssignment, DistanceTable, dist2

DIRECTIONS = {'up': (0, 1), 'down': (0, -1), 'left': (-1, 0), 'right': (1, 0)}
VARIANTS = ['strict-enlarge', 'unit-min']
MAX_BENDS = 3


# =============================================================================
# Random instances
# =============================================================================
def gen_random(n, k, r_min, r_max, box_size=4, seed=None) -> Instance:
    """n points on the grid of spacing 1/(10 * box_size) inside [0, box_size]^2"""

    if n < 1:
        raise InstanceFormatError(f"need at least one point, got n={n}")
    if isinstance(box_size, bool) or int(box_size) != box_size or box_size < 1:
        raise InstanceFormatError(f"box size must be a positive integer, got {box_size!r}")

    box = int(box_size)
    resolution = 10 * box
    rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
    ticks = rng.integers(0, box * resolution, size=(n, 2), endpoint=True)
    coords = [(Fraction(int(x), resolution), Fraction(int(y), resolution)) for x, y in ticks]
    return Instance.from_coordinates(coords, r_min, r_max, k)


# =============================================================================
# Heavy P3s
# =============================================================================
@dataclass(frozen=True)
class HeavySpec():
    """A group of multiplicity coincident copies of center; ids are assigned on emission"""

    center: Point
    multiplicity: int = 1

    @classmethod
    def at(cls, x, y, multiplicity=1):
        return cls(Point(Fraction(x), Fraction(y), 0), multiplicity)


def make_heavy_p3(left: HeavySpec, mid: HeavySpec, right: HeavySpec, xi, start_id=0) -> list:
    xi = Fraction(xi)
    if not 1 < xi <= 2:
        raise ConstructionError(f"heavy P3 spacing must lie in (1, 2], got {xi}")
    for spec in (left, mid, right):
        if spec.multiplicity < 1:
            raise ConstructionError(f"multiplicity must be positive, got {spec.multiplicity}")

    a, b, c = left.center, mid.center, right.center
    if 2 * b.x != a.x + c.x or 2 * b.y != a.y + c.y or dist2(a, b) != xi * xi:
        raise ConstructionError(f"heavy P3 centers {a}, {b}, {c} are not collinear at spacing {xi}")

    points = []
    for spec in (left, mid, right):
        x, y = spec.center.x, spec.center.y
        base = start_id + len(points)
        points.extend(Point(x, y, base + i) for i in range(spec.multiplicity))
    return points


def heavy_p3_instance(delta, theta, xi, k, r_min, r_max) -> Instance:
    """A standalone delta-theta-heavy P3 on the x axis"""
    specs = [HeavySpec.at(0, 0, delta), HeavySpec.at(xi, 0, theta), HeavySpec.at(2 * Fraction(xi), 0, delta)]
    return Instance(make_heavy_p3(*specs, xi), r_min, r_max, k)


# =============================================================================
# Embedded graphs
# =============================================================================
def _direction(a, b):
    dx, dy = b[0] - a[0], b[1] - a[1]
    if (dx == 0) == (dy == 0):
        return None
    return ((dx > 0) - (dx < 0), (dy > 0) - (dy < 0))


def _grid_int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceFormatError(f"{what} must be an integer grid coordinate, got {value!r}")
    return value


@dataclass
class EmbeddedGraph():
    """Rectilinear grid embedding: vertex positions, a free direction per
    vertex and one route (list of corners, from u to v) per edge (u, v)"""

    positions: dict
    free: dict
    routes: dict

    def __post_init__(self):
        self.graph = nx.Graph()
        self.graph.add_nodes_from(sorted(self.positions))
        self.graph.add_edges_from(self.routes)

    @classmethod
    def from_dict(cls, data):
        try:
            vertices = list(data['vertices'])
            positions = {int(v['id']): (_grid_int(v['x'], 'x'), _grid_int(v['y'], 'y')) for v in vertices}
            free = {int(v['id']): str(v['free']) for v in vertices}
            routes = {}
            for e in data['edges']:
                edge = (int(e['u']), int(e['v']))
                routes[edge] = tuple((_grid_int(x, 'x'), _grid_int(y, 'y')) for x, y in e['route'])
        except (KeyError, TypeError, ValueError) as err:
            raise InstanceFormatError(f"malformed embedding: {err!r}")

        if len(positions) != len(vertices):
            raise InstanceFormatError("duplicate vertex ids in embedding")
        for v, direction in free.items():
            if direction not in DIRECTIONS:
                raise InstanceFormatError(f"vertex {v}: free direction {direction!r} is not one of {list(DIRECTIONS)}")
        for (u, v), route in routes.items():
            if u not in positions or v not in positions:
                raise InstanceFormatError(f"edge {(u, v)} names an unknown vertex")
            if len(route) < 2 or route[0] != positions[u] or route[-1] != positions[v]:
                raise InstanceFormatError(f"route of edge {(u, v)} must run from {positions[u]} to {positions[v]}")
        return cls(positions, free, routes)

    def to_dict(self):
        return {'vertices': [{'id': v, 'x': x, 'y': y, 'free': self.free[v]}
                             for v, (x, y) in sorted(self.positions.items())],
                'edges': [{'u': u, 'v': v, 'route': [list(c) for c in route]}
                          for (u, v), route in self.routes.items()]}

    @property
    def eta(self):
        return len(self.positions)

    def segment_lengths(self, edge) -> list:
        route = self.routes[edge]
        return [abs(b[0] - a[0]) + abs(b[1] - a[1]) for a, b in zip(route, route[1:])]

    def check(self):
        """Raise ConstructionError unless the embedding can host a construction"""

        for v in self.graph:
            if self.graph.degree[v] != 3:
                raise ConstructionError(f"vertex {v} has degree {self.graph.degree[v]}; the graph must be cubic")

        occupied = {p: ('vertex', v) for v, p in self.positions.items()}
        for edge, route in self.routes.items():
            directions = []
            for s, (a, b) in enumerate(zip(route, route[1:])):
                d = _direction(a, b)
                if d is None:
                    raise ConstructionError(f"edge {edge} has a degenerate or diagonal segment", segment=(edge, s))
                if directions and (d == directions[-1] or d == (-directions[-1][0], -directions[-1][1])):
                    raise ConstructionError(f"edge {edge} does not turn between segments", segment=(edge, s))
                directions.append(d)

                length = abs(b[0] - a[0]) + abs(b[1] - a[1])
                # The terminal vertex is already occupied by its own entry
                stop = length if s == len(route) - 2 else length + 1
                for t in range(1, stop):
                    p = (a[0] + d[0] * t, a[1] + d[1] * t)
                    if p in occupied:
                        raise ConstructionError(f"edge {edge} collides with {occupied[p]} at {p}", segment=(edge, s))
                    occupied[p] = ('edge', edge)

            if len(directions) - 1 > MAX_BENDS:
                raise ConstructionError(f"edge {edge} has {len(directions) - 1} bends", segment=(edge, len(directions) - 1))

            u, v = edge
            for w, d in ((u, directions[0]), (v, (-directions[-1][0], -directions[-1][1]))):
                if DIRECTIONS[self.free[w]] == d:
                    raise ConstructionError(f"edge {edge} leaves vertex {w} in its free direction", segment=(edge, 0))


def is_vertex_cover(g: nx.Graph, cover) -> bool:
    cover = set(cover)
    return all(u in cover or v in cover for u, v in g.edges)


def is_independent_set(g: nx.Graph, independent) -> bool:
    independent = set(independent)
    return not any(u in independent and v in independent for u, v in g.edges)


# =============================================================================
# Reduction artifacts
# =============================================================================
@dataclass(frozen=True)
class PointRole():
    kind: str
    key: tuple
    ids: range


@dataclass
class ReductionArtifact():
    """An emitted instance plus the role of every point and the derived constants

    parameters holds scalars only; layout holds per-edge and per-tile structure.
    """

    instance: Instance
    roles: list
    parameters: dict = field(default_factory=dict)
    layout: dict = field(default_factory=dict)

    def __post_init__(self):
        self.lookup = {(role.kind, role.key): role.ids for role in self.roles}
        self._starts = [role.ids.start for role in self.roles]
        expected = 0
        for role in self.roles:
            assert role.ids.start == expected and len(role.ids) >= 1, f"role {role.kind}{role.key} breaks the id partition"
            expected = role.ids.stop
        assert expected == self.instance.n, "every point has exactly one role"
        assert len(self.lookup) == len(self.roles), "role keys are unique"

    def ids(self, kind, key) -> range:
        return self.lookup[(kind, tuple(key))]

    def role_of(self, point_id) -> PointRole:
        return self.roles[bisect.bisect_right(self._starts, point_id) - 1]

    def of_kind(self, kind) -> list:
        return [role for role in self.roles if role.kind == kind]

    def __str__(self):
        kinds = {}
        for role in self.roles:
            kinds[role.kind] = kinds.get(role.kind, 0) + len(role.ids)
        return f"ReductionArtifact({self.parameters.get('construction')}, {self.instance}, {kinds})"


class _Emitter():
    """Collects points in role blocks; final coordinates are pre-frame times scale"""

    def __init__(self, scale=1):
        self.scale = Fraction(scale)
        self.points = []
        self.roles = []

    def emit(self, kind, key, position, count=1):
        start = len(self.points)
        x = Fraction(position[0]) * self.scale
        y = Fraction(position[1]) * self.scale
        self.points.extend(Point(x, y, i) for i in range(start, start + count))
        self.roles.append(PointRole(kind, tuple(key), range(start, start + count)))

    def artifact(self, r_min, r_max, k, parameters, layout):
        inst = Instance(self.points, r_min, r_max, k)
        return ReductionArtifact(inst, self.roles, parameters, layout)


def _scale_factor(g: EmbeddedGraph, period, separation) -> int:
    """Smallest integer gamma > separation with L * gamma / period integral for every segment length L"""

    P = Fraction(period).numerator
    step = 1
    for edge in g.routes:
        for L in g.segment_lengths(edge):
            step = math.lcm(step, P // math.gcd(L, P))
    return step * (math.floor(Fraction(separation) / step) + 1)


def _walk(g: EmbeddedGraph, edge, gamma, segment_gaps):
    """Pre-frame disk positions along a route; segment_gaps(s, lam, terminal) lists the gaps of segment s

    Returns the positions strictly between the end vertices.
    """

    route = [(Fraction(x * gamma), Fraction(y * gamma)) for x, y in g.routes[edge]]
    lengths = g.segment_lengths(edge)
    positions = []
    for s, (a, b) in enumerate(zip(route, route[1:])):
        d = _direction(a, b)
        gaps = segment_gaps(s, lengths[s], s == len(lengths) - 1)
        if sum(gaps) != lengths[s] * gamma:
            raise ConstructionError(f"gaps of edge {edge} do not fill the segment", segment=(edge, s))
        offset = Fraction(0)
        for gap in gaps:
            offset += gap
            positions.append((a[0] + d[0] * offset, a[1] + d[1] * offset))
    assert positions[-1] == route[-1], "chain ends on the terminal vertex"
    return positions[:-1]


def _free_offset(g, v, distance):
    x, y = g.positions[v]
    dx, dy = DIRECTIONS[g.free[v]]
    return (x, y, dx * distance, dy * distance)


# =============================================================================
# Vertex cover: shrinking chains
# =============================================================================
def vc_shrink_constants(r_min) -> dict:
    r_min = Fraction(r_min)
    varsigma = (1 - r_min) / 1000
    alpha = math.ceil(2 / (1 - r_min - varsigma))
    beta = 2 * math.ceil(Fraction(2 * alpha - 2, 3))
    mu = Fraction(2 * alpha + 3 * beta, 3 * beta + 1)
    return {'varsigma': varsigma, 'alpha': alpha, 'beta': beta, 'mu': mu}


def gen_vc_shrink(g: EmbeddedGraph, kappa, r_min, r_max=None) -> ReductionArtifact:
    r_min = Fraction(r_min)
    if not 0 < r_min < 1:
        raise ConstructionError(f"shrinking needs 0 < r_min < 1, got {r_min}")
    g.check()

    c = vc_shrink_constants(r_min)
    alpha, beta, mu = c['alpha'], c['beta'], c['mu']
    normal = Fraction(2 * alpha - 1)
    compressed = 2 * alpha - mu
    period = 9 * beta * (2 * alpha - 1)
    gamma = _scale_factor(g, period, 4 * alpha)
    eta = g.eta

    lam = {edge: [L * gamma // (3 * beta * (2 * alpha - 1)) for L in g.segment_lengths(edge)] for edge in g.routes}
    p3_per_edge = {edge: beta * sum(ls) for edge, ls in lam.items()}
    lambda_sum = sum(sum(ls) for ls in lam.values())
    k_fix = eta * eta * sum(p3_per_edge.values())
    k = k_fix + kappa
    theta = k + 1

    def segment_gaps(edge):
        def gaps(s, L, terminal):
            lam_s = lam[edge][s]
            if not terminal:
                return [normal] * (3 * beta * lam_s)
            return [normal] * (3 * beta) + [compressed] * (3 * beta + 1) + [normal] * (3 * beta * (lam_s - 2))
        return gaps

    emitter = _Emitter(Fraction(1, alpha))
    for v in sorted(g.positions):
        x, y = g.positions[v]
        emitter.emit('vertex', (v,), (x * gamma, y * gamma))
    for v in sorted(g.positions):
        x, y, dx, dy = _free_offset(g, v, normal)
        emitter.emit('blocker', (v,), (x * gamma + dx, y * gamma + dy), theta)
    for edge in g.routes:
        chain = _walk(g, edge, gamma, segment_gaps(edge))
        assert len(chain) == 3 * p3_per_edge[edge], "3q chain disks per edge"
        for j, position in enumerate(chain, start=1):
            emitter.emit('chain', edge + (j,), position, theta if j % 3 == 2 else eta * eta)

    parameters = {'construction': 'vc-shrink', 'kappa': kappa, 'eta': eta, **c,
                  'gamma': gamma, 'theta': theta, 'k_fix': k_fix, 'lambda_sum': lambda_sum,
                  'k_fix_literal': eta * eta * lambda_sum, 'heavy_p3': sum(p3_per_edge.values())}
    logging.info(f"vc-shrink constants: alpha={alpha}, beta={beta}, mu={mu}, gamma={gamma}, "
                 f"k_fix={k_fix}, k={k}, theta={theta}")
    art = emitter.artifact(r_min, r_min if r_max is None else r_max, k, parameters,
                           {'lambda': lam, 'p3_per_edge': p3_per_edge, 'graph': g})
    logging.info(f"Emitted {art}")
    return art


def build_vc_forward_solution(art: ReductionArtifact, cover) -> RadiusAssignment:
    """Shrink p_v for v in cover; per edge uv, shrink every p_3i if u is in cover, else every p_3i-2

    No validity promise when cover is not a vertex cover.
    """

    cover = set(cover)
    graph = art.layout['graph'].graph
    unknown = cover - set(graph)
    if unknown:
        raise InstanceFormatError(f"vertices {sorted(unknown)} are not in the embedded graph")

    radii = np.ones(art.instance.n)
    shrink = float(art.instance.r_min)
    for v in cover:
        ids = art.ids('vertex', (v,))
        radii[ids.start:ids.stop] = shrink
    for (u, v), q in art.layout['p3_per_edge'].items():
        for j in range(3 if u in cover else 1, 3 * q + 1, 3):
            ids = art.ids('chain', (u, v, j))
            radii[ids.start:ids.stop] = shrink
    return RadiusAssignment(radii)


def decode_vc_cover(art: ReductionArtifact, r: RadiusAssignment) -> set:
    return {role.key[0] for role in art.of_kind('vertex') if r.radii[role.ids.start] != 1.0}


# =============================================================================
# Independent set: enlarging isolated P3s
# =============================================================================
def is_enlarge_constants(r_min, variant='strict-enlarge', r_max=None) -> dict:
    r_min = Fraction(r_min)
    if variant == 'strict-enlarge':
        if r_min <= 1:
            raise ConstructionError(f"strict-enlarge needs r_min > 1, got {r_min}")
        r_eff = r_min
    elif variant == 'unit-min':
        if r_min != 1 or r_max is None or Fraction(r_max) <= 1:
            raise ConstructionError("unit-min needs r_min = 1 and r_max > 1")
        r_eff = min(Fraction(r_max), Fraction(3, 2))
    else:
        raise ConstructionError(f"unknown variant {variant!r}; use one of {VARIANTS}")

    alpha = min(r_eff, Fraction(3, 2)) + 1
    beta = 2 * r_eff
    mu = math.floor(beta / min(alpha, r_eff - 1)) + 1
    return {'variant': variant, 'r_eff': r_eff, 'alpha': alpha, 'beta': beta, 'mu': mu}


def gen_is_enlarge(g: EmbeddedGraph, kappa, r_min, variant='strict-enlarge', r_max=None) -> ReductionArtifact:
    c = is_enlarge_constants(r_min, variant, r_max)
    g.check()

    alpha, beta, mu, r_eff = c['alpha'], c['beta'], c['mu'], c['r_eff']
    unit = alpha + beta
    gamma = _scale_factor(g, 2 * (mu + 1) * unit, 2 * unit)
    eta = g.eta

    lam = {edge: [int(L * gamma / unit) for L in g.segment_lengths(edge)] for edge in g.routes}
    p3_per_edge = {edge: sum(ls) for edge, ls in lam.items()}
    lambda_sum = sum(p3_per_edge.values())
    k_fix = eta * eta * lambda_sum
    k = k_fix + 2 * eta - kappa
    if kappa < 0 or k < 0:
        raise ConstructionError(f"kappa={kappa} leaves a negative budget")
    theta = k + 1
    half = alpha / 2
    squeezed = beta - beta / mu

    def segment_gaps(edge):
        def gaps(s, L, terminal):
            lam_s = lam[edge][s]
            if not terminal:
                return [beta, half, half] * lam_s
            return ([beta, half, half] + [squeezed, half, half] * mu
                    + [beta, half, half] * (lam_s - mu - 1) + [beta])
        return gaps

    emitter = _Emitter()
    for v in sorted(g.positions):
        x, y, dx, dy = _free_offset(g, v, 1)
        cx, cy = x * gamma, y * gamma
        emitter.emit('vertex', (v,), (cx, cy))
        emitter.emit('vertex_prime', (v,), (cx + dx * half, cy + dy * half), theta)
        emitter.emit('vertex_neg', (v,), (cx + dx * alpha, cy + dy * alpha), 2)
    for edge in g.routes:
        chain = _walk(g, edge, gamma, segment_gaps(edge))
        assert len(chain) == 3 * p3_per_edge[edge], "three disks per P3"
        for j, position in enumerate(chain, start=1):
            emitter.emit('chain', edge + (j,), position, theta if j % 3 == 2 else eta * eta)

    r_max = r_min if r_max is None else r_max
    parameters = {'construction': 'is-enlarge', 'kappa': kappa, 'eta': eta, **c,
                  'gamma': gamma, 'theta': theta, 'k_fix': k_fix, 'lambda_sum': lambda_sum}
    logging.info(f"is-enlarge constants: alpha={alpha}, beta={beta}, mu={mu}, gamma={gamma}, "
                 f"k_fix={k_fix}, k={k}, theta={theta}")
    art = emitter.artifact(r_min, r_max, k, parameters,
                           {'lambda': lam, 'p3_per_edge': p3_per_edge, 'graph': g})
    logging.info(f"Emitted {art}")
    return art


def build_is_forward_solution(art: ReductionArtifact, independent) -> RadiusAssignment:
    """Enlarge p_v for v in the set and both negation copies for the others; per
    edge uv enlarge every p_3i-2 unless u is in the set and v is not"""

    chosen = set(independent)
    graph = art.layout['graph'].graph
    unknown = chosen - set(graph)
    if unknown:
        raise InstanceFormatError(f"vertices {sorted(unknown)} are not in the embedded graph")

    radii = np.ones(art.instance.n)
    grow = float(art.parameters['r_eff'])
    for v in graph:
        ids = art.ids('vertex', (v,)) if v in chosen else art.ids('vertex_neg', (v,))
        radii[ids.start:ids.stop] = grow
    for (u, v), q in art.layout['p3_per_edge'].items():
        first = 3 if u in chosen and v not in chosen else 1
        for j in range(first, 3 * q + 1, 3):
            ids = art.ids('chain', (u, v, j))
            radii[ids.start:ids.stop] = grow
    return RadiusAssignment(radii)


def decode_is_set(art: ReductionArtifact, r: RadiusAssignment) -> set:
    return {role.key[0] for role in art.of_kind('vertex') if r.radii[role.ids.start] != 1.0}


# =============================================================================
# Structural checks
# =============================================================================
def _chain_ids(art, edge):
    u, v = edge
    q = art.layout['p3_per_edge'][edge]
    inner = [art.ids('chain', (u, v, j)).start for j in range(1, 3 * q + 1)]
    return [art.ids('vertex', (u,)).start] + inner + [art.ids('vertex', (v,)).start]


def _representative_table(art):
    reps = [role.ids.start for role in art.roles]
    points = [art.instance.points[i] for i in reps]
    table = DistanceTable(points)
    index = {p: i for i, p in enumerate(reps)}
    return reps, table, index


def _unit_edges(reps, table):
    unit = table.le(4)
    np.fill_diagonal(unit, False)
    return {(reps[a], reps[b]) for a, b in np.argwhere(np.triu(unit, 1))}


def check_vc_chain_spacing(art: ReductionArtifact) -> list:
    """Unit graph on group representatives must be exactly the chains plus vertex-blocker pairs

    Returns (reason, a, b) tuples; empty when the layout is right.
    """

    alpha = art.parameters['alpha']
    reps, table, index = _representative_table(art)
    spacing2 = Fraction(2 * alpha - 1, alpha) ** 2

    expected = set()
    violations = []
    for edge in art.layout['p3_per_edge']:
        chain = _chain_ids(art, edge)
        for a, b in zip(chain, chain[1:]):
            expected.add((min(a, b), max(a, b)))
            if not table.within(index[a], index[b], spacing2):
                violations.append(('spacing', a, b))
    for role in art.of_kind('blocker'):
        v = art.ids('vertex', role.key).start
        expected.add((min(v, role.ids.start), max(v, role.ids.start)))

    found = _unit_edges(reps, table)
    violations += [('missing', a, b) for a, b in sorted(expected - found)]
    violations += [('extra', a, b) for a, b in sorted(found - expected)]
    return violations


def check_is_isolation(art: ReductionArtifact) -> list:
    """Inter-P3 gaps must lie in (max(2r - alpha, r + 1), 2r] and the unit
    graph on representatives must be a disjoint union of induced P3s"""

    r, alpha = art.parameters['r_eff'], art.parameters['alpha']
    lo = max(2 * r - alpha, r + 1)
    hi = 2 * r
    reps, table, index = _representative_table(art)

    violations = []
    triples = []
    for edge in art.layout['p3_per_edge']:
        chain = _chain_ids(art, edge)
        for i in range(0, len(chain) - 1, 3):
            a, b = index[chain[i]], index[chain[i + 1]]
            if table.within(a, b, lo * lo) or not table.within(a, b, hi * hi):
                violations.append(('gap', chain[i], chain[i + 1]))
        triples += [tuple(chain[i:i + 3]) for i in range(1, len(chain) - 1, 3)]
    for role in art.of_kind('vertex'):
        triples.append((role.ids.start, art.ids('vertex_prime', role.key).start, art.ids('vertex_neg', role.key).start))

    expected = set()
    for a, b, c in triples:
        expected.update({(min(a, b), max(a, b)), (min(b, c), max(b, c))})
    found = _unit_edges(reps, table)
    violations += [('missing', a, b) for a, b in sorted(expected - found)]
    violations += [('extra', a, b) for a, b in sorted(found - expected)]
    return violations
