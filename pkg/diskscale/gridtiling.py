"""Grid Tiling instances, their variant transformations and the enlarge-to-
connected construction.

Tiles are indexed (i, j) in [kappa]^2 and hold pairs (a, b) in [eta]^2, all
1-based. Under a relation R, neighbours x_ij and x_(i+1)j must satisfy
a R a' on the first coordinate, and x_ij and x_i(j+1) must satisfy b R b' on
the second.
"""
import math
import logging
import operator
from fractions import Fraction
from itertools import combinations
from dataclasses import dataclass, field

import numpy as np

from diskscale import DEFAULT_SEED
from diskscale.errors import ConstructionError, InstanceFormatError
from diskscale.geometry import RadiusAssignment, DistanceTable
from diskscale.gadgets import ReductionArtifact, _Emitter

RELATIONS = {'<=': operator.le, '<': operator.lt, '>': operator.gt}

# The construction frame has unscaled radius 1/10; emitted instances use radius 1
FRAME = 10
R_MAX_GRID = 10**9


@dataclass
class GridTilingInstance():
    eta: int
    kappa: int
    tiles: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.eta < 1 or self.kappa < 1:
            raise InstanceFormatError(f"eta and kappa must be positive, got {self.eta}, {self.kappa}")
        tiles = {}
        for i in range(1, self.kappa + 1):
            for j in range(1, self.kappa + 1):
                pairs = frozenset(tuple(p) for p in self.tiles.get((i, j), ()))
                for a, b in pairs:
                    if not (1 <= a <= self.eta and 1 <= b <= self.eta):
                        raise InstanceFormatError(f"pair {(a, b)} of tile {(i, j)} is outside [{self.eta}]^2")
                tiles[(i, j)] = pairs
        extra = set(self.tiles) - set(tiles)
        if extra:
            raise InstanceFormatError(f"tiles {sorted(extra)} are outside [{self.kappa}]^2")
        self.tiles = tiles

    @classmethod
    def from_dict(cls, data):
        try:
            tiles = {}
            for key, pairs in data['tiles'].items():
                i, j = (int(t) for t in key.split(','))
                tiles[(i, j)] = [(int(a), int(b)) for a, b in pairs]
            return cls(int(data['eta']), int(data['kappa']), tiles)
        except (KeyError, TypeError, ValueError, AttributeError) as err:
            raise InstanceFormatError(f"malformed Grid Tiling instance: {err!r}")

    def to_dict(self):
        return {'eta': self.eta, 'kappa': self.kappa,
                'tiles': {f"{i},{j}": sorted(list(p) for p in pairs) for (i, j), pairs in sorted(self.tiles.items())}}

    def __str__(self):
        return f"GridTilingInstance(eta={self.eta}, kappa={self.kappa}, pairs={sum(map(len, self.tiles.values()))})"


# =============================================================================
# Variant transformations and brute force
# =============================================================================
def gt_le_to_lt(gt: GridTilingInstance) -> GridTilingInstance:
    e2 = gt.eta ** 2
    tiles = {(i, j): [(a * e2 + i, b * e2 + j) for a, b in pairs] for (i, j), pairs in gt.tiles.items()}
    return GridTilingInstance(gt.eta ** 3 + gt.kappa, gt.kappa, tiles)


def gt_lt_to_gt(gt: GridTilingInstance) -> GridTilingInstance:
    flip = gt.eta + 1
    tiles = {key: [(flip - a, flip - b) for a, b in pairs] for key, pairs in gt.tiles.items()}
    return GridTilingInstance(gt.eta, gt.kappa, tiles)


def check_grid_tiling_selection(gt: GridTilingInstance, selection: dict, relation='>') -> list:
    """Violations of a selection: missing tiles, foreign pairs and broken neighbour relations"""

    rel = RELATIONS[relation]
    violations = []
    for key, pairs in sorted(gt.tiles.items()):
        if key not in selection:
            violations.append(('missing', key))
        elif tuple(selection[key]) not in pairs:
            violations.append(('foreign', key))
    if violations:
        return violations

    for (i, j) in sorted(gt.tiles):
        a, b = selection[(i, j)]
        if i < gt.kappa and not rel(a, selection[(i + 1, j)][0]):
            violations.append(('row', (i, j), (i + 1, j)))
        if j < gt.kappa and not rel(b, selection[(i, j + 1)][1]):
            violations.append(('column', (i, j), (i, j + 1)))
    return violations


def solve_grid_tiling(gt: GridTilingInstance, relation='>'):
    """Backtracking over tiles in row-major order; returns a selection or None"""

    rel = RELATIONS[relation]
    order = [(i, j) for j in range(1, gt.kappa + 1) for i in range(1, gt.kappa + 1)]
    choice = {}

    def fits(key, pair):
        i, j = key
        if i > 1 and not rel(choice[(i - 1, j)][0], pair[0]):
            return False
        if j > 1 and not rel(choice[(i, j - 1)][1], pair[1]):
            return False
        return True

    def extend(t):
        if t == len(order):
            return True
        key = order[t]
        for pair in sorted(gt.tiles[key]):
            if fits(key, pair):
                choice[key] = pair
                if extend(t + 1):
                    return True
                del choice[key]
        return False

    return dict(choice) if extend(0) else None


def plant_grid_tiling(eta, kappa, relation='>', extra=0, seed=None):
    """Instance with a planted solution and `extra` random decoys per tile

    Returns (instance, planted selection).
    """

    rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
    strict = relation != '<='
    if strict and kappa > eta:
        raise ConstructionError(f"no strict chain of length {kappa} fits in [{eta}]")

    def chain():
        values = sorted(rng.choice(np.arange(1, eta + 1), size=kappa, replace=not strict).tolist())
        return values[::-1] if relation == '>' else values

    firsts, seconds = chain(), chain()
    planted = {(i, j): (firsts[i - 1], seconds[j - 1]) for i in range(1, kappa + 1) for j in range(1, kappa + 1)}
    tiles = {}
    for key, pair in planted.items():
        decoys = rng.integers(1, eta, size=(extra, 2), endpoint=True).tolist()
        tiles[key] = [pair] + [tuple(d) for d in decoys]
    return GridTilingInstance(eta, kappa, tiles), planted


# =============================================================================
# Enlarging to a connected graph
# =============================================================================
def gt_r_max(eta):
    """Exact r_max^2 and the smallest 1e-9 multiple not below r_max, in standard units"""

    radicand = 4 * eta**4 + 8 * eta**3 + eta**2 - 6 * eta + 2
    exact2 = Fraction(25 * radicand)
    target = 25 * radicand * R_MAX_GRID**2
    root = math.isqrt(target)
    if root * root < target:
        root += 1
    return exact2, Fraction(root, R_MAX_GRID)


def gen_gridtiling_connected(gt: GridTilingInstance, gamma=None) -> ReductionArtifact:
    """gamma overrides eta^2 in the layout only; r_max keeps its eta^2 value"""

    eta, kappa = gt.eta, gt.kappa
    if eta < 2:
        raise ConstructionError(f"the connected construction needs eta >= 2, got {eta}")
    gamma = eta * eta if gamma is None else gamma
    s = 2 * eta + 2 * gamma
    mid = Fraction(eta + 1, 2)
    far = kappa * s + eta + 2 * eta * eta
    r_max2, r_max = gt_r_max(eta)
    k = kappa * kappa + 4 * kappa

    emitter = _Emitter(FRAME)
    for (i, j), pairs in sorted(gt.tiles.items()):
        for a, b in sorted(pairs):
            emitter.emit('tile', (i, j, a, b), (i * s + a, j * s + b))
    for j in range(1, kappa + 1):
        for i in range(1, kappa):
            for q in range(1, eta + 1):
                emitter.emit('h', (i, j, q), (i * s + eta + gamma + q, j * s + mid))
    for i in range(1, kappa + 1):
        for j in range(1, kappa):
            for q in range(1, eta + 1):
                emitter.emit('v', (i, j, q), (i * s + mid, j * s + eta + gamma + q))
    for t in range(1, kappa + 1):
        emitter.emit('dummy', ('left', t), (2 * eta, t * s + mid))
        emitter.emit('dummy', ('right', t), (far, t * s + mid))
        emitter.emit('dummy', ('bottom', t), (t * s + mid, 2 * eta))
        emitter.emit('dummy', ('top', t), (t * s + mid, far))

    parameters = {'construction': 'gridtiling-connected', 'eta': eta, 'kappa': kappa, 'gamma': gamma,
                  'frame': FRAME, 'r_max_squared': r_max2}
    logging.info(f"gridtiling constants: gamma={gamma}, spacing={s}, r_max={float(r_max):.9f}, k={k}")
    art = emitter.artifact(1, r_max, k, parameters, {'gt': gt})
    logging.info(f"Emitted {art}")
    return art


def _dummy_tile(side, t, kappa):
    return {'left': (1, t), 'right': (kappa, t), 'bottom': (t, 1), 'top': (t, kappa)}[side]


def build_gt_forward_solution(art: ReductionArtifact, selection: dict) -> RadiusAssignment:
    gt = art.layout['gt']
    radii = np.ones(art.instance.n)
    grow = float(art.instance.r_max)
    for key, pairs in sorted(gt.tiles.items()):
        pair = selection.get(key)
        if pair is None or tuple(pair) not in pairs:
            raise InstanceFormatError(f"selection has no pair of tile {key}")
        radii[art.ids('tile', key + tuple(pair)).start] = grow
    for role in art.of_kind('dummy'):
        radii[role.ids.start] = grow
    return RadiusAssignment(radii)


def decode_gt_selection(art: ReductionArtifact, r: RadiusAssignment) -> dict:
    """Scaled tile disk per tile; the smallest pair wins when a tile has several"""

    selection = {}
    for role in art.of_kind('tile'):
        i, j, a, b = role.key
        if r.radii[role.ids.start] != 1.0 and (i, j) not in selection:
            selection[(i, j)] = (a, b)
    return selection


# =============================================================================
# Distance properties
# =============================================================================
@dataclass
class GtDistanceReport():
    checked: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __str__(self):
        counts = ', '.join(f"{name}={n}" for name, n in self.checked.items())
        return f"GtDistanceReport({counts}; {len(self.violations)} violations)"


def check_gt_distance_properties(art: ReductionArtifact) -> GtDistanceReport:
    """Exact distance facts the connected construction relies on

    separator: a scaled tile disk meets h^q of its own tile iff q < a and h^q
        of the tile to its left iff q > a (v-disks likewise with b), and no
        other separator disk
    tile: a scaled tile disk meets every disk of its own tile
    adjacent: scaled disks of horizontally or vertically adjacent tiles meet
        iff the > relation holds
    distant: scaled disks of other tile pairs never meet
    dummy: dummies stay away from unscaled reach of all non-dummies and meet
        every disk of their tile
    """

    gt = art.layout['gt']
    kappa = gt.kappa
    r = art.instance.r_max
    reach = (r + 1) ** 2
    pair_reach = (2 * r) ** 2
    table = DistanceTable(art.instance.points)
    report = GtDistanceReport({name: 0 for name in ('separator', 'tile', 'adjacent', 'distant', 'dummy')})

    def close(p, q, threshold2):
        return table.within(p, q, threshold2)

    tiles = [(role.key, role.ids.start) for role in art.of_kind('tile')]
    separators = [(role.kind, role.key, role.ids.start) for role in art.roles if role.kind in ('h', 'v')]
    dummies = [(role.key, role.ids.start) for role in art.of_kind('dummy')]

    for (i, j, a, b), p in tiles:
        for kind, (si, sj, q), h in separators:
            if kind == 'h':
                expect = (sj == j) and ((si == i and q < a) or (si == i - 1 and q > a))
            else:
                expect = (si == i) and ((sj == j and q < b) or (sj == j - 1 and q > b))
            report.checked['separator'] += 1
            if close(p, h, reach) != expect:
                report.violations.append(('separator', p, h))

    for ((i, j, a, b), p), ((i2, j2, a2, b2), p2) in combinations(tiles, 2):
        if (i, j) == (i2, j2):
            report.checked['tile'] += 1
            if not close(p, p2, reach):
                report.violations.append(('tile', p, p2))
        elif abs(i - i2) + abs(j - j2) == 1:
            report.checked['adjacent'] += 1
            if i2 == i + 1:
                expect = a > a2
            elif i == i2 + 1:
                expect = a2 > a
            elif j2 == j + 1:
                expect = b > b2
            else:
                expect = b2 > b
            if close(p, p2, pair_reach) != expect:
                report.violations.append(('adjacent', p, p2))
        else:
            report.checked['distant'] += 1
            if close(p, p2, pair_reach):
                report.violations.append(('distant', p, p2))

    others = [p for _, p in tiles] + [h for _, _, h in separators]
    for (side, t), d in dummies:
        home = _dummy_tile(side, t, kappa)
        for p in others:
            report.checked['dummy'] += 1
            if close(p, d, reach):
                report.violations.append(('dummy', d, p))
        for (i, j, _, _), p in tiles:
            if (i, j) == home:
                report.checked['dummy'] += 1
                if not close(p, d, pair_reach):
                    report.violations.append(('dummy', d, p))

    logging.info(f"{report}")
    return report
