import math
import logging
from enum import Enum
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from functools import cached_property
from dataclasses import dataclass, field, replace

import numpy as np
import networkx as nx
from scipy.spatial import cKDTree

from diskscale import TAU
from diskscale.errors import InstanceFormatError

Rational = Fraction

INT64_SAFE = 2**62


# =============================================================================
# Rationals
# =============================================================================
def parse_rational(value) -> Fraction:
    """Parse an integer, a decimal string ("2.5") or a "p/q" string exactly"""

    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InstanceFormatError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise InstanceFormatError(f"rationals must be written as strings, got {value!r}")

    text = value.strip()
    try:
        if '/' in text:
            num, den = text.split('/')
            q = Fraction(int(num), int(den))
        else:
            q = Fraction(Decimal(text))
    except (ValueError, ZeroDivisionError, OverflowError, InvalidOperation):
        raise InstanceFormatError(f"not a rational: {value!r}")
    return q


def format_rational(q) -> str:
    """Canonical string: terminating decimal when possible, else "p/q"

    Returns "5/2" as "2.5", "3" as "3" and "1/3" as "1/3"
    """

    q = Fraction(q)
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{q.numerator}/{q.denominator}"
    if q.denominator == 1:
        return str(q.numerator)

    digits = max(twos, fives)
    scaled = abs(q.numerator) * (10**digits // q.denominator)
    sign = '-' if q < 0 else ''
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{str(frac).rjust(digits, '0').rstrip('0')}"


# =============================================================================
# Points and instances
# =============================================================================
@dataclass(frozen=True, slots=True)
class Point():
    x: Fraction
    y: Fraction
    id: int

    def __str__(self):
        return f"p{self.id}({format_rational(self.x)}, {format_rational(self.y)})"


def dist2(a: Point, b: Point) -> Fraction:
    """Exact squared Euclidean distance"""
    dx = a.x - b.x
    dy = a.y - b.y
    return dx * dx + dy * dy


class GraphClass(Enum):
    CLUSTER = 'cluster'
    COMPLETE = 'complete'
    CONNECTED = 'connected'
    EDGELESS = 'edgeless'

    @classmethod
    def parse(cls, text):
        try:
            return cls(str(text).strip().lower())
        except ValueError:
            raise InstanceFormatError(f"unknown graph class {text!r}; use one of {[c.value for c in cls]}")

    @property
    def hereditary(self):
        """Closed under taking induced subgraphs"""
        return self is not GraphClass.CONNECTED


@dataclass(frozen=True)
class Instance():
    points: tuple
    r_min: Fraction
    r_max: Fraction
    k: int

    def __post_init__(self):
        object.__setattr__(self, 'points', tuple(self.points))
        object.__setattr__(self, 'r_min', parse_rational(self.r_min))
        object.__setattr__(self, 'r_max', parse_rational(self.r_max))

        if not self.points:
            raise InstanceFormatError("an instance needs at least one point")
        if self.r_min <= 0:
            raise InstanceFormatError(f"r_min must be positive, got {self.r_min}")
        if self.r_min > self.r_max:
            raise InstanceFormatError(f"r_min={self.r_min} exceeds r_max={self.r_max}")
        if isinstance(self.k, bool) or not isinstance(self.k, (int, np.integer)) or self.k < 0:
            raise InstanceFormatError(f"budget k must be a non-negative integer, got {self.k!r}")
        object.__setattr__(self, 'k', int(self.k))
        for i, p in enumerate(self.points):
            if p.id != i:
                raise InstanceFormatError(f"point ids must be 0..n-1, found id {p.id} at position {i}")

    @classmethod
    def from_coordinates(cls, coords, r_min, r_max, k):
        """Build from (x, y) pairs of anything parse_rational accepts"""
        points = [Point(parse_rational(x), parse_rational(y), i) for i, (x, y) in enumerate(coords)]
        return cls(points, r_min, r_max, k)

    @property
    def n(self):
        return len(self.points)

    def with_budget(self, k):
        return replace(self, k=k)

    @cached_property
    def coords(self) -> np.ndarray:
        """Binary64 coordinates, one row per point"""
        cache = {}
        rows = np.empty((self.n, 2), dtype=np.float64)
        for i, p in enumerate(self.points):
            # Heavy copies share Fraction objects, so most lookups hit
            xy = cache.get((p.x, p.y))
            if xy is None:
                xy = cache[(p.x, p.y)] = (float(p.x), float(p.y))
            rows[i] = xy
        return rows

    @cached_property
    def coordinate_classes(self) -> list:
        """Ids grouped by identical exact coordinates, ordered by smallest id"""

        _, inverse = np.unique(self.coords, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
        order = np.argsort(inverse, kind='stable')
        bounds = np.flatnonzero(np.diff(inverse[order])) + 1
        classes = []
        for members in np.split(order, bounds):
            first = self.points[members[0]]
            if all(self.points[m].x == first.x and self.points[m].y == first.y for m in members[1:]):
                classes.append(members)
                continue
            # Distinct rationals that round to the same binary64 pair
            exact = {}
            for m in members:
                exact.setdefault((self.points[m].x, self.points[m].y), []).append(m)
            classes.extend(np.array(v) for v in exact.values())
        classes.sort(key=lambda c: c[0])
        return classes

    @cached_property
    def distances(self):
        return DistanceTable(self.points)

    def __str__(self):
        return f"Instance(n={self.n}, r_min={format_rational(self.r_min)}, r_max={format_rational(self.r_max)}, k={self.k})"


@dataclass(frozen=True, eq=False)
class RadiusAssignment():
    radii: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.radii, dtype=np.float64)
        if arr.ndim != 1:
            raise InstanceFormatError("radii must be a flat list")
        if not np.all(arr > 0):
            raise InstanceFormatError("every radius must be positive")
        arr.setflags(write=False)
        object.__setattr__(self, 'radii', arr)

    @classmethod
    def ones(cls, n):
        return cls(np.ones(n))

    def __len__(self):
        return len(self.radii)

    def scaled(self) -> np.ndarray:
        """The scaled set T(r): ids whose radius is not exactly 1"""
        return np.flatnonzero(self.radii != 1.0)

    def with_radius(self, ids, value):
        arr = self.radii.copy()
        arr[np.asarray(list(ids), dtype=np.int64)] = float(value)
        return RadiusAssignment(arr)

    def __eq__(self, other):
        return isinstance(other, RadiusAssignment) and np.array_equal(self.radii, other.radii)

    def __str__(self):
        return f"RadiusAssignment(n={len(self)}, scaled={len(self.scaled())})"


# =============================================================================
# Exact distance tables
# =============================================================================
def _compare_le(arr, value):
    """arr <= value without overflowing int64"""
    if arr.dtype != object and abs(value) >= INT64_SAFE:
        return np.full(arr.shape, value > 0)
    return arr <= value


class DistanceTable():
    """Squared distances of a small point set in an integer frame

    Coordinates are multiplied by the lcm of all denominators; num[i, j] is the
    squared distance times scale2. Comparisons against rational thresholds are
    therefore exact integer comparisons.
    """

    def __init__(self, points):
        den = math.lcm(*(q.denominator for p in points for q in (p.x, p.y)))
        xs = [p.x.numerator * (den // p.x.denominator) for p in points]
        ys = [p.y.numerator * (den // p.y.denominator) for p in points]
        big = max(max(map(abs, xs), default=0), max(map(abs, ys), default=0))
        dtype = np.int64 if big < 2**30 else object

        self.scale2 = den * den
        self.x = np.array(xs, dtype=dtype)
        self.y = np.array(ys, dtype=dtype)
        dx = self.x[:, None] - self.x[None, :]
        dy = self.y[:, None] - self.y[None, :]
        self.num = dx * dx + dy * dy
        self.dist = np.sqrt(self.num.astype(np.float64) / float(self.scale2))

    def __len__(self):
        return len(self.x)

    def dist2(self, i, j) -> Fraction:
        return Fraction(int(self.num[i, j]), self.scale2)

    def le(self, threshold2) -> np.ndarray:
        """Boolean matrix of dist2 <= threshold2"""
        q = Fraction(threshold2)
        lhs = self.num if q.denominator == 1 else self.num.astype(object) * q.denominator
        return _compare_le(lhs, q.numerator * self.scale2)

    def within(self, i, j, threshold2) -> bool:
        q = Fraction(threshold2)
        return int(self.num[i, j]) * q.denominator <= q.numerator * self.scale2


# =============================================================================
# Disk graphs
# =============================================================================
def _float_coords(points):
    return np.array([[float(p.x), float(p.y)] for p in points], dtype=np.float64).reshape(-1, 2)


def disks_intersect(a: Point, b: Point, ra: float, rb: float, tau: float = TAU) -> bool:
    """Closed-disk intersection; exact for two unit disks, binary64 otherwise"""
    d2 = dist2(a, b)
    if ra == 1.0 and rb == 1.0:
        return d2 <= 4
    return math.sqrt(float(d2)) <= ra + rb + tau


def build_disk_graph(points, r, coords=None, tau=TAU) -> nx.Graph:
    """Intersection graph of closed disks centered at points with radii r

    Candidate pairs come from a k-d tree; each candidate is then decided by
    disks_intersect. Nodes are 0..n-1 in list order.
    """

    radii = r.radii if isinstance(r, RadiusAssignment) else np.asarray(r, dtype=np.float64)
    n = len(points)
    assert len(radii) == n, "one radius per point"

    g = nx.Graph()
    g.add_nodes_from(range(n))
    if n < 2:
        return g

    coords = _float_coords(points) if coords is None else coords
    reach = 2 * float(radii.max()) + tau
    tree = cKDTree(coords)
    # Small slack so binary64 rounding never drops a true candidate
    pairs = tree.query_pairs(reach * (1 + 1e-9) + 1e-9, output_type='ndarray')
    for i, j in sorted(map(tuple, pairs)):
        if disks_intersect(points[i], points[j], radii[i], radii[j], tau):
            g.add_edge(int(i), int(j))
    return g


def build_unit_disk_graph(points, coords=None) -> nx.Graph:
    """G(S, 1): edge iff dist2 <= 4, decided exactly"""
    return build_disk_graph(points, np.ones(len(points)), coords=coords)
