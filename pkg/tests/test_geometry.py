import pytest
from fractions import Fraction

import numpy as np

from diskscale.errors import InstanceFormatError
from diskscale.geometry import (parse_rational, format_rational, Point, GraphClass, Instance, RadiusAssignment,
                                disks_intersect, build_disk_graph, build_unit_disk_graph)

from tests.conftest import line_instance


@pytest.mark.parametrize("input,expected", [
    ("2.5", Fraction(5, 2)),
    ("1/3", Fraction(1, 3)),
    ("-0.125", Fraction(-1, 8)),
    (" 7 ", Fraction(7)),
    (3, Fraction(3)),
    (Fraction(2, 7), Fraction(2, 7)),
])
def test_parse_rational(input, expected):
    assert parse_rational(input) == expected


@pytest.mark.parametrize("input", ["abc", "1/0", "", "1/2/3", 0.5, True, None, "nan", "inf"])
def test_parse_rational_rejects(input):
    with pytest.raises(InstanceFormatError):
        parse_rational(input)


@pytest.mark.parametrize("input,expected", [
    (Fraction(5, 2), "2.5"),
    (Fraction(3), "3"),
    (Fraction(1, 3), "1/3"),
    (Fraction(-1, 8), "-0.125"),
    (Fraction(1, 20), "0.05"),
    (Fraction(0), "0"),
])
def test_format_rational(input, expected):
    assert format_rational(input) == expected
    assert parse_rational(format_rational(input)) == input


def test_graph_class_parse():
    assert GraphClass.parse('Cluster') is GraphClass.CLUSTER
    assert not GraphClass.CONNECTED.hereditary
    assert GraphClass.EDGELESS.hereditary
    with pytest.raises(InstanceFormatError):
        GraphClass.parse('planar')


@pytest.mark.parametrize("kwargs", [
    {'r_min': 0, 'r_max': 1, 'k': 1},
    {'r_min': 2, 'r_max': 1, 'k': 1},
    {'r_min': 1, 'r_max': 1, 'k': -1},
    {'r_min': 1, 'r_max': 1, 'k': 1.5},
])
def test_instance_validation(kwargs):
    with pytest.raises(InstanceFormatError):
        Instance.from_coordinates([(0, 0)], **kwargs)


def test_instance_needs_points():
    with pytest.raises(InstanceFormatError):
        Instance([], 1, 1, 0)


def test_instance_ids_must_be_positions():
    with pytest.raises(InstanceFormatError):
        Instance([Point(Fraction(0), Fraction(0), 1)], 1, 1, 0)


def test_coordinate_classes_group_twins():
    inst = Instance.from_coordinates([(0, 0), (1, 0), (0, 0), ("1/3", 0), (1, 0)], 1, 1, 0)
    classes = [list(c) for c in inst.coordinate_classes]
    assert classes == [[0, 2], [1, 4], [3]]


def test_radius_assignment():
    r = RadiusAssignment.ones(4).with_radius([1, 3], 0.5)
    assert list(r.scaled()) == [1, 3]
    assert r == RadiusAssignment([1, 0.5, 1, 0.5])
    with pytest.raises(InstanceFormatError):
        RadiusAssignment([1, 0])
    with pytest.raises(ValueError):
        r.radii[0] = 2.0


def test_distance_table_exact():
    inst = Instance.from_coordinates([(0, 0), ("1/3", 0), (2, 0), (0, "2.5")], 1, 1, 0)
    table = inst.distances
    assert table.dist2(0, 1) == Fraction(1, 9)
    assert table.dist2(0, 3) == Fraction(25, 4)
    assert table.within(0, 2, 4)
    assert not table.within(0, 3, 4)
    unit = table.le(4)
    assert unit[0, 2] and not unit[2, 3]


def test_distance_table_huge_coordinates():
    inst = Instance.from_coordinates([(0, 0), (2**40, 0), (2**40 + 2, 0)], 1, 1, 0)
    unit = inst.distances.le(4)
    assert unit[1, 2] and not unit[0, 1]


def test_unit_disk_graph_touching_is_edge():
    g = build_unit_disk_graph(line_instance([0, 2, 4, "6.0000001"], 0, 1, 1).points)
    assert sorted(g.edges) == [(0, 1), (1, 2)]


def test_disks_intersect_tolerance():
    a = Point(Fraction(0), Fraction(0), 0)
    b = Point(Fraction(3), Fraction(0), 1)
    assert disks_intersect(a, b, 1.0, 2.0)
    assert disks_intersect(a, b, 1.0, 2.0 - 1e-10)
    assert not disks_intersect(a, b, 1.0, 1.9)


def test_build_disk_graph_mixed_radii():
    inst = line_instance([0, 2, 4], 1, Fraction(1, 2), 1)
    g = build_disk_graph(inst.points, RadiusAssignment([1, 0.5, 1]))
    assert g.number_of_edges() == 0
    assert sorted(g.nodes) == [0, 1, 2]


def test_build_disk_graph_matches_brute_force():
    rng = np.random.default_rng(3)
    coords = rng.integers(0, 60, size=(40, 2)) / 10
    inst = Instance.from_coordinates([(str(x), str(y)) for x, y in coords], Fraction(1, 2), 2, 0)
    radii = rng.choice([0.5, 1.0, 1.5, 2.0], size=40)
    g = build_disk_graph(inst.points, radii)
    expected = {(i, j) for i in range(40) for j in range(i + 1, 40)
                if disks_intersect(inst.points[i], inst.points[j], radii[i], radii[j])}
    assert set(g.edges) == expected
