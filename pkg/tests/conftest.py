import os
from fractions import Fraction

import hypothesis
import numpy as np
import pytest

from diskscale.geometry import Instance
from diskscale.gadgets import EmbeddedGraph
from diskscale.fileio import read_json

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=50, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "fast"))

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')


def line_instance(xs, k, r_min, r_max):
    """Points on the x axis"""
    return Instance.from_coordinates([(x, 0) for x in xs], r_min, r_max, k)


@pytest.fixture()
def p3_line():
    """Three unit disks at x = 0, 2, 4: an induced P3"""
    return line_instance([0, 2, 4], 1, Fraction(1, 2), 1)


@pytest.fixture(scope='session')
def k4_embedding():
    return EmbeddedGraph.from_dict(read_json(os.path.join(DATA_DIR, 'k4_embedding.json')))
