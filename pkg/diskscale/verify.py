"""Solution checking on the twin quotient.

Points with identical coordinates and identical radius are true twins: they
are adjacent and share every neighbour. Class membership of the disk graph is
decided on the graph of twin classes, which keeps reduction artifacts with
millions of co-located copies checkable.
"""
import logging
from dataclasses import dataclass, field

import numpy as np
import networkx as nx

from diskscale import TAU
from diskscale.errors import InstanceFormatError
from diskscale.geometry import GraphClass, Instance, RadiusAssignment, build_disk_graph
from diskscale.graphs import find_induced_p3


@dataclass
class Verdict():
    ok: bool
    reason: str = ''
    witness: tuple = field(default_factory=tuple)
    message: str = ''

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return 'ok'
        return f"{self.reason}: {self.message} {self.witness}"


def twin_classes(inst: Instance, r: RadiusAssignment) -> list:
    """Coordinate classes refined by radius, each sorted, ordered by smallest id"""

    classes = []
    for members in inst.coordinate_classes:
        values = r.radii[members]
        if len(members) == 1 or np.all(values == values[0]):
            classes.append(members)
            continue
        _, inverse = np.unique(values, return_inverse=True)
        for label in np.unique(inverse):
            classes.append(members[inverse == label])
    classes.sort(key=lambda c: c[0])
    return classes


def quotient_disk_graph(inst: Instance, r: RadiusAssignment):
    """Disk graph on twin classes, nodes labelled by each class's smallest id

    Returns the graph and a dict from label to the class members.
    """

    classes = twin_classes(inst, r)
    reps = np.array([c[0] for c in classes], dtype=np.int64)
    points = [inst.points[i] for i in reps]
    g = build_disk_graph(points, r.radii[reps], coords=inst.coords[reps])
    g = nx.relabel_nodes(g, {i: int(rep) for i, rep in enumerate(reps)})
    members = {int(c[0]): c for c in classes}
    return g, members


def verify_solution(inst: Instance, r: RadiusAssignment, cls: GraphClass) -> Verdict:
    """Check budget, radius bounds (with tolerance) and class membership, in that order"""

    if len(r) != inst.n:
        raise InstanceFormatError(f"solution has {len(r)} radii for {inst.n} points")

    scaled = r.scaled()
    if len(scaled) > inst.k:
        return Verdict(False, 'budget', tuple(int(i) for i in scaled[:inst.k + 1]),
                       f"{len(scaled)} disks scaled but the budget is {inst.k}")

    lo = float(inst.r_min) - TAU
    hi = float(inst.r_max) + TAU
    values = r.radii[scaled]
    bad = scaled[(values < lo) | (values > hi)]
    if len(bad):
        p = int(bad[0])
        return Verdict(False, 'radius', (p,),
                       f"radius {r.radii[p]} of point {p} is outside [{float(inst.r_min)}, {float(inst.r_max)}]")

    g, members = quotient_disk_graph(inst, r)
    logging.debug(f"Verifying {cls.value} on {g.number_of_nodes()} twin classes of {inst.n} points")

    if cls is GraphClass.CLUSTER:
        triple = find_induced_p3(g)
        if triple is not None:
            return Verdict(False, 'p3', triple, "induced P3")

    elif cls is GraphClass.COMPLETE:
        for u in sorted(g):
            missing = sorted(set(g) - set(g.adj[u]) - {u})
            if missing:
                return Verdict(False, 'missing_edge', (u, missing[0]), "non-adjacent pair")

    elif cls is GraphClass.CONNECTED:
        components = list(nx.connected_components(g))
        if len(components) > 1:
            smallest = min(components, key=lambda c: (sum(len(members[v]) for v in c), min(c)))
            return Verdict(False, 'disconnected', tuple(sorted(smallest)),
                           f"{len(components)} components; smallest one shown")

    elif cls is GraphClass.EDGELESS:
        if g.number_of_edges():
            u, v = min(tuple(sorted(e)) for e in g.edges)
            return Verdict(False, 'edges', (u, v), "edge present")
        for rep, twins in sorted(members.items()):
            if len(twins) > 1:
                return Verdict(False, 'edges', (rep, int(twins[1])), "co-located disks")

    return Verdict(True)
