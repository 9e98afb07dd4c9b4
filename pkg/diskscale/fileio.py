"""JSON files: instances, solutions, embeddings and Grid Tiling instances.

Rationals are written as canonical decimal strings ("2.5") or "p/q" when the
decimal does not terminate.
"""
import os
import json
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Optional

from diskscale.errors import InstanceFormatError
from diskscale.geometry import GraphClass, Instance, RadiusAssignment, parse_rational, format_rational
from diskscale.gadgets import EmbeddedGraph, ReductionArtifact
from diskscale.gridtiling import GridTilingInstance


def read_json(path):
    with open(path, 'r') as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as err:
            raise InstanceFormatError(f"{path} is not valid JSON: {err}")


def write_json(path, data):
    folder = os.path.dirname(path)
    if folder and not os.path.isdir(folder):
        os.makedirs(folder)
    with open(path, 'w') as f:
        json.dump(data, f, indent=1)
        f.write('\n')


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


# =============================================================================
# Instances and solutions
# =============================================================================
@dataclass
class InstanceFile():
    instance: Instance
    cls: Optional[GraphClass] = None
    provenance: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise InstanceFormatError("an instance file holds a JSON object")
        try:
            coords = [(x, y) for x, y in data['points']]
            inst = Instance.from_coordinates(coords, data['r_min'], data['r_max'], data['k'])
        except KeyError as err:
            raise InstanceFormatError(f"instance file lacks {err}")
        except (TypeError, ValueError) as err:
            raise InstanceFormatError(f"malformed instance file: {err!r}")
        graph_class = GraphClass.parse(data['class']) if data.get('class') is not None else None
        return cls(inst, graph_class, data.get('provenance') or {})

    def to_dict(self):
        inst = self.instance
        data = {'points': [[format_rational(p.x), format_rational(p.y)] for p in inst.points],
                'r_min': format_rational(inst.r_min),
                'r_max': format_rational(inst.r_max),
                'k': inst.k}
        if self.cls is not None:
            data['class'] = self.cls.value
        if self.provenance:
            data['provenance'] = _jsonable(self.provenance)
        return data


def read_instance(path) -> InstanceFile:
    return InstanceFile.from_dict(read_json(path))


def write_instance(path, inst: Instance, cls: GraphClass = None, provenance: dict = None):
    write_json(path, InstanceFile(inst, cls, provenance or {}).to_dict())


def format_radius(value) -> str:
    """Shortest decimal that reads back as the same binary64 radius"""
    return format_rational(Fraction(repr(float(value))))


def solution_to_dict(r: RadiusAssignment):
    return {'radii': [format_radius(x) for x in r.radii],
            'scaled': [int(i) for i in r.scaled()]}


def solution_from_dict(data) -> RadiusAssignment:
    try:
        radii = [float(parse_rational(x)) for x in data['radii']]
    except (KeyError, TypeError) as err:
        raise InstanceFormatError(f"malformed solution file: {err!r}")
    r = RadiusAssignment(radii)
    if 'scaled' in data and sorted(data['scaled']) != [int(i) for i in r.scaled()]:
        raise InstanceFormatError("listed scaled ids disagree with the radii")
    return r


def read_solution(path) -> RadiusAssignment:
    return solution_from_dict(read_json(path))


def write_solution(path, r: RadiusAssignment):
    write_json(path, solution_to_dict(r))


# =============================================================================
# Construction inputs and provenance
# =============================================================================
def read_embedding(path) -> EmbeddedGraph:
    return EmbeddedGraph.from_dict(read_json(path))


def read_grid_tiling(path) -> GridTilingInstance:
    return GridTilingInstance.from_dict(read_json(path))


def write_grid_tiling(path, gt: GridTilingInstance):
    write_json(path, gt.to_dict())


def artifact_provenance(art: ReductionArtifact) -> dict:
    """Derived constants plus one record per role block"""
    return {'parameters': _jsonable(art.parameters),
            'roles': [{'kind': role.kind, 'key': _jsonable(list(role.key)),
                       'start': role.ids.start, 'count': len(role.ids)} for role in art.roles]}


def write_artifact(path, art: ReductionArtifact, cls: GraphClass = None):
    write_instance(path, art.instance, cls, artifact_provenance(art))
