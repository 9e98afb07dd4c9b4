import pytest
from fractions import Fraction
from itertools import combinations

from diskscale.errors import ConstructionError, InstanceFormatError
from diskscale.geometry import GraphClass
from diskscale.gadgets import (gen_random, HeavySpec, make_heavy_p3, heavy_p3_instance, EmbeddedGraph,
                               is_vertex_cover, is_independent_set, vc_shrink_constants, gen_vc_shrink,
                               build_vc_forward_solution, decode_vc_cover, is_enlarge_constants, gen_is_enlarge,
                               build_is_forward_solution, decode_is_set, check_vc_chain_spacing, check_is_isolation,
                               VARIANTS)
from diskscale.graphs import all_induced_p3
from diskscale.geometry import build_unit_disk_graph
from diskscale.verify import verify_solution


# =============================================================================
# Random instances and heavy P3s
# =============================================================================
def test_gen_random_is_seeded():
    a = gen_random(10, 2, Fraction(1, 2), 1, box_size=3, seed=4)
    b = gen_random(10, 2, Fraction(1, 2), 1, box_size=3, seed=4)
    assert a == b
    assert a != gen_random(10, 2, Fraction(1, 2), 1, box_size=3, seed=5)
    for p in a.points:
        assert 0 <= p.x <= 3 and 0 <= p.y <= 3
        assert (p.x * 30).denominator == 1


@pytest.mark.parametrize("kwargs", [{'n': 0}, {'box_size': 0}, {'box_size': 1.5}])
def test_gen_random_rejects(kwargs):
    args = {'n': 3, 'k': 1, 'r_min': 1, 'r_max': 1, **kwargs}
    with pytest.raises(InstanceFormatError):
        gen_random(**args)


def test_heavy_p3_counts():
    inst = heavy_p3_instance(1, 2, Fraction(3, 2), 0, 1, 1)
    assert inst.n == 4
    assert len(all_induced_p3(build_unit_disk_graph(inst.points))) == 2

    inst = heavy_p3_instance(2, 3, 2, 0, 1, 1)
    assert len(all_induced_p3(build_unit_disk_graph(inst.points))) == 2 * 3 * 2


def test_heavy_p3_ids_are_consecutive():
    points = make_heavy_p3(HeavySpec.at(0, 0, 2), HeavySpec.at(2, 0, 3), HeavySpec.at(4, 0, 2), 2, start_id=5)
    assert [p.id for p in points] == list(range(5, 12))
    assert [p.x for p in points] == [0, 0, 2, 2, 2, 4, 4]

    inst = heavy_p3_instance(2, 3, 2, 2, Fraction(1, 2), 1)
    assert [p.id for p in inst.points] == list(range(7))


@pytest.mark.parametrize("xi", [1, Fraction(5, 2)])
def test_heavy_p3_spacing_range(xi):
    with pytest.raises(ConstructionError):
        heavy_p3_instance(1, 1, xi, 0, 1, 1)


def test_heavy_p3_must_be_collinear():
    with pytest.raises(ConstructionError):
        make_heavy_p3(HeavySpec.at(0, 0), HeavySpec.at(2, 0), HeavySpec.at(4, 1), 2)
    with pytest.raises(ConstructionError):
        make_heavy_p3(HeavySpec.at(0, 0, 0), HeavySpec.at(2, 0), HeavySpec.at(4, 0), 2)
    points = make_heavy_p3(HeavySpec.at(0, 0), HeavySpec.at(0, 2, 2), HeavySpec.at(0, 4), 2, start_id=7)
    assert [p.id for p in points] == [7, 8, 9, 10]


# =============================================================================
# Embeddings
# =============================================================================
def test_k4_embedding(k4_embedding):
    k4_embedding.check()
    assert k4_embedding.eta == 4
    assert k4_embedding.segment_lengths((0, 2)) == [1, 2, 2]
    assert EmbeddedGraph.from_dict(k4_embedding.to_dict()).routes == k4_embedding.routes


def test_embedding_must_be_cubic(k4_embedding):
    data = k4_embedding.to_dict()
    data['edges'] = data['edges'][:-1]
    with pytest.raises(ConstructionError):
        EmbeddedGraph.from_dict(data).check()


def test_embedding_respects_free_direction(k4_embedding):
    data = k4_embedding.to_dict()
    data['vertices'][0]['free'] = 'right'
    with pytest.raises(ConstructionError):
        EmbeddedGraph.from_dict(data).check()


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop('vertices'),
    lambda d: d['vertices'][0].update(free='north'),
    lambda d: d['edges'][0].update(route=[[0, 0], [3, 0]]),
    lambda d: d['vertices'][0].update(x='0.5'),
])
def test_embedding_format_errors(k4_embedding, mutate):
    data = k4_embedding.to_dict()
    mutate(data)
    with pytest.raises(InstanceFormatError):
        EmbeddedGraph.from_dict(data)


def test_cover_and_independence(k4_embedding):
    g = k4_embedding.graph
    assert is_vertex_cover(g, {0, 1, 2}) and not is_vertex_cover(g, {0, 1})
    assert is_independent_set(g, {3}) and not is_independent_set(g, {0, 3})


# =============================================================================
# Vertex cover by shrinking
# =============================================================================
@pytest.mark.parametrize("input,expected", [
    (Fraction(1, 2), (5, 6, Fraction(28, 19))),
    (Fraction(1, 4), (3, 4, Fraction(18, 13))),
])
def test_vc_shrink_constants(input, expected):
    c = vc_shrink_constants(input)
    assert (c['alpha'], c['beta'], c['mu']) == expected
    # the compressed block is as long as the normal one it replaces
    assert (3 * c['beta'] + 1) * (2 * c['alpha'] - c['mu']) == 3 * c['beta'] * (2 * c['alpha'] - 1)


@pytest.mark.parametrize("r_min", [0, 1, Fraction(3, 2)])
def test_vc_shrink_needs_shrinking(k4_embedding, r_min):
    with pytest.raises(ConstructionError):
        gen_vc_shrink(k4_embedding, 3, r_min)


@pytest.fixture(scope='module')
def vc_artifact(k4_embedding):
    return gen_vc_shrink(k4_embedding, 3, Fraction(1, 2))


def test_vc_parameters(vc_artifact):
    p = vc_artifact.parameters
    assert p['gamma'] == 486
    assert p['lambda_sum'] == 51
    assert p['heavy_p3'] == 306
    assert p['k_fix'] == 16 * 306
    assert vc_artifact.instance.k == p['k_fix'] + 3
    assert p['theta'] == vc_artifact.instance.k + 1
    assert vc_artifact.instance.r_min == vc_artifact.instance.r_max == Fraction(1, 2)


def test_vc_roles(vc_artifact):
    assert [r.kind for r in vc_artifact.roles[:8]] == ['vertex'] * 4 + ['blocker'] * 4
    assert len(vc_artifact.ids('blocker', (2,))) == vc_artifact.parameters['theta']
    assert len(vc_artifact.ids('chain', (0, 1, 2))) == vc_artifact.parameters['theta']
    assert len(vc_artifact.ids('chain', (0, 1, 3))) == 16
    last = vc_artifact.instance.n - 1
    assert vc_artifact.role_of(last).kind == 'chain'
    assert vc_artifact.role_of(0).key == (0,)


def test_vc_layout(vc_artifact):
    assert check_vc_chain_spacing(vc_artifact) == []


@pytest.mark.parametrize("cover", [set(c) for c in combinations(range(4), 3)])
def test_vc_forward_solution(vc_artifact, cover):
    r = build_vc_forward_solution(vc_artifact, cover)
    assert len(r.scaled()) == vc_artifact.instance.k
    assert verify_solution(vc_artifact.instance, r, GraphClass.CLUSTER)
    assert decode_vc_cover(vc_artifact, r) == cover


@pytest.mark.parametrize("chosen", [set(c) for c in combinations(range(4), 2)])
def test_vc_forward_solution_needs_a_cover(vc_artifact, chosen):
    r = build_vc_forward_solution(vc_artifact, chosen)
    verdict = verify_solution(vc_artifact.instance, r, GraphClass.CLUSTER)
    assert verdict.reason == 'p3'


def test_vc_forward_solution_unknown_vertex(vc_artifact):
    with pytest.raises(InstanceFormatError):
        build_vc_forward_solution(vc_artifact, {7})


# =============================================================================
# Independent set by enlarging
# =============================================================================
@pytest.mark.parametrize("input,expected", [
    ((2, 'strict-enlarge', None), (Fraction(5, 2), 4, 5)),
    ((1, 'unit-min', Fraction(3, 2)), (Fraction(5, 2), 3, 7)),
    ((Fraction(5, 4), 'strict-enlarge', None), (Fraction(9, 4), Fraction(5, 2), 11)),
])
def test_is_enlarge_constants(input, expected):
    c = is_enlarge_constants(*input)
    assert (c['alpha'], c['beta'], c['mu']) == expected
    r = c['r_eff']
    # the squeezed gap still isolates neighbouring P3s
    squeezed = c['beta'] - c['beta'] / c['mu']
    assert squeezed > r + 1 and squeezed > 2 * r - c['alpha']


@pytest.mark.parametrize("input", [(1, 'strict-enlarge', None), (1, 'unit-min', 1), (2, 'unit-min', 3), (2, 'grow', None)])
def test_is_enlarge_constants_reject(input):
    with pytest.raises(ConstructionError):
        is_enlarge_constants(*input)


IS_BOUNDS = {'strict-enlarge': (2, None), 'unit-min': (1, Fraction(3, 2))}


@pytest.fixture(scope='module')
def is_artifacts(k4_embedding):
    arts = {}
    for variant in VARIANTS:
        r_min, r_max = IS_BOUNDS[variant]
        arts[variant] = gen_is_enlarge(k4_embedding, 1, r_min, variant=variant, r_max=r_max)
    return arts


@pytest.fixture(scope='module')
def is_artifact(is_artifacts):
    return is_artifacts['strict-enlarge']


def test_is_parameters(is_artifact):
    p = is_artifact.parameters
    assert p['gamma'] == 78
    assert p['lambda_sum'] == 204
    assert is_artifact.instance.k == p['k_fix'] + 2 * 4 - 1


def test_is_layout(is_artifact):
    assert check_is_isolation(is_artifact) == []


@pytest.mark.parametrize("variant", VARIANTS)
@pytest.mark.parametrize("chosen", [{v} for v in range(4)])
def test_is_forward_solution(is_artifacts, variant, chosen):
    art = is_artifacts[variant]
    r = build_is_forward_solution(art, chosen)
    assert len(r.scaled()) == art.instance.k
    assert verify_solution(art.instance, r, GraphClass.CLUSTER)
    assert decode_is_set(art, r) == chosen


@pytest.mark.parametrize("variant", VARIANTS)
@pytest.mark.parametrize("chosen", [set(c) for c in combinations(range(4), 2)])
def test_is_forward_solution_needs_independence(is_artifacts, variant, chosen):
    art = is_artifacts[variant]
    r = build_is_forward_solution(art, chosen)
    assert not verify_solution(art.instance, r, GraphClass.CLUSTER)


def test_is_unit_min_variant(is_artifacts):
    art = is_artifacts['unit-min']
    assert check_is_isolation(art) == []
    assert art.instance.r_min == 1 and art.instance.r_max == Fraction(3, 2)
    assert art.parameters['r_eff'] == Fraction(3, 2)
