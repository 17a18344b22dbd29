import json
import random

import pytest
from hypothesis import given, strategies as st

from rotorlab.diagram import (ParseError, ValidationError, checkerboard, components, diagram_from_json,
                              faces, mirror, parse_diagram, reverse, serialize, writhe, SHADED, WHITE)
from rotorlab.generate import random_diagram


def test_unknot_parses(knot):
    d = parse_diagram('{"crossings": [], "free_loops": 1}')
    assert d.n_crossings == 0 and len(components(d)) == 1
    assert len(faces(d)) == 2
    assert sorted(checkerboard(d)) == sorted([WHITE, SHADED])


def test_trefoil_counts(knot):
    d = knot("right_trefoil")
    assert d.n_crossings == 3 and d.n_edges == 6
    assert len(components(d)) == 1
    assert len(faces(d)) == 5
    assert writhe(d) == 3


def test_hopf_counts(knot):
    d = knot("hopf_pos")
    assert len(components(d)) == 2
    fs = faces(d)
    assert len(fs) == 4
    assert [f.color for f in fs].count(WHITE) == 2
    assert checkerboard(d)[d.unbounded_face()] == WHITE


def test_edge_used_once_is_rejected():
    with pytest.raises(ValidationError):
        parse_diagram('{"crossings": [[0, 1, 2, 3]]}')


@pytest.mark.parametrize("text", ["not json", "[]", '{"crossings": [[0, 1, 2]]}',
                                  '{"crossings": [], "colour": 1}'])
def test_bad_files(text):
    with pytest.raises(ParseError):
        parse_diagram(text)


def test_mirror_and_signs(knot):
    d = knot("right_trefoil")
    m = mirror(d)
    assert writhe(m) == -3
    assert mirror(m) == d
    assert writhe(knot("unknot")) == 0


def test_reverse_bad_index(knot):
    with pytest.raises(ValueError):
        reverse(knot("hopf_pos"), [5])


diagrams = st.builds(lambda n, s: random_diagram(n, random.Random(s), random_unbounded=True),
                     st.integers(1, 10), st.integers(0, 10**6))


@given(diagrams)
def test_round_trip(d):
    assert parse_diagram(serialize(d)) == d


@given(diagrams)
def test_structure(d):
    assert sum(len(c) for c in components(d)) == d.n_edges
    assert d.n_crossings - d.n_edges + len(faces(d)) == 2
    cols = checkerboard(d)
    assert cols[d.unbounded_face()] == WHITE
    # proper colouring: the two faces beside an edge differ
    side = d.edge_side_face
    for e in range(d.n_edges):
        assert cols[side[(e, "left")]] != cols[side[(e, "right")]]


@given(diagrams)
def test_mirror_reverse_involutions(d):
    assert mirror(mirror(d)) == d
    assert writhe(mirror(d)) == -writhe(d)
    rr = reverse(reverse(d))
    assert writhe(rr) == writhe(d) and rr.n_components() == d.n_components()


@given(diagrams, st.integers(0, 3))
def test_reverse_one_component_changes_mixed_signs(d, pick):
    which = [pick % d.n_components()]
    r = reverse(d, which)
    assert r.n_components() == d.n_components()
    assert sorted(len(c) for c in components(r)) == sorted(len(c) for c in components(d))
