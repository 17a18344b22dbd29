import json
import random

import pytest
from hypothesis import given, strategies as st

from rotorlab.diagram import Crossing
from rotorlab.invariants import linking_data
from rotorlab.planar import PlanarMap, fresh_labels
from rotorlab.tangle import (ArityMismatch, InfeasibleRequest, Orientation, RotorLink, canonical_form,
                             classify_orientation, compose, compose_tracked, dihedral_flype, flype0,
                             is_rotor_symmetric, make_tangle, parse_rotor_link, random_rotor,
                             random_rotor_link, random_stator, random_tangle, reverse_tangle, rotant,
                             rotant_rotor, rotate, strands, tangles_equal, trivial_tangle)


def clasp_stator():
    """Arity-3 stator: arcs b0->a0 and b1->a1 clasped once, b2->a2 straight."""
    cr = [Crossing("e0", "f1", "e1", "f2", -1), Crossing("f0", "e1", "f1", "e2", -1)]
    bnd = [("e2", "out"), ("e0", "in"), ("f2", "out"), ("f0", "in"), ("g", "out"), ("g", "in")]
    return make_tangle(3, cr, bnd, outer=True)


def test_trivial_composition_is_unlink():
    for n in (3, 4, 5):
        d = compose(trivial_tangle(n, outer=True, first="out"), trivial_tangle(n))
        assert d.n_crossings == 0 and d.free_loops == n


def test_clasp_gives_hopf_plus_unknot():
    d = compose(clasp_stator(), trivial_tangle(3))
    assert d.n_components() == 3
    ld = linking_data(d)
    assert ld.lk_total == -1
    assert sorted(sum(abs(v) for v in row) for row in ld.matrix.rows) == [0, 1, 1]


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        compose(trivial_tangle(3, outer=True, first="out"), trivial_tangle(4))


def test_rotate_examples():
    r = random_rotor(3, 1, Orientation.PRESERVING, 5)
    assert tangles_equal(rotate(r, 0), r)
    assert tangles_equal(rotate(rotate(r, 1), 2), r)
    t = random_tangle(3, 1, 2)
    moved = rotate(t, 1)
    assert [e for e, _ in moved.boundary] == [e for e, _ in t.boundary[-2:] + t.boundary[:-2]]


def test_symmetry_examples():
    assert is_rotor_symmetric(trivial_tangle(4))
    r = random_rotor(4, 2, Orientation.REVERSING, 3)
    assert len(r.crossings) == 8 and is_rotor_symmetric(r)
    # one more crossing in one sector breaks the symmetry
    pm = PlanarMap(list(r.crossings), list(r.boundary), False)
    pm.grow(random.Random(0), 1, fresh_labels("x"), kink_rate=0.0)
    broken = make_tangle(4, pm.crossings, pm.boundary)
    assert not is_rotor_symmetric(broken)


def test_classification():
    def with_dirs(dirs):
        n = len(dirs) // 2
        return random_tangle(n, 0, 0, directions=dirs)
    assert classify_orientation(with_dirs(["in", "out"] * 3)) == Orientation.PRESERVING
    assert classify_orientation(with_dirs(["in", "in", "out", "out"] * 2)) == Orientation.REVERSING
    assert classify_orientation(with_dirs(["in"] * 3 + ["out"] * 3)) == Orientation.NEITHER


def test_rotant_of_trivial_rotor_is_the_link():
    s = random_stator(3, 4, 1, directions=["out", "in"] * 3)
    rl = RotorLink(s, trivial_tangle(3))
    assert rotant(rl) == compose(s, trivial_tangle(3))


def test_generator_contract():
    r = random_rotor(3, 0, Orientation.PRESERVING, 9)
    assert not r.crossings and all(not s.closed for s in strands(r))
    assert canonical_form(random_rotor(5, 3, "preserving", 42)) == canonical_form(random_rotor(5, 3, "preserving", 42))
    with pytest.raises(InfeasibleRequest):
        random_rotor(3, 1, Orientation.REVERSING, 0)


def test_rotor_link_file_round_trip():
    rl = random_rotor_link(4, 2, 3, Orientation.REVERSING, 8)
    back = parse_rotor_link(json.dumps(rl.as_json()))
    assert tangles_equal(back.rotor, rl.rotor) and tangles_equal(back.stator, rl.stator)


def test_rotor_link_file_rejects_asymmetric_rotor():
    from rotorlab.diagram import ValidationError
    rl = random_rotor_link(3, 1, 3, Orientation.PRESERVING, 8)
    obj = rl.as_json()
    obj["rotor"] = random_tangle(3, 2, 1, directions=[d for _, d in rl.rotor.boundary]).as_json()
    with pytest.raises(ValidationError):
        parse_rotor_link(json.dumps(obj))


# -- properties ---------------------------------------------------------------------

tangles = st.builds(lambda n, c, s: random_tangle(n, c, s), st.integers(2, 5), st.integers(0, 6),
                    st.integers(0, 10**6))


@given(tangles)
def test_dihedral_relations(t):
    n = t.n
    assert tangles_equal(rotate(t, n), t)
    assert tangles_equal(flype0(flype0(t)), t)
    assert tangles_equal(flype0(rotate(flype0(t), 1)), rotate(t, -1))
    assert tangles_equal(dihedral_flype(rotate(t, 1), 0), rotate(dihedral_flype(t, 0), -1))


@given(tangles)
def test_flype_keeps_connectivity_and_signs(t):
    f = flype0(t)
    ends = lambda x: sorted(tuple(sorted((s.start, s.end))) for s in strands(x) if not s.closed)
    image = sorted(tuple(sorted(((1 - s.start) % (2 * t.n), (1 - s.end) % (2 * t.n))))
                   for s in strands(t) if not s.closed)
    assert ends(f) == image
    assert sorted(x.sign for x in f.crossings) == sorted(x.sign for x in t.crossings)
    assert tangles_equal(reverse_tangle(reverse_tangle(t)), t)


rotors = st.builds(lambda n, c, cls, s: random_rotor(n, c, cls, s, allow_closed=True),
                   st.sampled_from([4, 6]), st.integers(0, 3),
                   st.sampled_from([Orientation.PRESERVING, Orientation.REVERSING]), st.integers(0, 10**6))


@given(rotors)
def test_generated_rotors_are_symmetric(r):
    assert is_rotor_symmetric(r)
    assert classify_orientation(r) in (Orientation.PRESERVING, Orientation.REVERSING)
    assert classify_orientation(flype0(r)) == classify_orientation(r)
    assert is_rotor_symmetric(flype0(r))


@given(st.integers(3, 5), st.integers(0, 2), st.integers(0, 10**6))
def test_rotation_leaves_the_link_unchanged(n, c, seed):
    rl = random_rotor_link(n, c, 2, Orientation.PRESERVING, seed)
    a = compose(rl.stator, rl.rotor)
    b = compose(rl.stator, rotate(rl.rotor, 1))
    assert a.n_crossings == b.n_crossings
    from rotorlab.invariants import invariant_report
    assert invariant_report(a) == invariant_report(b)


@given(st.sampled_from([3, 4, 6]), st.integers(0, 2), st.integers(0, 10**6))
def test_rotant_preserves_components(n, c, seed):
    cls = Orientation.REVERSING if n % 2 == 0 and seed % 2 else Orientation.PRESERVING
    rl = random_rotor_link(n, c, 2, cls, seed)
    c1 = compose_tracked(rl.stator, rl.rotor)
    c2 = compose_tracked(rl.stator, rotant_rotor(rl))
    assert c1.diagram.n_components() == c2.diagram.n_components()
    assert c1.diagram.is_connected() and c2.diagram.is_connected()
