import json
import os

import pytest
from hypothesis import given, settings, strategies as st

from rotorlab.exactmat import AbelianGroup
from rotorlab.invariants import double_cover_h1, goeritz_charpoly
from rotorlab.harness import (HOLDS, NA, VIOLATED, compare_rotants, check_arc_crossing_sums,
                              property_suite, replay, search_conway_counterexample,
                              search_homology_example, write_reproducer)
from rotorlab.tangle import (Orientation, RotorLink, compose, crossing_sums, random_rotor,
                             random_rotor_link, random_stator, random_tangle, rotant_rotor,
                             rotor_link_from_json, strands, trivial_tangle)

DATA = os.path.join(os.path.dirname(__file__), "data")


def trivial_link(n=3, crossings=4):
    return RotorLink(random_stator(n, crossings, 1, directions=["out", "in"] * n), trivial_tangle(n))


def test_trivial_rotor_everything_holds():
    rep = compare_rotants(trivial_link())
    assert rep.report1 == rep.report2
    assert not rep.violated()
    assert rep.verdicts["conway"] == HOLDS and rep.verdicts["linking_matrix"] == HOLDS


def test_arc_sums_trivial_rotor():
    r = trivial_tangle(3)
    assert crossing_sums(r) == {}
    assert check_arc_crossing_sums(trivial_link()) == HOLDS


def test_arc_sums_one_crossing_per_sector():
    rl = random_rotor_link(3, 1, 3, Orientation.PRESERVING, 21)
    assert len(rl.rotor.crossings) == 3
    assert check_arc_crossing_sums(rl) == HOLDS
    # self-crossing sums (writhes of the arcs) survive the flype
    before = sorted(v for (i, j), v in crossing_sums(rl.rotor).items() if i == j)
    after = sorted(v for (i, j), v in crossing_sums(rotant_rotor(rl)).items() if i == j)
    assert before == after


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 4, 5, 6]), st.integers(0, 3), st.booleans(), st.integers(0, 10**6))
def test_arc_sums_hold_on_generated_rotors(n, c, closed, seed):
    cls = Orientation.REVERSING if n % 2 == 0 and seed % 3 == 0 else Orientation.PRESERVING
    rl = random_rotor_link(n, c, 2, cls, seed, allow_closed=closed)
    assert check_arc_crossing_sums(rl) in (HOLDS, NA)


def test_asymmetric_rotor_is_caught():
    """Replacing the rotor by an arbitrary tangle must break some check."""
    caught = 0
    for seed in range(40):
        s = random_stator(3, 3, seed, directions=["out", "in"] * 3)
        t = random_tangle(3, 4, seed + 1000)
        try:
            d = compose(s, t)
        except Exception:
            continue
        if not d.is_connected():
            continue
        if compare_rotants(RotorLink(s, t)).violated():
            caught += 1
    assert caught >= 5


def test_suite_empty_and_deterministic():
    assert property_suite(1, 0).as_json() == {"trials": 0, "counts": {}, "violations": []}
    a = property_suite("abc", 6, (3, 4), 10)
    b = property_suite("abc", 6, (3, 4), 10)
    assert a.as_json() == b.as_json() and a.clean


def test_suite_threads_do_not_change_results():
    assert property_suite(5, 4, (3,), 10, threads=2).as_json() == property_suite(5, 4, (3,), 10).as_json()


def test_search_zero_budget():
    assert search_conway_counterexample(1, 0) is None
    assert search_homology_example(1, 0) is None


def test_reproducer_round_trip(tmp_path):
    rl = random_rotor_link(4, 1, 3, Orientation.REVERSING, 4)
    verdicts = dict(sorted(compare_rotants(rl).verdicts.items()))
    path = write_reproducer({**rl.as_json(), "seed": 4, "trial": 0, "verdicts": verdicts}, str(tmp_path))
    with open(path) as fh:
        loaded = json.load(fh)
    assert replay(loaded) == loaded["verdicts"] == verdicts


def test_homology_example_fixture():
    """A preserving 4-rotant pair (found by search_homology_example) with different H_1."""
    with open(os.path.join(DATA, "homology_pair.json")) as fh:
        obj = json.load(fh)
    rl = rotor_link_from_json(obj)
    d1 = compose(rl.stator, rl.rotor)
    d2 = compose(rl.stator, rotant_rotor(rl))
    h1, h2 = double_cover_h1(d1), double_cover_h1(d2)
    assert h1 == AbelianGroup((525,), 1)
    assert h2 == AbelianGroup((5, 105), 1)
    assert double_cover_h1(d1, 5) != double_cover_h1(d2, 5)
    # the Goeritz characteristic polynomials still agree
    assert goeritz_charpoly(d1) == goeritz_charpoly(d2)
