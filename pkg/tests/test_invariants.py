import random

import pytest
from hypothesis import given, strategies as st

from rotorlab.diagram import mirror, reverse
from rotorlab.exactmat import AbelianGroup, GaussRational, IntMatrix, LaurentPoly, hermitian_signature
from rotorlab.generate import random_diagram
from rotorlab.harness import VIOLATED, cross_route_checks
from rotorlab.invariants import (BudgetExceeded, OmegaIsOne, alexander_polynomial, classical_signature,
                                 conway_from_seifert, conway_skein, determinant, double_cover_h1,
                                 goeritz, goeritz_charpoly, hermitian_form_matrix, invariant_report,
                                 linking_data, murasugi_routes, murasugi_signature, seifert_matrix,
                                 standard_hermitian_matrix, surface_framing_trace, tl_signature)

z = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)


def test_linking_examples(knot):
    ld = linking_data(knot("unlink2"))
    assert ld.matrix == IntMatrix([[0, 0], [0, 0]]) and ld.lk_total == 0 and ld.trace == 0
    ld = linking_data(knot("hopf_pos"))
    assert ld.matrix == IntMatrix([[0, 1], [1, 0]]) and ld.lk_total == 1
    assert linking_data(knot("right_trefoil", framed=True)).trace == 3
    assert linking_data(knot("right_trefoil")).trace == 0


def test_seifert_examples(knot):
    assert seifert_matrix(knot("unknot")).matrix.nrows == 0
    a = seifert_matrix(knot("left_trefoil")).matrix
    s = a + a.T
    assert abs(s.det()) == 3 and hermitian_signature(s) == 2


@pytest.mark.parametrize("name, expected", [
    ("unknot", ONE),
    ("hopf_pos", z),
    ("hopf_neg", -z),
    ("right_trefoil", ONE + z * z),
    ("left_trefoil", ONE + z * z),
    ("figure_eight", ONE - z * z),
])
def test_conway_both_routes(knot, name, expected):
    d = knot(name)
    assert conway_from_seifert(d) == expected
    assert conway_skein(d) == expected


def test_skein_split_and_budget(knot):
    assert conway_skein(knot("unlink2")).is_zero()
    with pytest.raises(BudgetExceeded):
        conway_skein(knot("figure_eight"), max_crossings=3)


def test_alexander(knot):
    t = LaurentPoly.monomial(1)
    assert alexander_polynomial(knot("right_trefoil")) == t * t - t + ONE


@pytest.mark.parametrize("name, sig", [("unknot", 0), ("right_trefoil", -2), ("left_trefoil", 2),
                                       ("figure_eight", 0), ("hopf_pos", -1)])
def test_classical_signature(knot, name, sig):
    assert tl_signature(knot(name), "inf") == sig
    assert classical_signature(knot(name)) == sig


def test_tl_signature_rejects_one(knot):
    with pytest.raises(OmegaIsOne):
        tl_signature(knot("right_trefoil"), GaussRational(1))
    assert tl_signature(knot("unknot"), "1/3") == 0


def test_hermitian_at_one_is_symmetrised(knot):
    d = knot("figure_eight")
    a = seifert_matrix(d).matrix
    x = hermitian_form_matrix(d, 1)
    assert [[v.re for v in r] for r in x.rows] == [list(r) for r in (a + a.T).rows]
    assert hermitian_form_matrix(knot("unknot"), 1).nrows == 0


def test_goeritz_examples(knot):
    g = goeritz(knot("unknot"))
    assert g.matrix.nrows == 0 and g.mu == 0
    assert abs(goeritz(knot("right_trefoil")).matrix.det()) == 3
    assert abs(goeritz(knot("figure_eight")).matrix.det()) == 5


@pytest.mark.parametrize("name, sig", [("unknot", 0), ("hopf_pos", 0), ("right_trefoil", -2),
                                       ("figure_eight", 0)])
def test_murasugi(knot, name, sig):
    r = murasugi_routes(knot(name))
    assert r.route_a == r.route_b == sig


@pytest.mark.parametrize("name, det, group", [
    ("unknot", 1, AbelianGroup()), ("hopf_pos", 2, AbelianGroup((2,))),
    ("right_trefoil", 3, AbelianGroup((3,))), ("figure_eight", 5, AbelianGroup((5,)))])
def test_determinant_and_cover(knot, name, det, group):
    d = knot(name)
    assert determinant(d) == det
    assert double_cover_h1(d) == group
    assert double_cover_h1(d, 5) == group.tensor_mod(5)


def test_report_fields(knot):
    rep = invariant_report(knot("right_trefoil"))
    assert set(rep) == {"components", "linking_matrix", "lk_total", "trace", "conway", "alexander",
                        "determinant", "tl_signatures", "murasugi", "goeritz_charpoly",
                        "h1_double_cover", "h1_mod_p"}
    assert rep["conway"] == {"0": "1", "2": "1"}
    assert rep["h1_mod_p"] == {"p": 3, "factors": ["3"], "free_rank": 0}
    assert [s["t"] for s in rep["tl_signatures"]] == ["inf", "1", "2", "1/2", "3", "1/3"]


# -- properties over random diagrams ------------------------------------------------

diagrams = st.builds(lambda n, s: random_diagram(n, random.Random(s), random_unbounded=True),
                     st.integers(1, 9), st.integers(0, 10**6))


@given(diagrams, st.integers(0, 10**6))
def test_cross_routes(d, s):
    v = cross_route_checks(d, 12, random.Random(s))
    assert VIOLATED not in v.values(), v


@given(diagrams)
def test_mirror_image(d):
    m = mirror(d)
    c = conway_from_seifert(d)
    # nabla of the mirror image is nabla(-z)
    assert conway_from_seifert(m) == LaurentPoly({e: v * (-1) ** e for e, v in c.coeffs.items()})
    assert murasugi_signature(m) == -murasugi_signature(d)
    assert determinant(m) == determinant(d)


@given(diagrams)
def test_conway_ignores_global_reversal(d):
    assert conway_from_seifert(reverse(d)) == conway_from_seifert(d)


@given(diagrams)
def test_seifert_rank_and_parity(d):
    sd = seifert_matrix(d)
    # rank of H_1 of a connected Seifert surface: crossings - circles + 1
    assert sd.matrix.nrows == d.n_crossings - sd.circle_count + 1
    # conway(z) has the parity of the component count minus one
    assert all((e - d.n_components() + 1) % 2 == 0 for e in conway_from_seifert(d).coeffs)


@given(diagrams)
def test_goeritz_charpoly_degree(d):
    g = goeritz(d)
    cp = goeritz_charpoly(d)
    assert len(cp) == g.matrix.nrows + 1
    assert cp[0] == g.matrix.det()
    assert g.euler == -surface_framing_trace(d)


@given(diagrams, st.sampled_from(["1", "2", "1/2", "-3"]))
def test_standard_generators_carry_the_same_form(d, t):
    # the standard generating set spans the same lattice as the basis
    from rotorlab.exactmat import unit_circle_point
    xi = GaussRational(1) - unit_circle_point(t)
    assert hermitian_signature(standard_hermitian_matrix(d, xi)) == hermitian_signature(hermitian_form_matrix(d, xi))
