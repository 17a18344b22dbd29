from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from rotorlab.exactmat import (AbelianGroup, GaussMatrix, GaussRational, IntMatrix, LaurentPoly,
                               NotHermitian, abelian_group, char_poly, hermitian_signature,
                               lattice_basis_transform, poly_det, rank_mod_p, smith_normal_form,
                               unit_circle_point)

small = st.integers(-6, 6)


def int_matrices(min_n=1, max_n=5, square=True):
    if square:
        return st.integers(min_n, max_n).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))
    return st.tuples(st.integers(min_n, max_n), st.integers(min_n, max_n)).flatmap(
        lambda s: st.lists(st.lists(small, min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0]))


def test_snf_examples():
    assert smith_normal_form(IntMatrix([[1, 0], [0, 1]])) == ((), 0)
    assert smith_normal_form(IntMatrix([[2, 0], [0, 3]])) == ((6,), 0)
    assert smith_normal_form(IntMatrix([[0, 0], [0, 0]])) == ((), 2)


def test_char_poly_examples():
    # ascending coefficients of det(M - lambda E)
    assert char_poly(IntMatrix([[1, 0], [0, 1]])) == (1, -2, 1)
    assert char_poly(IntMatrix([[2, 0], [0, 3]])) == (6, -5, 1)
    assert char_poly(IntMatrix([[0, 1], [1, 0]])) == (-1, 0, 1)
    assert char_poly(IntMatrix([])) == (1,)


def test_signature_examples():
    i = GaussRational(0, 1)
    assert hermitian_signature(IntMatrix([[2, 0], [0, -3]])) == 0
    assert hermitian_signature(GaussMatrix([[0, i], [-i, 0]])) == 0
    assert hermitian_signature(IntMatrix([[5, 0, 0], [0, 1, 0], [0, 0, 0]])) == 2
    with pytest.raises(NotHermitian):
        hermitian_signature(GaussMatrix([[0, i], [i, 0]]))


def test_unit_circle_point():
    assert unit_circle_point(1) == GaussRational(0, 1)
    assert unit_circle_point("1/2") == GaussRational(Fraction(3, 5), Fraction(4, 5))
    assert unit_circle_point("inf") == GaussRational(-1)


@given(st.fractions(max_denominator=50))
def test_unit_circle_point_has_norm_one(t):
    assert unit_circle_point(t).norm2() == 1


def test_poly_det_examples():
    t = LaurentPoly.monomial(1)
    ti = LaurentPoly.monomial(-1)
    one = LaurentPoly.const(1)
    assert poly_det([[t - ti]]) == t - ti
    assert poly_det([[t, LaurentPoly()], [LaurentPoly(), ti]]) == one
    assert poly_det([[t, one], [one, t]]) == t * t - one


def test_laurent_arithmetic():
    p = LaurentPoly({-1: 2, 3: -1})
    assert p.min_exp() == -1 and p.max_exp() == 3
    assert (p - p).is_zero()
    assert p.invert() == LaurentPoly({1: 2, -3: -1})
    assert p.evaluate(1) == 1
    assert LaurentPoly({0: 0}).is_zero()


# -- independent oracles (sympy / numpy) -------------------------------------


@given(int_matrices())
def test_det_and_char_poly_match_sympy(rows):
    m = IntMatrix(rows)
    sm = sympy.Matrix(rows)
    assert m.det() == sm.det()
    lam = sympy.Symbol("l")
    ref = sympy.Poly((sm - lam * sympy.eye(len(rows))).det(), lam).all_coeffs()[::-1]
    assert list(char_poly(m)) == [int(c) for c in ref]


@given(int_matrices(square=False))
def test_snf_matches_sympy(rows):
    from sympy.matrices.normalforms import invariant_factors
    m = IntMatrix(rows)
    factors, free = smith_normal_form(m)
    ref = [abs(int(d)) for d in invariant_factors(sympy.Matrix(rows))]
    nonzero = [d for d in ref if d != 0]
    assert list(factors) == [d for d in nonzero if d != 1]
    assert free == len(rows) - len(nonzero)


@given(int_matrices())
def test_signature_matches_eigenvalues(rows):
    a = np.array(rows)
    s = a + a.T
    ev = np.linalg.eigvalsh(s.astype(float))
    expected = int((ev > 1e-9).sum() - (ev < -1e-9).sum())
    assert hermitian_signature(IntMatrix(s.tolist())) == expected


@given(int_matrices(max_n=4), int_matrices(max_n=4), st.fractions(max_denominator=20))
def test_hermitian_signature_matches_eigenvalues(r1, r2, t):
    n = min(len(r1), len(r2))
    w = unit_circle_point(t)
    xi = GaussRational(1) - w
    m = [[xi * r1[i][j] + xi.conj() * r1[j][i] for j in range(n)] for i in range(n)]
    c = np.array([[complex(float(x.re), float(x.im)) for x in row] for row in m])
    ev = np.linalg.eigvalsh(c)
    if np.min(np.abs(ev)) < 1e-7 and np.max(np.abs(ev)) > 0:
        # near-singular: only compare the rank-independent bound
        assert abs(hermitian_signature(GaussMatrix(m))) <= n
        return
    assert hermitian_signature(GaussMatrix(m)) == int((ev > 0).sum() - (ev < 0).sum())


@given(int_matrices(square=False), st.sampled_from([2, 3, 5, 7]))
def test_tensor_mod_p_matches_rank(rows, p):
    g = abelian_group(IntMatrix(rows))
    # G (x) Z/p has dimension rows - rank_p
    assert len(g.tensor_mod(p).factors) + g.tensor_mod(p).free_rank == len(rows) - rank_mod_p(IntMatrix(rows), p)


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=6))
def test_lattice_basis_spans_the_same_lattice(vecs):
    c = lattice_basis_transform(vecs)
    sv = sympy.Matrix(vecs)
    basis = (sympy.Matrix(c) * sv).tolist() if c else []
    assert len(basis) == sv.rank()
    if basis:
        # every input vector is an integer combination of the basis and vice versa
        for group, other in ((vecs, basis), (basis, vecs)):
            g = sympy.Matrix(other)
            for v in group:
                aug = abelian_group(IntMatrix(sympy.Matrix.vstack(g, sympy.Matrix([v])).T.tolist()))
                ref = abelian_group(IntMatrix(g.T.tolist()))
                assert aug == ref


def test_abelian_group_validation():
    assert AbelianGroup((1, 3)).factors == (3,)
    with pytest.raises(ValueError):
        AbelianGroup((2, 3))
    assert AbelianGroup((15, 30)).order() == 450
    assert AbelianGroup((15, 30)).tensor_mod(5) == AbelianGroup((5, 5))
    assert AbelianGroup((3, 150)).tensor_mod(5) == AbelianGroup((5,))
