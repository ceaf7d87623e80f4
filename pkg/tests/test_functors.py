from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import POLICIES, series_strategy
from oracles import necklaces, partitions_max_part
from stackpw.functors import (VirtualDimension, bcstar_series, bm_vir_from_count, free_lie_series,
                              pt_mod_glr_bm_vir_series, sym_series, tensor_series, uea_series)
from stackpw.plethysm import pexp
from stackpw.polynomials import Poly, RationalFunctionQ, gl_order
from stackpw.series import GradedSeries, TruncationPolicy, WindowError, invert_geometric, make_series

P = TruncationPolicy(8, -2, 12)
q = Poly.q()


def t(c=1, e=0, n=1, pol=P):
    return make_series([(n, e, c)], pol)


def test_sym_series_examples():
    assert sym_series(t()) == invert_geometric(1 - t())
    assert sym_series(t(e=-1)).coeff(2, -2) == 1
    assert sym_series(t(2)).coeff(3, 0) == 4


def test_tensor_series_examples():
    assert tensor_series(t()) == invert_geometric(1 - t())
    assert tensor_series(t(2)).t_part(5) == {0: 32}
    assert tensor_series(t() + t(n=2)).coeff(3, 0) == 3


def test_free_lie_examples():
    assert free_lie_series(t()) == t()
    two = free_lie_series(t(2))
    assert [two.coeff(n, 0) for n in range(1, 6)] == [2, 1, 2, 3, 6]


def test_free_lie_two_generators_necklace():
    pol = TruncationPolicy(8, 0, 4)
    two = free_lie_series(t(2, pol=pol))
    assert [two.coeff(n, 0) for n in range(1, 9)] == [necklaces(2, n) for n in range(1, 9)]
    three = free_lie_series(t(3, pol=pol))
    assert [three.coeff(n, 0) for n in range(1, 9)] == [necklaces(3, n) for n in range(1, 9)]


def test_uea_examples():
    assert uea_series(t()) == invert_geometric(1 - t())
    f = t(2) + t(1, 1, 2)
    assert uea_series(free_lie_series(f)) == tensor_series(f)
    assert uea_series(GradedSeries.zero(P)) == GradedSeries.one(P)


@pytest.mark.parametrize("pol", POLICIES, ids=["plain", "band", "half"])
@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_pbw_roundtrip(pol, data):
    f = data.draw(series_strategy(pol, min_rank=1))
    assert pexp(free_lie_series(f)) == tensor_series(f)


@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_free_lie_positivity(data):
    pol = POLICIES[0]
    f = data.draw(series_strategy(pol, min_rank=1)).map_coefficients(lambda k, c: abs(c))
    assert all(c >= 0 for c in free_lie_series(f).coeffs.values())


def test_bcstar():
    b = bcstar_series(TruncationPolicy(0, 0, 3))
    assert b.coeffs == {(0, 0): 1, (0, 2): 1, (0, 4): 1, (0, 6): 1}
    big = bcstar_series(P)
    assert set(big.coeffs.values()) == {1}
    assert big * make_series([(0, 0, 1), (0, 1, -1)], P) == GradedSeries.one(P)


def test_dictionary_examples():
    pol = TruncationPolicy(2, -3, 10)
    pt_cstar = bm_vir_from_count(RationalFunctionQ(1, q - 1), -2, pol)
    assert pt_cstar == bcstar_series(pol)
    # rank 0 has floor 0 in a band window, so place the Laurent example in rank 1
    g2 = bm_vir_from_count(RationalFunctionQ((q - 1) ** 3), 2, pol, rank=1)
    # -(q-1)^3 q^-2 = q^-2 - 3 q^-1 + 3 - q
    assert g2.coeffs == {(1, -4): 1, (1, -2): -3, (1, 0): 3, (1, 2): -1}
    assert bm_vir_from_count(1, 0, pol) == GradedSeries.one(pol)


def test_dictionary_window_floor():
    with pytest.raises(WindowError):
        bm_vir_from_count(RationalFunctionQ((q - 1) ** 3), 2, TruncationPolicy(1, -1, 10), rank=1)


def test_dictionary_multiplicative():
    pol = TruncationPolicy(2, -2, 12)
    c1, c2 = RationalFunctionQ(1, q - 1), RationalFunctionQ(q ** 2 + 1, q + 1)
    lhs = bm_vir_from_count(c1 * c2, -2, pol, rank=2)
    assert lhs == bm_vir_from_count(c1, -2, pol, rank=1) * bm_vir_from_count(c2, 0, pol, rank=1)
    assert lhs.coeff(2, -1) == 1


def test_pt_mod_glr():
    pol = TruncationPolicy(2, -2, 12)
    assert pt_mod_glr_bm_vir_series(1, 0, pol) == bcstar_series(pol)
    r2 = pt_mod_glr_bm_vir_series(2, 0, pol)
    # 1/((1-q)(1-q^2)): partitions into parts 1 and 2
    assert r2.coeffs == {(0, 2 * i): partitions_max_part(i, 2) for i in range(13)}
    g1 = pt_mod_glr_bm_vir_series(1, 1, pol)
    assert g1.coeff(0, 0) == 0 and g1.coeff(0, 1) == 1
    assert VirtualDimension.surface(1, 1).value == 0


@pytest.mark.parametrize("g", [0, 1, 2, 3])
def test_pt_mod_gl1_normalisation(g):
    # 1/(q-1) reflected and twisted by q^(g-1) is q^g/(1-q)
    pol = TruncationPolicy(0, 0, 12)
    s = pt_mod_glr_bm_vir_series(1, g, pol)
    assert s * make_series([(0, 0, 1), (0, 1, -1)], pol) == make_series([(0, g, 1)], pol)


def test_gl_order_values():
    assert [gl_order(2)(x) for x in (2, 3)] == [6, 48]
    assert gl_order(3)(2) == 168
