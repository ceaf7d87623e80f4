import pytest
from hypothesis import given, strategies as st

from stackpw.polynomials import Poly
from stackpw.quiver import (BudgetExceeded, DimVector, Quiver, QuiverParseError, count_rep_classes,
                            euler_form, indecomposable_counts, kac_polynomial, preproj_vdim,
                            serre_exponent, sym_euler, triple_quiver)

q = Poly.q()
POINT = Quiver(1)
JORDAN = Quiver.jordan()
A2 = Quiver.a2()


def test_euler_form_examples():
    assert euler_form(POINT, [1], [1]) == 1
    assert euler_form(JORDAN, [1], [1]) == 0
    for g in range(5):
        assert euler_form(Quiver.loops(g), [1], [1]) == 1 - g


def test_sym_euler_examples():
    assert sym_euler(JORDAN, [1], [1]) == 0
    assert sym_euler(A2, [1, 0], [0, 1]) == -1
    assert sym_euler(A2, [2, 1], [2, 1]) == 2 * euler_form(A2, [2, 1], [2, 1])


def test_serre_exponent_examples():
    assert serre_exponent(A2, [1, 0], [0, 1]) == 2
    assert serre_exponent(JORDAN, [1], [1]) == 1
    assert serre_exponent(Quiver.loops(2), [1], [1]) == 3
    with pytest.raises(ValueError):
        serre_exponent(POINT, [1], [1])


def test_triple_quiver():
    tj = triple_quiver(JORDAN)
    assert tj.vertices == (0,) and len(tj.arrows) == 3
    ta = triple_quiver(A2)
    assert len(ta.arrows) == 4 and ta.vertices == A2.vertices
    assert sorted(ta.arrows) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_preproj_vdim():
    assert preproj_vdim(JORDAN, [1]).value == 0
    assert preproj_vdim(Quiver.loops(3), [1]).value == 4
    assert preproj_vdim(A2, [1, 1]).value == -2


quivers = st.sampled_from([POINT, JORDAN, A2, Quiver.loops(2), Quiver(3, [(0, 1), (1, 2), (2, 0), (0, 0)])])


@given(quivers, st.data())
def test_euler_bilinear(Q, data):
    vec = st.lists(st.integers(0, 4), min_size=len(Q.vertices), max_size=len(Q.vertices))
    d, d2, e = data.draw(vec), data.draw(vec), data.draw(vec)
    dsum = [a + b for a, b in zip(d, d2)]
    assert euler_form(Q, dsum, e) == euler_form(Q, d, e) + euler_form(Q, d2, e)
    assert euler_form(Q, e, dsum) == euler_form(Q, e, d) + euler_form(Q, e, d2)
    assert sym_euler(Q, d, e) == sym_euler(Q, e, d)


def test_parse_roundtrip_and_errors():
    Q = Quiver.parse("# two loops\nvertices: 1\narrow: 0 0\narrow: 0 0  # second\n")
    assert Q == Quiver.loops(2)
    assert Quiver.parse(A2.dumps()) == A2
    with pytest.raises(QuiverParseError, match="line 2"):
        Quiver.parse("vertices: 2\narrow: 0 5\n")
    with pytest.raises(QuiverParseError, match="line 1"):
        Quiver.parse("arrow: 0 0\n")
    with pytest.raises(QuiverParseError, match="line 3: unknown directive"):
        Quiver.parse("vertices: 1\n\nloops: 2\n")
    with pytest.raises(QuiverParseError, match="missing"):
        Quiver.parse("# nothing\n")


def test_count_rep_classes_examples():
    for qq in (2, 3, 4, 5):
        assert count_rep_classes(JORDAN, [1], qq) == qq
        assert count_rep_classes(A2, [1, 1], qq) == 2
    for d in range(1, 4):
        assert count_rep_classes(POINT, [d], 3) == 1


def jordan_classes(n, qq):
    """Similarity classes of n x n matrices over F_q: multisets of (monic irreducible, partition)."""
    from stackpw.charvar import irreducible_counts

    irr = irreducible_counts(qq, n)  # irr[k] = number of monic irreducibles of degree k
    part = [1, 1, 2, 3, 5]
    # generating function prod_k (sum_m p(m) x^(k m))^irr[k]
    poly = [1] + [0] * n
    for k in range(1, n + 1):
        for _ in range(irr[k]):
            new = [0] * (n + 1)
            for i, a in enumerate(poly):
                for m in range(0, (n - i) // k + 1):
                    new[i + k * m] += a * part[m]
            poly = new
    return poly[n]


@pytest.mark.parametrize("n,qq", [(2, 2), (2, 3), (3, 2)])
def test_jordan_counts_vs_normal_forms(n, qq):
    assert count_rep_classes(JORDAN, [n], qq) == jordan_classes(n, qq)


def test_budget():
    with pytest.raises(BudgetExceeded):
        count_rep_classes(JORDAN, [3], 3, budget=1000)


def test_indecomposables_jordan():
    # indecomposable Jordan-quiver reps are single Jordan blocks (primary, one block)
    counts = indecomposable_counts(JORDAN, [2], 3)
    assert counts[(1,)] == 3
    # degree-1 polynomial with one block of size 2, or a degree-2 irreducible
    assert counts[(2,)] == 3 + 3


def test_kac_examples():
    for d in (1, 2, 3):
        assert kac_polynomial(JORDAN, [d]) == q
    for g in (1, 2, 3):
        assert kac_polynomial(Quiver.loops(g), [1]) == q ** g
    assert kac_polynomial(A2, [1, 1]) == Poly([1])
    assert kac_polynomial(A2, [1, 0]) == Poly([1])
    assert kac_polynomial(POINT, [2]) == Poly()


def test_kac_needs_samples():
    with pytest.raises(ValueError):
        kac_polynomial(Quiver.loops(2), [1], q_samples=[2, 3])


def test_dimvector_checks():
    with pytest.raises(ValueError):
        DimVector([-1])
    with pytest.raises(ValueError):
        DimVector.of(A2, [1])
