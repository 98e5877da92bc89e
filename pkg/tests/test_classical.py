import pytest

from qweyl.classical import (RElt, check_equivariance, classical_a,
                             classical_a_root, classical_reflect_poly,
                             classical_reflect_series, varpi, varpi_mono,
                             varpi_pi, varpi_poly)
from qweyl.laurent import Mono, Poly, y_mono
from qweyl.qdiff import iterated_sigma, sigma
from qweyl.rootsystem import build_cartan, weyl_from_word
from qweyl.series import PSeries, embed
from qweyl.weylaction import ThetaContext, theta_on_series

A1 = build_cartan("A1")
A2 = build_cartan("A2")
B2 = build_cartan("B2")
G2 = build_cartan("G2")


def test_classical_a_columns():
    assert classical_a(A1, 1) == y_mono(1, 0, 2)
    assert classical_a(B2, 1) == y_mono(1, 0, 2) * y_mono(2, 0, -2)
    assert classical_a(B2, 2) == y_mono(1, 0, -1) * y_mono(2, 0, 2)
    assert classical_a(G2, 2) == y_mono(1, 0, -1) * y_mono(2, 0, 2)
    assert classical_a_root(A2, (1, 1)) == y_mono(1, 0) * y_mono(2, 0)


def test_varpi_on_polynomials():
    p = Poly.from_mono(y_mono(1, 0) * y_mono(1, 2) * y_mono(2, -1, -1))
    assert varpi_poly(p) == Poly.from_mono(y_mono(1, 0, 2) * y_mono(2, 0, -1))
    # cancellation to zero
    q = Poly.from_mono(y_mono(1, 0)) - Poly.from_mono(y_mono(1, 6))
    assert varpi_poly(q).is_zero()
    assert varpi_mono(Mono.one()).is_one()


def test_varpi_of_sigma_is_geometric():
    n = 6
    for cd in (A2, B2, G2):
        for w in cd.weyl_enumerate():
            for i in (1, 2):
                alpha = tuple(1 if t == i - 1 else 0 for t in range(cd.rank))
                frac = RElt(cd, 1, Mono.one(), [alpha])
                got = varpi(sigma(w, i, 0, n))
                assert got.compare(frac.expand(w, n)) is None


def test_varpi_of_a2_double_tower():
    # the double tower projects onto 1/((1-a_{a2}^-1)(1-a_{a1+a2}^-1))
    n = 6
    frac = RElt(A2, 1, Mono.one(), [(0, 1), (1, 1)])
    for w in A2.weyl_enumerate():
        got = varpi(iterated_sigma(w, (2, 1), 0, n))
        assert got.compare(frac.expand(w, n)) is None, w.word_str()


def test_a2_case_four_expansion_sign():
    # in the doubly-negative chamber the expansion runs over alpha < beta < 0
    # with a_2^{-alpha} a_1^{-beta}: the a_2 exponent is negated like the
    # other three cases (positive powers of a_2 appear, heights stay in the
    # cone); the variant with a_2^{+alpha} leaves the completion's cone
    n = 6
    a1 = classical_a(A2, 1)
    a2 = classical_a(A2, 2)
    for wword in ((1, 2), (1, 2, 1)):
        w = weyl_from_word(A2, wword)
        terms = {}
        box = 3 * n + 6
        for al in range(-box, 0):
            for be in range(al + 1, 0):
                m = (a2 ** (-al)) * (a1 ** (-be))
                terms[m] = terms.get(m, 0) + 1
        got = PSeries.build(w, terms, n)
        frac = RElt(A2, 1, Mono.one(), [(0, 1), (1, 1)])
        assert got.compare(frac.expand(w, n)) is None
        bad = {}
        for al in range(-box, 0):
            for be in range(al + 1, 0):
                m = (a2 ** al) * (a1 ** (-be))
                bad[m] = bad.get(m, 0) + 1
        assert PSeries.build(w, bad, n).compare(frac.expand(w, n)) is not None


def test_geometric_inverse_identity():
    # (1 - a_alpha^{-1}) times its expansion is 1, in every completion
    n = 6
    for cd in (A2, B2):
        for coords in cd.positive_roots:
            a = classical_a_root(cd, coords)
            for w in (cd.identity(), weyl_from_word(cd, (1,)),
                      weyl_from_word(cd, (2, 1))):
                lin = PSeries.build(w, {Mono.one(): 1, a.inv(): -1}, n)
                frac = RElt(cd, 1, Mono.one(), [coords])
                got = lin.mul(frac.expand(w, n))
                assert got.compare(PSeries.one(w, n)) is None


def test_relt_reflections():
    frac = RElt(A2, 1, Mono.one(), [(0, 1), (1, 1)])
    # s_1 permutes the two denominator roots and fixes the fraction
    assert frac.reflect(1) == frac
    # s_2 flips alpha_2; the folded form picks up -a_{alpha_2}^{-1}
    r2 = frac.reflect(2)
    assert r2.coeff == -1
    assert r2.mono == classical_a_root(A2, (0, 1)).inv()
    assert r2.denoms == ((0, 1), (1, 0))
    assert r2.reflect(2) == frac
    # a length-3 word applied stepwise matches reflect_word
    assert frac.reflect(1).reflect(2).reflect(1) == frac.reflect_word((1, 2, 1))


def test_relt_reflect_matches_series_reflection():
    n = 5
    frac = RElt(B2, 1, y_mono(1, 0), [(1, 1), (0, 1)])
    for wword in ((), (2,), (1, 2)):
        w = weyl_from_word(B2, wword)
        for i in (1, 2):
            lhs = frac.reflect(i).expand(w.times_s(i), n)
            rhs = classical_reflect_series(frac.expand(w, n), i)
            assert lhs.compare(rhs) is None


def test_reflect_poly_is_weyl_action():
    # squares to the identity and matches the defining action on variables
    for cd in (A2, B2, G2):
        for i in (1, 2):
            p = Poly.from_mono(y_mono(1, 0) * y_mono(2, 0, -2)) + Poly.const(3)
            assert classical_reflect_poly(cd, classical_reflect_poly(cd, p, i), i) == p
            yi = Poly.from_mono(y_mono(i, 0))
            assert classical_reflect_poly(cd, yi, i) == \
                yi.mul_mono(classical_a(cd, i).inv())


def test_equivariance_on_generators_and_sigma():
    n = 5
    for cd in (A1, A2, B2):
        ctx = ThetaContext(cd, n)
        for w in cd.weyl_enumerate():
            for i in range(1, cd.rank + 1):
                for j in range(1, cd.rank + 1):
                    for e in (1, -1):
                        x = PSeries.from_mono(w, y_mono(j, 0, e), n)
                        assert check_equivariance(x, i, ctx) is None
                assert check_equivariance(sigma(w, i, 0, n), i, ctx) is None


def test_sl2_reflection_chain():
    # the projected image of Theta on the basic series: 1 - 1/(1-y^-2)
    # equals the reflected expansion 1/(1-y^2)
    n = 6
    e = A1.identity()
    s1 = weyl_from_word(A1, (1,))
    lhs = varpi(theta_on_series(sigma(s1, 1, 0, n), 1))
    frac = RElt(A1, 1, Mono.one(), [(1,)])
    one_minus = PSeries.one(e, n).add(frac.expand(e, n).neg())
    assert lhs.compare(one_minus, one_minus.order) is None
    flipped = frac.reflect(1)
    assert flipped.coeff == -1 and flipped.mono == y_mono(1, 0, -2)
    assert lhs.compare(flipped.expand(e, n), n - 1) is None
    rhs = classical_reflect_series(varpi(sigma(s1, 1, 0, n)), 1)
    assert lhs.compare(rhs) is None


def test_varpi_pi_merges_components():
    n = 5
    e = B2.identity()
    # distinct spectral parameters, same classical image: parts merge
    p = Poly.from_mono(y_mono(1, 0)) + Poly.from_mono(y_mono(1, 2))
    pe = embed(p, e, n)
    assert len(pe.parts) == 2
    out = varpi_pi(pe)
    assert len(out.parts) == 1
    assert out.parts[0].terms == {y_mono(1, 0): 2}
    # and opposite coefficients cancel to nothing
    q = Poly.from_mono(y_mono(1, 0)) - Poly.from_mono(y_mono(1, 2))
    assert varpi_pi(embed(q, e, n)).parts == []


def test_relt_rejects_bad_roots():
    with pytest.raises(ValueError):
        RElt(A2, 1, Mono.one(), [(1, 2)])
    with pytest.raises(ValueError):
        RElt(A2, 1, Mono.one(), [(-1, 0)])
