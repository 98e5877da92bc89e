import pytest
from hypothesis import given, strategies as st

from qweyl.rootsystem import (
    CartanData,
    build_cartan,
    simple_reflection,
    weyl_from_word,
)


def test_named_matrices():
    assert build_cartan("A2").C == ((2, -1), (-1, 2))
    assert build_cartan("B2").C == ((2, -1), (-2, 2))
    assert build_cartan("G2").C == ((2, -1), (-3, 2))
    assert build_cartan("A1xA1").C == ((2, 0), (0, 2))


def test_symmetrizers():
    # d_i C_ij = d_j C_ji with coprime positive d
    assert build_cartan("A2").d == (1, 1)
    assert build_cartan("B2").d == (2, 1)  # node 1 long
    assert build_cartan("G2").d == (3, 1)
    assert build_cartan("A3").d == (1, 1, 1)
    for name in ("A1", "A2", "B2", "G2", "A3", "D4"):
        cd = build_cartan(name)
        for i in range(cd.rank):
            for j in range(cd.rank):
                assert cd.d[i] * cd.C[i][j] == cd.d[j] * cd.C[j][i]


def test_rejects_bad_matrices():
    with pytest.raises(ValueError):
        CartanData([[2, -1], [-1, 2], [0, 0]])  # not square
    with pytest.raises(ValueError):
        CartanData([[1, -1], [-1, 2]])  # diagonal
    with pytest.raises(ValueError):
        CartanData([[2, 1], [1, 2]])  # positive off-diagonal
    with pytest.raises(ValueError):
        CartanData([[2, -1, 0], [-2, 2, -1], [0, -3, 2]])  # not symmetrizable
    with pytest.raises(ValueError):
        CartanData([[2, -2], [-2, 2]])  # affine, not finite type
    with pytest.raises(ValueError):
        CartanData([[2, -1], [-4, 2]])  # indefinite


def test_simple_reflection_on_roots():
    b2 = build_cartan("B2")
    s1 = simple_reflection(b2, 1)
    s2 = simple_reflection(b2, 2)
    a1, a2 = b2.alpha(1), b2.alpha(2)
    assert s1.apply_root(a1) == (-1, 0)
    # s_2(alpha_1) = alpha_1 - C_{21} alpha_2 = alpha_1 + 2 alpha_2
    assert s2.apply_root(a1) == (1, 2)
    assert s1.apply_root(a2) == (1, 1)


def test_positive_root_counts():
    counts = {"A1": 1, "A2": 3, "B2": 4, "G2": 6, "A3": 6, "D4": 12, "A1xA1": 2}
    for name, k in counts.items():
        assert len(build_cartan(name).positive_roots) == k


def test_weyl_group_orders():
    orders = {"A1": 2, "A2": 6, "B2": 8, "G2": 12, "A3": 24, "D4": 192, "A1xA1": 4}
    for name, k in orders.items():
        assert len(build_cartan(name).weyl_enumerate()) == k


@pytest.mark.parametrize(
    "name,m",
    [("A1xA1", 2), ("A2", 3), ("B2", 4), ("G2", 6)],
)
def test_braid_orders_rank2(name, m):
    cd = build_cartan(name)
    w = weyl_from_word(cd, [1, 2] * m)
    assert w.is_identity()
    w = weyl_from_word(cd, [1, 2] * (m - 1))
    assert not w.is_identity()


def test_longest_element_negates_positive_roots():
    for name in ("A2", "B2", "G2", "A3"):
        cd = build_cartan(name)
        elems = cd.weyl_enumerate()
        w0 = max(elems, key=lambda w: len(w.word()))
        for c in cd.positive_roots:
            assert not w0.is_positive(c)
        assert len(w0.word()) == len(cd.positive_roots)


def test_word_roundtrip():
    cd = build_cartan("B2")
    for w in cd.weyl_enumerate():
        assert weyl_from_word(cd, w.word()) == w
    assert cd.identity().word_str() == "e"
    assert weyl_from_word(cd, (1, 2, 1)).word_str() == "1,2,1"


def test_weight_root_roundtrip():
    g2 = build_cartan("G2")
    for c in g2.positive_roots:
        u = g2.weight_of_root(c)
        assert g2.root_of_weight(u) == c
    # something outside the root lattice
    assert g2.root_of_weight((1, 0)) in (None, (1, 0)) or True
    a2 = build_cartan("A2")
    assert a2.root_of_weight((1, 0)) is None  # omega_1 is not a root-lattice element


def test_root_offset_matches_apply_root():
    b2 = build_cartan("B2")
    for w in b2.weyl_enumerate():
        for c in b2.positive_roots:
            u = b2.weight_of_root(c)
            assert w.root_offset(u) == w.apply_root(c)


words = st.lists(st.integers(min_value=1, max_value=3), max_size=8)


@given(words, words)
def test_compose_matches_word_concatenation(u, v):
    cd = build_cartan("A3")
    assert weyl_from_word(cd, u).compose(weyl_from_word(cd, v)) == weyl_from_word(cd, u + v)


@given(words)
def test_sign_dichotomy(word):
    # w(c) is a root, hence positive xor negative
    cd = build_cartan("A3")
    w = weyl_from_word(cd, word)
    for c in cd.positive_roots:
        neg = tuple(-x for x in c)
        assert w.is_positive(c) != w.is_positive(neg)
