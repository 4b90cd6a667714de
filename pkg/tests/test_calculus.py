from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from higherfam.calculus import (
    BasisTerm,
    ChainConfig,
    FormalClass,
    ambient_chern,
    chern_next,
    corollary1_c1,
    corollary1_ch2,
    expand_chain,
    pushforward_term,
)
from higherfam.coefficients import b_coeff, b_row

F = Fraction


def coeffs(*xs):
    return [F(x) for x in xs]


# -- pushforward -------------------------------------------------------------


def test_pushforward_pure_unit_a():
    assert pushforward_term(BasisTerm(1, 0, 2), a=1, m=0) == (BasisTerm(2, 0, 1), 1)


def test_pushforward_pure_general_a():
    # a^2 c1(L)^1, then one more c1(L_2)
    assert pushforward_term(BasisTerm(1, 0, 2), a=3, m=1) == (BasisTerm(2, 0, 2), 9)


def test_pushforward_cycle_without_L_factor():
    # T(T(ch_3(X))) = T^2(ch_3(X)) as in the c1(H_2) computation
    new, mult = pushforward_term(BasisTerm(1, 3, 0), a=1, m=0)
    assert new == BasisTerm(2, 3, 0) and mult == 1
    assert new.kind == "cycle-chern"
    assert new.render() == "T^2(ch_3(X))"


def test_pushforward_cycle_keeps_L_power():
    # T(alpha . D^s) = a^s T(alpha) . c1(L)^s
    new, mult = pushforward_term(BasisTerm(1, 3, 1), a=2, m=0)
    assert new == BasisTerm(2, 3, 1) and mult == 2


def test_pushforward_cycle_becomes_scalar():
    new, mult = pushforward_term(BasisTerm(1, 2, 1), a=5, m=0)
    assert new.kind == "scalar-chern" and new == BasisTerm(2, 2, 1) and mult == 5


def test_pushforward_scalar_drops_one_L_power():
    new, mult = pushforward_term(BasisTerm(1, 1, 2), a=2, m=0)
    assert new == BasisTerm(2, 1, 1) and mult == 4


@pytest.mark.parametrize("term", [BasisTerm(2, 0, 0), BasisTerm(2, 1, 0)])
def test_pushforward_rejects_codim_zero(term):
    with pytest.raises(ValueError):
        pushforward_term(term, 1, 0)


def test_basis_term_kinds():
    assert BasisTerm(3, 0, 2).kind == "pure"
    assert BasisTerm(3, 3, 2).kind == "scalar-chern"
    assert BasisTerm(3, 4, 2).kind == "cycle-chern"
    assert BasisTerm(3, 5, 2).codim == 4
    with pytest.raises(ValueError):
        BasisTerm(0, 0, 1)


# -- chern_next ----------------------------------------------------------------


def test_chern_next_first_family():
    c1 = chern_next(1, ambient_chern(2))
    assert c1.coefficients() == coeffs(-1, "1/2", 1)
    assert set(c1.terms) == {BasisTerm(1, 0, 1), BasisTerm(1, 1, 1), BasisTerm(1, 2, 0)}


def test_chern_next_second_family_ch2():
    level1 = [chern_next(j, ambient_chern(4)) for j in range(1, 4)]
    ch2 = chern_next(2, level1, a=1)
    assert ch2.terms[BasisTerm(2, 2, 2)] == F(5, 12)


def test_chern_next_third_family_c1():
    level1 = [chern_next(j, ambient_chern(4)) for j in range(1, 4)]
    level2 = [chern_next(j, level1, a=1) for j in range(1, 3)]
    assert chern_next(1, level2, a=1).coefficients() == coeffs(-3, "1/4", "11/12", "3/2", 1)


def test_chern_next_rejects_incomplete_prev():
    with pytest.raises(ValueError):
        chern_next(3, ambient_chern(3))


def test_chern_next_rejects_misordered_prev():
    prev = ambient_chern(3)
    with pytest.raises(ValueError):
        chern_next(2, [prev[1], prev[0], prev[2]])


@settings(max_examples=25, deadline=None)
@given(
    st.fractions(min_value=-5, max_value=5, max_denominator=7),
    st.integers(1, 4),
    st.integers(1, 3),
    st.integers(1, 3),
)
def test_chern_next_is_linear_in_prev(c, j, depth, a):
    prev = [expand_chain(ChainConfig.all_ones(depth), d) for d in range(1, j + 2)]
    tail = FormalClass(depth + 1, j, {BasisTerm(depth + 1, 0, j): F(-1, factorial(j))})
    base = chern_next(j, prev, a) - tail
    scaled = chern_next(j, [p.scaled(c) for p in prev], a) - tail
    assert scaled == base.scaled(c)


# -- expand_chain ----------------------------------------------------------------


EXAMPLE_FORMULAS = [
    # (a-list, j, coefficients on alpha_(i,j,0..i+j), rendering)
    ([], 1, coeffs(-1, "1/2", 1), "-1 c1(L_1) + 1/2 T(c1(X)) c1(L_1) + 1 T(ch_2(X))"),
    (
        [],
        2,
        coeffs("-1/2", "1/12", "1/2", 1),
        "-1/2 c1(L_1)^2 + 1/12 T(c1(X)) c1(L_1)^2 + 1/2 T(ch_2(X)) c1(L_1) + 1 T(ch_3(X))",
    ),
    (
        [],
        3,
        coeffs("-1/6", 0, "1/12", "1/2", 1),
        "-1/6 c1(L_1)^3 + 1/12 T(ch_2(X)) c1(L_1)^2 + 1/2 T(ch_3(X)) c1(L_1) + 1 T(ch_4(X))",
    ),
    (
        [1],
        1,
        coeffs(-2, "1/3", 1, 1),
        "-2 c1(L_2) + 1/3 T(c1(X)) c1(L_2) + 1 T^2(ch_2(X)) c1(L_2) + 1 T^2(ch_3(X))",
    ),
    (
        [1],
        2,
        coeffs(-1, "1/12", "5/12", 1, 1),
        "-1 c1(L_2)^2 + 1/12 T(c1(X)) c1(L_2)^2 + 5/12 T^2(ch_2(X)) c1(L_2)^2"
        " + 1 T^2(ch_3(X)) c1(L_2) + 1 T^2(ch_4(X))",
    ),
    (
        [1, 1],
        1,
        coeffs(-3, "1/4", "11/12", "3/2", 1),
        "-3 c1(L_3) + 1/4 T(c1(X)) c1(L_3) + 11/12 T^2(ch_2(X)) c1(L_3)"
        " + 3/2 T^3(ch_3(X)) c1(L_3) + 1 T^3(ch_4(X))",
    ),
]


@pytest.mark.parametrize("a,j,expected,text", EXAMPLE_FORMULAS)
def test_worked_example_formulas(a, j, expected, text):
    cls = expand_chain(ChainConfig.from_a(a), j)
    assert cls.coefficients() == expected
    assert cls.render() == text


def test_matches_coefficient_engine_all_ones():
    for i in range(1, 9):
        for j in range(1, 5):
            cls = expand_chain(ChainConfig.all_ones(i), j)
            assert cls.coefficients() == b_row(i, j)
            for k in range(i + j + 1):
                if b_coeff(i, j, k):
                    assert cls.terms[BasisTerm.alpha(i, j, k)] == b_coeff(i, j, k)


def test_expand_length5_ch2_is_table_row():
    assert expand_chain(ChainConfig(5, (1, 1, 1, 1)), 2).coefficients() == b_row(5, 2)


@pytest.mark.parametrize("a", [1, 2, 3, 7])
def test_general_a_length_two_c1(a):
    # rules applied by hand to ch_1(H_1), ch_2(H_1)
    expected = [
        -F(a * a, 2) - F(a, 2) - 1,
        F(a * a, 12) + F(a, 4),
        F(a, 2) + F(1, 2),
        F(1),
    ]
    assert expand_chain(ChainConfig.from_a([a]), 1).coefficients() == expected


def test_general_a_two_c1_values():
    assert expand_chain(ChainConfig.from_a([2]), 1).coefficients() == coeffs(-4, "5/6", "3/2", 1)


@pytest.mark.parametrize("a", [1, 2, 5])
def test_general_a_length_two_ch2(a):
    expected = [
        -F(a**3, 6) - F(a * a, 4) - F(a, 12) - F(1, 2),
        F(a * a, 24) + F(a, 24),
        F(a * a, 12) + F(a, 4) + F(1, 12),
        F(a, 2) + F(1, 2),
        F(1),
    ]
    assert expand_chain(ChainConfig.from_a([a]), 2).coefficients() == expected


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(1, 4), max_size=4), st.integers(1, 4))
def test_basis_discipline(a, j):
    cfg = ChainConfig.from_a(a)
    cls = expand_chain(cfg, j)
    assert cls.depth == cfg.length and cls.codim == j
    ks = [t.k for t in cls.terms]
    assert len(ks) == len(set(ks))
    for t, c in cls.terms.items():
        assert c != 0
        assert t == BasisTerm.alpha(cfg.length, j, t.k)
        assert (t.kind == "pure") == (t.k == 0)
        assert (t.kind == "scalar-chern") == (1 <= t.k <= cfg.length)


def test_top_term_is_independent_of_a():
    for a in ([2], [3, 2], [1, 4, 2]):
        cfg = ChainConfig.from_a(a)
        cls = expand_chain(cfg, 2)
        assert cls.coefficient(cfg.length + 2) == 1


def test_chain_config_validation():
    with pytest.raises(ValueError):
        ChainConfig(3, (1,))
    with pytest.raises(ValueError):
        ChainConfig(2, (0,))
    with pytest.raises(ValueError):
        ChainConfig(0, ())
    assert ChainConfig.all_ones(3) == ChainConfig(3, (1, 1))


def test_formal_class_drops_zeros_and_checks_codim():
    cls = FormalClass(2, 1, {BasisTerm(2, 0, 1): F(0), BasisTerm(2, 1, 1): F(3)})
    assert list(cls.terms) == [BasisTerm(2, 1, 1)]
    with pytest.raises(ValueError):
        FormalClass(2, 1, {BasisTerm(2, 0, 2): F(1)})
    with pytest.raises(ValueError):
        FormalClass(2, 1, {BasisTerm(3, 0, 1): F(1)})


def test_formal_class_rows_are_ordered_by_k():
    rows = expand_chain(ChainConfig.from_a([1, 1]), 1).rows()
    assert [r["k"] for r in rows] == [0, 1, 2, 3, 4]
    assert rows[2] == {"k": 2, "kind": "scalar-chern", "L_power": 1, "coefficient": "11/12"}
    assert rows[4]["kind"] == "cycle-chern" and rows[4]["L_power"] == 0


def test_render_negative_later_terms():
    cls = expand_chain(ChainConfig.from_a([]), 4)
    assert cls.render().startswith("-1/24 c1(L_1)^4 - 1/720 T(c1(X)) c1(L_1)^4")


# -- corollary coefficients -----------------------------------------------------


def test_corollary_c1_examples():
    assert corollary1_c1(1, 2) == 1
    assert corollary1_c1(4, 4 * 4 + 4 - 1) == F(1, 5)


def test_corollary_ch2_examples():
    assert corollary1_ch2(1, 4) == 0
    assert corollary1_ch2(2, 10) == 0
    assert corollary1_ch2(1, 10) == F(1, 2)


def test_corollaries_match_coefficient_engine():
    # alpha_(i,j,1) = T(c1(X)) c1(L_i)^j = (d1 + 2) c1(L_i)^j
    for i in range(1, 30):
        for d1 in range(0, 40, 3):
            assert corollary1_c1(i, d1) == b_coeff(i, 1, 0) + (d1 + 2) * b_coeff(i, 1, 1)
            assert corollary1_ch2(i, d1) == b_coeff(i, 2, 0) + (d1 + 2) * b_coeff(i, 2, 1)
