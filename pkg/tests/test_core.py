from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given
from hypothesis import strategies as st

from macaulay.core import (
    DimensionError,
    FreeModule,
    ModuleElement,
    OrderSpec,
    ParseError,
    Ring,
    check_exponents,
    minimalize,
    monomial_cmp,
    parse_element,
)

LEX = OrderSpec("lex")
DRL = OrderSpec("degrevlex")


def mono(*e):
    return (0, tuple(e))


def test_lex_prefers_higher_first_variable():
    assert monomial_cmp(mono(2, 0), mono(1, 1), LEX) == 1


def test_degrevlex_penalises_last_variable():
    assert monomial_cmp(mono(1, 0, 1), mono(0, 2, 0), DRL) == -1


def test_degrevlex_matches_textbook_on_degree_two():
    # textbook degrevlex for x0 > x1 > x2 in degree two
    expected = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
    monos = [tuple(sum(1 for v in c if v == i) for i in range(3))
             for c in combinations_with_replacement(range(3), 2)]
    key = DRL.mono_key(3)
    assert sorted(monos, key=key, reverse=True) == expected


def test_compare_is_reflexive():
    assert monomial_cmp(mono(1, 2, 3), mono(1, 2, 3), DRL) == 0


def test_compare_rejects_mismatched_lengths():
    with pytest.raises(DimensionError):
        monomial_cmp(mono(1, 2), mono(1, 2, 3))


def test_position_over_term_ranks_first_slot_highest():
    fm = FreeModule(Ring(2), (0, 0))
    assert monomial_cmp((0, (0, 0)), (1, (5, 5)), DRL, fm) == 1


def test_term_over_position_uses_shifted_degree():
    fm = FreeModule(Ring(2), (0, 3))
    top = OrderSpec("degrevlex", "top")
    assert monomial_cmp((0, (2, 0)), (1, (0, 0)), top, fm) == -1


def test_var_permutation_reorders_lex():
    o = OrderSpec("lex", "pot", (1, 0))
    assert monomial_cmp(mono(0, 1), mono(5, 0), o) == 1


def test_bad_permutation_rejected():
    with pytest.raises(ValueError):
        OrderSpec("lex", "pot", (0, 0))


def test_parse_two_terms_homogeneous():
    fm = FreeModule(Ring(2))
    f = parse_element("x0^2*x1 - 3*x1^3", fm)
    assert len(f) == 2
    assert f.homogeneous_degree == 3
    assert f.lead.mono == (2, 1)


def test_parse_cancellation_gives_zero():
    fm = FreeModule(Ring(2))
    assert parse_element("x0 - x0", fm).is_zero()


def test_parse_slots_and_mixed_degrees():
    fm = FreeModule(Ring(2), (0, 1))
    f = parse_element("2*e1*x0 + e2*x1", fm)
    assert f.degrees == {1, 2}
    assert f.homogeneous_degree is None
    assert not f.is_homogeneous()


def test_parse_fraction_coefficient():
    fm = FreeModule(Ring(1))
    f = parse_element("3/4*x0", fm)
    assert f.lead.coeff == Fraction(3, 4)


@pytest.mark.parametrize("text,pos", [("x0 + y", 5), ("x0 ** 2", 4), ("", 0), ("x0^1/2", 3)])
def test_parse_errors_carry_position(text, pos):
    fm = FreeModule(Ring(2))
    with pytest.raises(ParseError) as info:
        parse_element(text, fm)
    assert info.value.pos == pos


def test_parse_slot_out_of_range():
    fm = FreeModule(Ring(2))
    with pytest.raises(ParseError):
        parse_element("x0*e2", fm)


def test_exponent_overflow_is_checked():
    with pytest.raises(OverflowError):
        check_exponents((2**31,))


def test_minimalize_drops_multiples():
    assert minimalize([(2, 0), (1, 0), (1, 1), (0, 3)]) == ((0, 3), (1, 0))


def test_ring_defaults_and_validation():
    r = Ring(3)
    assert r.var_names == ("x0", "x1", "x2")
    assert r.n == 2
    with pytest.raises(ValueError):
        Ring(0)
    with pytest.raises(ValueError):
        Ring(2, ("a", "a"))


def test_free_module_shift_lowers_degrees():
    fm = FreeModule(Ring(1), (0, 2))
    assert fm.shifted(1).slot_degrees == (-1, 1)


def test_element_arithmetic():
    fm = FreeModule(Ring(2))
    f = parse_element("x0 + x1", fm)
    g = parse_element("x0 - x1", fm)
    assert (f + g) == parse_element("2*x0", fm)
    assert (f - f).is_zero()
    assert f.times_monomial((1, 0)) == parse_element("x0^2 + x0*x1", fm)
    assert f.scale(0).is_zero()


# ---------------------------------------------------------------------------
# properties

exps = st.tuples(*[st.integers(0, 4)] * 3)
orders = st.sampled_from([LEX, DRL, OrderSpec("lex", "pot", (2, 0, 1)),
                          OrderSpec("degrevlex", "pot", (1, 2, 0))])


@given(orders, exps, exps)
def test_order_antisymmetric(o, a, b):
    assert monomial_cmp(mono(*a), mono(*b), o) == -monomial_cmp(mono(*b), mono(*a), o)


@given(orders, exps, exps, exps)
def test_order_transitive(o, a, b, c):
    ab = monomial_cmp(mono(*a), mono(*b), o)
    bc = monomial_cmp(mono(*b), mono(*c), o)
    if ab >= 0 and bc >= 0:
        assert monomial_cmp(mono(*a), mono(*c), o) >= 0


@given(orders, exps, exps, exps)
def test_order_multiplicative(o, a, b, w):
    aw = tuple(x + y for x, y in zip(a, w))
    bw = tuple(x + y for x, y in zip(b, w))
    assert monomial_cmp(mono(*a), mono(*b), o) == monomial_cmp(mono(*aw), mono(*bw), o)


@given(st.integers(0, 2), st.integers(0, 6), st.integers(0, 6))
def test_lex_and_degrevlex_agree_on_single_variable_powers(v, p, q):
    a = [0, 0, 0]
    b = [0, 0, 0]
    a[v], b[v] = p, q
    assert monomial_cmp(mono(*a), mono(*b), LEX) == monomial_cmp(mono(*a), mono(*b), DRL)


terms = st.dictionaries(
    st.tuples(st.integers(0, 1), st.tuples(*[st.integers(0, 3)] * 2)),
    st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool),
    max_size=5)


@given(terms)
def test_parse_serialize_round_trip(coeffs):
    fm = FreeModule(Ring(2), (0, 1))
    f = ModuleElement(fm, coeffs)
    text = f.to_text()
    g = parse_element(text, fm)
    assert g == f
    assert parse_element(g.to_text(), fm).to_text() == text
