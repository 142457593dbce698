from itertools import combinations_with_replacement

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from macaulay.cones import (
    Cone,
    ConeDecomposition,
    NotExactError,
    PreconditionError,
    exact_decomposition,
    exactify,
    fan_decomposition,
    is_exact,
    is_standard,
    macaulay_constants_from_decomposition,
    standard_decomposition,
    validate_partition,
)
from macaulay.core import FreeModule, Ring
from macaulay.hilbert import (
    MonomialSubmodule,
    QuotientPresentation,
    ZeroModuleError,
    hilbert_series,
    macaulay_constants,
)

XY = Ring(2, ("x", "y"))
X, Y = (1, 0), (0, 1)


def texts(cones, ring=XY):
    return [c.to_text(ring) for c in cones]


def mono_set(cones, up_to):
    out = []
    for c in cones:
        for D in range(c.degree, up_to + 1):
            out.extend(map(tuple, c.monomials(D).tolist()))
    return out


def all_monos(nv, up_to):
    return [tuple(sum(1 for v in c if v == i) for i in range(nv))
            for D in range(up_to + 1) for c in combinations_with_replacement(range(nv), D)]


def test_fan_of_x_times_plane():
    fan = fan_decomposition(Cone(X, (0, 1)))
    assert texts(fan) == ["x*K[]", "x^2*K[x]", "x*y*K[x,y]"]


def test_fan_of_zero_dimensional_cone():
    c = Cone((1, 1))
    assert fan_decomposition(c) == [c]


def test_fan_of_full_space_partitions_it():
    fan = fan_decomposition(Cone((0, 0, 0), (0, 1, 2)))
    assert texts(fan, Ring(3, ("x", "y", "z"))) == ["1*K[]", "x*K[x]", "y*K[x,y]", "z*K[x,y,z]"]
    got = mono_set(fan, 6)
    assert len(got) == len(set(got))
    assert sorted(got) == sorted(all_monos(3, 6))


def test_fan_raises_initial_degree_by_one():
    c = Cone((0, 2, 1), (0, 2))
    fan = fan_decomposition(c)
    assert min(f.degree for f in fan if f.vars) == c.degree + 1


def test_quotient_by_power_of_first_variable():
    a = 3
    qp = QuotientPresentation.cyclic(Ring(3), [(a, 0, 0)])
    dec = standard_decomposition(qp)
    assert sorted((c.mono, c.vars) for c in dec.cones) == [((k, 0, 0), (1, 2)) for k in range(a)]
    assert is_standard(dec, 0)


def test_x_times_plane_truncated_is_two_standard():
    dec = ConeDecomposition((Cone((2, 0), (0,)), Cone((1, 1), (0, 1))))
    assert is_standard(dec, 2)
    chk = is_standard(dec, 0)
    assert not chk
    assert "degree 0" in chk.witness


def test_finite_length_decomposition():
    qp = QuotientPresentation.cyclic(XY, [(2, 0), (1, 1), (0, 3)])
    dec = standard_decomposition(qp)
    assert sorted(c.mono for c in dec.cones) == [(0, 0), (0, 1), (0, 2), (1, 0)]
    assert not dec.positive
    assert is_exact(dec, 0) and is_exact(dec, 7)


def test_exactify_conversion_example():
    dec = ConeDecomposition((Cone(X, (0, 1)), Cone(Y, (0, 1))))
    assert not is_exact(dec, 1)
    out = exactify(dec, 1)
    # the 2-dimensional cone with the smaller degrevlex generator (y) is fanned first,
    # then the one-dimensional piece y^2*K[x] collides with x*y... and is fanned in turn
    assert texts(out.cones) == ["x*K[x,y]", "y*K[]", "x*y*K[]", "x^2*y*K[x]", "y^2*K[x,y]"]
    assert is_exact(out, 1)
    assert sorted(mono_set(out.cones, 7)) == sorted(mono_set(dec.cones, 7))


def test_exactify_truncated_example():
    dec = ConeDecomposition((Cone((2, 0), (0,)), Cone((1, 1), (0, 1))))
    out = exactify(dec, 2)
    assert texts(out.cones) == ["x^2*K[]", "x^3*K[x]", "x*y*K[x,y]"]
    assert is_exact(out, 2)


def test_truncated_example_constants():
    out = exactify(ConeDecomposition((Cone((2, 0), (0,)), Cone((1, 1), (0, 1)))), 2)
    assert macaulay_constants_from_decomposition(ConeDecomposition(out.cones, None, 2)).b == (4, 4, 3, 2)


def test_exactify_requires_standard_input():
    dec = ConeDecomposition((Cone((2, 0), (0,)), Cone((1, 1), (0, 1))))
    with pytest.raises(PreconditionError):
        exactify(dec, 0)


def test_non_exact_decomposition_rejected_for_constants():
    dec = ConeDecomposition((Cone(X, (0, 1)), Cone(Y, (0, 1))), None, 1)
    with pytest.raises(NotExactError):
        macaulay_constants_from_decomposition(dec)


def test_zero_module_cannot_be_decomposed():
    with pytest.raises(ZeroModuleError):
        standard_decomposition(QuotientPresentation.cyclic(XY, [(0, 0)]))


def test_cone_over_three_points_constants():
    qp = QuotientPresentation.cyclic(Ring(4), [(1, 1, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0)])
    dec = exact_decomposition(qp)
    assert macaulay_constants_from_decomposition(dec).b == (4, 4, 3, 0)
    assert validate_partition(dec, qp, 9)


def test_validate_partition_detects_missing_and_duplicate_cones():
    qp = QuotientPresentation.cyclic(Ring(3), [(1, 1, 0), (1, 0, 1)])
    dec = exact_decomposition(qp)
    assert validate_partition(dec, qp, 8)
    dropped = ConeDecomposition(dec.cones[1:], qp, dec.q)
    assert not validate_partition(dropped, qp, 8)
    doubled = ConeDecomposition(dec.cones + dec.cones[:1], qp, dec.q)
    assert not validate_partition(doubled, qp, 8)


def test_rank_two_decomposition_tracks_slots():
    fm = FreeModule(XY, (0, 1))
    qp = QuotientPresentation(MonomialSubmodule(fm, ((X,), (Y, (2, 0)))))
    dec = exact_decomposition(qp)
    assert {c.slot for c in dec.cones} == {0, 1}
    assert validate_partition(dec, qp, 8)
    assert macaulay_constants_from_decomposition(dec).b == macaulay_constants(qp).b


# ---------------------------------------------------------------------------
# properties

quotients = st.integers(1, 4).flatmap(
    lambda nv: st.tuples(
        st.just(nv),
        st.lists(st.lists(st.tuples(*[st.integers(0, 3)] * nv).filter(lambda m: 0 < sum(m)),
                          max_size=4), min_size=1, max_size=2),
        st.lists(st.integers(0, 2), min_size=2, max_size=2)))


# exact decompositions carry about b_0^(d-1) cones, so huge b_0 is kept out of the sample
B0_CAP = 60


def build(data):
    nv, per, degs = data
    fm = FreeModule(Ring(nv), tuple(degs[:len(per)]))
    return QuotientPresentation(MonomialSubmodule(fm, tuple(map(tuple, per))))


def small(qp):
    return not qp.is_zero() and macaulay_constants(qp).b[0] <= B0_CAP


@given(quotients)
def test_standard_decomposition_is_a_standard_partition(data):
    qp = build(data)
    if qp.is_zero():
        return
    dec = standard_decomposition(qp)
    assert is_standard(dec, qp.e_plus)
    assert dec.hilbert_series(qp.nvars) == hilbert_series(qp)


@given(quotients)
def test_exact_decomposition_constants_match_hilbert_peeling(data):
    qp = build(data)
    assume(small(qp))
    dec = exact_decomposition(qp)
    assert is_exact(dec, qp.e_plus)
    b = macaulay_constants_from_decomposition(dec).b
    assert b == macaulay_constants(qp).b
    # enumeration is capped; the constants above already span every degree
    assert validate_partition(dec, qp, min(b[0] + 3, 14))


@given(quotients)
def test_exactify_preserves_monomials(data):
    qp = build(data)
    assume(small(qp))
    std = standard_decomposition(qp)
    ex = exactify(std, std.q) if std.positive else std
    top = min(max(c.degree for c in ex.cones) + 2, 12)
    key = lambda c: c.slot  # noqa: E731
    for slot in {c.slot for c in std.cones}:
        a = mono_set([c for c in std.cones if key(c) == slot], top)
        b = mono_set([c for c in ex.cones if key(c) == slot], top)
        assert sorted(a) == sorted(b)
