import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from macaulay import _kernels
from macaulay.core import minimalize
from macaulay.hilbert import binom_conv


@given(st.integers(1, 4), st.integers(0, 7))
def test_monomial_enumeration_backends_agree(nv, d):
    a = _kernels.monomials_of_degree_numpy(nv, d)
    b = _kernels.monomials_of_degree(nv, d)
    assert np.array_equal(a, b)
    assert a.shape[0] == binom_conv(d + nv - 1, nv - 1)
    assert (a.sum(axis=1) == d).all()


gen_rows = st.lists(st.tuples(*[st.integers(0, 3)] * 3), max_size=6)


@given(gen_rows, st.integers(0, 6))
def test_divisibility_backends_agree(gens, d):
    g = _kernels.as_exponent_array(gens, 3)
    m = _kernels.monomials_of_degree_numpy(3, d)
    expected = np.array([any(all(x >= y for x, y in zip(row, h)) for h in gens) for row in m.tolist()],
                        dtype=bool)
    assert np.array_equal(_kernels.divisible_mask_numpy(g, m), expected)
    assert np.array_equal(_kernels.divisible_mask(g, m), expected)


@given(gen_rows)
def test_minimal_rows_backends_agree(gens):
    g = _kernels.as_exponent_array(gens, 3)
    a = _kernels.minimal_rows_numpy(g)
    b = _kernels.minimal_rows(g)
    assert np.array_equal(a, b)
    assert sorted(set(map(tuple, g[a].tolist()))) == sorted(minimalize(gens))


def test_exponent_array_overflow():
    with pytest.raises(OverflowError):
        _kernels.as_exponent_array([(2**40, 0)], 2)


