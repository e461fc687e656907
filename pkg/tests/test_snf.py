"""Smith-normal-form kernel checked against sympy as an independent oracle."""

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from relcert.snf import integer_rank, smith_normal_form, torsion_of


def oracle_diag(rows):
    m = sympy.Matrix(rows)
    if m.rows == 0 or m.cols == 0:
        return []
    s = sympy_snf(m, domain=sympy.ZZ)
    diag = [abs(int(s[i, i])) for i in range(min(s.rows, s.cols))]
    return [d for d in diag if d != 0]


matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda m: st.integers(min_value=1, max_value=4).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=n, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
)


@given(matrices)
@settings(max_examples=200, deadline=None)
def test_snf_matches_sympy(rows):
    assert smith_normal_form(rows) == oracle_diag(rows)


@given(matrices)
@settings(max_examples=100, deadline=None)
def test_rank_matches_sympy(rows):
    assert integer_rank(rows) == sympy.Matrix(rows).rank()


def test_known_values():
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
    assert smith_normal_form([[0, 0], [0, 0]]) == []
    assert torsion_of([[2, 4], [4, 8]]) == [2]
    assert smith_normal_form([]) == []


def test_divisibility_chain_invariant():
    diag = smith_normal_form([[6, 4, 2], [4, 8, 6], [2, 6, 12]])
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0
