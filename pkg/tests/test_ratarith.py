import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circlesys.errors import ConstraintError, InputError, ResourceError
from circlesys.ratarith import (DynOrder, d_index, derive_params, dyn_order,
                                load_params, parse_params_text)

DESK = ([2, 2], [4, 4], [2, 2, 4])


def test_desk_recursion():
    params = derive_params(*DESK)
    assert params.p == (0, 1, 65)
    assert params.q == (1, 8, 512)


def test_alpha_gaps():
    params = derive_params(*DESK)
    assert params.alpha(1) - params.alpha(0) == Fraction(1, 8)
    assert params.alpha(2) - params.alpha(1) == Fraction(1, 512)


def test_jtable_oracles():
    # 65^{-1} = 449 mod 512, computed independently by pow()
    params = derive_params(*DESK)
    order = dyn_order(params, 2)
    assert pow(65, -1, 512) == 449
    assert order[1] == 449
    assert order[511] == 63
    assert order[511] == 512 - order[1]


def test_d_index_oracle():
    params = derive_params(*DESK)
    assert d_index(params, 2, Fraction(73, 512)) == 9
    assert d_index(params, 0, Fraction(1, 3)) == 0


def test_d_index_domain():
    params = derive_params(*DESK)
    with pytest.raises(InputError):
        d_index(params, 2, Fraction(3, 2))


def test_constraint_errors():
    with pytest.raises(ConstraintError):
        derive_params([2, 2], [4, 4], [3, 2, 4])    # 3 does not divide 2
    with pytest.raises(ConstraintError):
        derive_params([2, 2], [4, 4], [2, 2, 3])    # 2 does not divide 3
    with pytest.raises(ConstraintError):
        derive_params([2, 2], [4, 4], [2, 2, 8])    # 8 > 2^2
    with pytest.raises(InputError):
        derive_params([2, 2], [1, 4], [2, 2, 4])    # l must be >= 2
    with pytest.raises(InputError):
        derive_params([2], [4, 4], [2, 2, 4])       # length mismatch


def test_parse_params_text():
    params = parse_params_text("# desk\nk = 2 2\nl = 4 4\ns = 2 2 4\n")
    assert params.q == (1, 8, 512)
    with pytest.raises(InputError):
        parse_params_text("k = 2 2\nl = 4 4\n")     # missing s
    with pytest.raises(InputError):
        parse_params_text("k = 2\nk = 2\nl = 4\ns = 1 1\n")


def test_load_params(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("k = 2 2\nl = 4 4\ns = 2 2 4\n")
    assert load_params(str(path)).p == (0, 1, 65)


def test_dyn_order_cap():
    with pytest.raises(ResourceError):
        dyn_order(derive_params([2, 2], [4, 4], [2, 2, 4]), 2, cap=100,
                  require_table=True)
    # without require_table the order still answers point queries
    order = dyn_order(derive_params(*DESK), 2, cap=100)
    assert order[1] == 449


@st.composite
def coeffs(draw):
    n = draw(st.integers(1, 3))
    k = draw(st.lists(st.integers(1, 4), min_size=n, max_size=n))
    l = draw(st.lists(st.integers(2, 5), min_size=n, max_size=n))
    return k, l, [1] * (n + 1)


@given(coeffs())
@settings(max_examples=60)
def test_gcd_invariant(c):
    k, l, s = c
    params = derive_params(k, l, s)
    for n in range(1, len(params.q)):
        assert math.gcd(params.p[n], params.q[n]) == 1


@given(coeffs())
@settings(max_examples=40, deadline=None)
def test_order_bijection_and_reverse(c):
    k, l, s = c
    params = derive_params(k, l, s)
    for n in range(1, len(params.q)):
        q = params.q[n]
        if q > 1000:
            break
        table = [dyn_order(params, n)[i] for i in range(q)]
        assert sorted(table) == list(range(q))
        for i in range(1, q):
            assert q - table[i] == table[q - i]
