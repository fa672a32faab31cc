from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ..exactnum import (
    CycloNumber,
    LaurentPoly,
    cyclo_inverse,
    cyclotomic_field,
    cyclotomic_polynomial,
    divisors,
    euler_phi,
    field_coeffs,
    poly_arith,
    to_cyclo,
    to_field_element,
)

q = LaurentPoly.monomial(1)
polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)


def cyclo_numbers(N):
    width = euler_phi(N)
    return st.lists(st.integers(-4, 4), min_size=width, max_size=width).map(lambda cs: CycloNumber(N, cs))


def test_zero_coefficients_are_dropped():
    p = LaurentPoly({0: 1, 3: 0, -2: 4})
    assert p.exponents() == [-2, 0]
    assert LaurentPoly([(1, 2), (1, -2)]).is_zero()
    assert not LaurentPoly.zero()


def test_string_form():
    assert str((1 + q) ** 2) == "1 + 2q + q^2"
    assert str(LaurentPoly({-1: 1, 1: -3})) == "q^-1 - 3q"
    assert str(LaurentPoly.zero()) == "0"


def test_rejects_non_integer_terms():
    with pytest.raises(TypeError):
        LaurentPoly({0: 1.5})


def test_min_max_exp():
    p = LaurentPoly({-3: 2, 5: -1})
    assert (p.min_exp, p.max_exp) == (-3, 5)
    with pytest.raises(ValueError):
        LaurentPoly.zero().min_exp


def test_negative_powers_of_units():
    assert (-q.shift(1)) ** -1 == LaurentPoly.monomial(-2, -1)
    assert (-q.shift(1)) ** -2 == LaurentPoly.monomial(-4, 1)
    with pytest.raises(ValueError):
        (1 + q) ** -1


def test_long_division():
    quot, rem = divmod(q ** 3 - 1, q - 1)
    assert quot == 1 + q + q ** 2
    assert rem.is_zero()

    quot, rem = divmod(q ** 4 + 3, q ** 2 + 1)
    assert quot * (q ** 2 + 1) + rem == q ** 4 + 3
    assert rem == LaurentPoly.from_list([4])


def test_division_needs_unit_leading_coefficient():
    with pytest.raises(ValueError):
        divmod(q ** 2, 2 * q + 1)
    with pytest.raises(ZeroDivisionError):
        divmod(q, LaurentPoly.zero())


def test_monomial_quotient():
    base = 1 + q
    assert (base.shift(3) * -1).monomial_quotient(base) == (-1, 3)
    assert base.monomial_quotient(1 + q ** 2) is None
    assert (1 + q).divides(q ** 2 - 1)
    assert not (1 + q).divides(q ** 2 + 1)


def test_poly_arith_dispatch():
    assert poly_arith("mul", 1 + q, 1 - q) == 1 - q ** 2
    with pytest.raises(ValueError):
        poly_arith("pow", q, q)


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b).eval_at_one() == a.eval_at_one() * b.eval_at_one()
    assert a - a == LaurentPoly.zero()


@given(polys, polys.filter(lambda p: not p.is_zero() and abs(p.leading_coeff()) == 1))
def test_divmod_reconstructs(a, b):
    quot, rem = divmod(a, b)
    assert quot * b + rem == a


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]


@pytest.mark.parametrize("N", range(1, 31))
def test_cyclotomic_matches_sympy(N):
    x = sympy.Symbol("x")
    dense = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(N, x), x).all_coeffs())]
    assert cyclotomic_polynomial(N) == LaurentPoly.from_list(dense)
    assert euler_phi(N) == int(sympy.totient(N))


def test_cyclotomic_rejects_zero():
    with pytest.raises(ValueError):
        cyclotomic_polynomial(0)


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 7, 12])
def test_root_of_unity_relations(N):
    zeta = CycloNumber.q_power(N, 1)
    assert zeta ** N == 1
    assert CycloNumber.q_power(N, -1) * zeta == 1
    assert sum((CycloNumber.q_power(N, k) for k in range(N)), CycloNumber.zero(N)).is_zero()
    assert to_cyclo(cyclotomic_polynomial(N), N).is_zero()
    # primitive
    assert all(zeta ** k != 1 for k in range(1, N))


def test_cyclo_rational_operations():
    half = CycloNumber.from_rational(5, Fraction(1, 2))
    assert half + half == 1
    assert (half / 3).coeffs[0] == Fraction(1, 6)
    assert 1 - half == half
    with pytest.raises(ZeroDivisionError):
        half / 0
    with pytest.raises(ValueError):
        CycloNumber.one(5) + CycloNumber.one(7)


@settings(max_examples=50)
@given(st.sampled_from([3, 5, 8, 12]).flatmap(lambda N: cyclo_numbers(N)))
def test_inverse(x):
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            cyclo_inverse(x)
    else:
        assert x * x.inverse() == 1
        assert x / x == 1


@given(polys, polys, st.sampled_from([2, 3, 5, 6, 9]))
def test_reduction_is_a_ring_map(a, b, N):
    assert to_cyclo(a * b, N) == to_cyclo(a, N) * to_cyclo(b, N)
    assert to_cyclo(a + b, N) == to_cyclo(a, N) + to_cyclo(b, N)


def test_reduction_at_one_is_evaluation():
    p = LaurentPoly({-2: 3, 0: 1, 7: -5})
    assert to_cyclo(p, 1) == p.eval_at_one()


@settings(max_examples=50)
@given(st.sampled_from([2, 3, 5, 12]).flatmap(lambda N: st.tuples(cyclo_numbers(N), cyclo_numbers(N))))
def test_sympy_field_agrees_with_residues(pair):
    a, b = pair
    field = cyclotomic_field(a.N)
    assert field_coeffs(to_field_element(a), field) == list(a.coeffs)
    assert to_field_element(a) * to_field_element(b) == to_field_element(a * b)
    assert to_field_element(a) + to_field_element(b) == to_field_element(a + b)


def test_cyclotomic_field_is_cached():
    assert cyclotomic_field(7) is cyclotomic_field(7)
    assert cyclotomic_field(7).mod.degree() == euler_phi(7)
