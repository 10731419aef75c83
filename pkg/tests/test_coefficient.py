from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given

from thetadeform.algebra import Coefficient
from thetadeform.algebra.cyclotomic import canonical_roots, cyclotomic_poly, totient
from thetadeform.phase import AffineForm, PhaseExponent

from .strategies import coefficients, rational_phase_coefficients

VALUES = {"theta": 0.1234}


def e(frac, param=None, k=0):
    form = AffineForm(Fraction(frac), {param: k} if param else {})
    return Coefficient.phase(form)


def test_minus_one_is_half_turn():
    assert e(Fraction(1, 2)) == Coefficient.scalar(-1)
    assert e(Fraction(1, 2), "theta", 1) + e(0, "theta", 1) == Coefficient.ZERO


def test_cyclotomic_relations_collapse():
    z = e(Fraction(1, 3))
    assert z + z.conjugate() == Coefficient.scalar(-1)
    assert Coefficient.ONE + z + z * z == Coefficient.ZERO
    # primitive 12th roots sum to mu(12) = 0
    total = sum((e(Fraction(k, 12)) for k in (1, 5, 7, 11)), Coefficient.ZERO)
    assert total == Coefficient.ZERO


def test_cyclotomic_helpers():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert [totient(n) for n in (1, 2, 6, 12)] == [1, 1, 2, 4]
    assert canonical_roots({Fraction(0): Fraction(1), Fraction(1, 2): Fraction(1)}) == {}


@given(rational_phase_coefficients)
def test_canonical_form_is_faithful(c):
    value = c.evaluate({})
    assert (abs(value) < 1e-9) == c.is_zero()


@given(coefficients(), coefficients())
def test_ring_operations_match_complex_numbers(a, b):
    va, vb = a.evaluate(VALUES), b.evaluate(VALUES)
    assert (a + b).evaluate(VALUES) == pytest.approx(va + vb, abs=1e-9)
    assert (a * b).evaluate(VALUES) == pytest.approx(va * vb, abs=1e-9)
    assert a.conjugate().evaluate(VALUES) == pytest.approx(va.conjugate(), abs=1e-9)


@given(coefficients(), coefficients(), coefficients())
def test_ring_laws_hold_exactly(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == Coefficient.ZERO


@given(coefficients())
def test_shift_is_multiplication_by_phase(c):
    p = PhaseExponent.of(AffineForm(Fraction(1, 6), {"theta": 2}))
    assert c.shift(p) == c * Coefficient.phase(p)
    assert c.shift(p).evaluate(VALUES) == pytest.approx(
        c.evaluate(VALUES) * cmath.exp(2j * cmath.pi * (1 / 6 + 2 * VALUES["theta"])), abs=1e-9
    )


@given(coefficients())
def test_json_round_trip(c):
    assert Coefficient.from_json(c.to_json()) == c


def test_substitution_specialises_parameters():
    c = e(0, "theta", 1) + e(0, "theta", 2)
    at_third = c.substitute({"theta": Fraction(1, 3)})
    assert at_third.is_rational()
    assert at_third == Coefficient.scalar(-1)


def test_inverse_phase_of_monomial():
    c = Coefficient.phase(AffineForm(Fraction(1, 4), {"theta": 1}), 3)
    assert c * c.inverse_phase() == Coefficient.ONE
    with pytest.raises(ZeroDivisionError):
        (c + Coefficient.ONE).inverse_phase()
