from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetadeform.errors import DimensionError, InvariantViolation, ParseError
from thetadeform.phase import (
    AffineForm,
    DeformationMatrix,
    PhaseExponent,
    chi,
    exchange_phase,
    make_quantum_group_matrix,
    parse_form,
)

from .strategies import affine_forms, deformation_matrices, weights


def test_parse_form_examples():
    f = parse_form("-lambda12 + 1/3")
    assert f.constant == Fraction(1, 3)
    assert dict(f.coeffs) == {"lambda12": -1}
    assert parse_form("2*theta") == AffineForm.param("theta", 2)
    assert parse_form("0").is_zero()


@pytest.mark.parametrize("bad", ["", "theta +", "1/0x", "*theta"])
def test_parse_form_rejects_garbage(bad):
    with pytest.raises((ParseError, ZeroDivisionError)):
        parse_form(bad)


@given(affine_forms())
def test_str_parse_round_trip(f):
    assert parse_form(str(f)) == f


@given(affine_forms())
def test_json_round_trip(f):
    assert AffineForm.from_json(f.to_json()) == f


@given(affine_forms(), affine_forms())
def test_affine_forms_form_a_group(f, g):
    assert f + g == g + f
    assert (f + g) - g == f
    assert f - f == AffineForm.zero()


@given(affine_forms(), st.integers(-5, 5))
def test_phase_exponent_reduces_constant_mod_one(f, shift):
    p = PhaseExponent.of(f)
    assert 0 <= p.constant < 1
    assert PhaseExponent.of(f + shift) == p


@given(affine_forms())
def test_substitution_then_evaluation(f):
    values = {"theta": 0.25, "lambda12": -0.5, "mu": 1.5}
    direct = f.evaluate(values)
    staged = f.substitute({"theta": Fraction(1, 4)}).evaluate(values)
    assert direct == pytest.approx(staged)


def test_matrix_invariants_are_enforced():
    with pytest.raises(InvariantViolation):
        DeformationMatrix([[0, 1], [1, 0]])
    with pytest.raises(InvariantViolation):
        DeformationMatrix([[1, 0], [0, 0]])
    with pytest.raises(DimensionError):
        DeformationMatrix([[0, 1, 0], [-1, 0, 0]])
    with pytest.raises(DimensionError):
        DeformationMatrix.from_upper(2, {(2, 1): "theta"})


def test_symbolic_matrix_names_entries():
    m = DeformationMatrix.symbolic(3, "lambda")
    assert m.params == ("lambda12", "lambda13", "lambda23")
    assert m[1, 0] == -AffineForm.param("lambda12")


def test_quantum_group_matrix_is_block_diagonal():
    K = DeformationMatrix.from_upper(2, {(1, 2): "theta"})
    full = make_quantum_group_matrix(K)
    assert full.dim == 4
    assert full[0, 1] == AffineForm.param("theta")
    assert full[2, 3] == -AffineForm.param("theta")
    assert full[0, 2].is_zero() and full[1, 3].is_zero()


@given(deformation_matrices(), weights(), weights(), weights())
def test_chi_is_a_bicharacter(theta, r, s, t):
    add = lambda a, b: tuple(x + y for x, y in zip(a, b))
    assert chi(theta, add(r, s), t) == PhaseExponent.of(chi(theta, r, t) + chi(theta, s, t))
    assert chi(theta, r, add(s, t)) == PhaseExponent.of(chi(theta, r, s) + chi(theta, r, t))


@given(deformation_matrices(), weights(), weights())
def test_chi_is_antisymmetric(theta, r, s):
    assert PhaseExponent.of(chi(theta, r, s) + chi(theta, s, r)).is_zero()
    assert chi(theta, r, r).is_zero()


@given(deformation_matrices(symbolic=False), weights(), weights())
def test_exchange_phase_matches_complex_ratio(theta, r, s):
    # e(r.theta.s) = chi(r,s) / chi(s,r) as complex numbers
    value = lambda p: cmath.exp(2j * cmath.pi * float(p.constant))
    ratio = value(chi(theta, r, s)) / value(chi(theta, s, r))
    assert value(exchange_phase(theta, r, s)) == pytest.approx(ratio)


def test_chi_rejects_wrong_dimension():
    theta = DeformationMatrix.symbolic(3, "t")
    with pytest.raises(DimensionError):
        chi(theta, (1, 0), (0, 1, 0))


def test_latex_of_greek_parameters():
    assert PhaseExponent.of(parse_form("2*theta - lambda12")).latex().replace(" ", "") in {
        "2\\theta-\\lambda_{12}",
        "-\\lambda_{12}+2\\theta",
    }
