from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings

from thetadeform.algebra import AlgebraContext, Element, tensor_context, twisted_product
from thetadeform.catalog import build_su_theta, build_torus_group
from thetadeform.constraints import ExtensionStatus
from thetadeform.errors import UnsupportedDegree
from thetadeform.hopf import (
    antipode,
    check_antipode_axiom,
    check_coassociativity,
    check_coproduct_homomorphism,
    check_corep_unitarity,
    check_counit,
    check_haar_identities,
    coproduct,
    counit,
    haar_state,
    hopf_report,
)
from thetadeform.phase import AffineForm, DeformationMatrix
from thetadeform.report import Status

from .strategies import elements

SU3 = build_su_theta(3, "theta")


def test_structure_maps_on_generators(su3):
    t2 = su3.tensor2
    for i, j, g in su3.entries():
        expected = Element.zero()
        for k in range(1, 4):
            expected = expected + Element.word((t2.lift(0, su3.grid[i - 1][k - 1]), t2.lift(1, su3.grid[k - 1][j - 1])))
        assert coproduct(su3, Element.generator(g)) == expected
        assert counit(su3, Element.generator(g)) == (1 if i == j else 0)
        assert antipode(su3, Element.generator(g)) == su3.ustar(j, i)


@settings(max_examples=25)
@given(elements(SU3.context, max_terms=2, max_degree=2), elements(SU3.context, max_terms=2, max_degree=2))
def test_coproduct_is_multiplicative(a, b):
    t2 = SU3.tensor2
    ctx = SU3.context
    assert coproduct(SU3, twisted_product(ctx, a, b)) == twisted_product(t2, coproduct(SU3, a), coproduct(SU3, b))


@settings(max_examples=25)
@given(elements(SU3.context, max_terms=2, max_degree=2), elements(SU3.context, max_terms=2, max_degree=2))
def test_counit_is_multiplicative_and_antipode_antimultiplicative(a, b):
    ctx = SU3.context
    ab = twisted_product(ctx, a, b)
    assert counit(SU3, ab) == counit(SU3, a) * counit(SU3, b)
    assert antipode(SU3, ab) == twisted_product(ctx, antipode(SU3, b), antipode(SU3, a))


def test_su3_axioms_pass(su3):
    for report in (
        check_coassociativity(su3),
        check_counit(su3),
        check_antipode_axiom(su3, 4),
        check_corep_unitarity(su3, 4),
        check_haar_identities(su3),
    ):
        assert report.status is Status.PASS, report.lines()


def test_torus_group_is_a_quantum_group():
    T = build_torus_group(DeformationMatrix.symbolic(2, "lambda"), 2)
    assert hopf_report(T).status is Status.PASS


def test_broken_coproduct_is_caught(su3):
    t2 = su3.tensor2
    images = {}
    for g in su3.context.all_generators:
        x, y = t2.lift(0, g), t2.lift(1, g)
        images[g] = Element.word((x, y)) + Element.word((x,))
    report = check_coassociativity(su3, images=images)
    assert report.status is Status.FAIL
    assert report.results[0].witness


def test_full_matrix_must_split_into_opposite_blocks(su3):
    generic = AlgebraContext(DeformationMatrix.symbolic(4, "t"), su3.context.generators, "generic")
    report, constraints = check_coproduct_homomorphism(generic, su3.grid)
    assert report.status is Status.FAIL
    assert constraints.status is ExtensionStatus.EXTENDS_IFF
    assert set(map(str, constraints.solved)) == {"t12 + t34", "t13", "t14", "t23", "t24"}
    ok, _ = check_coproduct_homomorphism(su3)
    assert ok.status is Status.PASS


def test_haar_state_against_schur_orthogonality():
    for n, K in ((3, "theta"), (4, None)):
        Q = build_su_theta(n, K)
        ctx = Q.context
        for i, j, g in Q.entries():
            assert haar_state(Q, Element.generator(g)) == 0
            for k, l, h in Q.entries():
                expected = Fraction(1, n) if (i, j) == (k, l) else Fraction(0)
                value = haar_state(Q, twisted_product(ctx, Element.generator(g), Element.generator(h.star())))
                assert value == expected
        assert haar_state(Q, Element.one()) == 1


def test_haar_state_outside_its_domain(su3):
    ctx = su3.context
    u = [Element.generator(ctx.generator(x)) for x in ("u11", "u22", "u33")]
    det_like = twisted_product(ctx, twisted_product(ctx, u[0], u[1]), u[2])
    with pytest.raises(UnsupportedDegree):
        haar_state(su3, det_like)
    # nonzero weight is killed regardless of degree
    assert haar_state(su3, twisted_product(ctx, u[0], u[0])) == 0


def test_specialised_parameters_still_pass():
    Q = build_su_theta(3, "theta").substitute({"theta": AffineForm(Fraction(1, 7))})
    assert Q.params == ()
    assert check_coassociativity(Q).status is Status.PASS
    assert check_corep_unitarity(Q).status is Status.PASS


def test_tensor_context_reuse(su3):
    assert tensor_context(su3.context, su3.context) is su3.tensor2
