from __future__ import annotations

from fractions import Fraction
from functools import reduce

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetadeform.algebra import (
    AlgebraContext,
    Element,
    GeneratorSymbol,
    commutative_product,
    extend_multiplicative,
    generate_exchange_relations,
    homogeneous_components,
    ideal_membership,
    membership,
    product,
    star,
    tensor_context,
    twisted_product,
)
from thetadeform.errors import BoundError, ContextError
from thetadeform.phase import DeformationMatrix, PhaseExponent, chi

from .strategies import deformation_matrices, elements


def _context(theta: DeformationMatrix, name="A") -> AlgebraContext:
    gens = [
        GeneratorSymbol("a", (1,), False, (1, 0, 0)),
        GeneratorSymbol("b", (2,), False, (0, 1, -1)),
        GeneratorSymbol("c", (3,), False, (1, 1, 0)),
    ]
    return AlgebraContext(theta, gens, name)


CTX = _context(DeformationMatrix.symbolic(3, "t"))
FLAT = _context(DeformationMatrix.zero(3), "flat")


def _add(r, s):
    return tuple(x + y for x, y in zip(r, s))


def _word_oracle(ctx, seq):
    """g1 x ... x gk = e(sum_{i<j} chi(w_i, w_j)) [sorted word], computed pairwise."""
    total = PhaseExponent.zero()
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            total = total + chi(ctx.theta, seq[i].weight, seq[j].weight)
    return Element.word(seq).shift(PhaseExponent.of(total))


@given(st.lists(st.sampled_from(CTX.all_generators), min_size=1, max_size=5))
def test_products_of_generators_match_pairwise_phase_sum(seq):
    got = product(CTX, *(Element.generator(g) for g in seq))
    assert got == _word_oracle(CTX, seq)


@given(elements(CTX), elements(CTX), elements(CTX))
def test_twisted_product_is_associative(a, b, c):
    left = twisted_product(CTX, twisted_product(CTX, a, b), c)
    right = twisted_product(CTX, a, twisted_product(CTX, b, c))
    assert left == right


@given(elements(CTX), elements(CTX), elements(CTX))
def test_twisted_product_is_bilinear(a, b, c):
    assert twisted_product(CTX, a + b, c) == twisted_product(CTX, a, c) + twisted_product(CTX, b, c)


@given(elements(CTX), elements(CTX))
def test_star_is_an_antimultiplicative_involution(a, b):
    assert star(CTX, star(CTX, a)) == a
    assert star(CTX, twisted_product(CTX, a, b)) == twisted_product(CTX, star(CTX, b), star(CTX, a))


@given(elements(CTX), elements(CTX))
def test_products_respect_the_grading(a, b):
    for r, x in homogeneous_components(a, CTX).items():
        for s, y in homogeneous_components(b, CTX).items():
            assert set(homogeneous_components(twisted_product(CTX, x, y), CTX)) <= {_add(r, s)}


@given(elements(FLAT), elements(FLAT))
def test_zero_matrix_gives_the_commutative_product(a, b):
    assert twisted_product(FLAT, a, b) == commutative_product(a, b)
    assert twisted_product(FLAT, a, b) == twisted_product(FLAT, b, a)


@given(deformation_matrices(symbolic=False))
def test_exchange_relations_hold_identically(theta):
    ctx = _context(theta)
    for rel in generate_exchange_relations(ctx, True, True):
        assert rel.holds(ctx)


def test_generator_and_unit_behaviour():
    a = Element.generator(CTX.generator("a1"))
    assert twisted_product(CTX, Element.one(), a) == a
    assert twisted_product(CTX, a, Element.constant(3)) == a * 3
    assert (a - a).is_zero()
    with pytest.raises(TypeError):
        a * a


def test_mixing_contexts_is_rejected():
    other = AlgebraContext(DeformationMatrix.zero(1), [GeneratorSymbol("x", (1,), False, (1,))], "X")
    x = Element.generator(other.generator("x1"))
    with pytest.raises(ContextError):
        twisted_product(CTX, x, x)
    with pytest.raises(ContextError):
        CTX.generator("x1")


@given(elements(CTX))
def test_element_json_round_trip(a):
    assert Element.from_json(a.to_json(), CTX) == a


def test_tensor_context_has_no_cross_phases():
    t = tensor_context(CTX, CTX)
    x = Element.generator(t.lift(0, CTX.generator("a1")))
    y = Element.generator(t.lift(1, CTX.generator("b2")))
    assert twisted_product(t, x, y) == twisted_product(t, y, x)
    assert t.theta == CTX.theta.direct_sum(CTX.theta)


@given(elements(CTX))
def test_identity_images_extend_to_identity(a):
    images = {g: Element.generator(g) for g in CTX.all_generators}
    assert extend_multiplicative(CTX, CTX, images, a) == a


def test_membership_of_relations_and_non_members(su3):
    pres = su3.presentation
    ctx = su3.context
    for rel in pres.relations[:4]:
        assert ideal_membership(pres, rel, 2)
    u11 = Element.generator(ctx.generator("u11"))
    assert not ideal_membership(pres, u11, 3)
    # a multiple of a relation is found only once the bound allows it
    rel = pres.relations[0]
    shifted = twisted_product(ctx, u11, rel)
    assert membership(pres, shifted, 3).witness_bound == 3
    with pytest.raises(BoundError):
        membership(pres, shifted, 2)


def test_constants_and_degree():
    a = Element.constant(Fraction(2, 3)) + Element.word(CTX.all_generators[:2])
    assert a.constant_term() == Fraction(2, 3)
    assert a.degree() == 2
    assert reduce(lambda x, y: x + y, [a, -a]).is_zero()
