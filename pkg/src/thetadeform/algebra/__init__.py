"""Torus-graded *-algebra kernel."""

from __future__ import annotations

from .coefficient import ONE, ZERO, Coefficient
from .context import AlgebraContext, GeneratorSymbol, TensorContext, Word, tensor_context
from .element import (
    Element,
    commutative_product,
    extend_classical,
    extend_multiplicative,
    format_word,
    homogeneous_components,
    lift_element,
    map_words,
    product,
    star,
    tensor_map,
    twisted_product,
)
from .ideal import Membership, ideal_membership, membership, monomials
from .presentation import ExchangeRelation, Presentation, generate_exchange_relations, tensor_presentation

__all__ = [
    "AlgebraContext",
    "Coefficient",
    "Element",
    "ExchangeRelation",
    "GeneratorSymbol",
    "Membership",
    "ONE",
    "Presentation",
    "TensorContext",
    "Word",
    "ZERO",
    "commutative_product",
    "extend_classical",
    "extend_multiplicative",
    "format_word",
    "generate_exchange_relations",
    "homogeneous_components",
    "ideal_membership",
    "lift_element",
    "map_words",
    "membership",
    "monomials",
    "product",
    "star",
    "tensor_context",
    "tensor_map",
    "tensor_presentation",
    "twisted_product",
]
