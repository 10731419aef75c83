"""Presentations: a context plus structural relations, and exchange relations."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from ..errors import ContextError
from ..phase import PhaseExponent, exchange_phase
from .context import AlgebraContext, GeneratorSymbol
from .element import Element, twisted_product

__all__ = ["ExchangeRelation", "Presentation", "generate_exchange_relations"]


@dataclass(frozen=True)
class ExchangeRelation:
    """``left * right = e^{2 pi i phase} right * left``."""

    left: GeneratorSymbol
    right: GeneratorSymbol
    phase: PhaseExponent

    @property
    def is_commutator(self) -> bool:
        return self.phase.is_zero()

    def element(self, ctx: AlgebraContext) -> Element:
        """``g x h - e^{2 pi i phase} h x g``, which the twisted product makes zero."""
        g, h = Element.generator(self.left), Element.generator(self.right)
        return twisted_product(ctx, g, h) - twisted_product(ctx, h, g).shift(self.phase)

    def holds(self, ctx: AlgebraContext) -> bool:
        return self.element(ctx).is_zero()

    def __str__(self) -> str:
        g, h = self.left.label, self.right.label
        if self.is_commutator:
            return f"[{g}, {h}] = 0"
        return f"{g} {h} = e(2pi i*({self.phase})) {h} {g}"

    def latex(self) -> str:
        g, h = self.left.latex(), self.right.latex()
        if self.is_commutator:
            return f"[{g}, {h}] = 0"
        return f"{g}{h} = e^{{2\\pi i({self.phase.latex()})}}{h}{g}"

    def to_json(self) -> dict:
        return {
            "left": self.left.label,
            "right": self.right.label,
            "phase": self.phase.to_json(),
        }


def generate_exchange_relations(
    ctx: AlgebraContext, include_commutators: bool = False, include_stars: bool = False
) -> list[ExchangeRelation]:
    """Exchange relations for every unordered generator pair ``g < h``.

    Pairs with zero phase are emitted only when ``include_commutators``;
    starred generators take part only when ``include_stars`` (the pair
    ``g, g*`` always commutes and is skipped).
    """
    gens = ctx.all_generators if include_stars else ctx.generators
    out = []
    for i, g in enumerate(gens):
        for h in gens[i + 1:]:
            if h == g.star():
                continue
            phase = PhaseExponent.of(exchange_phase(ctx.theta, g.weight, h.weight))
            if phase.is_zero() and not include_commutators:
                continue
            out.append(ExchangeRelation(g, h, phase))
    return out


class Presentation:
    """Algebra context together with structural relations (each ``= 0``).

    Exchange relations are not listed: they hold identically on the sorted
    basis and are produced by :meth:`exchange_relations`.
    """

    def __init__(
        self,
        context: AlgebraContext,
        relations: Sequence[Element] = (),
        labels: Sequence[str] | None = None,
        name: str = "",
        family: str = "",
    ):
        self.context = context
        self.relations: tuple[Element, ...] = tuple(relations)
        self.labels: tuple[str, ...] = (
            tuple(labels) if labels is not None else tuple(f"r{i + 1}" for i in range(len(self.relations)))
        )
        if len(self.labels) != len(self.relations):
            raise ValueError("one label per relation is required")
        for rel in self.relations:
            for g in rel.generators():
                if not context.owns(g):
                    raise ContextError(f"relation uses {g!r}, which is not a generator of the context")
        self.name = name or context.name
        self.family = family

    def __repr__(self) -> str:
        return f"<Presentation {self.name} with {len(self.relations)} relations>"

    @property
    def max_relation_degree(self) -> int:
        return max((r.degree() for r in self.relations), default=0)

    @property
    def default_bound(self) -> int:
        return 2 + self.max_relation_degree

    @property
    def params(self) -> tuple[str, ...]:
        return self.context.params

    def exchange_relations(self, include_commutators: bool = False, include_stars: bool = False):
        return generate_exchange_relations(self.context, include_commutators, include_stars)

    def substitute(self, mapping) -> Presentation:
        ctx = self.context.substitute(mapping)
        rels = [r.substitute(mapping) for r in self.relations]
        return Presentation(ctx, rels, self.labels, self.name, self.family)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Presentation):
            return NotImplemented
        return (
            self.context.theta == other.context.theta
            and self.context.generators == other.context.generators
            and self.relations == other.relations
        )

    def __hash__(self) -> int:
        return hash((self.context.theta, self.context.generators, self.relations))

    def describe(self) -> list[str]:
        return [f"{label}: {rel} = 0" for label, rel in zip(self.labels, self.relations)]



def tensor_presentation(*presentations: Presentation) -> Presentation:
    """Relations of each factor placed in its own tensor slot (``r (x) 1``, ``1 (x) r``, ...)."""
    from .context import tensor_context
    from .element import lift_element

    ctx = tensor_context(*(p.context for p in presentations))
    rels: list[Element] = []
    labels: list[str] = []
    start = 0
    for p in presentations:
        for label, rel in zip(p.labels, p.relations):
            rels.append(lift_element(ctx, rel, p.context, start))
            labels.append(f"{start}:{label}")
        start += len(p.context.factors)
    return Presentation(ctx, rels, labels, ctx.name)
