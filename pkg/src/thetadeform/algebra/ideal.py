"""Degree-bounded membership in the two-sided ideal of a presentation.

For a relation ``rel`` of a single weight and basis words ``m1, m2`` the
product ``m1 x rel x m2`` is a unit multiple of the commutative product
``[m1 m2 rel]``, so the bounded ideal is spanned by ``[m rel]`` with
``deg m + deg rel <= bound``. Membership is decided one weight class at a
time by exact linear algebra.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian

from ..errors import BoundError
from ..phase import PhaseExponent, Weight
from .coefficient import Coefficient
from .context import AlgebraContext, Word
from .element import Element, _merge, homogeneous_components, twisted_product
from .linalg import CoefficientSpan
from .presentation import Presentation

__all__ = ["ideal_membership", "Membership", "membership", "monomials"]


# -- monomial tables ----------------------------------------------------------


def _tables(ctx: AlgebraContext) -> list[dict[Weight, list[Word]]]:
    tables = ctx.__dict__.get("_monomial_tables")
    if tables is None:
        tables = [{ctx.zero_weight: [()]}]
        ctx.__dict__["_monomial_tables"] = tables
    return tables


def _table(ctx: AlgebraContext, degree: int) -> dict[Weight, list[Word]]:
    """Sorted words of exactly ``degree`` grouped by weight (plain contexts)."""
    tables = _tables(ctx)
    gens = ctx.all_generators
    position = {g: i for i, g in enumerate(gens)}
    while len(tables) <= degree:
        prev = tables[-1]
        nxt: dict[Weight, list[Word]] = {}
        for weight, words in prev.items():
            for w in words:
                start = position[w[-1]] if w else 0
                for g in gens[start:]:
                    nw = tuple(a + b for a, b in zip(weight, g.weight))
                    nxt.setdefault(nw, []).append(w + (g,))
        tables.append(nxt)
    return tables[degree]


def monomials(ctx: AlgebraContext, weight: Weight, degree: int) -> Iterator[Word]:
    """Sorted words of the given weight and exact degree."""
    if not ctx.is_tensor:
        yield from _table(ctx, degree).get(weight, ())
        return
    blocks = []
    for f, off in zip(ctx.factors, ctx.offsets):
        blocks.append((f, weight[off:off + f.dim]))
    # distribute the degree among the factors
    for split in _compositions(degree, len(blocks)):
        choices = []
        for (f, w), d in zip(blocks, split):
            words = _table(f, d).get(w)
            if not words:
                break
            choices.append(words)
        else:
            for parts in cartesian(*choices):
                yield ctx.join_words(parts)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# -- relation preprocessing ---------------------------------------------------


@dataclass
class _Relation:
    element: Element
    weight: Weight | None  # None for relations mixing weights
    degree: int
    rational: dict[Word, Fraction] | None  # unit-normalized rational form, if any


def _prepare(pres: Presentation) -> list[_Relation]:
    out = []
    ctx = pres.context
    for rel in pres.relations:
        if rel.is_zero():
            continue
        comps = homogeneous_components(rel, ctx)
        weight = next(iter(comps)) if len(comps) == 1 else None
        out.append(_Relation(rel, weight, rel.degree(), _rational_form(rel)))
    return out


def _rational_form(rel: Element) -> dict[Word, Fraction] | None:
    first = next(iter(rel.terms.values()))
    if not first.is_monomial():
        return None
    exponent, _ = first.terms[0]
    unit = PhaseExponent.of(-exponent)
    out = {}
    for w, c in rel.terms.items():
        c = c.shift(unit)
        if not c.is_rational():
            return None
        out[w] = c.to_fraction()
    return out


# -- the solver ---------------------------------------------------------------


class _WeightClassSystem:
    """Columns of the bounded ideal inside one weight class, grown degree by degree."""

    def __init__(self, ctx: AlgebraContext, relations: list[_Relation], weight: Weight | None):
        self.ctx = ctx
        self.relations = relations
        self.weight = weight
        self.span = CoefficientSpan()
        self.bound = -1

    def _columns_at(self, total: int) -> Iterator[tuple[dict | None, Element | None]]:
        ctx = self.ctx
        for rel in self.relations:
            d = total - rel.degree
            if d < 0:
                continue
            if rel.weight is None or self.weight is None:
                yield from self._mixed_columns(rel, d)
                continue
            need = tuple(a - b for a, b in zip(self.weight, rel.weight))
            for m in monomials(ctx, need, d):
                if rel.rational is not None:
                    yield {_merge(m, w): c for w, c in rel.rational.items()}, None
                else:
                    yield None, Element._raw(
                        {_merge(m, w): c for w, c in rel.element.terms.items()}
                    )

    def _mixed_columns(self, rel: _Relation, d: int):
        # two-sided products for relations without a single weight
        ctx = self.ctx
        words = [w for k in range(d + 1) for ws in _table_all(ctx, k) for w in ws]
        for left in words:
            for right in words:
                if len(left) + len(right) != d:
                    continue
                col = twisted_product(
                    ctx, twisted_product(ctx, Element.word(left), rel.element), Element.word(right)
                )
                if self.weight is not None:
                    col = homogeneous_components(col, ctx).get(self.weight, Element.zero())
                if col:
                    yield None, col

    def grow(self, bound: int) -> None:
        for total in range(self.bound + 1, bound + 1):
            for rational, element in self._columns_at(total):
                if rational is not None:
                    self.span.add_rational(rational)
                else:
                    self.span.add(element.terms)
        self.bound = max(self.bound, bound)

    def contains(self, target: dict[Word, Coefficient]) -> bool:
        return self.span.contains(target)


def _table_all(ctx: AlgebraContext, degree: int):
    if ctx.is_tensor:
        # enumerate every weight through the factor tables
        weights = {()}
        for f in ctx.factors:
            fw = set()
            for d in range(degree + 1):
                fw.update(_table(f, d))
            weights = {a + b for a in weights for b in fw}
        return [list(monomials(ctx, w, degree)) for w in sorted(weights)]
    return list(_table(ctx, degree).values())


class IdealSolver:
    """Cached membership oracle for one presentation."""

    def __init__(self, pres: Presentation):
        self.pres = pres
        self.relations = _prepare(pres)
        self.homogeneous = all(r.weight is not None for r in self.relations)
        self._systems: dict[Weight | None, _WeightClassSystem] = {}

    def _system(self, weight: Weight | None) -> _WeightClassSystem:
        sys_ = self._systems.get(weight)
        if sys_ is None:
            sys_ = self._systems[weight] = _WeightClassSystem(self.pres.context, self.relations, weight)
        return sys_

    def minimal_bound(self, a: Element, bound: int) -> int | None:
        """Smallest bound (up to ``bound``) at which ``a`` is a member, else None."""
        if a.is_zero():
            return 0
        deg = a.degree()
        if bound < deg:
            raise BoundError(f"degree bound {bound} is below the degree {deg} of the element")
        ctx = self.pres.context
        if self.homogeneous:
            pieces = [(w, dict(e.terms)) for w, e in homogeneous_components(a, ctx).items()]
        else:
            pieces = [(None, dict(a.terms))]
        start = min(max(deg, 1), bound)
        for b in range(start, bound + 1):
            ok = True
            for weight, target in pieces:
                system = self._system(weight)
                system.grow(b)
                if not system.contains(target):
                    ok = False
                    break
            if ok:
                return b
        return None


def _solver(pres: Presentation) -> IdealSolver:
    solver = pres.__dict__.get("_ideal_solver")
    if solver is None:
        solver = pres.__dict__["_ideal_solver"] = IdealSolver(pres)
    return solver


@dataclass(frozen=True)
class Membership:
    member: bool
    bound: int
    witness_bound: int | None = None

    def __bool__(self) -> bool:
        return self.member


def membership(pres: Presentation, a: Element, degree_bound: int) -> Membership:
    found = _solver(pres).minimal_bound(a, degree_bound)
    return Membership(found is not None, degree_bound, found)


def ideal_membership(pres: Presentation, a: Element, degree_bound: int) -> bool:
    """Whether ``a`` lies in the span of ``m1 x rel x m2`` of total degree <= ``degree_bound``."""
    return membership(pres, a, degree_bound).member

