"""Generators, weights and algebra contexts (including tensor products)."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from fractions import Fraction
from functools import lru_cache

from ..errors import ContextError, DimensionError
from ..phase import AffineForm, DeformationMatrix, PhaseExponent, Weight, chi

__all__ = ["GeneratorSymbol", "AlgebraContext", "TensorContext", "tensor_context", "Word"]


class GeneratorSymbol:
    """A named generator such as ``u[1][2]``, ``z[3]`` or its star.

    Generators sort by tensor slot, then unstarred before starred, then by
    ``(name, indices)``.
    """

    __slots__ = ("name", "indices", "starred", "slot", "weight", "key", "_hash", "label")

    def __init__(
        self,
        name: str,
        indices: Sequence[int] = (),
        starred: bool = False,
        weight: Sequence[int] = (),
        slot: int = 0,
    ):
        self.name = name
        self.indices = tuple(int(i) for i in indices)
        self.starred = bool(starred)
        self.slot = int(slot)
        self.weight: Weight = tuple(int(w) for w in weight)
        self.key = (self.slot, self.starred, self.name, self.indices)
        self._hash = hash((self.key, self.weight))
        if all(0 <= i < 10 for i in self.indices):
            body = name + "".join(str(i) for i in self.indices)
        else:
            body = name + "".join(f"[{i}]" for i in self.indices)
        self.label = body + ("*" if self.starred else "")

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeneratorSymbol):
            return NotImplemented
        return self.key == other.key and self.weight == other.weight

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: GeneratorSymbol) -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        prefix = f"{self.slot}:" if self.slot else ""
        return f"<{prefix}{self.label}>"

    def __str__(self) -> str:
        return self.label

    def star(self) -> GeneratorSymbol:
        return GeneratorSymbol(
            self.name, self.indices, not self.starred, tuple(-w for w in self.weight), self.slot
        )

    def base(self) -> GeneratorSymbol:
        """The unstarred member of the pair."""
        return self.star() if self.starred else self

    def latex(self) -> str:
        idx = "".join(str(i) for i in self.indices)
        text = self.name + (f"_{{{idx}}}" if idx else "")
        return text + ("^*" if self.starred else "")


Word = tuple[GeneratorSymbol, ...]


class AlgebraContext:
    """Weight lattice, deformation matrix and generator set of one algebra.

    ``generators`` lists the unstarred generators; every generator has a
    star partner of opposite weight.
    """

    is_tensor = False

    def __init__(self, theta: DeformationMatrix, generators: Sequence[GeneratorSymbol], name: str = ""):
        self.theta = theta
        self.dim = theta.dim
        self.name = name
        base = []
        for g in generators:
            if len(g.weight) != self.dim:
                raise DimensionError(
                    f"generator {g.label} has weight of length {len(g.weight)}, expected {self.dim}"
                )
            base.append(g.base())
        self.generators: tuple[GeneratorSymbol, ...] = tuple(sorted(set(base)))
        self.all_generators: tuple[GeneratorSymbol, ...] = tuple(
            sorted(self.generators + tuple(g.star() for g in self.generators))
        )
        self._members = frozenset(self.all_generators)
        self._by_label = {g.label: g for g in self.all_generators}
        self._chi: dict[tuple[Weight, Weight], PhaseExponent] = {}
        self._word_weight: dict[Word, Weight] = {}
        self._basis_phase: dict[Word, PhaseExponent] = {}
        self.zero_weight: Weight = (0,) * self.dim

    def __repr__(self) -> str:
        return f"<AlgebraContext {self.name or '?'} dim={self.dim} gens={len(self.generators)}>"

    @property
    def factors(self) -> tuple[AlgebraContext, ...]:
        return (self,)

    @property
    def params(self) -> tuple[str, ...]:
        return self.theta.params

    def generator(self, label: str) -> GeneratorSymbol:
        try:
            return self._by_label[label]
        except KeyError:
            raise ContextError(f"no generator {label!r} in {self.name or 'context'}") from None

    def owns(self, g: GeneratorSymbol) -> bool:
        return g in self._members

    def check_word(self, word: Word) -> None:
        for g in word:
            if g not in self._members:
                raise ContextError(f"generator {g!r} does not belong to {self.name or 'this context'}")

    def chi(self, r: Weight, s: Weight) -> PhaseExponent:
        key = (r, s)
        value = self._chi.get(key)
        if value is None:
            value = chi(self.theta, r, s)
            self._chi[key] = value
        return value

    def word_weight(self, word: Word) -> Weight:
        value = self._word_weight.get(word)
        if value is None:
            if not word:
                value = self.zero_weight
            elif len(word) == 1:
                value = word[0].weight
            else:
                value = tuple(map(sum, zip(*(g.weight for g in word))))
            self._word_weight[word] = value
        return value

    def basis_phase(self, word: Word) -> PhaseExponent:
        """Exponent ``c`` with ``g1 x g2 x ... x gk = e^{2 pi i c} [g1 g2 ... gk]``."""
        value = self._basis_phase.get(word)
        if value is None:
            value = PhaseExponent.zero()
            acc = self.zero_weight
            for g in word:
                if acc != self.zero_weight:
                    value = value + self.chi(acc, g.weight)
                acc = tuple(a + b for a, b in zip(acc, g.weight))
            self._basis_phase[word] = value
        return value

    def substitute(self, mapping: Mapping[str, AffineForm | int | Fraction]) -> AlgebraContext:
        return AlgebraContext(self.theta.substitute(mapping), self.generators, self.name)

    # plain contexts behave like one-factor tensors for embedding purposes
    def split_generator(self, g: GeneratorSymbol) -> tuple[int, GeneratorSymbol]:
        return 0, g


class TensorContext(AlgebraContext):
    """Graded tensor product of contexts with deformation matrix theta_1 (+) theta_2 (+) ...

    Generators of factor ``i`` are copied into slot ``i`` with their weights
    padded by zeros, so the twisted product of simple tensors picks up
    exactly the phases of the individual factors.
    """

    is_tensor = True

    def __init__(self, factors: Sequence[AlgebraContext]):
        flat: list[AlgebraContext] = []
        for f in factors:
            flat.extend(f.factors)
        self._factors = tuple(flat)
        theta = flat[0].theta.direct_sum(*(f.theta for f in flat[1:]))
        self.offsets: list[int] = []
        offset = 0
        embed: dict[tuple[int, GeneratorSymbol], GeneratorSymbol] = {}
        split: dict[GeneratorSymbol, tuple[int, GeneratorSymbol]] = {}
        gens = []
        for slot, f in enumerate(flat):
            self.offsets.append(offset)
            for g in f.all_generators:
                weight = (0,) * offset + g.weight + (0,) * (theta.dim - offset - f.dim)
                tg = GeneratorSymbol(g.name, g.indices, g.starred, weight, slot)
                embed[(slot, g)] = tg
                split[tg] = (slot, g)
                if not g.starred:
                    gens.append(tg)
            offset += f.dim
        self._embed = embed
        self._split = split
        name = " (x) ".join(f.name or "?" for f in flat)
        super().__init__(theta, gens, name)
        self._split_cache: dict[Word, tuple[Word, ...]] = {}

    @property
    def factors(self) -> tuple[AlgebraContext, ...]:
        return self._factors

    def split_generator(self, g: GeneratorSymbol) -> tuple[int, GeneratorSymbol]:
        try:
            return self._split[g]
        except KeyError:
            raise ContextError(f"generator {g!r} does not belong to {self.name}") from None

    def lift(self, slot: int, g: GeneratorSymbol) -> GeneratorSymbol:
        try:
            return self._embed[(slot, g)]
        except KeyError:
            raise ContextError(f"generator {g!r} is not in factor {slot} of {self.name}") from None

    def split_word(self, word: Word) -> tuple[Word, ...]:
        """Per-factor words (in factor generators) of a tensor word."""
        value = self._split_cache.get(word)
        if value is None:
            parts: list[list[GeneratorSymbol]] = [[] for _ in self._factors]
            for g in word:
                slot, fg = self._split[g]
                parts[slot].append(fg)
            value = tuple(tuple(p) for p in parts)
            self._split_cache[word] = value
        return value

    def join_words(self, parts: Sequence[Word], start: int = 0) -> Word:
        out: list[GeneratorSymbol] = []
        for i, part in enumerate(parts):
            for g in part:
                out.append(self._embed[(start + i, g)])
        return tuple(out)

    def lift_word(self, word: Word, source: AlgebraContext, start: int) -> Word:
        """Map a word of ``source`` (whose factors sit at ``start``...) into this context."""
        out = []
        for g in word:
            slot, fg = source.split_generator(g)
            out.append(self._embed[(start + slot, fg)])
        return tuple(out)

    def substitute(self, mapping) -> TensorContext:
        return tensor_context(*(f.substitute(mapping) for f in self._factors))


@lru_cache(maxsize=256)
def _tensor_cached(factors: tuple[AlgebraContext, ...]) -> TensorContext:
    return TensorContext(factors)


def tensor_context(*contexts: AlgebraContext) -> TensorContext:
    """Flattened tensor product context; identical factor tuples share one object."""
    flat: list[AlgebraContext] = []
    for c in contexts:
        flat.extend(c.factors)
    return _tensor_cached(tuple(flat))
