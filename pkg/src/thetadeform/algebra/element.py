"""Elements on the sorted-word basis and the exact twisted product."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping, Sequence
from fractions import Fraction
from operator import attrgetter
from typing import Union

from ..errors import ContextError, ParseError
from ..phase import PhaseExponent, Weight
from .coefficient import ONE, ZERO, Coefficient
from .context import AlgebraContext, GeneratorSymbol, TensorContext, Word

__all__ = [
    "Element",
    "twisted_product",
    "product",
    "commutative_product",
    "star",
    "homogeneous_components",
    "extend_multiplicative",
    "extend_classical",
    "map_words",
    "lift_element",
    "tensor_map",
    "format_word",
]

CoefLike = Union[Coefficient, int, Fraction]
_KEY = attrgetter("key")


def _coef(value: CoefLike) -> Coefficient:
    return value if isinstance(value, Coefficient) else Coefficient.scalar(value)


def canonical_word(gens: Iterable[GeneratorSymbol]) -> Word:
    return tuple(sorted(gens, key=_KEY))


class Element:
    """Finite combination of canonical (sorted) words with exact coefficients.

    Elements carry no context; the context is passed to the operations that
    need the deformation matrix.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[GeneratorSymbol], CoefLike] | None = None):
        acc: dict[Word, Coefficient] = {}
        for word, c in (terms or {}).items():
            w = canonical_word(word)
            prev = acc.get(w)
            acc[w] = _coef(c) if prev is None else prev + _coef(c)
        self.terms: dict[Word, Coefficient] = {w: c for w, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Word, Coefficient]) -> Element:
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def _collect(cls, acc: dict[Word, Coefficient]) -> Element:
        return cls._raw({w: c for w, c in acc.items() if c})

    @classmethod
    def zero(cls) -> Element:
        return cls._raw({})

    @classmethod
    def one(cls) -> Element:
        return cls._raw({(): ONE})

    @classmethod
    def constant(cls, value: CoefLike) -> Element:
        c = _coef(value)
        return cls._raw({(): c} if c else {})

    @classmethod
    def generator(cls, g: GeneratorSymbol, coef: CoefLike = 1) -> Element:
        return cls._raw({(g,): _coef(coef)})

    @classmethod
    def word(cls, word: Sequence[GeneratorSymbol], coef: CoefLike = 1) -> Element:
        c = _coef(coef)
        return cls._raw({canonical_word(word): c} if c else {})

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def words(self) -> list[Word]:
        return sorted(self.terms, key=_word_sort_key)

    def items(self) -> list[tuple[Word, Coefficient]]:
        return [(w, self.terms[w]) for w in self.words()]

    def coefficient(self, word: Sequence[GeneratorSymbol]) -> Coefficient:
        return self.terms.get(canonical_word(word), ZERO)

    def constant_term(self) -> Coefficient:
        return self.terms.get((), ZERO)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def generators(self) -> set[GeneratorSymbol]:
        return {g for w in self.terms for g in w}

    @property
    def params(self) -> tuple[str, ...]:
        return tuple(sorted({p for c in self.terms.values() for p in c.params}))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Coefficient)):
            other = Element.constant(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- linear structure --------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Coefficient)):
            other = Element.constant(other)
        if not isinstance(other, Element):
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        for w, c in other.terms.items():
            prev = acc.get(w)
            acc[w] = c if prev is None else prev + c
        return Element._collect(acc)

    __radd__ = __add__

    def __neg__(self) -> Element:
        return Element._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Coefficient)):
            other = Element.constant(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Scalar multiplication only; algebra products need a context."""
        if isinstance(other, Element):
            raise TypeError("use twisted_product(ctx, a, b) to multiply elements")
        if not isinstance(other, (int, Fraction, Coefficient)):
            return NotImplemented
        c = _coef(other)
        if not c:
            return Element.zero()
        return Element._collect({w: v * c for w, v in self.terms.items()})

    __rmul__ = __mul__

    def shift(self, exponent: PhaseExponent) -> Element:
        """Multiply every coefficient by e^{2 pi i exponent}."""
        if exponent.is_zero():
            return self
        return Element._raw({w: c.shift(exponent) for w, c in self.terms.items()})

    def substitute(self, mapping) -> Element:
        return Element._collect({w: c.substitute(mapping) for w, c in self.terms.items()})

    def evaluate(self, values: Mapping[str, float]) -> dict[Word, complex]:
        return {w: c.evaluate(values) for w, c in self.terms.items()}

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.items():
            text = format_word(w)
            if c == 1:
                parts.append(text)
            elif c == -1:
                parts.append("-" + text)
            elif len(c.terms) == 1:
                parts.append(f"{c}*{text}" if w else str(c))
            else:
                parts.append(f"({c})*{text}" if w else f"({c})")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Element({str(self)!r})"

    def latex(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.items():
            text = format_word(w, latex=True)
            if c == 1:
                parts.append(text)
            elif c == -1:
                parts.append("-" + text)
            elif len(c.terms) == 1:
                parts.append(c.latex() + (" " + text if w else ""))
            else:
                parts.append(f"\\left({c.latex()}\\right)" + (" " + text if w else ""))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        out = []
        for w, c in self.items():
            word = [[g.slot, g.label] if g.slot else g.label for g in w]
            out.append({"word": word, "coefficient": c.to_json()})
        return out

    @classmethod
    def from_json(cls, data: list, ctx: AlgebraContext) -> Element:
        if not isinstance(data, list):
            raise ParseError(f"element must be a list of terms, got {data!r}")
        terms: dict[Word, Coefficient] = {}
        for item in data:
            try:
                gens = []
                for entry in item["word"]:
                    if isinstance(entry, list):
                        slot, label = entry
                        gens.append(ctx.lift(slot, ctx.factors[slot].generator(label)))
                    elif ctx.is_tensor:
                        gens.append(ctx.lift(0, ctx.factors[0].generator(entry)))
                    else:
                        gens.append(ctx.generator(entry))
                coef = Coefficient.from_json(item["coefficient"])
            except (KeyError, TypeError, ValueError, ContextError) as exc:
                raise ParseError(f"bad element term {item!r}: {exc}") from exc
            w = canonical_word(gens)
            terms[w] = terms.get(w, ZERO) + coef
        return cls._collect(terms)


def _word_sort_key(word: Word):
    return (len(word), tuple(g.key for g in word))


def format_word(word: Word, latex: bool = False) -> str:
    if not word:
        return "1"
    sep = " " if latex else " "
    label = (lambda g: g.latex()) if latex else (lambda g: g.label)
    slots = {g.slot for g in word}
    if slots == {0}:
        return sep.join(label(g) for g in word)
    groups: list[list[str]] = [[] for _ in range(max(slots) + 1)]
    for g in word:
        groups[g.slot].append(label(g))
    tensor = " \\otimes " if latex else " (x) "
    return tensor.join(sep.join(grp) if grp else "1" for grp in groups)


# -- products ---------------------------------------------------------------


def _check(ctx: AlgebraContext, *elements: Element) -> None:
    seen: set[GeneratorSymbol] = set()
    for e in elements:
        for w in e.terms:
            seen.update(w)
    for g in seen:
        if not ctx.owns(g):
            raise ContextError(f"generator {g!r} does not belong to {ctx.name or 'this context'}")


def _merge(w1: Word, w2: Word) -> Word:
    if not w1:
        return w2
    if not w2:
        return w1
    if w1[-1].key <= w2[0].key:
        return w1 + w2
    return tuple(sorted(w1 + w2, key=_KEY))


def _twisted(ctx: AlgebraContext, a: Element, b: Element) -> Element:
    acc: dict[Word, Coefficient] = {}
    weight = ctx.word_weight
    chi = ctx.chi
    b_items = [(w2, c2, weight(w2)) for w2, c2 in b.terms.items()]
    for w1, c1 in a.terms.items():
        r = weight(w1)
        for w2, c2, s in b_items:
            c = c1 * c2
            if w1 and w2:
                c = c.shift(chi(r, s))
            w = _merge(w1, w2)
            prev = acc.get(w)
            acc[w] = c if prev is None else prev + c
    return Element._collect(acc)


def twisted_product(ctx: AlgebraContext, a: Element, b: Element) -> Element:
    """Bilinear extension of ``[w1] x [w2] = chi(wt w1, wt w2) [sort(w1 w2)]``."""
    _check(ctx, a, b)
    return _twisted(ctx, a, b)


def product(ctx: AlgebraContext, *elements: Element) -> Element:
    """Left-to-right twisted product of any number of elements."""
    _check(ctx, *elements)
    out = Element.one()
    for e in elements:
        out = _twisted(ctx, out, e)
    return out


def commutative_product(a: Element, b: Element) -> Element:
    """Product in the underlying commutative coordinate algebra."""
    acc: dict[Word, Coefficient] = {}
    unit = ONE.terms
    right = [(w2, c2, c2.terms == unit) for w2, c2 in b.terms.items()]
    for w1, c1 in a.terms.items():
        left_unit = c1.terms == unit
        for w2, c2, right_unit in right:
            w = _merge(w1, w2)
            c = c2 if left_unit else (c1 if right_unit else c1 * c2)
            prev = acc.get(w)
            acc[w] = c if prev is None else prev + c
    return Element._collect(acc)


def star(ctx: AlgebraContext, a: Element) -> Element:
    """Antilinear involution: conjugate coefficients and star every generator.

    On the sorted basis no extra phase appears, since
    ``star([w]) = [w*]`` is compatible with ``star(a x b) = star(b) x star(a)``.
    """
    _check(ctx, a)
    acc: dict[Word, Coefficient] = {}
    for w, c in a.terms.items():
        sw = canonical_word(g.star() for g in w)
        prev = acc.get(sw)
        cc = c.conjugate()
        acc[sw] = cc if prev is None else prev + cc
    return Element._collect(acc)


def homogeneous_components(a: Element, ctx: AlgebraContext | None = None) -> dict[Weight, Element]:
    """Split ``a`` by word weight; the pieces sum back to ``a``."""
    dim = ctx.dim if ctx is not None else next((len(g.weight) for w in a.terms for g in w), 0)
    zero = (0,) * dim
    out: dict[Weight, dict[Word, Coefficient]] = {}
    for w, c in a.terms.items():
        weight = ctx.word_weight(w) if ctx is not None else (
            tuple(map(sum, zip(*(g.weight for g in w)))) if w else zero
        )
        out.setdefault(weight, {})[w] = c
    return {k: Element._raw(v) for k, v in sorted(out.items())}


# -- maps -------------------------------------------------------------------


def map_words(a: Element, f: Callable[[Word], Element], cache: dict | None = None) -> Element:
    """Linear extension of a map defined on basis words."""
    acc: dict[Word, Coefficient] = {}
    for w, c in a.terms.items():
        if cache is not None:
            img = cache.get(w)
            if img is None:
                img = cache[w] = f(w)
        else:
            img = f(w)
        for w2, c2 in img.terms.items():
            v = c * c2
            prev = acc.get(w2)
            acc[w2] = v if prev is None else prev + v
    return Element._collect(acc)


def extend_multiplicative(
    src: AlgebraContext,
    dst: AlgebraContext,
    images: Mapping[GeneratorSymbol, Element],
    a: Element,
    *,
    anti: bool = False,
    cache: dict | None = None,
) -> Element:
    """Extend a map on generators to a (anti-)homomorphism of twisted products.

    A basis word satisfies ``[w] = c(w)^{-1} g1 x ... x gk``, so its image is
    ``c(w)^{-1} phi(g1) x ... x phi(gk)`` (factors reversed when ``anti``).
    """
    prefixes: dict[Word, Element] = {} if cache is None else cache.setdefault("prefix", {})

    def ordered(seq: Word) -> Element:
        value = prefixes.get(seq)
        if value is None:
            if not seq:
                value = Element.one()
            else:
                try:
                    img = images[seq[-1]]
                except KeyError:
                    raise ContextError(f"no image given for generator {seq[-1]!r}") from None
                value = _twisted(dst, ordered(seq[:-1]), img)
            prefixes[seq] = value
        return value

    def on_word(w: Word) -> Element:
        seq = tuple(reversed(w)) if anti else w
        return ordered(seq).shift(-src.basis_phase(w))

    words = None if cache is None else cache.setdefault("words", {})
    return map_words(a, on_word, words)


def extend_classical(
    images: Mapping[GeneratorSymbol, Element], a: Element, cache: dict | None = None
) -> Element:
    """Extend a map on generators multiplicatively in the commutative picture."""
    prefixes: dict[Word, Element] = {} if cache is None else cache.setdefault("prefix", {})

    def ordered(seq: Word) -> Element:
        value = prefixes.get(seq)
        if value is None:
            value = Element.one() if not seq else commutative_product(ordered(seq[:-1]), images[seq[-1]])
            prefixes[seq] = value
        return value

    words = None if cache is None else cache.setdefault("words", {})
    return map_words(a, ordered, words)


def lift_element(dst: TensorContext, a: Element, src: AlgebraContext, start: int = 0) -> Element:
    """Embed an element of ``src`` into the tensor context at factor ``start``."""
    return Element._raw({dst.lift_word(w, src, start): c for w, c in a.terms.items()})


def tensor_map(
    a: Element,
    src: TensorContext,
    dst: AlgebraContext,
    legs: Sequence[tuple[Callable[[Word], Element], AlgebraContext, int]],
    caches: Sequence[dict] | None = None,
) -> Element:
    """Apply ``f_1 (x) f_2 (x) ...`` to an element of a tensor context.

    ``legs[i] = (f, out_ctx, start)``: ``f`` maps a word of factor ``i`` to
    an element of ``out_ctx``, which is placed in ``dst`` from factor
    ``start`` on (a plain ``dst`` takes images unchanged). Disjoint slots
    carry no relative phase, so simple tensors are formed by plain
    concatenation.
    """
    if len(legs) != len(src.factors):
        raise ContextError(f"expected {len(src.factors)} legs, got {len(legs)}")
    caches = list(caches) if caches is not None else [{} for _ in legs]
    lifted_cache: list[dict] = [c.setdefault("__lifted__", {}) for c in caches]

    def leg_image(i: int, part: Word) -> Element:
        value = lifted_cache[i].get(part)
        if value is None:
            f, out_ctx, start = legs[i]
            image = f(part)
            value = lift_element(dst, image, out_ctx, start) if dst.is_tensor else image
            lifted_cache[i][part] = value
        return value

    acc: dict[Word, Coefficient] = {}
    for w, c in a.terms.items():
        parts = src.split_word(w)
        img = Element.constant(c)
        for i, part in enumerate(parts):
            img = commutative_product(img, leg_image(i, part))
            if not img:
                break
        for w2, c2 in img.terms.items():
            prev = acc.get(w2)
            acc[w2] = c2 if prev is None else prev + c2
    return Element._collect(acc)
