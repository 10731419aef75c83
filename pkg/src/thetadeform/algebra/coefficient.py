"""Exact coefficients: rational combinations of phases e^{2 pi i f}."""

from __future__ import annotations

import cmath
from collections.abc import Iterable, Mapping
from fractions import Fraction
from functools import lru_cache
from typing import Union

from ..errors import ParseError
from ..phase import AffineForm, PhaseExponent, _frac_str
from .cyclotomic import canonical_roots

__all__ = ["Coefficient"]

Scalar = Union[int, Fraction]


@lru_cache(maxsize=65536)
def _canonical_group(items: tuple[tuple[Fraction, Fraction], ...]) -> tuple[tuple[Fraction, Fraction], ...]:
    return tuple(sorted(canonical_roots(dict(items)).items()))


def _build(pairs: Iterable[tuple[PhaseExponent, Fraction]]):
    groups: dict[tuple, dict[Fraction, Fraction]] = {}
    for exponent, scalar in pairs:
        group = groups.setdefault(exponent.coeffs, {})
        group[exponent.constant] = group.get(exponent.constant, 0) + scalar
    out: list[tuple[PhaseExponent, Fraction]] = []
    for coeffs, consts in groups.items():
        if len(consts) == 1 and 0 in consts:
            scalar = consts[0]
            if scalar:
                out.append((PhaseExponent._raw(Fraction(0), coeffs), Fraction(scalar)))
            continue
        for const, scalar in _canonical_group(tuple(sorted(consts.items()))):
            out.append((PhaseExponent._raw(const, coeffs), scalar))
    out.sort(key=lambda t: (t[0].coeffs, t[0].constant))
    return tuple(out)


class Coefficient:
    """The exact complex number ``sum(scalar * e^{2 pi i exponent})``.

    Terms with equal exponents are merged and zero scalars dropped; terms
    whose exponents differ only in the constant part are put in the power
    basis of the smallest cyclotomic field containing their sum, so equal
    values have identical ``terms``.
    """

    __slots__ = ("terms", "_hash")

    terms: tuple[tuple[PhaseExponent, Fraction], ...]

    def __init__(self, pairs: Iterable[tuple[PhaseExponent, Scalar]] = ()):
        self._set(_build((e, Fraction(s)) for e, s in pairs))

    def _set(self, terms) -> None:
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", hash(terms))

    def __setattr__(self, name, value):
        raise AttributeError("Coefficient is immutable")

    @classmethod
    def _raw(cls, terms) -> Coefficient:
        obj = cls.__new__(cls)
        obj._set(terms)
        return obj

    @classmethod
    def scalar(cls, value: Scalar) -> Coefficient:
        value = Fraction(value)
        if not value:
            return ZERO
        return cls._raw(((_ZERO_EXP, value),))

    @classmethod
    def phase(cls, exponent: AffineForm, scalar: Scalar = 1) -> Coefficient:
        exponent = PhaseExponent.of(exponent) if type(exponent) is not PhaseExponent else exponent
        scalar = Fraction(scalar)
        if not scalar:
            return ZERO
        if exponent.constant == 0:
            return cls._raw(((exponent, scalar),))
        return cls(((exponent, scalar),))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_rational(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def to_fraction(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.terms[0][1]

    def is_monomial(self) -> bool:
        """A single rational multiple of one phase."""
        return len(self.terms) == 1

    @property
    def params(self) -> tuple[str, ...]:
        return tuple(sorted({p for e, _ in self.terms for p in e.params}))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Coefficient.scalar(other)
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return self._hash

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> Coefficient | None:
        if isinstance(other, Coefficient):
            return other
        if isinstance(other, (int, Fraction)):
            return Coefficient.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        return Coefficient._raw(_build(self.terms + other.terms))

    __radd__ = __add__

    def __neg__(self) -> Coefficient:
        return Coefficient._raw(tuple((e, -s) for e, s in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            if other == 1:
                return self
            return Coefficient._raw(tuple((e, s * other) for e, s in self.terms))
        if not isinstance(other, Coefficient):
            return NotImplemented
        if not self.terms or not other.terms:
            return ZERO
        if len(other.terms) == 1 and other.terms[0][0].is_zero():
            return self * other.terms[0][1]
        if len(self.terms) == 1 and self.terms[0][0].is_zero():
            return other * self.terms[0][1]
        pairs = [(e1 + e2, s1 * s2) for e1, s1 in self.terms for e2, s2 in other.terms]
        if len(pairs) == 1 and pairs[0][0].constant == 0:
            return Coefficient._raw(tuple(pairs))
        return Coefficient._raw(_build(pairs))

    __rmul__ = __mul__

    def shift(self, exponent: PhaseExponent) -> Coefficient:
        """Multiply by the phase e^{2 pi i exponent}."""
        if exponent.is_zero() or not self.terms:
            return self
        pairs = [(e + exponent, s) for e, s in self.terms]
        if exponent.constant == 0 and all(e.constant == 0 for e, _ in self.terms):
            pairs.sort(key=lambda t: (t[0].coeffs, t[0].constant))
            return Coefficient._raw(tuple(pairs))
        return Coefficient._raw(_build(pairs))

    def conjugate(self) -> Coefficient:
        return Coefficient._raw(_build((-e, s) for e, s in self.terms))

    def inverse_phase(self) -> Coefficient:
        """Inverse of a monomial coefficient ``s * e^{2 pi i f}``."""
        if len(self.terms) != 1:
            raise ZeroDivisionError(f"{self} is not a monomial and cannot be inverted here")
        e, s = self.terms[0]
        return Coefficient.phase(-e, 1 / s)

    def substitute(self, mapping: Mapping[str, AffineForm | Scalar]) -> Coefficient:
        if not self.terms or not any(p in mapping for e, _ in self.terms for p in e.params):
            return self
        return Coefficient._raw(_build((e.substitute(mapping), s) for e, s in self.terms))

    def evaluate(self, values: Mapping[str, float]) -> complex:
        return sum(
            (float(s) * cmath.exp(2j * cmath.pi * e.evaluate(values)) for e, s in self.terms),
            0j,
        )

    def components(self) -> dict[tuple, dict[Fraction, Fraction]]:
        """Split by parameter part: ``{coeffs: {constant: scalar}}``."""
        out: dict[tuple, dict[Fraction, Fraction]] = {}
        for e, s in self.terms:
            out.setdefault(e.coeffs, {})[e.constant] = s
        return out

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, s in self.terms:
            if e.is_zero():
                parts.append(str(s))
                continue
            phase = f"e(2pi i*({e}))"
            if s == 1:
                parts.append(phase)
            elif s == -1:
                parts.append("-" + phase)
            else:
                parts.append(f"{s}*{phase}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Coefficient({str(self)!r})"

    def latex(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, s in self.terms:
            if e.is_zero():
                parts.append(_latex_frac(s))
                continue
            phase = f"e^{{2\\pi i({e.latex()})}}"
            if s == 1:
                parts.append(phase)
            elif s == -1:
                parts.append("-" + phase)
            else:
                parts.append(_latex_frac(s) + phase)
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        return [{"scalar": _frac_str(s), "exponent": e.to_json()} for e, s in self.terms]

    @classmethod
    def from_json(cls, data: list) -> Coefficient:
        if not isinstance(data, list):
            raise ParseError(f"coefficient must be a list, got {data!r}")
        pairs = []
        for item in data:
            try:
                pairs.append((PhaseExponent.of(AffineForm.from_json(item["exponent"])), Fraction(item["scalar"])))
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"bad coefficient term {item!r}") from exc
        return cls(pairs)


def _latex_frac(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    sign = "-" if value < 0 else ""
    return f"{sign}\\frac{{{abs(value.numerator)}}}{{{value.denominator}}}"


_ZERO_EXP = PhaseExponent.zero()
ZERO = Coefficient._raw(())
ONE = Coefficient._raw(((_ZERO_EXP, Fraction(1)),))
Coefficient.ZERO = ZERO
Coefficient.ONE = ONE
