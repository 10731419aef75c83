"""Exact phase exponents and antisymmetric deformation matrices.

A phase is written e^{2 pi i f} where ``f`` is a rational-affine form in
symbolic deformation parameters. Parameters are identified by name and are
treated as algebraically independent reals, so two exponents agree exactly
when their canonical forms agree.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from functools import cached_property
from typing import Union

from .errors import DimensionError, InvariantViolation, ParseError

Rational = Union[int, Fraction]
Weight = tuple[int, ...]

__all__ = [
    "AffineForm",
    "PhaseExponent",
    "DeformationMatrix",
    "parse_form",
    "chi",
    "exchange_phase",
    "make_quantum_group_matrix",
]


class AffineForm:
    """``constant + sum(coeff * param)`` with exact rational coefficients.

    Zero coefficients are never stored; ``coeffs`` is sorted by parameter
    name. Instances are immutable and hashable.
    """

    __slots__ = ("constant", "coeffs", "_hash")

    constant: Fraction
    coeffs: tuple[tuple[str, Fraction], ...]

    def __init__(self, constant: Rational = 0, coeffs: Mapping[str, Rational] | None = None):
        items = []
        if coeffs:
            for name, value in coeffs.items():
                value = Fraction(value)
                if value:
                    items.append((str(name), value))
        items.sort()
        self._set(Fraction(constant), tuple(items))

    def _set(self, constant: Fraction, coeffs: tuple[tuple[str, Fraction], ...]) -> None:
        object.__setattr__(self, "constant", constant)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", hash((type(self).__name__, constant, coeffs)))

    @classmethod
    def _raw(cls, constant: Fraction, coeffs: tuple[tuple[str, Fraction], ...]):
        obj = cls.__new__(cls)
        obj._set(constant, coeffs)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def param(cls, name: str, coeff: Rational = 1):
        return cls(0, {name: coeff})

    @classmethod
    def zero(cls):
        return cls._raw(Fraction(0), ())

    # -- structure ---------------------------------------------------------

    @property
    def params(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.coeffs)

    def coeff(self, name: str) -> Fraction:
        for key, value in self.coeffs:
            if key == name:
                return value
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs and not self.constant

    def is_constant(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return not self.coeffs and self.constant == other
        if not isinstance(other, AffineForm):
            return NotImplemented
        return (
            type(self) is type(other)
            and self.constant == other.constant
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self):
        return (self.coeffs, self.constant)

    def __lt__(self, other: AffineForm) -> bool:
        return self.sort_key() < other.sort_key()

    # -- arithmetic --------------------------------------------------------

    def _combine(self, other: AffineForm, sign: int):
        if not other.coeffs:
            return type(self)._raw_norm(self.constant + sign * other.constant, self.coeffs)
        merged = dict(self.coeffs)
        for name, value in other.coeffs:
            merged[name] = merged.get(name, 0) + sign * value
        items = tuple(sorted((k, v) for k, v in merged.items() if v))
        return type(self)._raw_norm(self.constant + sign * other.constant, items)

    @classmethod
    def _raw_norm(cls, constant: Fraction, coeffs):
        return cls._raw(constant, coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return type(self)._raw_norm(self.constant + other, self.coeffs)
        if not isinstance(other, AffineForm):
            return NotImplemented
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return type(self)._raw_norm(self.constant - other, self.coeffs)
        if not isinstance(other, AffineForm):
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return type(self)._raw_norm(-self.constant, tuple((k, -v) for k, v in self.coeffs))

    def scale(self, factor: Rational):
        factor = Fraction(factor)
        if not factor:
            return type(self).zero()
        return type(self)._raw_norm(
            self.constant * factor, tuple((k, v * factor) for k, v in self.coeffs)
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def substitute(self, mapping: Mapping[str, AffineForm | Rational]):
        """Replace parameters by affine forms (or rationals)."""
        if not any(name in mapping for name, _ in self.coeffs):
            return self
        result = AffineForm(self.constant)
        for name, value in self.coeffs:
            if name in mapping:
                repl = mapping[name]
                if not isinstance(repl, AffineForm):
                    repl = AffineForm(repl)
                result = result + AffineForm._raw(repl.constant, repl.coeffs).scale(value)
            else:
                result = result + AffineForm._raw(Fraction(0), ((name, value),))
        return type(self)._raw_norm(result.constant, result.coeffs)

    def evaluate(self, values: Mapping[str, float]) -> float:
        total = float(self.constant)
        for name, value in self.coeffs:
            if name not in values:
                raise KeyError(f"no numerical value for parameter {name!r}")
            total += float(value) * float(values[name])
        return total

    def as_affine(self) -> AffineForm:
        return AffineForm._raw(self.constant, self.coeffs)

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        parts: list[str] = []
        for name, value in self.coeffs:
            sign = "-" if value < 0 else "+"
            mag = abs(value)
            if mag == 1:
                body = name
            elif mag.denominator == 1:
                body = f"{mag.numerator}*{name}"
            elif mag.numerator == 1:
                body = f"{name}/{mag.denominator}"
            else:
                body = f"{mag}*{name}"
            parts.append((sign, body))
        if self.constant or not parts:
            c = self.constant
            parts.append(("-" if c < 0 else "+", str(abs(c))))
        text = ""
        for i, (sign, body) in enumerate(parts):
            if i == 0:
                text = body if sign == "+" else "-" + body
            else:
                text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"

    def latex(self) -> str:
        text = str(self)
        for name in self.params:
            text = re.sub(rf"\b{re.escape(name)}\b", lambda _m, s=_latex_symbol(name): s, text)
        return text.replace("*", "")

    def to_json(self) -> dict:
        return {
            "constant": _frac_str(self.constant),
            "coeffs": {name: _frac_str(value) for name, value in self.coeffs},
        }

    @classmethod
    def from_json(cls, data: Mapping):
        try:
            coeffs = {name: Fraction(value) for name, value in data.get("coeffs", {}).items()}
            return cls(Fraction(data.get("constant", "0")), coeffs)
        except (TypeError, ValueError, AttributeError) as exc:
            raise ParseError(f"bad affine form {data!r}") from exc


class PhaseExponent(AffineForm):
    """Exponent ``f`` of the unit-modulus number e^{2 pi i f}.

    The constant part is reduced to [0, 1); parameter coefficients are left
    alone because parameters are generic reals.
    """

    __slots__ = ()

    def __init__(self, constant: Rational = 0, coeffs: Mapping[str, Rational] | None = None):
        super().__init__(Fraction(constant) % 1, coeffs)

    @classmethod
    def _raw_norm(cls, constant: Fraction, coeffs):
        return cls._raw(constant % 1, coeffs)

    @classmethod
    def of(cls, form: AffineForm) -> PhaseExponent:
        return cls._raw_norm(form.constant, form.coeffs)

    def normalize(self) -> PhaseExponent:
        return PhaseExponent._raw_norm(self.constant, self.coeffs)

    def evaluate_phase(self, values: Mapping[str, float]) -> complex:
        import cmath

        return cmath.exp(2j * cmath.pi * self.evaluate(values))


_TERM = re.compile(
    r"^(?:(?P<num>\d+(?:/\d+)?)\*?)?(?P<name>[A-Za-z_][A-Za-z0-9_']*)?(?:/(?P<den>\d+))?$"
)


def parse_form(text: str | int | Fraction | AffineForm) -> AffineForm:
    """Parse strings such as ``"theta"``, ``"-lambda12 + 1/3"`` or ``"2*theta"``."""
    if isinstance(text, AffineForm):
        return text.as_affine()
    if isinstance(text, (int, Fraction)):
        return AffineForm(text)
    source = str(text).replace(" ", "")
    if not source:
        raise ParseError("empty affine form")
    tokens = re.findall(r"[+-]?[^+-]+", source)
    if "".join(tokens) != source:
        raise ParseError(f"cannot parse affine form {text!r}")
    result = AffineForm.zero()
    for token in tokens:
        sign = -1 if token.startswith("-") else 1
        body = token.lstrip("+-")
        match = _TERM.match(body)
        if not body or not match or not (match["num"] or match["name"]):
            raise ParseError(f"cannot parse term {token!r} in {text!r}")
        coeff = Fraction(match["num"]) if match["num"] else Fraction(1)
        if match["den"]:
            coeff /= int(match["den"])
        if match["name"]:
            result = result + AffineForm.param(match["name"], sign * coeff)
        else:
            result = result + AffineForm(sign * coeff)
    return result


class DeformationMatrix:
    """Real antisymmetric ``dim x dim`` matrix with affine-form entries."""

    __slots__ = ("dim", "entries", "_hash", "__dict__")

    def __init__(self, entries: Sequence[Sequence[AffineForm | Rational | str]]):
        rows = [[parse_form(e) for e in row] for row in entries]
        dim = len(rows)
        if any(len(row) != dim for row in rows):
            raise DimensionError("deformation matrix must be square")
        for j in range(dim):
            if not rows[j][j].is_zero():
                raise InvariantViolation(f"diagonal entry ({j + 1},{j + 1}) is not zero")
            for k in range(j + 1, dim):
                if rows[j][k] != -rows[k][j]:
                    raise InvariantViolation(
                        f"entries ({j + 1},{k + 1}) and ({k + 1},{j + 1}) are not negatives"
                    )
        self.dim = dim
        self.entries: tuple[tuple[AffineForm, ...], ...] = tuple(tuple(r) for r in rows)
        self._hash = hash(self.entries)

    @classmethod
    def zero(cls, dim: int) -> DeformationMatrix:
        return cls([[0] * dim for _ in range(dim)])

    @classmethod
    def from_upper(cls, dim: int, upper: Mapping[tuple[int, int], AffineForm | Rational | str]):
        """Build from strictly upper entries keyed by 1-based ``(j, k)``, ``j < k``."""
        rows: list[list[AffineForm]] = [[AffineForm.zero()] * dim for _ in range(dim)]
        for (j, k), value in upper.items():
            if not (1 <= j < k <= dim):
                raise DimensionError(f"index ({j},{k}) is not strictly upper in dim {dim}")
            form = parse_form(value)
            rows[j - 1][k - 1] = form
            rows[k - 1][j - 1] = -form
        return cls(rows)

    @classmethod
    def symbolic(cls, dim: int, prefix: str) -> DeformationMatrix:
        """Generic matrix with parameters ``{prefix}{j}{k}`` above the diagonal."""
        return cls.from_upper(
            dim,
            {(j, k): f"{prefix}{j}{k}" for j in range(1, dim + 1) for k in range(j + 1, dim + 1)},
        )

    def __getitem__(self, index: tuple[int, int]) -> AffineForm:
        j, k = index
        return self.entries[j][k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, DeformationMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"DeformationMatrix({[[str(e) for e in row] for row in self.entries]})"

    @property
    def params(self) -> tuple[str, ...]:
        names = {p for row in self.entries for e in row for p in e.params}
        return tuple(sorted(names))

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def upper_entries(self) -> dict[tuple[int, int], AffineForm]:
        return {
            (j + 1, k + 1): self.entries[j][k]
            for j in range(self.dim)
            for k in range(j + 1, self.dim)
        }

    def __neg__(self) -> DeformationMatrix:
        return DeformationMatrix([[-e for e in row] for row in self.entries])

    def direct_sum(self, *others: DeformationMatrix) -> DeformationMatrix:
        blocks = (self, *others)
        total = sum(b.dim for b in blocks)
        rows: list[list[AffineForm]] = [[AffineForm.zero()] * total for _ in range(total)]
        offset = 0
        for block in blocks:
            for j in range(block.dim):
                for k in range(block.dim):
                    rows[offset + j][offset + k] = block.entries[j][k]
            offset += block.dim
        return DeformationMatrix(rows)

    def substitute(self, mapping: Mapping[str, AffineForm | Rational]) -> DeformationMatrix:
        return DeformationMatrix([[e.substitute(mapping) for e in row] for row in self.entries])

    def evaluate(self, values: Mapping[str, float]) -> list[list[float]]:
        return [[e.evaluate(values) for e in row] for row in self.entries]

    @cached_property
    def _sparse(self):
        const: list[tuple[int, int, Fraction]] = []
        per_param: dict[str, list[tuple[int, int, Fraction]]] = {}
        for j, row in enumerate(self.entries):
            for k, e in enumerate(row):
                if e.constant:
                    const.append((j, k, e.constant))
                for name, value in e.coeffs:
                    per_param.setdefault(name, []).append((j, k, value))
        return const, tuple(sorted(per_param.items()))

    def pairing(self, r: Sequence[int], s: Sequence[int]) -> AffineForm:
        """The bilinear value ``r . theta s`` as an affine form."""
        if len(r) != self.dim or len(s) != self.dim:
            raise DimensionError(
                f"weights of length {len(r)}, {len(s)} against a {self.dim}x{self.dim} matrix"
            )
        const, per_param = self._sparse
        c = sum((v * r[j] * s[k] for j, k, v in const), Fraction(0))
        items = []
        for name, entries in per_param:
            total = sum((v * r[j] * s[k] for j, k, v in entries), Fraction(0))
            if total:
                items.append((name, total))
        return AffineForm._raw(Fraction(c), tuple(items))


def chi(theta: DeformationMatrix, r: Sequence[int], s: Sequence[int]) -> PhaseExponent:
    """Exponent of the bicharacter exp(pi i r . theta s), i.e. ``(r . theta s) / 2``."""
    return PhaseExponent.of(theta.pairing(r, s).scale(Fraction(1, 2)))


def exchange_phase(theta: DeformationMatrix, r: Sequence[int], s: Sequence[int]) -> PhaseExponent:
    """Exponent ``r . theta s`` relating ``a_r x b_s`` to ``b_s x a_r``."""
    return PhaseExponent.of(theta.pairing(r, s))


def make_quantum_group_matrix(K: DeformationMatrix) -> DeformationMatrix:
    """The block matrix ``K (+) (-K)`` acting on (left weight, right weight)."""
    if not isinstance(K, DeformationMatrix):
        K = DeformationMatrix(K)
    return K.direct_sum(-K)


def _frac_str(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _latex_symbol(name: str) -> str:
    match = re.fullmatch(r"([A-Za-z]+)(\d*)(')?", name)
    if not match:
        return name
    base, digits, prime = match.groups()
    greek = {"theta", "lambda", "mu", "kappa", "alpha", "beta", "phi", "psi", "eta"}
    out = f"\\{base}" if base in greek else base
    if digits:
        out += f"_{{{digits}}}"
    if prime:
        out += "'"
    return out


def as_weight(values: Iterable[int]) -> Weight:
    return tuple(int(v) for v in values)
