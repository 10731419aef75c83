"""Sparse exact linear algebra used by ideal membership.

Rational spans use a leading-term echelon basis (pure Fractions). The
rare columns with genuinely symbolic coefficients are handled by sympy's
``DomainMatrix`` over a cyclotomic function field.
"""

from __future__ import annotations

from collections.abc import Hashable, Mapping, Sequence
from fractions import Fraction
from math import lcm

from ..phase import PhaseExponent
from .coefficient import Coefficient

__all__ = ["SpanReducer", "CoefficientSpan", "coefficient_rank_test", "nullspace", "q_components", "from_components"]

Vector = dict[int, Fraction]


class SpanReducer:
    """Incrementally built Q-span of sparse vectors with hashable row keys.

    Each basis vector is stored under its leading (largest) row index, so
    the normal form of a vector modulo the span is well defined and linear.
    """

    def __init__(self) -> None:
        self._index: dict[Hashable, int] = {}
        self._basis: dict[int, Vector] = {}

    def __len__(self) -> int:
        return len(self._basis)

    def _encode(self, vec: Mapping[Hashable, Fraction], grow: bool) -> Vector | None:
        out: Vector = {}
        for key, value in vec.items():
            if not value:
                continue
            idx = self._index.get(key)
            if idx is None:
                if not grow:
                    return None
                idx = self._index[key] = len(self._index)
            out[idx] = Fraction(value)
        return out

    def _reduce_leading(self, v: Vector) -> Vector:
        basis = self._basis
        while v:
            lead = max(v)
            b = basis.get(lead)
            if b is None:
                return v
            factor = v[lead]
            for k, x in b.items():
                nv = v.get(k, 0) - factor * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: Mapping[Hashable, Fraction]) -> bool:
        """Insert a vector; returns True when it enlarged the span."""
        v = self._reduce_leading(self._encode(vec, grow=True))
        if not v:
            return False
        lead = max(v)
        inv = 1 / v[lead]
        self._basis[lead] = {k: x * inv for k, x in v.items()}
        return True

    def contains(self, vec: Mapping[Hashable, Fraction]) -> bool:
        v = self._encode(vec, grow=False)
        if v is None:
            # a row never touched by any basis vector
            return False
        return not self._reduce_leading(v)

    def normal_form(self, vec: Mapping[Hashable, Fraction]) -> dict[Hashable, Fraction]:
        """Remainder of ``vec`` after full reduction; zero iff ``vec`` is in the span."""
        extra = {k: Fraction(x) for k, x in vec.items() if x and k not in self._index}
        v = self._encode({k: x for k, x in vec.items() if k in self._index}, grow=False) or {}
        basis = self._basis
        rest: Vector = {}
        while v:
            lead = max(v)
            b = basis.get(lead)
            factor = v[lead]
            if b is None:
                rest[lead] = v.pop(lead)
                continue
            for k, x in b.items():
                nv = v.get(k, 0) - factor * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        keys = {i: k for k, i in self._index.items() if i in rest}
        out = {keys[i]: x for i, x in rest.items()}
        out.update(extra)
        return out


def _field_for(coefficients: Sequence[Coefficient], with_inverse: bool = False):
    """A sympy domain containing every coefficient, plus converters into (and out of) it."""
    from sympy import I, QQ, Rational, exp, pi, symbols

    params = sorted({p for c in coefficients for e, _ in c.terms for p in e.params})
    denom: dict[str, int] = {p: 1 for p in params}
    conductor = 1
    for c in coefficients:
        for e, _ in c.terms:
            conductor = lcm(conductor, e.constant.denominator)
            for p, a in e.coeffs:
                denom[p] = lcm(denom[p], a.denominator)
    ys = symbols(" ".join(f"y_{i}" for i in range(len(params))), seq=True) if params else ()
    zeta = exp(2 * pi * I / conductor) if conductor > 1 else None
    base = QQ.algebraic_field(zeta) if zeta is not None else QQ
    domain = base.frac_field(*ys) if ys else base
    ymap = dict(zip(params, ys))

    def convert(c: Coefficient):
        expr = 0
        for e, s in c.terms:
            term = Rational(s.numerator, s.denominator)
            for p, a in e.coeffs:
                term *= ymap[p] ** int(a * denom[p])
            if e.constant:
                term *= zeta ** int(e.constant * conductor)
            expr += term
        return domain.from_sympy(expr)

    if not with_inverse:
        return domain, convert

    def base_to_coefficient(c, exponent: dict[str, Fraction]) -> Coefficient:
        if zeta is None:
            q = QQ.to_sympy(c)
            return Coefficient.phase(PhaseExponent(0, exponent), Fraction(int(q.p), int(q.q)))
        coeffs = [QQ.to_sympy(x) for x in c.to_list()]
        top = len(coeffs) - 1
        total = Coefficient.ZERO
        for k, q in enumerate(coeffs):
            if q:
                const = Fraction(top - k, conductor)
                total = total + Coefficient.phase(
                    PhaseExponent(const, exponent), Fraction(int(q.p), int(q.q))
                )
        return total

    def back(vec: dict[int, object]) -> dict[int, Coefficient]:
        # scale by the common denominator so every entry is a polynomial
        if not ys:
            return {j: c for j, v in vec.items() if (c := base_to_coefficient(v, {}))}
        den = None
        for v in vec.values():
            den = v.denom if den is None else den.lcm(v.denom)
        out = {}
        for j, v in vec.items():
            numer = v.numer * den.exquo(v.denom)
            total = Coefficient.ZERO
            for monom, c in numer.terms():
                exponent = {p: Fraction(e, denom[p]) for p, e in zip(params, monom) if e}
                total = total + base_to_coefficient(c, exponent)
            if total:
                out[j] = total
        return out

    return domain, convert, back


def coefficient_rank_test(
    columns: Sequence[Mapping[Hashable, Coefficient]], target: Mapping[Hashable, Coefficient]
) -> bool:
    """Whether ``target`` lies in the span of ``columns`` over the coefficient field."""
    from sympy.polys.matrices import DomainMatrix

    if not any(target.values()):
        return True
    if not columns:
        return False
    rows = sorted(
        {k for col in columns for k, v in col.items() if v} | {k for k, v in target.items() if v},
        key=repr,
    )
    coeffs = [v for col in columns for v in col.values()] + list(target.values())
    domain, convert = _field_for(coeffs)
    zero = domain.zero

    def build(cols):
        return DomainMatrix(
            [[convert(col[k]) if k in col and col[k] else zero for col in cols] for k in rows],
            (len(rows), len(cols)),
            domain,
        )

    base = build(columns).rank()
    full = build(list(columns) + [target]).rank()
    return base == full


def q_components(vec: Mapping[Hashable, Coefficient]) -> dict[tuple, dict[Hashable, Fraction]]:
    """Split a coefficient vector along the rational basis of phase monomials."""
    out: dict[tuple, dict[Hashable, Fraction]] = {}
    for k, c in vec.items():
        for e, s in c.terms:
            out.setdefault((e.coeffs, e.constant), {})[k] = s
    return out


def from_components(comps: Mapping[tuple, Mapping[Hashable, Fraction]]) -> dict[Hashable, Coefficient]:
    out: dict[Hashable, Coefficient] = {}
    for (coeffs, const), vec in comps.items():
        e = PhaseExponent._raw(const, coeffs)
        for k, s in vec.items():
            if s:
                out[k] = out.get(k, Coefficient.ZERO) + Coefficient.phase(e, s)
    return {k: c for k, c in out.items() if c}


def rational_form(vec: Mapping[Hashable, Coefficient]) -> tuple[PhaseExponent, dict[Hashable, Fraction]] | None:
    """Write ``vec`` as ``e^{2 pi i f} * (rational vector)`` when possible."""
    items = [(k, c) for k, c in vec.items() if c]
    if not items:
        return PhaseExponent.zero(), {}
    first = items[0][1]
    if not first.is_monomial():
        return None
    unit = first.terms[0][0]
    out = {}
    for k, c in items:
        c = c.shift(PhaseExponent.of(-unit))
        if not c.is_rational():
            return None
        out[k] = c.to_fraction()
    return unit, out


class CoefficientSpan:
    """Span over the coefficient field of sparse vectors with Coefficient entries.

    Vectors that are a unit times a rational vector go into a rational
    echelon basis; everything else is kept aside and only consulted, after
    projecting away the rational part, through an exact sympy rank test.
    """

    def __init__(self) -> None:
        self.reducer = SpanReducer()
        self.symbolic: list[dict[Hashable, Coefficient]] = []

    def add_rational(self, vec: Mapping[Hashable, Fraction]) -> None:
        self.reducer.add(vec)

    def add(self, vec: Mapping[Hashable, Coefficient]) -> None:
        form = rational_form(vec)
        if form is not None:
            self.reducer.add(form[1])
        else:
            self.symbolic.append({k: c for k, c in vec.items() if c})

    def _project(self, vec: Mapping[Hashable, Coefficient]) -> dict[Hashable, Coefficient]:
        return from_components({k: self.reducer.normal_form(v) for k, v in q_components(vec).items()})

    def contains(self, vec: Mapping[Hashable, Coefficient]) -> bool:
        comps = q_components(vec)
        if not self.symbolic:
            return all(self.reducer.contains(v) for v in comps.values())
        residual = self._project(vec)
        if not residual:
            return True
        columns = [col for col in (self._project(c) for c in self.symbolic) if col]
        return coefficient_rank_test(columns, residual)


def nullspace(columns: Sequence[Mapping[Hashable, Coefficient]]) -> list[dict[int, Coefficient]]:
    """Basis of ``{x : sum_j x_j * columns[j] = 0}`` over the coefficient field.

    One basis vector per free column of the reduced echelon form, scaled
    so that every entry is a Coefficient.
    """
    if not columns:
        return []
    forms = [rational_form(col) for col in columns]
    rows = sorted({k for col in columns for k, v in col.items() if v}, key=repr)
    if all(f is not None for f in forms):
        # M = M_rat * diag(units): solve rationally, then undo the units
        from sympy import QQ
        from sympy.polys.matrices import DomainMatrix

        mat = DomainMatrix(
            [[QQ(f[1].get(k, 0).numerator, f[1].get(k, 0).denominator) for f in forms] for k in rows]
            or [[QQ(0)] * len(forms)],
            (max(len(rows), 1), len(forms)),
            QQ,
        )
        basis = _rational_nullspace(mat)
        out = []
        for vec in basis:
            out.append(
                {j: Coefficient.phase(PhaseExponent.of(-forms[j][0]), v) for j, v in enumerate(vec) if v}
            )
        return out
    return _symbolic_nullspace(columns, rows)


def _rational_nullspace(mat) -> list[list[Fraction]]:
    rref, pivots = mat.rref()
    ncols = mat.shape[1]
    dense = rref.to_Matrix()
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            val = dense[r, f]
            vec[p] = -Fraction(int(val.p), int(val.q))
        out.append(vec)
    return out


def _symbolic_nullspace(columns, rows) -> list[dict[int, Coefficient]]:
    from sympy.polys.matrices import DomainMatrix

    coeffs = [v for col in columns for v in col.values()]
    domain, convert, back = _field_for(coeffs, with_inverse=True)
    zero = domain.zero
    mat = DomainMatrix(
        [[convert(col[k]) if k in col and col[k] else zero for col in columns] for k in rows],
        (len(rows), len(columns)),
        domain,
    )
    rref, pivots = mat.rref()
    entries = rref.to_list()
    ncols = len(columns)
    out = []
    for f in (j for j in range(ncols) if j not in pivots):
        vec = {f: domain.one}
        for r, p in enumerate(pivots):
            if entries[r][f]:
                vec[p] = -entries[r][f]
        out.append(back(vec))
    return out
