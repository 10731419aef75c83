"""Parameter constraints under which a map on generators is multiplicative.

Given images ``phi(g)`` of the generators of a deformed algebra inside a
(deformed) target, compare ``phi(a x b)`` (computed through the commutative
picture, i.e. the classical map) with ``phi(a) x phi(b)`` for every pair of
generators. Each target word collects terms ``c * e^{2 pi i p}`` on the
right against ``c * e^{2 pi i chi0}`` on the left; when all ``c`` share a
sign, equality forces every ``p - chi0`` to be an integer.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .algebra.coefficient import Coefficient
from .algebra.context import AlgebraContext, GeneratorSymbol
from .algebra.element import Element, _merge
from .phase import AffineForm, PhaseExponent
from .report import CheckResult, Status

__all__ = [
    "Congruence",
    "ConstraintReport",
    "ExtensionStatus",
    "Witness",
    "homomorphism_constraints",
    "solve_generic",
]


@dataclass(frozen=True)
class Congruence:
    """``form = 0 (mod modulus)`` with a primitive integral ``form``."""

    form: AffineForm
    modulus: int

    @classmethod
    def from_exponent(cls, exponent: AffineForm) -> Congruence | None:
        """The condition ``exponent`` is an integer; None when it holds identically."""
        e = PhaseExponent.of(exponent)
        if e.is_zero():
            return None
        scale = lcm(e.constant.denominator, *(a.denominator for _, a in e.coeffs))
        coeffs = {p: int(a * scale) for p, a in e.coeffs}
        const = int(e.constant * scale)
        g = gcd(scale, const, *coeffs.values())
        coeffs = {p: a // g for p, a in coeffs.items()}
        const //= g
        modulus = scale // g
        if coeffs and coeffs[min(coeffs)] < 0:
            coeffs = {p: -a for p, a in coeffs.items()}
            const = -const
        return cls(AffineForm(const % modulus, coeffs), modulus)

    @property
    def consistent(self) -> bool:
        """False for a parameter-free congruence that can never hold."""
        return bool(self.form.coeffs) or self.form.constant % self.modulus == 0

    @property
    def params(self) -> tuple[str, ...]:
        return self.form.params

    def holds(self, values: Mapping[str, Fraction | int]) -> bool:
        value = self.form.substitute({k: Fraction(v) for k, v in values.items()})
        return value.is_constant() and value.constant % self.modulus == 0

    def __str__(self) -> str:
        return f"{self.form} = 0 (mod {self.modulus})"

    def latex(self) -> str:
        return f"{self.form.latex()} \\equiv 0 \\pmod{{{self.modulus}}}"

    def to_json(self) -> dict:
        return {"form": self.form.to_json(), "modulus": self.modulus, "text": str(self)}

    def sort_key(self):
        return (self.form.params, self.form.sort_key(), self.modulus)


class ExtensionStatus(enum.Enum):
    EXTENDS_UNCONDITIONALLY = "ExtendsUnconditionally"
    EXTENDS_IFF = "ExtendsIff"
    FAILS_IDENTICALLY = "FailsIdentically"


@dataclass
class Witness:
    left: GeneratorSymbol
    right: GeneratorSymbol
    constraints: list[Congruence] = field(default_factory=list)
    inconclusive: bool = False

    @property
    def pair(self) -> tuple[str, str]:
        return (self.left.label, self.right.label)

    def to_json(self) -> dict:
        out = {"pair": list(self.pair), "constraints": [str(c) for c in self.constraints]}
        if self.inconclusive:
            out["inconclusive"] = True
        return out


@dataclass
class ConstraintReport:
    status: ExtensionStatus
    constraints: list[Congruence]
    solved: list[AffineForm]
    solution: dict[str, AffineForm]
    witnesses: list[Witness]
    params: tuple[str, ...]
    structural: list[CheckResult] = field(default_factory=list)

    @property
    def witness_pairs(self) -> list[tuple[str, str]]:
        return [w.pair for w in self.witnesses]

    @property
    def inconclusive(self) -> list[Witness]:
        return [w for w in self.witnesses if w.inconclusive]

    @property
    def structural_status(self) -> Status:
        from .report import combine

        return combine(r.status for r in self.structural)

    @property
    def check_status(self) -> Status:
        """Pass/fail/undecided summary used for exit codes."""
        if self.status is ExtensionStatus.FAILS_IDENTICALLY:
            return Status.FAIL
        s = self.structural_status
        if self.inconclusive and s is Status.PASS:
            return Status.UNDECIDED
        return s

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "constraints": [c.to_json() for c in self.constraints],
            "solved": [str(f) for f in self.solved],
            "solution": {k: str(v) for k, v in self.solution.items()},
            "witnesses": [w.to_json() for w in self.witnesses],
            "structural": [r.to_json() for r in self.structural],
        }

    def lines(self) -> list[str]:
        out = [f"status: {self.status.value}"]
        if self.solved:
            out.append("solved: " + ", ".join(f"{f} = 0" for f in self.solved))
        for c in self.constraints:
            out.append(f"  constraint: {c}")
        if self.witnesses:
            shown = ", ".join(f"({a}, {b})" for a, b in self.witness_pairs[:6])
            more = len(self.witnesses) - 6
            out.append("witnesses: " + shown + (f" ... (+{more})" if more > 0 else ""))
        for r in self.structural:
            out.append("  " + r.line())
        return out


def _strongest(congruences: Iterable[Congruence]) -> list[Congruence]:
    """Drop congruences implied by another with the same form and a multiple modulus."""
    items = set(congruences)
    kept = [
        c
        for c in items
        if not any(
            o.form == c.form and o.modulus != c.modulus and o.modulus % c.modulus == 0 for o in items
        )
    ]
    return sorted(kept, key=Congruence.sort_key)


# -- solving ------------------------------------------------------------------


def solve_generic(
    forms: Iterable[AffineForm], order: Sequence[str]
) -> tuple[bool, list[AffineForm], dict[str, AffineForm]]:
    """Reduced echelon form of the linear system ``form = 0`` over Q.

    Returns ``(consistent, rows, solution)`` where ``solution`` expresses
    each pivot parameter through the free ones. Parameters earlier in
    ``order`` become pivots first.
    """
    order = list(order)
    extra = sorted({p for f in forms for p in f.params} - set(order))
    order += extra
    index = {p: i for i, p in enumerate(order)}
    rows: list[list[Fraction]] = []
    for f in forms:
        row = [Fraction(0)] * (len(order) + 1)
        for p, a in f.coeffs:
            row[index[p]] = Fraction(a)
        row[-1] = Fraction(f.constant)
        rows.append(row)
    pivots: list[int] = []
    r = 0
    for col in range(len(order)):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    consistent = all(not row[-1] for row in rows[r:])
    out_rows = []
    solution = {}
    for i, col in enumerate(pivots):
        row = rows[i]
        coeffs = {order[j]: row[j] for j in range(len(order)) if row[j]}
        out_rows.append(AffineForm(row[-1], coeffs))
        rest = {order[j]: -row[j] for j in range(len(order)) if row[j] and j != col}
        solution[order[col]] = AffineForm(-row[-1], rest)
    return consistent, out_rows, solution


# -- the engine ---------------------------------------------------------------


def _pair_equations(
    src: AlgebraContext,
    dst: AlgebraContext,
    a: GeneratorSymbol,
    b: GeneratorSymbol,
    image_a: Element,
    image_b: Element,
) -> tuple[list[Congruence], bool]:
    chi0 = src.chi(a.weight, b.weight)
    by_word: dict[tuple, dict[PhaseExponent, Coefficient]] = {}
    for t, ct in image_a.terms.items():
        rt = dst.word_weight(t)
        for t2, ct2 in image_b.terms.items():
            phase = dst.chi(rt, dst.word_weight(t2)) if t and t2 else PhaseExponent.zero()
            slot = by_word.setdefault(_merge(t, t2), {})
            slot[phase] = slot.get(phase, Coefficient.ZERO) + ct * ct2
    found: list[Congruence] = []
    inconclusive = False
    for contributions in by_word.values():
        items = [(p, c) for p, c in contributions.items() if c]
        if all(p == chi0 for p, _ in items):
            continue
        signs = _common_sign(c for _, c in items)
        if signs is None:
            inconclusive = True
            continue
        for p, _ in items:
            cong = Congruence.from_exponent(p - chi0)
            if cong is not None:
                found.append(cong)
    return found, inconclusive


def _common_sign(coefficients: Iterable[Coefficient]) -> int | None:
    """+1/-1 when all coefficients are positive/negative multiples of one phase."""
    unit = None
    sign = None
    for c in coefficients:
        if not c.is_monomial():
            return None
        e, s = c.terms[0]
        if unit is None:
            unit = e
        elif e != unit:
            return None
        this = 1 if s > 0 else -1
        if sign is None:
            sign = this
        elif sign != this:
            return None
    return sign


def homomorphism_constraints(
    src: AlgebraContext,
    dst: AlgebraContext,
    images: Mapping[GeneratorSymbol, Element],
    param_order: Sequence[str] = (),
) -> ConstraintReport:
    """Constraint report for extending ``images`` to a *-homomorphism.

    ``images`` must cover every generator of ``src`` including stars.
    """
    gens = src.all_generators
    missing = [g.label for g in gens if g not in images]
    if missing:
        raise ValueError(f"images missing for generators {missing}")
    witnesses: list[Witness] = []
    squares: list[Witness] = []
    collected: list[Congruence] = []
    for i, a in enumerate(gens):
        for b in gens[i:]:
            found, inconclusive = _pair_equations(src, dst, a, b, images[a], images[b])
            if not found and not inconclusive:
                continue
            unique = _strongest(found)
            w = Witness(a, b, unique, inconclusive)
            (squares if a == b else witnesses).append(w)
            collected.extend(unique)
    witnesses.extend(squares)
    constraints = _strongest(collected)
    params = tuple(dict.fromkeys(list(param_order) + sorted(set(src.params) | set(dst.params))))
    consistent, rows, solution = solve_generic([c.form for c in constraints], params)
    consistent = consistent and all(c.consistent for c in constraints)
    if not constraints and not any(w.inconclusive for w in witnesses):
        status = ExtensionStatus.EXTENDS_UNCONDITIONALLY
    elif not consistent or (constraints and params and set(solution) >= set(params)):
        status = ExtensionStatus.FAILS_IDENTICALLY
    elif constraints and not params:
        status = ExtensionStatus.FAILS_IDENTICALLY
    else:
        status = ExtensionStatus.EXTENDS_IFF
    return ConstraintReport(status, constraints, rows, solution, witnesses, params)
