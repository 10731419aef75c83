"""Coactions of deformed matrix quantum groups on deformed algebras.

A coaction is given on generators, ``rho(a) in H (x) A``. Extending it to
a *-homomorphism pins down the deformation parameters of ``A`` against
those of ``H``; once they are solved, the coaction axioms, the conditional
expectation onto invariants and the invariant subalgebra can be computed.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    AlgebraContext,
    Element,
    ExchangeRelation,
    GeneratorSymbol,
    Presentation,
    TensorContext,
    extend_multiplicative,
    lift_element,
    star,
    tensor_context,
    tensor_map,
    tensor_presentation,
    twisted_product,
)
from .algebra.ideal import _table
from .algebra.linalg import CoefficientSpan, nullspace
from .catalog import build_sphere, build_su_theta, lookup
from .constraints import (
    Congruence,
    ConstraintReport,
    ExtensionStatus,
    Witness,
    homomorphism_constraints,
    solve_generic,
)
from .errors import ContextError, ParseError
from .hopf import MatrixQuantumGroup, _membership_status, coproduct, counit, haar_state
from .phase import AffineForm, DeformationMatrix, PhaseExponent
from .report import CheckResult, Report, Status

__all__ = [
    "BUILTIN_SPECS",
    "CoactionSpec",
    "Congruence",
    "ConstraintReport",
    "ExtensionStatus",
    "FixedPoints",
    "PresentationMatch",
    "Witness",
    "builtin_spec",
    "check_coaction_axioms",
    "check_extension",
    "coaction",
    "conditional_expectation",
    "fixed_points",
    "homomorphism_constraints",
    "identity_spec",
    "match_presentation",
    "solve_generic",
    "solved_spec",
    "su2_on_su3",
    "su3_on_s5",
    "su3_on_su4",
]

Word = tuple[GeneratorSymbol, ...]


@dataclass(eq=False)
class CoactionSpec:
    """Images ``rho(g) in H (x) A`` of the unstarred generators of ``A``.

    Images of starred generators are the stars of these, computed in the
    tensor context.
    """

    name: str
    H: MatrixQuantumGroup
    A: Presentation
    images: dict[GeneratorSymbol, Element]
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        t = self.tensor
        images = {}
        for g, img in self.images.items():
            base = self.A.context.generator(g.label if isinstance(g, GeneratorSymbol) else g)
            if base.starred:
                raise ContextError(f"give images of unstarred generators only, not {base.label}")
            for w in img.words():
                t.check_word(w)
            images[base] = img
        missing = [g.label for g in self.A.context.generators if g not in images]
        if missing:
            raise ContextError(f"no image for generators {missing}")
        self.images = images

    @property
    def tensor(self) -> TensorContext:
        return tensor_context(self.H.context, self.A.context)

    @property
    def params(self) -> tuple[str, ...]:
        """Parameters of ``A`` first, then those of ``H``."""
        return tuple(dict.fromkeys(self.A.params + self.H.params))

    def all_images(self) -> dict[GeneratorSymbol, Element]:
        cached = self._cache.get("all_images")
        if cached is None:
            t = self.tensor
            cached = {}
            for g, img in self.images.items():
                cached[g] = img
                cached[g.star()] = star(t, img)
            self._cache["all_images"] = cached
        return cached

    def substitute(self, mapping) -> CoactionSpec:
        if not mapping:
            return self
        return CoactionSpec(
            self.name,
            self.H.substitute(mapping),
            self.A.substitute(mapping),
            {g: img.substitute(mapping) for g, img in self.images.items()},
        )

    def rho(self, a: Element) -> Element:
        return coaction(self, a)


def coaction(spec: CoactionSpec, a: Element) -> Element:
    """Twisted multiplicative extension of ``rho`` to ``a`` in ``A``."""
    cache = spec._cache.setdefault("rho", {})
    return extend_multiplicative(spec.A.context, spec.tensor, spec.all_images(), a, cache=cache)


# -- extension -------------------------------------------------------------------


def check_extension(
    spec: CoactionSpec, degree_bound: int | None = None, structural: bool = True
) -> ConstraintReport:
    """Constraints for ``rho`` to be a *-homomorphism, then the relations of ``A``.

    Exchange relations are handled by the constraint engine. When the system
    is consistent, the solution is substituted and each defining relation
    ``r`` of ``A`` is checked: ``rho(r)`` must lie in the ideal of
    ``H (x) A`` up to the degree bound.
    """
    report = homomorphism_constraints(spec.A.context, spec.tensor, spec.all_images(), spec.params)
    if not structural or report.status is ExtensionStatus.FAILS_IDENTICALLY:
        return report
    solved = spec.substitute(report.solution)
    target = tensor_presentation(solved.H.presentation, solved.A)
    bound = target.default_bound if degree_bound is None else degree_bound
    for label, rel in zip(solved.A.labels, solved.A.relations):
        image = coaction(solved, rel)
        status, detail = _membership_status(target, image, bound)
        report.structural.append(CheckResult(f"relation {label}", status, detail))
    return report


def solved_spec(spec: CoactionSpec) -> tuple[CoactionSpec, ConstraintReport]:
    """The spec with its extension constraints substituted."""
    report = check_extension(spec, structural=False)
    if report.status is ExtensionStatus.FAILS_IDENTICALLY:
        return spec, report
    return spec.substitute(report.solution), report


# -- axioms ----------------------------------------------------------------------


def _identity_leg(ctx: AlgebraContext, start: int):
    return (lambda w: Element.word(w), ctx, start)


def check_coaction_axioms(spec: CoactionSpec) -> Report:
    """``(Delta (x) id) rho = (id (x) rho) rho`` and ``(eps (x) id) rho = id`` on generators."""
    report = Report(f"coaction axioms {spec.name}")
    H, A = spec.H, spec.A
    t = spec.tensor
    t3 = tensor_context(H.context, H.context, A.context)
    h2 = H.tensor2

    def delta_word(w: Word) -> Element:
        return coproduct(H, Element.word(w))

    def rho_word(w: Word) -> Element:
        return coaction(spec, Element.word(w))

    def eps_word(w: Word) -> Element:
        return Element.constant(counit(H, Element.word(w)))

    left = [(delta_word, h2, 0), _identity_leg(A.context, 2)]
    right = [_identity_leg(H.context, 0), (rho_word, t, 1)]
    unit = [(eps_word, H.context, 0), _identity_leg(A.context, 0)]
    lc, rc, uc = [{}, {}], [{}, {}], [{}, {}]
    bad_co = bad_unit = None
    for g in A.context.all_generators:
        r = coaction(spec, Element.generator(g))
        if bad_co is None and tensor_map(r, t, t3, left, lc) != tensor_map(r, t, t3, right, rc):
            bad_co = g.label
        if bad_unit is None and tensor_map(r, t, A.context, unit, uc) != Element.generator(g):
            bad_unit = g.label
    for name, bad in (("(Delta x id) rho = (id x rho) rho", bad_co), ("(eps x id) rho = id", bad_unit)):
        if bad is None:
            report.add(name, Status.PASS)
        else:
            report.add(name, Status.FAIL, f"fails on {bad}", bad)
    return report


# -- invariants ------------------------------------------------------------------


def conditional_expectation(spec: CoactionSpec, a: Element) -> Element:
    """``(h (x) id) rho``: averages ``a`` over ``H`` with its Haar state."""
    H, A = spec.H, spec.A

    def haar_word(w: Word) -> Element:
        return Element.constant(haar_state(H, Element.word(w)))

    legs = [(haar_word, H.context, 0), _identity_leg(A.context, 0)]
    caches = spec._cache.setdefault("expectation", [{}, {}])
    return tensor_map(coaction(spec, a), spec.tensor, A.context, legs, caches)


@dataclass
class FixedPoints:
    """Invariant elements ``rho(x) = 1 (x) x`` up to a degree bound.

    ``generators`` are the invariants that are not products of lower-degree
    ones (stars of generators are left out). ``closed`` is True when no new
    generator appears at the top degree.
    """

    spec: CoactionSpec
    generators: list[Element]
    by_degree: dict[int, list[Element]]
    degree_bound: int
    closed: bool
    constraints: ConstraintReport

    def to_json(self) -> dict:
        return {
            "spec": self.spec.name,
            "status": self.constraints.status.value,
            "degree_bound": self.degree_bound,
            "closed": self.closed,
            "generators": [str(g) for g in self.generators],
            "dimensions": {str(d): len(v) for d, v in self.by_degree.items()},
        }

    def lines(self) -> list[str]:
        out = [f"fixed points of {self.spec.name} up to degree {self.degree_bound}"]
        out += [f"  dim degree {d}: {len(v)}" for d, v in sorted(self.by_degree.items())]
        if self.generators:
            out.append("generators: " + ", ".join(str(g) for g in self.generators))
        else:
            out.append("generators: none (constants only)")
        out.append("closed under the bound" if self.closed else "new generators at the top degree; raise the bound")
        return out


def _components(columns: Sequence[dict]) -> list[list[int]]:
    """Group column indices that share a row (union-find)."""
    parent = list(range(len(columns)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict = {}
    for j, col in enumerate(columns):
        for row in col:
            k = owner.setdefault(row, j)
            if k != j:
                parent[find(j)] = find(k)
    groups: dict[int, list[int]] = {}
    for j in range(len(columns)):
        groups.setdefault(find(j), []).append(j)
    return list(groups.values())


def _invariant_basis(spec: CoactionSpec, degree: int) -> list[Element]:
    ctx = spec.A.context
    t = spec.tensor
    words = _words_of_degree(ctx, degree)
    columns = []
    for w in words:
        a = Element.word(w)
        diff = coaction(spec, a) - lift_element(t, a, ctx, 1)
        columns.append(dict(diff.terms))
    out = []
    for group in _components(columns):
        for vec in nullspace([columns[j] for j in group]):
            out.append(Element._collect({words[group[j]]: c for j, c in vec.items()}))
    out.sort(key=lambda e: min(_word_key(w) for w in e.words()))
    return out


def _word_key(word: Word):
    return tuple(g.key for g in word)


def _words_of_degree(ctx: AlgebraContext, degree: int) -> list[Word]:
    return sorted((w for words in _table(ctx, degree).values() for w in words), key=_word_key)


def _as_vector(a: Element) -> dict:
    return dict(a.terms)


def fixed_points(spec: CoactionSpec, degree_bound: int = 3) -> FixedPoints:
    """Invariant subalgebra of ``A`` up to ``degree_bound``, after solving the constraints.

    Invariance is tested literally on basis words, so relations of ``A``
    are not used to identify elements.
    """
    solved, report = solved_spec(spec)
    if report.status is ExtensionStatus.FAILS_IDENTICALLY:
        return FixedPoints(spec, [], {}, degree_bound, True, report)
    ctx = solved.A.context
    by_degree: dict[int, list[Element]] = {}
    algebra: dict[int, list[Element]] = {0: [Element.one()]}
    chosen: dict[int, list[Element]] = {}
    generators: list[Element] = []
    new_at_top = False
    for d in range(1, degree_bound + 1):
        basis = _invariant_basis(solved, d)
        by_degree[d] = basis
        span = CoefficientSpan()
        current: list[Element] = []

        def absorb(x: Element) -> bool:
            if not x or span.contains(_as_vector(x)):
                return False
            span.add(_as_vector(x))
            current.append(x)
            return True

        for i in range(1, d):
            for g in chosen.get(i, []):
                for y in algebra.get(d - i, []):
                    absorb(twisted_product(ctx, g, y))
        fresh = []
        for b in basis:
            if absorb(b):
                fresh.append(b)
                absorb(star(ctx, b))
        chosen[d] = fresh + [star(ctx, b) for b in fresh]
        algebra[d] = current
        generators.extend(fresh)
        new_at_top = bool(fresh) and d == degree_bound
    return FixedPoints(solved, generators, by_degree, degree_bound, not new_at_top, report)


# -- presentation matching -------------------------------------------------------


def _exchange_phase(ctx: AlgebraContext, x: Element, y: Element) -> PhaseExponent | None:
    """``p`` with ``x y = e^{2 pi i p} y x``, when it exists."""
    xy = twisted_product(ctx, x, y)
    yx = twisted_product(ctx, y, x)
    if not yx:
        return PhaseExponent.zero() if not xy else None
    w = next(iter(yx.terms))
    left, right = xy.coefficient(w), yx.coefficient(w)
    if not (left.is_monomial() and right.is_monomial()):
        return None
    ratio = left * right.inverse_phase()
    (exponent, scalar), = ratio.terms
    if scalar != 1 or xy != yx.shift(exponent):
        return None
    return PhaseExponent.of(exponent)


@dataclass
class PresentationMatch:
    family: str
    matched: bool
    theta: DeformationMatrix | None
    relations: list[ExchangeRelation]
    checks: list[CheckResult]

    @property
    def status(self) -> Status:
        from .report import combine

        if not self.matched:
            return Status.FAIL
        return combine(c.status for c in self.checks)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "matched": self.matched,
            "status": self.status.value,
            "theta": [[str(x) for x in row] for row in self.theta.entries] if self.theta else None,
            "relations": [str(r) for r in self.relations],
            "checks": [c.to_json() for c in self.checks],
        }

    def lines(self) -> list[str]:
        out = [f"match {self.family}: {'yes' if self.matched else 'no'}"]
        if self.theta is not None:
            out.append("theta' =")
            out += ["  [" + ", ".join(str(x) for x in row) + "]" for row in self.theta.entries]
        out += [f"  {r}" for r in self.relations]
        out += ["  " + c.line() for c in self.checks]
        return out


def match_presentation(
    generators: Sequence[Element],
    ambient: Presentation,
    family: str = "sphere",
    degree_bound: int | None = None,
) -> PresentationMatch:
    """Recognise elements ``x_1..x_n`` of ``ambient`` as sphere generators.

    Reads off ``theta'`` from the pairwise exchange phases, checks normality
    and ``x_j x_k* = e^{-2 pi i theta'_jk} x_k* x_j``, and tests
    ``sum x_k x_k* = 1`` in the ambient ideal.
    """
    if family != "sphere":
        raise ParseError(f"matching is implemented for spheres only, not {family!r}")
    ctx = ambient.context
    n = len(generators)
    checks: list[CheckResult] = []
    upper: dict[tuple[int, int], AffineForm] = {}
    matched = True
    for j in range(n):
        xs = star(ctx, generators[j])
        if _exchange_phase(ctx, generators[j], xs) != PhaseExponent.zero():
            matched = False
            checks.append(CheckResult(f"x{j + 1} normal", Status.FAIL))
        for k in range(j + 1, n):
            p = _exchange_phase(ctx, generators[j], generators[k])
            q = _exchange_phase(ctx, generators[j], star(ctx, generators[k]))
            if p is None or q is None or q != PhaseExponent.of(-p):
                matched = False
                checks.append(CheckResult(f"x{j + 1}, x{k + 1} exchange", Status.FAIL))
                continue
            upper[(j + 1, k + 1)] = _centered(p)
    theta = DeformationMatrix.from_upper(n, upper) if matched else None
    relations = []
    if matched:
        model = build_sphere(theta, n, letter="x")
        relations = list(model.exchange_relations(include_commutators=True))
        checks.append(CheckResult("exchange relations", Status.PASS, f"{len(relations)} relations"))
        radius = Element.zero()
        for x in generators:
            radius = radius + twisted_product(ctx, x, star(ctx, x))
        bound = ambient.default_bound if degree_bound is None else degree_bound
        status, detail = _membership_status(ambient, radius - 1, bound)
        checks.append(CheckResult("radius sum x_k x_k* = 1", status, detail))
    return PresentationMatch(family, matched, theta, relations, checks)


def _centered(p: PhaseExponent) -> AffineForm:
    """Representative of ``p`` mod 1 with constant in (-1/2, 1/2]."""
    c = p.constant
    if c > Fraction(1, 2):
        c -= 1
    return AffineForm(c, dict(p.coeffs))


# -- built-in specs --------------------------------------------------------------


def _tensor_word(t: TensorContext, left: GeneratorSymbol | None, right: GeneratorSymbol) -> Element:
    parts = ([t.lift(0, left)] if left is not None else []) + [t.lift(1, right)]
    return Element.word(parts)


def su3_on_s5(theta="theta", lam=None) -> CoactionSpec:
    """``rho(z_j) = sum_k u_jk (x) z_k`` on the five-sphere."""
    H = build_su_theta(3, theta)
    A = build_sphere(lam if lam is not None else DeformationMatrix.symbolic(3, "lambda"), 3)
    t = tensor_context(H.context, A.context)
    zs = A.context.generators
    images = {}
    for j, z in enumerate(zs, start=1):
        img = Element.zero()
        for k, zk in enumerate(zs, start=1):
            img = img + _tensor_word(t, H.grid[j - 1][k - 1], zk)
        images[z] = img
    return CoactionSpec("su3-on-s5", H, A, images)


def su3_on_su4(theta="theta", lam=None) -> CoactionSpec:
    """Block coaction on the rows of SU(4): ``v_kl -> sum_a u_ka (x) v_al`` for ``k <= 3``."""
    H = build_su_theta(3, theta)
    B = build_su_theta(4, lam if lam is not None else DeformationMatrix.symbolic(3, "lambda"), letter="v")
    A = B.presentation
    t = tensor_context(H.context, A.context)
    images = {}
    for k in range(1, 5):
        for l in range(1, 5):
            g = B.grid[k - 1][l - 1]
            if k == 4:
                images[g] = _tensor_word(t, None, g)
                continue
            img = Element.zero()
            for a in range(1, 4):
                img = img + _tensor_word(t, H.grid[k - 1][a - 1], B.grid[a - 1][l - 1])
            images[g] = img
    return CoactionSpec("su3-on-su4", H, A, images)


def su2_on_su3(theta="theta") -> CoactionSpec:
    """Classical SU(2) acting on the first two rows of SU(3)_theta."""
    H = build_su_theta(2, letter="h")
    B = build_su_theta(3, theta)
    A = B.presentation
    t = tensor_context(H.context, A.context)
    images = {}
    for i in range(1, 4):
        for j in range(1, 4):
            g = B.grid[i - 1][j - 1]
            if i == 3:
                images[g] = _tensor_word(t, None, g)
                continue
            img = Element.zero()
            for k in range(1, 3):
                img = img + _tensor_word(t, H.grid[i - 1][k - 1], B.grid[k - 1][j - 1])
            images[g] = img
    return CoactionSpec("su2-on-su3", H, A, images)


def identity_spec(algebra: Presentation | str = "sphere:3", H: MatrixQuantumGroup | None = None) -> CoactionSpec:
    """The trivial coaction ``a -> 1 (x) a``."""
    if isinstance(algebra, str):
        found = lookup(algebra)
        algebra = found.presentation if isinstance(found, MatrixQuantumGroup) else found
    H = H if H is not None else build_su_theta(2)
    t = tensor_context(H.context, algebra.context)
    images = {g: _tensor_word(t, None, g) for g in algebra.context.generators}
    return CoactionSpec(f"identity on {algebra.name}", H, algebra, images)


BUILTIN_SPECS: dict[str, Callable[[], CoactionSpec]] = {
    "su3-on-s5": su3_on_s5,
    "su3-on-su4": su3_on_su4,
    "su2-on-su3": su2_on_su3,
}


def builtin_spec(name: str) -> CoactionSpec:
    """A built-in spec by name; ``identity`` or ``identity:<algebra>`` gives the trivial coaction."""
    if name == "identity":
        return identity_spec()
    if name.startswith("identity:"):
        return identity_spec(name.split(":", 1)[1])
    try:
        return BUILTIN_SPECS[name]()
    except KeyError:
        known = ", ".join(sorted(BUILTIN_SPECS) + ["identity[:algebra]"])
        raise ParseError(f"unknown coaction spec {name!r}; known: {known}") from None
