"""Hopf structure of theta-deformed matrix quantum groups and its verification."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .algebra import (
    AlgebraContext,
    Coefficient,
    Element,
    GeneratorSymbol,
    Presentation,
    TensorContext,
    Word,
    extend_classical,
    extend_multiplicative,
    lift_element,
    map_words,
    membership,
    star,
    tensor_context,
    tensor_map,
    twisted_product,
)
from .constraints import ConstraintReport, ExtensionStatus, homomorphism_constraints
from .errors import UnsupportedDegree
from .phase import DeformationMatrix, PhaseExponent, chi
from .report import Report, Status

__all__ = [
    "MatrixQuantumGroup",
    "antipode",
    "braiding",
    "check_antipode_axiom",
    "check_coassociativity",
    "check_coproduct_homomorphism",
    "check_corep_unitarity",
    "check_counit",
    "check_haar_identities",
    "coproduct",
    "counit",
    "haar_state",
    "hopf_report",
    "multiply",
]


@dataclass(eq=False)
class MatrixQuantumGroup:
    """A presented matrix quantum group with fundamental corepresentation ``grid``.

    ``grid[i][j]`` is the generator ``u_{i+1, j+1}``; tori use a diagonal
    grid whose off-diagonal entries are ``None`` (identically zero).
    ``schur_dim`` is the dimension entering Schur orthogonality of the Haar
    state (``n`` for SU(n), 1 for tori).
    """

    name: str
    n: int
    K: DeformationMatrix
    theta: DeformationMatrix
    presentation: Presentation
    grid: tuple[tuple[GeneratorSymbol | None, ...], ...]
    schur_dim: int
    family: str = "su"
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def context(self) -> AlgebraContext:
        return self.presentation.context

    @property
    def params(self) -> tuple[str, ...]:
        return self.theta.params

    def u(self, i: int, j: int) -> Element:
        """Grid entry at 1-based ``(i, j)``."""
        g = self.grid[i - 1][j - 1]
        return Element.generator(g) if g is not None else Element.zero()

    def ustar(self, i: int, j: int) -> Element:
        g = self.grid[i - 1][j - 1]
        return Element.generator(g.star()) if g is not None else Element.zero()

    def entries(self) -> list[tuple[int, int, GeneratorSymbol]]:
        return [
            (i + 1, j + 1, g) for i, row in enumerate(self.grid) for j, g in enumerate(row) if g is not None
        ]

    @property
    def tensor2(self) -> TensorContext:
        return tensor_context(self.context, self.context)

    @property
    def tensor3(self) -> TensorContext:
        return tensor_context(self.context, self.context, self.context)

    def substitute(self, mapping) -> MatrixQuantumGroup:
        pres = self.presentation.substitute(mapping)
        return MatrixQuantumGroup(
            self.name,
            self.n,
            self.K.substitute(mapping),
            self.theta.substitute(mapping),
            pres,
            self.grid,
            self.schur_dim,
            self.family,
        )

    # -- generator images -------------------------------------------------

    def delta_images(self) -> dict[GeneratorSymbol, Element]:
        """``u_ij -> sum_k u_ik (x) u_kj`` and the same for starred entries."""
        cached = self._cache.get("delta_images")
        if cached is None:
            t2 = self.tensor2
            cached = {}
            for i, j, g in self.entries():
                plain = Element.zero()
                starred = Element.zero()
                for k in range(1, self.n + 1):
                    left, right = self.grid[i - 1][k - 1], self.grid[k - 1][j - 1]
                    if left is None or right is None:
                        continue
                    plain = plain + Element.word((t2.lift(0, left), t2.lift(1, right)))
                    starred = starred + Element.word((t2.lift(0, left.star()), t2.lift(1, right.star())))
                cached[g] = plain
                cached[g.star()] = starred
            self._cache["delta_images"] = cached
        return cached

    def counit_images(self) -> dict[GeneratorSymbol, Element]:
        out = {}
        for i, j, g in self.entries():
            value = Element.one() if i == j else Element.zero()
            out[g] = value
            out[g.star()] = value
        return out

    def antipode_images(self) -> dict[GeneratorSymbol, Element]:
        """``S(u_ij) = u_ji*`` and ``S(u_ij*) = u_ji``."""
        out = {}
        for i, j, g in self.entries():
            out[g] = self.ustar(j, i)
            out[g.star()] = self.u(j, i)
        return out


# -- structure maps -------------------------------------------------------------


def coproduct(Q: MatrixQuantumGroup, a: Element, images: Mapping[GeneratorSymbol, Element] | None = None) -> Element:
    """Multiplicative extension of Delta into the theta (+) theta tensor context."""
    if images is None:
        cache = Q._cache.setdefault("delta", {})
        images = Q.delta_images()
    else:
        cache = {}
    return extend_multiplicative(Q.context, Q.tensor2, images, a, cache=cache)


def coproduct_classical(Q: MatrixQuantumGroup, a: Element) -> Element:
    return extend_classical(Q.delta_images(), a, Q._cache.setdefault("delta_classical", {}))


def counit(Q: MatrixQuantumGroup, a: Element) -> Coefficient:
    value = extend_multiplicative(
        Q.context, Q.context, Q.counit_images(), a, cache=Q._cache.setdefault("counit", {})
    )
    return value.constant_term()


def antipode(Q: MatrixQuantumGroup, a: Element) -> Element:
    """Antimultiplicative extension of ``S``."""
    return extend_multiplicative(
        Q.context, Q.context, Q.antipode_images(), a, anti=True, cache=Q._cache.setdefault("antipode", {})
    )


def multiply(Q: MatrixQuantumGroup, t: Element) -> Element:
    """``m(a (x) b) = a x b`` on the two-fold tensor context."""
    t2 = Q.tensor2
    ctx = Q.context

    def on_word(w: Word) -> Element:
        left, right = t2.split_word(w)
        return twisted_product(ctx, Element.word(left), Element.word(right))

    return map_words(t, on_word, Q._cache.setdefault("multiply", {}))


def braiding(theta: DeformationMatrix, p: Sequence[int], q: Sequence[int]) -> PhaseExponent:
    """Exponent of the diagonal braiding on ``v_p (x) w_q``: ``theta(p, q) / 2``."""
    return chi(theta, p, q)


def _identity_leg(ctx: AlgebraContext, start: int):
    return (lambda w: Element.word(w), ctx, start)


def _test_words(Q: MatrixQuantumGroup, max_degree: int) -> list[Word]:
    gens = Q.context.all_generators
    words: list[Word] = []
    for d in range(1, max_degree + 1):
        words.extend(tuple(c) for c in combinations_with_replacement(gens, d))
    return words


# -- axiom checks ---------------------------------------------------------------


def check_coassociativity(
    Q: MatrixQuantumGroup,
    degree_bound: int = 2,
    images: Mapping[GeneratorSymbol, Element] | None = None,
) -> Report:
    """``(Delta (x) id) Delta = (id (x) Delta) Delta`` exactly on words of degree <= min(bound, 2)."""
    report = Report(f"coassociativity {Q.name}")
    t2, t3 = Q.tensor2, Q.tensor3
    ctx = Q.context
    images = dict(images) if images is not None else Q.delta_images()
    delta_cache: dict = {}

    def delta_word(w: Word) -> Element:
        return extend_multiplicative(ctx, t2, images, Element.word(w), cache=delta_cache)

    left_legs = [(delta_word, t2, 0), _identity_leg(ctx, 2)]
    right_legs = [_identity_leg(ctx, 0), (delta_word, t2, 1)]
    lc, rc = [{}, {}], [{}, {}]
    for w in _test_words(Q, max(1, min(degree_bound, 2))):
        d = delta_word(w)
        lhs = tensor_map(d, t2, t3, left_legs, lc)
        rhs = tensor_map(d, t2, t3, right_legs, rc)
        if lhs != rhs:
            label = " ".join(g.label for g in w)
            report.add(f"word {label}", Status.FAIL, "coproduct is not coassociative", label)
            return report
    report.add("all generators and degree-2 words", Status.PASS)
    return report


def check_counit(Q: MatrixQuantumGroup, degree_bound: int = 2) -> Report:
    """``(eps (x) id) Delta = id = (id (x) eps) Delta`` exactly."""
    report = Report(f"counit {Q.name}")
    ctx = Q.context

    def eps_word(w: Word) -> Element:
        return Element.constant(counit(Q, Element.word(w)))

    for name, legs in (
        ("(eps x id) Delta", [(eps_word, ctx, 0), _identity_leg(ctx, 0)]),
        ("(id x eps) Delta", [_identity_leg(ctx, 0), (eps_word, ctx, 0)]),
    ):
        caches = [{}, {}]
        bad = None
        for w in _test_words(Q, max(1, min(degree_bound, 2))):
            a = Element.word(w)
            if tensor_map(coproduct(Q, a), Q.tensor2, ctx, legs, caches) != a:
                bad = " ".join(g.label for g in w)
                break
        if bad is None:
            report.add(name, Status.PASS)
        else:
            report.add(name, Status.FAIL, f"fails on {bad}", bad)
    return report


def _membership_status(pres: Presentation, target: Element, bound: int) -> tuple[Status, str]:
    if target.is_zero():
        return Status.PASS, "identically zero"
    if target.degree() > bound:
        return Status.UNDECIDED, f"degree {target.degree()} exceeds bound {bound}"
    m = membership(pres, target, bound)
    if m.member:
        return Status.PASS, f"in the ideal at degree {m.witness_bound}"
    return Status.UNDECIDED, f"not decided at bound {bound}"


def check_antipode_axiom(Q: MatrixQuantumGroup, degree_bound: int | None = None) -> Report:
    """``m (id (x) S) Delta = eps = m (S (x) id) Delta`` modulo the presentation."""
    bound = Q.presentation.default_bound if degree_bound is None else degree_bound
    report = Report(f"antipode {Q.name}")
    ctx = Q.context
    t2 = Q.tensor2
    pres = Q.presentation
    for side in ("id x S", "S x id"):
        worst = Status.PASS
        detail = ""
        for g in ctx.all_generators:
            d = coproduct(Q, Element.generator(g))
            acc = Element.zero()
            for w, c in d.terms.items():
                left, right = t2.split_word(w)
                a, b = Element.word(left), Element.word(right)
                if side == "id x S":
                    b = antipode(Q, b)
                else:
                    a = antipode(Q, a)
                acc = acc + twisted_product(ctx, a, b) * c
            target = acc - Element.constant(counit(Q, Element.generator(g)))
            status, info = _membership_status(pres, target, bound)
            if status is not Status.PASS:
                worst, detail = status, f"{g.label}: {info}"
                break
        report.add(f"m({side})Delta = eps", worst, detail)
    return report


def check_coproduct_homomorphism(
    ctx: AlgebraContext | MatrixQuantumGroup,
    grid: Sequence[Sequence[GeneratorSymbol | None]] | None = None,
    degree_bound: int | None = None,
) -> tuple[Report, ConstraintReport]:
    """Whether the unaltered coproduct is multiplicative for the given deformation.

    Works for an arbitrary antisymmetric matrix on the concatenated
    (left, right) weights; the constraint report lists the conditions on
    its entries.
    """
    if isinstance(ctx, MatrixQuantumGroup):
        grid = ctx.grid
        ctx = ctx.context
    assert grid is not None
    t2 = tensor_context(ctx, ctx)
    n = len(grid)
    images: dict[GeneratorSymbol, Element] = {}
    for i in range(n):
        for j in range(n):
            g = grid[i][j]
            if g is None:
                continue
            plain, starred = Element.zero(), Element.zero()
            for k in range(n):
                left, right = grid[i][k], grid[k][j]
                if left is None or right is None:
                    continue
                plain = plain + Element.word((t2.lift(0, left), t2.lift(1, right)))
                starred = starred + Element.word((t2.lift(0, left.star()), t2.lift(1, right.star())))
            images[g] = plain
            images[g.star()] = starred
    constraints = homomorphism_constraints(ctx, t2, images, ctx.params)
    report = Report(f"coproduct homomorphism {ctx.name}")
    if constraints.status is ExtensionStatus.EXTENDS_UNCONDITIONALLY:
        report.add("Delta(a x b) = Delta(a) x Delta(b)", Status.PASS)
    else:
        forced = ", ".join(f"{f} = 0" for f in constraints.solved)
        report.add(
            "Delta(a x b) = Delta(a) x Delta(b)",
            Status.FAIL,
            f"{constraints.status.value}: {forced}",
            [list(p) for p in constraints.witness_pairs[:5]],
        )
    report.extra["constraints"] = constraints.to_json()
    return report, constraints


def check_corep_unitarity(
    Q: MatrixQuantumGroup,
    degree_bound: int | None = None,
    U: Sequence[Sequence[Element]] | None = None,
    Ubar: Sequence[Sequence[Element]] | None = None,
) -> Report:
    """``U U* = U* U = I`` modulo the presentation and comultiplicativity of ``U`` and ``Ubar``.

    ``Ubar[i][j]`` is the entry-wise star of ``U`` (the matrix ``(u_ij*)``);
    both may be overridden to test corrupted grids.
    """
    bound = Q.presentation.default_bound if degree_bound is None else degree_bound
    n = Q.n
    ctx = Q.context
    t2 = Q.tensor2
    U = [[Q.u(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)] if U is None else U
    Ubar = [[star(ctx, U[i][j]) for j in range(n)] for i in range(n)] if Ubar is None else Ubar
    report = Report(f"corepresentation {Q.name}")

    for name, mat in (("U", U), ("Ubar", Ubar)):
        bad = None
        for i in range(n):
            for j in range(n):
                lhs = coproduct(Q, mat[i][j])
                rhs = _sum_simple_tensors(t2, ctx, [(mat[i][k], mat[k][j]) for k in range(n)])
                if lhs != rhs:
                    bad = (i + 1, j + 1)
                    break
            if bad:
                break
        if bad is None:
            report.add(f"Delta({name}) = {name}_12 {name}_13", Status.PASS)
        else:
            report.add(
                f"Delta({name}) = {name}_12 {name}_13",
                Status.FAIL,
                f"entry ({bad[0]},{bad[1]}) is not comultiplicative",
                list(bad),
            )

    for name, entry in (
        ("U U* = I", lambda j, l: [(U[j][k], Ubar[l][k]) for k in range(n)]),
        ("U* U = I", lambda j, l: [(Ubar[k][j], U[k][l]) for k in range(n)]),
    ):
        worst, detail, witness = Status.PASS, "", None
        for j in range(n):
            for l in range(n):
                acc = Element.zero()
                for a, b in entry(j, l):
                    acc = acc + twisted_product(ctx, a, b)
                target = acc - (1 if j == l else 0)
                status, info = _membership_status(Q.presentation, target, bound)
                if status is not Status.PASS:
                    worst, detail, witness = status, f"entry ({j + 1},{l + 1}): {info}", [j + 1, l + 1]
                    break
            if worst is not Status.PASS:
                break
        report.add(name, worst, detail, witness)
    return report


def _sum_simple_tensors(t2: TensorContext, ctx: AlgebraContext, pairs) -> Element:
    acc = Element.zero()
    for a, b in pairs:
        left = lift_element(t2, a, ctx, 0)
        right = lift_element(t2, b, ctx, 1)
        for w1, c1 in left.terms.items():
            for w2, c2 in right.terms.items():
                acc = acc + Element.word(w1 + w2, c1 * c2)
    return acc


# -- Haar state -----------------------------------------------------------------


def haar_state(Q: MatrixQuantumGroup, a: Element) -> Coefficient:
    """Restricted Haar state: torus invariance plus Schur orthogonality in bidegree (1, 1)."""
    ctx = Q.context
    total = Coefficient.ZERO
    for w, c in a.terms.items():
        if ctx.word_weight(w) != ctx.zero_weight:
            continue
        total = total + c * _haar_word(Q, w)
    return total


def _haar_word(Q: MatrixQuantumGroup, w: Word) -> Fraction:
    if not w:
        return Fraction(1)
    plain = [g for g in w if not g.starred]
    starred = [g.star() for g in w if g.starred]
    if len(plain) != 1 or len(starred) != 1:
        raise UnsupportedDegree(
            f"Haar state is only implemented on constants and one u times one u*, not {' '.join(g.label for g in w)}"
        )
    return Fraction(1, Q.schur_dim) if plain[0] == starred[0] else Fraction(0)


def _haar_domain(Q: MatrixQuantumGroup) -> list[Element]:
    ctx = Q.context
    out = [Element.one()]
    out += [Element.generator(g) for g in ctx.all_generators]
    for g in ctx.generators:
        for h in ctx.generators:
            out.append(twisted_product(ctx, Element.generator(g), Element.generator(h.star())))
            out.append(twisted_product(ctx, Element.generator(h.star()), Element.generator(g)))
    return out


def check_haar_identities(Q: MatrixQuantumGroup, degree_bound: int | None = None) -> Report:
    """Invariance ``(id (x) mu) Delta = mu = (mu (x) id) Delta`` and ``mu S = mu`` on the supported domain."""
    bound = 2 if degree_bound is None else max(2, degree_bound)
    report = Report(f"Haar state {Q.name}")
    ctx = Q.context

    def mu_word(w: Word) -> Element:
        return Element.constant(haar_state(Q, Element.word(w)))

    checks = {
        "(id x mu) Delta = mu": [_identity_leg(ctx, 0), (mu_word, ctx, 0)],
        "(mu x id) Delta = mu": [(mu_word, ctx, 0), _identity_leg(ctx, 0)],
    }
    domain = _haar_domain(Q)
    for name, legs in checks.items():
        worst, detail = Status.PASS, ""
        caches = [{}, {}]
        for a in domain:
            lhs = tensor_map(coproduct(Q, a), Q.tensor2, ctx, legs, caches)
            target = lhs - Element.constant(haar_state(Q, a))
            status, info = _membership_status(Q.presentation, target, bound)
            if status is not Status.PASS:
                worst, detail = status, f"{a}: {info}"
                break
        report.add(name, worst, detail)
    bad = next((a for a in domain if haar_state(Q, antipode(Q, a)) != haar_state(Q, a)), None)
    report.add("mu S = mu", Status.PASS if bad is None else Status.FAIL, "" if bad is None else str(bad))
    return report


def hopf_report(Q: MatrixQuantumGroup, degree_bound: int | None = None) -> Report:
    """Run every Hopf-level check for ``Q``."""
    report = Report(f"Hopf structure of {Q.name}")
    report.extend(check_coassociativity(Q), "coassociativity: ")
    report.extend(check_counit(Q), "counit: ")
    report.extend(check_antipode_axiom(Q, degree_bound), "antipode: ")
    report.extend(check_corep_unitarity(Q, degree_bound), "corep: ")
    report.extend(check_haar_identities(Q, degree_bound), "haar: ")
    return report

