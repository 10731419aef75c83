"""End-to-end acceptance criteria, each with its time limit.

Every criterion prints one line ``[PASS]``/``[FAIL]`` with its wall time,
whether or not pytest captures output.
"""

from __future__ import annotations

import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations_with_replacement
from pathlib import Path

import pytest

from thetadeform.algebra import (
    AlgebraContext,
    Element,
    ExchangeRelation,
    commutative_product,
    product,
    twisted_product,
)
from thetadeform.catalog import build_sphere, build_su_theta, thetaprime, twisted_determinant
from thetadeform.cli import main
from thetadeform.coaction import (
    ExtensionStatus,
    builtin_spec,
    check_extension,
    fixed_points,
    match_presentation,
    su2_on_su3,
    su3_on_s5,
    su3_on_su4,
)
from thetadeform.hopf import (
    antipode,
    check_antipode_axiom,
    check_coassociativity,
    check_coproduct_homomorphism,
    check_corep_unitarity,
    check_counit,
    check_haar_identities,
    haar_state,
)
from thetadeform.phase import AffineForm, DeformationMatrix, PhaseExponent, chi
from thetadeform.report import Status

TRIPLE = {"lambda12 - theta", "lambda13 + theta", "lambda23 - theta"}
GOLDEN = Path(__file__).parent / "data" / "su3_exchange.tsv"


@contextmanager
def criterion(capsys, number: int, title: str, limit: float):
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit:.0f}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            verdict = "PASS" if ok else "FAIL"
            print(f"\n[{verdict}] criterion {number}: {title} ({elapsed:.2f}s / {limit:.0f}s)")


def test_criterion_1_su3_golden_table(capsys):
    with criterion(capsys, 1, "SU(3)_theta golden table", 1):
        rows = [
            line.split("\t")
            for line in GOLDEN.read_text().splitlines()
            if line.strip() and not line.startswith("#")
        ]
        Q = build_su_theta(3, "theta")
        ctx = Q.context
        expected = {
            ExchangeRelation(ctx.generator(a), ctx.generator(b), PhaseExponent.of(AffineForm.param("theta", int(k))))
            for a, b, k in rows
        }
        code = main(["relations", "su:3", "--K", "theta", "--format", "json"])
        out = capsys.readouterr().out
        assert code == 0
        emitted = json.loads(out)["relations"]
        got = {
            ExchangeRelation(ctx.generator(r["left"]), ctx.generator(r["right"]), PhaseExponent.from_json(r["phase"]))
            for r in emitted
        }
        assert len(emitted) == 36 and got == expected
        for rel in expected:
            assert rel.element(ctx).is_zero()


def _random_weight(rng, dim):
    return tuple(rng.randint(-3, 3) for _ in range(dim))


def _random_homogeneous(rng, ctx):
    """A homogeneous element: random multiples of words sharing one weight."""
    gens = ctx.all_generators
    base = [rng.choice(gens) for _ in range(rng.randint(0, 3))]
    weight = ctx.word_weight(tuple(sorted(base)))
    out = Element.word(base, Fraction(rng.randint(-4, 4) or 1, rng.randint(1, 3)))
    # add a second word of the same weight: the base word times a commuting g g*
    g = rng.choice(ctx.generators)
    extra = base + [g, g.star()]
    out = out + Element.word(extra, Fraction(rng.randint(1, 5))).shift(PhaseExponent.of(AffineForm.param("theta")))
    assert ctx.word_weight(tuple(sorted(extra))) == weight
    return out


def test_criterion_2_bicharacter_and_associativity(capsys):
    with criterion(capsys, 2, "1000 bicharacter/antisymmetry/associativity checks", 10):
        rng = random.Random(20240611)
        theta = DeformationMatrix.from_upper(
            4,
            {(j, k): AffineForm(Fraction(rng.randint(-6, 6), rng.randint(1, 6)), {"theta": rng.randint(-2, 2)})
             for j in range(1, 5) for k in range(j + 1, 5)},
        )
        add = lambda a, b: tuple(x + y for x, y in zip(a, b))
        checks = 0
        for _ in range(350):
            r, s, t = (_random_weight(rng, 4) for _ in range(3))
            assert chi(theta, add(r, s), t) == PhaseExponent.of(chi(theta, r, t) + chi(theta, s, t))
            assert chi(theta, r, add(s, t)) == PhaseExponent.of(chi(theta, r, s) + chi(theta, r, t))
            checks += 2
        for _ in range(200):
            r, s = _random_weight(rng, 4), _random_weight(rng, 4)
            assert PhaseExponent.of(chi(theta, r, s) + chi(theta, s, r)).is_zero()
            checks += 1
        Q = build_su_theta(3, "theta")
        ctx = Q.context
        for _ in range(100):
            a, b, c = (_random_homogeneous(rng, ctx) for _ in range(3))
            left = twisted_product(ctx, twisted_product(ctx, a, b), c)
            right = twisted_product(ctx, a, twisted_product(ctx, b, c))
            assert left == right
            checks += 1
        assert checks == 1000


def test_criterion_3_hopf_verification(capsys):
    with criterion(capsys, 3, "Hopf verification on SU(3)_theta and SU(4)_lambda", 30):
        for Q in (build_su_theta(3, "theta"), build_su_theta(4)):
            assert check_coassociativity(Q).status is Status.PASS
            assert check_counit(Q).status is Status.PASS
            assert check_antipode_axiom(Q, 4).status is Status.PASS
            assert check_corep_unitarity(Q, 4).status is Status.PASS


def test_criterion_4_block_structure_is_necessary(capsys):
    with criterion(capsys, 4, "K (+) (-K) necessity probe", 10):
        Q = build_su_theta(3, "theta")
        generic = AlgebraContext(DeformationMatrix.symbolic(4, "t"), Q.context.generators, "generic")
        assert not generic.theta[0, 2].is_zero()
        report, constraints = check_coproduct_homomorphism(generic, Q.grid)
        assert report.status is Status.FAIL
        forced = {str(f) for f in constraints.solved}
        assert {"t13", "t14", "t23", "t24"} <= forced
        # every solution has vanishing off-diagonal blocks
        for name in ("t13", "t14", "t23", "t24"):
            assert constraints.solution[name].is_zero()


def test_criterion_5_sphere_coaction(capsys):
    with criterion(capsys, 5, "SU(3)_theta on S^5: constraints and trivial fixed points", 30):
        spec = su3_on_s5()
        report = check_extension(spec)
        assert report.status is ExtensionStatus.EXTENDS_IFF
        assert {str(f) for f in report.solved} == TRIPLE
        assert report.structural_status is Status.PASS
        result = fixed_points(spec, 3)
        assert result.generators == [] and result.closed
        assert all(not basis for basis in result.by_degree.values())


def test_criterion_6_seven_sphere(capsys):
    with criterion(capsys, 6, "SU(3)_theta on SU(4)_lambda: invariants form S^7_theta'", 60):
        spec = su3_on_su4()
        report = check_extension(spec, structural=False)
        assert report.status is ExtensionStatus.EXTENDS_IFF
        assert {str(f) for f in report.solved} == TRIPLE
        result = fixed_points(spec, 2)
        assert [str(g) for g in result.generators] == ["v41", "v42", "v43", "v44"]
        match = match_presentation(result.generators, result.spec.A)
        t = AffineForm.param("theta")
        expected = DeformationMatrix([[0, -t, t, 0], [t, 0, -t, 0], [-t, t, 0, 0], [0, 0, 0, 0]])
        assert match.theta == expected == thetaprime()
        printed = {("x1", "x2"): -1, ("x1", "x3"): 1, ("x1", "x4"): 0, ("x2", "x3"): -1, ("x2", "x4"): 0, ("x3", "x4"): 0}
        got = {(r.left.label, r.right.label): r.phase for r in match.relations}
        assert got == {k: PhaseExponent.of(AffineForm.param("theta", v)) for k, v in printed.items()}
        assert match.status is Status.PASS


def test_criterion_7_negative_control(capsys):
    with criterion(capsys, 7, "SU(2) on SU(3)_theta fails unless theta = 0", 10):
        report = check_extension(su2_on_su3())
        assert report.status is ExtensionStatus.FAILS_IDENTICALLY
        assert report.witness_pairs[0] == ("u11", "u12")
        flat = check_extension(su2_on_su3(theta="0"), structural=False)
        assert flat.status is ExtensionStatus.EXTENDS_UNCONDITIONALLY


def _schur(n, i, j, k, l):
    return Fraction(1, n) if (i, j) == (k, l) else Fraction(0)


def test_criterion_8_haar_identities(capsys):
    with criterion(capsys, 8, "Haar state identities", 10):
        for n, K in ((3, "theta"), (4, None)):
            Q = build_su_theta(n, K)
            ctx = Q.context
            for d in (1, 2, 3):
                for w in combinations_with_replacement(ctx.all_generators, d):
                    if ctx.word_weight(w) != ctx.zero_weight:
                        assert haar_state(Q, Element.word(w)) == 0
            for i, j, g in Q.entries():
                for k, l, h in Q.entries():
                    x = twisted_product(ctx, Element.generator(g), Element.generator(h.star()))
                    assert haar_state(Q, x) == _schur(n, i, j, k, l)
                    assert haar_state(Q, antipode(Q, x)) == haar_state(Q, x)
            assert check_haar_identities(Q).status is Status.PASS


def test_criterion_9_degeneration(capsys):
    with criterion(capsys, 9, "all parameters zero give the commutative constructions", 10):
        rng = random.Random(7)
        zero3 = {"theta": 0}
        Q = build_su_theta(3, "theta").substitute(zero3)
        classical = build_su_theta(3, "0")
        assert Q.presentation == classical.presentation
        ctx = Q.context
        for _ in range(150):
            words = [[rng.choice(ctx.all_generators) for _ in range(rng.randint(0, 3))] for _ in range(2)]
            a, b = (Element.word(w, rng.randint(-3, 3)) for w in words)
            assert twisted_product(ctx, a, b) == commutative_product(a, b)
        assert all(r.is_commutator for r in Q.presentation.exchange_relations(include_commutators=True))
        det = twisted_determinant(Q)
        assert all(c.is_rational() for _, c in det.items())
        assert det == sum(
            (product(ctx, *(Q.u(i + 1, p[i] + 1) for i in range(3))) * s for p, s in _perms3()), Element.zero()
        )
        sphere = build_sphere(DeformationMatrix.symbolic(3, "lambda"), 3).substitute(
            {"lambda12": 0, "lambda13": 0, "lambda23": 0}
        )
        assert sphere == build_sphere(DeformationMatrix.zero(3), 3)
        lam0 = DeformationMatrix.zero(3)
        assert check_extension(su3_on_s5("0", lam0), structural=False).status is ExtensionStatus.EXTENDS_UNCONDITIONALLY
        assert fixed_points(su3_on_s5("0", lam0), 2).generators == []
        flat = fixed_points(su3_on_su4("0", lam0), 1)
        assert [str(g) for g in flat.generators] == ["v41", "v42", "v43", "v44"]


def _perms3():
    return [((0, 1, 2), 1), ((0, 2, 1), -1), ((1, 0, 2), -1), ((1, 2, 0), 1), ((2, 0, 1), 1), ((2, 1, 0), -1)]


@pytest.mark.parametrize("name", ["su3-on-s5", "su3-on-su4", "su2-on-su3"])
def test_builtin_specs_are_addressable(name):
    assert builtin_spec(name).name == name
