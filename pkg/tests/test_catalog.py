from __future__ import annotations

import warnings
from fractions import Fraction
from itertools import permutations
from pathlib import Path

import pytest

from thetadeform.algebra import Element, ExchangeRelation, product, star, twisted_product
from thetadeform.catalog import (
    build_nc_torus,
    build_sphere,
    build_su_theta,
    lookup,
    parse_matrix,
    su_weights,
    thetaprime,
    twisted_determinant,
)
from thetadeform.errors import DimensionError, NoNontrivialDeformation, ParseError
from thetadeform.hopf import counit
from thetadeform.phase import AffineForm, DeformationMatrix, PhaseExponent, chi

GOLDEN = Path(__file__).parent / "data" / "su3_exchange.tsv"


def golden_table():
    rows = []
    for line in GOLDEN.read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        left, right, k = line.split("\t")
        rows.append((left, right, int(k)))
    return rows


def test_su3_table_matches_printed_relations(su3):
    ctx = su3.context
    expected = [
        ExchangeRelation(ctx.generator(a), ctx.generator(b), PhaseExponent.of(AffineForm.param("theta", k)))
        for a, b, k in golden_table()
    ]
    got = su3.presentation.exchange_relations(include_commutators=True)
    assert len(expected) == 36
    assert sorted(got, key=str) == sorted(expected, key=str)


def test_su3_table_relations_hold_as_elements(su3):
    ctx = su3.context
    for a, b, k in golden_table():
        x, y = Element.generator(ctx.generator(a)), Element.generator(ctx.generator(b))
        lhs = twisted_product(ctx, x, y)
        rhs = twisted_product(ctx, y, x).shift(PhaseExponent.of(AffineForm.param("theta", k)))
        assert lhs == rhs, (a, b)


def test_weights_follow_the_torus_action():
    # u_ij transforms by the i-th left and j-th right character
    Q = build_su_theta(3, "theta")
    w = su_weights(3)
    assert w == [(1, 0), (0, 1), (-1, -1)]
    for i, j, g in Q.entries():
        assert g.weight == w[i - 1] + w[j - 1]


def test_su2_determinant_is_classical():
    Q = build_su_theta(2)
    ctx = Q.context
    u = lambda i, j: Element.generator(Q.grid[i - 1][j - 1])
    expected = product(ctx, u(1, 1), u(2, 2)) - product(ctx, u(1, 2), u(2, 1))
    assert twisted_determinant(Q) == expected
    assert Q.presentation.relations[-1] == expected - 1


def test_su3_determinant_against_brute_force(su3):
    ctx = su3.context
    det = twisted_determinant(su3)
    assert len(det) == 6
    oracle = Element.zero()
    for perm in permutations(range(3)):
        gens = [su3.grid[i][perm[i]] for i in range(3)]
        phase = PhaseExponent.zero()
        for a in range(3):
            for b in range(a + 1, 3):
                phase = phase + chi(ctx.theta, gens[a].weight, gens[b].weight)
        sign = 1 if sum(perm[a] > perm[b] for a in range(3) for b in range(a + 1, 3)) % 2 == 0 else -1
        oracle = oracle + Element.word(gens, sign).shift(PhaseExponent.of(phase))
    assert det == oracle
    flat = det.substitute({"theta": 0})
    assert all(c.is_rational() for _, c in flat.items())
    assert counit(su3, det) == 1


def test_sphere_and_torus_presentations():
    s7 = build_sphere(thetaprime(), 4)
    assert s7.labels == ("radius",)
    assert len(s7.exchange_relations()) == 3
    assert len(s7.exchange_relations(include_commutators=True)) == 6
    torus = build_nc_torus(DeformationMatrix.zero(2), 2)
    assert all(r.is_commutator for r in torus.exchange_relations(include_commutators=True))
    assert torus.max_relation_degree == 2


def test_unitarity_sets_swap_under_star_transpose(su3):
    ctx = su3.context
    rels = dict(zip(su3.presentation.labels, su3.presentation.relations))
    for j in range(1, 4):
        for l in range(1, 4):
            # (U U*)_{jl}^* = (U U*)_{lj}
            assert star(ctx, rels[f"UU*[{j},{l}]"]) == rels[f"UU*[{l},{j}]"]
            assert star(ctx, rels[f"U*U[{j},{l}]"]) == rels[f"U*U[{l},{j}]"]


def test_sphere_with_negated_matrix_is_star_isomorphic():
    # z_j -> z_j* is multiplicative and conjugate-linear from S_lambda onto S_-lambda
    lam = DeformationMatrix.symbolic(3, "lambda")
    plus, minus = build_sphere(lam, 3), build_sphere(-lam, 3)
    ctx_p, ctx_m = plus.context, minus.context
    swap = {g: Element.generator(ctx_m.generator(g.star().label)) for g in ctx_p.all_generators}
    for rel in plus.exchange_relations(include_stars=True):
        x, y = swap[rel.left], swap[rel.right]
        assert twisted_product(ctx_m, x, y) == twisted_product(ctx_m, y, x).shift(PhaseExponent.of(-rel.phase))


def test_parse_matrix_forms():
    m = parse_matrix("12=a, 13=-b; 23=1/2", 3)
    assert m[0, 1] == AffineForm.param("a")
    assert m[0, 2] == -AffineForm.param("b")
    assert m[1, 2] == AffineForm(Fraction(1, 2))
    assert parse_matrix("0", 3).is_zero()
    assert parse_matrix("thetaprime", 4) == thetaprime()
    with pytest.raises(DimensionError):
        parse_matrix("thetaprime", 3)
    with pytest.raises(ParseError):
        parse_matrix("12=", 3)


def test_lookup_names():
    assert lookup("su:3").params == ("theta",)
    assert lookup("su:4").params == ("lambda12", "lambda13", "lambda23")
    assert lookup("sphere:4", "thetaprime").context.theta == thetaprime()
    assert lookup("torus:2", "0").context.theta.is_zero()
    assert lookup("su:3", substitutions={"theta": Fraction(1, 5)}).params == ()
    with pytest.raises(ParseError):
        lookup("so:3")


def test_su2_warns_about_trivial_deformation():
    with pytest.warns(NoNontrivialDeformation):
        Q = build_su_theta(2, "theta")
    assert Q.theta.is_zero()
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        build_su_theta(2, "0")
