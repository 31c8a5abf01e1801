"""Pseudoalgebra presentations, the standard families, and the axiom checkers.

The skew and Jacobi engine paths are cross-checked against deliberately
separate transcriptions of the axioms: skewsymmetry by expanding the
substituted bracket one operator at a time from its lambda-graded terms, and
Jacobi by evaluating all three nested brackets at specialized rational values
of lam and mu.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from lambdacone import (
    BracketTable,
    ChiVector,
    LambdaPoly,
    LieStructure,
    ModuleElement,
    WorkspaceError,
    bracket_extend,
    build_cur,
    build_hd,
    build_wd,
    current_extend,
    jacobi_check,
    pseudo_space,
    sd_basis,
    sd_closure_check,
    sd_divergence,
    skew_check,
)


# ----------------------------------------------------------------------
# independent oracles
# ----------------------------------------------------------------------

def skew_partner(table, i, j):
    """-[a_j (-T-lam) a_i], expanded lambda-monomial by lambda-monomial.

    Each lam^K is replaced by the product of (-T_a - lam_a)^{K_a} acting by
    multiplication on the module coordinate; a second, independent route to
    the same value the checker computes by flat substitution.
    """
    vs = table.vs
    out = LambdaPoly.zero(vs, table.r)
    for lam_mono, element in table.entry(j, i).lambda_terms().items():
        op = vs.one
        for (_, a), e in lam_mono:
            op = op * (-vs.var("T", a) - vs.var("lam", a)) ** e
        for k, poly in element.coords.items():
            out = out + LambdaPoly(vs, table.r, {k: op * poly})
    return LambdaPoly(vs, table.r, {k: -p for k, p in out.coords.items()})


def _entry_at(table, i, j, lam_values, vs):
    """[a_i lam a_j] with lam specialized to rational numbers: {k: T-poly}."""
    assignment = {("lam", a + 1): vs.const(v) for a, v in enumerate(lam_values)}
    return {k: p.subst(assignment) for k, p in table.entry(i, j).coords.items()}


def jacobi_residual_at(table, i, j, k, lam_values, mu_values):
    """A - B - C at numeric lam, mu, composing brackets step by step."""
    vs = table.vs
    r = table.r
    shift = lambda poly, values: poly.subst(
        {("T", a + 1): vs.var("T", a + 1) + vs.const(v) for a, v in enumerate(values)}
    )
    residual = {l: vs.zero for l in range(r)}
    # A = [a_i lam [a_j mu a_k]]
    for kp, Q in _entry_at(table, j, k, mu_values, vs).items():
        for l, pol in _entry_at(table, i, kp, lam_values, vs).items():
            residual[l] = residual[l] + shift(Q, lam_values) * pol
    # B = [a_j mu [a_i lam a_k]]
    for kp, P in _entry_at(table, i, k, lam_values, vs).items():
        for l, pol in _entry_at(table, j, kp, mu_values, vs).items():
            residual[l] = residual[l] - shift(P, mu_values) * pol
    # C = [[a_i lam a_j]_(lam+mu) a_k]
    nu = [a + b for a, b in zip(lam_values, mu_values)]
    for kp, R in _entry_at(table, i, j, lam_values, vs).items():
        evaluated = R.subst({("T", a + 1): vs.const(-v) for a, v in enumerate(nu)})
        for l, pol in _entry_at(table, kp, k, nu, vs).items():
            residual[l] = residual[l] - evaluated * pol
    return residual


# ----------------------------------------------------------------------
# constructors
# ----------------------------------------------------------------------

def test_cur_sl2_e_f_gives_h():
    table = build_cur(LieStructure.sl2(), 1)
    e, f = table.generators.index("e"), table.generators.index("f")
    entry = table.entry(e, f)
    assert entry == LambdaPoly.from_module_element(table.generator_element("h"))


def test_cur_abelian_is_zero():
    table = build_cur(LieStructure.abelian(2), 2)
    assert all(not entry for entry in table.entries.values())


def test_cur_d0_is_ordinary_lie_algebra():
    table = build_cur(LieStructure.abelian(1), 0)
    assert table.D == 0
    assert not table.entry(0, 0)
    sl2 = build_cur(LieStructure.sl2(), 0)
    assert skew_check(sl2).passed and jacobi_check(sl2).passed


def test_wd_virasoro_instance():
    table = build_wd(1)
    vs = table.vs
    expected = LambdaPoly(vs, 1, {0: vs.var("T", 1) + 2 * vs.var("lam", 1)})
    assert table.entry(0, 0) == expected


def test_wd_cross_entry():
    table = build_wd(2)
    vs = table.vs
    expected = LambdaPoly(
        vs, 2, {1: vs.var("T", 1) + vs.var("lam", 1), 0: vs.var("lam", 2)}
    )
    assert table.entry(0, 1) == expected


def test_wd_rejects_bad_dimension():
    with pytest.raises(ValueError):
        build_wd(0)


def test_hd_formula_and_parity():
    table = build_hd(2)
    vs = table.vs
    expected = LambdaPoly(
        vs, 1,
        {0: vs.var("lam", 1) * vs.var("T", 2) - vs.var("lam", 2) * vs.var("T", 1)},
    )
    assert table.entry(0, 0) == expected
    with pytest.raises(ValueError):
        build_hd(3)


# ----------------------------------------------------------------------
# sesquilinear extension
# ----------------------------------------------------------------------

def test_bracket_extend_first_slot():
    table = build_wd(1)
    vs = table.vs
    x = table.element({"L1": vs.var("T", 1)})
    y = table.generator_element("L1")
    result = bracket_extend(table, x, y)
    lam, t = vs.var("lam", 1), vs.var("T", 1)
    assert result == LambdaPoly(vs, 1, {0: -lam * (t + 2 * lam)})


def test_bracket_extend_second_slot():
    table = build_wd(1)
    vs = table.vs
    x = table.generator_element("L1")
    y = table.element({"L1": vs.var("T", 1)})
    lam, t = vs.var("lam", 1), vs.var("T", 1)
    assert bracket_extend(table, x, y) == LambdaPoly(vs, 1, {0: (t + lam) * (t + 2 * lam)})


def test_bracket_extend_is_identity_on_generators():
    table = build_wd(3)
    for i in range(3):
        for j in range(3):
            x, y = table.generator_element(i), table.generator_element(j)
            assert bracket_extend(table, x, y) == table.entry(i, j)


def _random_element(rng, table, degmax=2):
    vs = table.vs
    coords = {}
    for k in range(table.r):
        poly = vs.zero
        for _ in range(rng.randint(0, 2)):
            exps = [0] * table.D
            for _ in range(rng.randint(0, degmax)):
                exps[rng.randrange(table.D)] += 1
            poly = poly + vs.from_exps("T", exps, rng.randint(-4, 4))
        if poly:
            coords[k] = poly
    return ModuleElement(vs, table.r, coords)


def test_first_slot_sesquilinearity_property():
    rng = random.Random(1234)
    for builder in (lambda: build_wd(2), lambda: build_hd(2),
                    lambda: build_cur(LieStructure.sl2(), 2)):
        table = builder()
        vs = table.vs
        for _ in range(5):
            x, y = _random_element(rng, table), _random_element(rng, table)
            for alpha in range(1, table.D + 1):
                lhs = bracket_extend(table, x.mul_T(alpha), y)
                rhs = bracket_extend(table, x, y).scale(-vs.var("lam", alpha))
                assert lhs == rhs


def test_bracket_extend_workspace_mismatch():
    with pytest.raises(WorkspaceError):
        bracket_extend(build_wd(2), build_wd(3).generator_element(0),
                       build_wd(2).generator_element(0))


# ----------------------------------------------------------------------
# skewsymmetry
# ----------------------------------------------------------------------

def test_skew_passes_for_wd():
    for D in (1, 2, 3):
        assert skew_check(build_wd(D)).passed


def test_skew_matches_operator_expansion_oracle():
    for table in (build_wd(1), build_wd(2), build_hd(2), build_hd(4)):
        for i in range(table.r):
            for j in range(table.r):
                assert table.entry(i, j) == skew_partner(table, i, j)


def test_skew_failure_witness():
    vs = pseudo_space(1)
    table = BracketTable(1, ("L",), {(0, 0): LambdaPoly(vs, 1, {0: vs.one})})
    report = skew_check(table)
    assert not report.passed
    assert report.first_witness == "(2)*L"


# ----------------------------------------------------------------------
# Jacobi
# ----------------------------------------------------------------------

def test_jacobi_cur_sl2():
    assert jacobi_check(build_cur(LieStructure.sl2(), 1)).passed


def test_jacobi_wd2_with_specialization_oracle():
    table = build_wd(2)
    assert jacobi_check(table).passed
    points = [((3, 5), (7, 2)), ((1, -2), (Fraction(1, 2), 4)), ((0, 1), (1, 0))]
    for lam_values, mu_values in points:
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    residual = jacobi_residual_at(table, i, j, k, lam_values, mu_values)
                    assert not any(residual.values())


def test_jacobi_zero_table():
    vs = pseudo_space(2)
    table = BracketTable(2, ("a", "b"), {})
    assert jacobi_check(table).passed


def test_jacobi_detects_broken_constants():
    # Antisymmetric constants that do not satisfy the Lie Jacobi identity.
    vs = pseudo_space(1)
    entries = {
        (0, 1): LambdaPoly(vs, 3, {0: vs.one}),
        (1, 0): LambdaPoly(vs, 3, {0: -vs.one}),
        (0, 2): LambdaPoly(vs, 3, {1: vs.one}),
        (2, 0): LambdaPoly(vs, 3, {1: -vs.one}),
        (1, 2): LambdaPoly(vs, 3, {2: -vs.one}),
        (2, 1): LambdaPoly(vs, 3, {2: vs.one}),
    }
    table = BracketTable(1, ("e", "h", "f"), entries)
    assert skew_check(table).passed
    assert not jacobi_check(table).passed


def test_lie_structure_validation():
    with pytest.raises(ValueError):
        LieStructure(2, {(0, 1, 0): 1})  # not antisymmetric
    with pytest.raises(ValueError):
        LieStructure(3, {
            (0, 1, 2): 1, (1, 0, 2): -1,
            (1, 2, 0): 1, (2, 1, 0): -1,
            (2, 0, 1): 1, (0, 2, 1): -1,
            (0, 1, 0): 1, (1, 0, 0): -1,  # spoil Jacobi
        })


# ----------------------------------------------------------------------
# S(D, chi)
# ----------------------------------------------------------------------

def test_sd_divergence_values():
    table = build_wd(2)
    vs = table.vs
    x = table.element({"L1": vs.var("T", 2), "L2": -vs.var("T", 1)})
    assert not sd_divergence(table, x, ChiVector.zero(2))
    assert sd_divergence(table, x, ChiVector.unit(2, 1)) == vs.var("T", 2)
    # A constant coefficient is *not* divergence free: the symbol is T_1.
    assert sd_divergence(table, table.generator_element("L1"), ChiVector.zero(2)) == vs.var("T", 1)


def test_sd_divergence_requires_wd():
    with pytest.raises(ValueError):
        sd_divergence(build_hd(2), build_hd(2).generator_element(0), ChiVector.zero(2))


def test_sd_basis_members_are_divergence_free():
    table = build_wd(2)
    for chi in (ChiVector.zero(2), ChiVector.unit(2, 1)):
        basis = sd_basis(2, chi, 2)
        assert basis
        for x in basis:
            assert not sd_divergence(table, x, chi)


def wd_bracket_direct(table, x, y):
    """Independent expansion of the W(D) bracket from the displayed formula."""
    vs = table.vs
    D = table.D
    neg = {("T", a): -vs.var("lam", a) for a in range(1, D + 1)}
    shift = {("T", a): vs.var("T", a) + vs.var("lam", a) for a in range(1, D + 1)}
    coords = {c: vs.zero for c in range(D)}
    for a in range(D):
        P = x.coords.get(a)
        if P is None:
            continue
        for b in range(D):
            Q = y.coords.get(b)
            if Q is None:
                continue
            factor = P.subst(neg) * Q.subst(shift)
            coords[b] = coords[b] + factor * (vs.var("T", a + 1) + vs.var("lam", a + 1))
            coords[a] = coords[a] + factor * vs.var("lam", b + 1)
    return LambdaPoly(vs, D, coords)


def test_closure_with_direct_expansion_oracle():
    for D, chi in ((2, ChiVector.zero(2)), (2, ChiVector.unit(2, 1))):
        table = build_wd(D)
        basis = sd_basis(D, chi, 2)
        for x in basis:
            for y in basis:
                via_engine = bracket_extend(table, x, y)
                assert via_engine == wd_bracket_direct(table, x, y)
                for element in via_engine.lambda_terms().values():
                    assert not sd_divergence(table, element, chi)
        assert sd_closure_check(D, chi, 2).passed


def test_closure_degenerate_d1():
    report = sd_closure_check(1, ChiVector.zero(1), 1)
    assert report.passed
    assert not sd_basis(1, ChiVector.zero(1), 1)


def test_closure_all_unit_vectors_and_rational_chi():
    for D in (2, 3):
        for alpha in range(1, D + 1):
            assert sd_closure_check(D, ChiVector.unit(D, alpha), 2).passed
    half = ChiVector((Fraction(1, 2), Fraction(-3)))
    assert sd_closure_check(2, half, 2).passed


# ----------------------------------------------------------------------
# current extension
# ----------------------------------------------------------------------

def test_current_extend_of_d0_cur_equals_build_cur():
    g = LieStructure.sl2()
    assert current_extend(build_cur(g, 0), 2) == build_cur(g, 2)


def test_current_extend_keeps_bracket():
    extended = current_extend(build_wd(1), 2)
    vs = extended.vs
    expected = LambdaPoly(vs, 1, {0: vs.var("T", 1) + 2 * vs.var("lam", 1)})
    assert extended.entry(0, 0) == expected
    indices_used = {
        index
        for poly in extended.entry(0, 0).coords.values()
        for mono in poly.terms
        for (_, index), _ in mono
    }
    assert indices_used == {1}  # no T2 or lam2 enters the old bracket


def test_current_extend_requires_larger_dimension():
    with pytest.raises(ValueError):
        current_extend(build_wd(2), 2)


def test_current_extend_preserves_axioms():
    builders = [build_wd(1), build_wd(2), build_hd(2),
                build_cur(LieStructure.sl2(), 1)]
    for table in builders:
        extended = current_extend(table, table.D + 1)
        assert skew_check(extended).passed == skew_check(table).passed
        assert jacobi_check(extended).passed == jacobi_check(table).passed
    assert jacobi_check(current_extend(build_hd(2), 3)).passed
