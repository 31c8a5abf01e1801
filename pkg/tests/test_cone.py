"""Harmonic bases, Gauss decomposition, cone series, iota expansions.

h_dim is checked against a brute-force Laplacian kernel rank computed from
scratch (monomial enumeration + exact row reduction), and gauss_decompose
against literal reconstruction sum (z^2)^j p_j with harmonicity asserted
through the polynomial Laplacian.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from lambdacone import (
    ConeSeries,
    Kernel,
    TruncationError,
    VarSpace,
    Window,
    cone_from_poly,
    cone_mul,
    gauss_decompose,
    h_dim,
    harmonic_basis,
    iota_antisym,
    iota_expand,
    iota_kernel,
    residue,
    singular_part,
    wick_extract,
)
from lambdacone.linalg import rref


def _zspace(D):
    return VarSpace(D, ("z",))


def brute_kernel_rank(D, m):
    """Rank of the Laplacian kernel on degree-m monomials, from first principles."""
    vs = _zspace(D)
    monos = vs.monomials_of_degree("z", m)
    images = [vs.from_exps("z", exps).laplacian("z") for exps in monos]
    targets = sorted({mono for img in images for mono in img.terms})
    index = {mono: i for i, mono in enumerate(targets)}
    matrix = [[Fraction(0)] * len(monos) for _ in targets]
    for col, img in enumerate(images):
        for mono, coeff in img.terms.items():
            matrix[index[mono]][col] = coeff
    _, rank = rref(matrix)
    return len(monos) - rank


def test_h_dim_examples():
    assert h_dim(1, 2) == 0 == brute_kernel_rank(1, 2)
    assert h_dim(3, 2) == 5 == brute_kernel_rank(3, 2)
    assert h_dim(2, 0) == 1 == brute_kernel_rank(2, 0)


def test_h_dim_matches_kernel_rank():
    for D in (1, 2, 3, 4):
        for m in range(7):
            basis = harmonic_basis(D, m)
            assert h_dim(D, m) == brute_kernel_rank(D, m) == len(basis)


def test_harmonic_basis_representatives():
    vs = _zspace(2)
    z1, z2 = vs.var("z", 1), vs.var("z", 2)
    assert list(harmonic_basis(2, 1)) == [z1, z2]
    assert list(harmonic_basis(2, 2)) == [z1 * z1 - z2 * z2, z1 * z2]
    one_d = harmonic_basis(1, 0)
    assert list(one_d) == [_zspace(1).one]
    assert list(harmonic_basis(1, 1)) == [_zspace(1).var("z", 1)]
    assert not list(harmonic_basis(1, 2))


def test_harmonic_basis_is_harmonic():
    for D in (1, 2, 3, 4):
        for m in range(7):
            for h in harmonic_basis(D, m):
                assert not h.laplacian("z")
                assert h.total_degree() == m == h.min_degree()


# ----------------------------------------------------------------------
# Gauss decomposition
# ----------------------------------------------------------------------

def test_gauss_z_squared_itself():
    vs = _zspace(2)
    z2 = vs.var("z", 1) ** 2 + vs.var("z", 2) ** 2
    assert gauss_decompose(z2) == [(1, vs.one)]


def test_gauss_single_square():
    vs = _zspace(2)
    p = vs.var("z", 1) ** 2
    expected_h = (vs.var("z", 1) ** 2 - vs.var("z", 2) ** 2) * Fraction(1, 2)
    assert gauss_decompose(p) == [(0, expected_h), (1, vs.const(Fraction(1, 2)))]


def test_gauss_harmonic_is_fixed():
    vs = _zspace(3)
    p = vs.var("z", 1) * vs.var("z", 2)
    assert gauss_decompose(p) == [(0, p)]


def _random_zpoly(rng, D, degmax=6):
    vs = _zspace(D)
    poly = vs.zero
    for _ in range(rng.randint(1, 5)):
        exps = [0] * D
        for _ in range(rng.randint(0, degmax)):
            exps[rng.randrange(D)] += 1
        poly = poly + vs.from_exps("z", exps, rng.randint(-9, 9))
    return poly


def test_gauss_roundtrip_random():
    rng = random.Random(2024)
    for _ in range(40):
        D = rng.randint(1, 4)
        p = _random_zpoly(rng, D)
        vs = p.vs
        z2 = sum((vs.var("z", a) ** 2 for a in range(1, D + 1)), vs.zero)
        rebuilt = vs.zero
        for j, pj in gauss_decompose(p):
            assert not pj.laplacian("z")
            rebuilt = rebuilt + (z2 ** j) * pj
        assert rebuilt == p


# ----------------------------------------------------------------------
# cone series basics
# ----------------------------------------------------------------------

def test_cone_from_poly_examples():
    vs = _zspace(2)
    assert cone_from_poly(vs.one, "z").coeffs == {(0, 0, 1): 1}
    assert cone_from_poly(vs.var("z", 1)).coeffs == {(0, 1, 1): 1}
    series = cone_from_poly(vs.var("z", 1) ** 2)
    assert series.coeffs == {(1, 0, 1): Fraction(1, 2), (0, 2, 1): Fraction(1, 2)}


def test_cone_mul_examples():
    vs = _zspace(2)
    start = ConeSeries(2, "z", {(-1, 0, 1): Fraction(1)})
    assert cone_mul(start, vs.one, 1).coeffs == {(0, 0, 1): 1}
    unit = ConeSeries(2, "z", {(0, 0, 1): Fraction(1)})
    assert cone_mul(unit, vs.var("z", 1)).coeffs == {(0, 1, 1): 1}
    lin = ConeSeries(2, "z", {(0, 1, 1): Fraction(1)})
    assert cone_mul(lin, vs.var("z", 1)).coeffs == {
        (1, 0, 1): Fraction(1, 2),
        (0, 2, 1): Fraction(1, 2),
    }


def test_cone_mul_shift_roundtrip():
    series = ConeSeries(3, "z", {(-2, 1, 2): Fraction(5), (0, 0, 1): Fraction(-3)})
    assert series.mul_x2(1).mul_x2(-1).coeffs == series.coeffs
    vs = _zspace(3)
    assert cone_mul(cone_mul(series, vs.one, 1), vs.one, -1).coeffs == series.coeffs


def test_singular_part():
    series = ConeSeries(2, "z", {(-1, 0, 1): Fraction(1), (0, 0, 1): Fraction(2)})
    sp = singular_part(series)
    assert sp.coeffs == {(-1, 0, 1): 1}
    assert singular_part(sp).coeffs == sp.coeffs
    vs = _zspace(2)
    assert not singular_part(cone_from_poly(vs.var("z", 1) ** 3))


def test_residue_and_wick():
    assert residue(ConeSeries(2, "z", {(-1, 0, 1): Fraction(1)})) == 1
    vs = _zspace(2)
    assert residue(cone_from_poly(vs.var("z", 2) ** 2)) == 0
    assert residue(ConeSeries(4, "z", {(-2, 0, 1): Fraction(7)})) == 7
    with pytest.raises(ValueError):
        residue(ConeSeries(3, "z", {}))
    assert wick_extract(cone_from_poly(vs.one, "z")) == 1
    assert wick_extract(cone_from_poly(vs.var("z", 1))) == 0


def test_window_refusal():
    series = ConeSeries(2, "z", {(0, 0, 1): Fraction(1)}, Window(None, 2))
    assert series.get((0, 0, 1)) == 1
    assert series.get((-3, 1, 1)) == 0  # deep modes are known zeros
    with pytest.raises(TruncationError):
        series.get((1, 1, 1))  # degree 3 > degmax 2: unknown


def test_d1_laurent_dictionary():
    vs = _zspace(1)
    for k in range(5):
        series = cone_from_poly(vs.var("z", 1) ** k if k else vs.one, "z")
        ((n, m, sigma),) = series.coeffs
        assert 2 * n + m == k and sigma == 1
    # wick corresponds to the Laurent constant term
    p = vs.const(5) + vs.var("z", 1) ** 2
    assert wick_extract(cone_from_poly(p, "z")) == 5


# ----------------------------------------------------------------------
# iota expansions
# ----------------------------------------------------------------------

def test_iota_polynomial_path_is_identity():
    for D in (1, 2):
        series = iota_expand(D, 0, "zw", 4)
        assert series.coeffs == {((0, 0, 1), (0, 0, 1)): 1}
        assert all(w.is_full for w in series.windows)


def test_iota_d1_geometric_law():
    series = iota_expand(1, 1, "zw", 6)
    for j in range(7):
        m_w, n_w = j % 2, j // 2
        ell_z = -j - 2
        m_z, n_z = ell_z % 2, (ell_z - ell_z % 2) // 2
        assert series.get((n_z, m_z, 1), (n_w, m_w, 1)) == j + 1
    # mirrored side
    mirrored = iota_expand(1, 1, "wz", 6)
    for j in range(7):
        m, n = j % 2, j // 2
        ell = -j - 2
        assert mirrored.get((n, m, 1), ((ell - ell % 2) // 2, ell % 2, 1)) == j + 1


def test_iota_leading_term_any_dimension():
    for D in (1, 2, 3):
        series = iota_expand(D, 1, "zw", 3)
        assert series.get((-1, 0, 1), (0, 0, 1)) == 1


def test_iota_antisym_vanishes_without_zw_pole():
    cases = []
    for D in (1, 2):
        cases.append(Kernel(D))
        cases.append(Kernel(D, z_pole=1))
        cases.append(Kernel(D, w_pole=2))
        exps = tuple([1] + [0] * (D - 1))
        cases.append(Kernel(D, z_exps=exps))
        cases.append(Kernel(D, z_exps=exps, w_exps=exps, z_pole=1, w_pole=1))
    for F in cases:
        for window in (0, 3, 6):
            assert not iota_antisym(F, window)


def test_iota_antisym_nonzero_for_zw_pole():
    diff = iota_antisym(Kernel(1, zw_pole=1), 6)
    assert diff
    # delta-like: the two one-sided expansions contribute with opposite roles
    assert diff.get((-1, 0, 1), (0, 0, 1)) == 1
    assert diff.get((0, 0, 1), (-1, 0, 1)) == -1


def test_iota_times_kernel_polynomial_collapses():
    # Multiplying the expansion of ((z-w)^2)^(-k) back by (z-w)^2 must give
    # the expansion of ((z-w)^2)^(-(k-1)) on the surviving window; for k = 1
    # that is the constant 1.  This pins iota_pole and the bi-variable
    # re-decomposition against each other.
    for D in (1, 2, 3):
        vs = VarSpace(D, ("z", "w"))
        kernel_poly = sum(
            ((vs.var("z", a) - vs.var("w", a)) ** 2 for a in range(1, D + 1)), vs.zero
        )
        for k in (1, 2):
            product = iota_expand(D, k, "zw", 5).mul_poly(kernel_poly)
            target = iota_expand(D, k - 1, "zw", 5)
            keys = set(product.coeffs) | {
                key for key in target.coeffs
                if product.windows[1].contains(key[1][0], key[1][1])
            }
            for key in keys:
                assert product.coeffs.get(key, Fraction(0)) == target.coeffs.get(
                    key, Fraction(0)
                )


def test_kernel_polynomial_annihilates_antisymmetrization():
    # The cone-mode form of (z - w) * delta(z - w) = 0.
    for D in (1, 2):
        vs = VarSpace(D, ("z", "w"))
        kernel_poly = sum(
            ((vs.var("z", a) - vs.var("w", a)) ** 2 for a in range(1, D + 1)), vs.zero
        )
        diff = iota_antisym(Kernel(D, zw_pole=1), 6)
        assert diff
        assert not diff.mul_poly(kernel_poly)


def test_iota_kernel_with_monomial_factor():
    # z1/(z-w)^2 in D=1 must shift the plain expansion by one z-degree.
    plain = iota_expand(1, 1, "zw", 5)
    shifted = iota_kernel(Kernel(1, z_exps=(1,), zw_pole=1), "zw", 5)
    for ((mz, mw), coeff) in plain.items():
        ell = 2 * mz[0] + mz[1] + 1
        target = ((ell - ell % 2) // 2, ell % 2, 1)
        if shifted.windows[1].contains(mw[0], mw[1]):
            assert shifted.get(target, mw) == coeff
