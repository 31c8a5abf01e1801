"""Window bookkeeping and refusal behavior of the mode-series layer."""

from __future__ import annotations

from fractions import Fraction

import pytest

from lambdacone import (
    BiConeSeries,
    ConeSeries,
    Kernel,
    TruncationError,
    VarSpace,
    Window,
    iota_expand,
    iota_kernel,
)
from lambdacone.cone import FULL_WINDOW


def test_window_contains_and_shift():
    w = Window(None, 3)
    assert w.contains(-5, 1)           # deep modes are known
    assert w.contains(1, 1)            # degree 3 boundary
    assert not w.contains(1, 2)        # degree 4 is unknown
    assert w.shift(2, 4) == Window(None, 7)
    assert Window(0, None).contains(0, 9) and not Window(0, None).contains(-1, 0)


def test_window_intersect():
    assert Window(None, 5).intersect(Window(None, 2)) == Window(None, 2)
    assert Window(None, 5).intersect(FULL_WINDOW) == Window(None, 5)
    assert Window(1, None).intersect(Window(None, 4)) == Window(1, 4)


def test_constructor_drops_outside_window():
    series = ConeSeries(2, "z", {(0, 0, 1): Fraction(1), (2, 1, 1): Fraction(1)},
                        Window(None, 2))
    assert series.coeffs == {(0, 0, 1): 1}


def test_mul_refuses_lower_bounded_window():
    series = ConeSeries(2, "z", {(0, 0, 1): Fraction(1)}, Window(0, 4))
    vs = VarSpace(2, ("z",))
    with pytest.raises(TruncationError):
        series.mul_poly(vs.var("z", 1))


def test_residue_and_wick_truncation_errors():
    deep = ConeSeries(2, "z", {}, Window(None, -4))
    with pytest.raises(TruncationError):
        deep.residue()  # mode (-1, 0, 1) has degree -2 > -4
    with pytest.raises(TruncationError):
        deep.wick()


def test_bi_get_respects_box():
    series = iota_expand(1, 1, "zw", 3)
    assert series.get((-1, 0, 1), (0, 0, 1)) == 1
    with pytest.raises(TruncationError):
        series.get((-3, 0, 1), (2, 0, 1))  # w degree 4 beyond window 3


def test_add_intersects_windows():
    a = ConeSeries(1, "z", {(0, 0, 1): Fraction(1)}, Window(None, 4))
    b = ConeSeries(1, "z", {(1, 0, 1): Fraction(2)}, Window(None, 2))
    total = a + b
    assert total.window == Window(None, 2)
    assert total.coeffs == {(0, 0, 1): 1, (1, 0, 1): 2}


def test_iota_kernel_single_variable_poles_exact():
    # w1^2 / z^2 has no (z-w) pole: the expansion is exact, and w1^2 splits
    # into its trace part and the harmonic w1^2 - w2^2.
    series = iota_kernel(Kernel(2, w_exps=(2, 0), z_pole=1), "zw", 4)
    assert series.get((-1, 0, 1), (1, 0, 1)) == Fraction(1, 2)
    assert series.get((-1, 0, 1), (0, 2, 1)) == Fraction(1, 2)
    assert all(w.is_full for w in series.windows)


def test_iota_window_negative_rejected():
    with pytest.raises(ValueError):
        iota_expand(1, 1, "zw", -1)


def test_mul_series_requires_exact_factor():
    windowed = iota_expand(1, 1, "zw", 3)
    with pytest.raises(TruncationError):
        windowed.mul_series(windowed)


def test_tensor_and_scale():
    a = ConeSeries(1, "z", {(-1, 0, 1): Fraction(2)})
    b = ConeSeries(1, "w", {(0, 1, 1): Fraction(3)})
    t = BiConeSeries.tensor(a, b)
    assert t.coeffs == {((-1, 0, 1), (0, 1, 1)): 6}
    assert t.scale(Fraction(1, 2)).coeffs == {((-1, 0, 1), (0, 1, 1)): 3}
