"""Light-cone mode calculus in D dimensions.

A field coefficient is indexed by a *cone mode* (n, m, sigma) and stands for
(x^2)^n h_{m,sigma}(x), where x^2 = x_1^2 + ... + x_D^2 and {h_{m,sigma}} is
the canonical basis of harmonic homogeneous polynomials of degree m.  The
canonical basis is the reduced echelon form of the Laplacian kernel with
graded-lex pivots, so representatives are deterministic and h_{0,1} = 1.

Series over these modes carry an explicit truncation window; coefficients
outside the window are unknown, not zero, and every operation computes the
exact window it can still answer for.  Expansion of rational kernels
((z-w)^2)^{-k} in the |w| << |z| region (iota) is exact binomial expansion,
re-decomposed into bi-cone modes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Mapping, Optional

from .errors import TruncationError, WorkspaceError
from .linalg import invert, kernel_basis
from .rings import Poly, VarSpace

Mode = tuple  # (n: int, m: int >= 0, sigma: int >= 1)


# ----------------------------------------------------------------------
# harmonic polynomials and the Gauss decomposition
# ----------------------------------------------------------------------

def h_dim(D: int, m: int) -> int:
    """Dimension of the space of harmonic homogeneous polynomials of degree m."""
    if D < 1:
        raise ValueError("D must be >= 1")
    if m < 0:
        raise ValueError("m must be >= 0")
    total = comb(m + D - 1, D - 1)
    if m >= 2:
        total -= comb(m + D - 3, D - 1)
    return total


@lru_cache(maxsize=None)
def _monomials(D: int, m: int) -> tuple:
    """Dense exponent tuples of degree m, ordered graded-lex (z1-major)."""
    out = []
    for combo in combinations_with_replacement(range(D), m):
        exps = [0] * D
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return tuple(out)


def _raw_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return {k: v for k, v in out.items() if v}


def _raw_x2(D: int) -> dict:
    out = {}
    for alpha in range(D):
        exps = [0] * D
        exps[alpha] = 2
        out[tuple(exps)] = Fraction(1)
    return out


@lru_cache(maxsize=None)
def _harmonic_raw(D: int, m: int) -> tuple:
    """Canonical harmonic basis at degree m, as raw {exps: Fraction} dicts."""
    monos = _monomials(D, m)
    if m < 2:
        return tuple({e: Fraction(1)} for e in monos)
    target = _monomials(D, m - 2)
    index = {e: i for i, e in enumerate(target)}
    matrix = [[Fraction(0)] * len(monos) for _ in target]
    for col, exps in enumerate(monos):
        for alpha in range(D):
            e = exps[alpha]
            if e >= 2:
                low = list(exps)
                low[alpha] -= 2
                matrix[index[tuple(low)]][col] += e * (e - 1)
    basis = []
    for vector in kernel_basis(matrix, len(monos)):
        basis.append({monos[i]: c for i, c in enumerate(vector) if c})
    assert len(basis) == h_dim(D, m)
    return tuple(basis)


@lru_cache(maxsize=None)
def _gauss_solver(D: int, m: int) -> tuple:
    """Inverse of the map  (h_j)_j  ->  sum_j (x^2)^j h_j  at degree m.

    Returns (columns, inverse) where columns is the ordered list of
    (j, m - 2j, sigma) targets and inverse maps degree-m monomial coordinates
    to decomposition coefficients.
    """
    monos = _monomials(D, m)
    index = {e: i for i, e in enumerate(monos)}
    x2 = _raw_x2(D)
    columns = []
    vectors = []
    for j in range(m // 2 + 1):
        mm = m - 2 * j
        power = {(0,) * D: Fraction(1)}
        for _ in range(j):
            power = _raw_mul(power, x2)
        for sigma, h in enumerate(_harmonic_raw(D, mm), start=1):
            columns.append((j, mm, sigma))
            product = _raw_mul(power, h)
            vec = [Fraction(0)] * len(monos)
            for exps, c in product.items():
                vec[index[exps]] = c
            vectors.append(vec)
    assert len(columns) == len(monos), "Gauss decomposition matrix is not square"
    matrix = [[vectors[c][r] for c in range(len(columns))] for r in range(len(monos))]
    return columns, invert(matrix)


def _decompose_raw(D: int, m: int, raw: dict) -> dict:
    """Decompose a degree-m raw polynomial into {(j, m', sigma): Fraction}."""
    if not raw:
        return {}
    monos = _monomials(D, m)
    index = {e: i for i, e in enumerate(monos)}
    vec = [Fraction(0)] * len(monos)
    for exps, c in raw.items():
        vec[index[exps]] = c
    columns, inverse = _gauss_solver(D, m)
    out = {}
    for row, column in enumerate(columns):
        value = sum((inverse[row][i] * vec[i] for i in range(len(vec))), Fraction(0))
        if value:
            out[column] = value
    return out


@lru_cache(maxsize=None)
def _times_mono(D: int, m: int, sigma: int, exps: tuple) -> tuple:
    """h_{m,sigma} * x^exps decomposed: tuple of ((dj, m', sigma'), Fraction)."""
    h = _harmonic_raw(D, m)[sigma - 1]
    product = _raw_mul(h, {exps: Fraction(1)})
    decomp = _decompose_raw(D, m + sum(exps), product)
    return tuple(decomp.items())


@lru_cache(maxsize=None)
def _times_harm(D: int, m1: int, s1: int, m2: int, s2: int) -> tuple:
    """h_{m1,s1} * h_{m2,s2} decomposed."""
    a = _harmonic_raw(D, m1)[s1 - 1]
    b = _harmonic_raw(D, m2)[s2 - 1]
    decomp = _decompose_raw(D, m1 + m2, _raw_mul(a, b))
    return tuple(decomp.items())


@lru_cache(maxsize=None)
def _diff_parts(D: int, m: int, sigma: int, alpha: int) -> tuple:
    """Data for d/dx_alpha applied to (x^2)^n h_{m,sigma}.

    Returns (x_alpha_part, dh_part): the decomposition of x_alpha * h (to be
    scaled by 2n and attached at level n - 1) and the harmonic coordinates of
    dh/dx_alpha (attached at level n).
    """
    exps = [0] * D
    exps[alpha - 1] = 1
    x_part = _times_mono(D, m, sigma, tuple(exps))
    h = _harmonic_raw(D, m)[sigma - 1]
    dh: dict = {}
    for e, c in h.items():
        if e[alpha - 1]:
            low = list(e)
            low[alpha - 1] -= 1
            dh[tuple(low)] = dh.get(tuple(low), Fraction(0)) + c * e[alpha - 1]
    dh = {k: v for k, v in dh.items() if v}
    dh_part = tuple(_decompose_raw(D, m - 1, dh).items()) if dh else ()
    return x_part, dh_part


def _z_space(D: int) -> VarSpace:
    return VarSpace(D, ("z",))


@dataclass(frozen=True)
class HarmonicBasis:
    """The canonical harmonic basis at one degree, as polynomials in z."""

    D: int
    m: int
    polys: tuple

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __getitem__(self, i):
        return self.polys[i]


def harmonic_basis(D: int, m: int) -> HarmonicBasis:
    vs = _z_space(D)
    polys = []
    for raw in _harmonic_raw(D, m):
        poly = vs.zero
        for exps, c in raw.items():
            poly = poly + vs.from_exps("z", exps, c)
        polys.append(poly)
    return HarmonicBasis(D, m, tuple(polys))


def basis_poly_in(D: int, m: int, sigma: int, vs: VarSpace, family: str) -> Poly:
    """h_{m,sigma} written in ``family`` variables of an arbitrary workspace."""
    poly = vs.zero
    for exps, c in _harmonic_raw(D, m)[sigma - 1].items():
        poly = poly + vs.from_exps(family, exps, c)
    return poly


def _poly_raw_by_degree(p: Poly, family: str) -> dict:
    """Split a single-family polynomial into {degree: raw dict}."""
    buckets: dict = {}
    dense = p.dense_exps(family)
    for mono, coeff in p.terms.items():
        exps = dense[mono]
        buckets.setdefault(sum(exps), {})[exps] = coeff
    return buckets


def _single_family(p: Poly, default: str = "z") -> str:
    used = p.families_used()
    if not used:
        return default
    if len(used) > 1:
        raise WorkspaceError(f"expected a single-family polynomial, got {sorted(used)}")
    return used.pop()


def gauss_decompose(p: Poly, family: Optional[str] = None) -> list:
    """Unique expression p = sum_j (x^2)^j p_j with every p_j harmonic.

    Returns [(j, p_j)] with nonzero p_j, sorted by j; exact reconstruction.
    """
    family = family or _single_family(p)
    D = p.vs.D
    levels: dict = {}
    for degree, raw in _poly_raw_by_degree(p, family).items():
        for (j, mm, sigma), value in _decompose_raw(D, degree, raw).items():
            level = levels.setdefault(j, {})
            for exps, c in _harmonic_raw(D, mm)[sigma - 1].items():
                level[exps] = level.get(exps, Fraction(0)) + value * c
    out = []
    for j in sorted(levels):
        poly = p.vs.zero
        for exps, c in levels[j].items():
            if c:
                poly = poly + p.vs.from_exps(family, exps, c)
        if poly:
            out.append((j, poly))
    return out


# ----------------------------------------------------------------------
# truncation windows
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Window:
    """The region of mode space where a series is exactly known.

    A mode (n, m, sigma) is inside iff n >= n_min and 2n + m <= degmax, with
    None meaning unbounded.  Everything *below* degmax is known; truncation
    cuts off high total degree, exactly like a Taylor remainder.
    """

    n_min: Optional[int] = None
    degmax: Optional[int] = None

    def contains(self, n: int, m: int) -> bool:
        if self.n_min is not None and n < self.n_min:
            return False
        if self.degmax is not None and 2 * n + m > self.degmax:
            return False
        return True

    def intersect(self, other: "Window") -> "Window":
        n_min = self.n_min if other.n_min is None else (
            other.n_min if self.n_min is None else max(self.n_min, other.n_min)
        )
        degmax = self.degmax if other.degmax is None else (
            other.degmax if self.degmax is None else min(self.degmax, other.degmax)
        )
        return Window(n_min, degmax)

    def shift(self, dn: int, ddeg: int) -> "Window":
        return Window(
            None if self.n_min is None else self.n_min + dn,
            None if self.degmax is None else self.degmax + ddeg,
        )

    @property
    def is_full(self) -> bool:
        return self.n_min is None and self.degmax is None


FULL_WINDOW = Window()


def _validate_mode(D: int, mode: Mode) -> None:
    n, m, sigma = mode
    if m < 0:
        raise ValueError(f"mode degree m must be >= 0, got {m}")
    if not 1 <= sigma <= h_dim(D, m):
        raise ValueError(f"sigma {sigma} out of range for (D={D}, m={m})")


def _mul_window(window: Window, k: int, p: Poly, family: str) -> Window:
    """Window of a series multiplied by (x^2)^k * p."""
    if window.n_min is not None:
        raise TruncationError(
            "cannot multiply a series whose window is bounded below in n"
        )
    if window.degmax is None:
        return FULL_WINDOW
    min_deg = min(
        (sum(e for (fam, _), e in mono if fam == family) for mono in p.terms),
        default=0,
    )
    return Window(None, window.degmax + 2 * k + min_deg)


# ----------------------------------------------------------------------
# one-variable cone series
# ----------------------------------------------------------------------

class ConeSeries:
    """Windowed series sum a_{n,m,sigma} (x^2)^n h_{m,sigma}(x).

    Coefficients are Fractions or module elements; anything with +, scalar *
    and truthiness works.
    """

    __slots__ = ("D", "var", "coeffs", "window")

    def __init__(self, D: int, var: str, coeffs: Mapping, window: Window = FULL_WINDOW):
        clean = {}
        for mode, coeff in coeffs.items():
            _validate_mode(D, mode)
            if coeff and window.contains(mode[0], mode[1]):
                clean[mode] = coeff
        self.D = D
        self.var = var
        self.coeffs = clean
        self.window = window

    @classmethod
    def zero(cls, D: int, var: str = "z", window: Window = FULL_WINDOW) -> "ConeSeries":
        return cls(D, var, {}, window)

    def _like(self, coeffs, window) -> "ConeSeries":
        return ConeSeries(self.D, self.var, coeffs, window)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, ConeSeries):
            return NotImplemented
        return (
            self.D == other.D
            and self.var == other.var
            and self.coeffs == other.coeffs
            and self.window == other.window
        )

    def items(self) -> list:
        return sorted(self.coeffs.items(), key=lambda kv: kv[0])

    def get(self, mode: Mode):
        """Coefficient at a mode; TruncationError outside the window."""
        _validate_mode(self.D, mode)
        if not self.window.contains(mode[0], mode[1]):
            raise TruncationError(f"mode {mode} lies outside the window {self.window}")
        return self.coeffs.get(mode, Fraction(0))

    def __add__(self, other):
        if self.D != other.D or self.var != other.var:
            raise WorkspaceError("series mismatch")
        window = self.window.intersect(other.window)
        out = dict(self.coeffs)
        for mode, coeff in other.coeffs.items():
            total = out.get(mode)
            out[mode] = coeff if total is None else total + coeff
        return self._like(out, window)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor) -> "ConeSeries":
        if isinstance(factor, int):
            factor = Fraction(factor)
        return self._like(
            {mode: coeff * factor for mode, coeff in self.coeffs.items()}, self.window
        )

    def map_coeffs(self, fn) -> "ConeSeries":
        return self._like({mode: fn(coeff) for mode, coeff in self.coeffs.items()}, self.window)

    def mul_x2(self, k: int) -> "ConeSeries":
        """Multiply by (x^2)^k: a pure mode shift."""
        return self._like(
            {(n + k, m, s): c for (n, m, s), c in self.coeffs.items()},
            self.window.shift(k, 2 * k),
        )

    def mul_poly(self, p: Poly, k: int = 0) -> "ConeSeries":
        """Multiply by (x^2)^k * p, re-decomposing into cone modes."""
        family = _single_family(p, self.var)
        window = _mul_window(self.window, k, p, family)
        out: dict = {}
        dense = p.dense_exps(family)
        for mono, pc in p.terms.items():
            exps = dense[mono]
            for (n, m, s), coeff in self.coeffs.items():
                for (dj, m2, s2), q in _times_mono(self.D, m, s, exps):
                    mode = (n + k + dj, m2, s2)
                    value = coeff * (pc * q)
                    total = out.get(mode)
                    out[mode] = value if total is None else total + value
        return self._like(out, window)

    def diff(self, alpha: int) -> "ConeSeries":
        """Formal d/dx_alpha, with Gauss re-decomposition of x_alpha * h."""
        out: dict = {}

        def bump(mode, value):
            if value:
                total = out.get(mode)
                out[mode] = value if total is None else total + value

        for (n, m, s), coeff in self.coeffs.items():
            x_part, dh_part = _diff_parts(self.D, m, s, alpha)
            if n:
                for (dj, m2, s2), q in x_part:
                    bump((n - 1 + dj, m2, s2), coeff * (2 * n * q))
            for (dj, m2, s2), q in dh_part:
                bump((n + dj, m2, s2), coeff * q)
        window = Window(
            None if self.window.n_min is None else self.window.n_min - 1,
            None if self.window.degmax is None else self.window.degmax - 1,
        )
        return self._like(out, window)

    def singular_part(self) -> "ConeSeries":
        return self._like(
            {mode: c for mode, c in self.coeffs.items() if mode[0] < 0}, self.window
        )

    def regular_part(self) -> "ConeSeries":
        return self._like(
            {mode: c for mode, c in self.coeffs.items() if mode[0] >= 0}, self.window
        )

    def parity_flip(self) -> "ConeSeries":
        """x -> -x: each mode picks up (-1)^m."""
        return self._like(
            {mode: (c if mode[1] % 2 == 0 else c * Fraction(-1)) for mode, c in self.coeffs.items()},
            self.window,
        )

    def restrict(self, window: Window) -> "ConeSeries":
        return self._like(self.coeffs, self.window.intersect(window))

    def pole_order(self) -> int:
        """Least N with (x^2)^N * series regular: max(0, -min n)."""
        if not self.coeffs:
            return 0
        return max(0, -min(n for (n, _, _) in self.coeffs))

    def min_hom(self) -> int:
        return min((2 * n + m for (n, m, _) in self.coeffs), default=0)

    def residue(self):
        """Coefficient at (-D/2, 0, 1); defined for even D."""
        if self.D % 2:
            raise ValueError("residue requires even D")
        return self.get((-self.D // 2, 0, 1))

    def wick(self):
        """Coefficient at (0, 0, 1): the regular-product extraction."""
        return self.get((0, 0, 1))

    def __repr__(self):
        inner = ", ".join(f"{mode}: {c}" for mode, c in self.items())
        return f"ConeSeries({{{inner}}}, window={self.window})"


def cone_from_poly(p: Poly, var: Optional[str] = None) -> ConeSeries:
    """Exact cone-mode expansion of a polynomial (all modes known)."""
    family = var or _single_family(p)
    D = p.vs.D
    coeffs: dict = {}
    for degree, raw in _poly_raw_by_degree(p, family).items():
        for (j, mm, sigma), value in _decompose_raw(D, degree, raw).items():
            mode = (j, mm, sigma)
            coeffs[mode] = coeffs.get(mode, Fraction(0)) + value
    return ConeSeries(D, family, coeffs, FULL_WINDOW)


def cone_mul(series: ConeSeries, p: Poly, k: int = 0) -> ConeSeries:
    return series.mul_poly(p, k)


def singular_part(series: ConeSeries) -> ConeSeries:
    return series.singular_part()


def residue(series: ConeSeries):
    return series.residue()


def wick_extract(series: ConeSeries):
    return series.wick()


# ----------------------------------------------------------------------
# two-variable cone series
# ----------------------------------------------------------------------

class BiConeSeries:
    """Windowed series over pairs of cone modes in two variables."""

    __slots__ = ("D", "vars", "coeffs", "windows")

    def __init__(self, D: int, vars: tuple, coeffs: Mapping, windows: tuple = (FULL_WINDOW, FULL_WINDOW)):
        clean = {}
        for (m1, m2), coeff in coeffs.items():
            _validate_mode(D, m1)
            _validate_mode(D, m2)
            if coeff and windows[0].contains(m1[0], m1[1]) and windows[1].contains(m2[0], m2[1]):
                clean[(m1, m2)] = coeff
        self.D = D
        self.vars = tuple(vars)
        self.coeffs = clean
        self.windows = tuple(windows)

    @classmethod
    def zero(cls, D: int, vars: tuple = ("z", "w"), windows=(FULL_WINDOW, FULL_WINDOW)):
        return cls(D, vars, {}, windows)

    @classmethod
    def tensor(cls, a: ConeSeries, b: ConeSeries) -> "BiConeSeries":
        coeffs = {}
        for ma, ca in a.coeffs.items():
            for mb, cb in b.coeffs.items():
                coeffs[(ma, mb)] = ca * cb
        return cls(a.D, (a.var, b.var), coeffs, (a.window, b.window))

    def _like(self, coeffs, windows) -> "BiConeSeries":
        return BiConeSeries(self.D, self.vars, coeffs, windows)

    def __bool__(self):
        return bool(self.coeffs)

    def items(self) -> list:
        return sorted(self.coeffs.items(), key=lambda kv: kv[0])

    def get(self, mode1: Mode, mode2: Mode):
        _validate_mode(self.D, mode1)
        _validate_mode(self.D, mode2)
        if not (
            self.windows[0].contains(mode1[0], mode1[1])
            and self.windows[1].contains(mode2[0], mode2[1])
        ):
            raise TruncationError(f"mode {(mode1, mode2)} outside windows {self.windows}")
        return self.coeffs.get((mode1, mode2), Fraction(0))

    def __add__(self, other):
        if self.D != other.D or self.vars != other.vars:
            raise WorkspaceError("series mismatch")
        windows = (
            self.windows[0].intersect(other.windows[0]),
            self.windows[1].intersect(other.windows[1]),
        )
        out = dict(self.coeffs)
        for key, coeff in other.coeffs.items():
            total = out.get(key)
            out[key] = coeff if total is None else total + coeff
        return self._like(out, windows)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor) -> "BiConeSeries":
        if isinstance(factor, int):
            factor = Fraction(factor)
        return self._like(
            {key: coeff * factor for key, coeff in self.coeffs.items()}, self.windows
        )

    def map_coeffs(self, fn) -> "BiConeSeries":
        return self._like({key: fn(c) for key, c in self.coeffs.items()}, self.windows)

    def mul_x2(self, slot: int, k: int) -> "BiConeSeries":
        out = {}
        for (m1, m2), c in self.coeffs.items():
            modes = [m1, m2]
            n, m, s = modes[slot]
            modes[slot] = (n + k, m, s)
            out[(modes[0], modes[1])] = c
        windows = list(self.windows)
        windows[slot] = windows[slot].shift(k, 2 * k)
        return self._like(out, tuple(windows))

    def mul_poly(self, p: Poly) -> "BiConeSeries":
        """Multiply by a polynomial in the two variable families."""
        fam1, fam2 = self.vars
        terms = []
        min_deg = [None, None]
        for mono, pc in p.terms.items():
            e1 = [0] * self.D
            e2 = [0] * self.D
            for (fam, index), e in mono:
                if fam == fam1:
                    e1[index - 1] = e
                elif fam == fam2:
                    e2[index - 1] = e
                else:
                    raise WorkspaceError(f"unexpected family {fam!r} in bi-variable product")
            terms.append((tuple(e1), tuple(e2), pc))
            for slot, exps in ((0, e1), (1, e2)):
                d = sum(exps)
                if min_deg[slot] is None or d < min_deg[slot]:
                    min_deg[slot] = d
        windows = []
        for slot in range(2):
            w = self.windows[slot]
            if w.n_min is not None:
                raise TruncationError("cannot multiply: window bounded below in n")
            windows.append(
                FULL_WINDOW if w.degmax is None else Window(None, w.degmax + (min_deg[slot] or 0))
            )
        out: dict = {}
        for e1, e2, pc in terms:
            for ((n1, mm1, s1), (n2, mm2, s2)), coeff in self.coeffs.items():
                for (dj1, m1b, s1b), q1 in _times_mono(self.D, mm1, s1, e1):
                    for (dj2, m2b, s2b), q2 in _times_mono(self.D, mm2, s2, e2):
                        key = ((n1 + dj1, m1b, s1b), (n2 + dj2, m2b, s2b))
                        value = coeff * (pc * q1 * q2)
                        total = out.get(key)
                        out[key] = value if total is None else total + value
        return self._like(out, tuple(windows))

    def mul_series(self, other: "BiConeSeries") -> "BiConeSeries":
        """Product with an exactly-known (full-window) finite series."""
        if not all(w.is_full for w in other.windows):
            raise TruncationError("mul_series needs an exactly-known right factor")
        windows = []
        for slot in range(2):
            w = self.windows[slot]
            if w.degmax is None:
                windows.append(FULL_WINDOW)
                continue
            if w.n_min is not None:
                raise TruncationError("cannot multiply: window bounded below in n")
            min_hom = min(
                (2 * key[slot][0] + key[slot][1] for key in other.coeffs), default=0
            )
            windows.append(Window(None, w.degmax + min_hom))
        out: dict = {}
        for (a1, a2), ca in self.coeffs.items():
            for (b1, b2), cb in other.coeffs.items():
                c = ca * cb
                for (dj1, m1b, s1b), q1 in _times_harm(self.D, a1[1], a1[2], b1[1], b1[2]):
                    for (dj2, m2b, s2b), q2 in _times_harm(self.D, a2[1], a2[2], b2[1], b2[2]):
                        key = (
                            (a1[0] + b1[0] + dj1, m1b, s1b),
                            (a2[0] + b2[0] + dj2, m2b, s2b),
                        )
                        value = c * (q1 * q2)
                        total = out.get(key)
                        out[key] = value if total is None else total + value
        return self._like(out, tuple(windows))

    def singular_joint(self) -> "BiConeSeries":
        return self._like(
            {key: c for key, c in self.coeffs.items() if key[0][0] < 0 and key[1][0] < 0},
            self.windows,
        )

    def restrict(self, windows: tuple) -> "BiConeSeries":
        return self._like(
            self.coeffs,
            (self.windows[0].intersect(windows[0]), self.windows[1].intersect(windows[1])),
        )

    def __repr__(self):
        inner = ", ".join(f"{key}: {c}" for key, c in self.items())
        return f"BiConeSeries({{{inner}}}, windows={self.windows})"


# ----------------------------------------------------------------------
# iota expansions of rational kernels
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Kernel:
    """A monomial in C[z, w, 1/z^2, 1/w^2, 1/(z-w)^2].

    coeff * z^z_exps * w^w_exps * (z^2)^(-z_pole) * (w^2)^(-w_pole)
          * ((z-w)^2)^(-zw_pole)
    """

    D: int
    coeff: Fraction = Fraction(1)
    z_exps: tuple = ()
    w_exps: tuple = ()
    z_pole: int = 0
    w_pole: int = 0
    zw_pole: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "z_exps", tuple(self.z_exps) or (0,) * self.D)
        object.__setattr__(self, "w_exps", tuple(self.w_exps) or (0,) * self.D)
        if len(self.z_exps) != self.D or len(self.w_exps) != self.D:
            raise ValueError("exponent tuples must have length D")
        if self.z_pole < 0 or self.w_pole < 0 or self.zw_pole < 0:
            raise ValueError("pole orders must be >= 0")

    @classmethod
    def one(cls, D: int) -> "Kernel":
        return cls(D)


def _neg_binom(k: int, t: int) -> Fraction:
    """binom(-k, t) = (-1)^t binom(k + t - 1, t)."""
    value = Fraction(comb(k + t - 1, t))
    return -value if t % 2 else value


@lru_cache(maxsize=None)
def iota_pole(D: int, k: int, side: str, depth: int) -> BiConeSeries:
    """Expansion of ((z-w)^2)^(-k) with the ``side``-second variable small.

    For side "zw" the result is exact for every bi-mode whose w total degree
    is at most ``depth`` (and for all z modes there); symmetrically for "wz".
    Series are immutable, so the cached instance is shared.
    """
    if side not in ("zw", "wz"):
        raise ValueError("side must be 'zw' or 'wz'")
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        one = ((0, 0, 1), (0, 0, 1))
        return BiConeSeries(D, ("z", "w"), {one: Fraction(1)})
    small = 1 if side == "zw" else 0
    # cross = -2 z.w, square = small-variable^2; expansion of
    # (big^2)^(-k) * (1 + (small^2 - 2 z.w)/big^2)^(-k).
    coeffs: dict = {}
    base: dict = {}
    for alpha in range(D):
        sq = [[0] * D, [0] * D]
        sq[small][alpha] = 2
        key = (tuple(sq[0]), tuple(sq[1]))
        base[key] = base.get(key, Fraction(0)) + 1
        cross = [[0] * D, [0] * D]
        cross[0][alpha] = 1
        cross[1][alpha] = 1
        key = (tuple(cross[0]), tuple(cross[1]))
        base[key] = base.get(key, Fraction(0)) - 2
    power: dict = {((0,) * D, (0,) * D): Fraction(1)}
    for t in range(depth + 1):
        c_t = _neg_binom(k, t)
        for (ez, ew), c in power.items():
            exps = (ez, ew)
            if sum(exps[small]) > depth:
                continue
            big_exps = exps[1 - small]
            for (j1, m1, s1), q1 in _times_mono(D, 0, 1, big_exps):
                for (j2, m2, s2), q2 in _times_mono(D, 0, 1, exps[small]):
                    big_mode = (-k - t + j1, m1, s1)
                    small_mode = (j2, m2, s2)
                    pair = (big_mode, small_mode) if small == 1 else (small_mode, big_mode)
                    value = c_t * c * q1 * q2
                    coeffs[pair] = coeffs.get(pair, Fraction(0)) + value
        if t < depth:
            new: dict = {}
            for (ez, ew), c in power.items():
                for (bz, bw), bc in base.items():
                    key = (
                        tuple(x + y for x, y in zip(ez, bz)),
                        tuple(x + y for x, y in zip(ew, bw)),
                    )
                    new[key] = new.get(key, Fraction(0)) + c * bc
            power = new
    windows = [FULL_WINDOW, FULL_WINDOW]
    windows[small] = Window(None, depth)
    return BiConeSeries(D, ("z", "w"), coeffs, tuple(windows))


def iota_kernel(F: Kernel, side: str, depth: int) -> BiConeSeries:
    """iota expansion of a full kernel monomial, exact to ``depth`` in the
    small variable's total degree."""
    D = F.D
    small = 1 if side == "zw" else 0
    mono_deg = (sum(F.z_exps), sum(F.w_exps))[small]
    pole = (F.z_pole, F.w_pole)[small]
    pole_depth = max(0, depth - mono_deg + 2 * pole)
    series = iota_pole(D, F.zw_pole, side, pole_depth)
    vs = VarSpace(D, ("z", "w"))
    mono = vs.from_exps("z", F.z_exps) * vs.from_exps("w", F.w_exps)
    if mono != vs.one:
        series = series.mul_poly(mono)
    if F.z_pole:
        series = series.mul_x2(0, -F.z_pole)
    if F.w_pole:
        series = series.mul_x2(1, -F.w_pole)
    if F.coeff != 1:
        series = series.scale(F.coeff)
    return series


def iota_expand(D: int, k: int, side: str, window: int) -> BiConeSeries:
    """Expansion of ((z-w)^2)^(-k); the k = 0 path is the identity embedding."""
    if window < 0:
        raise ValueError("window must be >= 0")
    return iota_pole(D, k, side, window)


def iota_antisym(F: Kernel, window: int) -> BiConeSeries:
    """(iota_{z,w} - iota_{w,z}) F on the common box window.

    Zero exactly when F has no (z-w)^2 pole; the delta-like difference
    otherwise.
    """
    left = iota_kernel(F, "zw", window)
    right = iota_kernel(F, "wz", window)
    box = (Window(None, window), Window(None, window))
    return left.restrict(box) - right.restrict(box)
