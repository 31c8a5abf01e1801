"""Vertex Lie algebra structures in D dimensions and their axiom checkers.

A structure stores, for every generator pair, the singular part of the field
action a_i(z) a_j as an exact finite cone series with module-element
coefficients.  The checkers verify translation covariance (through the action
extension rules), skewsymmetry against e^{zT}(b(-z)a), and the Jacobi /
Borcherds identities, all at a caller-declared window.

The right-hand side of the Jacobi identity is assembled literally: the
(z-w)-kernels of a(z-w)b are iota-expanded in both regions and subtracted,
tensored with the u-field of each coefficient acting on c, multiplied by
((u+z-w)^2)^L, evaluated at u = w mode-by-mode, shifted by (z^2)^(-L), and
finally restricted to the part singular in both z and w (which is how the
outermost singular-part operation has to be read for the two sides to have
the same mode support).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping, Optional

from .cone import (
    BiConeSeries,
    ConeSeries,
    FULL_WINDOW,
    Kernel,
    Window,
    _times_harm,
    _times_mono,
    basis_poly_in,
    iota_kernel,
)
from .errors import TruncationError, WorkspaceError
from .pseudo import BracketTable, ModuleElement, pseudo_space
from .report import CheckReport, Failure
from .rings import Poly, VarSpace


def _zwu_space(D: int) -> VarSpace:
    return VarSpace(D, ("z", "w", "u"))


class VLAStructure:
    """Generators, their module workspace, and the singular action table."""

    def __init__(self, D: int, generators, actions: Mapping):
        if D < 1:
            raise ValueError("D must be >= 1")
        generators = tuple(generators)
        if not generators:
            raise ValueError("generator list must be nonempty")
        self.D = D
        self.generators = generators
        self.vs = pseudo_space(D)
        r = len(generators)
        table = {}
        for i in range(r):
            for j in range(r):
                series = actions.get((i, j))
                if series is None:
                    series = ConeSeries.zero(D, "z")
                if series.D != D:
                    raise WorkspaceError("action series in a different dimension")
                if not series.window.is_full:
                    raise ValueError("action data must be exactly known (full window)")
                for (n, _, _), coeff in series.coeffs.items():
                    if n >= 0:
                        raise ValueError("action data must be a singular part (n < 0)")
                    if not isinstance(coeff, ModuleElement) or coeff.vs != self.vs or coeff.r != r:
                        raise WorkspaceError("action coefficients must be module elements")
                table[(i, j)] = series
        self.actions = table

    @property
    def r(self) -> int:
        return len(self.generators)

    def action(self, i: int, j: int) -> ConeSeries:
        return self.actions[(i, j)]

    def generator_element(self, k) -> ModuleElement:
        if isinstance(k, str):
            k = self.generators.index(k)
        return ModuleElement.generator(self.vs, self.r, k)

    def max_pole(self) -> int:
        return max((s.pole_order() for s in self.actions.values()), default=0)

    def __repr__(self):
        return f"VLAStructure(D={self.D}, generators={self.generators})"


def extend_action(S: VLAStructure, x: ModuleElement, y: ModuleElement) -> ConeSeries:
    """The field x(z) applied to y, for arbitrary module elements.

    Generator pairs read off the action table; a T factor in the first slot
    differentiates in z, one in the second slot acts as (T_alpha - d/dz_alpha).
    """
    if x.vs != S.vs or y.vs != S.vs or x.r != S.r or y.r != S.r:
        raise WorkspaceError("elements do not live over this structure")
    result = ConeSeries.zero(S.D, "z")
    for i, P in x.coords.items():
        for j, Q in y.coords.items():
            base = S.action(i, j)
            for monoQ, q in Q.terms.items():
                series = base
                for (_, alpha), e in monoQ:
                    for _ in range(e):
                        series = series.map_coeffs(
                            lambda me, a=alpha: me.mul_T(a)
                        ) - series.diff(alpha)
                for monoP, p in P.terms.items():
                    term = series
                    for (_, alpha), e in monoP:
                        for _ in range(e):
                            term = term.diff(alpha)
                    result = result + term.scale(p * q)
    return result


def apply_exp_zT(series: ConeSeries, zdeg: int) -> ConeSeries:
    """e^{zT} applied to a finite exact series, truncated at z-degree ``zdeg``.

    T acts by module multiplication on the coefficients, z by cone-mode
    multiplication.  The result is exactly known up to total degree
    min_hom(series) + zdeg: every deeper mode already received all its
    (finitely many) contributions.
    """
    if not series.window.is_full:
        raise TruncationError("e^{zT} needs an exactly-known source series")
    if not series.coeffs:
        return ConeSeries.zero(series.D, series.var)
    degmax = series.min_hom() + zdeg
    out = ConeSeries.zero(series.D, series.var, Window(None, degmax))
    vs_z = VarSpace(series.D, (series.var,))
    vs_mod = next(iter(series.coeffs.values())).vs
    for total in range(zdeg + 1):
        for exps in vs_z.monomials_of_degree(series.var, total):
            tpoly = vs_mod.one
            denom = 1
            for idx, e in enumerate(exps):
                if e:
                    tpoly = tpoly * vs_mod.var("T", idx + 1) ** e
                    denom *= factorial(e)
            factor = tpoly * Fraction(1, denom)
            term = series.map_coeffs(lambda me, f=factor: me.scale(f))
            if total:
                term = term.mul_poly(vs_z.from_exps(series.var, exps))
            out = out + term.restrict(Window(None, degmax))
    return out


def d1_bridge(table: BracketTable) -> VLAStructure:
    """Convert a D = 1 bracket table into singular cone-mode actions.

    The j-th product c_j lands at the Laurent pole z^{-j-1}, i.e. at the cone
    mode with 2n + m = -j - 1.
    """
    if table.D != 1:
        raise ValueError("the bridge is defined for D = 1 tables")
    actions = {}
    for (i, j), entry in table.entries.items():
        coeffs = {}
        for mono, element in entry.lambda_terms().items():
            jj = mono[0][1] if mono else 0
            c = element.scale(factorial(jj))
            ell = -jj - 1
            m = ell % 2
            n = (ell - m) // 2
            coeffs[(n, m, 1)] = c
        actions[(i, j)] = ConeSeries(1, "z", coeffs)
    return VLAStructure(1, table.generators, actions)


# ----------------------------------------------------------------------
# skewsymmetry
# ----------------------------------------------------------------------

def skew_check_vla(S: VLAStructure, window: int) -> CheckReport:
    """Compare a(z)b with the singular part of e^{zT}(b(-z)a).

    The exponential is truncated at z-degree ``window``; the two sides are
    compared on the region the truncation still answers for exactly, and the
    report records that region.
    """
    failures = []
    records = []
    for i in range(S.r):
        for j in range(S.r):
            label = f"({S.generators[i]},{S.generators[j]})"
            rhs = apply_exp_zT(S.action(j, i).parity_flip(), window).singular_part()
            diff = S.action(i, j).restrict(rhs.window) - rhs
            records.append((label, not diff))
            for mode, coeff in diff.items():
                failures.append(
                    Failure(f"{label} mode {mode}", coeff.format(S.generators))
                )
    return CheckReport(
        "vla-skew", len(records), tuple(failures), f"window={window}", tuple(records)
    )


# ----------------------------------------------------------------------
# Jacobi and Borcherds
# ----------------------------------------------------------------------

class TriConeSeries:
    """Internal three-variable (z, w, u) windowed mode series."""

    __slots__ = ("D", "coeffs", "windows")

    def __init__(self, D: int, coeffs: Mapping, windows=(FULL_WINDOW, FULL_WINDOW, FULL_WINDOW)):
        clean = {}
        for key, coeff in coeffs.items():
            if coeff and all(w.contains(mode[0], mode[1]) for w, mode in zip(windows, key)):
                clean[key] = coeff
        self.D = D
        self.coeffs = clean
        self.windows = tuple(windows)

    @classmethod
    def tensor(cls, bi: BiConeSeries, cone: ConeSeries) -> "TriConeSeries":
        coeffs = {}
        for (mz, mw), cb in bi.coeffs.items():
            for mu, cu in cone.coeffs.items():
                coeffs[(mz, mw, mu)] = cb * cu
        return cls(bi.D, coeffs, (bi.windows[0], bi.windows[1], cone.window))

    def accumulate(self, other: "TriConeSeries") -> "TriConeSeries":
        windows = tuple(a.intersect(b) for a, b in zip(self.windows, other.windows))
        out = dict(self.coeffs)
        for key, coeff in other.coeffs.items():
            total = out.get(key)
            out[key] = coeff if total is None else total + coeff
        return TriConeSeries(self.D, out, windows)

    def mul_poly(self, p: Poly, families=("z", "w", "u")) -> "TriConeSeries":
        terms = []
        min_deg = [None, None, None]
        for mono, pc in p.terms.items():
            exps = [[0] * self.D for _ in range(3)]
            for (fam, index), e in mono:
                exps[families.index(fam)][index - 1] = e
            exps = [tuple(v) for v in exps]
            terms.append((exps, pc))
            for slot in range(3):
                d = sum(exps[slot])
                if min_deg[slot] is None or d < min_deg[slot]:
                    min_deg[slot] = d
        windows = []
        for slot in range(3):
            w = self.windows[slot]
            if w.degmax is None:
                windows.append(FULL_WINDOW)
            elif w.n_min is not None:
                raise TruncationError("cannot multiply: window bounded below in n")
            else:
                windows.append(Window(None, w.degmax + (min_deg[slot] or 0)))
        out: dict = {}
        for exps, pc in terms:
            for key, coeff in self.coeffs.items():
                parts = [
                    _times_mono(self.D, key[slot][1], key[slot][2], exps[slot])
                    for slot in range(3)
                ]
                for (d0, m0, s0), q0 in parts[0]:
                    for (d1, m1, s1), q1 in parts[1]:
                        for (d2, m2, s2), q2 in parts[2]:
                            new_key = (
                                (key[0][0] + d0, m0, s0),
                                (key[1][0] + d1, m1, s1),
                                (key[2][0] + d2, m2, s2),
                            )
                            value = coeff * (pc * q0 * q1 * q2)
                            total = out.get(new_key)
                            out[new_key] = value if total is None else total + value
        return TriConeSeries(self.D, out, tuple(windows))

    def substitute_u_for_w(self) -> BiConeSeries:
        """Evaluate every u-kernel at u = w, folding into the w modes."""
        if not self.windows[2].is_full:
            raise TruncationError("u = w substitution needs a fully-known u side")
        min_lu = min((2 * key[2][0] + key[2][1] for key in self.coeffs), default=0)
        w_window = self.windows[1]
        if w_window.degmax is not None:
            w_window = Window(None, w_window.degmax + min(0, min_lu))
        out: dict = {}
        for (mz, mw, mu), coeff in self.coeffs.items():
            for (dj, m2, s2), q in _times_harm(self.D, mw[1], mw[2], mu[1], mu[2]):
                key = (mz, (mw[0] + mu[0] + dj, m2, s2))
                value = coeff * q
                total = out.get(key)
                out[key] = value if total is None else total + value
        return BiConeSeries(self.D, ("z", "w"), out, (self.windows[0], w_window))


@lru_cache(maxsize=None)
def _shifted_harmonic(D: int, m: int, sigma: int, vs: VarSpace) -> Poly:
    """h_{m,sigma}(z - w) as a polynomial over the (z, w) families."""
    poly = basis_poly_in(D, m, sigma, vs, "z")
    shift = {("z", a): vs.var("z", a) - vs.var("w", a) for a in range(1, D + 1)}
    return poly.subst(shift)


def _lhs_pair_term(S: VLAStructure, outer: int, series: ConeSeries, swap: bool) -> BiConeSeries:
    """outer(z) applied to each coefficient of a w-mode series (or swapped)."""
    out: dict = {}
    gen = S.generator_element(outer)
    for mode, element in series.coeffs.items():
        extended = extend_action(S, gen, element)
        for emode, coeff in extended.coeffs.items():
            key = (mode, emode) if swap else (emode, mode)
            total = out.get(key)
            out[key] = coeff if total is None else total + coeff
    return BiConeSeries(S.D, ("z", "w"), out)


def _borcherds_lhs(S: VLAStructure, i: int, j: int, k: int, F: Kernel, depth: int) -> BiConeSeries:
    """a(z)(b(w)c) iota_zw F  -  b(w)(a(z)c) iota_wz F, singular data throughout."""
    term1 = _lhs_pair_term(S, i, S.action(j, k), swap=False)
    term2 = _lhs_pair_term(S, j, S.action(i, k), swap=True)
    if F == Kernel.one(S.D):
        return term1 - term2
    left = iota_kernel(F, "zw", depth).mul_series(term1)
    right = iota_kernel(F, "wz", depth).mul_series(term2)
    return left - right


def _borcherds_rhs(
    S: VLAStructure, i: int, j: int, k: int, L: int, F: Kernel, depth: int
) -> BiConeSeries:
    D = S.D
    action = S.action(i, j)
    gen_k = S.generator_element(k)
    vs = _zwu_space(D)
    tri: Optional[TriConeSeries] = None
    for (n, m, sigma), element in action.coeffs.items():
        combined = Kernel(
            D,
            coeff=F.coeff,
            z_exps=F.z_exps,
            w_exps=F.w_exps,
            z_pole=F.z_pole,
            w_pole=F.w_pole,
            zw_pole=F.zw_pole - n,
        )
        diff = iota_kernel(combined, "zw", depth) - iota_kernel(combined, "wz", depth)
        if m:
            harmonic = _shifted_harmonic(D, m, sigma, VarSpace(D, ("z", "w")))
            diff = diff.mul_poly(harmonic)
        u_field = extend_action(S, element, gen_k)
        u_field = ConeSeries(D, "u", u_field.coeffs, u_field.window)
        term = TriConeSeries.tensor(diff, u_field)
        tri = term if tri is None else tri.accumulate(term)
    if tri is None:
        return BiConeSeries.zero(D, ("z", "w"))
    square = vs.zero
    for alpha in range(1, D + 1):
        square = square + (vs.var("u", alpha) + vs.var("z", alpha) - vs.var("w", alpha)) ** 2
    tri = tri.mul_poly(square ** L)
    result = tri.substitute_u_for_w()
    result = result.mul_x2(0, -L)
    return result


def _identity_failures(S, label: str, lhs: BiConeSeries, rhs: BiConeSeries) -> list:
    for w in rhs.windows:
        if w.degmax is not None and w.degmax < -1:
            raise TruncationError(
                "derived window does not reach the singular region; raise the window"
            )
    failures = []
    diff = lhs.singular_joint() - rhs.singular_joint()
    for key, coeff in diff.items():
        failures.append(
            Failure(f"{label} modes {key}", coeff.format(S.generators))
        )
    return failures


def _run_identity(S: VLAStructure, L: int, F: Kernel, window: int, name: str) -> CheckReport:
    if window < 0:
        raise ValueError("window must be >= 0")
    needed = max(
        (S.action(i, k).pole_order() for i in range(S.r) for k in range(S.r)),
        default=0,
    )
    if L < needed:
        raise ValueError(f"L = {L} is below the largest action pole order {needed}")
    failures = []
    records = []
    # The u-field pole can exceed the action poles by the T-degree of the
    # coefficients (every T in the first slot differentiates once).
    u_pole_bound = S.max_pole() + max(
        (p.total_degree() for series in S.actions.values()
         for el in series.coeffs.values() for p in el.coords.values()),
        default=0,
    )
    # Enough depth for the (z^2)^{-L} shift and the u = w pole feedback
    # into w, plus the caller's comparison margin.
    depth = window + max(2 * L, 2 * u_pole_bound) + 2
    for i in range(S.r):
        for j in range(S.r):
            for k in range(S.r):
                lhs = _borcherds_lhs(S, i, j, k, F, depth)
                rhs = _borcherds_rhs(S, i, j, k, L, F, depth)
                label = f"({S.generators[i]},{S.generators[j]},{S.generators[k]})"
                found = _identity_failures(S, label, lhs, rhs)
                records.append((label, not found))
                failures.extend(found)
    return CheckReport(
        name, len(records), tuple(failures), f"L={L}, window={window}", tuple(records)
    )


def jacobi_check_vla(S: VLAStructure, L: int, window: int) -> CheckReport:
    """The singular-part Jacobi identity, checked on the declared window."""
    return _run_identity(S, L, Kernel.one(S.D), window, "vla-jacobi")


def borcherds_check(S: VLAStructure, L: int, F: Kernel, window: int) -> CheckReport:
    """The Borcherds identity with kernel F, on singular-part data.

    For F = 1 this is the same comparison as :func:`jacobi_check_vla`.
    """
    if F.D != S.D:
        raise WorkspaceError("kernel dimension mismatch")
    return _run_identity(S, L, F, window, "borcherds")
