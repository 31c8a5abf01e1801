"""Lie pseudoalgebras presented by bracket tables over C[T_1..T_D].

A presentation stores the bracket of every generator pair as a polynomial in
the lam-family variables with coefficients in the free module over C[T].
Internally both layers are flattened: a bracket entry is a map
``generator index -> Poly in (T, lam)``.  With that representation the two
sesquilinearity rules, the skewsymmetry substitution lam -> -T-lam and the
Jacobi identity all become plain polynomial substitutions, and every axiom
check is an exact symbolic-zero assertion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import WorkspaceError
from .linalg import kernel_basis
from .report import CheckReport, Failure
from .rings import Poly, VarSpace, _mono_str

PSEUDO_FAMILIES = ("T", "lam", "mu")


def pseudo_space(D: int) -> VarSpace:
    return VarSpace(D, PSEUDO_FAMILIES)


def _check_compatible(a, b):
    if a.vs != b.vs or a.r != b.r:
        raise WorkspaceError("values belong to different pseudoalgebra workspaces")


class ModuleElement:
    """Element of the free module C[T]^r: map generator index -> T-polynomial."""

    __slots__ = ("vs", "r", "coords")

    def __init__(self, vs: VarSpace, r: int, coords: Mapping):
        clean = {}
        for k, poly in coords.items():
            if not 0 <= k < r:
                raise ValueError(f"generator index {k} out of range")
            if not isinstance(poly, Poly):
                poly = vs.const(poly)
            if poly.vs != vs:
                raise WorkspaceError("coordinate in a different workspace")
            if not poly.families_used() <= {"T"}:
                raise WorkspaceError("module coordinates must be polynomials in T")
            if poly:
                clean[k] = poly
        self.vs = vs
        self.r = r
        self.coords = clean

    @classmethod
    def generator(cls, vs: VarSpace, r: int, k: int) -> "ModuleElement":
        return cls(vs, r, {k: vs.one})

    def __add__(self, other):
        _check_compatible(self, other)
        out = dict(self.coords)
        for k, poly in other.coords.items():
            out[k] = out.get(k, self.vs.zero) + poly
        return ModuleElement(self.vs, self.r, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ModuleElement(self.vs, self.r, {k: -p for k, p in self.coords.items()})

    def scale(self, factor) -> "ModuleElement":
        """Multiply by a scalar or by a polynomial in T (the module action)."""
        return ModuleElement(
            self.vs, self.r, {k: p * factor for k, p in self.coords.items()}
        )

    def __mul__(self, factor):
        return self.scale(factor)

    __rmul__ = __mul__

    def mul_T(self, alpha: int) -> "ModuleElement":
        return self.scale(self.vs.var("T", alpha))

    def __bool__(self):
        return bool(self.coords)

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.vs == other.vs and self.r == other.r and self.coords == other.coords

    def __hash__(self):
        return hash((self.vs, self.r, tuple(sorted(self.coords.items()))))

    def format(self, names=None) -> str:
        if not self.coords:
            return "0"
        parts = []
        for k in sorted(self.coords):
            name = names[k] if names else f"a{k + 1}"
            poly = self.coords[k]
            text = str(poly)
            if text == "1":
                parts.append(name)
            else:
                parts.append(f"({text})*{name}")
        return " + ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"ModuleElement({self})"


class LambdaPoly:
    """A bracket value: polynomial in lam with ModuleElement coefficients.

    Stored flattened as ``generator index -> Poly in (T, lam)``; the
    lam-graded view is available through :meth:`lambda_terms`.
    """

    __slots__ = ("vs", "r", "coords")

    def __init__(self, vs: VarSpace, r: int, coords: Mapping):
        clean = {}
        for k, poly in coords.items():
            if not 0 <= k < r:
                raise ValueError(f"generator index {k} out of range")
            if not isinstance(poly, Poly):
                poly = vs.const(poly)
            if poly.vs != vs:
                raise WorkspaceError("coordinate in a different workspace")
            if poly:
                clean[k] = poly
        self.vs = vs
        self.r = r
        self.coords = clean

    @classmethod
    def zero(cls, vs: VarSpace, r: int) -> "LambdaPoly":
        return cls(vs, r, {})

    @classmethod
    def from_module_element(cls, element: ModuleElement) -> "LambdaPoly":
        return cls(element.vs, element.r, dict(element.coords))

    def __add__(self, other):
        _check_compatible(self, other)
        out = dict(self.coords)
        for k, poly in other.coords.items():
            out[k] = out.get(k, self.vs.zero) + poly
        return LambdaPoly(self.vs, self.r, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LambdaPoly(self.vs, self.r, {k: -p for k, p in self.coords.items()})

    def scale(self, factor) -> "LambdaPoly":
        return LambdaPoly(
            self.vs, self.r, {k: p * factor for k, p in self.coords.items()}
        )

    def subst(self, assignment: Mapping) -> "LambdaPoly":
        return LambdaPoly(
            self.vs, self.r, {k: p.subst(assignment) for k, p in self.coords.items()}
        )

    def __bool__(self):
        return bool(self.coords)

    def __eq__(self, other):
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        return self.vs == other.vs and self.r == other.r and self.coords == other.coords

    def lambda_terms(self) -> dict:
        """Map lam-monomial -> ModuleElement coefficient."""
        out: dict = {}
        for k, poly in self.coords.items():
            for lam_mono, cofactor in poly.coefficients_in(("lam",)).items():
                bucket = out.setdefault(lam_mono, {})
                bucket[k] = bucket.get(k, self.vs.zero) + cofactor
        return {
            mono: ModuleElement(self.vs, self.r, coords)
            for mono, coords in out.items()
            if any(coords.values())
        }

    def format(self, names=None) -> str:
        if not self.coords:
            return "0"
        parts = []
        for k in sorted(self.coords):
            name = names[k] if names else f"a{k + 1}"
            text = str(self.coords[k])
            parts.append(name if text == "1" else f"({text})*{name}")
        return " + ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"LambdaPoly({self})"


@dataclass(frozen=True)
class ChiVector:
    """Rational vector chi entering the divergence constraint of S(D, chi)."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @classmethod
    def zero(cls, D: int) -> "ChiVector":
        return cls((0,) * D)

    @classmethod
    def unit(cls, D: int, alpha: int) -> "ChiVector":
        return cls(tuple(Fraction(int(i == alpha - 1)) for i in range(D)))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


class LieStructure:
    """Finite-dimensional Lie algebra given by structure constants.

    Antisymmetry and the Jacobi identity are validated at construction, so a
    LieStructure is a certificate, not a claim.
    """

    def __init__(self, dim: int, constants: Mapping):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        self.dim = dim
        c: dict = {}
        for (i, j, k), value in constants.items():
            for idx in (i, j, k):
                if not 0 <= idx < dim:
                    raise ValueError(f"index {idx} out of range for dim {dim}")
            value = Fraction(value)
            if value:
                c[(i, j, k)] = value
        self.c = c
        self._validate()

    def _validate(self):
        for (i, j, k), value in self.c.items():
            if self.c.get((j, i, k), Fraction(0)) != -value:
                raise ValueError(
                    f"structure constants not antisymmetric at ({i},{j},{k})"
                )
        n = self.dim
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        total = Fraction(0)
                        for m in range(n):
                            total += self.c.get((i, j, m), 0) * self.c.get((m, k, l), 0)
                            total += self.c.get((j, k, m), 0) * self.c.get((m, i, l), 0)
                            total += self.c.get((k, i, m), 0) * self.c.get((m, j, l), 0)
                        if total:
                            raise ValueError(
                                f"Jacobi identity fails at ({i},{j},{k}) -> {l}"
                            )

    def bracket(self, i: int, j: int) -> dict:
        return {
            k: value for (a, b, k), value in self.c.items() if a == i and b == j
        }

    @classmethod
    def abelian(cls, dim: int) -> "LieStructure":
        return cls(dim, {})

    @classmethod
    def sl2(cls) -> "LieStructure":
        """Basis (e, h, f): [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
        return cls(
            3,
            {
                (0, 2, 1): 1, (2, 0, 1): -1,
                (1, 0, 0): 2, (0, 1, 0): -2,
                (1, 2, 2): -2, (2, 1, 2): 2,
            },
        )


class BracketTable:
    """Presentation of a Lie pseudoalgebra: D, generators and all pair brackets."""

    def __init__(self, D: int, generators, entries: Mapping):
        if D < 0:
            raise ValueError("D must be >= 0")
        generators = tuple(generators)
        if not generators:
            raise ValueError("generator list must be nonempty")
        if len(set(generators)) != len(generators):
            raise ValueError("generator names must be unique")
        self.D = D
        self.vs = pseudo_space(D)
        self.generators = generators
        r = len(generators)
        table: dict = {}
        for i in range(r):
            for j in range(r):
                entry = entries.get((i, j))
                if entry is None:
                    entry = LambdaPoly.zero(self.vs, r)
                if entry.vs != self.vs or entry.r != r:
                    raise WorkspaceError("entry in a different workspace")
                for poly in entry.coords.values():
                    if not poly.families_used() <= {"T", "lam"}:
                        raise WorkspaceError("bracket entries must live in (T, lam)")
                table[(i, j)] = entry
        self.entries = table

    @property
    def r(self) -> int:
        return len(self.generators)

    def entry(self, i: int, j: int) -> LambdaPoly:
        return self.entries[(i, j)]

    def generator_element(self, k) -> ModuleElement:
        if isinstance(k, str):
            k = self.generators.index(k)
        return ModuleElement.generator(self.vs, self.r, k)

    def element(self, coords: Mapping) -> ModuleElement:
        """Module element from ``{generator name or index: T-polynomial}``."""
        resolved = {}
        for key, poly in coords.items():
            k = self.generators.index(key) if isinstance(key, str) else key
            resolved[k] = poly
        return ModuleElement(self.vs, self.r, resolved)

    def __eq__(self, other):
        if not isinstance(other, BracketTable):
            return NotImplemented
        return (
            self.D == other.D
            and self.generators == other.generators
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"BracketTable(D={self.D}, generators={self.generators})"


# ----------------------------------------------------------------------
# constructors for the standard families
# ----------------------------------------------------------------------

def build_cur(g: LieStructure, D: int) -> BracketTable:
    """Current pseudoalgebra over a Lie algebra: generator brackets are constant."""
    vs = pseudo_space(D)
    r = g.dim
    names = tuple(f"x{i + 1}" for i in range(r)) if r != 3 else ("e", "h", "f")
    entries = {}
    for i in range(r):
        for j in range(r):
            coords = {k: vs.const(value) for k, value in g.bracket(i, j).items()}
            entries[(i, j)] = LambdaPoly(vs, r, coords)
    return BracketTable(D, names, entries)


def build_wd(D: int) -> BracketTable:
    """W(D): generators L^1..L^D with bracket (T_a + lam_a) L^b + lam_b L^a."""
    if D < 1:
        raise ValueError("W(D) needs D >= 1")
    vs = pseudo_space(D)
    names = tuple(f"L{a + 1}" for a in range(D))
    entries = {}
    for a in range(D):
        for b in range(D):
            coords: dict = {}
            coords[b] = vs.var("T", a + 1) + vs.var("lam", a + 1)
            coords[a] = coords.get(a, vs.zero) + vs.var("lam", b + 1)
            entries[(a, b)] = LambdaPoly(vs, D, coords)
    return BracketTable(D, names, entries)


def build_hd(D: int) -> BracketTable:
    """H(D), D even: one generator with bracket sum(lam_a T_{a+D/2} - lam_{a+D/2} T_a) L."""
    if D < 2 or D % 2:
        raise ValueError("H(D) needs even D >= 2")
    vs = pseudo_space(D)
    half = D // 2
    poly = vs.zero
    for a in range(1, half + 1):
        poly = poly + vs.var("lam", a) * vs.var("T", a + half)
        poly = poly - vs.var("lam", a + half) * vs.var("T", a)
    entries = {(0, 0): LambdaPoly(vs, 1, {0: poly})}
    return BracketTable(D, ("L",), entries)


def current_extend(table: BracketTable, Dprime: int) -> BracketTable:
    """Base extension to more T variables, keeping the same bracket."""
    if Dprime <= table.D:
        raise ValueError(f"target dimension {Dprime} must exceed {table.D}")
    vs = pseudo_space(Dprime)
    r = table.r
    entries = {}
    for key, entry in table.entries.items():
        entries[key] = LambdaPoly(
            vs, r, {k: p.reinterpret(vs) for k, p in entry.coords.items()}
        )
    return BracketTable(Dprime, table.generators, entries)


# ----------------------------------------------------------------------
# the sesquilinear extension and the axiom checkers
# ----------------------------------------------------------------------

def _shift_T_by(vs: VarSpace, family: str) -> dict:
    return {
        ("T", a): vs.var("T", a) + vs.var(family, a) for a in range(1, vs.D + 1)
    }


def bracket_extend(table: BracketTable, x: ModuleElement, y: ModuleElement) -> LambdaPoly:
    """Bracket of arbitrary module elements via sesquilinearity.

    [P(T)a_i lam Q(T)a_j] = P(-lam) * Q(T+lam) * [a_i lam a_j], the product
    taken coordinate-wise in C[T, lam].
    """
    vs = table.vs
    if x.vs != vs or y.vs != vs or x.r != table.r or y.r != table.r:
        raise WorkspaceError("elements do not live over this bracket table")
    neg_lam = {("T", a): -vs.var("lam", a) for a in range(1, vs.D + 1)}
    shift = _shift_T_by(vs, "lam")
    result = LambdaPoly.zero(vs, table.r)
    for i, P in x.coords.items():
        P_neg = P.subst(neg_lam)
        for j, Q in y.coords.items():
            factor = P_neg * Q.subst(shift)
            result = result + table.entry(i, j).scale(factor)
    return result


def skew_check(table: BracketTable) -> CheckReport:
    """Assert [a_i lam a_j] + [a_j (-T-lam) a_i] = 0 for all generator pairs."""
    vs = table.vs
    flip = {
        ("lam", a): -vs.var("T", a) - vs.var("lam", a) for a in range(1, vs.D + 1)
    }
    failures = []
    records = []
    for i in range(table.r):
        for j in range(table.r):
            label = f"({table.generators[i]},{table.generators[j]})"
            residual = table.entry(i, j) + table.entry(j, i).subst(flip)
            records.append((label, not residual))
            if residual:
                failures.append(Failure(label, residual.format(table.generators)))
    return CheckReport("skew", len(records), tuple(failures), records=tuple(records))


def jacobi_check(table: BracketTable) -> CheckReport:
    """Assert [a_i lam [a_j mu a_k]] - [a_j mu [a_i lam a_k]] = [[a_i lam a_j]_(lam+mu) a_k].

    All three terms are assembled in C[T, lam, mu] by polynomial substitution:
    second-slot sesquilinearity shifts T by the outer bracket variable, and
    the first slot of the composed bracket evaluates its T-coefficients at
    -(lam+mu).
    """
    vs = table.vs
    r = table.r
    rename_mu = {("lam", a): vs.var("mu", a) for a in range(1, vs.D + 1)}
    shift_lam = _shift_T_by(vs, "lam")
    shift_mu = _shift_T_by(vs, "mu")
    neg_numu = {
        ("T", a): -vs.var("lam", a) - vs.var("mu", a) for a in range(1, vs.D + 1)
    }
    lam_plus_mu = {
        ("lam", a): vs.var("lam", a) + vs.var("mu", a) for a in range(1, vs.D + 1)
    }
    failures = []
    records = []
    for i in range(r):
        for j in range(r):
            for k in range(r):
                residual: dict = {}

                def bump(l, poly):
                    residual[l] = residual.get(l, vs.zero) + poly

                # [a_i lam [a_j mu a_k]]
                for kp, Q in table.entry(j, k).coords.items():
                    factor = Q.subst({**rename_mu, **shift_lam})
                    for l, pol in table.entry(i, kp).coords.items():
                        bump(l, factor * pol)
                # - [a_j mu [a_i lam a_k]]
                for kp, P in table.entry(i, k).coords.items():
                    factor = P.subst(shift_mu)
                    for l, pol in table.entry(j, kp).coords.items():
                        bump(l, -factor * pol.subst(rename_mu))
                # - [[a_i lam a_j]_(lam+mu) a_k]
                for kp, R in table.entry(i, j).coords.items():
                    factor = R.subst(neg_numu)
                    for l, pol in table.entry(kp, k).coords.items():
                        bump(l, -factor * pol.subst(lam_plus_mu))

                gi, gj, gk = (table.generators[t] for t in (i, j, k))
                label = f"({gi},{gj},{gk})"
                bad = any(residual.values())
                records.append((label, not bad))
                if bad:
                    witness = " + ".join(
                        f"({p})*{table.generators[l]}"
                        for l, p in sorted(residual.items())
                        if p
                    )
                    failures.append(Failure(label, witness))
    return CheckReport("jacobi", len(records), tuple(failures), records=tuple(records))


def lie_skew_report(g: LieStructure) -> CheckReport:
    """Antisymmetry of structure constants (always true post-construction)."""
    records = []
    failures = []
    for i in range(g.dim):
        for j in range(g.dim):
            label = f"({i + 1},{j + 1})"
            bad = [
                k
                for k in range(g.dim)
                if g.c.get((i, j, k), Fraction(0)) != -g.c.get((j, i, k), Fraction(0))
            ]
            records.append((label, not bad))
            for k in bad:
                failures.append(Failure(label, f"c[{i + 1},{j + 1}]^{k + 1} not antisymmetric"))
    return CheckReport("skew", len(records), tuple(failures), records=tuple(records))


def lie_jacobi_report(g: LieStructure) -> CheckReport:
    """Structure-constant Jacobi identity (always true post-construction)."""
    records = []
    failures = []
    n = g.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                label = f"({i + 1},{j + 1},{k + 1})"
                ok = True
                for l in range(n):
                    total = Fraction(0)
                    for m in range(n):
                        total += g.c.get((i, j, m), 0) * g.c.get((m, k, l), 0)
                        total += g.c.get((j, k, m), 0) * g.c.get((m, i, l), 0)
                        total += g.c.get((k, i, m), 0) * g.c.get((m, j, l), 0)
                    if total:
                        ok = False
                        failures.append(Failure(label, f"component {l + 1}: {total}"))
                records.append((label, ok))
    return CheckReport("jacobi", len(records), tuple(failures), records=tuple(records))


# ----------------------------------------------------------------------
# S(D, chi): the divergence-free subalgebra of W(D)
# ----------------------------------------------------------------------

def sd_divergence(table: BracketTable, x: ModuleElement, chi: ChiVector) -> Poly:
    """The divergence symbol sum_a P_a * (T_a + chi_a) for x = sum_a P_a L^a.

    The product is taken in C[T]: under the symbol correspondence between
    T_a and the coordinate derivations this is the divergence of the vector
    field carried by x.  Zero iff x belongs to S(D, chi); that membership is
    stable under the W(D) bracket, which is what :func:`sd_closure_check`
    verifies.
    """
    D = table.D
    if table != build_wd(D):
        raise ValueError("divergence is defined on the W(D) presentation")
    if len(chi) != D:
        raise ValueError(f"chi must have length {D}")
    vs = table.vs
    total = vs.zero
    for a in range(D):
        P = x.coords.get(a, vs.zero)
        total = total + P * (vs.var("T", a + 1) + vs.const(chi[a]))
    return total


def sd_basis(D: int, chi: ChiVector, degmax: int) -> list:
    """Canonical basis of divergence-free elements of T-degree <= degmax."""
    table = build_wd(D)
    vs = table.vs
    monos = []
    for deg in range(degmax + 1):
        monos.extend(vs.monomials_of_degree("T", deg))
    columns = [(a, m) for a in range(D) for m in monos]
    # The divergence raises degree by one, so images live in degree <= degmax + 1.
    image_monos = list(monos)
    image_monos.extend(vs.monomials_of_degree("T", degmax + 1))
    mono_index = {m: idx for idx, m in enumerate(image_monos)}
    matrix = [[Fraction(0)] * len(columns) for _ in range(len(image_monos))]
    for col, (a, exps) in enumerate(columns):
        poly = vs.from_exps("T", exps)
        image = poly * (vs.var("T", a + 1) + vs.const(chi[a]))
        for mono, coeff in image.terms.items():
            dense = [0] * D
            for (fam, index), e in mono:
                dense[index - 1] = e
            matrix[mono_index[tuple(dense)]][col] += coeff
    basis = []
    for vector in kernel_basis(matrix, len(columns)):
        coords: dict = {}
        for col, value in enumerate(vector):
            if value:
                a, exps = columns[col]
                coords[a] = coords.get(a, vs.zero) + vs.from_exps("T", exps, value)
        basis.append(ModuleElement(vs, D, coords))
    return basis


def sd_closure_check(D: int, chi: ChiVector, degmax: int) -> CheckReport:
    """Check that brackets of divergence-free elements stay divergence-free.

    Every lam-coefficient of every pairwise bracket of basis elements of
    T-degree <= degmax must have zero divergence.
    """
    if degmax < 1:
        raise ValueError("degmax must be >= 1")
    table = build_wd(D)
    basis = sd_basis(D, chi, degmax)
    failures = []
    records = []
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            label = f"pair ({i},{j})"
            bracket = bracket_extend(table, x, y)
            ok = True
            for lam_mono, element in bracket.lambda_terms().items():
                div = sd_divergence(table, element, chi)
                if div:
                    ok = False
                    failures.append(
                        Failure(f"{label} at lam-monomial {_mono_str(lam_mono)}", str(div))
                    )
            records.append((label, ok))
    detail = f"D={D}, chi={[str(v) for v in chi.values]}, degmax={degmax}, basis={len(basis)}"
    return CheckReport("closure", len(records), tuple(failures), detail, tuple(records))
