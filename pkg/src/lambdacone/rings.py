"""Exact sparse multivariate polynomial arithmetic over the rationals.

Variables come in named *families* (T, lam, mu, nu, z, w, u), each of arity D,
so a variable is a pair ``(family, index)`` with ``1 <= index <= D``.  A
monomial is a sorted tuple of ``((family, index), exponent)`` pairs with no
zero exponents; a polynomial maps monomials to ``Fraction`` coefficients with
no zero coefficients stored.  Everything is immutable and hashable, and
equality is exact term-map equality, so "symbolic zero" is a hard assertion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping

from .errors import WorkspaceError

FAMILIES = ("T", "lam", "mu", "nu", "z", "w", "u")

Var = tuple  # (family: str, index: int), index is 1-based
Monomial = tuple  # sorted tuple of (Var, exponent) pairs, exponents > 0

_FAMILY_POS = {name: pos for pos, name in enumerate(FAMILIES)}


def _var_key(var: Var) -> tuple:
    family, index = var
    return (_FAMILY_POS[family], index)


def mono_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps: dict = dict(a)
    for var, e in b:
        exps[var] = exps.get(var, 0) + e
    return tuple(sorted(exps.items(), key=lambda item: _var_key(item[0])))


def mono_sort_key(mono: Monomial) -> tuple:
    # Graded, then lexicographic in (family order, index); deterministic.
    return (mono_degree(mono), tuple((_var_key(v), -e) for v, e in mono))


def _mono_str(mono: Monomial) -> str:
    if not mono:
        return "1"
    parts = []
    for (family, index), e in mono:
        name = f"{family}{index}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


@dataclass(frozen=True)
class VarSpace:
    """A workspace: D space dimensions and an ordered set of variable families.

    D = 0 is the degenerate workspace whose polynomial ring is the constants;
    it backs the ordinary-Lie-algebra case of the pseudoalgebra engine.
    """

    D: int
    families: tuple = FAMILIES

    def __post_init__(self):
        if self.D < 0:
            raise ValueError(f"D must be >= 0, got {self.D}")
        if len(set(self.families)) != len(self.families):
            raise ValueError("duplicate family names")
        for name in self.families:
            if name not in _FAMILY_POS:
                raise ValueError(f"unknown family {name!r}")

    def check_var(self, family: str, index: int) -> None:
        if family not in self.families:
            raise WorkspaceError(f"family {family!r} not in workspace {self.families}")
        if not 1 <= index <= self.D:
            raise WorkspaceError(f"index {index} out of range 1..{self.D}")

    def var(self, family: str, index: int) -> "Poly":
        self.check_var(family, index)
        return Poly(self, {(((family, index), 1),): Fraction(1)})

    def const(self, value) -> "Poly":
        c = Fraction(value)
        if c == 0:
            return Poly(self, {})
        return Poly(self, {(): c})

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(1)

    def monomial(self, exps: Mapping, coeff=1) -> "Poly":
        """Build ``coeff * prod var^e`` from a ``{(family, index): e}`` map."""
        mono = []
        for (family, index), e in exps.items():
            self.check_var(family, index)
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                mono.append(((family, index), e))
        mono.sort(key=lambda item: _var_key(item[0]))
        c = Fraction(coeff)
        if c == 0:
            return self.zero
        return Poly(self, {tuple(mono): c})

    def monomials_of_degree(self, family: str, degree: int) -> list:
        """All degree-``degree`` monomials in one family, as dense exponent tuples."""
        if family not in self.families:
            raise WorkspaceError(f"family {family!r} not in workspace")
        if self.D == 0:
            return [()] if degree == 0 else []
        out = []
        for combo in combinations_with_replacement(range(self.D), degree):
            exps = [0] * self.D
            for i in combo:
                exps[i] += 1
            out.append(tuple(exps))
        return out

    def from_exps(self, family: str, exps: Iterable[int], coeff=1) -> "Poly":
        """Monomial from a dense per-index exponent tuple of one family."""
        return self.monomial(
            {(family, i + 1): e for i, e in enumerate(exps) if e}, coeff
        )


class Poly:
    """Immutable sparse polynomial over a :class:`VarSpace`."""

    __slots__ = ("vs", "terms", "_hash")

    def __init__(self, vs: VarSpace, terms: Mapping):
        clean = {}
        for mono, coeff in terms.items():
            c = Fraction(coeff)
            if c:
                clean[mono] = c
        self.vs = vs
        self.terms = clean
        self._hash = None

    # -- ring structure -------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.vs != self.vs:
                raise WorkspaceError("polynomials live in different workspaces")
            return other
        if isinstance(other, (int, Fraction)):
            return self.vs.const(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + coeff
        return Poly(self.vs, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vs, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                out[m] = out.get(m, Fraction(0)) + ca * cb
        return Poly(self.vs, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.vs.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.vs.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vs == other.vs and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            items = tuple(sorted(self.terms.items(), key=lambda kv: mono_sort_key(kv[0])))
            self._hash = hash((self.vs, items))
        return self._hash

    # -- calculus --------------------------------------------------------

    def diff(self, family: str, index: int) -> "Poly":
        """Formal partial derivative with respect to one variable."""
        self.vs.check_var(family, index)
        var = (family, index)
        out: dict = {}
        for mono, coeff in self.terms.items():
            exps = dict(mono)
            e = exps.get(var, 0)
            if not e:
                continue
            if e == 1:
                del exps[var]
            else:
                exps[var] = e - 1
            m = tuple(sorted(exps.items(), key=lambda item: _var_key(item[0])))
            out[m] = out.get(m, Fraction(0)) + coeff * e
        return Poly(self.vs, out)

    def laplacian(self, family: str) -> "Poly":
        """Sum of second partials over all D indices of one family."""
        result = self.vs.zero
        for alpha in range(1, self.vs.D + 1):
            result = result + self.diff(family, alpha).diff(family, alpha)
        return result

    def subst(self, assignment: Mapping) -> "Poly":
        """Ring-homomorphism image; variables absent from ``assignment`` stay put.

        Keys are ``(family, index)`` pairs, values are polynomials over the
        same workspace (or ints/Fractions).
        """
        images = {}
        for var, value in assignment.items():
            self.vs.check_var(*var)
            if not isinstance(value, Poly):
                value = self.vs.const(value)
            elif value.vs != self.vs:
                raise WorkspaceError("substitution image in a different workspace")
            images[var] = value
        result = self.vs.zero
        powers: dict = {}
        for mono, coeff in self.terms.items():
            term = self.vs.const(coeff)
            for var, e in mono:
                if var in images:
                    key = (var, e)
                    if key not in powers:
                        powers[key] = images[var] ** e
                    factor = powers[key]
                else:
                    factor = Poly(self.vs, {((var, e),): Fraction(1)})
                term = term * factor
            result = result + term
        return result

    def reinterpret(self, vs: VarSpace) -> "Poly":
        """The same exponent data read in a (larger) workspace."""
        for mono in self.terms:
            for (family, index), _ in mono:
                vs.check_var(family, index)
        return Poly(vs, dict(self.terms))

    # -- structure queries ------------------------------------------------

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    def min_degree(self) -> int:
        return min((mono_degree(m) for m in self.terms), default=0)

    def degree_in(self, family: str) -> int:
        best = 0
        for mono in self.terms:
            d = sum(e for (fam, _), e in mono if fam == family)
            best = max(best, d)
        return best

    def families_used(self) -> set:
        return {fam for mono in self.terms for (fam, _), _ in mono}

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def coefficients_in(self, families) -> dict:
        """Group terms by their sub-monomial in ``families``.

        Returns a map sub-monomial -> Poly (the cofactor in the remaining
        variables).  Splitting off the lam part of a bracket, or the z part
        of a mixed kernel, are the two callers.
        """
        wanted = set(families)
        out: dict = {}
        for mono, coeff in self.terms.items():
            inside = tuple((v, e) for v, e in mono if v[0] in wanted)
            outside = tuple((v, e) for v, e in mono if v[0] not in wanted)
            bucket = out.setdefault(inside, {})
            bucket[outside] = bucket.get(outside, Fraction(0)) + coeff
        return {key: Poly(self.vs, terms) for key, terms in out.items()}

    def dense_exps(self, family: str) -> dict:
        """Map monomial -> dense exponent tuple of ``family`` (single-family polys)."""
        out = {}
        for mono in self.terms:
            exps = [0] * self.vs.D
            for (fam, index), e in mono:
                if fam != family:
                    raise WorkspaceError(
                        f"polynomial has variables outside family {family!r}"
                    )
                exps[index - 1] = e
            out[mono] = tuple(exps)
        return out

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: mono_sort_key(kv[0]))

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            if not mono:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(_mono_str(mono))
            elif coeff == -1:
                parts.append(f"-{_mono_str(mono)}")
            else:
                parts.append(f"{coeff}*{_mono_str(mono)}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly({self})"
