"""Line-oriented JSON files for algebra and structure definitions.

The first line is a header object carrying the kind, the dimension and the
generator names; every following line describes one bracket entry (for
pseudoalgebras), one structure constant (for Lie algebras) or one action
entry (for vertex Lie structures).  Rationals are numerator/denominator
string pairs and exponents are explicit dense vectors, so files are exact,
language-neutral and diffable; writers emit everything in a fixed canonical
order, making output byte-reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cone import BiConeSeries, ConeSeries, HarmonicBasis, harmonic_basis, iota_expand
from .pseudo import (
    BracketTable,
    ChiVector,
    LambdaPoly,
    LieStructure,
    ModuleElement,
    pseudo_space,
)
from .rings import Poly, mono_sort_key
from .vla import VLAStructure


class AlgebraFileError(ValueError):
    """Malformed file or a violated structural invariant."""


@dataclass(frozen=True)
class LoadedAlgebra:
    kind: str
    obj: object
    chi: Optional[ChiVector] = None


# ----------------------------------------------------------------------
# primitives
# ----------------------------------------------------------------------

def _frac_out(value) -> list:
    f = Fraction(value)
    return [str(f.numerator), str(f.denominator)]


def _frac_in(pair) -> Fraction:
    if (
        not isinstance(pair, list)
        or len(pair) != 2
        or not all(isinstance(p, str) for p in pair)
    ):
        raise AlgebraFileError(f"rational must be a [num, den] string pair, got {pair!r}")
    try:
        return Fraction(int(pair[0]), int(pair[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise AlgebraFileError(f"bad rational {pair!r}: {exc}") from None


def _poly_out(poly: Poly, D: int, family: str = "T") -> list:
    out = []
    for mono, coeff in sorted(poly.terms.items(), key=lambda kv: mono_sort_key(kv[0])):
        exps = [0] * D
        for (fam, index), e in mono:
            if fam != family:
                raise AlgebraFileError(f"unexpected family {fam!r} in file polynomial")
            exps[index - 1] = e
        out.append([exps, _frac_out(coeff)])
    return out


def _poly_in(data, vs, D: int, family: str = "T") -> Poly:
    if not isinstance(data, list):
        raise AlgebraFileError("polynomial must be a list of [exps, coeff] pairs")
    poly = vs.zero
    for item in data:
        if not isinstance(item, list) or len(item) != 2:
            raise AlgebraFileError(f"bad polynomial term {item!r}")
        exps, coeff = item
        if not isinstance(exps, list) or len(exps) != D or not all(
            isinstance(e, int) and e >= 0 for e in exps
        ):
            raise AlgebraFileError(f"bad exponent vector {exps!r}")
        poly = poly + vs.from_exps(family, exps, _frac_in(coeff))
    return poly


def _check_keys(obj: dict, allowed: set, context: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise AlgebraFileError(f"unknown fields {sorted(unknown)} in {context}")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ----------------------------------------------------------------------
# writers
# ----------------------------------------------------------------------

def serialize_table(table: BracketTable, chi: Optional[ChiVector] = None) -> str:
    header = {
        "kind": "pseudoalgebra",
        "D": table.D,
        "generators": list(table.generators),
    }
    if chi is not None:
        header["chi"] = [_frac_out(v) for v in chi.values]
    lines = [_dump(header)]
    for i in range(table.r):
        for j in range(table.r):
            entry = table.entry(i, j)
            terms = []
            for lam_mono, element in sorted(
                entry.lambda_terms().items(), key=lambda kv: mono_sort_key(kv[0])
            ):
                lam_exps = [0] * table.D
                for (_, index), e in lam_mono:
                    lam_exps[index - 1] = e
                for k in sorted(element.coords):
                    terms.append(
                        {
                            "lambda": lam_exps,
                            "gen": table.generators[k],
                            "poly": _poly_out(element.coords[k], table.D),
                        }
                    )
            if terms:
                lines.append(_dump({"entry": [i + 1, j + 1], "terms": terms}))
    return "\n".join(lines) + "\n"


def serialize_lie(g: LieStructure, names=None) -> str:
    names = list(names) if names else [f"x{i + 1}" for i in range(g.dim)]
    header = {"kind": "lie", "dim": g.dim, "generators": names}
    lines = [_dump(header)]
    for (i, j, k) in sorted(g.c):
        lines.append(_dump({"c": [i + 1, j + 1, k + 1], "value": _frac_out(g.c[(i, j, k)])}))
    return "\n".join(lines) + "\n"


def serialize_vla(S: VLAStructure) -> str:
    header = {"kind": "vla", "D": S.D, "generators": list(S.generators)}
    lines = [_dump(header)]
    for i in range(S.r):
        for j in range(S.r):
            series = S.action(i, j)
            terms = []
            for (n, m, sigma), element in series.items():
                for k in sorted(element.coords):
                    terms.append(
                        {
                            "mode": [n, m, sigma],
                            "gen": S.generators[k],
                            "poly": _poly_out(element.coords[k], S.D),
                        }
                    )
            if terms:
                lines.append(_dump({"entry": [i + 1, j + 1], "terms": terms}))
    return "\n".join(lines) + "\n"


def serialize_harmonic_basis(basis: HarmonicBasis) -> str:
    header = {"kind": "harmonic-basis", "D": basis.D, "m": basis.m, "count": len(basis)}
    lines = [_dump(header)]
    for sigma, poly in enumerate(basis, start=1):
        lines.append(
            _dump({"sigma": sigma, "poly": _poly_out(poly, basis.D, family="z")})
        )
    return "\n".join(lines) + "\n"


def serialize_iota(series: BiConeSeries, D: int, k: int, side: str, window: int) -> str:
    header = {"kind": "iota-expansion", "D": D, "k": k, "side": side, "window": window}
    lines = [_dump(header)]
    for (mz, mw), coeff in series.items():
        lines.append(_dump({"z": list(mz), "w": list(mw), "coeff": _frac_out(coeff)}))
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# readers
# ----------------------------------------------------------------------

def parse_algebra_text(text: str) -> LoadedAlgebra:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise AlgebraFileError("empty file")
    try:
        rows = [json.loads(line) for line in lines]
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"invalid JSON: {exc}") from None
    header, body = rows[0], rows[1:]
    if not isinstance(header, dict) or "kind" not in header:
        raise AlgebraFileError("first line must be a header object with a 'kind'")
    kind = header["kind"]
    if kind == "lie":
        return _parse_lie(header, body)
    if kind == "pseudoalgebra":
        return _parse_table(header, body)
    if kind == "vla":
        return _parse_vla(header, body)
    raise AlgebraFileError(f"unknown kind {kind!r}")


def _names(header) -> list:
    names = header.get("generators")
    if not isinstance(names, list) or not names or not all(isinstance(n, str) for n in names):
        raise AlgebraFileError("header must carry a nonempty generator name list")
    if len(set(names)) != len(names):
        raise AlgebraFileError("generator names must be unique")
    return names


def _parse_lie(header, body) -> LoadedAlgebra:
    _check_keys(header, {"kind", "dim", "generators"}, "lie header")
    names = _names(header)
    dim = header.get("dim")
    if dim != len(names):
        raise AlgebraFileError("dim must equal the number of generators")
    constants = {}
    for row in body:
        if not isinstance(row, dict):
            raise AlgebraFileError("body lines must be objects")
        _check_keys(row, {"c", "value"}, "lie entry")
        idx = row.get("c")
        if not isinstance(idx, list) or len(idx) != 3 or not all(isinstance(i, int) for i in idx):
            raise AlgebraFileError(f"bad structure-constant index {idx!r}")
        i, j, k = (x - 1 for x in idx)
        constants[(i, j, k)] = _frac_in(row.get("value"))
    try:
        g = LieStructure(dim, constants)
    except ValueError as exc:
        raise AlgebraFileError(str(exc)) from None
    return LoadedAlgebra("lie", g)


def _parse_entry_terms(row, D, vs, names, value_key: str):
    _check_keys(row, {"entry", "terms"}, "entry line")
    idx = row.get("entry")
    if not isinstance(idx, list) or len(idx) != 2 or not all(isinstance(i, int) for i in idx):
        raise AlgebraFileError(f"bad entry index {idx!r}")
    i, j = idx[0] - 1, idx[1] - 1
    if not (0 <= i < len(names) and 0 <= j < len(names)):
        raise AlgebraFileError(f"entry index {idx!r} out of range")
    terms = row.get("terms")
    if not isinstance(terms, list):
        raise AlgebraFileError("'terms' must be a list")
    parsed = []
    for term in terms:
        if not isinstance(term, dict):
            raise AlgebraFileError("terms must be objects")
        _check_keys(term, {value_key, "gen", "poly"}, "term")
        gen = term.get("gen")
        if gen not in names:
            raise AlgebraFileError(f"unknown generator {gen!r}")
        poly = _poly_in(term.get("poly"), vs, D)
        parsed.append((term.get(value_key), names.index(gen), poly))
    return (i, j), parsed


def _parse_table(header, body) -> LoadedAlgebra:
    _check_keys(header, {"kind", "D", "generators", "chi"}, "pseudoalgebra header")
    names = _names(header)
    D = header.get("D")
    if not isinstance(D, int) or D < 0:
        raise AlgebraFileError("D must be a nonnegative integer")
    chi = None
    if "chi" in header:
        values = header["chi"]
        if not isinstance(values, list) or len(values) != D:
            raise AlgebraFileError("chi must be a list of D rationals")
        chi = ChiVector(tuple(_frac_in(v) for v in values))
    vs = pseudo_space(D)
    r = len(names)
    entries: dict = {}
    for row in body:
        if not isinstance(row, dict):
            raise AlgebraFileError("body lines must be objects")
        key, parsed = _parse_entry_terms(row, D, vs, names, "lambda")
        if key in entries:
            raise AlgebraFileError(f"duplicate entry {key}")
        value = LambdaPoly.zero(vs, r)
        for lam_exps, gen_index, poly in parsed:
            if (
                not isinstance(lam_exps, list)
                or len(lam_exps) != D
                or not all(isinstance(e, int) and e >= 0 for e in lam_exps)
            ):
                raise AlgebraFileError(f"bad lambda exponent vector {lam_exps!r}")
            lam = vs.from_exps("lam", lam_exps)
            value = value + LambdaPoly(vs, r, {gen_index: poly * lam})
        entries[key] = value
    try:
        table = BracketTable(D, names, entries)
    except ValueError as exc:
        raise AlgebraFileError(str(exc)) from None
    return LoadedAlgebra("pseudoalgebra", table, chi)


def _parse_vla(header, body) -> LoadedAlgebra:
    _check_keys(header, {"kind", "D", "generators"}, "vla header")
    names = _names(header)
    D = header.get("D")
    if not isinstance(D, int) or D < 1:
        raise AlgebraFileError("D must be a positive integer")
    vs = pseudo_space(D)
    r = len(names)
    actions: dict = {}
    for row in body:
        if not isinstance(row, dict):
            raise AlgebraFileError("body lines must be objects")
        key, parsed = _parse_entry_terms(row, D, vs, names, "mode")
        if key in actions:
            raise AlgebraFileError(f"duplicate entry {key}")
        coeffs: dict = {}
        for mode, gen_index, poly in parsed:
            if not isinstance(mode, list) or len(mode) != 3 or not all(
                isinstance(x, int) for x in mode
            ):
                raise AlgebraFileError(f"bad mode index {mode!r}")
            mode = tuple(mode)
            element = ModuleElement(vs, r, {gen_index: poly})
            existing = coeffs.get(mode)
            coeffs[mode] = element if existing is None else existing + element
        try:
            actions[key] = ConeSeries(D, "z", coeffs)
        except ValueError as exc:
            raise AlgebraFileError(str(exc)) from None
    try:
        S = VLAStructure(D, names, actions)
    except ValueError as exc:
        raise AlgebraFileError(str(exc)) from None
    return LoadedAlgebra("vla", S)


def parse_algebra(path):
    """Load and validate an algebra file; returns the in-memory object."""
    with open(path, "r", encoding="utf-8") as handle:
        return parse_algebra_text(handle.read()).obj


def load_algebra(path) -> LoadedAlgebra:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_algebra_text(handle.read())


def emit_harmonic_basis(D: int, m: int) -> str:
    return serialize_harmonic_basis(harmonic_basis(D, m))


def emit_iota(D: int, k: int, side: str, window: int) -> str:
    return serialize_iota(iota_expand(D, k, side, window), D, k, side, window)
