"""Token grammar, canonical ordering, and text/JSON/LaTeX emitters with parsers.

Generators of ``H_n`` are written ``X_k``, ``Y_i^j`` and ``d^i_{j,k,...}``;
coefficient monomials of ``V`` use ``R^j_i`` for the dual of ``Y_i^j`` and
Weil exterior generators use ``theta^j_i`` likewise. A leg is a list of
tokens, the empty list standing for the unit.

Every serialized element has a ``kind``:

* ``elementary``: keys are tuples of ``H_n`` monomials;
* ``tensor``: the same, used for raw ``H_n^{(x) m+1}`` tensors;
* ``twisted`` and ``cochain``: keys ``(V-monomial, legs)``, serialized with the
  ``V``-monomial as leg 0;
* ``weil``: keys ``(wedge word, V-monomial)``, serialized as two legs.

Terms are ordered lexicographically on their token serialization.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .hopf import DELTA, XGEN, YGEN
from .linalg import FreeVector

KINDS = ("elementary", "tensor", "twisted", "cochain", "weil")

_X = re.compile(r"X_(\d+)$")
_Y = re.compile(r"Y_(\d+)\^(\d+)$")
_D = re.compile(r"d\^(\d+)_\{(\d+(?:,\d+)+)\}$")
_R = re.compile(r"R\^(\d+)_(\d+)$")
_T = re.compile(r"theta\^(\d+)_(\d+)$")


class SerializationError(ValueError):
    pass


@dataclass
class Emitted:
    """A serializable element: its kind, degree, gl rank, and coefficients."""

    kind: str
    degree: int
    n: int
    vector: FreeVector

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise SerializationError(f"unknown kind {self.kind!r}")


# ----------------------------------------------------------------------
# tokens
def generator_token(g: tuple) -> str:
    if g[0] == XGEN:
        return f"X_{g[1]}"
    if g[0] == YGEN:
        return f"Y_{g[1]}^{g[2]}"
    if g[0] == DELTA:
        return f"d^{g[1]}_{{{','.join(map(str, g[2]))}}}"
    raise SerializationError(f"not a generator: {g!r}")


def parse_generator(token: str) -> tuple:
    if m := _X.match(token):
        return (XGEN, int(m[1]))
    if m := _Y.match(token):
        return (YGEN, int(m[1]), int(m[2]))
    if m := _D.match(token):
        lowers = tuple(int(x) for x in m[2].split(","))
        if lowers != tuple(sorted(lowers)):
            raise SerializationError(f"non-canonical lower indices in {token!r}")
        return (DELTA, int(m[1]), lowers)
    raise SerializationError(f"bad generator token {token!r}")


def _gl_pair(a: int, n: int) -> tuple[int, int]:
    i, j = divmod(a, n)
    return i + 1, j + 1


def _gl_index(i: int, j: int, n: int) -> int:
    if not (1 <= i <= n and 1 <= j <= n):
        raise SerializationError(f"index ({i}, {j}) out of range for n = {n}")
    return (i - 1) * n + (j - 1)


def dual_token(a: int, n: int, symbol: str = "R") -> str:
    i, j = _gl_pair(a, n)
    return f"{symbol}^{j}_{i}"


def parse_dual(token: str, n: int) -> tuple[str, int]:
    for symbol, pattern in (("R", _R), ("theta", _T)):
        if m := pattern.match(token):
            return symbol, _gl_index(int(m[2]), int(m[1]), n)
    raise SerializationError(f"bad dual token {token!r}")


def monomial_tokens(mono: tuple) -> list[str]:
    return [generator_token(g) for g in mono]


def parse_monomial(tokens: list[str]) -> tuple:
    mono = tuple(parse_generator(t) for t in tokens)
    if list(mono) != sorted(mono):
        raise SerializationError(f"leg {tokens} is not in PBW normal form")
    return mono


def key_to_legs(kind: str, key: Any, n: int) -> list[list[str]]:
    if kind in ("elementary", "tensor"):
        return [monomial_tokens(m) for m in key]
    if kind in ("twisted", "cochain"):
        v, legs = key
        return [[dual_token(a, n) for a in v]] + [monomial_tokens(m) for m in legs]
    wedge, v = key
    return [[dual_token(a, n, "theta") for a in wedge], [dual_token(a, n) for a in v]]


def legs_to_key(kind: str, legs: list[list[str]], n: int) -> Any:
    if kind in ("elementary", "tensor"):
        return tuple(parse_monomial(leg) for leg in legs)
    if kind in ("twisted", "cochain"):
        v = tuple(_expect(parse_dual(t, n), "R") for t in legs[0])
        return (v, tuple(parse_monomial(leg) for leg in legs[1:]))
    if len(legs) != 2:
        raise SerializationError("a Weil term has exactly two legs")
    wedge = tuple(_expect(parse_dual(t, n), "theta") for t in legs[0])
    v = tuple(_expect(parse_dual(t, n), "R") for t in legs[1])
    return (wedge, v)


def _expect(parsed: tuple[str, int], symbol: str) -> int:
    if parsed[0] != symbol:
        raise SerializationError(f"expected a {symbol} token")
    return parsed[1]


def canonical_terms(e: Emitted) -> list[tuple[list[list[str]], Fraction]]:
    """Terms as ``(token legs, coefficient)`` sorted by token serialization."""
    rows = [(key_to_legs(e.kind, k, e.n), Fraction(c)) for k, c in e.vector.raw.items()]
    rows.sort(key=lambda row: row[0])
    return rows


def format_coeff(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ----------------------------------------------------------------------
# JSON
def to_json_obj(e: Emitted) -> dict:
    return {
        "kind": e.kind,
        "n": e.n,
        "degree": e.degree,
        "terms": [{"coeff": format_coeff(c), "legs": legs} for legs, c in canonical_terms(e)],
    }


def to_json(e: Emitted) -> str:
    return json.dumps(to_json_obj(e), indent=1)


def from_json_obj(obj: dict) -> Emitted:
    kind, n = obj["kind"], int(obj["n"])
    data: dict = {}
    for term in obj["terms"]:
        key = legs_to_key(kind, term["legs"], n)
        if key in data:
            raise SerializationError("duplicate term")
        data[key] = Fraction(term["coeff"])
    return Emitted(kind, int(obj["degree"]), n, FreeVector(data))


def from_json(text: str) -> Emitted:
    return from_json_obj(json.loads(text))


# ----------------------------------------------------------------------
# plain text: a header, then one "coeff | leg | leg ..." line per term
def to_text(e: Emitted) -> str:
    lines = [f"kind: {e.kind}", f"n: {e.n}", f"degree: {e.degree}"]
    for legs, c in canonical_terms(e):
        cells = [" ".join(leg) if leg else "1" for leg in legs]
        lines.append(" | ".join([format_coeff(c)] + cells))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Emitted:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header: dict = {}
    for ln in lines[:3]:
        name, _, value = ln.partition(":")
        header[name.strip()] = value.strip()
    try:
        kind, n, degree = header["kind"], int(header["n"]), int(header["degree"])
    except (KeyError, ValueError) as exc:
        raise SerializationError("missing header") from exc
    data: dict = {}
    for ln in lines[3:]:
        cells = [c.strip() for c in ln.split("|")]
        legs = [[] if cell == "1" else cell.split() for cell in cells[1:]]
        data[legs_to_key(kind, legs, n)] = Fraction(cells[0])
    return Emitted(kind, degree, n, FreeVector(data))


# ----------------------------------------------------------------------
# LaTeX
def latex_generator(g: tuple, n: int) -> str:
    if n == 1:
        if g[0] == XGEN:
            return "X"
        if g[0] == YGEN:
            return "Y"
        return f"\\delta_{len(g[2]) - 1}"
    if g[0] == XGEN:
        return f"X_{{{g[1]}}}"
    if g[0] == YGEN:
        return f"Y_{{{g[1]}}}^{{{g[2]}}}"
    return f"\\delta^{{{g[1]}}}_{{{''.join(map(str, g[2]))}}}"


def _latex_dual(token: str, symbol: str) -> str:
    upper, lower = re.match(r"\w+\^(\d+)_(\d+)$", token).groups()
    return f"{symbol}^{{{upper}}}_{{{lower}}}"


def latex_leg(kind: str, index: int, leg: list[str], n: int) -> str:
    if not leg:
        return "1"
    coefficient_leg = (kind in ("twisted", "cochain") and index == 0) or kind == "weil"
    if coefficient_leg:
        if kind == "weil" and index == 0:
            return " \\wedge ".join(_latex_dual(t, "\\theta") for t in leg)
        return " ".join(_latex_dual(t, "R") for t in leg)
    return " ".join(latex_generator(parse_generator(t), n) for t in leg)


def to_latex(e: Emitted) -> str:
    out = []
    for pos, (legs, c) in enumerate(canonical_terms(e)):
        body = "\\otimes ".join(latex_leg(e.kind, i, leg, e.n) for i, leg in enumerate(legs))
        mag = abs(c)
        if mag == 1:
            coeff = ""
        elif mag.denominator == 1:
            coeff = f"{mag.numerator}"
        else:
            coeff = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
        if pos == 0:
            sign = "-" if c < 0 else ""
            out.append(f"{sign}{coeff}{body}" if not sign else f"- {coeff}{body}")
        else:
            out.append(f"{'-' if c < 0 else '+'} {coeff}{body}")
    return " ".join(out) if out else "0"


def emit(e: Emitted, fmt: str) -> str:
    if fmt == "json":
        return to_json(e)
    if fmt == "text":
        return to_text(e)
    if fmt == "latex":
        return to_latex(e)
    raise SerializationError(f"unknown format {fmt!r}")


def parse(text: str, fmt: str) -> Emitted:
    if fmt == "json":
        return from_json(text)
    if fmt == "text":
        return from_text(text)
    raise SerializationError(f"format {fmt!r} cannot be parsed")
