"""Exact rational linear algebra over sparse free vectors.

Every coefficient is an ``int`` or a ``fractions.Fraction``; floats never
enter. A :class:`FreeVector` is a finite linear combination of hashable,
mutually comparable basis keys with all zero coefficients removed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence, Union

Scalar = Union[int, Fraction]


def as_scalar(value: Any) -> Scalar:
    """Convert ``value`` to an exact scalar, rejecting floats."""
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return as_scalar(Fraction(value))
    raise TypeError(f"inexact or unsupported scalar: {value!r}")


def accumulate(target: dict, key: Hashable, coeff: Scalar) -> None:
    """Add ``coeff * key`` to the raw dictionary ``target`` in place."""
    if not coeff:
        return
    total = target.get(key, 0) + coeff
    if total:
        target[key] = _norm(total)
    else:
        target.pop(key, None)


class FreeVector:
    """Sparse vector in the free vector space over hashable keys."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Hashable, Any] | Iterable[tuple[Hashable, Any]] | None = None):
        data: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, coeff in items:
                accumulate(data, key, as_scalar(coeff))
        self._terms = data

    @classmethod
    def _from_clean(cls, data: dict) -> "FreeVector":
        vec = cls.__new__(cls)
        vec._terms = data
        return vec

    @classmethod
    def basis(cls, key: Hashable, coeff: Any = 1) -> "FreeVector":
        return cls({key: coeff})

    @property
    def raw(self) -> dict:
        """The underlying dictionary. Callers must not mutate it."""
        return self._terms

    def terms(self) -> list[tuple[Hashable, Scalar]]:
        """Terms sorted by key, the canonical form."""
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def keys(self) -> list[Hashable]:
        return sorted(self._terms)

    def coeff(self, key: Hashable) -> Scalar:
        return self._terms.get(key, 0)

    def __iter__(self) -> Iterator[tuple[Hashable, Scalar]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FreeVector):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "FreeVector") -> "FreeVector":
        data = dict(self._terms)
        for key, coeff in other._terms.items():
            accumulate(data, key, coeff)
        return FreeVector._from_clean(data)

    def __sub__(self, other: "FreeVector") -> "FreeVector":
        data = dict(self._terms)
        for key, coeff in other._terms.items():
            accumulate(data, key, -coeff)
        return FreeVector._from_clean(data)

    def __neg__(self) -> "FreeVector":
        return FreeVector._from_clean({k: -c for k, c in self._terms.items()})

    def scale(self, scalar: Any) -> "FreeVector":
        s = as_scalar(scalar)
        if not s:
            return FreeVector()
        return FreeVector._from_clean({k: _norm(c * s) for k, c in self._terms.items()})

    def __mul__(self, scalar: Any) -> "FreeVector":
        return self.scale(scalar)

    __rmul__ = __mul__

    def map_keys(self, func: Callable[[Hashable], Hashable]) -> "FreeVector":
        data: dict = {}
        for key, coeff in self._terms.items():
            accumulate(data, func(key), coeff)
        return FreeVector._from_clean(data)

    def apply_linear(self, func: Callable[[Hashable], "FreeVector"]) -> "FreeVector":
        """Extend ``func`` (key to vector) linearly."""
        data: dict = {}
        for key, coeff in self._terms.items():
            for k2, c2 in func(key)._terms.items():
                accumulate(data, k2, coeff * c2)
        return FreeVector._from_clean(data)

    def __repr__(self) -> str:
        if not self._terms:
            return "FreeVector(0)"
        body = " + ".join(f"{c}*{k!r}" for k, c in self.terms())
        return f"FreeVector({body})"


def _norm(value: Scalar) -> Scalar:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def linear_combine(a: Any, x: FreeVector, b: Any, y: FreeVector) -> FreeVector:
    """Return ``a * x + b * y`` in canonical form."""
    return combine_many([(a, x), (b, y)])


def combine_many(pairs: Iterable[tuple[Any, FreeVector]]) -> FreeVector:
    """Return the exact sum of ``c * v`` over ``(c, v)`` pairs."""
    data: dict = {}
    for coeff, vec in pairs:
        c = as_scalar(coeff)
        if not c:
            continue
        for key, value in vec.raw.items():
            accumulate(data, key, _norm(c * value))
    return FreeVector._from_clean(data)


def tensor_product(*vectors: FreeVector) -> FreeVector:
    """Tensor product of vectors; keys become tuples of the factor keys."""
    data: dict = {(): 1}
    for vec in vectors:
        nxt: dict = {}
        for key, coeff in data.items():
            for k2, c2 in vec.raw.items():
                accumulate(nxt, key + (k2,), _norm(coeff * c2))
        data = nxt
    return FreeVector._from_clean(data)


INCONSISTENT = "INCONSISTENT"


@dataclass
class LinearSystem:
    """Linear equations ``sum_j row[j] * x_j = rhs`` over named unknowns."""

    unknowns: list[str]
    rows: list[dict[str, Scalar]] = field(default_factory=list)
    rhs: list[Scalar] = field(default_factory=list)

    def add_equation(self, coeffs: Mapping[str, Any], rhs: Any = 0) -> None:
        row = {}
        for name, value in coeffs.items():
            if name not in self.unknowns:
                raise KeyError(f"unknown variable {name!r}")
            v = as_scalar(value)
            if v:
                row[name] = v
        self.rows.append(row)
        self.rhs.append(as_scalar(rhs))

    def matrix(self) -> list[list[Fraction]]:
        return [[Fraction(row.get(u, 0)) for u in self.unknowns] for row in self.rows]

    def augmented(self) -> list[list[Fraction]]:
        return [r + [Fraction(b)] for r, b in zip(self.matrix(), self.rhs)]

    def substitute(self, assignment: Mapping[str, Any]) -> list[Scalar]:
        """Residuals ``row . x - rhs`` for the given assignment."""
        out = []
        for row, b in zip(self.rows, self.rhs):
            total = Fraction(0)
            for name, coeff in row.items():
                total += coeff * Fraction(assignment.get(name, 0))
            out.append(_norm(total - b))
        return out

    def __str__(self) -> str:
        lines = []
        for row, b in zip(self.rows, self.rhs):
            parts = [f"{c}*{u}" for u, c in ((u, row[u]) for u in self.unknowns if u in row)]
            lines.append(f"{' + '.join(parts) or '0'} = {b}")
        return "\n".join(lines)


@dataclass
class Solution:
    """Particular solution plus a basis of the homogeneous solution space."""

    unknowns: list[str]
    particular: dict[str, Fraction]
    nullspace: list[dict[str, Fraction]]

    def general(self, params: Sequence[Any]) -> dict[str, Fraction]:
        out = dict(self.particular)
        for p, vec in zip(params, self.nullspace):
            for name, value in vec.items():
                out[name] = out[name] + Fraction(p) * value
        return out


def rref(matrix: Sequence[Sequence[Any]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with pivots chosen first-nonzero, row-major."""
    rows = [[Fraction(x) for x in r] for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[: len(pivots)], pivots


def solve_linear_system(system: LinearSystem) -> Solution | str:
    """Solve by Gaussian elimination; return :data:`INCONSISTENT` if none.

    The returned solution is verified by substitution before it is handed out.
    """
    n = len(system.unknowns)
    reduced, pivots = rref(system.augmented()) if system.rows else ([], [])
    if n in pivots:
        return INCONSISTENT
    particular = {u: Fraction(0) for u in system.unknowns}
    for row, col in zip(reduced, pivots):
        particular[system.unknowns[col]] = row[n]
    free = [c for c in range(n) if c not in pivots]
    nullspace = []
    for fc in free:
        vec = {u: Fraction(0) for u in system.unknowns}
        vec[system.unknowns[fc]] = Fraction(1)
        for row, col in zip(reduced, pivots):
            vec[system.unknowns[col]] = -row[fc]
        nullspace.append(vec)
    sol = Solution(list(system.unknowns), particular, nullspace)
    if any(system.substitute(particular)):
        raise ArithmeticError("particular solution failed substitution")
    for vec in nullspace:
        homog = LinearSystem(system.unknowns, system.rows, [0] * len(system.rows))
        if any(homog.substitute(vec)):
            raise ArithmeticError("nullspace vector failed substitution")
    return sol


def kernel_and_rank(matrix: Sequence[Sequence[Any]], ncols: int | None = None) -> tuple[int, list[FreeVector]]:
    """Rank of ``matrix`` and a kernel basis as free vectors over column indices.

    Every kernel vector is checked to map to zero before it is returned.
    """
    width = len(matrix[0]) if matrix else (ncols or 0)
    reduced, pivots = rref(matrix) if matrix else ([], [])
    kernel = []
    for fc in (c for c in range(width) if c not in pivots):
        vec = [Fraction(0)] * width
        vec[fc] = Fraction(1)
        for row, col in zip(reduced, pivots):
            vec[col] = -row[fc]
        for row in matrix:
            if sum((Fraction(a) * b for a, b in zip(row, vec)), Fraction(0)) != 0:
                raise ArithmeticError("kernel vector failed verification")
        kernel.append(FreeVector({i: v for i, v in enumerate(vec) if v}))
    return len(pivots), kernel


def rank(matrix: Sequence[Sequence[Any]]) -> int:
    return len(rref(matrix)[1]) if matrix else 0


def row_equivalent(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> bool:
    """Two matrices with equal column count span the same row space."""
    ra, _ = rref(a) if a else ([], [])
    rb, _ = rref(b) if b else ([], [])
    return ra == rb


def vectors_to_matrix(vectors: Sequence[FreeVector], keys: Sequence[Hashable] | None = None) -> tuple[list[list[Fraction]], list[Hashable]]:
    """Stack free vectors as rows over a common sorted key list."""
    if keys is None:
        all_keys: set = set()
        for v in vectors:
            all_keys.update(v.raw)
        keys = sorted(all_keys)
    index = {k: i for i, k in enumerate(keys)}
    mat = []
    for v in vectors:
        row = [Fraction(0)] * len(keys)
        for k, c in v.raw.items():
            row[index[k]] = Fraction(c)
        mat.append(row)
    return mat, list(keys)


def in_span(target: FreeVector, spanning: Sequence[FreeVector]) -> bool:
    """Whether ``target`` lies in the span of ``spanning``."""
    mat, keys = vectors_to_matrix(list(spanning) + [target])
    if not keys:
        return True
    return rank(mat[:-1]) == rank(mat)
