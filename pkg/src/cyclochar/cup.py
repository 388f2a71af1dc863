"""Characteristic maps into the cyclic complex of the crossed product algebra.

Cochains on the algebra are never evaluated on functions. An elementary
cochain ``a_0 (x) ... (x) a_m -> tau(a_0 h^1(a_1) ... h^m(a_m))`` is stored by
its tensor ``h^1 (x) ... (x) h^m``; this representation is injective, so every
identity on the algebra side is checked on tensors in ``H_n^{(x) m}``.

Intermediate expressions ``tau(...)`` in which the slots carry arbitrary
operators, slot 0 included, are :class:`RawTraceExpression` words, reduced to
elementary form by the trace rotation and integration by parts
``tau(h(a) b) = tau(a S_delta(h)(b))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .cyclic import EquivariantModel, HopfCyclicComplex, TwistedCochain, c_delta_complex
from .hopf import ONE, HopfHn
from .lie import permutation_sign
from .linalg import FreeVector, accumulate

Factor = tuple  # (slot, monomial)


@dataclass(frozen=True)
class RawTraceExpression:
    """A formal ``tau(op_1(a_{s_1}) ... op_r(a_{s_r}))`` with each slot used once."""

    factors: tuple

    def slots(self) -> list[int]:
        return [s for s, _ in self.factors]


@dataclass
class ElementaryCochain:
    """``tau(a_0 h^1(a_1) ... h^m(a_m))`` stored as a tensor over ``H_n^{(x) m}``."""

    degree: int
    value: FreeVector = field(default_factory=FreeVector)

    def __post_init__(self) -> None:
        for legs in self.value.keys():
            if len(legs) != self.degree:
                raise ValueError(f"leg count {len(legs)} does not match degree {self.degree}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementaryCochain):
            return NotImplemented
        return self.degree == other.degree and self.value == other.value

    def __add__(self, other: "ElementaryCochain") -> "ElementaryCochain":
        self._same_degree(other)
        return ElementaryCochain(self.degree, self.value + other.value)

    def __sub__(self, other: "ElementaryCochain") -> "ElementaryCochain":
        self._same_degree(other)
        return ElementaryCochain(self.degree, self.value - other.value)

    def __neg__(self) -> "ElementaryCochain":
        return ElementaryCochain(self.degree, -self.value)

    def scale(self, s) -> "ElementaryCochain":
        return ElementaryCochain(self.degree, self.value.scale(s))

    def is_zero(self) -> bool:
        return not self.value

    def _same_degree(self, other: "ElementaryCochain") -> None:
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def to_hopf_cochain(self) -> FreeVector:
        """The same data as a cochain of ``C(H_n, C_delta)`` (module key ``()``)."""
        return self.value.map_keys(lambda legs: ((), legs))

    @classmethod
    def from_hopf_cochain(cls, x: FreeVector, degree: int) -> "ElementaryCochain":
        return cls(degree, x.map_keys(lambda key: key[1]))


# ----------------------------------------------------------------------
# trace calculus
def apply_operator(hopf: HopfHn, mono: tuple, factors: tuple) -> dict:
    """``h(b_1 ... b_r)`` expanded by the Leibniz rule ``h_(1)(b_1) ... h_(r)(b_r)``."""
    if not mono:
        return {factors: 1}
    out: dict = {}
    for split, c in hopf.iterated_coproduct_mono(mono, len(factors)).items():
        partial: dict = {(): c}
        for part, (slot, op) in zip(split, factors):
            nxt: dict = {}
            for prefix, cp in partial.items():
                for m, cm in hopf.mul_mono(part, op).items():
                    accumulate(nxt, prefix + ((slot, m),), cp * cm)
            partial = nxt
        for k, v in partial.items():
            accumulate(out, k, v)
    return out


def reduce_to_elementary(hopf: HopfHn, expr: RawTraceExpression) -> ElementaryCochain:
    """Rotate slot 0 to the front and move its operator off by ``S_delta``."""
    factors = expr.factors
    slots = [s for s, _ in factors]
    if 0 not in slots:
        raise ValueError("expression has no slot 0")
    start = slots.index(0)
    factors = factors[start:] + factors[:start]
    m = len(factors) - 1
    if [s for s, _ in factors] != list(range(m + 1)):
        raise ValueError(f"slots {slots} are not a rotation of 0..{m}")
    g = factors[0][1]
    rest = tuple(op for _, op in factors[1:])
    out: dict = {}
    for s, cs in hopf.twisted_antipode_mono(g).items():
        if m == 0:
            if not s:
                accumulate(out, (), cs)
            continue
        for legs, c in hopf.diagonal_action_raw(s, {rest: 1}).items():
            accumulate(out, legs, cs * c)
    return ElementaryCochain(m, FreeVector._from_clean(out))


def reduce_combination(hopf: HopfHn, words: dict, degree: int) -> ElementaryCochain:
    """Reduce a linear combination ``{factor tuple: coeff}`` of trace words."""
    out: dict = {}
    for word, c in words.items():
        for legs, c2 in reduce_to_elementary(hopf, RawTraceExpression(word)).value.raw.items():
            accumulate(out, legs, c * c2)
    return ElementaryCochain(degree, FreeVector._from_clean(out))


def elementary_b(hopf: HopfHn, x: ElementaryCochain) -> ElementaryCochain:
    """Hochschild coboundary, transported from ``C(H_n, C_delta)``."""
    y = c_delta_complex(hopf).hochschild_b(x.to_hopf_cochain(), x.degree)
    return ElementaryCochain.from_hopf_cochain(y, x.degree + 1)


def elementary_t(hopf: HopfHn, x: ElementaryCochain) -> ElementaryCochain:
    """Cyclic operator, transported from ``C(H_n, C_delta)``."""
    y = c_delta_complex(hopf).cyclic_op(x.to_hopf_cochain(), x.degree)
    return ElementaryCochain.from_hopf_cochain(y, x.degree)


# ----------------------------------------------------------------------
# cup products
def equivariant_cup(model: EquivariantModel, x: TwistedCochain) -> TwistedCochain:
    """``chi_tau^eq``: the identity on the equivariant data, defined on invariant input only."""
    report = model.invariance_check(x)
    if not report.passed:
        raise ValueError(f"equivariant cup needs an invariant cochain ({report.witness})")
    return TwistedCochain(x.degree, {v: dict(t) for v, t in x.values.items() if t})


def shuffles(p: int, q: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """``(p, q)``-shuffles as 1-based value tuples ``(sigma(1), ..., sigma(p+q))`` with signs."""
    total = p + q
    for head in itertools.combinations(range(1, total + 1), p):
        tail = tuple(i for i in range(1, total + 1) if i not in head)
        sigma = head + tail
        yield sigma, permutation_sign(tuple(s - 1 for s in sigma))


def default_cup_sign(p: int, q: int) -> int:
    """Global sign in front of the shuffle sum (see the decisions ledger)."""
    return (-1) ** p


@dataclass
class ShuffleCup:
    """``x -> x cup phi`` for a fixed twisted cocycle ``phi``."""

    x_complex: HopfCyclicComplex
    phi: TwistedCochain
    sign: Callable[[int, int], int] = default_cup_sign
    _face_cache: dict = field(default_factory=dict, repr=False)

    @property
    def hopf(self) -> HopfHn:
        return self.x_complex.hopf

    def _faces_of_x(self, x: FreeVector, p: int, indices: tuple) -> FreeVector:
        key = (id(x), indices)
        if key not in self._face_cache:
            y, deg = x, p
            for i in indices:
                y = self.x_complex.coface(i, y, deg)
                deg += 1
            self._face_cache[key] = (x, y)
        return self._face_cache[key][1]

    def _merge(self, v, args: tuple, i: int) -> dict:
        """The face ``i`` of a cochain on the algebra, pulled back to its arguments."""
        last = len(args) - 1
        if i < last:
            return {(v, args[:i] + (args[i] + args[i + 1],) + args[i + 2:]): 1}
        out: dict = {}
        hopf = self.hopf
        for (u, w), c in self.x_complex.module.coaction(v).items():
            for s, cs in hopf.antipode_mono(u).items():
                for moved, cm in apply_operator(hopf, s, args[last]).items():
                    accumulate(out, (w, (moved + args[0],) + args[1:last]), c * cs * cm)
        return out

    def _evaluate_phi(self, v, args: tuple) -> dict:
        """``phi(v)(B_0, ..., B_k)`` as trace words."""
        hopf = self.hopf
        out: dict = {}
        for legs, c in self.phi.value(v).items():
            partial: dict = {args[0]: c}
            for op, arg in zip(legs, args[1:]):
                applied = apply_operator(hopf, op, arg)
                nxt: dict = {}
                for prefix, cp in partial.items():
                    for tail, ct in applied.items():
                        accumulate(nxt, prefix + tail, cp * ct)
                partial = nxt
            for word, cw in partial.items():
                accumulate(out, word, cw)
        return out

    def __call__(self, x: FreeVector, p: int) -> ElementaryCochain:
        for (v, legs) in x.keys():
            if len(legs) != p:
                raise ValueError(f"cochain leg count {len(legs)} does not match degree {p}")
        k = self.phi.degree
        words: dict = {}
        for sigma, sgn in shuffles(p, k):
            bar = tuple(s - 1 for s in sigma)
            y = self._faces_of_x(x, p, bar[p:])
            terms: dict = {}
            for (v, legs), c in y.raw.items():
                args = (((0, ONE),),) + tuple(((j + 1, leg),) for j, leg in enumerate(legs))
                accumulate(terms, (v, args), c)
            for i in reversed(bar[:p]):
                nxt: dict = {}
                for (v, args), c in terms.items():
                    for key, c2 in self._merge(v, args, i).items():
                        accumulate(nxt, key, c * c2)
                terms = nxt
            for (v, args), c in terms.items():
                for word, cw in self._evaluate_phi(v, args).items():
                    accumulate(words, word, sgn * c * cw)
        result = reduce_combination(self.hopf, words, p + k)
        return result.scale(self.sign(p, k))


def shuffle_cup(x: FreeVector, p: int, phi: TwistedCochain, x_complex: HopfCyclicComplex,
                sign: Callable[[int, int], int] = default_cup_sign) -> ElementaryCochain:
    """``chi_phi(x)`` for ``x`` in ``C^p(K, V)`` and a twisted cocycle ``phi``."""
    return ShuffleCup(x_complex, phi, sign)(x, p)
