"""Hopf-cyclic complexes with coefficients and the equivariant cochain model.

``C^q(H, M) = M (x) H^{(x) q}`` is stored as a :class:`FreeVector` keyed by
``(m, (h^1, ..., h^q))`` where ``m`` is a basis key of the coefficient module
and each ``h^i`` is a PBW monomial. Two coefficient modules are wired in: the
one-dimensional module ``C_delta`` (key ``()``) over ``H_n`` and the truncated
symmetric algebra ``V`` over ``K = U(gl_n)``.

The equivariant complex is modelled by :class:`TwistedCochain`, a map from
basis monomials of ``V`` to tensors in ``H^{(x) q}``; its value at ``v``
encodes the cochain ``v (x) a_0 (x) ... (x) a_q -> tau(a_0 h^1(a_1) ... h^q(a_q))``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .hopf import ONE, YGEN, HopfHn, random_monomial_word
from .lie import CheckReport, GlData, permutation_sign, wedge_sort
from .linalg import FreeVector, accumulate


def _add(target: dict, source: dict, scale=1) -> None:
    for k, c in source.items():
        accumulate(target, k, c * scale)


# ----------------------------------------------------------------------
# coefficient modules
@dataclass
class CoefficientModule:
    """Right module, left comodule data on a basis of keys."""

    name: str
    basis: list
    action: Callable[[object, tuple], dict]
    coaction: Callable[[object], dict]


def c_delta_module(hopf: HopfHn) -> CoefficientModule:
    """``C_delta``: the action is the modular character, the coaction trivial."""
    def action(m, mono):
        d = hopf.character_mono(mono)
        return {m: d} if d else {}
    return CoefficientModule("C_delta", [()], action, lambda m: {(ONE, m): 1})


def v_module(gl: GlData, hopf: HopfHn) -> CoefficientModule:
    """``V`` over ``U(gl_n)``: coadjoint action and Koszul coaction."""
    def action(v, mono):
        return gl.act_by_word(v, gl.y_word_index(mono))
    cache: dict = {}
    def coaction(v):
        if v not in cache:
            cache[v] = gl.koszul_coaction_mono(v, hopf)
        return cache[v]
    return CoefficientModule("V", gl.v_basis(), action, coaction)


# ----------------------------------------------------------------------
# the complex C(H, M)
@dataclass
class HopfCyclicComplex:
    hopf: HopfHn
    module: CoefficientModule

    def coface(self, i: int, x: FreeVector, q: int) -> FreeVector:
        if not 0 <= i <= q + 1:
            raise IndexError("coface index out of range")
        out: dict = {}
        for (m, legs), c in x.raw.items():
            if i == 0:
                accumulate(out, (m, (ONE,) + legs), c)
            elif i <= q:
                for (a, b), c2 in self.hopf.coproduct_mono(legs[i - 1]).items():
                    accumulate(out, (m, legs[: i - 1] + (a, b) + legs[i:]), c * c2)
            else:
                for (u, m0), c2 in self.module.coaction(m).items():
                    accumulate(out, (m0, legs + (u,)), c * c2)
        return FreeVector._from_clean(out)

    def codegeneracy(self, j: int, x: FreeVector, q: int) -> FreeVector:
        if not 0 <= j <= q - 1:
            raise IndexError("codegeneracy index out of range")
        out: dict = {}
        for (m, legs), c in x.raw.items():
            if not legs[j]:
                accumulate(out, (m, legs[:j] + legs[j + 1:]), c)
        return FreeVector._from_clean(out)

    def cyclic_op(self, x: FreeVector, q: int) -> FreeVector:
        hopf = self.hopf
        out: dict = {}
        for (m, legs), c in x.raw.items():
            for (u, m0), c2 in self.module.coaction(m).items():
                if q == 0:
                    for m1, c3 in self.module.action(m0, u).items():
                        accumulate(out, (m1, ()), c * c2 * c3)
                    continue
                rest = {legs[1:] + (u,): c * c2}
                for (h1, h2), c3 in hopf.coproduct_mono(legs[0]).items():
                    acted = self.module.action(m0, h1)
                    if not acted:
                        continue
                    for s, c4 in hopf.antipode_mono(h2).items():
                        moved = hopf.diagonal_action_raw(s, rest)
                        for m1, c5 in acted.items():
                            for k, c6 in moved.items():
                                accumulate(out, (m1, k), c3 * c4 * c5 * c6)
        return FreeVector._from_clean(out)

    def hochschild_b(self, x: FreeVector, q: int) -> FreeVector:
        out: dict = {}
        for i in range(q + 2):
            _add(out, self.coface(i, x, q).raw, (-1) ** i)
        return FreeVector._from_clean(out)

    def connes_B(self, x: FreeVector, q: int) -> FreeVector:
        if q == 0:
            return FreeVector()
        y = self.codegeneracy(q - 1, self.cyclic_op(x, q), q)
        out: dict = {}
        cur = y
        for i in range(q):
            _add(out, cur.raw, (-1) ** ((q - 1) * i))
            cur = self.cyclic_op(cur, q - 1)
        return FreeVector._from_clean(out)


def c_delta_complex(hopf: HopfHn) -> HopfCyclicComplex:
    return HopfCyclicComplex(hopf, c_delta_module(hopf))


def kv_complex(gl: GlData, hopf: HopfHn) -> HopfCyclicComplex:
    return HopfCyclicComplex(hopf, v_module(gl, hopf))


def hopf_sayd_check(hopf: HopfHn, module: CoefficientModule, generators: Sequence[tuple]) -> CheckReport:
    """Check ``nabla(m.h) = S(h_(3)) m_(-1) h_(1) (x) m_(0).h_(2)`` and stability."""
    for m in module.basis:
        for gen in generators:
            mono = (gen,)
            lhs: dict = {}
            for m1, c in module.action(m, mono).items():
                _add(lhs, module.coaction(m1), c)
            rhs: dict = {}
            for (h1, h2, h3), c in hopf.iterated_coproduct_mono(mono, 3).items():
                for (u, m0), c2 in module.coaction(m).items():
                    acted = module.action(m0, h2)
                    if not acted:
                        continue
                    left: dict = {}
                    for s, cs in hopf.antipode_mono(h3).items():
                        for p, cp in hopf.mul_mono(s, u).items():
                            _add(left, hopf.mul_mono(p, h1), cs * cp)
                    for k, ck in left.items():
                        for m1, cm in acted.items():
                            accumulate(rhs, (k, m1), c * c2 * ck * cm)
            if lhs != rhs:
                return CheckReport("anti-Yetter-Drinfeld", False, f"m={m}, h={gen}")
        stab: dict = {}
        for (u, m0), c in module.coaction(m).items():
            _add(stab, module.action(m0, u), c)
        if stab != {m: 1}:
            return CheckReport("stability", False, f"m={m}")
    return CheckReport(f"SAYD {module.name}", True)


# ----------------------------------------------------------------------
# antisymmetrization and its left inverse
def antisymmetrize(gl: GlData, chain: FreeVector) -> FreeVector:
    """``v (x) Y_{a1} ^ ... ^ Y_{aq}`` to the signed sum over ``S_q`` of tensors."""
    out: dict = {}
    for (word, v), c in chain.raw.items():
        q = len(word)
        for perm in itertools.permutations(range(q)):
            legs = tuple((gl.y_generator(word[p]),) for p in perm)
            accumulate(out, (v, legs), permutation_sign(perm) * c)
    return FreeVector._from_clean(out)


def primitive_projection(hopf: HopfHn, gl: GlData, mono: tuple) -> dict:
    """Eulerian projection of a ``U(gl_n)`` monomial onto ``gl_n`` (basis indices)."""
    if not mono:
        return {}
    out: dict = {}
    for k in range(1, len(mono) + 1):
        weight = Fraction((-1) ** (k + 1), k)
        for split, c in hopf.iterated_coproduct_mono(mono, k).items():
            if any(not part for part in split):
                continue
            prod: dict = {ONE: 1}
            for part in split:
                nxt: dict = {}
                for m, cm in prod.items():
                    _add(nxt, hopf.mul_mono(m, part), cm)
                prod = nxt
            _add(out, prod, weight * c)
    result: dict = {}
    for m, c in out.items():
        if len(m) != 1:
            raise ArithmeticError("Eulerian projection left a non-primitive term")
        accumulate(result, gl.index(m[0][1], m[0][2]), c)
    return result


def mu(hopf: HopfHn, gl: GlData, cochain: FreeVector) -> FreeVector:
    """Project legs to ``gl_n``, wedge, and divide by ``q!``."""
    out: dict = {}
    for (v, legs), c in cochain.raw.items():
        q = len(legs)
        projections = [primitive_projection(hopf, gl, leg) for leg in legs]
        for combo in itertools.product(*(p.items() for p in projections)):
            res = wedge_sort(tuple(a for a, _ in combo))
            if res is None:
                continue
            coeff = Fraction(c * res[0], math.factorial(q))
            for _, ca in combo:
                coeff *= ca
            accumulate(out, (res[1], v), coeff)
    return FreeVector._from_clean(out)


# ----------------------------------------------------------------------
# the equivariant model
@dataclass
class TwistedCochain:
    """A ``g_0``-equivariant cochain as ``{V-monomial: tensor over H^{(x) q}}``."""

    degree: int
    values: dict = field(default_factory=dict)

    def value(self, v) -> dict:
        return self.values.get(v, {})

    def __add__(self, other: "TwistedCochain") -> "TwistedCochain":
        out = {v: dict(t) for v, t in self.values.items()}
        for v, t in other.values.items():
            cur = out.setdefault(v, {})
            _add(cur, t)
            if not cur:
                del out[v]
        return TwistedCochain(self.degree, out)

    def scale(self, s) -> "TwistedCochain":
        out = {}
        for v, t in self.values.items():
            d: dict = {}
            _add(d, t, s)
            if d:
                out[v] = d
        return TwistedCochain(self.degree, out)

    def __sub__(self, other: "TwistedCochain") -> "TwistedCochain":
        return self + other.scale(-1)

    def is_zero(self) -> bool:
        return all(not t for t in self.values.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwistedCochain):
            return NotImplemented
        return (self - other).is_zero()

    def restrict(self, degree: int) -> "TwistedCochain":
        """The component on the polynomial degree ``degree`` part of ``V``."""
        return TwistedCochain(self.degree, {v: t for v, t in self.values.items() if len(v) == degree and t})

    def as_vector(self) -> FreeVector:
        out: dict = {}
        for v, t in self.values.items():
            for k, c in t.items():
                accumulate(out, (v, k), c)
        return FreeVector._from_clean(out)


@dataclass
class EquivariantModel:
    """Operators on ``(V* (x) C_delta (x) H^{(x) q})^{g_0}``."""

    gl: GlData
    hopf: HopfHn

    def _coaction(self, v) -> dict:
        return self.gl.koszul_coaction_mono(v, self.hopf)

    def inner_coface(self, i: int, tensor: dict) -> dict:
        out: dict = {}
        for legs, c in tensor.items():
            if i == 0:
                accumulate(out, (ONE,) + legs, c)
            else:
                for (a, b), c2 in self.hopf.coproduct_mono(legs[i - 1]).items():
                    accumulate(out, legs[: i - 1] + (a, b) + legs[i:], c * c2)
        return out

    def last_coface(self, x: TwistedCochain, v) -> dict:
        out: dict = {}
        for (u, w), c in self._coaction(v).items():
            t = x.value(w)
            if not t:
                continue
            for s, cs in self.hopf.antipode_mono(u).items():
                for legs, c2 in t.items():
                    accumulate(out, legs + (s,), c * cs * c2)
        return out

    def coface(self, i: int, x: TwistedCochain) -> TwistedCochain:
        q = x.degree
        out = {}
        for v in self.gl.v_basis():
            if i <= q:
                val = self.inner_coface(i, x.value(v))
            else:
                val = self.last_coface(x, v)
            if val:
                out[v] = val
        return TwistedCochain(q + 1, out)

    def codegeneracy(self, j: int, x: TwistedCochain) -> TwistedCochain:
        out = {}
        for v, t in x.values.items():
            val: dict = {}
            for legs, c in t.items():
                if not legs[j]:
                    accumulate(val, legs[:j] + legs[j + 1:], c)
            if val:
                out[v] = val
        return TwistedCochain(x.degree - 1, out)

    def twisted_b(self, x: TwistedCochain) -> TwistedCochain:
        q = x.degree
        out = {}
        for v in self.gl.v_basis():
            val: dict = {}
            t = x.value(v)
            for i in range(q + 1):
                _add(val, self.inner_coface(i, t), (-1) ** i)
            _add(val, self.last_coface(x, v), (-1) ** (q + 1))
            if val:
                out[v] = val
        return TwistedCochain(q + 1, out)

    def twisted_t(self, x: TwistedCochain) -> TwistedCochain:
        q = x.degree
        hopf = self.hopf
        out = {}
        for v in self.gl.v_basis():
            val: dict = {}
            for (u, w), c in self._coaction(v).items():
                t = x.value(w)
                if not t:
                    continue
                for s, cs in hopf.antipode_mono(u).items():
                    for legs, c2 in t.items():
                        if q == 0:
                            if not s:
                                accumulate(val, (), c * cs * c2)
                            continue
                        rest = {legs[1:] + (s,): c * cs * c2}
                        for g, cg in hopf.twisted_antipode_mono(legs[0]).items():
                            _add(val, hopf.diagonal_action_raw(g, rest), cg)
            if val:
                out[v] = val
        return TwistedCochain(q, out)

    def twisted_B(self, x: TwistedCochain) -> TwistedCochain:
        q = x.degree
        if q == 0:
            return TwistedCochain(0, {})
        cur = self.codegeneracy(q - 1, self.twisted_t(x))
        total = TwistedCochain(q - 1, {})
        for i in range(q):
            total = total + cur.scale((-1) ** ((q - 1) * i))
            cur = self.twisted_t(cur)
        return total

    def invariance_check(self, x: TwistedCochain) -> CheckReport:
        """``x(w.Z) = (delta(Z) - ad_Z) x(w)`` for every ``Z = Y_c`` and basis ``w``."""
        gl, hopf = self.gl, self.hopf
        for c in range(gl.dim):
            z = gl.y_generator(c)
            dz = 1 if z[1] == z[2] else 0
            for w in gl.v_basis():
                lhs: dict = {}
                for w2, cw in gl.coadjoint_mono(w, c).items():
                    _add(lhs, x.value(w2), cw)
                rhs: dict = {}
                for legs, coeff in x.value(w).items():
                    accumulate(rhs, legs, dz * coeff)
                    for pos, leg in enumerate(legs):
                        for m, cm in hopf.ad_mono(z, leg).items():
                            accumulate(rhs, legs[:pos] + (m,) + legs[pos + 1:], -coeff * cm)
                if lhs != rhs:
                    return CheckReport("g0-invariance", False, f"Z={gl.label(c)}, v={w}")
        return CheckReport("g0-invariance", True)

    # the isomorphism with Hom_K(V, C_delta (x)_H H^{(x) q+1}) in normalised form
    def to_hom(self, x: TwistedCochain) -> dict:
        """``v -> x(v) (x)_H 1 (x) ...`` recorded as ``(v, (1, h^1, ..., h^q))``."""
        out: dict = {}
        for v, t in x.values.items():
            for legs, c in t.items():
                accumulate(out, (v, (ONE,) + legs), c)
        return out

    def from_hom(self, data: dict, degree: int) -> TwistedCochain:
        """Inverse of :meth:`to_hom`, moving ``h^0`` off by ``delta(h^0_(1)) S(h^0_(2))``."""
        values: dict = {}
        for (v, legs), c in data.items():
            h0, rest = legs[0], {legs[1:]: c}
            cur = values.setdefault(v, {})
            for g, cg in self.hopf.twisted_antipode_mono(h0).items():
                if degree == 0:
                    if not g:
                        _add(cur, rest, cg)
                else:
                    _add(cur, self.hopf.diagonal_action_raw(g, rest), cg)
        return TwistedCochain(degree, {v: t for v, t in values.items() if t})


# ----------------------------------------------------------------------
# randomized identity suites
@dataclass
class IdentityResult:
    name: str
    degree: int
    passed: bool
    witness: str = ""


def random_cochain(hopf: HopfHn, basis: Sequence, q: int, rng: random.Random, terms: int = 2,
                   max_len: int = 2, y_only: bool = False, normalized: bool = False) -> FreeVector:
    """Random element of ``M (x) H^{(x) q}`` with coefficients in ``-2..2``.

    With ``normalized`` every leg is a non-unit monomial, so the cochain lies
    in the normalized subcomplex where ``B`` is a differential.
    """
    out: dict = {}
    for _ in range(terms):
        m = rng.choice(list(basis))
        legs = []
        coeff = rng.randint(-2, 2) or 1
        for _ in range(q):
            if y_only:
                word = [rng.choice(hopf.y_generators()) for _ in range(rng.randint(0, max_len))]
            else:
                word = random_monomial_word(hopf, rng, max_len, 1)
            nf = hopf.mul_word((), tuple(word))
            mono = sorted(nf)[0] if nf else ONE
            while normalized and not mono:
                pool = hopf.y_generators() if y_only else hopf.y_generators() + hopf.x_generators()
                mono = (rng.choice(pool),)
            legs.append(mono)
        accumulate(out, (m, tuple(legs)), coeff)
    return FreeVector._from_clean(out)


def cocyclic_identity_suite(complex_: HopfCyclicComplex, max_degree: int, seed: int,
                            samples: int = 2, y_only: bool = False) -> list[IdentityResult]:
    """Check the cosimplicial, cyclic and ``b``/``B`` identities on random cochains."""
    rng = random.Random(seed)
    cx = complex_
    results: list[IdentityResult] = []

    def record(name, q, ok, witness=""):
        results.append(IdentityResult(name, q, bool(ok), "" if ok else witness))

    for q in range(max_degree + 1):
        for _ in range(samples):
            x = random_cochain(cx.hopf, cx.module.basis, q, rng, y_only=y_only)
            w = repr(x.terms()[:2])
            for j in range(q + 2):
                for i in range(j):
                    ok = cx.coface(j, cx.coface(i, x, q), q + 1) == cx.coface(i, cx.coface(j - 1, x, q), q + 1)
                    record(f"d_{j} d_{i} = d_{i} d_{j - 1}", q, ok, w)
            for i in range(1, q + 2):
                ok = cx.cyclic_op(cx.coface(i, x, q), q + 1) == cx.coface(i - 1, cx.cyclic_op(x, q), q + 1)
                record(f"t d_{i} = d_{i - 1} t", q, ok, w)
            record("t d_0 = d_{q+1}", q, cx.cyclic_op(cx.coface(0, x, q), q + 1) == cx.coface(q + 1, x, q), w)
            if q >= 1:
                for j in range(q):
                    for i in range(q + 2):
                        lhs = cx.codegeneracy(j, cx.coface(i, x, q), q + 1)
                        if i < j:
                            rhs = cx.coface(i, cx.codegeneracy(j - 1, x, q), q - 1) if j >= 1 else None
                        elif i in (j, j + 1):
                            rhs = x
                        else:
                            rhs = cx.coface(i - 1, cx.codegeneracy(j, x, q), q - 1)
                        if rhs is not None:
                            record(f"s_{j} d_{i}", q, lhs == rhs, w)
                for i in range(1, q):
                    ok = cx.cyclic_op(cx.codegeneracy(i, x, q), q - 1) == cx.codegeneracy(i - 1, cx.cyclic_op(x, q), q)
                    record(f"t s_{i} = s_{i - 1} t", q, ok, w)
                t2 = cx.cyclic_op(cx.cyclic_op(x, q), q)
                record("t s_0 = s_{q-1} t^2", q, cx.cyclic_op(cx.codegeneracy(0, x, q), q - 1) == cx.codegeneracy(q - 1, t2, q), w)
            cur = x
            for _ in range(q + 1):
                cur = cx.cyclic_op(cur, q)
            record("t^{q+1} = id", q, cur == x, w)
            bx = cx.hochschild_b(x, q)
            record("b^2 = 0", q, cx.hochschild_b(bx, q + 1).is_zero(), w)
            if q >= 1:
                # B is a differential on the normalized subcomplex
                xn = random_cochain(cx.hopf, cx.module.basis, q, rng, y_only=y_only, normalized=True)
                wn = repr(xn.terms()[:2])
                Bx = cx.connes_B(xn, q)
                record("B^2 = 0", q, cx.connes_B(Bx, q - 1).is_zero(), wn)
                bx = cx.hochschild_b(xn, q)
                record("bB + Bb = 0", q, (cx.hochschild_b(Bx, q - 1) + cx.connes_B(bx, q + 1)).is_zero(), wn)
    return results


def mu_antisym_suite(gl: GlData, hopf: HopfHn, max_degree: int, seed: int, samples: int = 3) -> list[IdentityResult]:
    """Check ``mu(antisymmetrize(x)) = x`` on random chains of ``V (x) wedge^q gl_n``."""
    rng = random.Random(seed)
    v_basis = list(gl.v_basis())
    results = []
    for q in range(min(max_degree, gl.dim) + 1):
        for _ in range(samples):
            data: dict = {}
            for _ in range(3):
                word = wedge_sort(tuple(rng.sample(range(gl.dim), q)))
                accumulate(data, (word[1], rng.choice(v_basis)), rng.randint(-3, 3) or 1)
            x = FreeVector(data)
            ok = mu(hopf, gl, antisymmetrize(gl, x)) == x
            results.append(IdentityResult("mu o antisym = id", q, ok, "" if ok else repr(x.terms()[:2])))
    return results
