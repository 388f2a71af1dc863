"""The Connes-Moscovici Hopf algebra ``H_n`` in a PBW normal form.

Generators are encoded as tuples whose first entry fixes the PBW block:

* ``(0, i, lowers)``: the derivative generator ``delta^i_{lowers}``; ``lowers``
  is a sorted tuple of length at least two. The first two lower indices are
  symmetric, and the deeper ones are obtained by repeatedly bracketing with
  ``X``; the sorted tuple names the canonical choice of that bracketing order.
* ``(1, i, j)``: the ``gl_n`` generator ``Y_i^j``.
* ``(2, k)``: the translation generator ``X_k``.

A monomial is a non-decreasing tuple of generators (delta block, then ``Y``,
then ``X``), and the empty tuple is the unit. Elements are :class:`FreeVector`
objects over monomials and tensors are :class:`FreeVector` objects over tuples
of monomials. Indices run from 1 to ``n``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .linalg import FreeVector, Scalar, accumulate

Generator = tuple
Monomial = tuple
ONE: Monomial = ()

DELTA, YGEN, XGEN = 0, 1, 2


def delta_gen(i: int, *lowers: int) -> Generator:
    """Canonical generator ``delta^i_{lowers}`` (only valid when the order is canonical)."""
    return (DELTA, i, tuple(sorted(lowers)))


def y_gen(i: int, j: int) -> Generator:
    return (YGEN, i, j)


def x_gen(k: int) -> Generator:
    return (XGEN, k)


def _add_into(target: dict, source: dict, scale: Scalar = 1) -> None:
    for key, coeff in source.items():
        accumulate(target, key, coeff * scale)


@dataclass
class HopfHn:
    """Structure maps of ``H_n`` with memoised normal form and coproduct."""

    n: int
    _mul_cache: dict = field(default_factory=dict, repr=False)
    _adx_cache: dict = field(default_factory=dict, repr=False)
    _ady_cache: dict = field(default_factory=dict, repr=False)
    _cop_gen_cache: dict = field(default_factory=dict, repr=False)
    _cop_cache: dict = field(default_factory=dict, repr=False)
    _iter_cop_cache: dict = field(default_factory=dict, repr=False)
    _antipode_gen_cache: dict = field(default_factory=dict, repr=False)
    _antipode_cache: dict = field(default_factory=dict, repr=False)
    _twisted_cache: dict = field(default_factory=dict, repr=False)

    # ------------------------------------------------------------------
    # generators
    @property
    def indices(self) -> range:
        return range(1, self.n + 1)

    def y_generators(self) -> list[Generator]:
        return [y_gen(i, j) for i in self.indices for j in self.indices]

    def x_generators(self) -> list[Generator]:
        return [x_gen(k) for k in self.indices]

    def delta_generators(self, depth: int = 1) -> list[Generator]:
        """Canonical ``delta`` generators with ``depth + 1`` lower indices."""
        out = []
        for i in self.indices:
            for lowers in itertools.combinations_with_replacement(self.indices, depth + 1):
                out.append((DELTA, i, lowers))
        return out

    # ------------------------------------------------------------------
    # brackets between generators, values are dicts over monomials
    def _ad_x(self, l: int, gen: Generator) -> dict:
        """``[X_l, delta]`` as a polynomial in delta generators."""
        key = (l, gen)
        cached = self._adx_cache.get(key)
        if cached is not None:
            return cached
        _, i, lowers = gen
        j, k = lowers[0], lowers[1]
        rest = lowers[2:]
        result: dict = {}
        if l >= k:
            result[((DELTA, i, (j, k) + tuple(sorted(rest + (l,)))),)] = 1
        else:
            # [X_l, delta^i_{jk}] rewritten through the Bianchi identity, then
            # the remaining X brackets are applied as derivations.
            base: dict = {}
            accumulate(base, ((DELTA, i, tuple(sorted((j, l))) + (k,)),), 1)
            for s in self.indices:
                accumulate(base, _sorted_mono((DELTA, s, tuple(sorted((j, k)))), (DELTA, i, tuple(sorted((s, l))))), -1)
                accumulate(base, _sorted_mono((DELTA, s, tuple(sorted((j, l)))), (DELTA, i, tuple(sorted((s, k))))), 1)
            for m in rest:
                base = self.ad_x_poly(m, base)
            result = base
        self._adx_cache[key] = result
        return result

    def ad_x_poly(self, l: int, poly: dict) -> dict:
        """Apply ``[X_l, -]`` as a derivation to a polynomial in delta generators."""
        out: dict = {}
        for mono, coeff in poly.items():
            for pos, gen in enumerate(mono):
                others = mono[:pos] + mono[pos + 1:]
                for m2, c2 in self._ad_x(l, gen).items():
                    accumulate(out, tuple(sorted(others + m2)), coeff * c2)
        return out

    def _ad_y(self, ygen: Generator, gen: Generator) -> dict:
        """``[Y_p^q, delta]`` as a polynomial in delta generators."""
        key = (ygen, gen)
        cached = self._ady_cache.get(key)
        if cached is not None:
            return cached
        _, p, q = ygen
        _, i, lowers = gen
        result: dict = {}
        if len(lowers) == 2:
            j, k = lowers
            if q == j:
                accumulate(result, ((DELTA, i, tuple(sorted((p, k)))),), 1)
            if q == k:
                accumulate(result, ((DELTA, i, tuple(sorted((j, p)))),), 1)
            if i == p:
                accumulate(result, ((DELTA, q, lowers),), -1)
        else:
            # Jacobi: [Y, [X_m, D]] = [[Y, X_m], D] + [X_m, [Y, D]].
            m = lowers[-1]
            inner = (DELTA, i, lowers[:-1])
            if q == m:
                _add_into(result, self._ad_x(p, inner))
            _add_into(result, self.ad_x_poly(m, self._ad_y(ygen, inner)))
        self._ady_cache[key] = result
        return result

    def bracket(self, a: Generator, b: Generator) -> dict:
        """``a b - b a`` for generators with ``a > b``, as a dict over monomials."""
        ka, kb = a[0], b[0]
        if ka == DELTA:
            return {}
        if ka == YGEN:
            if kb == DELTA:
                return self._ad_y(a, b)
            _, i, j = a
            _, k, l = b
            out: dict = {}
            if j == k:
                accumulate(out, ((YGEN, i, l),), 1)
            if i == l:
                accumulate(out, ((YGEN, k, j),), -1)
            return out
        if kb == DELTA:
            return self._ad_x(a[1], b)
        if kb == YGEN:
            _, i, j = b
            return {((XGEN, i),): -1} if j == a[1] else {}
        return {}

    # ------------------------------------------------------------------
    # multiplication
    def _rmul(self, mono: Monomial, gen: Generator) -> dict:
        """Normal form of ``mono * gen``."""
        if not mono or mono[-1] <= gen:
            return {mono + (gen,): 1}
        key = (mono, gen)
        cached = self._mul_cache.get(key)
        if cached is not None:
            return cached
        last = mono[-1]
        head = mono[:-1]
        out: dict = {}
        for m1, c1 in self._rmul(head, gen).items():
            _add_into(out, self._rmul(m1, last), c1)
        comm = self.bracket(last, gen)
        for word, c in comm.items():
            _add_into(out, self.mul_word(head, word), c)
        self._mul_cache[key] = out
        return out

    def mul_word(self, mono: Monomial, word: Sequence[Generator]) -> dict:
        """Normal form of ``mono`` times the generators of ``word`` in order."""
        cur: dict = {mono: 1}
        for gen in word:
            nxt: dict = {}
            for m, c in cur.items():
                _add_into(nxt, self._rmul(m, gen), c)
            cur = nxt
        return cur

    def mul_mono(self, a: Monomial, b: Monomial) -> dict:
        if not b:
            return {a: 1}
        if not a:
            return {b: 1}
        return self.mul_word(a, b)

    def multiply(self, x: FreeVector, y: FreeVector) -> FreeVector:
        out: dict = {}
        for a, ca in x.raw.items():
            for b, cb in y.raw.items():
                _add_into(out, self.mul_mono(a, b), ca * cb)
        return FreeVector._from_clean(out)

    def normal_form(self, word: Sequence[Generator]) -> FreeVector:
        """Normal form of an arbitrary word in the generators."""
        return FreeVector._from_clean(dict(self.mul_word((), tuple(word))))

    def element(self, *words: tuple[Scalar, Sequence[Generator]]) -> FreeVector:
        out: dict = {}
        for coeff, word in words:
            _add_into(out, self.mul_word((), tuple(word)), coeff)
        return FreeVector._from_clean(out)

    # ------------------------------------------------------------------
    # tensor helpers
    def tensor_mul_raw(self, x: dict, y: dict) -> dict:
        """Leg-wise product of two tensors of the same width."""
        out: dict = {}
        for ka, ca in x.items():
            for kb, cb in y.items():
                legs = [self.mul_mono(a, b) for a, b in zip(ka, kb)]
                coeff = ca * cb
                for combo in itertools.product(*(leg.items() for leg in legs)):
                    c = coeff
                    for _, cc in combo:
                        c *= cc
                    accumulate(out, tuple(m for m, _ in combo), c)
        return out

    def tensor_multiply(self, x: FreeVector, y: FreeVector) -> FreeVector:
        return FreeVector._from_clean(self.tensor_mul_raw(x.raw, y.raw))

    # ------------------------------------------------------------------
    # coproduct, counit, antipode
    def _coproduct_gen(self, gen: Generator) -> dict:
        cached = self._cop_gen_cache.get(gen)
        if cached is not None:
            return cached
        g = (gen,)
        kind = gen[0]
        if kind == YGEN or (kind == DELTA and len(gen[2]) == 2):
            out = {(g, ONE): 1, (ONE, g): 1}
        elif kind == XGEN:
            k = gen[1]
            out = {(g, ONE): 1, (ONE, g): 1}
            for i in self.indices:
                for j in self.indices:
                    accumulate(out, (((DELTA, i, tuple(sorted((j, k)))),), ((YGEN, i, j),)), 1)
        else:
            _, i, lowers = gen
            dx = self._coproduct_gen((XGEN, lowers[-1]))
            dd = self._coproduct_gen((DELTA, i, lowers[:-1]))
            out = self.tensor_mul_raw(dx, dd)
            _add_into(out, self.tensor_mul_raw(dd, dx), -1)
        self._cop_gen_cache[gen] = out
        return out

    def coproduct_mono(self, mono: Monomial) -> dict:
        """``Delta`` of a monomial, as a dict over pairs of monomials."""
        if not mono:
            return {(ONE, ONE): 1}
        cached = self._cop_cache.get(mono)
        if cached is not None:
            return cached
        if len(mono) == 1:
            out = self._coproduct_gen(mono[0])
        else:
            out = self.tensor_mul_raw(self.coproduct_mono(mono[:-1]), self._coproduct_gen(mono[-1]))
        self._cop_cache[mono] = out
        return out

    def coproduct(self, x: FreeVector) -> FreeVector:
        out: dict = {}
        for m, c in x.raw.items():
            _add_into(out, self.coproduct_mono(m), c)
        return FreeVector._from_clean(out)

    def iterated_coproduct_mono(self, mono: Monomial, legs: int) -> dict:
        """``Delta^{(legs-1)}`` of a monomial into ``legs`` tensor factors."""
        if legs == 1:
            return {(mono,): 1}
        key = (mono, legs)
        cached = self._iter_cop_cache.get(key)
        if cached is not None:
            return cached
        out: dict = {}
        for (a, b), c in self.coproduct_mono(mono).items():
            for rest, c2 in self.iterated_coproduct_mono(b, legs - 1).items():
                accumulate(out, (a,) + rest, c * c2)
        self._iter_cop_cache[key] = out
        return out

    @staticmethod
    def counit_mono(mono: Monomial) -> int:
        return 1 if not mono else 0

    def counit(self, x: FreeVector) -> Scalar:
        return x.coeff(ONE)

    @staticmethod
    def character_mono(mono: Monomial) -> int:
        """The modular character: trace on ``Y``, zero on ``X`` and ``delta``."""
        for gen in mono:
            if gen[0] != YGEN or gen[1] != gen[2]:
                return 0
        return 1

    def _antipode_gen(self, gen: Generator) -> dict:
        cached = self._antipode_gen_cache.get(gen)
        if cached is not None:
            return cached
        # From m(S (x) id)Delta = eta epsilon, peeling off the term gen (x) 1.
        out: dict = {}
        for (a, b), c in self._coproduct_gen(gen).items():
            if a == (gen,) and b == ONE:
                continue
            sa = self.antipode_mono(a)
            for m, cm in sa.items():
                _add_into(out, self.mul_mono(m, b), -c * cm)
        self._antipode_gen_cache[gen] = out
        return out

    def antipode_mono(self, mono: Monomial) -> dict:
        if not mono:
            return {ONE: 1}
        cached = self._antipode_cache.get(mono)
        if cached is not None:
            return cached
        # S is an anti-homomorphism.
        out: dict = {ONE: 1}
        for gen in reversed(mono):
            nxt: dict = {}
            for m, c in out.items():
                for m2, c2 in self._antipode_gen(gen).items():
                    _add_into(nxt, self.mul_mono(m, m2), c * c2)
            out = nxt
        self._antipode_cache[mono] = out
        return out

    def antipode(self, x: FreeVector) -> FreeVector:
        out: dict = {}
        for m, c in x.raw.items():
            _add_into(out, self.antipode_mono(m), c)
        return FreeVector._from_clean(out)

    def twisted_antipode_mono(self, mono: Monomial) -> dict:
        """``S_delta(h) = delta(h_(1)) S(h_(2))``."""
        cached = self._twisted_cache.get(mono)
        if cached is not None:
            return cached
        out: dict = {}
        for (a, b), c in self.coproduct_mono(mono).items():
            d = self.character_mono(a)
            if d:
                _add_into(out, self.antipode_mono(b), c * d)
        self._twisted_cache[mono] = out
        return out

    def twisted_antipode(self, x: FreeVector) -> FreeVector:
        out: dict = {}
        for m, c in x.raw.items():
            _add_into(out, self.twisted_antipode_mono(m), c)
        return FreeVector._from_clean(out)

    # ------------------------------------------------------------------
    # actions used by the cyclic operators
    def diagonal_action_raw(self, mono: Monomial, tensor: dict) -> dict:
        """``h . (k^1 (x) ... (x) k^q) = h_(1) k^1 (x) ... (x) h_(q) k^q``."""
        if not tensor:
            return {}
        width = len(next(iter(tensor)))
        out: dict = {}
        for split, c in self.iterated_coproduct_mono(mono, width).items():
            prod = self.tensor_mul_raw({split: c}, tensor)
            _add_into(out, prod)
        return out

    def ad_mono(self, z: Generator, mono: Monomial) -> dict:
        """Commutator ``[Z, m]`` of a generator with a monomial."""
        out: dict = {}
        _add_into(out, self.mul_mono((z,), mono))
        _add_into(out, self.mul_mono(mono, (z,)), -1)
        return out

    # ------------------------------------------------------------------
    # the bicrossed coaction of F on U
    def u_coaction_gen(self, gen: Generator) -> dict:
        """``X_k -> 1 (x) X_k + delta^i_{jk} (x) Y_i^j`` and ``Y -> 1 (x) Y``."""
        g = (gen,)
        out = {(ONE, g): 1}
        if gen[0] == XGEN:
            k = gen[1]
            for i in self.indices:
                for j in self.indices:
                    accumulate(out, (((DELTA, i, tuple(sorted((j, k)))),), ((YGEN, i, j),)), 1)
        return out

    def iterated_coaction(self, gen: Generator, depth: int, width: int) -> dict:
        """``Z_(-depth) (x) ... (x) Z_(-1) (x) Z_(0) (x) 1 ...`` padded to ``width`` legs."""
        current: dict = {((gen,),): 1}
        for _ in range(depth):
            nxt: dict = {}
            for key, c in current.items():
                # the last leg always holds a single generator of U
                head, last = key[:-1], key[-1]
                for (f, u), c2 in self.u_coaction_gen(last[0]).items():
                    accumulate(nxt, head + (f, u), c * c2)
            current = nxt
        out: dict = {}
        for key, c in current.items():
            accumulate(out, key + (ONE,) * (width - len(key)), c)
        return out


def _sorted_mono(*gens: Generator) -> Monomial:
    return tuple(sorted(gens))


# ----------------------------------------------------------------------
# sampling helpers for property tests
def random_monomial_word(hopf: HopfHn, rng: random.Random, max_len: int = 3, max_depth: int = 1) -> list[Generator]:
    """A random word in the generators, not necessarily in normal form."""
    pool = hopf.y_generators() + hopf.x_generators()
    for d in range(1, max_depth + 1):
        pool += hopf.delta_generators(d)
    return [rng.choice(pool) for _ in range(rng.randint(0, max_len))]


def random_element(hopf: HopfHn, rng: random.Random, terms: int = 3, max_len: int = 3, max_depth: int = 1) -> FreeVector:
    words = [(rng.randint(-3, 3), random_monomial_word(hopf, rng, max_len, max_depth)) for _ in range(terms)]
    return hopf.element(*words)


def mpi_check(hopf: HopfHn, elements: Iterable[FreeVector]) -> bool:
    """Check ``S_delta^2 = id`` (with the trivial group-like) on the given elements."""
    for x in elements:
        if hopf.twisted_antipode(hopf.twisted_antipode(x)) != x:
            return False
    return True


@dataclass
class AxiomResult:
    name: str
    passed: bool
    witness: str = ""


def hopf_axiom_suite(hopf: HopfHn, seed: int, samples: int = 20, max_len: int = 3, max_depth: int = 2) -> list[AxiomResult]:
    """Associativity, bialgebra and antipode axioms, and ``S_delta^2 = id`` on random words."""
    rng = random.Random(seed)
    results: list[AxiomResult] = []
    checks: dict[str, str] = {}

    def note(name: str, ok: bool, witness: list) -> None:
        if not ok and name not in checks:
            checks[name] = repr(witness)

    names = ("associativity", "normal form of concatenation", "coproduct multiplicative", "coassociativity",
             "counit", "antipode", "twisted antipode involution")
    for _ in range(samples):
        a, b, c = (random_monomial_word(hopf, rng, max_len, max_depth) for _ in range(3))
        x, y, z = (hopf.normal_form(w) for w in (a, b, c))
        note(names[0], hopf.multiply(hopf.multiply(x, y), z) == hopf.multiply(x, hopf.multiply(y, z)), [a, b, c])
        note(names[1], hopf.multiply(x, y) == hopf.normal_form(a + b), [a, b])
        note(names[2], hopf.coproduct(hopf.multiply(x, y)) == hopf.tensor_multiply(hopf.coproduct(x), hopf.coproduct(y)), [a, b])
        for mono in x.keys():
            left: dict = {}
            for (p, q), cc in hopf.coproduct_mono(mono).items():
                for (p1, p2), c1 in hopf.coproduct_mono(p).items():
                    accumulate(left, (p1, p2, q), cc * c1)
            right: dict = {}
            for (p, q), cc in hopf.coproduct_mono(mono).items():
                for (q1, q2), c1 in hopf.coproduct_mono(q).items():
                    accumulate(right, (p, q1, q2), cc * c1)
            note(names[3], left == right, [mono])
            counit_l: dict = {}
            antipode_l: dict = {}
            for (p, q), cc in hopf.coproduct_mono(mono).items():
                if not p:
                    accumulate(counit_l, q, cc)
                for s, cs in hopf.antipode_mono(p).items():
                    _add_into(antipode_l, hopf.mul_mono(s, q), cc * cs)
            note(names[4], counit_l == {mono: 1}, [mono])
            eps = {ONE: 1} if not mono else {}
            note(names[5], antipode_l == eps, [mono])
        note(names[6], mpi_check(hopf, [x]), [a])
    for name in names:
        results.append(AxiomResult(name, name not in checks, checks.get(name, "")))
    return results
