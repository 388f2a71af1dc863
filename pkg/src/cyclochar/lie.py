"""``gl_n`` data, the truncated symmetric coefficients and the Weil complex.

The basis of ``gl_n`` is ``Y_i^j`` ordered lexicographically in ``(i, j)``;
basis index ``a`` stands for ``(i, j) = divmod(a, n) + 1``. ``R^a`` and
``theta^a`` are the dual basis elements of ``Y_a``. Polynomials in the ``R``'s
are keyed by tuples of basis indices: sorted tuples for the truncated
symmetric algebra, and plain words for the ordered lift used when coefficients
of a cochain ansatz must be kept apart.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .hopf import YGEN, HopfHn
from .linalg import FreeVector, accumulate, rank, vectors_to_matrix

Wedge = tuple
VMono = tuple


def wedge_sort(word: Sequence[int]) -> tuple[int, Wedge] | None:
    """Sort a wedge word; return ``(sign, sorted)`` or ``None`` on a repeat."""
    if len(set(word)) != len(word):
        return None
    arr = list(word)
    sign = 1
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                sign = -sign
    return sign, tuple(arr)


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def contract(index: int, word: Wedge) -> tuple[int, Wedge] | None:
    """Left contraction of a dual basis element against a sorted wedge word."""
    for pos, a in enumerate(word):
        if a == index:
            return (-1) ** pos, word[:pos] + word[pos + 1:]
    return None


@dataclass
class GlData:
    """Structure constants of ``gl_n`` in the basis ``Y_i^j``."""

    n: int
    ordered: bool = False
    structure: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.structure = {}
        for a in range(self.dim):
            for b in range(self.dim):
                i, j = self.pair(a)
                k, l = self.pair(b)
                out: dict = {}
                if j == k:
                    accumulate(out, self.index(i, l), 1)
                if i == l:
                    accumulate(out, self.index(k, j), -1)
                self.structure[(a, b)] = out
        self._check_jacobi()

    @property
    def dim(self) -> int:
        return self.n * self.n

    def pair(self, a: int) -> tuple[int, int]:
        i, j = divmod(a, self.n)
        return i + 1, j + 1

    def index(self, i: int, j: int) -> int:
        return (i - 1) * self.n + (j - 1)

    def y_generator(self, a: int) -> tuple:
        i, j = self.pair(a)
        return (YGEN, i, j)

    def label(self, a: int) -> str:
        i, j = self.pair(a)
        return f"Y_{i}^{j}"

    def const(self, e: int, a: int, b: int) -> int:
        """``C^e_{ab}`` with ``[Y_a, Y_b] = C^e_{ab} Y_e``."""
        return self.structure[(a, b)].get(e, 0)

    def trace_character(self, a: int) -> int:
        """``Tr(ad Y_a)``, identically zero for ``gl_n``."""
        return sum(self.const(b, a, b) for b in range(self.dim))

    def _check_jacobi(self) -> None:
        for a, b, c in itertools.product(range(self.dim), repeat=3):
            total: dict = {}
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                for e, ce in self.structure[(y, z)].items():
                    for f, cf in self.structure[(x, e)].items():
                        accumulate(total, f, ce * cf)
            if total:
                raise ValueError("Jacobi identity fails")

    # ------------------------------------------------------------------
    # the coefficient space V
    def v_key(self, word: Iterable[int]) -> VMono:
        return tuple(word) if self.ordered else tuple(sorted(word))

    def v_basis(self) -> list[VMono]:
        out: list[VMono] = []
        for d in range(self.n + 1):
            if self.ordered:
                out.extend(itertools.product(range(self.dim), repeat=d))
            else:
                out.extend(itertools.combinations_with_replacement(range(self.dim), d))
        return out

    def v_multiply(self, v: VMono, word: Sequence[int]) -> VMono | None:
        """``v R^{word}``, or ``None`` when the degree is truncated away."""
        if len(v) + len(word) > self.n:
            return None
        return self.v_key(v + tuple(word))

    def coadjoint_generator(self, a: int, c: int) -> dict:
        """``R^a . Y_c = sum_b C^a_{cb} R^b``, that is ``(R^a . Z)(W) = R^a([Z, W])``."""
        out: dict = {}
        for b in range(self.dim):
            coeff = self.const(a, c, b)
            if coeff:
                accumulate(out, b, coeff)
        return out

    def coadjoint_mono(self, v: VMono, c: int) -> dict:
        """Right coadjoint action of ``Y_c`` on a monomial, as a derivation."""
        out: dict = {}
        for pos, a in enumerate(v):
            for b, coeff in self.coadjoint_generator(a, c).items():
                accumulate(out, self.v_key(v[:pos] + (b,) + v[pos + 1:]), coeff)
        return out

    def coadjoint_action(self, vec: FreeVector, c: int) -> FreeVector:
        out: dict = {}
        for v, coeff in vec.raw.items():
            for w, c2 in self.coadjoint_mono(v, c).items():
                accumulate(out, w, coeff * c2)
        return FreeVector._from_clean(out)

    def act_by_word(self, v: VMono, word: Sequence[int]) -> dict:
        """Right action of a product ``Y_{w1} ... Y_{wk}`` on a monomial."""
        cur: dict = {v: 1}
        for c in word:
            nxt: dict = {}
            for m, coeff in cur.items():
                for m2, c2 in self.coadjoint_mono(m, c).items():
                    accumulate(nxt, m2, coeff * c2)
            cur = nxt
        return cur

    def y_word_index(self, mono: tuple) -> list[int]:
        """Basis indices of a monomial made of ``Y`` generators only."""
        out = []
        for gen in mono:
            if gen[0] != YGEN:
                raise ValueError("not a word in the Y generators")
            out.append(self.index(gen[1], gen[2]))
        return out

    def koszul_coaction_mono(self, v: VMono, hopf: HopfHn) -> dict:
        """``sum_k 1/k! Y_{b1}...Y_{bk} (x) v R^{b1}...R^{bk}`` keyed by ``(K-monomial, V-monomial)``."""
        out: dict = {}
        for k in range(self.n - len(v) + 1):
            weight = Fraction(1, math.factorial(k))
            for word in itertools.product(range(self.dim), repeat=k):
                target = self.v_multiply(v, word)
                if target is None:
                    continue
                gens = tuple(self.y_generator(b) for b in word)
                for m, c in hopf.mul_word((), gens).items():
                    accumulate(out, (m, target), weight * c)
        return out

    def koszul_coaction(self, vec: FreeVector, hopf: HopfHn) -> FreeVector:
        out: dict = {}
        for v, coeff in vec.raw.items():
            for key, c in self.koszul_coaction_mono(v, hopf).items():
                accumulate(out, key, coeff * c)
        return FreeVector._from_clean(out)

    # named polynomials
    def r(self, i: int, j: int) -> int:
        """Index of ``R^i_j``, the dual of ``Y_j^i``."""
        return self.index(j, i)

    def c1(self) -> FreeVector:
        return FreeVector({(self.index(i, i),): 1 for i in range(1, self.n + 1)})

    def c1_squared(self) -> FreeVector:
        out: dict = {}
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                accumulate(out, self.v_key((self.index(i, i), self.index(j, j))), 1)
        return FreeVector._from_clean(out)

    def c2(self) -> FreeVector:
        """``R^1_2 R^2_1`` (defined for ``n = 2``)."""
        return FreeVector({self.v_key((self.r(1, 2), self.r(2, 1))): 1})


# ----------------------------------------------------------------------
# the truncated Weil complex and the Lie chain complex
def _wedge_front(index: int, word: Wedge) -> tuple[int, Wedge] | None:
    return wedge_sort((index,) + word)


def ce_coboundary(gl: GlData, vec: FreeVector) -> FreeVector:
    """``d_CE(beta (x) v) = d_dR(beta) (x) v - theta^i ^ beta (x) v.Y_i``."""
    out: dict = {}
    for (word, v), coeff in vec.raw.items():
        for pos, a in enumerate(word):
            sign_pos = (-1) ** pos
            rest_before, rest_after = word[:pos], word[pos + 1:]
            for j in range(gl.dim):
                for k in range(j + 1, gl.dim):
                    c = gl.const(a, j, k)
                    if not c:
                        continue
                    res = wedge_sort(rest_before + (j, k) + rest_after)
                    if res is not None:
                        accumulate(out, (res[1], v), -c * sign_pos * res[0] * coeff)
        for i in range(gl.dim):
            res = _wedge_front(i, word)
            if res is None:
                continue
            for w, c in gl.coadjoint_mono(v, i).items():
                accumulate(out, (res[1], w), -res[0] * c * coeff)
    return FreeVector._from_clean(out)


def koszul_contraction(gl: GlData, vec: FreeVector) -> FreeVector:
    """``d_K(alpha (x) v) = iota(Y_i) alpha (x) v R^i``."""
    out: dict = {}
    for (word, v), coeff in vec.raw.items():
        for i in range(gl.dim):
            res = contract(i, word)
            if res is None:
                continue
            target = gl.v_multiply(v, (i,))
            if target is not None:
                accumulate(out, (res[1], target), res[0] * coeff)
    return FreeVector._from_clean(out)


def weil_differential(gl: GlData, vec: FreeVector) -> FreeVector:
    return ce_coboundary(gl, vec) + koszul_contraction(gl, vec)


def ce_boundary(gl: GlData, vec: FreeVector) -> FreeVector:
    """Chevalley-Eilenberg boundary on ``wedge^q g (x) V`` with the coadjoint action."""
    out: dict = {}
    for (word, v), coeff in vec.raw.items():
        q = len(word)
        for i in range(q):
            rest = word[:i] + word[i + 1:]
            for w, c in gl.coadjoint_mono(v, word[i]).items():
                accumulate(out, (rest, w), (-1) ** i * c * coeff)
        for i in range(q):
            for j in range(i + 1, q):
                rest = tuple(x for t, x in enumerate(word) if t not in (i, j))
                for e, c in gl.structure[(word[i], word[j])].items():
                    res = wedge_sort((e,) + rest)
                    if res is not None:
                        accumulate(out, (res[1], v), (-1) ** (i + j) * c * res[0] * coeff)
    return FreeVector._from_clean(out)


def koszul_boundary(gl: GlData, vec: FreeVector) -> FreeVector:
    """``d_K(e (x) v) = Y_i ^ e (x) v R^i``."""
    out: dict = {}
    for (word, v), coeff in vec.raw.items():
        for i in range(gl.dim):
            res = _wedge_front(i, word)
            target = gl.v_multiply(v, (i,))
            if res is not None and target is not None:
                accumulate(out, (res[1], target), res[0] * coeff)
    return FreeVector._from_clean(out)


def chain_boundary(gl: GlData, vec: FreeVector) -> FreeVector:
    return ce_boundary(gl, vec) + koszul_boundary(gl, vec)


def weil_basis(gl: GlData) -> list[tuple[Wedge, VMono]]:
    words = [w for d in range(gl.dim + 1) for w in itertools.combinations(range(gl.dim), d)]
    return [(w, v) for w in words for v in gl.v_basis()]


def weil_degree(key: tuple[Wedge, VMono]) -> int:
    return len(key[0]) + 2 * len(key[1])


def poincare_duality(gl: GlData, vec: FreeVector) -> FreeVector:
    """Contract ``theta^{a1} ^ ... ^ theta^{ap}`` into ``Y_0 ^ ... ^ Y_{N-1}``.

    The first factor of the dual word is contracted first. Output keys are
    ``(wedge word, V-monomial)`` in the chain complex.
    """
    top = tuple(range(gl.dim))
    out: dict = {}
    for (word, v), coeff in vec.raw.items():
        sign, cur = 1, top
        for a in word:
            res = contract(a, cur)
            if res is None:
                cur = None
                break
            sign *= res[0]
            cur = res[1]
        if cur is not None:
            accumulate(out, (cur, v), sign * coeff)
    return FreeVector._from_clean(out)


def weil_element(gl: GlData, theta_words: Iterable[tuple[int, Sequence[int]]], poly: FreeVector) -> FreeVector:
    """``(sum c theta^{word}) (x) poly`` with sign-normalised wedge words."""
    out: dict = {}
    for c, word in theta_words:
        res = wedge_sort(tuple(word))
        if res is None:
            continue
        for v, cv in poly.raw.items():
            accumulate(out, (res[1], v), c * res[0] * cv)
    return FreeVector._from_clean(out)


def vey_classes(gl: GlData) -> dict[str, FreeVector]:
    """The listed cohomology classes of the truncated Weil complex (``n`` = 1, 2)."""
    one = FreeVector({(): 1})
    if gl.n == 1:
        return {"1": weil_element(gl, [(1, ())], one), "theta R": weil_element(gl, [(1, (0,))], FreeVector({(0,): 1}))}
    if gl.n != 2:
        raise ValueError("listed classes exist for n = 1, 2 only")
    u1 = [(1, (gl.index(1, 1),)), (1, (gl.index(2, 2),))]
    u2 = [(1, (gl.index(1, 1), gl.index(1, 2), gl.index(2, 1)))]
    omega = [(1, (gl.index(1, 1), gl.index(1, 2), gl.index(2, 1), gl.index(2, 2)))]
    c1sq, c2 = gl.c1_squared(), gl.c2()
    return {
        "1": weil_element(gl, [(1, ())], one),
        "c1^2 u1": weil_element(gl, u1, c1sq),
        "c2 u1": weil_element(gl, u1, c2),
        "c2 u2": weil_element(gl, u2, c2),
        "c1^2 omega": weil_element(gl, omega, c1sq),
        "c2 omega": weil_element(gl, omega, c2),
    }


@dataclass
class WeilCohomology:
    betti: dict[int, int]
    classes_closed: bool
    classes_independent: bool
    total_dimension: int
    class_degrees: dict[str, int]
    d_squared_zero: bool = True
    closed_by_class: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.classes_closed and self.classes_independent and sum(self.betti.values()) == len(self.class_degrees)


def weil_cohomology(n: int) -> WeilCohomology:
    """Betti numbers by total degree and a check of the listed classes."""
    gl = GlData(n)
    basis = weil_basis(gl)
    by_degree: dict[int, list] = {}
    for key in basis:
        by_degree.setdefault(weil_degree(key), []).append(key)
    top = max(by_degree)
    ranks: dict[int, int] = {}
    images: dict[int, list[FreeVector]] = {}
    for deg in range(top + 1):
        keys = by_degree.get(deg, [])
        cols = by_degree.get(deg + 1, [])
        imgs = [weil_differential(gl, FreeVector({k: 1})) for k in keys]
        images[deg + 1] = imgs
        mat, _ = vectors_to_matrix(imgs, cols) if cols else ([], [])
        ranks[deg] = rank(mat) if cols else 0
    betti = {}
    for deg in range(top + 1):
        dim = len(by_degree.get(deg, []))
        b = dim - ranks[deg] - ranks.get(deg - 1, 0)
        if b:
            betti[deg] = b
    d_squared_zero = all(
        weil_differential(gl, img).is_zero() for imgs in images.values() for img in imgs
    )
    classes = vey_classes(gl)
    closed_by_class = {name: weil_differential(gl, c).is_zero() for name, c in classes.items()}
    closed = all(closed_by_class.values())
    independent = True
    degrees = {}
    grouped: dict[int, list[FreeVector]] = {}
    for name, c in classes.items():
        deg = weil_degree(next(iter(c.raw)))
        degrees[name] = deg
        grouped.setdefault(deg, []).append(c)
    for deg, cs in grouped.items():
        keys = by_degree[deg]
        im = [v for v in images.get(deg, []) if v]
        m_im, _ = vectors_to_matrix(im, keys) if im else ([], keys)
        m_all, _ = vectors_to_matrix(im + cs, keys)
        if rank(m_all) != (rank(m_im) if im else 0) + len(cs):
            independent = False
    return WeilCohomology(betti, closed, independent, len(basis), degrees, d_squared_zero, closed_by_class)


# ----------------------------------------------------------------------
# anti-Yetter-Drinfeld checks over the Lie algebra
@dataclass
class CheckReport:
    name: str
    passed: bool
    witness: str = ""

    def __bool__(self) -> bool:
        return self.passed


def lie_sayd_check(
    gl: GlData,
    action: Callable[[VMono, int], dict] | None = None,
    coaction: Callable[[VMono], dict] | None = None,
    character: Callable[[int], int] | None = None,
) -> CheckReport:
    """Check the anti-Yetter-Drinfeld identity and unimodular stability.

    ``coaction(v)`` returns the degree-one part as a dict over ``(a, w)``,
    meaning ``Y_a (x) w``. Defaults are the coadjoint action, the Koszul
    coaction and the trace character.
    """
    act = action or gl.coadjoint_mono
    def default_coaction(v: VMono) -> dict:
        out: dict = {}
        for a in range(gl.dim):
            t = gl.v_multiply(v, (a,))
            if t is not None:
                accumulate(out, (a, t), 1)
        return out
    coact = coaction or default_coaction
    char = character or gl.trace_character
    for v in gl.v_basis():
        for x in range(gl.dim):
            lhs: dict = {}
            for w, c in act(v, x).items():
                for key, c2 in coact(w).items():
                    accumulate(lhs, key, c * c2)
            rhs: dict = {}
            for (a, w), c in coact(v).items():
                for w2, c2 in act(w, x).items():
                    accumulate(rhs, (a, w2), c * c2)
                for e, c3 in gl.structure[(a, x)].items():
                    accumulate(rhs, (e, w), c * c3)
            if lhs != rhs:
                return CheckReport("anti-Yetter-Drinfeld", False, f"v={v}, X={gl.label(x)}")
        stab: dict = {}
        for (a, w), c in coact(v).items():
            for w2, c2 in act(w, a).items():
                accumulate(stab, w2, c * c2)
            accumulate(stab, w, -char(a) * c)
        if stab:
            return CheckReport("unimodular stability", False, f"v={v}")
    return CheckReport("lie SAYD", True)
