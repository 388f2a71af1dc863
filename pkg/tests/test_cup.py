from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclochar import lab
from cyclochar.cup import (
    ElementaryCochain,
    RawTraceExpression,
    ShuffleCup,
    elementary_b,
    elementary_t,
    equivariant_cup,
    reduce_to_elementary,
    shuffle_cup,
    shuffles,
)
from cyclochar.cyclic import EquivariantModel, TwistedCochain, kv_complex
from cyclochar.hopf import HopfHn, delta_gen, x_gen, y_gen
from cyclochar.lie import GlData, permutation_sign
from cyclochar.linalg import FreeVector

H1, GL1 = HopfHn(1), GlData(1)
X, Y, D1 = (x_gen(1),), (y_gen(1, 1),), (delta_gen(1, 1, 1),)
D1Y = next(iter(H1.mul_mono(D1, Y)))
YY = next(iter(H1.mul_mono(Y, Y)))


def ec(*terms) -> ElementaryCochain:
    (_, legs), *_ = terms
    return ElementaryCochain(len(legs), FreeVector({legs: c for c, legs in terms}))


def test_reduce_to_elementary_examples():
    assert reduce_to_elementary(H1, RawTraceExpression(((0, Y), (1, D1)))) == ec((-1, (D1Y,)))
    assert reduce_to_elementary(H1, RawTraceExpression(((0, ()), (1, D1)))) == ec((1, (D1,)))
    assert reduce_to_elementary(H1, RawTraceExpression(((0, X), (1, ())))) == ec((-1, (X,)), (1, (D1Y,)))


def test_reduce_rotates_slot_zero_to_the_front():
    word = ((1, D1), (0, ()))
    assert reduce_to_elementary(H1, RawTraceExpression(word)) == ec((1, (D1,)))
    with pytest.raises(ValueError):
        reduce_to_elementary(H1, RawTraceExpression(((1, D1), (2, Y))))


def test_elementary_operators():
    gv = ec((1, (D1,)))
    assert elementary_t(H1, gv) == gv.scale(-1)
    assert elementary_b(H1, gv).is_zero()
    tf = lab.reference_tf1()
    assert elementary_b(H1, tf).is_zero()
    assert elementary_t(H1, tf) == tf


def test_equivariant_cup():
    model = EquivariantModel(GL1, H1)
    phi = lab.codim1_phi()
    assert equivariant_cup(model, phi) == phi
    assert equivariant_cup(model, TwistedCochain(1, {})).is_zero()
    with pytest.raises(ValueError):
        equivariant_cup(model, TwistedCochain(1, {(): {(Y,): 1}}))


def test_shuffle_cup_codim1_examples():
    cx = kv_complex(GL1, H1)
    phi = lab.codim1_phi()
    r = FreeVector({((0,), ()): 1})
    assert shuffle_cup(r, 0, phi, cx) == ec((-1, (D1,)))
    y_class = lab.hcK_cochains(1)[1].cochain
    half = Fraction(1, 2)
    expected = ElementaryCochain(2, FreeVector({
        (X, Y): 1, (Y, X): -1, (YY, D1): half, (D1, YY): half, (Y, D1Y): 1,
    }))
    assert shuffle_cup(y_class, 1, phi, cx) == expected
    assert shuffle_cup(FreeVector(), 1, phi, cx).is_zero()


def test_codim1_correction_sign():
    assert lab.codim1_tf_correction_sign() == -1


@given(st.integers(0, 4), st.integers(0, 4))
def test_shuffle_enumeration(p, q):
    found = list(shuffles(p, q))
    assert len(found) == math.comb(p + q, p)
    for sigma, sign in found:
        assert sorted(sigma) == list(range(1, p + q + 1))
        assert list(sigma[:p]) == sorted(sigma[:p]) and list(sigma[p:]) == sorted(sigma[p:])
        assert sign == permutation_sign([s - 1 for s in sigma])


@given(st.fractions(min_value=-3, max_value=3, max_denominator=3), st.fractions(min_value=-3, max_value=3, max_denominator=3))
@settings(max_examples=20, deadline=None)
def test_shuffle_cup_is_linear(a, b):
    cup = ShuffleCup(kv_complex(GL1, H1), lab.codim1_phi())
    y_class = lab.hcK_cochains(1)[1].cochain
    other = FreeVector({((), (Y,)): 1})
    assert cup(y_class.scale(a) + other.scale(b), 1) == cup(y_class, 1).scale(a) + cup(other, 1).scale(b)


def test_cup_output_is_a_cocycle_for_cocycle_input():
    cup = ShuffleCup(kv_complex(GL1, H1), lab.codim1_phi())
    for g in lab.hcK_cochains(1):
        chi = cup(g.cochain, g.degree)
        assert elementary_b(H1, chi).is_zero()
        assert elementary_t(H1, chi) == chi.scale((-1) ** chi.degree)


def test_degree_mismatch_is_rejected():
    with pytest.raises(ValueError):
        ElementaryCochain(2, FreeVector({(X,): 1}))
