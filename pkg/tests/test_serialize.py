from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclochar import lab
from cyclochar.hopf import HopfHn, delta_gen, x_gen, y_gen
from cyclochar.linalg import FreeVector
from cyclochar.serialize import (
    Emitted,
    SerializationError,
    emit,
    generator_token,
    parse,
    parse_generator,
    parse_monomial,
    to_latex,
)
from cyclochar.tasks import tensor_with_unit

H2 = HopfHn(2)
GENS = H2.x_generators() + H2.y_generators() + H2.delta_generators(1) + H2.delta_generators(2)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(bool)
monomials = st.lists(st.sampled_from(GENS), max_size=3).map(lambda g: tuple(sorted(g)))
v_monos = st.lists(st.integers(0, 3), max_size=2).map(lambda w: tuple(sorted(w)))
wedges = st.sets(st.integers(0, 3), max_size=4).map(lambda w: tuple(sorted(w)))


@st.composite
def emitted(draw):
    kind = draw(st.sampled_from(["elementary", "tensor", "twisted", "cochain", "weil"]))
    degree = draw(st.integers(0, 3))
    if kind in ("elementary", "tensor"):
        key = st.lists(monomials, min_size=degree, max_size=degree).map(tuple)
    elif kind in ("twisted", "cochain"):
        key = st.tuples(v_monos, st.lists(monomials, min_size=degree, max_size=degree).map(tuple))
    else:
        key = st.tuples(wedges, v_monos)
    data = draw(st.dictionaries(key, coeffs, max_size=5))
    return Emitted(kind, degree, 2, FreeVector(data))


@given(emitted(), st.sampled_from(["text", "json"]))
@settings(max_examples=80, deadline=None)
def test_round_trip(e, fmt):
    back = parse(emit(e, fmt), fmt)
    assert (back.kind, back.degree, back.n, back.vector) == (e.kind, e.degree, e.n, e.vector)


@given(emitted())
@settings(max_examples=30, deadline=None)
def test_json_is_stable_sorted(e):
    terms = json.loads(emit(e, "json"))["terms"]
    assert [t["legs"] for t in terms] == sorted(t["legs"] for t in terms)


def test_generator_tokens():
    for g in GENS:
        assert parse_generator(generator_token(g)) == g
    assert generator_token(delta_gen(1, 1, 2, 2)) == "d^1_{1,2,2}"
    assert generator_token(y_gen(1, 2)) == "Y_1^2"
    with pytest.raises(SerializationError):
        parse_generator("d^1_{2,1}")
    with pytest.raises(SerializationError):
        parse_generator("Z_1")
    with pytest.raises(SerializationError):
        parse_monomial(["Y_1^1", "d^1_{1,1}"])


def test_tf_latex():
    tf = tensor_with_unit(lab.transverse_fundamental(1), 1)
    assert to_latex(tf) == r"1\otimes X\otimes Y - 1\otimes Y\otimes X - 1\otimes \delta_1 Y\otimes Y"


def test_codim1_phi_text_round_trip():
    phi = lab.codim1_phi()
    e = Emitted("twisted", 1, 1, phi.as_vector())
    text = emit(e, "text")
    assert text.splitlines()[3:] == ["1 | 1 | X_1", "-1 | R^1_1 | d^1_{1,1}"]
    assert parse(text, "text").vector == e.vector


def test_errors():
    with pytest.raises(SerializationError):
        Emitted("nonsense", 0, 1, FreeVector())
    with pytest.raises(SerializationError):
        parse("kind: tensor\n", "text")
    with pytest.raises(SerializationError):
        parse("", "latex")
    dup = {"kind": "tensor", "n": 1, "degree": 0, "terms": [{"coeff": "1", "legs": [[]]}, {"coeff": "2", "legs": [[]]}]}
    with pytest.raises(SerializationError):
        parse(json.dumps(dup), "json")
    assert to_latex(Emitted("tensor", 0, 1, FreeVector())) == "0"


def test_x_token():
    assert generator_token(x_gen(2)) == "X_2"
