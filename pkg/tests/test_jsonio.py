from fractions import Fraction as F

import pytest
from hypothesis import given

from plthompson.classify import decide_oracle, decide_structural, ubiquity_witness
from plthompson.construct import decompose, perturb, PerturbationStep
from plthompson.jsonio import (
    FormatError, classification_report, decode_map, decode_nice_spec, decode_rational,
    decode_step, decode_trace, dumps, encode_map, encode_rational, encode_step, encode_trace,
    witness_report,
)
from plthompson.plmap import make_plmap
from plthompson.words import X0, X1

from conftest import pl_maps, rationals_01


def bp(*pairs):
    return {"breakpoints": [{"x": x, "y": y} for x, y in pairs]}


@given(rationals_01)
def test_rational_round_trip(q):
    assert decode_rational(encode_rational(q)) == q


@given(pl_maps())
def test_map_round_trip(f):
    assert decode_map(encode_map(f)) == f


def test_x1_document():
    assert encode_map(X1) == bp(("0/1", "0/1"), ("1/2", "1/2"), ("5/8", "3/4"), ("3/4", "7/8"), ("1/1", "1/1"))


def test_integers_need_a_denominator():
    with pytest.raises(FormatError):
        decode_rational("1")


def test_non_lowest_terms():
    with pytest.raises(FormatError):
        decode_rational("2/4")
    assert decode_rational("2/4", strict=False) == F(1, 2)


@pytest.mark.parametrize("bad", [3, "1/0", "a/b", "1.5", " / "])
def test_malformed_rational(bad):
    with pytest.raises(FormatError):
        decode_rational(bad)


def test_collinear_point_needs_normalize():
    doc = bp(("0/1", "0/1"), ("1/2", "1/2"), ("1/1", "1/1"))
    with pytest.raises(FormatError):
        decode_map(doc)
    assert decode_map(doc, normalize=True).is_identity()


def test_non_monotone_map():
    with pytest.raises(FormatError):
        decode_map(bp(("0/1", "0/1"), ("1/4", "3/4"), ("3/4", "1/4"), ("1/1", "1/1")))


def test_missing_fields():
    with pytest.raises(FormatError):
        decode_map({"points": []})
    with pytest.raises(FormatError):
        decode_map({"breakpoints": [{"x": "0/1"}]})


def test_word_document():
    assert decode_map({"word": "x0 x1"}) == X0 * X1


def test_step_round_trip():
    h = make_plmap([(0, 0), (F(1, 2), F(1, 2)), (F(9, 16), F(5, 8)), (F(3, 4), F(3, 4)), (1, 1)])
    st = PerturbationStep(0, h, 1, 0, s=F(7, 8))
    back = decode_step(encode_step(st))
    assert back == st
    assert perturb(X0, X1, back) == h * X1


def test_bad_step_case():
    doc = encode_step(PerturbationStep(0, X1, 1, 0))
    doc["case"] = "sideways"
    with pytest.raises(FormatError):
        decode_step(doc)


def test_trace_round_trip():
    tr = decompose(X0, X1)
    doc = encode_trace(tr)
    assert doc["steps"] == [] and doc["nice_f1"] == encode_map(X1)
    nice, steps = decode_trace(doc)
    assert nice == X1 and steps == []


def test_nice_spec():
    spec = decode_nice_spec({"f0": encode_map(X0), "choices": [{"orbital": 0, "point": "3/4"}]})
    assert spec.f0 == X0 and spec.choices[0].point == F(3, 4) and spec.choices[0].filler is None


def test_classification_report():
    doc = classification_report(decide_structural(X0, X1), decide_oracle(X0, X1))
    assert doc["decision"] == "standard" and doc["oracle"] is True
    (orb,) = doc["orbitals"]
    assert orb["p"] == "3/4" and orb["r"] == "3/4" and orb["nice"] is True
    assert orb["categories"] == ["main"]


def test_witness_report():
    doc = witness_report(ubiquity_witness(X0, X1))
    assert doc["W"] == {"lo": "0/1", "hi": "1/1"} and doc["end"] == "near_hi"


def test_dumps_is_stable():
    assert dumps(encode_map(X0)) == dumps(encode_map(X0))
    assert dumps({"a": [1, 2]}) == '{\n  "a": [1, 2]\n}\n'
