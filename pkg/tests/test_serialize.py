from __future__ import annotations

import json

import pytest

from thetadeform.catalog import lookup
from thetadeform.coaction import builtin_spec, check_extension
from thetadeform.errors import ParseError
from thetadeform.serialize import (
    matrix_from_json,
    matrix_to_json,
    presentation_from_json,
    presentation_to_json,
    spec_from_json,
    spec_to_json,
)


@pytest.mark.parametrize("name", ["su:3", "su:4", "sphere:4", "torus:3"])
def test_presentation_round_trip(name):
    found = lookup(name)
    pres = getattr(found, "presentation", found)
    data = json.loads(json.dumps(presentation_to_json(pres)))
    assert presentation_from_json(data) == pres


def test_rationals_are_strings():
    pres = lookup("sphere:3", "12=1/3, 13=theta, 23=-2/7").substitute({"theta": 0})
    text = json.dumps(presentation_to_json(pres))
    assert '"1/3"' in text and '"-2/7"' in text
    data = json.loads(text)
    assert matrix_from_json(data["deformation_matrix"]) == pres.context.theta
    assert matrix_from_json(matrix_to_json(pres.context.theta)) == pres.context.theta


def test_bad_documents_are_rejected():
    with pytest.raises(ParseError):
        presentation_from_json({"generators": []})
    data = presentation_to_json(lookup("sphere:2"))
    data["dimension"] = 5
    with pytest.raises(ParseError):
        presentation_from_json(data)
    with pytest.raises(ParseError):
        spec_from_json({"H": "su:3"})


@pytest.mark.parametrize("name", ["su3-on-s5", "su2-on-su3"])
def test_spec_round_trip(name):
    spec = builtin_spec(name)
    again = spec_from_json(json.loads(json.dumps(spec_to_json(spec))))
    assert again.A == spec.A
    assert again.images == spec.images
    assert check_extension(again, structural=False).status == check_extension(spec, structural=False).status
