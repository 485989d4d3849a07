"""Tests for serialize module."""
import json

import numpy as np
import pytest

from core.errors import InvalidGroupSpecError, StructureMismatchError
from core.group import make_group
from core.groupring import from_coeffs, make_coefficient_ring, random_element
from core.hom_iso import hom_from_tensor
from core.models import AxiomReport, SuiteResult
from core.rings import make_ring
from core.serialize import dumps, from_payload, loads, report_json, to_payload
from core.tower import matrix_from_rows, random_matrix, random_tensor


def test_element_payload_layout():
    """Test an element over Q encodes coefficients as fraction strings."""
    g = make_group([3])
    a = from_coeffs(g, make_ring("q"), [1, "1/2", -3])
    payload = to_payload(a)
    assert payload == {"type": "element", "group": "Z3", "ring": "q", "coeffs": ["1/1", "1/2", "-3/1"]}
    assert from_payload(payload) == a


def test_matrix_payload_is_row_major():
    """Test matrix entries nest as rows."""
    m = matrix_from_rows(make_group([2]), make_ring("zmod:5"), [[1, 2], [3, 4]])
    payload = json.loads(dumps(m))
    assert payload["entries"] == [[1, 2], [3, 4]]
    assert payload["ring"] == "zmod:5"


@pytest.mark.parametrize("ring_spec", ["q", "zmod:7", "f64", "c64"])
def test_tensor_survives_text(ring_spec):
    """Test a tensor decodes to an equal tensor for every scalar ring."""
    ring = make_ring(ring_spec)
    t = random_tensor(make_group([2, 2]), ring, np.random.default_rng(0))
    assert loads(dumps(t)) == t


def test_hom_and_nested_element():
    """Test homs and nested group-ring coefficients decode intact."""
    rng = np.random.default_rng(1)
    g = make_group([2])
    hom = hom_from_tensor(random_tensor(g, make_ring("q"), rng))
    assert loads(dumps(hom)) == hom

    nested = make_coefficient_ring("Z2[q]")
    a = random_element(make_group([3]), nested, rng)
    text = dumps(a)
    assert json.loads(text)["ring"] == "Z2[q]"
    assert loads(text) == a


def test_complex_entries_are_pairs():
    """Test complex values encode as [re, im]."""
    m = matrix_from_rows(make_group([1]), make_ring("c64"), [[1 + 2j]])
    assert to_payload(m)["entries"] == [[[1.0, 2.0]]]


def test_bad_payloads():
    """Test unknown types, wrong shapes and bad headers raise."""
    m = random_matrix(make_group([2]), make_ring("q"), np.random.default_rng(2))
    payload = to_payload(m)
    with pytest.raises(StructureMismatchError):
        from_payload(dict(payload, type="cube"))
    with pytest.raises(StructureMismatchError):
        from_payload(dict(payload, group="Z3"))
    with pytest.raises(InvalidGroupSpecError):
        from_payload(dict(payload, group="Z0"))


def test_report_json_keeps_key_order():
    """Test report documents keep insertion order."""
    text = report_json({"config": {"seed": 1}, "suites": [], "pass": True})
    assert list(json.loads(text)) == ["config", "suites", "pass"]
    assert text.startswith("{\n  \"config\"")


def _no_constants(name):
    raise ValueError(f"non-standard JSON constant {name}")


def test_report_json_writes_non_finite_as_null():
    """Test an infinite residual from a rejected sample becomes null, not Infinity."""
    rejected = AxiomReport.from_outcomes("t_inverse", [(True, 0.0), (False, float("inf"))])
    doc = {"suites": [SuiteResult("transform", [rejected]).to_dict()], "nan": float("nan"), "pass": False}
    text = report_json(doc)
    parsed = json.loads(text, parse_constant=_no_constants)
    assert parsed["suites"][0]["checks"][0]["max_residual"] is None
    assert parsed["suites"][0]["checks"][0]["failures"] == 1
    assert parsed["nan"] is None


@pytest.mark.parametrize(
    "obj",
    [
        from_coeffs(make_group([3]), make_ring("q"), [1, "1/2", -3]),
        matrix_from_rows(make_group([2]), make_ring("zmod:5"), [[1, 2], [3, 4]]),
        random_tensor(make_group([2]), make_ring("f64"), np.random.default_rng(3)),
        hom_from_tensor(random_tensor(make_group([2]), make_ring("q"), np.random.default_rng(4))),
    ],
)
def test_payload_type_is_inferred_from_its_field(obj):
    """Test a payload without 'type' decodes from whichever value field it carries."""
    payload = to_payload(obj)
    del payload["type"]
    decoded = from_payload(payload)
    assert type(decoded) is type(obj)
    assert decoded == obj


def test_payload_without_type_must_be_unambiguous():
    """Test a payload with no 'type' and zero or two value fields is rejected."""
    with pytest.raises(StructureMismatchError):
        from_payload({"group": "Z2", "ring": "q"})
    with pytest.raises(StructureMismatchError):
        from_payload({"group": "Z2", "ring": "q", "coeffs": ["1/1", "0/1"], "entries": [["1/1", "0/1"], ["0/1", "1/1"]]})
    with pytest.raises(StructureMismatchError):
        from_payload({"type": "matrix", "group": "Z2", "ring": "q", "coeffs": ["1/1", "0/1"]})


@pytest.mark.parametrize("spec", ["f64", "c64", "Z2[f64]"])
def test_tolerance_travels_with_the_ring(spec):
    """Test a non-default tolerance survives dumps and loads."""
    ring = make_coefficient_ring(spec, 1e-6)
    a = random_element(make_group([3]), ring, np.random.default_rng(5))
    payload = json.loads(dumps(a))
    assert payload["tolerance"] == 1e-6
    decoded = loads(dumps(a))
    assert decoded.ring == ring
    assert decoded == a


def test_exact_payload_has_no_tolerance():
    """Test exact rings omit the tolerance header."""
    assert "tolerance" not in to_payload(from_coeffs(make_group([2]), make_ring("q"), [1, 2]))
