"""JSON encoding for elements, matrices, tensors and homomorphisms.

Every payload carries `group` and `ring` spec strings, so a document can be
decoded without any other context.
"""

from __future__ import annotations

import json
import math
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from .errors import StructureMismatchError
from .group import FiniteAbelianGroup, parse_group_spec
from .groupring import GroupRing, GroupRingElement, make_coefficient_ring
from .hom_iso import ModuleHom
from .rings import CoefficientRing
from .tower import MatrixVG, TensorMG

Serializable = Union[GroupRingElement, MatrixVG, TensorMG, ModuleHom]

_FIELDS = {
    GroupRingElement: ("element", "coeffs"),
    MatrixVG: ("matrix", "entries"),
    TensorMG: ("tensor", "slices"),
    ModuleHom: ("hom", "alpha"),
}
_DEPTH = {"element": 1, "matrix": 2, "tensor": 3, "hom": 3}


def _encode_array(ring: CoefficientRing, values: np.ndarray) -> Any:
    if not isinstance(values, np.ndarray):
        return ring.encode(values)
    if values.ndim == 0:
        return ring.encode(values[()])
    return [_encode_array(ring, v) for v in values]


def _decode_array(ring: CoefficientRing, obj: Any, depth: int) -> np.ndarray:
    out = ring.zeros(_shape_of(obj, depth))
    for idx in np.ndindex(out.shape):
        node = obj
        for i in idx:
            node = node[i]
        out[idx] = ring.decode(node)
    return out


def _shape_of(obj: Any, depth: int) -> tuple:
    shape = []
    node = obj
    for _ in range(depth):
        shape.append(len(node))
        node = node[0] if len(node) else []
    return tuple(shape)


def _scalar_ring(ring: CoefficientRing) -> CoefficientRing:
    while isinstance(ring, GroupRing):
        ring = ring.base
    return ring


def to_payload(obj: Serializable) -> Dict[str, Any]:
    """
    JSON-ready dict for one object.

    Float and complex rings add a `tolerance` header so the decoded ring
    compares the way the original did.
    """
    kind, field = _FIELDS[type(obj)]
    payload: Dict[str, Any] = {"type": kind, "group": obj.group.spec, "ring": obj.ring.spec}
    tolerance = getattr(_scalar_ring(obj.ring), "tolerance", None)
    if tolerance is not None:
        payload["tolerance"] = tolerance
    payload[field] = _encode_array(obj.ring, getattr(obj, field))
    return payload


def _payload_kind(payload: Dict[str, Any]) -> Tuple[type, str, str]:
    declared = payload.get("type")
    if declared is not None:
        for cls, (kind, field) in _FIELDS.items():
            if kind == declared:
                if field not in payload:
                    raise StructureMismatchError(f"{kind} payload has no {field!r} field")
                return cls, kind, field
        raise StructureMismatchError(f"unknown payload type {declared!r}")
    present = [(cls, kind, field) for cls, (kind, field) in _FIELDS.items() if field in payload]
    if len(present) != 1:
        fields = ", ".join(field for _, (_, field) in _FIELDS.items())
        raise StructureMismatchError(f"payload without 'type' needs exactly one of: {fields}")
    return present[0]


def from_payload(payload: Dict[str, Any]) -> Serializable:
    """
    Rebuild an object from `to_payload` output.

    `type` may be left out when exactly one of the value fields
    (coeffs, entries, slices, alpha) is present.

    Raises:
        StructureMismatchError: unknown or ambiguous type, or array of the wrong shape
        InvalidGroupSpecError, InvalidRingSpecError: bad header
    """
    cls, kind, field = _payload_kind(payload)
    group: FiniteAbelianGroup = parse_group_spec(payload["group"])
    ring = make_coefficient_ring(payload["ring"], payload.get("tolerance"))
    values = _decode_array(ring, payload[field], _DEPTH[kind])
    return cls(group, ring, values)


def dumps(obj: Serializable, indent: Optional[int] = None) -> str:
    return json.dumps(to_payload(obj), indent=indent)


def loads(text: str) -> Serializable:
    return from_payload(json.loads(text))


def _finite(node: Any) -> Any:
    """Replace inf and nan with None, which JSON writes as null."""
    if isinstance(node, float) and not math.isfinite(node):
        return None
    if isinstance(node, dict):
        return {k: _finite(v) for k, v in node.items()}
    if isinstance(node, (list, tuple)):
        return [_finite(v) for v in node]
    return node


def report_json(document: Dict[str, Any]) -> str:
    """Stable text for CLI output: fixed key order, no timing fields, non-finite numbers as null."""
    return json.dumps(_finite(document), indent=2, sort_keys=False, allow_nan=False)
