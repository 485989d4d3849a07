"""The group ring RG: formal sums over a finite abelian group.

A `GroupRing` is itself a `CoefficientRing`, so a group ring can sit under
another group ring. Nesting d levels gives the order-d commutative tensor ring
with no extra algebra: the outer convolution multiplies coefficients with the
inner ring's `mul`, which is again a convolution.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .errors import InvalidRingSpecError, StructureMismatchError
from .group import FiniteAbelianGroup, GroupElement, parse_group_spec
from .rings import CoefficientRing, Shape, make_ring, narrow_integers

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GroupRingElement:
    """Dense coefficient table indexed by group index."""

    group: FiniteAbelianGroup
    ring: CoefficientRing
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        if self.coeffs.shape != (self.group.order,):
            raise StructureMismatchError(
                f"{self.group.spec} needs {self.group.order} coefficients, "
                f"got shape {self.coeffs.shape}"
            )
        self.coeffs.flags.writeable = False

    def coeff(self, g: Union[GroupElement, int]) -> Any:
        i = g if isinstance(g, (int, np.integer)) else self.group.index(g)
        return self.coeffs[i]

    @property
    def support(self) -> list:
        zero = self.ring.zero()
        return [i for i, v in enumerate(self.coeffs) if not self.ring.eq(v, zero)]

    def __add__(self, other: Any) -> Any:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return gr_add(self, other)

    def __sub__(self, other: Any) -> Any:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return gr_sub(self, other)

    def __neg__(self) -> "GroupRingElement":
        return gr_neg(self)

    def __mul__(self, other: Any) -> Any:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return gr_convolve_naive(self, other)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return (
            self.group == other.group
            and self.ring == other.ring
            and self.ring.eq(self.coeffs, other.coeffs)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = ", ".join(str(v) for v in self.coeffs)
        return f"<{self.group.spec} over {self.ring.spec}: ({body})>"


@dataclass(frozen=True)
class GroupRing(CoefficientRing):
    """Group ring over `base`, usable as the coefficient ring of another level."""

    group: FiniteAbelianGroup
    base: CoefficientRing
    kind = "group_ring"

    @property
    def spec(self) -> str:
        return f"{self.group.spec}[{self.base.spec}]"

    @property
    def is_exact(self) -> bool:  # type: ignore[override]
        return self.base.is_exact

    @property
    def tolerance(self) -> float:
        return getattr(self.base, "tolerance", 0.0)

    @property
    def depth(self) -> int:
        return 1 + (self.base.depth if isinstance(self.base, GroupRing) else 0)

    def zero(self) -> GroupRingElement:
        return gr_zero(self.group, self.base)

    def one(self) -> GroupRingElement:
        return gr_identity(self.group, self.base)

    def coerce(self, value: Any) -> GroupRingElement:
        if isinstance(value, GroupRingElement):
            if value.group != self.group or value.ring != self.base:
                raise StructureMismatchError(f"{value!r} is not an element of {self.spec}")
            return value
        if isinstance(value, (list, tuple, np.ndarray)):
            return from_coeffs(self.group, self.base, value)
        return gr_embed_scalar(self.base.coerce(value), self.group, self.base)

    def random(self, rng: np.random.Generator, shape: Shape = None) -> Any:
        if shape is None:
            return random_element(self.group, self.base, rng)
        out = np.empty(shape, dtype=object)
        for idx in np.ndindex(out.shape):
            out[idx] = random_element(self.group, self.base, rng)
        return out

    def encode(self, value: GroupRingElement) -> list:
        return [self.base.encode(v) for v in value.coeffs]

    def decode(self, obj: Any) -> GroupRingElement:
        return from_coeffs(self.group, self.base, [self.base.decode(v) for v in obj])

    def close(self, x: Any, y: Any) -> Any:
        pairwise = np.frompyfunc(lambda a, b: a == b, 2, 1)
        return np.asarray(pairwise(x, y), dtype=bool)

    def distance(self, x: Any, y: Any) -> float:
        xs = np.asarray(x, dtype=object).ravel() if isinstance(x, np.ndarray) else [x]
        ys = np.asarray(y, dtype=object).ravel() if isinstance(y, np.ndarray) else [y]
        worst = 0.0
        for a, b in zip(xs, ys):
            worst = max(worst, self.base.distance(a.coeffs, b.coeffs))
        return worst


# ----------------------------
# Construction
# ----------------------------

def _check_same(a: GroupRingElement, b: GroupRingElement) -> None:
    if a.group != b.group:
        raise StructureMismatchError(f"group mismatch: {a.group.spec} vs {b.group.spec}")
    if a.ring != b.ring:
        raise StructureMismatchError(f"ring mismatch: {a.ring.spec} vs {b.ring.spec}")


def from_coeffs(group: FiniteAbelianGroup, ring: CoefficientRing, values: Iterable[Any]) -> GroupRingElement:
    if isinstance(values, np.ndarray) and values.dtype != object and ring.dtype is not object:
        coeffs = np.array(values, dtype=ring.dtype)
    else:
        items = list(values)
        coeffs = ring.zeros(len(items))
        for i, v in enumerate(items):
            coeffs[i] = ring.coerce(v)
    return GroupRingElement(group, ring, coeffs)


def gr_zero(group: FiniteAbelianGroup, ring: CoefficientRing) -> GroupRingElement:
    return GroupRingElement(group, ring, ring.zeros(group.order))


def gr_identity(group: FiniteAbelianGroup, ring: CoefficientRing) -> GroupRingElement:
    """1_R at the group identity (index 0), zero elsewhere."""
    return gr_embed_scalar(ring.one(), group, ring)


def gr_embed_scalar(r: Any, group: FiniteAbelianGroup, ring: CoefficientRing) -> GroupRingElement:
    coeffs = ring.zeros(group.order)
    coeffs[0] = ring.coerce(r)
    return GroupRingElement(group, ring, coeffs)


def gr_delta(g: GroupElement, ring: CoefficientRing) -> GroupRingElement:
    """The basis element |g>."""
    coeffs = ring.zeros(g.group.order)
    coeffs[g.index] = ring.one()
    return GroupRingElement(g.group, ring, coeffs)


def random_element(group: FiniteAbelianGroup, ring: CoefficientRing, rng: np.random.Generator) -> GroupRingElement:
    """Element with |G| independent coefficients drawn by `ring.random`."""
    coeffs = ring.random(rng, (group.order,))
    return GroupRingElement(group, ring, np.asarray(coeffs, dtype=ring.dtype))


# ----------------------------
# Ring operations
# ----------------------------

def gr_add(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """
    Coefficientwise sum.

    Args:
        a, b: elements of the same group ring

    Returns:
        a + b

    Raises:
        StructureMismatchError: the operands differ in group or ring
    """
    _check_same(a, b)
    return GroupRingElement(a.group, a.ring, a.ring.add(a.coeffs, b.coeffs))


def gr_sub(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """a - b, coefficientwise."""
    _check_same(a, b)
    return GroupRingElement(a.group, a.ring, a.ring.sub(a.coeffs, b.coeffs))


def gr_neg(a: GroupRingElement) -> GroupRingElement:
    return GroupRingElement(a.group, a.ring, a.ring.neg(a.coeffs))


def gr_scale(r: Any, a: GroupRingElement) -> GroupRingElement:
    """
    Multiply every coefficient by the ring value r.

    Args:
        r: a value of a.ring, or anything `a.ring.coerce` accepts
        a: the element to scale

    Returns:
        r * a, the same as convolving with r |1_G>
    """
    return GroupRingElement(a.group, a.ring, a.ring.mul(a.ring.coerce(r), a.coeffs))


# Integer products used on the integer view of exact rings.
_INTEGER_PRODUCTS = {"mul": np.multiply, "matmul": np.matmul}


def _scatter(
    group: FiniteAbelianGroup,
    left: Sequence[Any],
    right: np.ndarray,
    product: Callable[[Any, np.ndarray], np.ndarray],
    add: Callable[[Any, Any], Any],
    zeros: Callable[[Shape], np.ndarray],
    axis: int,
) -> np.ndarray:
    table = group.cayley_table
    out = None
    for r in range(group.order):
        term = product(left[r], right)
        idx = [slice(None)] * np.ndim(term)
        idx[axis] = table[r]
        idx = tuple(idx)
        if out is None:
            out = zeros(np.shape(term))
        out[idx] = add(out[idx], term)
    return out


def convolve_scatter(
    group: FiniteAbelianGroup,
    ring: CoefficientRing,
    left: Sequence[Any],
    right: np.ndarray,
    product: str = "mul",
    axis: int = 0,
) -> np.ndarray:
    """
    Generic group convolution: out[.., rs, ..] = sum of product(left[r], right)[.., s, ..].

    `right` carries the group along `axis`; `product(left[r], right)` must keep
    that axis in place. Every product in the tower (vector, scalar-matrix,
    tensor-matrix, tensor-tensor) is this loop with a different base product.

    Args:
        group: the group indexing `left` and the convolved axis of `right`
        ring: coefficient ring of both operands
        left: values indexed by group element along the first axis
        right: array with the group along `axis`
        product: "mul" (elementwise) or "matmul"
        axis: axis of the result that carries the group

    Returns:
        Array of ring values shaped like product(left[r], right)
    """
    lifted_left, lifted_right = ring.to_integers(left), ring.to_integers(right)
    if lifted_left is None or lifted_right is None:
        return _scatter(group, left, right, getattr(ring, product), ring.add, ring.zeros, axis)
    (lnums, lden), (rnums, rden) = lifted_left, lifted_right
    inner = np.shape(lnums)[-1] if product == "matmul" else 1
    lnums, rnums = narrow_integers(lnums, rnums, group.order * inner)
    nums = _scatter(
        group, lnums, rnums, _INTEGER_PRODUCTS[product], np.add,
        lambda shape: np.zeros(shape, dtype=lnums.dtype), axis,
    )
    return ring.from_integers(nums, lden * rden)


def gr_convolve_naive(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """
    c_k = sum over gh = k of a_g * b_h, all |G|^2 products.

    The inner loop over h runs as one array operation per g: row g of the
    Cayley table scatters a_g * b into c.
    """
    _check_same(a, b)
    c = convolve_scatter(a.group, a.ring, a.coeffs, b.coeffs, "mul")
    return GroupRingElement(a.group, a.ring, c)


def gr_anti_involution(a: GroupRingElement) -> GroupRingElement:
    """phi: the coefficient of g moves to g^-1."""
    return GroupRingElement(a.group, a.ring, a.coeffs[a.group.inverse_table].copy())


def is_zero(a: GroupRingElement) -> bool:
    return a.ring.eq(a.coeffs, a.ring.zeros(a.group.order))


# ----------------------------
# Coefficient ring specs, including nesting
# ----------------------------

_NESTED_RE = re.compile(r"^\s*([zZ][^\[\]]*)\[(.*)\]\s*$")


def make_coefficient_ring(spec: str, tolerance: Optional[float] = None) -> CoefficientRing:
    """
    Parse a scalar ring spec or a nested `<group>[<ring>]` spec.

    `Z2[Z2[q]]` is the group ring of Z_2 over the group ring of Z_2 over Q.
    """
    m = _NESTED_RE.match(spec or "")
    if not m:
        return make_ring(spec, tolerance)
    inner = make_coefficient_ring(m.group(2), tolerance)
    try:
        group = parse_group_spec(m.group(1))
    except ValueError as exc:
        raise InvalidRingSpecError(f"bad group in nested ring spec {spec!r}: {exc}") from exc
    ring = GroupRing(group, inner)
    logger.debug("nested coefficient ring %s (depth %d)", ring.spec, ring.depth)
    return ring
