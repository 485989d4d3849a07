"""Group Fourier transform over finite abelian groups (float/complex rings).

Characters share the mixed-radix index space of the group elements: character
q evaluated at g is prod_j exp(-2j*pi*g_j*q_j/n_j). The transform turns every
convolution in the tower into pointwise products, which gives fast
convolution and slice-wise tensor inversion.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import NotInvertibleError, StructureMismatchError, UnsupportedRingError
from .fft import fftn_trailing
from .group import FiniteAbelianGroup
from .groupring import GroupRingElement
from .rings import CoefficientRing, ComplexRing, RealRing
from .tower import TensorMG, identity_tensor

logger = logging.getLogger(__name__)

DEFAULT_CONDITION_LIMIT = 1e12


@dataclass(frozen=True, eq=False)
class GroupSpectrum:
    """Transform values indexed by character; `ring` is the source ring."""

    group: FiniteAbelianGroup
    values: np.ndarray
    ring: CoefficientRing

    def __post_init__(self) -> None:
        if self.values.shape != (self.group.order,):
            raise StructureMismatchError(
                f"spectrum over {self.group.spec} needs {self.group.order} values"
            )


def supports_transform(ring: CoefficientRing) -> bool:
    return isinstance(ring, (RealRing, ComplexRing))


def require_approximate(ring: CoefficientRing) -> None:
    if not supports_transform(ring):
        raise UnsupportedRingError(
            f"the transform path needs a float or complex ring, got {ring.spec!r}; "
            "use --ring f64 or --ring c64"
        )


def _realify(values: np.ndarray, ring: CoefficientRing) -> np.ndarray:
    if isinstance(ring, RealRing):
        return np.ascontiguousarray(values.real)
    return values


def transform_group_axis(
    array: np.ndarray, group: FiniteAbelianGroup, inverse: bool = False
) -> np.ndarray:
    """Transform along axis 0, which must be indexed by the group."""
    moved = np.moveaxis(np.asarray(array, dtype=np.complex128), 0, -1)
    out = fftn_trailing(moved, group.moduli, inverse=inverse)
    return np.moveaxis(out, -1, 0)


def gft_forward(a: GroupRingElement) -> GroupSpectrum:
    require_approximate(a.ring)
    return GroupSpectrum(a.group, fftn_trailing(a.coeffs, a.group.moduli), a.ring)


def gft_inverse(s: GroupSpectrum) -> GroupRingElement:
    coeffs = fftn_trailing(s.values, s.group.moduli, inverse=True)
    return GroupRingElement(s.group, s.ring, _realify(coeffs, s.ring))


def gr_convolve_fast(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """Convolution as a pointwise product of spectra."""
    if a.group != b.group or a.ring != b.ring:
        raise StructureMismatchError("fast convolution needs operands over the same group and ring")
    fa = gft_forward(a)
    fb = gft_forward(b)
    return gft_inverse(GroupSpectrum(a.group, fa.values * fb.values, a.ring))


def parseval_residual(a: GroupRingElement) -> float:
    """| sum |a_g|^2 - (1/n) sum |a^(chi)|^2 |"""
    spectrum = gft_forward(a).values
    energy = float(np.sum(np.abs(a.coeffs) ** 2))
    return abs(energy - float(np.sum(np.abs(spectrum) ** 2)) / a.group.order)


def tensor_tensor_product_fast(a: TensorMG, b: TensorMG) -> TensorMG:
    """A * B as one matrix product per character."""
    require_approximate(a.ring)
    if a.group != b.group or a.ring != b.ring:
        raise StructureMismatchError("tensor product needs tensors over the same group and ring")
    hat = transform_group_axis(a.slices, a.group) @ transform_group_axis(b.slices, b.group)
    back = transform_group_axis(hat, a.group, inverse=True)
    return TensorMG(a.group, a.ring, _realify(back, a.ring))


def tensor_t_inverse(x: TensorMG, condition_limit: float = DEFAULT_CONDITION_LIMIT) -> TensorMG:
    """
    Inverse of X under the tensor product.

    Every transform-domain slice is checked against `condition_limit` and then
    inverted by LU with partial pivoting (one batched LAPACK call, so the
    result does not depend on evaluation order).

    Raises:
        NotInvertibleError: with the index of the first offending character
    """
    require_approximate(x.ring)
    hat = transform_group_axis(x.slices, x.group)
    with np.errstate(all="ignore"):
        cond = np.linalg.cond(hat)
    bad = np.flatnonzero(~np.isfinite(cond) | (cond > condition_limit))
    if bad.size:
        chi = int(bad[0])
        logger.debug("t-inverse rejected: character %d, condition %.3e", chi, cond[chi])
        raise NotInvertibleError(chi, float(cond[chi]))
    back = transform_group_axis(np.linalg.inv(hat), x.group, inverse=True)
    return TensorMG(x.group, x.ring, _realify(back, x.ring))


def t_inverse_residual(x: TensorMG, x_inv: TensorMG) -> float:
    """max |X * X^-1 - E|"""
    product = tensor_tensor_product_fast(x, x_inv)
    return float(x.ring.distance(product.slices, identity_tensor(x.group, x.ring).slices))
