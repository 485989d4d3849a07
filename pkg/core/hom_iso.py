"""Tensors T = MG and module homomorphisms hom_V(M), converted both ways.

A homomorphism is stored by its action on the transposed basis,
L(B_h) = sum_g alpha_{g,h} o B_g, so alpha[g, h] is row g of L(B_h).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .errors import StructureMismatchError
from .group import FiniteAbelianGroup
from .groupring import GroupRingElement
from .module_structure import CoordinateVector, combine_natural, decompose
from .rings import CoefficientRing
from .tower import (
    Index,
    MatrixVG,
    TensorMG,
    check_compatible,
    index_of,
    matrix_add,
    scalar_product,
    zero_matrix,
)


@dataclass(frozen=True, eq=False)
class ModuleHom:
    """alpha has shape (n, n, n): alpha[g, h, k] = (alpha_{g,h})_k."""

    group: FiniteAbelianGroup
    ring: CoefficientRing
    alpha: np.ndarray

    def __post_init__(self) -> None:
        n = self.group.order
        if self.alpha.shape != (n, n, n):
            raise StructureMismatchError(
                f"hom over {self.group.spec} needs an {n}x{n}x{n} alpha table, got {self.alpha.shape}"
            )
        self.alpha.flags.writeable = False

    @property
    def n(self) -> int:
        return self.group.order

    def alpha_at(self, g: Index, h: Index) -> GroupRingElement:
        i, j = index_of(self.group, g), index_of(self.group, h)
        return GroupRingElement(self.group, self.ring, self.alpha[i, j].copy())

    def basis_image(self, h: Index) -> MatrixVG:
        """L(B_h)."""
        return MatrixVG(self.group, self.ring, self.alpha[:, index_of(self.group, h), :].copy())

    def __call__(self, a: MatrixVG) -> MatrixVG:
        return hom_apply(self, a)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, ModuleHom):
            return NotImplemented
        return (
            self.group == other.group
            and self.ring == other.ring
            and self.ring.eq(self.alpha, other.alpha)
        )

    __hash__ = None  # type: ignore[assignment]


def identity_hom(group: FiniteAbelianGroup, ring: CoefficientRing) -> ModuleHom:
    """alpha_{g,h} = delta(g, h) 1_V."""
    n = group.order
    alpha = ring.zeros((n, n, n))
    for g in range(n):
        alpha[g, g, 0] = ring.one()
    return ModuleHom(group, ring, alpha)


def hom_from_basis_images(images: Sequence[MatrixVG]) -> ModuleHom:
    """The hom sending B_h to images[h]."""
    first = images[0]
    n = first.n
    if len(images) != n:
        raise StructureMismatchError(f"need {n} basis images, got {len(images)}")
    alpha = first.ring.zeros((n, n, n))
    for h, img in enumerate(images):
        check_compatible(first, img)
        alpha[:, h, :] = img.entries
    return ModuleHom(first.group, first.ring, alpha)


def hom_apply(hom: ModuleHom, a: MatrixVG) -> MatrixVG:
    """L(A) = sum_h a_h o L(B_h), with a_h the coordinates of A."""
    check_compatible(hom, a)
    out = zero_matrix(a.group, a.ring)
    for h, coord in enumerate(decompose(a)):
        out = matrix_add(out, scalar_product(coord, hom.basis_image(h)))
    return out


def tensor_from_hom(hom: ModuleHom) -> TensorMG:
    """T_k has entry (j, h) = (alpha_{j,h})_k."""
    slices = np.ascontiguousarray(hom.alpha.transpose(2, 0, 1))
    return TensorMG(hom.group, hom.ring, slices.copy())


def hom_from_tensor(t: TensorMG) -> ModuleHom:
    """(alpha_{g,h})_k is entry (g, h) of T_k."""
    alpha = np.ascontiguousarray(t.slices.transpose(1, 2, 0))
    return ModuleHom(t.group, t.ring, alpha.copy())


def compose_homs(outer: ModuleHom, inner: ModuleHom) -> ModuleHom:
    """outer after inner, read off from its action on the basis."""
    check_compatible(outer, inner)
    return hom_from_basis_images([hom_apply(outer, inner.basis_image(h)) for h in range(inner.n)])


def natural_basis_image(t: TensorMG, h: Index) -> MatrixVG:
    """
    sum_g alpha_{g,h} o B~_g for the hom of T.

    This is what the isomorphism construction yields when carried out on the
    natural basis. The result never leaves row 1_G, so it differs from
    T * B~_h whenever T moves anything off that row.
    """
    hom = hom_from_tensor(t)
    j = index_of(t.group, h)
    coords = CoordinateVector(t.group, t.ring, tuple(hom.alpha_at(g, j) for g in range(t.n)))
    return combine_natural(coords)
