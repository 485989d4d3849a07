"""M as a free unitary left V-module under the mixed convolution.

The transposed basis B_g = |g><1| gives every matrix unique coordinates: the
coordinate of B_l is row l of the matrix. The natural basis |1><g| does not
span, because every combination of it lives in row 1_G.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, List, Tuple

import numpy as np

from .config import run_samples, spawn_rngs
from .errors import InapplicableWitnessError, StructureMismatchError
from .group import FiniteAbelianGroup, GroupElement
from .groupring import (
    GroupRingElement,
    gr_add,
    gr_convolve_naive,
    gr_identity,
    is_zero,
    random_element,
)
from .models import AxiomReport, WitnessReport
from .rings import CoefficientRing
from .tower import (
    MatrixVG,
    compare,
    embed_vector,
    ket_bra,
    matrix_add,
    random_matrix,
    random_tensor,
    scalar_product,
    tensor_matrix_product,
    zero_matrix,
)

logger = logging.getLogger(__name__)

MODULE_AXIOMS = (
    "scalar_over_matrix_sum",
    "scalar_sum_over_matrix",
    "scalar_compatibility",
    "unitary",
    "lemma_scalar_assoc",
    "lemma_triple_assoc",
)


@dataclass(frozen=True, eq=False)
class BasisElement:
    label: GroupElement
    matrix: MatrixVG


@dataclass(frozen=True, eq=False)
class CoordinateVector:
    """Coordinates a_g in V, one per group element, in group-index order."""

    group: FiniteAbelianGroup
    ring: CoefficientRing
    coords: Tuple[GroupRingElement, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.group.order:
            raise StructureMismatchError(
                f"need {self.group.order} coordinates, got {len(self.coords)}"
            )
        for c in self.coords:
            if c.group != self.group or c.ring != self.ring:
                raise StructureMismatchError("coordinates must share group and ring")

    def __getitem__(self, g: int) -> GroupRingElement:
        return self.coords[g]

    def __iter__(self) -> Iterator[GroupRingElement]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)


def transposed_basis(group: FiniteAbelianGroup, ring: CoefficientRing) -> List[BasisElement]:
    """B_g = |g><1_G|."""
    return [BasisElement(g, ket_bra(group, ring, g.index, 0)) for g in group]


def natural_basis(group: FiniteAbelianGroup, ring: CoefficientRing) -> List[BasisElement]:
    """B~_g = |1_G><g|."""
    return [BasisElement(g, ket_bra(group, ring, 0, g.index)) for g in group]


def decompose(x: MatrixVG) -> CoordinateVector:
    """Coordinate a_l is row l of X read as an element of V."""
    return CoordinateVector(x.group, x.ring, tuple(x.row(l) for l in range(x.n)))


def reconstruct(c: CoordinateVector) -> MatrixVG:
    """sum_l a_l o B_l"""
    out = zero_matrix(c.group, c.ring)
    for a, b in zip(c, transposed_basis(c.group, c.ring)):
        out = matrix_add(out, scalar_product(a, b.matrix))
    return out


def random_coordinates(
    group: FiniteAbelianGroup, ring: CoefficientRing, rng: np.random.Generator
) -> CoordinateVector:
    return CoordinateVector(group, ring, tuple(random_element(group, ring, rng) for _ in group))


def combine_natural(c: CoordinateVector) -> MatrixVG:
    """sum_l a_l o B~_l"""
    out = zero_matrix(c.group, c.ring)
    for a, b in zip(c, natural_basis(c.group, c.ring)):
        out = matrix_add(out, scalar_product(a, b.matrix))
    return out


def confined_to_identity_row(x: MatrixVG) -> bool:
    zero = x.ring.zeros((x.n - 1, x.n))
    return x.ring.eq(x.entries[1:], zero)


def outside_identity_row(x: MatrixVG) -> List[Tuple[int, int]]:
    zero = x.ring.zero()
    return [
        (j, k)
        for j in range(1, x.n)
        for k in range(x.n)
        if not x.ring.eq(x.entries[j, k], zero)
    ]


# ----------------------------
# Property checks
# ----------------------------

def _axiom_sample(group: FiniteAbelianGroup, ring: CoefficientRing):
    def check(rng: np.random.Generator) -> List[Tuple[bool, float]]:
        a = random_element(group, ring, rng)
        b = random_element(group, ring, rng)
        x = random_matrix(group, ring, rng)
        y = random_matrix(group, ring, rng)
        t = random_tensor(group, ring, rng)
        ax = scalar_product(a, x)
        bx = scalar_product(b, x)
        a_bx = scalar_product(a, bx)
        return [
            compare(scalar_product(a, matrix_add(x, y)), matrix_add(ax, scalar_product(a, y))),
            compare(scalar_product(gr_add(a, b), x), matrix_add(ax, bx)),
            compare(scalar_product(gr_convolve_naive(a, b), x), a_bx),
            compare(scalar_product(gr_identity(group, ring), x), x),
            compare(a_bx, tensor_matrix_product(embed_vector(gr_convolve_naive(a, b)), x)),
            compare(tensor_matrix_product(t, ax), scalar_product(a, tensor_matrix_product(t, x))),
        ]

    return check


def check_module_axioms(
    group: FiniteAbelianGroup,
    ring: CoefficientRing,
    samples: int = 200,
    seed: int = 0,
    workers: int = 1,
) -> List[AxiomReport]:
    """
    Check the four module axioms and the two associativity lemmas.

    Args:
        group: the indexing group
        ring: coefficient ring
        samples: random instances per identity
        seed: run seed; each sample gets its own spawned generator
        workers: thread pool size

    Returns:
        One AxiomReport per identity, in MODULE_AXIOMS order.
    """
    outcomes = run_samples(_axiom_sample(group, ring), seed, samples, workers)
    reports = [
        AxiomReport.from_outcomes(name, [o[i] for o in outcomes])
        for i, name in enumerate(MODULE_AXIOMS)
    ]
    logger.info(
        "module axioms on %s over %s: %d failures",
        group.spec, ring.spec, sum(r.failures for r in reports),
    )
    return reports


def check_free_basis(
    group: FiniteAbelianGroup,
    ring: CoefficientRing,
    samples: int = 200,
    seed: int = 0,
    workers: int = 1,
) -> List[AxiomReport]:
    """Round trip through coordinates and linear independence of the basis."""

    def check(rng: np.random.Generator) -> List[Tuple[bool, float]]:
        x = random_matrix(group, ring, rng)
        c = random_coordinates(group, ring, rng)
        back = decompose(reconstruct(c))
        coord_ok = [compare(a, b) for a, b in zip(back, c)]
        combo_is_zero = compare(reconstruct(c), zero_matrix(group, ring))[0]
        independent = combo_is_zero == all(is_zero(a) for a in c)
        independent = independent and all(is_zero(a) for a in decompose(zero_matrix(group, ring)))
        return [
            compare(reconstruct(decompose(x)), x),
            (all(ok for ok, _ in coord_ok), max(r for _, r in coord_ok)),
            (independent, 0.0),
        ]

    outcomes = run_samples(check, seed, samples, workers)
    names = ("reconstruct_decompose", "decompose_reconstruct", "zero_has_zero_coordinates")
    return [AxiomReport.from_outcomes(n, [o[i] for o in outcomes]) for i, n in enumerate(names)]


def natural_basis_degeneracy_witness(
    x: MatrixVG, samples: int = 100, seed: int = 0
) -> WitnessReport:
    """
    Show that no natural-basis combination reaches X.

    Every sum a_l o B~_l is drawn at random and tested for support inside
    row 1_G; X has an entry outside that row, so none of them can equal X.

    Raises:
        InapplicableWitnessError: X itself is confined to row 1_G
    """
    targets = outside_identity_row(x)
    if not targets:
        raise InapplicableWitnessError(
            "the witness needs a matrix with a nonzero entry outside row 1_G"
        )
    confined = 0
    for rng in spawn_rngs(seed, samples):
        combo = combine_natural(random_coordinates(x.group, x.ring, rng))
        if confined_to_identity_row(combo):
            confined += 1
    logger.debug("natural basis witness: %d/%d confined", confined, samples)
    return WitnessReport(
        basis="natural", samples=samples, confined=confined, target_outside_row=targets
    )
