"""Diagonal tensors, lateral slices, tubes and the tensor eigen-equation.

If T * X = X * L with L diagonal, then for every k the lateral slice X^(k)
is an eigen-matrix of T with the tube L_(k,k) as its eigenvalue in V:

    T * X^(k) = L_(k,k) o X^(k)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, List, Optional, Tuple

import numpy as np

from .config import make_rng
from .errors import GenerationFailedError, NotInvertibleError, StructureMismatchError
from .group import FiniteAbelianGroup
from .groupring import GroupRingElement, convolve_scatter
from .models import DiagonalizationReport, EigenCheck
from .rings import CoefficientRing
from .transform import DEFAULT_CONDITION_LIMIT, require_approximate, tensor_t_inverse
from .tower import (
    Index,
    MatrixVG,
    TensorMG,
    check_compatible,
    index_of,
    random_tensor,
    scalar_product,
    tensor_matrix_product,
    tensor_tensor_product,
)

logger = logging.getLogger(__name__)

DEFAULT_HYPOTHESIS_TOL = 1e-8
DEFAULT_EIGEN_TOL = 1e-7
DEFAULT_MAX_DRAWS = 16


@dataclass(frozen=True, eq=False)
class DiagonalTensor:
    """d[g, k] is the k-th diagonal entry of slice L_g."""

    group: FiniteAbelianGroup
    ring: CoefficientRing
    d: np.ndarray

    def __post_init__(self) -> None:
        n = self.group.order
        if self.d.shape != (n, n):
            raise StructureMismatchError(f"diagonal table over {self.group.spec} must be {n}x{n}")
        self.d.flags.writeable = False

    @property
    def n(self) -> int:
        return self.group.order

    def to_tensor(self) -> TensorMG:
        n = self.n
        slices = self.ring.zeros((n, n, n))
        idx = np.arange(n)
        slices[:, idx, idx] = self.d
        return TensorMG(self.group, self.ring, slices)

    @classmethod
    def from_tensor(cls, t: TensorMG) -> "DiagonalTensor":
        if not is_diagonal(t):
            raise StructureMismatchError("tensor has nonzero off-diagonal entries")
        idx = np.arange(t.n)
        return cls(t.group, t.ring, np.ascontiguousarray(t.slices[:, idx, idx]))

    @classmethod
    def random(
        cls, group: FiniteAbelianGroup, ring: CoefficientRing, rng: np.random.Generator
    ) -> "DiagonalTensor":
        n = group.order
        return cls(group, ring, np.asarray(ring.random(rng, (n, n)), dtype=ring.dtype))

    @classmethod
    def identity(cls, group: FiniteAbelianGroup, ring: CoefficientRing) -> "DiagonalTensor":
        d = ring.zeros((group.order, group.order))
        d[0, :] = ring.one()
        return cls(group, ring, d)

    def perturb(self, g: Index, k: Index, delta: Any) -> "DiagonalTensor":
        """Copy with d[g, k] shifted by delta."""
        d = self.d.copy()
        i, j = index_of(self.group, g), index_of(self.group, k)
        d[i, j] = self.ring.add(d[i, j], self.ring.coerce(delta))
        return DiagonalTensor(self.group, self.ring, d)


@dataclass(frozen=True, eq=False)
class EigenPair:
    k: int
    lateral: MatrixVG
    tube: GroupRingElement


def is_diagonal(t: TensorMG) -> bool:
    n = t.n
    off = ~np.eye(n, dtype=bool)
    return t.ring.eq(t.slices[:, off], t.ring.zeros((n, n * n - n)))


def diagonal_product(a: DiagonalTensor, b: DiagonalTensor) -> DiagonalTensor:
    """A * B for diagonal tensors: tube by tube convolution."""
    check_compatible(a, b)
    d = convolve_scatter(a.group, a.ring, a.d, b.d, "mul", axis=0)
    return DiagonalTensor(a.group, a.ring, d)


def lateral_slice(x: TensorMG, k: Index) -> MatrixVG:
    """X^(k): column g is column k of X_g."""
    j = index_of(x.group, k)
    return MatrixVG(x.group, x.ring, np.ascontiguousarray(x.slices[:, :, j].T))


def tube(diagonal: DiagonalTensor, k: Index) -> GroupRingElement:
    """L_(k,k) = sum_g d[g, k] |g>."""
    j = index_of(diagonal.group, k)
    return GroupRingElement(diagonal.group, diagonal.ring, diagonal.d[:, j].copy())


def eigen_pairs(x: TensorMG, diagonal: DiagonalTensor) -> List[EigenPair]:
    return [EigenPair(k, lateral_slice(x, k), tube(diagonal, k)) for k in range(x.n)]


def _within(ring: CoefficientRing, residual: float, tol: float) -> bool:
    if ring.is_exact:
        return residual == 0
    return residual <= tol


def verify_diagonalization(
    t: TensorMG,
    x: TensorMG,
    diagonal: DiagonalTensor,
    hypothesis_tol: float = DEFAULT_HYPOTHESIS_TOL,
    eigen_tol: float = DEFAULT_EIGEN_TOL,
) -> DiagonalizationReport:
    """
    Check T * X = X * L, then T * X^(k) = L_(k,k) o X^(k) for every k.

    The conclusion is evaluated even when the hypothesis fails, so the
    per-k residuals stay available for diagnosis.

    Returns:
        DiagonalizationReport with status "ok", "hypothesis_failed" or
        "conclusion_failed".
    """
    check_compatible(t, x)
    check_compatible(x, diagonal)
    ring = t.ring
    lhs = tensor_tensor_product(t, x)
    rhs = tensor_tensor_product(x, diagonal.to_tensor())
    hypothesis = float(ring.distance(lhs.slices, rhs.slices))

    checks: List[EigenCheck] = []
    for pair in eigen_pairs(x, diagonal):
        per_k = float(
            ring.distance(lateral_slice(lhs, pair.k).entries, lateral_slice(rhs, pair.k).entries)
        )
        left = tensor_matrix_product(t, pair.lateral)
        right = scalar_product(pair.tube, pair.lateral)
        eigen = float(ring.distance(left.entries, right.entries))
        checks.append(EigenCheck(pair.k, per_k, eigen, _within(ring, eigen, eigen_tol)))

    if not _within(ring, hypothesis, hypothesis_tol):
        status = "hypothesis_failed"
    elif all(c.passed for c in checks):
        status = "ok"
    else:
        status = "conclusion_failed"
    logger.info("diagonalization on %s: %s (hypothesis residual %.3e)", t.group.spec, status, hypothesis)
    return DiagonalizationReport(status=status, hypothesis_residual=hypothesis, checks=checks)


def generate_diag_instance(
    group: FiniteAbelianGroup,
    ring: CoefficientRing,
    seed: int = 0,
    diagonal: Optional[DiagonalTensor] = None,
    max_draws: int = DEFAULT_MAX_DRAWS,
    condition_limit: float = DEFAULT_CONDITION_LIMIT,
) -> Tuple[TensorMG, TensorMG, DiagonalTensor]:
    """
    Build (T, X, L) with T * X = X * L by conjugation.

    Args:
        group: the indexing group
        ring: a float or complex ring
        seed: generator seed; the same seed gives the same instance
        diagonal: fixed L, drawn at random when omitted
        max_draws: attempts at a well-conditioned X
        condition_limit: per-character condition number bound for X

    Returns:
        T = X * L * X^-1, X and L.

    Raises:
        UnsupportedRingError: exact ring
        GenerationFailedError: no acceptable X within max_draws
    """
    require_approximate(ring)
    rng = make_rng(seed)
    if diagonal is None:
        diagonal = DiagonalTensor.random(group, ring, rng)
    for draw in range(max_draws):
        x = random_tensor(group, ring, rng)
        try:
            x_inv = tensor_t_inverse(x, condition_limit)
        except NotInvertibleError as exc:
            logger.debug("draw %d rejected: %s", draw, exc)
            continue
        t = tensor_tensor_product(tensor_tensor_product(x, diagonal.to_tensor()), x_inv)
        return t, x, diagonal
    raise GenerationFailedError(
        f"no t-invertible X with condition below {condition_limit:.1e} in {max_draws} draws"
    )
