"""The tower V = RG, M = M_n(R) ~ VG, T = MG and the products it induces.

Matrices are read as elements of VG column by column: the coefficient of |s>
is column s. Tensors are group-indexed stacks of frontal slices T_g. The
circulant helpers at the bottom materialize the classical block-circulant
formulation and serve as an independent oracle for the convolution products.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence, Tuple, Union

import numpy as np

from .errors import StructureMismatchError
from .group import FiniteAbelianGroup, GroupElement
from .groupring import GroupRingElement, convolve_scatter
from .rings import CoefficientRing

Index = Union[GroupElement, int]


def index_of(group: FiniteAbelianGroup, g: Index) -> int:
    if isinstance(g, (int, np.integer)):
        if not 0 <= g < group.order:
            raise IndexError(f"index {g} out of range for {group.spec}")
        return int(g)
    return group.index(g)


@dataclass(frozen=True, eq=False)
class MatrixVG:
    """n x n matrix over R, n = |G|, rows and columns addressed by group index."""

    group: FiniteAbelianGroup
    ring: CoefficientRing
    entries: np.ndarray

    def __post_init__(self) -> None:
        n = self.group.order
        if self.entries.shape != (n, n):
            raise StructureMismatchError(
                f"matrix over {self.group.spec} must be {n}x{n}, got {self.entries.shape}"
            )
        self.entries.flags.writeable = False

    @property
    def n(self) -> int:
        return self.group.order

    def entry(self, j: Index, k: Index) -> Any:
        return self.entries[index_of(self.group, j), index_of(self.group, k)]

    def column(self, s: Index) -> GroupRingElement:
        """Coefficient of |s> in the VG view."""
        return GroupRingElement(self.group, self.ring, self.entries[:, index_of(self.group, s)].copy())

    def row(self, j: Index) -> GroupRingElement:
        return GroupRingElement(self.group, self.ring, self.entries[index_of(self.group, j), :].copy())

    def __add__(self, other: "MatrixVG") -> "MatrixVG":
        return matrix_add(self, other)

    def __sub__(self, other: "MatrixVG") -> "MatrixVG":
        check_compatible(self, other)
        return MatrixVG(self.group, self.ring, self.ring.sub(self.entries, other.entries))

    def __neg__(self) -> "MatrixVG":
        return MatrixVG(self.group, self.ring, self.ring.neg(self.entries))

    def __matmul__(self, other: "MatrixVG") -> "MatrixVG":
        return matrix_multiply(self, other)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, MatrixVG):
            return NotImplemented
        return (
            self.group == other.group
            and self.ring == other.ring
            and self.ring.eq(self.entries, other.entries)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MatrixVG({self.group.spec}, {self.ring.spec},\n{self.entries})"


@dataclass(frozen=True, eq=False)
class TensorMG:
    """Frontal slices T_g stacked along axis 0 in group-index order."""

    group: FiniteAbelianGroup
    ring: CoefficientRing
    slices: np.ndarray

    def __post_init__(self) -> None:
        n = self.group.order
        if self.slices.shape != (n, n, n):
            raise StructureMismatchError(
                f"tensor over {self.group.spec} must be {n}x{n}x{n}, got {self.slices.shape}"
            )
        self.slices.flags.writeable = False

    @property
    def n(self) -> int:
        return self.group.order

    def slice(self, g: Index) -> MatrixVG:
        return MatrixVG(self.group, self.ring, self.slices[index_of(self.group, g)].copy())

    def __add__(self, other: "TensorMG") -> "TensorMG":
        return tensor_add(self, other)

    def __sub__(self, other: "TensorMG") -> "TensorMG":
        check_compatible(self, other)
        return TensorMG(self.group, self.ring, self.ring.sub(self.slices, other.slices))

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, TensorMG):
            return NotImplemented
        return (
            self.group == other.group
            and self.ring == other.ring
            and self.ring.eq(self.slices, other.slices)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TensorMG({self.group.spec}, {self.ring.spec}, slices={self.n})"


def check_compatible(a: Any, b: Any) -> None:
    if a.group != b.group:
        raise StructureMismatchError(f"group mismatch: {a.group.spec} vs {b.group.spec}")
    if a.ring != b.ring:
        raise StructureMismatchError(f"ring mismatch: {a.ring.spec} vs {b.ring.spec}")


# ----------------------------
# Construction
# ----------------------------

def matrix_from_rows(group: FiniteAbelianGroup, ring: CoefficientRing, rows: Sequence[Sequence[Any]]) -> MatrixVG:
    """
    Matrix in M from nested rows of plain values.

    Args:
        group: group indexing rows and columns
        ring: coefficient ring; each value goes through `ring.coerce`
        rows: |G| rows of |G| values each

    Returns:
        The matrix, column-indexed like every MatrixVG
    """
    return MatrixVG(group, ring, ring.asarray(rows))


def zero_matrix(group: FiniteAbelianGroup, ring: CoefficientRing) -> MatrixVG:
    """The additive identity of M."""
    return MatrixVG(group, ring, ring.zeros((group.order, group.order)))


def identity_matrix(group: FiniteAbelianGroup, ring: CoefficientRing) -> MatrixVG:
    """I = sum_g |g><g|."""
    return MatrixVG(group, ring, ring.eye(group.order))


def ket_bra(group: FiniteAbelianGroup, ring: CoefficientRing, j: Index, k: Index) -> MatrixVG:
    """
    |j><k|: a single 1 at row j, column k.

    Args:
        group: group indexing rows and columns
        ring: coefficient ring
        j: row, as a group element or index
        k: column, as a group element or index

    Returns:
        The natural basis matrix for (j, k)
    """
    entries = ring.zeros((group.order, group.order))
    entries[index_of(group, j), index_of(group, k)] = ring.one()
    return MatrixVG(group, ring, entries)


def from_columns(columns: Sequence[GroupRingElement]) -> MatrixVG:
    """
    Inverse of the VG view: column s is the coefficient of |s>.

    Args:
        columns: |G| vectors sharing one group and ring

    Returns:
        The matrix whose column s is columns[s]

    Raises:
        StructureMismatchError: wrong column count, or mixed groups or rings
    """
    first = columns[0]
    if len(columns) != first.group.order:
        raise StructureMismatchError(f"need {first.group.order} columns, got {len(columns)}")
    entries = first.ring.zeros((first.group.order, first.group.order))
    for s, col in enumerate(columns):
        if col.group != first.group or col.ring != first.ring:
            raise StructureMismatchError("columns must share group and ring")
        entries[:, s] = col.coeffs
    return MatrixVG(first.group, first.ring, entries)


def random_matrix(group: FiniteAbelianGroup, ring: CoefficientRing, rng: np.random.Generator) -> MatrixVG:
    """
    Matrix with independent entries drawn by `ring.random`.

    Args:
        group: group indexing rows and columns
        ring: coefficient ring
        rng: seeded generator; the same state gives the same matrix

    Returns:
        A |G| x |G| random matrix
    """
    n = group.order
    return MatrixVG(group, ring, np.asarray(ring.random(rng, (n, n)), dtype=ring.dtype))


def tensor_from_slices(group: FiniteAbelianGroup, ring: CoefficientRing, slices: Sequence[Any]) -> TensorMG:
    """
    Tensor whose g-th frontal slice is slices[g].

    Args:
        group: group indexing the slices
        ring: coefficient ring
        slices: |G| matrices, as MatrixVG or nested rows, or one (n, n, n) array

    Returns:
        The tensor in T

    Raises:
        StructureMismatchError: wrong slice count or slice shape
    """
    if isinstance(slices, np.ndarray) and ring.dtype is not object:
        return TensorMG(group, ring, np.array(slices, dtype=ring.dtype))
    if len(slices) != group.order:
        raise StructureMismatchError(f"tensor over {group.spec} needs {group.order} slices, got {len(slices)}")
    stacked = [s.entries if isinstance(s, MatrixVG) else ring.asarray(s) for s in slices]
    out = ring.zeros((group.order, group.order, group.order))
    for g, sl in enumerate(stacked):
        out[g] = sl
    return TensorMG(group, ring, out)


def zero_tensor(group: FiniteAbelianGroup, ring: CoefficientRing) -> TensorMG:
    n = group.order
    return TensorMG(group, ring, ring.zeros((n, n, n)))


def identity_tensor(group: FiniteAbelianGroup, ring: CoefficientRing) -> TensorMG:
    """E with E_g = delta(g, 1_G) I."""
    slices = ring.zeros((group.order,) * 3)
    slices[0] = ring.eye(group.order)
    return TensorMG(group, ring, slices)


def random_tensor(group: FiniteAbelianGroup, ring: CoefficientRing, rng: np.random.Generator) -> TensorMG:
    """
    Tensor with independent entries drawn by `ring.random`.

    Args:
        group: group indexing slices, rows and columns
        ring: coefficient ring
        rng: seeded generator

    Returns:
        A |G| x |G| x |G| random tensor
    """
    n = group.order
    return TensorMG(group, ring, np.asarray(ring.random(rng, (n, n, n)), dtype=ring.dtype))


def embed_vector(a: GroupRingElement) -> TensorMG:
    """
    V inside T: the tensor with slices a_g * I.

    Args:
        a: vector in V

    Returns:
        The tensor acting on M the way `scalar_product(a, .)` does
    """
    ring, n = a.ring, a.group.order
    slices = ring.zeros((n, n, n))
    for g in range(n):
        for i in range(n):
            slices[g, i, i] = a.coeffs[g]
    return TensorMG(a.group, ring, slices)


def matrix_add(a: MatrixVG, b: MatrixVG) -> MatrixVG:
    """Entrywise sum; both matrices must share group and ring."""
    check_compatible(a, b)
    return MatrixVG(a.group, a.ring, a.ring.add(a.entries, b.entries))


def tensor_add(a: TensorMG, b: TensorMG) -> TensorMG:
    """Entrywise sum; both tensors must share group and ring."""
    check_compatible(a, b)
    return TensorMG(a.group, a.ring, a.ring.add(a.slices, b.slices))


# ----------------------------
# Products
# ----------------------------

def matrix_multiply(a: MatrixVG, b: MatrixVG) -> MatrixVG:
    """c_ik = sum_j a_ij b_jk; composition in hom_R(V)."""
    check_compatible(a, b)
    return MatrixVG(a.group, a.ring, a.ring.matmul(a.entries, b.entries))


def scalar_product(a: GroupRingElement, x: MatrixVG) -> MatrixVG:
    """
    The mixed convolution a o X = a * X.

    Column g of the result is sum over r s = g of a_r * (column s of X).
    """
    check_compatible(a, x)
    ring = x.ring
    entries = convolve_scatter(x.group, ring, a.coeffs, x.entries, "mul", axis=1)
    return MatrixVG(x.group, ring, entries)


def tensor_matrix_product(t: TensorMG, x: MatrixVG) -> MatrixVG:
    """Column h of T * X is sum over g of T_{h g^-1} (column g of X)."""
    check_compatible(t, x)
    ring = x.ring
    entries = convolve_scatter(x.group, ring, t.slices, x.entries, "matmul", axis=1)
    return MatrixVG(x.group, ring, entries)


def tensor_tensor_product(a: TensorMG, b: TensorMG) -> TensorMG:
    """C_k = sum over r s = k of A_r B_s."""
    check_compatible(a, b)
    ring = a.ring
    slices = convolve_scatter(a.group, ring, a.slices, b.slices, "matmul", axis=0)
    return TensorMG(a.group, ring, slices)


# ----------------------------
# Circulant oracle
# ----------------------------

def circ_matrix(a: GroupRingElement) -> MatrixVG:
    """
    Group circulant: entry (g, h) = a_{g h^-1}.

    For Z_n the first column is (a_0, ..., a_{n-1}), matching the displayed
    circulant where entry (i, j) = a_{i-j}.
    """
    return MatrixVG(a.group, a.ring, a.coeffs[a.group.quotient_table].copy())


def block_circ_matrix(t: TensorMG) -> np.ndarray:
    """(n^2 x n^2) array whose (g, h) block is T_{g h^-1}."""
    n = t.n
    blocks = t.slices[t.group.quotient_table]          # (g, h, i, j)
    return np.ascontiguousarray(blocks.transpose(0, 2, 1, 3)).reshape(n * n, n * n)


def circulant_vector_product(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """circ(a) . b"""
    ring = a.ring
    return GroupRingElement(a.group, ring, ring.matmul(circ_matrix(a).entries, b.coeffs))


def circulant_scalar_product(a: GroupRingElement, x: MatrixVG) -> MatrixVG:
    """X . circ(a), which equals phi(a) o X."""
    return matrix_multiply(x, circ_matrix(a))


def block_circulant_matrix_product(t: TensorMG, x: MatrixVG) -> MatrixVG:
    """blockcirc(T) applied to X stacked column by column."""
    n = x.n
    stacked = np.ascontiguousarray(x.entries.T).reshape(n * n)
    out = x.ring.matmul(block_circ_matrix(t), stacked)
    return MatrixVG(x.group, x.ring, np.ascontiguousarray(out.reshape(n, n).T))


def block_circulant_tensor_product(a: TensorMG, b: TensorMG) -> TensorMG:
    """blockcirc(A) times the vertical stack of B's slices."""
    n = a.n
    stacked = b.slices.reshape(n * n, n)
    out = a.ring.matmul(block_circ_matrix(a), stacked)
    return TensorMG(a.group, a.ring, np.ascontiguousarray(out.reshape(n, n, n)))



# ----------------------------
# Comparison
# ----------------------------

def _values(x: Any) -> np.ndarray:
    if isinstance(x, MatrixVG):
        return x.entries
    if isinstance(x, TensorMG):
        return x.slices
    return x.coeffs


def compare(x: Any, y: Any) -> Tuple[bool, float]:
    """(equal under the ring's semantics, largest absolute residual)."""
    check_compatible(x, y)
    a, b = _values(x), _values(y)
    equal = x.ring.eq(a, b)
    if equal and x.ring.is_exact:
        return True, 0.0
    return equal, float(x.ring.distance(a, b))
