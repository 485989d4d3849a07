"""Finite abelian groups as explicit products of cyclic groups."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from .errors import GroupMismatchError, InvalidGroupSpecError


_FACTOR_RE = re.compile(r"^z(\d+)$")


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z_{n1} x ... x Z_{nk}, elements indexed mixed-radix (first factor most significant)."""

    moduli: Tuple[int, ...]

    @property
    def order(self) -> int:
        return int(np.prod(self.moduli, dtype=object))

    @property
    def spec(self) -> str:
        return "x".join(f"Z{n}" for n in self.moduli)

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.moduli))

    def __str__(self) -> str:
        return self.spec

    def __iter__(self) -> Iterator["GroupElement"]:
        for i in range(self.order):
            yield self.elem(i)

    def __len__(self) -> int:
        return self.order

    def elem(self, i: int) -> "GroupElement":
        if not 0 <= i < self.order:
            raise IndexError(f"index {i} out of range for {self.spec} (order {self.order})")
        residues: List[int] = []
        for n in reversed(self.moduli):
            i, r = divmod(i, n)
            residues.append(r)
        return GroupElement(self, tuple(reversed(residues)))

    def index(self, g: "GroupElement") -> int:
        self._check_member(g)
        i = 0
        for r, n in zip(g.residues, self.moduli):
            i = i * n + r
        return i

    def element(self, *residues: int) -> "GroupElement":
        """Build an element from (possibly unreduced) residues."""
        if len(residues) != len(self.moduli):
            raise GroupMismatchError(
                f"{self.spec} needs {len(self.moduli)} residues, got {len(residues)}"
            )
        return GroupElement(self, tuple(r % n for r, n in zip(residues, self.moduli)))

    def _check_member(self, g: "GroupElement") -> None:
        if g.group != self:
            raise GroupMismatchError(f"element of {g.group.spec} used with {self.spec}")

    # ----------------------------
    # Index tables shared by every convolution in the tower
    # ----------------------------

    @cached_property
    def residue_table(self) -> np.ndarray:
        """(order, k) array of residues, row i = elem(i)."""
        grids = np.indices(self.moduli).reshape(len(self.moduli), -1)
        return grids.T.copy()

    @cached_property
    def cayley_table(self) -> np.ndarray:
        """table[i, j] = index(elem(i) o elem(j))."""
        res = self.residue_table
        summed = (res[:, None, :] + res[None, :, :]) % np.asarray(self.moduli)
        return self._ravel(summed)

    @cached_property
    def inverse_table(self) -> np.ndarray:
        """table[i] = index(elem(i)^-1)."""
        return self._ravel((-self.residue_table) % np.asarray(self.moduli))

    @cached_property
    def quotient_table(self) -> np.ndarray:
        """table[i, j] = index(elem(i) o elem(j)^-1)."""
        return self.cayley_table[:, self.inverse_table]

    def _ravel(self, residues: np.ndarray) -> np.ndarray:
        flat = np.ravel_multi_index(tuple(np.moveaxis(residues, -1, 0)), self.moduli)
        return flat.astype(np.intp)


@dataclass(frozen=True)
class GroupElement:
    """A residue tuple, always reduced modulo the group's factors."""

    group: FiniteAbelianGroup
    residues: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.residues) != len(self.group.moduli):
            raise GroupMismatchError(
                f"{self.group.spec} needs {len(self.group.moduli)} residues, got {len(self.residues)}"
            )
        for r, n in zip(self.residues, self.group.moduli):
            if not 0 <= r < n:
                raise ValueError(f"residue {r} not reduced modulo {n}")

    @property
    def index(self) -> int:
        return self.group.index(self)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def __str__(self) -> str:
        if len(self.residues) == 1:
            return str(self.residues[0])
        return "(" + ",".join(str(r) for r in self.residues) + ")"


def make_group(moduli: Sequence[int]) -> FiniteAbelianGroup:
    """
    Build the direct product Z_{n1} x ... x Z_{nk}.

    Args:
        moduli: cyclic factor sizes, first factor most significant

    Returns:
        The group handle

    Raises:
        InvalidGroupSpecError: no factors, or a factor below 1
    """
    moduli = list(moduli)
    if not moduli:
        raise InvalidGroupSpecError("a group needs at least one cyclic factor")
    for n in moduli:
        if int(n) != n or n < 1:
            raise InvalidGroupSpecError(f"cyclic modulus must be a positive integer, got {n!r}")
    return FiniteAbelianGroup(tuple(int(n) for n in moduli))


def parse_group_spec(spec: str) -> FiniteAbelianGroup:
    """
    Parse `Z<n>` or `Z<n1>xZ<n2>x...` (case-insensitive).

    Args:
        spec: group spec string, e.g. "Z4xZ2"

    Returns:
        The corresponding FiniteAbelianGroup
    """
    text = re.sub(r"\s+", "", (spec or "").strip().lower())
    if not text:
        raise InvalidGroupSpecError("empty group spec")
    moduli: List[int] = []
    for part in text.split("x"):
        m = _FACTOR_RE.match(part)
        if not m:
            raise InvalidGroupSpecError(f"cannot parse group factor {part!r} in {spec!r}")
        moduli.append(int(m.group(1)))
    return make_group(moduli)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """
    The group operation, written additively: residues add factor by factor.

    Args:
        g: left operand
        h: right operand, from the same group

    Returns:
        g o h
    """
    if g.group != h.group:
        raise GroupMismatchError(f"cannot compose elements of {g.group.spec} and {h.group.spec}")
    group = g.group
    return GroupElement(
        group, tuple((a + b) % n for a, b, n in zip(g.residues, h.residues, group.moduli))
    )


def inverse(g: GroupElement) -> GroupElement:
    """
    g^-1, the residues negated modulo each factor.

    Args:
        g: any element

    Returns:
        The element h with g o h = identity
    """
    return GroupElement(g.group, tuple((-r) % n for r, n in zip(g.residues, g.group.moduli)))
