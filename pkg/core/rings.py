"""Commutative coefficient rings with identity.

Every ring works on scalars and on numpy arrays of its values alike: `add`,
`mul`, `neg` broadcast, so the group-ring and tower code never branch on the
backend. Exact backends keep Python objects (Fraction, int) in object arrays.
"""

from __future__ import annotations

import math
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, ClassVar, Optional, Tuple, Union

import numpy as np

from .errors import InvalidRingSpecError


DEFAULT_TOLERANCE = 1e-9

# Sums of products below this magnitude fit in int64.
INT64_BOUND = 2 ** 62

Shape = Union[int, Tuple[int, ...], None]


class CoefficientRing(ABC):
    """Interface shared by the scalar backends and by nested group rings."""

    kind: ClassVar[str] = ""
    dtype: ClassVar[Any] = object
    is_exact: ClassVar[bool] = True

    @property
    @abstractmethod
    def spec(self) -> str: ...

    @property
    def is_field(self) -> bool:
        return False

    @abstractmethod
    def zero(self) -> Any: ...

    @abstractmethod
    def one(self) -> Any: ...

    @abstractmethod
    def coerce(self, value: Any) -> Any:
        """Convert a plain value into this ring's canonical representation."""

    @abstractmethod
    def random(self, rng: np.random.Generator, shape: Shape = None) -> Any: ...

    @abstractmethod
    def encode(self, value: Any) -> Any:
        """JSON-ready form of one value."""

    @abstractmethod
    def decode(self, obj: Any) -> Any: ...

    def normalize(self, x: Any) -> Any:
        return x

    def add(self, x: Any, y: Any) -> Any:
        return self.normalize(x + y)

    def neg(self, x: Any) -> Any:
        return self.normalize(-x)

    def sub(self, x: Any, y: Any) -> Any:
        return self.normalize(x - y)

    def mul(self, x: Any, y: Any) -> Any:
        return self.normalize(x * y)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        left, right = self.to_integers(a), self.to_integers(b)
        if left is None or right is None:
            return self.normalize(a @ b)
        (lnums, lden), (rnums, rden) = left, right
        lnums, rnums = narrow_integers(lnums, rnums, np.shape(lnums)[-1])
        return self.from_integers(lnums @ rnums, lden * rden)

    # ----------------------------
    # Integer view
    # ----------------------------

    def to_integers(self, values: Any) -> Optional[Tuple[np.ndarray, int]]:
        """
        Integer numerators over one shared denominator, when the ring has them.

        Exact kinds run bulk products on this view instead of element by
        element Fraction arithmetic.

        Args:
            values: array of ring values

        Returns:
            (object array of ints, denominator), or None for rings without the view
        """
        return None

    def from_integers(self, nums: np.ndarray, denominator: int) -> np.ndarray:
        raise NotImplementedError(f"{self.spec} has no integer view")

    # ----------------------------
    # Arrays
    # ----------------------------

    def zeros(self, shape: Shape) -> np.ndarray:
        if self.dtype is object:
            arr = np.empty(shape, dtype=object)
            arr.fill(self.zero())
            return arr
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        arr = self.zeros((n, n))
        one = self.one()
        for i in range(n):
            arr[i, i] = one
        return arr

    def asarray(self, values: Any) -> np.ndarray:
        if self.dtype is object:
            raw = np.asarray(values, dtype=object)
            out = np.empty(raw.shape, dtype=object)
            for idx, v in np.ndenumerate(raw):
                out[idx] = self.coerce(v)
            return out
        return np.asarray(values, dtype=self.dtype)

    def eq(self, x: Any, y: Any) -> bool:
        return bool(np.all(self.close(x, y)))

    def close(self, x: Any, y: Any) -> Any:
        """Elementwise equality under this ring's semantics."""
        return np.asarray(x == y, dtype=bool)

    def distance(self, x: Any, y: Any) -> float:
        """Largest absolute residual between two values or arrays."""
        diff = np.asarray(self.sub(x, y), dtype=object)
        if diff.size == 0:
            return 0.0
        return float(max(abs(v) for v in diff.flat))

    def __str__(self) -> str:
        return self.spec


@dataclass(frozen=True)
class RationalRing(CoefficientRing):
    """Exact arbitrary-precision fractions."""

    kind: ClassVar[str] = "rational"

    @property
    def spec(self) -> str:
        return "q"

    @property
    def is_field(self) -> bool:
        return True

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, value: Any) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (np.integer,)):
            return Fraction(int(value))
        return Fraction(value)

    def random(self, rng: np.random.Generator, shape: Shape = None) -> Any:
        nums = rng.integers(-9, 10, size=shape)
        dens = rng.integers(1, 6, size=shape)
        if shape is None:
            return Fraction(int(nums), int(dens))
        build = np.frompyfunc(Fraction, 2, 1)
        return np.asarray(build(nums.astype(object), dens.astype(object)), dtype=object)

    def encode(self, value: Fraction) -> str:
        value = self.coerce(value)
        return f"{value.numerator}/{value.denominator}"

    def decode(self, obj: Any) -> Fraction:
        return self.coerce(obj)

    def to_integers(self, values: Any) -> Tuple[np.ndarray, int]:
        arr = np.asarray(values, dtype=object)
        den = math.lcm(*(v.denominator for v in arr.flat)) if arr.size else 1
        scale = np.frompyfunc(lambda v: v.numerator * (den // v.denominator), 1, 1)
        return np.asarray(scale(arr), dtype=object), den

    def from_integers(self, nums: np.ndarray, denominator: int) -> np.ndarray:
        lower = np.frompyfunc(lambda v: Fraction(int(v), denominator), 1, 1)
        return np.asarray(lower(nums), dtype=object)


@dataclass(frozen=True)
class ModularRing(CoefficientRing):
    """Integers modulo m; a ring, a field only for prime m."""

    modulus: int
    kind: ClassVar[str] = "mod_m"

    @property
    def spec(self) -> str:
        return f"zmod:{self.modulus}"

    @property
    def order(self) -> int:
        return self.modulus

    @property
    def is_field(self) -> bool:
        m = self.modulus
        return m >= 2 and all(m % p for p in range(2, int(m ** 0.5) + 1))

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1 % self.modulus

    def normalize(self, x: Any) -> Any:
        return x % self.modulus

    def coerce(self, value: Any) -> int:
        return int(value) % self.modulus

    def random(self, rng: np.random.Generator, shape: Shape = None) -> Any:
        draw = rng.integers(0, self.modulus, size=shape)
        if shape is None:
            return int(draw)
        return draw.astype(object)

    def encode(self, value: int) -> int:
        return self.coerce(value)

    def decode(self, obj: Any) -> int:
        return self.coerce(obj)

    def to_integers(self, values: Any) -> Tuple[np.ndarray, int]:
        return np.asarray(values, dtype=object), 1

    def from_integers(self, nums: np.ndarray, denominator: int) -> np.ndarray:
        # denominator is always 1 here
        return np.asarray(nums % self.modulus).astype(object)

    def distance(self, x: Any, y: Any) -> float:
        diff = np.asarray(self.sub(x, y), dtype=object)
        if diff.size == 0:
            return 0.0
        return float(max(min(int(v), self.modulus - int(v)) for v in diff.flat))


@dataclass(frozen=True)
class _ApproxRing(CoefficientRing):
    tolerance: float = DEFAULT_TOLERANCE
    is_exact: ClassVar[bool] = False

    @property
    def is_field(self) -> bool:
        return True

    def close(self, x: Any, y: Any) -> Any:
        x = np.asarray(x, dtype=self.dtype)
        y = np.asarray(y, dtype=self.dtype)
        scale = np.maximum(1.0, np.maximum(np.abs(x), np.abs(y)))
        return np.abs(x - y) <= self.tolerance * scale

    def distance(self, x: Any, y: Any) -> float:
        diff = np.abs(np.asarray(x, dtype=self.dtype) - np.asarray(y, dtype=self.dtype))
        return float(diff.max()) if diff.size else 0.0


@dataclass(frozen=True)
class RealRing(_ApproxRing):
    """64-bit binary floating point with tolerance equality."""

    kind: ClassVar[str] = "real_approx"
    dtype: ClassVar[Any] = np.float64

    @property
    def spec(self) -> str:
        return "f64"

    def zero(self) -> float:
        return 0.0

    def one(self) -> float:
        return 1.0

    def coerce(self, value: Any) -> float:
        if isinstance(value, str):
            value = Fraction(value)
        return float(value)

    def random(self, rng: np.random.Generator, shape: Shape = None) -> Any:
        draw = rng.standard_normal(size=shape)
        return float(draw) if shape is None else draw

    def encode(self, value: float) -> float:
        return float(value)

    def decode(self, obj: Any) -> float:
        return self.coerce(obj)


@dataclass(frozen=True)
class ComplexRing(_ApproxRing):
    """Pairs of 64-bit floats with tolerance equality."""

    kind: ClassVar[str] = "complex_approx"
    dtype: ClassVar[Any] = np.complex128

    @property
    def spec(self) -> str:
        return "c64"

    def zero(self) -> complex:
        return 0j

    def one(self) -> complex:
        return 1 + 0j

    def coerce(self, value: Any) -> complex:
        if isinstance(value, (list, tuple)):
            re_, im_ = value
            return complex(float(re_), float(im_))
        if isinstance(value, str):
            value = Fraction(value)
        return complex(value)

    def random(self, rng: np.random.Generator, shape: Shape = None) -> Any:
        re_ = rng.standard_normal(size=shape)
        im_ = rng.standard_normal(size=shape)
        draw = re_ + 1j * im_
        return complex(draw) if shape is None else draw

    def encode(self, value: complex) -> list:
        value = complex(value)
        return [value.real, value.imag]

    def decode(self, obj: Any) -> complex:
        return self.coerce(obj)


def narrow_integers(left: np.ndarray, right: np.ndarray, terms: int) -> Tuple[np.ndarray, np.ndarray]:
    """Cast two integer arrays to int64 when sums of `terms` products of their entries cannot overflow."""
    def magnitude(nums: np.ndarray) -> int:
        return max((abs(int(v)) for v in np.asarray(nums).flat), default=0)

    if magnitude(left) * magnitude(right) * max(int(terms), 1) < INT64_BOUND:
        return np.asarray(left).astype(np.int64), np.asarray(right).astype(np.int64)
    return left, right


_ZMOD_RE = re.compile(r"^zmod:(-?\d+)$")


def make_ring(spec: str, tolerance: Optional[float] = None) -> CoefficientRing:
    """
    Build a scalar coefficient ring from its spec string.

    Args:
        spec: one of `q`, `zmod:<m>`, `f64`, `c64` (case-insensitive)
        tolerance: relative tolerance for the approximate kinds (default 1e-9)

    Returns:
        The ring handle
    """
    text = (spec or "").strip().lower()
    tol = DEFAULT_TOLERANCE if tolerance is None else float(tolerance)
    if not tol >= 0.0:
        raise InvalidRingSpecError(f"tolerance must be non-negative, got {tolerance!r}")

    if text == "q":
        return RationalRing()
    if text == "f64":
        return RealRing(tol)
    if text == "c64":
        return ComplexRing(tol)
    m = _ZMOD_RE.match(text)
    if m:
        modulus = int(m.group(1))
        if modulus < 2:
            raise InvalidRingSpecError(f"zmod modulus must be at least 2, got {modulus}")
        return ModularRing(modulus)
    raise InvalidRingSpecError(f"unknown ring spec {spec!r}; expected q, zmod:<m>, f64 or c64")
