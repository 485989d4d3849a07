"""Tests for rings module."""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core.errors import InvalidRingSpecError
from core.rings import INT64_BOUND, ComplexRing, ModularRing, RationalRing, RealRing, make_ring, narrow_integers

LAW_KINDS = ["q", "zmod:7", "zmod:6", "f64", "c64"]
TRIPLES = 1000


def test_make_ring_kinds():
    """Test each spec maps to its backend."""
    assert isinstance(make_ring("q"), RationalRing)
    assert isinstance(make_ring("Q"), RationalRing)
    assert make_ring("zmod:7") == ModularRing(7)
    assert isinstance(make_ring("f64"), RealRing)
    assert isinstance(make_ring("c64"), ComplexRing)


@pytest.mark.parametrize("spec", ["zmod:1", "zmod:0", "zmod:-3", "r", "", "f32"])
def test_make_ring_invalid(spec):
    """Test unknown specs and tiny moduli are rejected."""
    with pytest.raises(InvalidRingSpecError):
        make_ring(spec)


def test_make_ring_negative_tolerance():
    """Test that a negative tolerance is rejected."""
    with pytest.raises(InvalidRingSpecError):
        make_ring("f64", -1.0)


def test_modular_arithmetic():
    """Test zmod:7 wraps around."""
    ring = make_ring("zmod:7")
    assert ring.add(1, 6) == 0
    assert ring.order == 7
    assert ring.is_field
    assert not make_ring("zmod:6").is_field


def test_rational_arithmetic_exact():
    """Test 2/3 + 1/6 = 5/6 exactly."""
    ring = make_ring("q")
    assert ring.add(Fraction(2, 3), Fraction(1, 6)) == Fraction(5, 6)
    assert ring.encode(Fraction(5, 6)) == "5/6"
    assert ring.decode("5/6") == Fraction(5, 6)


def test_float_tolerance_equality():
    """Test eq(0.1 + 0.2, 0.3) under tolerance 1e-9."""
    ring = make_ring("f64", 1e-9)
    assert ring.eq(0.1 + 0.2, 0.3)
    assert not ring.eq(0.1, 0.2)


def test_complex_encode_decode():
    """Test complex values travel as [re, im]."""
    ring = make_ring("c64")
    assert ring.encode(1 + 2j) == [1.0, 2.0]
    assert ring.decode([1.0, 2.0]) == 1 + 2j


def test_rational_random_is_seeded():
    """Test that the same seed reproduces the same draws."""
    ring = make_ring("q")
    a = ring.random(np.random.default_rng(3), (4,))
    b = ring.random(np.random.default_rng(3), (4,))
    assert list(a) == list(b)
    assert all(isinstance(v, Fraction) for v in a)


def test_array_helpers_exact():
    """Test zeros, eye and matmul on object arrays."""
    ring = make_ring("q")
    eye = ring.eye(3)
    m = ring.asarray([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert ring.eq(ring.matmul(m, eye), m)
    assert ring.eq(ring.zeros((2, 2)), ring.asarray([[0, 0], [0, 0]]))


def test_modular_distance_is_circular():
    """Test distance mod m measures the shorter way round."""
    ring = make_ring("zmod:7")
    assert ring.distance(np.array([1], dtype=object), np.array([6], dtype=object)) == 2.0


@pytest.mark.parametrize("spec", LAW_KINDS)
@settings(max_examples=5, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_ring_axioms(spec, seed):
    """Test the commutative ring axioms on 1000 random triples per kind."""
    ring = make_ring(spec)
    rng = np.random.default_rng(seed)
    x, y, z = (np.asarray(ring.random(rng, (TRIPLES,)), dtype=ring.dtype) for _ in range(3))
    zero, one = ring.zeros(TRIPLES), ring.zeros(TRIPLES)
    one[:] = ring.one()

    assert ring.eq(ring.add(ring.add(x, y), z), ring.add(x, ring.add(y, z)))
    assert ring.eq(ring.add(x, y), ring.add(y, x))
    assert ring.eq(ring.mul(ring.mul(x, y), z), ring.mul(x, ring.mul(y, z)))
    assert ring.eq(ring.mul(x, y), ring.mul(y, x))
    assert ring.eq(ring.mul(x, ring.add(y, z)), ring.add(ring.mul(x, y), ring.mul(x, z)))
    assert ring.eq(ring.add(x, zero), x)
    assert ring.eq(ring.mul(x, one), x)
    assert ring.eq(ring.add(x, ring.neg(x)), zero)
    assert ring.eq(ring.sub(x, y), ring.add(x, ring.neg(y)))


@pytest.mark.parametrize("modulus", [7, 6])
def test_modular_units(modulus):
    """Test every nonzero residue is a unit exactly when the modulus is prime."""
    ring = make_ring(f"zmod:{modulus}")
    units = [x for x in range(1, modulus) if any(ring.mul(x, y) == ring.one() for y in range(modulus))]
    assert (len(units) == modulus - 1) == ring.is_field


def test_rational_integer_view():
    """Test rationals lift to numerators over the lcm of their denominators and back."""
    ring = make_ring("q")
    values = ring.asarray([Fraction(1, 2), Fraction(-2, 3), Fraction(5)])
    nums, den = ring.to_integers(values)
    assert den == 6
    assert list(nums) == [3, -4, 30]
    assert list(ring.from_integers(nums, den)) == list(values)


def test_float_rings_have_no_integer_view():
    """Test approximate kinds decline the integer view."""
    assert make_ring("f64").to_integers(np.ones(3)) is None
    assert make_ring("c64").to_integers(np.ones(3, dtype=complex)) is None


def test_narrow_integers_keeps_large_values_as_objects():
    """Test values that could overflow int64 stay Python ints."""
    small = np.array([3, -4], dtype=object)
    big = np.array([INT64_BOUND, 1], dtype=object)
    left, right = narrow_integers(small, small, terms=2)
    assert left.dtype == np.int64 and right.dtype == np.int64
    left, right = narrow_integers(big, small, terms=1)
    assert left.dtype == object


def test_rational_matmul_with_huge_entries_is_exact():
    """Test matmul stays exact when numerators exceed int64."""
    ring = make_ring("q")
    huge = Fraction(2 ** 70, 3)
    m = ring.asarray([[huge, Fraction(1, 5)], [Fraction(-1, 7), huge]])
    v = ring.asarray([Fraction(3), Fraction(1, 2)])
    out = ring.matmul(m, v)
    assert out[0] == huge * 3 + Fraction(1, 10)
    assert out[1] == Fraction(-3, 7) + huge / 2


def test_modular_matmul_reduces():
    """Test the integer view reduces matmul results mod m."""
    ring = make_ring("zmod:5")
    m = ring.asarray([[4, 4], [3, 1]])
    assert list(ring.matmul(m, ring.asarray([4, 4]))) == [2, 1]
