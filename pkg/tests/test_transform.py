"""Tests for transform module."""
import numpy as np
import pytest

from core.errors import NotInvertibleError, UnsupportedRingError
from core.group import make_group
from core.groupring import from_coeffs, gr_convolve_naive, gr_delta, gr_identity, random_element
from core.rings import make_ring
from core.tower import identity_tensor, random_tensor, tensor_from_slices, tensor_tensor_product
from core.transform import (
    GroupSpectrum,
    gft_forward,
    gft_inverse,
    gr_convolve_fast,
    parseval_residual,
    t_inverse_residual,
    tensor_t_inverse,
    tensor_tensor_product_fast,
)

F64 = make_ring("f64")
C64 = make_ring("c64")


def test_forward_examples():
    """Test the delta and the 2-point transform."""
    z4 = make_group([4])
    assert np.allclose(gft_forward(from_coeffs(z4, F64, [1.0, 0, 0, 0])).values, [1, 1, 1, 1])
    z2 = make_group([2])
    assert np.allclose(gft_forward(from_coeffs(z2, F64, [1.0, 1.0])).values, [2, 0])


def test_exact_ring_rejected():
    """Test that rational elements cannot be transformed."""
    a = from_coeffs(make_group([3]), make_ring("q"), [1, 2, 3])
    with pytest.raises(UnsupportedRingError):
        gft_forward(a)
    with pytest.raises(UnsupportedRingError):
        gr_convolve_fast(a, a)


@pytest.mark.parametrize("moduli", [[4], [3, 2], [17], [2, 2, 2]])
def test_round_trip(moduli):
    """Test gft_inverse(gft_forward(a)) == a."""
    g = make_group(moduli)
    a = random_element(g, F64, np.random.default_rng(2))
    assert gft_inverse(gft_forward(a)) == a


@pytest.mark.parametrize("order", [12, 17, 64, 4096])
def test_fast_matches_naive(order):
    """Test fast convolution against the naive double loop."""
    g = make_group([order])
    rng = np.random.default_rng(order)
    a, b = random_element(g, F64, rng), random_element(g, F64, rng)
    fast = gr_convolve_fast(a, b)
    naive = gr_convolve_naive(a, b)
    assert F64.distance(fast.coeffs, naive.coeffs) <= 1e-9 * max(1.0, np.abs(naive.coeffs).max())


def test_fast_complex_product_group():
    """Test fast convolution on Z3xZ2 with complex coefficients."""
    g = make_group([3, 2])
    rng = np.random.default_rng(9)
    a, b = random_element(g, C64, rng), random_element(g, C64, rng)
    assert gr_convolve_fast(a, b) == gr_convolve_naive(a, b)


def test_fast_identity_and_shifts():
    """Test a * 1 = a and delta shifts compose on Z8."""
    g = make_group([8])
    a = random_element(g, F64, np.random.default_rng(4))
    assert gr_convolve_fast(a, gr_identity(g, F64)) == a
    shifted = gr_convolve_fast(gr_delta(g.elem(3), F64), gr_delta(g.elem(6), F64))
    assert shifted == gr_delta(g.elem(1), F64)


def test_spectrum_shape_checked():
    """Test that a spectrum needs one value per character."""
    with pytest.raises(ValueError):
        GroupSpectrum(make_group([3]), np.zeros(2), F64)


def test_parseval():
    """Test energy is preserved up to the 1/n factor."""
    a = random_element(make_group([4, 3]), F64, np.random.default_rng(6))
    assert parseval_residual(a) < 1e-9


def test_t_inverse_identity_and_scalar():
    """Test inverses of E and of 2E."""
    g = make_group([3])
    e = identity_tensor(g, F64)
    assert tensor_t_inverse(e) == e
    two = tensor_from_slices(g, F64, 2.0 * e.slices)
    inv = tensor_t_inverse(two)
    assert np.allclose(inv.slices[0], 0.5 * np.eye(3))
    assert np.allclose(inv.slices[1:], 0.0)


def test_t_inverse_random():
    """Test X * X^-1 = E for a seeded random X."""
    g = make_group([3])
    x = random_tensor(g, F64, np.random.default_rng(42))
    assert t_inverse_residual(x, tensor_t_inverse(x)) <= 1e-8


def test_t_inverse_singular():
    """Test a zero tensor reports the offending character."""
    g = make_group([3])
    zero = tensor_from_slices(g, F64, np.zeros((3, 3, 3)))
    with pytest.raises(NotInvertibleError) as info:
        tensor_t_inverse(zero)
    assert info.value.character_index == 0


def test_t_inverse_singular_character():
    """Test a slice sum that vanishes at one character only."""
    g = make_group([2])
    # Transforms to I + I at chi=0 and I - I at chi=1
    x = tensor_from_slices(g, F64, np.stack([np.eye(2), np.eye(2)]))
    with pytest.raises(NotInvertibleError) as info:
        tensor_t_inverse(x)
    assert info.value.character_index == 1


def test_fast_tensor_product_matches_naive():
    """Test the slice-wise transform product."""
    g = make_group([2, 2])
    rng = np.random.default_rng(8)
    a, b = random_tensor(g, F64, rng), random_tensor(g, F64, rng)
    assert tensor_tensor_product_fast(a, b) == tensor_tensor_product(a, b)
