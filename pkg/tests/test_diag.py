"""Tests for diag module."""
import numpy as np
import pytest

from core.diag import (
    DiagonalTensor,
    diagonal_product,
    generate_diag_instance,
    is_diagonal,
    lateral_slice,
    tube,
    verify_diagonalization,
)
from core.errors import GenerationFailedError, StructureMismatchError, UnsupportedRingError
from core.group import make_group
from core.groupring import from_coeffs, gr_embed_scalar, gr_identity
from core.rings import make_ring
from core.tower import (
    identity_tensor,
    ket_bra,
    matrix_from_rows,
    random_tensor,
    tensor_from_slices,
    tensor_matrix_product,
    tensor_tensor_product,
    zero_matrix,
    zero_tensor,
)

Q = make_ring("q")
F64 = make_ring("f64")
Z2 = make_group([2])
Z3 = make_group([3])


def test_lateral_slice_identity_tensor():
    """Test E^(k) = B_k."""
    e = identity_tensor(Z3, Q)
    for k in range(3):
        assert lateral_slice(e, k) == ket_bra(Z3, Q, k, 0)


def test_lateral_slice_example():
    """Test X^(1) collects column 1 of every slice."""
    x = tensor_from_slices(Z2, Q, [[[1, 2], [3, 4]], [[5, 6], [7, 8]]])
    assert lateral_slice(x, 1) == matrix_from_rows(Z2, Q, [[2, 6], [4, 8]])
    assert lateral_slice(zero_tensor(Z2, Q), 0) == zero_matrix(Z2, Q)


def test_tube_examples():
    """Test tubes of E, of a constant diagonal and of a table readout."""
    e = DiagonalTensor.from_tensor(identity_tensor(Z3, Q))
    for k in range(3):
        assert tube(e, k) == gr_identity(Z3, Q)

    d = Q.zeros((3, 3))
    d[0, :] = Q.coerce(7)
    assert tube(DiagonalTensor(Z3, Q, d), 1) == gr_embed_scalar(7, Z3, Q)

    table = Q.asarray([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert tube(DiagonalTensor(Z3, Q, table), 2) == from_coeffs(Z3, Q, [3, 6, 9])


def test_diagonal_tensor_round_trip():
    """Test to_tensor and from_tensor are inverse."""
    rng = np.random.default_rng(0)
    diag = DiagonalTensor.random(Z3, Q, rng)
    t = diag.to_tensor()
    assert is_diagonal(t)
    assert Q.eq(DiagonalTensor.from_tensor(t).d, diag.d)


def test_from_tensor_rejects_off_diagonal():
    """Test a full tensor is not diagonal."""
    t = random_tensor(Z3, Q, np.random.default_rng(1))
    assert not is_diagonal(t)
    with pytest.raises(StructureMismatchError):
        DiagonalTensor.from_tensor(t)


def test_diagonal_product_closed_and_commutative():
    """Test diagonal tensors form a commutative sub-ring."""
    rng = np.random.default_rng(2)
    a, b = DiagonalTensor.random(Z3, Q, rng), DiagonalTensor.random(Z3, Q, rng)
    product = tensor_tensor_product(a.to_tensor(), b.to_tensor())
    assert is_diagonal(product)
    assert product == diagonal_product(a, b).to_tensor()
    assert diagonal_product(a, b).to_tensor() == diagonal_product(b, a).to_tensor()


def test_lateral_slice_commutes_with_product():
    """Test (T * X)^(k) = T * X^(k)."""
    rng = np.random.default_rng(3)
    g = make_group([2, 2])
    t, x = random_tensor(g, Q, rng), random_tensor(g, Q, rng)
    for k in range(4):
        assert lateral_slice(tensor_tensor_product(t, x), k) == tensor_matrix_product(t, lateral_slice(x, k))


def test_identity_diagonalizer_exact():
    """Test T = L, X = E passes over Q."""
    diag = DiagonalTensor.random(Z3, Q, np.random.default_rng(4))
    report = verify_diagonalization(diag.to_tensor(), identity_tensor(Z3, Q), diag)
    assert report.status == "ok"
    assert report.hypothesis_residual == 0.0
    assert [c.k for c in report.checks] == [0, 1, 2]


@pytest.mark.parametrize("moduli", [[3], [4], [2, 2]])
def test_generated_instances_pass(moduli):
    """Test generated instances satisfy the hypothesis and every eigen-equation."""
    g = make_group(moduli)
    for seed in range(5):
        t, x, diag = generate_diag_instance(g, F64, seed)
        report = verify_diagonalization(t, x, diag)
        assert report.passed
        assert report.hypothesis_residual <= 1e-8
        assert all(c.eigen_residual <= 1e-7 for c in report.checks)


def test_generate_seed_42_z3():
    """Test the seeded Z3 instance meets the hypothesis tolerance."""
    t, x, diag = generate_diag_instance(Z3, F64, 42)
    assert tensor_tensor_product(t, x) == tensor_tensor_product(x, diag.to_tensor())


def test_generate_with_identity_diagonal():
    """Test conjugating E gives E."""
    t, _, _ = generate_diag_instance(Z3, F64, 0, diagonal=DiagonalTensor.identity(Z3, F64))
    assert t == identity_tensor(Z3, F64)


def test_generate_trivial_group():
    """Test Z1 reduces to the matrix equation T X = X L."""
    g = make_group([1])
    t, x, diag = generate_diag_instance(g, F64, 3)
    assert np.allclose(t.slices[0] @ x.slices[0], x.slices[0] @ np.diag(diag.d[0]))
    assert verify_diagonalization(t, x, diag).passed


def test_perturbed_diagonal_flagged():
    """Test a corrupted L fails the hypothesis but still reports every k."""
    t, x, diag = generate_diag_instance(make_group([4]), F64, 1)
    report = verify_diagonalization(t, x, diag.perturb(0, 2, 1.0))
    assert report.status == "hypothesis_failed"
    assert len(report.checks) == 4
    assert report.to_dict()["pass"] is False


def test_generate_rejects_exact_ring():
    """Test instance generation needs floats."""
    with pytest.raises(UnsupportedRingError):
        generate_diag_instance(Z3, Q, 0)


def test_generate_gives_up():
    """Test an impossible conditioning bound exhausts the draws."""
    with pytest.raises(GenerationFailedError):
        generate_diag_instance(Z3, F64, 0, max_draws=3, condition_limit=0.5)
