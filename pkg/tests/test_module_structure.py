"""Tests for module_structure module."""
import numpy as np
import pytest

from core.errors import InapplicableWitnessError
from core.group import make_group
from core.groupring import from_coeffs, gr_identity, is_zero
from core.module_structure import (
    MODULE_AXIOMS,
    CoordinateVector,
    check_free_basis,
    check_module_axioms,
    confined_to_identity_row,
    decompose,
    natural_basis,
    natural_basis_degeneracy_witness,
    random_coordinates,
    reconstruct,
    transposed_basis,
)
from core.rings import make_ring
from core.tower import identity_matrix, ket_bra, matrix_from_rows, random_matrix, scalar_product, zero_matrix

Q = make_ring("q")
Z2 = make_group([2])


def test_decompose_reads_rows():
    """Test coordinates of [[1,2],[3,4]] are its rows."""
    coords = decompose(matrix_from_rows(Z2, Q, [[1, 2], [3, 4]]))
    assert coords[0] == from_coeffs(Z2, Q, [1, 2])
    assert coords[1] == from_coeffs(Z2, Q, [3, 4])


def test_decompose_basis_element():
    """Test B_g has coordinate 1 at g and zero elsewhere."""
    g = make_group([3])
    for b in transposed_basis(g, Q):
        coords = decompose(b.matrix)
        for l, c in enumerate(coords):
            if l == b.label.index:
                assert c == gr_identity(g, Q)
            else:
                assert is_zero(c)


def test_decompose_zero():
    """Test the zero matrix has zero coordinates."""
    assert all(is_zero(c) for c in decompose(zero_matrix(Z2, Q)))


def test_reconstruct_identity_and_single_term():
    """Test reconstruct on I and on a single coordinate."""
    g = make_group([4])
    assert reconstruct(decompose(identity_matrix(g, Q))) == identity_matrix(g, Q)

    a0 = from_coeffs(Z2, Q, [0, 1])
    coords = CoordinateVector(Z2, Q, (a0, from_coeffs(Z2, Q, [0, 0])))
    assert reconstruct(coords) == scalar_product(a0, ket_bra(Z2, Q, 0, 0))


@pytest.mark.parametrize("moduli", [[1], [2], [3], [4], [2, 2], [4, 2], [4, 4]])
def test_round_trip_exact(moduli):
    """Test reconstruct(decompose(X)) == X over Q."""
    g = make_group(moduli)
    rng = np.random.default_rng(sum(moduli))
    x = random_matrix(g, Q, rng)
    assert reconstruct(decompose(x)) == x
    c = random_coordinates(g, Q, rng)
    assert all(a == b for a, b in zip(decompose(reconstruct(c)), c))


def test_basis_layouts():
    """Test B_g = |g><1| and B~_g = |1><g|."""
    g = make_group([4])
    for b in transposed_basis(g, Q):
        assert b.matrix == ket_bra(g, Q, b.label.index, 0)
    for b in natural_basis(g, Q):
        assert b.matrix == ket_bra(g, Q, 0, b.label.index)


def test_module_axioms_exact():
    """Test every axiom and lemma holds exactly over Q on Z4."""
    reports = check_module_axioms(make_group([4]), Q, samples=30, seed=7)
    assert [r.axiom for r in reports] == list(MODULE_AXIOMS)
    assert all(r.passed and r.max_residual == 0.0 for r in reports)


def test_module_axioms_float():
    """Test the axioms within tolerance over floats on Z3xZ2."""
    reports = check_module_axioms(make_group([3, 2]), make_ring("f64"), samples=30, seed=1, workers=2)
    assert all(r.passed for r in reports)
    assert max(r.max_residual for r in reports) <= 1e-9


def test_module_axioms_trivial_group():
    """Test the trivial group collapses to ring axioms."""
    reports = check_module_axioms(make_group([1]), Q, samples=10)
    assert all(r.passed for r in reports)


def test_free_basis_checks():
    """Test round trips and independence on a product group."""
    reports = check_free_basis(make_group([2, 2]), Q, samples=20, seed=3)
    assert all(r.passed for r in reports)


def test_natural_basis_single_term():
    """Test (1,2) o B~_0 on Z2 stays in row 0."""
    a = from_coeffs(Z2, Q, [1, 2])
    out = scalar_product(a, ket_bra(Z2, Q, 0, 0))
    assert out == matrix_from_rows(Z2, Q, [[1, 2], [0, 0]])
    assert confined_to_identity_row(out)


def test_degeneracy_witness():
    """Test no natural-basis combination leaves row 1_G."""
    x = ket_bra(Z2, Q, 1, 0)
    report = natural_basis_degeneracy_witness(x, samples=100, seed=0)
    assert report.passed
    assert report.confined == 100
    assert report.target_outside_row == [(1, 0)]


def test_degeneracy_witness_inapplicable():
    """Test the witness refuses a matrix already confined to row 1_G."""
    with pytest.raises(InapplicableWitnessError):
        natural_basis_degeneracy_witness(ket_bra(Z2, Q, 0, 1))


def test_axiom_reports_are_seed_deterministic():
    """Test identical seeds give identical reports regardless of workers."""
    g = make_group([3])
    ring = make_ring("f64")
    a = check_module_axioms(g, ring, samples=12, seed=5, workers=1)
    b = check_module_axioms(g, ring, samples=12, seed=5, workers=4)
    assert [r.to_dict() for r in a] == [r.to_dict() for r in b]
