"""Property suites run by `verify`.

Each suite draws one generator per sample from the run seed, evaluates its
identities and folds the outcomes into AxiomReports. Float and complex rings
additionally get the transform suite and generated diagonalization instances.
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from .config import RunConfig, run_samples
from .diag import (
    DiagonalTensor,
    diagonal_product,
    generate_diag_instance,
    is_diagonal,
    lateral_slice,
    verify_diagonalization,
)
from .errors import NotInvertibleError
from .group import FiniteAbelianGroup, make_group
from .groupring import (
    gr_add,
    gr_anti_involution,
    gr_convolve_naive,
    gr_identity,
    gr_neg,
    gr_zero,
    make_coefficient_ring,
    random_element,
)
from .hom_iso import (
    ModuleHom,
    compose_homs,
    hom_apply,
    hom_from_tensor,
    natural_basis_image,
    tensor_from_hom,
)
from .models import AxiomReport, SuiteResult
from .module_structure import (
    check_free_basis,
    check_module_axioms,
    confined_to_identity_row,
    natural_basis_degeneracy_witness,
)
from .rings import CoefficientRing
from .tower import (
    block_circulant_matrix_product,
    block_circulant_tensor_product,
    circulant_scalar_product,
    circulant_vector_product,
    compare,
    embed_vector,
    identity_tensor,
    ket_bra,
    matrix_add,
    random_matrix,
    random_tensor,
    scalar_product,
    tensor_matrix_product,
    tensor_tensor_product,
)
from .transform import (
    gr_convolve_fast,
    parseval_residual,
    supports_transform,
    t_inverse_residual,
    tensor_t_inverse,
    tensor_tensor_product_fast,
)

logger = logging.getLogger(__name__)

Outcome = Tuple[bool, float]
SampleCheck = Callable[[np.random.Generator], List[Outcome]]

DIAG_INSTANCES = 20
NESTED_SAMPLES = 20


def _fold(names: Sequence[str], outcomes: List[List[Outcome]]) -> List[AxiomReport]:
    return [AxiomReport.from_outcomes(n, [o[i] for o in outcomes]) for i, n in enumerate(names)]


def _run(names: Sequence[str], check: SampleCheck, cfg: RunConfig) -> List[AxiomReport]:
    return _fold(names, run_samples(check, cfg.seed, cfg.samples, cfg.workers))


# ----------------------------
# products: convolution against the materialized circulants
# ----------------------------

PRODUCT_CHECKS = (
    "convolution_vs_circulant",
    "anti_scalar_vs_circulant",
    "tensor_matrix_vs_block_circulant",
    "tensor_tensor_vs_block_circulant",
    "scalar_as_embedded_tensor",
    "embedded_vector_commutes",
)


def products_suite(group: FiniteAbelianGroup, ring: CoefficientRing, cfg: RunConfig) -> SuiteResult:
    def check(rng: np.random.Generator) -> List[Outcome]:
        a = random_element(group, ring, rng)
        b = random_element(group, ring, rng)
        x = random_matrix(group, ring, rng)
        ta = random_tensor(group, ring, rng)
        tb = random_tensor(group, ring, rng)
        ea = embed_vector(a)
        return [
            compare(gr_convolve_naive(a, b), circulant_vector_product(a, b)),
            compare(scalar_product(gr_anti_involution(a), x), circulant_scalar_product(a, x)),
            compare(tensor_matrix_product(ta, x), block_circulant_matrix_product(ta, x)),
            compare(tensor_tensor_product(ta, tb), block_circulant_tensor_product(ta, tb)),
            compare(scalar_product(a, x), tensor_matrix_product(ea, x)),
            compare(tensor_tensor_product(ea, ta), tensor_tensor_product(ta, ea)),
        ]

    return SuiteResult("products", _run(PRODUCT_CHECKS, check, cfg))


# ----------------------------
# groupring: ring axioms of V and the anti-involution
# ----------------------------

RING_AXIOMS = (
    "add_associative",
    "add_commutative",
    "add_identity",
    "add_inverse",
    "mul_associative",
    "mul_commutative",
    "mul_identity",
    "distributive",
    "anti_involution_reverses_products",
    "anti_involution_is_involution",
)


def ring_axiom_check(group: FiniteAbelianGroup, ring: CoefficientRing) -> SampleCheck:
    zero = gr_zero(group, ring)
    one = gr_identity(group, ring)

    def check(rng: np.random.Generator) -> List[Outcome]:
        a = random_element(group, ring, rng)
        b = random_element(group, ring, rng)
        c = random_element(group, ring, rng)
        ab = gr_convolve_naive(a, b)
        return [
            compare(gr_add(gr_add(a, b), c), gr_add(a, gr_add(b, c))),
            compare(gr_add(a, b), gr_add(b, a)),
            compare(gr_add(a, zero), a),
            compare(gr_add(a, gr_neg(a)), zero),
            compare(gr_convolve_naive(ab, c), gr_convolve_naive(a, gr_convolve_naive(b, c))),
            compare(ab, gr_convolve_naive(b, a)),
            compare(gr_convolve_naive(one, a), a),
            compare(gr_convolve_naive(a, gr_add(b, c)), gr_add(ab, gr_convolve_naive(a, c))),
            compare(
                gr_anti_involution(ab),
                gr_convolve_naive(gr_anti_involution(b), gr_anti_involution(a)),
            ),
            compare(gr_anti_involution(gr_anti_involution(a)), a),
        ]

    return check


def groupring_suite(group: FiniteAbelianGroup, ring: CoefficientRing, cfg: RunConfig) -> SuiteResult:
    checks = _run(RING_AXIOMS, ring_axiom_check(group, ring), cfg)

    # Z2 over Z2[Z2[q]]: the order-3 commutative tensor ring
    nested = make_coefficient_ring("Z2[Z2[q]]")
    z2 = make_group([2])
    nested_outcomes = run_samples(
        ring_axiom_check(z2, nested), cfg.seed, min(cfg.samples, NESTED_SAMPLES), cfg.workers
    )
    for report in _fold(RING_AXIOMS, nested_outcomes):
        if report.axiom in ("mul_associative", "mul_commutative", "distributive"):
            report.axiom = f"nested_depth3_{report.axiom}"
            checks.append(report)
    return SuiteResult("groupring", checks)


# ----------------------------
# module: free module structure
# ----------------------------

def module_suite(group: FiniteAbelianGroup, ring: CoefficientRing, cfg: RunConfig) -> SuiteResult:
    checks = check_module_axioms(group, ring, cfg.samples, cfg.seed, cfg.workers)
    checks += check_free_basis(group, ring, cfg.samples, cfg.seed, cfg.workers)
    if group.order == 1:
        return SuiteResult("module", checks, note="natural-basis witness needs |G| > 1")
    witness = natural_basis_degeneracy_witness(
        ket_bra(group, ring, 1, 0), samples=min(cfg.samples, 100), seed=cfg.seed
    )
    checks.append(
        AxiomReport("natural_basis_confined", witness.samples, failures=witness.violations)
    )
    return SuiteResult("module", checks)


# ----------------------------
# iso: tensors and module homomorphisms
# ----------------------------

ISO_CHECKS = (
    "tensor_hom_round_trip",
    "hom_tensor_round_trip",
    "hom_apply_vs_tensor_product",
    "additive",
    "v_linear",
    "composition_vs_tensor_product",
    "natural_basis_image_confined",
)


def _compare_homs(a: ModuleHom, b: ModuleHom) -> Outcome:
    return a == b, float(a.ring.distance(a.alpha, b.alpha))


def iso_suite(group: FiniteAbelianGroup, ring: CoefficientRing, cfg: RunConfig) -> SuiteResult:
    n = group.order

    def check(rng: np.random.Generator) -> List[Outcome]:
        t1 = random_tensor(group, ring, rng)
        t2 = random_tensor(group, ring, rng)
        hom = ModuleHom(group, ring, np.asarray(ring.random(rng, (n, n, n)), dtype=ring.dtype))
        a = random_matrix(group, ring, rng)
        b = random_matrix(group, ring, rng)
        v = random_element(group, ring, rng)
        h = int(rng.integers(n))
        l1, l2 = hom_from_tensor(t1), hom_from_tensor(t2)
        ta = tensor_matrix_product(t1, a)
        return [
            compare(tensor_from_hom(l1), t1),
            _compare_homs(hom_from_tensor(tensor_from_hom(hom)), hom),
            compare(hom_apply(l1, a), ta),
            compare(tensor_matrix_product(t1, matrix_add(a, b)), matrix_add(ta, tensor_matrix_product(t1, b))),
            compare(tensor_matrix_product(t1, scalar_product(v, a)), scalar_product(v, ta)),
            compare(tensor_from_hom(compose_homs(l1, l2)), tensor_tensor_product(t1, t2)),
            (confined_to_identity_row(natural_basis_image(t1, h)), 0.0),
        ]

    return SuiteResult("iso", _run(ISO_CHECKS, check, cfg))


# ----------------------------
# transform: float and complex only
# ----------------------------

TRANSFORM_CHECKS = (
    "fast_vs_naive_convolution",
    "parseval",
    "fast_vs_naive_tensor_product",
    "t_inverse",
)


def transform_suite(group: FiniteAbelianGroup, ring: CoefficientRing, cfg: RunConfig) -> SuiteResult:
    def check(rng: np.random.Generator) -> List[Outcome]:
        a = random_element(group, ring, rng)
        b = random_element(group, ring, rng)
        ta = random_tensor(group, ring, rng)
        tb = random_tensor(group, ring, rng)
        energy = float(np.sum(np.abs(a.coeffs) ** 2))
        parseval = parseval_residual(a)
        try:
            inv = t_inverse_residual(ta, tensor_t_inverse(ta, cfg.condition_limit))
            inverse = (inv <= cfg.inverse_tol, inv)
        except NotInvertibleError as exc:
            logger.debug("t-inverse sample rejected: %s", exc)
            inverse = (False, float("inf"))
        return [
            compare(gr_convolve_fast(a, b), gr_convolve_naive(a, b)),
            (parseval <= cfg.tolerance * max(1.0, energy), parseval),
            compare(tensor_tensor_product_fast(ta, tb), tensor_tensor_product(ta, tb)),
            inverse,
        ]

    return SuiteResult("transform", _run(TRANSFORM_CHECKS, check, cfg))


# ----------------------------
# diag: diagonal tensors and the eigen-equation
# ----------------------------

DIAG_CHECKS = (
    "identity_diagonalizer",
    "diagonal_closure",
    "diagonal_commutative",
    "lateral_slice_commutes",
)


def diag_suite(group: FiniteAbelianGroup, ring: CoefficientRing, cfg: RunConfig) -> SuiteResult:
    def check(rng: np.random.Generator) -> List[Outcome]:
        d1 = DiagonalTensor.random(group, ring, rng)
        d2 = DiagonalTensor.random(group, ring, rng)
        t = random_tensor(group, ring, rng)
        x = random_tensor(group, ring, rng)
        k = int(rng.integers(group.order))
        trivial = verify_diagonalization(
            d1.to_tensor(), identity_tensor(group, ring), d1, cfg.hypothesis_tol, cfg.eigen_tol
        )
        product = tensor_tensor_product(d1.to_tensor(), d2.to_tensor())
        closed = is_diagonal(product) and compare(product, diagonal_product(d1, d2).to_tensor())[0]
        return [
            (trivial.passed, max(c.eigen_residual for c in trivial.checks)),
            (closed, 0.0),
            compare(diagonal_product(d1, d2).to_tensor(), diagonal_product(d2, d1).to_tensor()),
            compare(
                lateral_slice(tensor_tensor_product(t, x), k),
                tensor_matrix_product(t, lateral_slice(x, k)),
            ),
        ]

    checks = _run(DIAG_CHECKS, check, cfg)
    if not supports_transform(ring):
        return SuiteResult("diag", checks, note="generated instances need a float or complex ring")

    instances: List[Outcome] = []
    controls: List[Outcome] = []
    for i in range(DIAG_INSTANCES):
        t, x, diagonal = generate_diag_instance(
            group, ring, cfg.seed + i, max_draws=cfg.max_draws, condition_limit=cfg.condition_limit
        )
        report = verify_diagonalization(t, x, diagonal, cfg.hypothesis_tol, cfg.eigen_tol)
        worst = max([report.hypothesis_residual] + [c.eigen_residual for c in report.checks])
        instances.append((report.passed, worst))
        corrupted = verify_diagonalization(
            t, x, diagonal.perturb(0, 0, 1.0), cfg.hypothesis_tol, cfg.eigen_tol
        )
        controls.append((corrupted.status == "hypothesis_failed", corrupted.hypothesis_residual))
    checks.append(AxiomReport.from_outcomes("generated_instances", instances))
    checks.append(AxiomReport.from_outcomes("perturbed_control_flagged", controls))
    return SuiteResult("diag", checks)


SUITES: Dict[str, Callable[[FiniteAbelianGroup, CoefficientRing, RunConfig], SuiteResult]] = {
    "products": products_suite,
    "groupring": groupring_suite,
    "module": module_suite,
    "iso": iso_suite,
    "transform": transform_suite,
    "diag": diag_suite,
}


def applicable_suites(ring: CoefficientRing) -> List[str]:
    names = ["products", "groupring", "module", "iso"]
    if supports_transform(ring):
        names.append("transform")
    names.append("diag")
    return names


def run_suites(group: FiniteAbelianGroup, ring: CoefficientRing, cfg: RunConfig) -> List[SuiteResult]:
    """Run every suite that applies to the ring, in a fixed order."""
    results = []
    for name in applicable_suites(ring):
        logger.info("suite %s on %s over %s", name, group.spec, ring.spec)
        result = SUITES[name](group, ring, cfg)
        logger.info(
            "suite %s finished: %d failures",
            name, sum(c.failures for c in result.checks),
        )
        results.append(result)
    return results
