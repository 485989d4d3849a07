"""Plain-text walkthroughs and report tables shared by the CLI and the UI."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, List, Sequence

import numpy as np
import pandas as pd

from .errors import DemoTooLargeError
from .group import FiniteAbelianGroup
from .groupring import GroupRingElement, gr_anti_involution, gr_convolve_naive, random_element
from .hom_iso import hom_apply, hom_from_tensor, natural_basis_image, tensor_from_hom
from .models import DiagonalizationReport, SuiteResult
from .module_structure import (
    combine_natural,
    decompose,
    natural_basis,
    natural_basis_degeneracy_witness,
    random_coordinates,
    transposed_basis,
)
from .rings import CoefficientRing
from .tower import (
    MatrixVG,
    TensorMG,
    block_circulant_matrix_product,
    circ_matrix,
    circulant_scalar_product,
    circulant_vector_product,
    ket_bra,
    random_matrix,
    random_tensor,
    scalar_product,
    tensor_matrix_product,
)

DEMOS = ("products", "basis", "iso", "degenerate")
RULE = "-" * 60


def check_demo_size(group: FiniteAbelianGroup, max_order: int = 8) -> None:
    if group.order > max_order:
        raise DemoTooLargeError(
            f"demos print every entry; {group.spec} has order {group.order} > {max_order}"
        )


# ----------------------------
# Value formatting
# ----------------------------

def format_value(v: Any) -> str:
    if isinstance(v, GroupRingElement):
        return "(" + ", ".join(format_value(c) for c in v.coeffs) + ")"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (complex, np.complexfloating)):
        return f"{v.real:.4g}{v.imag:+.4g}j"
    if isinstance(v, (float, np.floating)):
        return f"{v:.4g}"
    return str(v)


def format_element(a: GroupRingElement) -> str:
    """sum of c|g> terms, zero coefficients dropped."""
    terms = [f"{format_value(a.coeffs[i])}|{a.group.elem(i)}>" for i in a.support]
    return " + ".join(terms) if terms else "0"


def format_matrix(x: MatrixVG) -> str:
    labels = [str(g) for g in x.group]
    grid = [[format_value(v) for v in row] for row in x.entries]
    return pd.DataFrame(grid, index=labels, columns=labels).to_string()


def format_tensor(t: TensorMG) -> str:
    parts = []
    for g in t.group:
        parts.append(f"slice {g}:")
        parts.append(format_matrix(t.slice(g.index)))
    return "\n".join(parts)


def _verdict(same: bool) -> str:
    return "equal" if same else "DIFFERENT"


# ----------------------------
# Walkthroughs
# ----------------------------

def render_products(group: FiniteAbelianGroup, ring: CoefficientRing, rng: np.random.Generator) -> str:
    """Each convolution product next to its circulant form."""
    a = random_element(group, ring, rng)
    b = random_element(group, ring, rng)
    x = random_matrix(group, ring, rng)
    t = random_tensor(group, ring, rng)

    conv = gr_convolve_naive(a, b)
    circ_b = circulant_vector_product(a, b)
    anti = scalar_product(gr_anti_involution(a), x)
    right = circulant_scalar_product(a, x)
    tx = tensor_matrix_product(t, x)
    block = block_circulant_matrix_product(t, x)

    lines = [
        f"Products over {group.spec} with coefficients in {ring.spec}",
        RULE,
        f"a = {format_element(a)}",
        f"b = {format_element(b)}",
        "",
        "circ(a):",
        format_matrix(circ_matrix(a)),
        "",
        f"a * b        = {format_element(conv)}",
        f"circ(a) . b  = {format_element(circ_b)}",
        f"-> {_verdict(conv == circ_b)}",
        "",
        "X:",
        format_matrix(x),
        "",
        "phi(a) o X:",
        format_matrix(anti),
        "X . circ(a):",
        format_matrix(right),
        f"-> {_verdict(anti == right)}",
        "",
        "T:",
        format_tensor(t),
        "",
        "T * X:",
        format_matrix(tx),
        "blockcirc(T) . X:",
        format_matrix(block),
        f"-> {_verdict(tx == block)}",
    ]
    return "\n".join(lines)


def render_basis(group: FiniteAbelianGroup, ring: CoefficientRing) -> str:
    lines = [f"Bases of M over {group.spec}", RULE, "Transposed basis B_g = |g><1|:"]
    for b in transposed_basis(group, ring):
        lines += [f"B_{b.label}:", format_matrix(b.matrix), ""]
    lines.append("Natural basis B~_g = |1><g|:")
    for b in natural_basis(group, ring):
        lines += [f"B~_{b.label}:", format_matrix(b.matrix), ""]
    return "\n".join(lines).rstrip()


def render_iso(group: FiniteAbelianGroup, ring: CoefficientRing, rng: np.random.Generator) -> str:
    """A tensor, its alpha table, and the two ways of applying it."""
    t = random_tensor(group, ring, rng)
    a = random_matrix(group, ring, rng)
    hom = hom_from_tensor(t)
    applied = hom_apply(hom, a)
    product = tensor_matrix_product(t, a)

    lines = [f"Tensor <-> homomorphism over {group.spec}", RULE, "T:", format_tensor(t), ""]
    lines.append("alpha_{g,h} (action on B_h):")
    for g in range(group.order):
        for h in range(group.order):
            lines.append(f"  alpha_{group.elem(g)},{group.elem(h)} = {format_element(hom.alpha_at(g, h))}")
    lines += ["", "A:", format_matrix(a), "", "coordinates of A:"]
    for g, coord in zip(group, decompose(a)):
        lines.append(f"  a_{g} = {format_element(coord)}")
    lines += [
        "",
        "L(A) = sum_h a_h o L(B_h):",
        format_matrix(applied),
        "T * A:",
        format_matrix(product),
        f"-> {_verdict(applied == product)}",
        f"tensor_from_hom(hom_from_tensor(T)) == T: {tensor_from_hom(hom) == t}",
    ]
    return "\n".join(lines)


def render_degenerate(group: FiniteAbelianGroup, ring: CoefficientRing, rng: np.random.Generator) -> str:
    """Natural-basis combinations never leave row 1_G."""
    lines = [f"Natural-basis degeneracy over {group.spec}", RULE]
    coords = random_coordinates(group, ring, rng)
    for a, b in zip(coords, natural_basis(group, ring)):
        lines += [f"a_{b.label} o B~_{b.label}   (a = {format_element(a)}):", format_matrix(scalar_product(a, b.matrix)), ""]
    lines += ["sum:", format_matrix(combine_natural(coords)), ""]
    if group.order > 1:
        target = ket_bra(group, ring, 1, 0)
        report = natural_basis_degeneracy_witness(target, samples=100, seed=int(rng.integers(2 ** 32)))
        lines += [
            f"target |{group.elem(1)}><{group.identity}| has entries outside row {group.identity}: "
            f"{report.target_outside_row}",
            f"random natural-basis combinations confined to row {group.identity}: "
            f"{report.confined}/{report.samples}",
            "",
            f"hom image of B~_{group.identity} built on the natural basis:",
            format_matrix(natural_basis_image(random_tensor(group, ring, rng), 0)),
        ]
    return "\n".join(lines).rstrip()


def render_demo(which: str, group: FiniteAbelianGroup, ring: CoefficientRing, rng: np.random.Generator) -> str:
    if which == "products":
        return render_products(group, ring, rng)
    if which == "basis":
        return render_basis(group, ring)
    if which == "iso":
        return render_iso(group, ring, rng)
    if which == "degenerate":
        return render_degenerate(group, ring, rng)
    raise ValueError(f"unknown demo {which!r}; choose from {', '.join(DEMOS)}")


# ----------------------------
# Report tables
# ----------------------------

def suites_frame(results: Sequence[SuiteResult]) -> pd.DataFrame:
    rows: List[dict] = []
    for result in results:
        for check in result.checks:
            rows.append(
                {
                    "suite": result.suite,
                    "check": check.axiom,
                    "samples": check.samples,
                    "failures": check.failures,
                    "max_residual": check.max_residual,
                    "pass": check.passed,
                }
            )
    return pd.DataFrame(rows, columns=["suite", "check", "samples", "failures", "max_residual", "pass"])


def render_suites(results: Sequence[SuiteResult]) -> str:
    text = suites_frame(results).to_string(index=False)
    notes = [f"note ({r.suite}): {r.note}" for r in results if r.note]
    verdict = "PASS" if all(r.passed for r in results) else "FAIL"
    return "\n".join([text] + notes + [verdict])


def diag_frame(report: DiagonalizationReport) -> pd.DataFrame:
    return pd.DataFrame([c.to_dict() for c in report.checks], columns=["k", "hypothesis_residual", "eigen_residual", "pass"])


def render_diag_report(report: DiagonalizationReport) -> str:
    return "\n".join(
        [
            f"status: {report.status}",
            f"hypothesis residual |T*X - X*L|: {report.hypothesis_residual:.3e}",
            diag_frame(report).to_string(index=False),
        ]
    )
