"""Wall-clock comparison of the three convolution paths."""

from __future__ import annotations

import logging
import time
from dataclasses import asdict, dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np
import pandas as pd

from .config import make_rng
from .errors import CorrectnessError
from .group import FiniteAbelianGroup, make_group
from .groupring import GroupRingElement, gr_convolve_naive, random_element
from .rings import RealRing
from .tower import circulant_vector_product
from .transform import gr_convolve_fast, require_approximate

logger = logging.getLogger(__name__)

PATHS = ("naive", "fast", "circulant")
BENCH_COLUMNS = ["size", "path", "median_ms", "residual"]


@dataclass
class BenchRow:
    size: int
    path: str
    median_ms: float
    residual: float


def _time_ms(fn: Callable[[], GroupRingElement], repeats: int) -> List[float]:
    out = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        out.append((time.perf_counter() - start) * 1000.0)
    return out


def bench_group(
    group: FiniteAbelianGroup,
    ring: RealRing,
    rng: np.random.Generator,
    repeats: int = 5,
    circulant_limit: int = 2048,
) -> List[BenchRow]:
    """
    Time naive, fast and circulant convolution on one group.

    Raises:
        CorrectnessError: a path disagrees with the naive product beyond the
            ring tolerance
    """
    a = random_element(group, ring, rng)
    b = random_element(group, ring, rng)
    reference = gr_convolve_naive(a, b)
    scale = max(1.0, float(np.max(np.abs(reference.coeffs))))
    paths = {
        "naive": lambda: gr_convolve_naive(a, b),
        "fast": lambda: gr_convolve_fast(a, b),
        "circulant": lambda: circulant_vector_product(a, b),
    }
    records = []
    for path in PATHS:
        if path == "circulant" and group.order > circulant_limit:
            logger.info("circulant path skipped at n=%d (limit %d)", group.order, circulant_limit)
            continue
        result = paths[path]()
        residual = ring.distance(result.coeffs, reference.coeffs)
        if residual > ring.tolerance * scale:
            raise CorrectnessError(
                f"{path} convolution differs from naive by {residual:.3e} at n={group.order}"
            )
        for ms in _time_ms(paths[path], repeats):
            records.append({"size": group.order, "path": path, "ms": ms, "residual": residual})

    frame = pd.DataFrame.from_records(records)
    medians = frame.groupby(["size", "path"], sort=False).agg(
        median_ms=("ms", "median"), residual=("residual", "max")
    )
    return [
        BenchRow(int(size), str(path), float(row.median_ms), float(row.residual))
        for (size, path), row in medians.iterrows()
    ]


def run_bench(
    sizes: Sequence[int],
    seed: int = 0,
    repeats: int = 5,
    circulant_limit: int = 2048,
    ring: Optional[RealRing] = None,
    groups: Optional[Sequence[FiniteAbelianGroup]] = None,
) -> pd.DataFrame:
    """
    Benchmark table with columns size, path, median_ms, residual.

    `groups` overrides `sizes`; by default every size n benchmarks Z_n.
    """
    ring = ring or RealRing()
    require_approximate(ring)
    rng = make_rng(seed)
    targets = list(groups) if groups else [make_group([n]) for n in sizes]
    rows: List[BenchRow] = []
    for group in targets:
        rows += bench_group(group, ring, rng, repeats, circulant_limit)
    return pd.DataFrame([asdict(r) for r in rows], columns=BENCH_COLUMNS)
