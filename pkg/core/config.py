"""Run configuration, project defaults and seeded randomness."""

from __future__ import annotations

import copy
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, TypeVar

import numpy as np
import yaml

from .group import FiniteAbelianGroup, parse_group_spec
from .groupring import make_coefficient_ring
from .rings import CoefficientRing

logger = logging.getLogger(__name__)

T = TypeVar("T")

GENERATOR_NAME = "PCG64"
OUTPUT_FORMATS = ("text", "json", "csv")

BUILTIN_DEFAULTS: Dict[str, Any] = {
    "tolerance": 1e-9,
    "seed": 0,
    "samples": 200,
    "workers": 4,
    "format": "text",
    "thresholds": {
        "hypothesis": 1e-8,
        "eigen": 1e-7,
        "inverse": 1e-8,
        "condition_limit": 1e12,
    },
    "diag": {"max_draws": 16},
    "demo": {"max_order": 8},
    "bench": {"sizes": [64, 256, 1024, 4096], "repeats": 5, "circulant_limit": 2048},
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    out = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def load_defaults(path: Optional[str] = None) -> Dict[str, Any]:
    """Load data/defaults.yaml layered over the built-in defaults."""
    if path is None:
        project_root = Path(__file__).parent.parent
        path = project_root / "data" / "defaults.yaml"
    try:
        with open(path, "r", encoding="utf-8") as fh:
            loaded = yaml.safe_load(fh) or {}
    except FileNotFoundError:
        logger.debug("no defaults file at %s, using built-in defaults", path)
        loaded = {}
    return _merge(BUILTIN_DEFAULTS, loaded)


@dataclass
class RunConfig:
    """Everything one CLI or UI run needs."""
    group: str
    ring: str
    tolerance: float = 1e-9
    seed: int = 0
    samples: int = 200
    fmt: str = "text"
    workers: int = 1
    sizes: List[int] = field(default_factory=lambda: [64, 256, 1024, 4096])
    hypothesis_tol: float = 1e-8
    eigen_tol: float = 1e-7
    inverse_tol: float = 1e-8
    condition_limit: float = 1e12
    max_draws: int = 16
    demo_max_order: int = 8
    bench_repeats: int = 5
    circulant_limit: int = 2048

    @classmethod
    def from_defaults(cls, defaults: Dict[str, Any], **overrides: Any) -> "RunConfig":
        th = defaults["thresholds"]
        cfg = cls(
            group=overrides.pop("group", "Z4"),
            ring=overrides.pop("ring", "q"),
            tolerance=float(defaults["tolerance"]),
            seed=int(defaults["seed"]),
            samples=int(defaults["samples"]),
            fmt=str(defaults["format"]),
            workers=int(defaults["workers"]),
            sizes=[int(s) for s in defaults["bench"]["sizes"]],
            hypothesis_tol=float(th["hypothesis"]),
            eigen_tol=float(th["eigen"]),
            inverse_tol=float(th["inverse"]),
            condition_limit=float(th["condition_limit"]),
            max_draws=int(defaults["diag"]["max_draws"]),
            demo_max_order=int(defaults["demo"]["max_order"]),
            bench_repeats=int(defaults["bench"]["repeats"]),
            circulant_limit=int(defaults["bench"]["circulant_limit"]),
        )
        for key, value in overrides.items():
            if value is not None:
                setattr(cfg, key, value)
        return cfg

    def parse_ring(self) -> CoefficientRing:
        return make_coefficient_ring(self.ring, self.tolerance)

    def validate(self) -> Tuple[FiniteAbelianGroup, CoefficientRing]:
        """Parse both specs and range-check the numeric fields."""
        group = parse_group_spec(self.group)
        ring = self.parse_ring()
        self.check_numbers()
        return group, ring

    def check_numbers(self) -> None:
        if self.samples < 1:
            raise ValueError(f"samples must be positive, got {self.samples}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.fmt not in OUTPUT_FORMATS:
            raise ValueError(f"format must be one of {OUTPUT_FORMATS}, got {self.fmt!r}")
        if self.workers < 1:
            raise ValueError(f"workers must be positive, got {self.workers}")

    def as_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group,
            "ring": self.ring,
            "tolerance": self.tolerance,
            "seed": self.seed,
            "samples": self.samples,
            "generator": generator_metadata(),
        }


# ----------------------------
# Seeded randomness
# ----------------------------

def generator_metadata() -> Dict[str, str]:
    return {"name": GENERATOR_NAME, "numpy": np.__version__}


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def spawn_rngs(seed: int, count: int) -> List[np.random.Generator]:
    """Independent per-sample generators derived from one run seed."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.Generator(np.random.PCG64(s)) for s in children]


def run_samples(
    check: Callable[[np.random.Generator], T], seed: int, samples: int, workers: int = 1
) -> List[T]:
    """Evaluate `check` once per sample generator, results in sample order."""
    rngs = spawn_rngs(seed, samples)
    if workers <= 1 or samples <= 1:
        return [check(rng) for rng in rngs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(check, rngs))
