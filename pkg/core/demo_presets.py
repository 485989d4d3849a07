"""Named demo configurations for the CLI and the sidebar."""
from dataclasses import dataclass
from typing import Dict, List


@dataclass(frozen=True)
class DemoPreset:
    name: str
    demo: str
    group: str
    ring: str
    seed: int = 0
    description: str = ""


_PRESETS = [
    DemoPreset("cyclic-products", "products", "Z3", "q", description="t-product on Z_3 next to circ(a)"),
    DemoPreset("klein-products", "products", "Z2xZ2", "q", description="convolution over the Klein group"),
    DemoPreset("basis-z4", "basis", "Z4", "q", description="transposed and natural bases of M"),
    DemoPreset("iso-z3", "iso", "Z3", "q", 1, "tensor as a module homomorphism"),
    DemoPreset("degenerate-z2", "degenerate", "Z2", "q", description="natural basis stuck in row 1_G"),
    DemoPreset("float-products", "products", "Z4", "f64", 7, "float coefficients"),
    DemoPreset("mod5-iso", "iso", "Z2xZ2", "zmod:5", 3, "integers mod 5"),
    DemoPreset("nested-products", "products", "Z2", "Z2[q]", description="coefficients in Q[Z_2]"),
]


def get_demo_presets() -> List[DemoPreset]:
    return list(_PRESETS)


def get_preset(name: str) -> DemoPreset:
    """
    Look up a preset by name.

    Raises:
        KeyError: unknown preset name
    """
    by_name: Dict[str, DemoPreset] = {p.name: p for p in _PRESETS}
    if name not in by_name:
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(by_name)}")
    return by_name[name]
