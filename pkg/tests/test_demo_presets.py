"""Tests for demo_presets module."""
import pytest

from core.config import RunConfig
from core.demo_presets import get_demo_presets, get_preset
from core.render import DEMOS


def test_presets_are_valid():
    """Test every preset names a known demo and parses."""
    presets = get_demo_presets()
    assert len({p.name for p in presets}) == len(presets)
    for p in presets:
        assert p.demo in DEMOS
        group, _ = RunConfig(group=p.group, ring=p.ring, seed=p.seed).validate()
        assert group.order <= 8


def test_get_preset():
    """Test lookup by name and the unknown-name error."""
    assert get_preset("degenerate-z2").group == "Z2"
    with pytest.raises(KeyError):
        get_preset("no-such-preset")
