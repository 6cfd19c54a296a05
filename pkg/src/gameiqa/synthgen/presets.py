"""Graphical preset definitions and their knob/MSAA table.

The six named presets map to fixed knob vectors; each knob is non-increasing
from very_low to extreme. The aliasing knob is derived from the MSAA level
(off -> 1.0, 2x -> 0.3, 8x -> 0.0): turning MSAA off produces a far larger
visual step than moving between the sampled levels, hence the wide gap.
Mixed configurations are single-setting departures from a named preset used
only for testing; they carry no proxy quality score.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import UnknownNameError
from .types import DistortionKnobs

PRESET_ORDER = ("very_low", "low", "medium", "high", "ultra", "extreme")

MSAA_TO_ALIASING = {"off": 1.0, "2x": 0.3, "8x": 0.0}

_PRESET_TABLE = {
    # name: (msaa, texture_blur, geometry_lod, ssao_off, shadow)
    "very_low": ("off", 1.0, 1.0, 1.0, 1.0),
    "low": ("off", 0.8, 0.8, 1.0, 0.6),
    "medium": ("2x", 0.6, 0.6, 1.0, 0.4),
    "high": ("2x", 0.4, 0.3, 1.0, 0.2),
    "ultra": ("2x", 0.2, 0.1, 0.0, 0.1),
    "extreme": ("8x", 0.0, 0.0, 0.0, 0.0),
}

# Single-setting departures evaluated without ground truth.
_MIXED_TABLE = {
    "low_2x_msaa": ("low", {"msaa": "2x"}),
    "ultra_no_ssao": ("ultra", {"ssao_off": 1.0}),
    "extreme_no_ssao": ("extreme", {"ssao_off": 1.0}),
    "extreme_no_aa": ("extreme", {"msaa": "off"}),
    "extreme_no_aa_no_ssao": ("extreme", {"msaa": "off", "ssao_off": 1.0}),
    "extreme_high_texture": ("extreme", {"texture_blur": _PRESET_TABLE["high"][1]}),
    "extreme_2x_msaa": ("extreme", {"msaa": "2x"}),
}

MIXED_ORDER = tuple(_MIXED_TABLE)


@dataclass(frozen=True)
class PresetConfig:
    name: str
    knobs: DistortionKnobs
    msaa: str
    mixed: bool


def preset_to_knobs(name: str) -> PresetConfig:
    """Return the fixed knob/MSAA assignment for a preset or mixed config."""
    if name in _PRESET_TABLE:
        msaa, tex, geo, ssao, shadow = _PRESET_TABLE[name]
        knobs = DistortionKnobs(
            aliasing=MSAA_TO_ALIASING[msaa],
            texture_blur=tex,
            geometry_lod=geo,
            ssao_off=ssao,
            shadow=shadow,
        )
        return PresetConfig(name=name, knobs=knobs, msaa=msaa, mixed=False)
    if name in _MIXED_TABLE:
        base_name, overrides = _MIXED_TABLE[name]
        base = preset_to_knobs(base_name)
        msaa = overrides.get("msaa", base.msaa)
        knob_overrides = {k: v for k, v in overrides.items() if k != "msaa"}
        if "msaa" in overrides:
            knob_overrides["aliasing"] = MSAA_TO_ALIASING[msaa]
        knobs = base.knobs.replace(**knob_overrides)
        return PresetConfig(name=name, knobs=knobs, msaa=msaa, mixed=True)
    raise UnknownNameError(f"unknown preset or mixed configuration: {name!r}")
