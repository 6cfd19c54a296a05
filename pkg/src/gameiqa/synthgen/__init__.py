"""Synthetic frame generation with controllable game-style distortions."""

from .datasets import (
    DISTORTION_CLASSES,
    GENERATOR_VERSION,
    SHADOW_SEVERITY_TO_LEVEL,
    DatasetManifest,
    DistortionDatasetConfig,
    ManifestEntry,
    PresetDatasetConfig,
    load_png,
    make_distortion_dataset,
    make_preset_dataset,
    read_png_sidecar,
    save_png,
)
from .presets import MIXED_ORDER, MSAA_TO_ALIASING, PRESET_ORDER, PresetConfig, preset_to_knobs
from .render import render_frame
from .scene import build_scene
from .types import KNOB_ORDER, DistortionKnobs, Frame, SceneMetadata

__all__ = [
    "DISTORTION_CLASSES",
    "GENERATOR_VERSION",
    "KNOB_ORDER",
    "MIXED_ORDER",
    "MSAA_TO_ALIASING",
    "PRESET_ORDER",
    "SHADOW_SEVERITY_TO_LEVEL",
    "DatasetManifest",
    "DistortionDatasetConfig",
    "DistortionKnobs",
    "Frame",
    "ManifestEntry",
    "PresetConfig",
    "PresetDatasetConfig",
    "SceneMetadata",
    "build_scene",
    "load_png",
    "make_distortion_dataset",
    "make_preset_dataset",
    "preset_to_knobs",
    "read_png_sidecar",
    "render_frame",
    "save_png",
]
