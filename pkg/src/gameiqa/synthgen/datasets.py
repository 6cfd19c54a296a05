"""Dataset generation: renders frames to disk and emits JSON manifests.

Two dataset protocols are provided. The distortion dataset holds one class
per single distortion at full severity, an undistorted class, and shadow
degradation at three severities; class sizes are exactly balanced. The
preset dataset covers the six named presets in both splits, plus mixed
configurations that appear only under split=test since they have no proxy
score.

Frames are written as 8-bit lossless PNG with knob/metadata sidecars
embedded as PNG text chunks, and the manifest records relative paths so a
dataset directory is relocatable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image
from PIL.PngImagePlugin import PngInfo

from ..errors import ValidationError
from .presets import MIXED_ORDER, PRESET_ORDER, preset_to_knobs
from .render import render_frame
from .types import DistortionKnobs, Frame, SceneMetadata

GENERATOR_VERSION = "1"

# class name -> knob overrides; order fixes scene-seed assignment
DISTORTION_CLASSES = (
    ("none", {}),
    ("aliasing", {"aliasing": 1.0}),
    ("texture", {"texture_blur": 1.0}),
    ("geometry", {"geometry_lod": 1.0}),
    ("ssao", {"ssao_off": 1.0}),
    ("shadow_off", {"shadow": 1.0}),
    ("shadow_low", {"shadow": 0.6}),
    ("shadow_high", {"shadow": 0.2}),
)

SHADOW_SEVERITY_TO_LEVEL = {1.0: "off", 0.6: "low", 0.2: "high", 0.0: "ultra"}


@dataclass
class ManifestEntry:
    frame_id: str
    path: str  # relative to the manifest's directory
    knobs: DistortionKnobs
    metadata: SceneMetadata
    preset: str | None
    split: str

    def as_dict(self) -> dict:
        return {
            "frame_id": self.frame_id,
            "path": self.path,
            "knobs": self.knobs.as_dict(),
            "metadata": self.metadata.as_dict(),
            "preset": self.preset,
            "split": self.split,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ManifestEntry":
        return cls(
            frame_id=d["frame_id"],
            path=d["path"],
            knobs=DistortionKnobs.from_dict(d["knobs"]),
            metadata=SceneMetadata.from_dict(d["metadata"]),
            preset=d["preset"],
            split=d["split"],
        )


@dataclass
class DatasetManifest:
    version: str
    seed: int
    entries: list[ManifestEntry]
    root: Path = field(default_factory=Path)

    def split(self, tag: str) -> list[ManifestEntry]:
        return [e for e in self.entries if e.split == tag]

    def entry_path(self, entry: ManifestEntry) -> Path:
        return self.root / entry.path

    def load_image(self, entry: ManifestEntry) -> np.ndarray:
        return load_png(self.entry_path(entry))

    def validate(self) -> None:
        ids: dict[str, str] = {}
        for e in self.entries:
            if e.frame_id in ids and ids[e.frame_id] != e.split:
                raise ValidationError(f"frame_id {e.frame_id} appears in multiple splits")
            if e.frame_id in ids:
                raise ValidationError(f"duplicate frame_id {e.frame_id}")
            ids[e.frame_id] = e.split
            if not self.entry_path(e).exists():
                raise ValidationError(f"missing frame file: {e.path}")

    def save(self, path: Path) -> Path:
        path = Path(path)
        doc = {
            "version": self.version,
            "seed": self.seed,
            "entries": [e.as_dict() for e in self.entries],
        }
        path.write_text(json.dumps(doc, indent=1, sort_keys=True))
        self.root = path.parent
        return path

    @classmethod
    def load(cls, path: Path) -> "DatasetManifest":
        path = Path(path)
        doc = json.loads(path.read_text())
        return cls(
            version=doc["version"],
            seed=int(doc["seed"]),
            entries=[ManifestEntry.from_dict(d) for d in doc["entries"]],
            root=path.parent,
        )


def save_png(frame: Frame, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    arr = np.clip(np.round(frame.image * 255.0), 0, 255).astype(np.uint8)
    info = PngInfo()
    info.add_text("gameiqa_knobs", json.dumps(frame.knobs.as_dict(), sort_keys=True))
    info.add_text("gameiqa_metadata", json.dumps(frame.metadata.as_dict(), sort_keys=True))
    Image.fromarray(arr, mode="RGB").save(path, format="PNG", pnginfo=info)


def load_png(path: Path) -> np.ndarray:
    with Image.open(path) as im:
        arr = np.asarray(im.convert("RGB"), dtype=np.float32)
    return arr / 255.0


def read_png_sidecar(path: Path) -> SceneMetadata | None:
    """Recover embedded scene metadata from a generated PNG, if present."""
    with Image.open(path) as im:
        raw = im.info.get("gameiqa_metadata")
    if raw is None:
        return None
    return SceneMetadata.from_dict(json.loads(raw))


@dataclass
class DistortionDatasetConfig:
    frames_per_class: int = 50
    test_frames_per_class: int = 10
    frame_size: tuple[int, int] = (128, 128)
    family: str = "city"


@dataclass
class PresetDatasetConfig:
    frames_per_preset: int = 60
    test_frames_per_preset: int = 60
    mixed_test_frames: int = 20
    mixed_configs: tuple[str, ...] = MIXED_ORDER
    train_configs: tuple[str, ...] = PRESET_ORDER
    frame_size: tuple[int, int] = (128, 128)
    family: str = "city"


def _scene_seed(base_seed: int, group: int, split_offset: int, i: int) -> int:
    return base_seed * 1_000_000 + group * 20_000 + split_offset + i


def _render_group(entries, out_dir, base_seed, group_idx, split, count, knobs,
                  prefix, preset, size, family):
    offset = 0 if split == "train" else 10_000
    for i in range(count):
        seed = _scene_seed(base_seed, group_idx, offset, i)
        tod = "day" if i % 2 == 0 else "night"
        fid = f"{prefix}-{seed:09d}"
        frame = render_frame(seed, knobs, size=size, family=family,
                             time_of_day=tod, frame_id=fid)
        frame.preset = preset
        rel = f"frames/{fid}.png"
        save_png(frame, out_dir / rel)
        entries.append(
            ManifestEntry(frame_id=fid, path=rel, knobs=frame.knobs,
                          metadata=frame.metadata, preset=preset, split=split)
        )


def make_distortion_dataset(cfg: DistortionDatasetConfig, seed: int, out_dir: Path) -> DatasetManifest:
    """Render the balanced per-distortion dataset and write its manifest."""
    if cfg.frames_per_class <= 0:
        raise ValidationError("frames_per_class must be positive")
    out_dir = Path(out_dir)
    entries: list[ManifestEntry] = []
    for gi, (name, overrides) in enumerate(DISTORTION_CLASSES):
        knobs = DistortionKnobs(**overrides)
        _render_group(entries, out_dir, seed, gi, "train", cfg.frames_per_class,
                      knobs, f"dist-{name}", None, cfg.frame_size, cfg.family)
        _render_group(entries, out_dir, seed, gi, "test", cfg.test_frames_per_class,
                      knobs, f"dist-{name}-t", None, cfg.frame_size, cfg.family)
    manifest = DatasetManifest(version=GENERATOR_VERSION, seed=seed, entries=entries, root=out_dir)
    manifest.save(out_dir / "manifest.json")
    manifest.validate()
    return manifest


def make_preset_dataset(cfg: PresetDatasetConfig, seed: int, out_dir: Path) -> DatasetManifest:
    """Render the preset dataset; mixed configurations go to the test split only."""
    if cfg.frames_per_preset <= 0:
        raise ValidationError("frames_per_preset must be positive")
    for name in cfg.train_configs:
        if preset_to_knobs(name).mixed:
            raise ValidationError(f"mixed configuration {name!r} cannot be in the train split")
    out_dir = Path(out_dir)
    entries: list[ManifestEntry] = []
    for gi, name in enumerate(cfg.train_configs):
        pc = preset_to_knobs(name)
        _render_group(entries, out_dir, seed, gi, "train", cfg.frames_per_preset,
                      pc.knobs, f"preset-{name}", name, cfg.frame_size, cfg.family)
        _render_group(entries, out_dir, seed, gi, "test", cfg.test_frames_per_preset,
                      pc.knobs, f"preset-{name}-t", name, cfg.frame_size, cfg.family)
    for mi, name in enumerate(cfg.mixed_configs):
        pc = preset_to_knobs(name)
        if not pc.mixed:
            raise ValidationError(f"{name!r} is a named preset, not a mixed configuration")
        _render_group(entries, out_dir, seed, 100 + mi, "test", cfg.mixed_test_frames,
                      pc.knobs, f"mixed-{name}", name, cfg.frame_size, cfg.family)
    manifest = DatasetManifest(version=GENERATOR_VERSION, seed=seed, entries=entries, root=out_dir)
    manifest.save(out_dir / "manifest.json")
    manifest.validate()
    return manifest
