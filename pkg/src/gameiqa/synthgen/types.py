"""Domain types for synthetic frame generation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields

import numpy as np

from ..errors import ValidationError

# Canonical ordering of the five distortion axes. Every 5-vector in the
# package (soft labels, model heads) follows this order.
KNOB_ORDER = ("aliasing", "texture_blur", "geometry_lod", "ssao_off", "shadow")


@dataclass(frozen=True)
class DistortionKnobs:
    """Severity of each distortion, 0 = pristine, 1 = extreme modification.

    Values are clamped to [0, 1]; non-finite values are rejected.
    """

    aliasing: float = 0.0
    texture_blur: float = 0.0
    geometry_lod: float = 0.0
    ssao_off: float = 0.0
    shadow: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            v = float(getattr(self, f.name))
            if not math.isfinite(v):
                raise ValidationError(f"knob '{f.name}' must be finite, got {v!r}")
            object.__setattr__(self, f.name, min(1.0, max(0.0, v)))

    def as_vector(self) -> np.ndarray:
        return np.array([getattr(self, k) for k in KNOB_ORDER], dtype=np.float64)

    def as_dict(self) -> dict[str, float]:
        return {k: float(getattr(self, k)) for k in KNOB_ORDER}

    def replace(self, **kwargs) -> "DistortionKnobs":
        d = self.as_dict()
        d.update(kwargs)
        return DistortionKnobs(**d)

    @classmethod
    def from_dict(cls, d: dict) -> "DistortionKnobs":
        return cls(**{k: float(d[k]) for k in KNOB_ORDER})


@dataclass(frozen=True)
class SceneMetadata:
    """Ground-truth scene description used by the semantic probe.

    `complexity` is the number of drawable primitives at full detail; it
    depends only on the scene seed and family, never on the knobs.
    """

    time_of_day: str
    object_counts: dict[str, int] = field(default_factory=dict)
    complexity: float = 0.0

    def __post_init__(self):
        if self.time_of_day not in ("day", "night"):
            raise ValidationError(f"time_of_day must be 'day' or 'night', got {self.time_of_day!r}")
        for kind, n in self.object_counts.items():
            if n < 0:
                raise ValidationError(f"object count for '{kind}' is negative")

    def as_dict(self) -> dict:
        return {
            "time_of_day": self.time_of_day,
            "object_counts": dict(self.object_counts),
            "complexity": float(self.complexity),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SceneMetadata":
        return cls(
            time_of_day=d["time_of_day"],
            object_counts={k: int(v) for k, v in d["object_counts"].items()},
            complexity=float(d["complexity"]),
        )


@dataclass
class Frame:
    """A rendered image with its provenance: knobs, scene metadata, preset."""

    image: np.ndarray  # H x W x 3, float in [0, 1]
    knobs: DistortionKnobs
    metadata: SceneMetadata
    preset: str | None = None
    frame_id: str = ""
