"""Procedural 2.5-D scene construction.

A scene is a deterministic function of (seed, family, canvas size): a sky,
a ground plane with an optional road, box buildings with window grids,
billboard trees and grass, one car, and a single directional light that
drives cast shadows. Geometry is expressed in target-pixel coordinates so
the rasterizer can paint it at any supersampling scale.

Small ornaments (windows, canopy lobes, grass tufts, road dashes, car trim)
carry a `detail_rank` in [0, 1); the geometry-LOD knob removes every detail
whose rank falls below the knob value, so removal sets are nested across
severities.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .types import SceneMetadata


@dataclass(frozen=True)
class Wave:
    """One sinusoidal texture component; k is in radians per target pixel."""

    amp: tuple[float, float, float]
    kx: float
    ky: float
    phase: float


@dataclass(frozen=True)
class Texture:
    """Smooth analytic fill: base colour + vertical gradient + sinusoids.

    Texture blur damps each wave by exp(-(sigma*|k|)^2 / 2), the exact
    response of a Gaussian mip filter on a sinusoid, so blur severity maps
    to a strictly increasing image change.
    """

    base: tuple[float, float, float]
    grad_y: tuple[float, float, float] = (0.0, 0.0, 0.0)
    y_ref: float = 0.0
    waves: tuple[Wave, ...] = ()


@dataclass
class Shape:
    kind: str  # "rect" | "ellipse" | "poly"
    params: tuple
    color: tuple[float, float, float] | None = None
    texture: Texture | None = None
    detail_rank: float | None = None  # None = core geometry
    emissive: bool = False  # skip the day/night light multiplier

    def bbox(self) -> tuple[float, float, float, float]:
        if self.kind == "rect":
            x0, y0, x1, y1 = self.params
            return x0, y0, x1, y1
        if self.kind == "ellipse":
            cx, cy, rx, ry = self.params
            return cx - rx, cy - ry, cx + rx, cy + ry
        xs = [p[0] for p in self.params]
        ys = [p[1] for p in self.params]
        return min(xs), min(ys), max(xs), max(ys)


@dataclass
class SceneObject:
    kind: str
    shapes: list[Shape]
    base_x0: float = 0.0
    base_x1: float = 0.0
    base_y: float = 0.0
    height: float = 0.0
    casts_shadow: bool = False
    contact_shadow: tuple | None = None  # (cx, cy, rx, ry, opacity)


@dataclass
class Scene:
    seed: int
    family: str
    size: tuple[int, int]  # (H, W) target pixels
    time_of_day: str
    sky_top: tuple[float, float, float]
    sky_bottom: tuple[float, float, float]
    light: tuple[float, float, float]
    horizon_y: float
    celestial: Shape | None
    shadow_shear: tuple[float, float]  # ground offset per unit of caster height
    shadow_opacity: float
    mountains: list[Shape] = field(default_factory=list)
    ground: Shape | None = None
    road: SceneObject | None = None
    objects: list[SceneObject] = field(default_factory=list)
    metadata: SceneMetadata | None = None


FAMILIES = ("city", "park")

_PALETTES = {
    "city": {
        "sky_day": ((0.42, 0.64, 0.90), (0.77, 0.87, 0.96)),
        "sky_night": ((0.015, 0.025, 0.09), (0.07, 0.09, 0.20)),
        "ground": (0.37, 0.50, 0.28),
        "road": (0.24, 0.24, 0.26),
        "building": [(0.63, 0.58, 0.53), (0.70, 0.64, 0.52), (0.54, 0.58, 0.63), (0.67, 0.60, 0.66)],
        "canopy": (0.18, 0.42, 0.16),
        "trunk": (0.32, 0.23, 0.14),
        "car": [(0.72, 0.14, 0.12), (0.15, 0.30, 0.64), (0.77, 0.72, 0.18), (0.80, 0.80, 0.83)],
        "mountain": (0.47, 0.51, 0.60),
    },
    "park": {
        "sky_day": ((0.50, 0.68, 0.86), (0.84, 0.88, 0.90)),
        "sky_night": ((0.02, 0.03, 0.08), (0.09, 0.10, 0.18)),
        "ground": (0.43, 0.47, 0.22),
        "road": None,
        "building": [],
        "canopy": (0.28, 0.38, 0.12),
        "trunk": (0.28, 0.20, 0.12),
        "car": [],
        "mountain": (0.42, 0.46, 0.52),
    },
}

_NIGHT_LIGHT = (0.30, 0.33, 0.50)
_DAY_SHADOW_OPACITY = 0.42
_NIGHT_SHADOW_OPACITY = 0.02  # directional shadows all but vanish at night
_CONTACT_OPACITY = 0.45


def _rng_for(seed: int, family: str) -> np.random.Generator:
    return np.random.default_rng([int(seed) & 0xFFFFFFFF, FAMILIES.index(family)])


def _ground_texture(rng, pal, W) -> Texture:
    period1 = 26.0 + 14.0 * rng.random()
    period2 = 64.0 + 40.0 * rng.random()
    ang = 0.35 * (rng.random() - 0.5)
    k1 = 2 * np.pi / period1
    k2 = 2 * np.pi / period2
    return Texture(
        base=pal["ground"],
        grad_y=(0.0006, 0.0007, 0.0004),
        waves=(
            Wave((0.040, 0.046, 0.032), k1 * np.cos(ang), k1 * np.sin(ang), rng.random() * 2 * np.pi),
            Wave((0.026, 0.030, 0.020), k2 * np.sin(ang), k2 * np.cos(ang), rng.random() * 2 * np.pi),
        ),
    )


def _facade_texture(rng, base) -> Texture:
    period = 24.0 + 10.0 * rng.random()
    k = 2 * np.pi / period
    tint = 0.88 + 0.20 * rng.random()
    base = tuple(min(1.0, c * tint) for c in base)
    return Texture(
        base=base,
        grad_y=(-0.0010, -0.0010, -0.0009),
        waves=(Wave((0.045, 0.045, 0.042), k, 0.18 * k, rng.random() * 2 * np.pi),),
    )


def _build_building(rng, pal, x, horizon, H, W, lit_windows: bool) -> SceneObject:
    w = W * (0.09 + 0.09 * rng.random())
    h = H * (0.16 + 0.26 * rng.random())
    y0 = horizon - h
    y1 = horizon + H * 0.015
    base = pal["building"][rng.integers(0, len(pal["building"]))]
    tex = _facade_texture(rng, base)
    tex = Texture(tex.base, tex.grad_y, y0, tex.waves)
    body = Shape("rect", (x, y0, x + w, y1), texture=tex)
    shapes = [body]
    # window grid; ranks make LOD removal nested
    ncols = int(rng.integers(2, 5))
    nrows = int(rng.integers(2, 6))
    win_w = w / (ncols * 2.0)
    win_h = h / (nrows * 1.9)
    col = (0.92, 0.83, 0.42) if lit_windows else (0.10, 0.12, 0.16)
    for r in range(nrows):
        for c in range(ncols):
            wx = x + w * (c + 0.55) / (ncols + 0.1) - win_w / 2
            wy = y0 + h * (r + 0.55) / (nrows + 0.4) - win_h / 2
            shapes.append(
                Shape(
                    "rect",
                    (wx, wy, wx + win_w, wy + win_h),
                    color=col,
                    detail_rank=float(rng.random()),
                    emissive=lit_windows,
                )
            )
    return SceneObject(
        kind="building",
        shapes=shapes,
        base_x0=x,
        base_x1=x + w,
        base_y=y1,
        height=h,
        casts_shadow=True,
        contact_shadow=(x + w / 2, y1, w * 0.62, max(1.6, w * 0.10), _CONTACT_OPACITY),
    )


def _build_tree(rng, pal, H, W, horizon) -> SceneObject:
    gy = horizon + (H - horizon) * (0.12 + 0.82 * rng.random())
    gx = W * rng.random()
    depth = (gy - horizon) / max(1.0, H - horizon)  # 0 far, 1 near
    s = 0.55 + 1.1 * depth
    trunk_w = max(1.2, 2.0 * s)
    trunk_h = 9.0 * s
    can_r = 6.5 * s
    cy = gy - trunk_h - can_r * 0.7
    shapes = [
        Shape("rect", (gx - trunk_w / 2, gy - trunk_h, gx + trunk_w / 2, gy), color=pal["trunk"]),
        Shape("ellipse", (gx, cy, can_r, can_r * 0.92), color=pal["canopy"]),
    ]
    n_lobes = int(rng.integers(2, 5))
    for _ in range(n_lobes):
        ang = rng.random() * 2 * np.pi
        lr = can_r * (0.45 + 0.25 * rng.random())
        lx = gx + np.cos(ang) * can_r * 0.75
        ly = cy + np.sin(ang) * can_r * 0.55
        shade = 0.85 + 0.35 * rng.random()
        col = tuple(min(1.0, c * shade) for c in pal["canopy"])
        shapes.append(
            Shape("ellipse", (lx, ly, lr, lr * 0.9), color=col, detail_rank=float(rng.random()))
        )
    height = trunk_h + 2 * can_r
    return SceneObject(
        kind="tree",
        shapes=shapes,
        base_x0=gx - can_r,
        base_x1=gx + can_r,
        base_y=gy,
        height=height,
        casts_shadow=True,
        contact_shadow=(gx, gy, can_r * 0.9, max(1.4, can_r * 0.16), _CONTACT_OPACITY),
    )


def _build_grass(rng, H, W, horizon) -> SceneObject:
    gy = horizon + (H - horizon) * (0.15 + 0.83 * rng.random())
    gx = W * rng.random()
    depth = (gy - horizon) / max(1.0, H - horizon)
    s = (1.8 + 2.8 * depth) * (0.8 + 0.4 * rng.random())
    col = (0.42 + 0.2 * rng.random(), 0.62 + 0.2 * rng.random(), 0.22)
    tri = ((gx - s, gy), (gx + s, gy), (gx + s * (rng.random() - 0.5), gy - 2.6 * s))
    shapes = [Shape("poly", tri, color=col, detail_rank=float(rng.random()))]
    return SceneObject(kind="grass", shapes=shapes, base_x0=gx - s, base_x1=gx + s, base_y=gy)


def _build_rock(rng, pal, H, W, horizon) -> SceneObject:
    gy = horizon + (H - horizon) * (0.2 + 0.7 * rng.random())
    gx = W * rng.random()
    r = (H * 0.02) * (1.0 + 1.6 * rng.random())
    grey = 0.40 + 0.22 * rng.random()
    shapes = [
        Shape("ellipse", (gx, gy - r * 0.45, r, r * 0.62), color=(grey, grey, grey * 1.04)),
        Shape(
            "ellipse",
            (gx - r * 0.3, gy - r * 0.62, r * 0.4, r * 0.25),
            color=(grey * 1.25, grey * 1.25, grey * 1.28),
            detail_rank=float(rng.random()),
        ),
    ]
    return SceneObject(
        kind="rock",
        shapes=shapes,
        base_x0=gx - r,
        base_x1=gx + r,
        base_y=gy,
        height=r * 1.1,
        casts_shadow=True,
        contact_shadow=(gx, gy - r * 0.1, r * 1.0, max(1.3, r * 0.2), _CONTACT_OPACITY),
    )


def _build_car(rng, pal, road_y0, road_y1, W) -> SceneObject:
    cx = W * (0.22 + 0.56 * rng.random())
    gy = (road_y0 + road_y1) / 2 + (road_y1 - road_y0) * 0.18
    body_w = W * 0.155
    body_h = body_w * 0.26
    base = pal["car"][rng.integers(0, len(pal["car"]))]
    period = 20.0 + 8.0 * rng.random()
    k = 2 * np.pi / period
    tex = Texture(
        base=base,
        y_ref=gy - body_h,
        waves=(Wave((0.035, 0.035, 0.035), k, 0.3 * k, rng.random() * 2 * np.pi),),
    )
    x0 = cx - body_w / 2
    x1 = cx + body_w / 2
    by1 = gy - body_h * 0.28
    by0 = by1 - body_h
    cab_h = body_h * 0.8
    cabin = (
        (x0 + body_w * 0.22, by0),
        (x1 - body_w * 0.18, by0),
        (x1 - body_w * 0.30, by0 - cab_h),
        (x0 + body_w * 0.34, by0 - cab_h),
    )
    wheel_r = body_h * 0.46
    shapes = [
        Shape("rect", (x0, by0, x1, by1), texture=tex),
        Shape("poly", cabin, texture=tex),
        Shape("ellipse", (x0 + body_w * 0.24, by1, wheel_r, wheel_r), color=(0.06, 0.06, 0.07)),
        Shape("ellipse", (x1 - body_w * 0.24, by1, wheel_r, wheel_r), color=(0.06, 0.06, 0.07)),
        Shape(
            "poly",
            (
                (x0 + body_w * 0.36, by0 - cab_h * 0.82),
                (x1 - body_w * 0.33, by0 - cab_h * 0.82),
                (x1 - body_w * 0.38, by0 - cab_h * 0.18),
                (x0 + body_w * 0.40, by0 - cab_h * 0.18),
            ),
            color=(0.55, 0.70, 0.80),
            detail_rank=float(rng.random()),
        ),
        Shape(
            "rect",
            (x0 + body_w * 0.06, by0 + body_h * 0.32, x1 - body_w * 0.06, by0 + body_h * 0.48),
            color=tuple(min(1.0, c * 1.5 + 0.08) for c in base),
            detail_rank=float(rng.random()),
        ),
    ]
    total_h = body_h + cab_h + body_h * 0.28
    return SceneObject(
        kind="car",
        shapes=shapes,
        base_x0=x0,
        base_x1=x1,
        base_y=gy,
        height=total_h,
        casts_shadow=True,
        contact_shadow=(cx, gy, body_w * 0.58, max(1.6, body_h * 0.22), _CONTACT_OPACITY),
    )


def build_scene(seed: int, size: tuple[int, int], family: str = "city",
                time_of_day: str | None = None) -> Scene:
    """Deterministically assemble a scene for (seed, size, family).

    `time_of_day` overrides the seed-derived value without disturbing any
    other random draw, so the same seed yields identical geometry under
    both lighting conditions.
    """
    H, W = size
    pal = _PALETTES[family]
    rng = _rng_for(seed, family)

    drawn_tod = "day" if rng.random() < 0.5 else "night"
    tod = time_of_day if time_of_day is not None else drawn_tod
    night = tod == "night"

    horizon = H * (0.40 + 0.10 * rng.random())
    sun_x = W * (0.15 + 0.70 * rng.random())
    sun_y = horizon * (0.25 + 0.45 * rng.random())
    sun_r = H * (0.035 + 0.02 * rng.random())
    shear_x = float(np.clip((W / 2 - sun_x) / (W / 2), -1.0, 1.0)) * 0.5
    if abs(shear_x) < 0.12:
        shear_x = 0.12 if shear_x >= 0 else -0.12
    shadow_shear = (shear_x, 0.22)

    if night:
        sky_top, sky_bottom = pal["sky_night"]
        celestial = Shape("ellipse", (sun_x, sun_y, sun_r * 0.6, sun_r * 0.6),
                          color=(0.85, 0.87, 0.90), emissive=True)
        light = _NIGHT_LIGHT
        shadow_opacity = _NIGHT_SHADOW_OPACITY
    else:
        sky_top, sky_bottom = pal["sky_day"]
        celestial = Shape("ellipse", (sun_x, sun_y, sun_r, sun_r),
                          color=(0.99, 0.95, 0.78), emissive=True)
        light = (1.0, 1.0, 1.0)
        shadow_opacity = _DAY_SHADOW_OPACITY

    n_mountains = int(rng.integers(0, 4))
    mountains = []
    for _ in range(n_mountains):
        mx = W * rng.random()
        mw = W * (0.18 + 0.22 * rng.random())
        mh = H * (0.06 + 0.10 * rng.random())
        shade = 0.85 + 0.3 * rng.random()
        col = tuple(min(1.0, c * shade) for c in pal["mountain"])
        mountains.append(
            Shape("poly", ((mx - mw / 2, horizon), (mx + mw / 2, horizon), (mx, horizon - mh)), color=col)
        )

    ground = Shape("rect", (0.0, horizon, float(W), float(H)),
                   texture=_ground_texture(rng, pal, W))

    road = None
    objects: list[SceneObject] = []
    counts = {"car": 0, "building": 0, "tree": 0, "grass": 0, "road": 0,
              "mountain": n_mountains, "water": 0}

    if pal["road"] is not None:
        road_h = (H - horizon) * (0.16 + 0.06 * rng.random())
        road_y0 = horizon + (H - horizon) * (0.38 + 0.12 * rng.random())
        road_y1 = road_y0 + road_h
        road_tex = Texture(
            base=pal["road"],
            y_ref=road_y0,
            waves=(Wave((0.018, 0.018, 0.018), 2 * np.pi / 30.0, 0.1, rng.random() * 2 * np.pi),),
        )
        road_shapes = [Shape("rect", (0.0, road_y0, float(W), road_y1), texture=road_tex)]
        n_dash = int(rng.integers(5, 9))
        dash_w = W / (n_dash * 2.1)
        dy = (road_y0 + road_y1) / 2
        for i in range(n_dash):
            dx = W * (i + 0.3) / n_dash
            road_shapes.append(
                Shape(
                    "rect",
                    (dx, dy - road_h * 0.05, dx + dash_w, dy + road_h * 0.05),
                    color=(0.78, 0.78, 0.72),
                    detail_rank=float(rng.random()),
                )
            )
        road = SceneObject(kind="road", shapes=road_shapes, base_y=road_y1)
        counts["road"] = 1

        n_b = int(rng.integers(2, 6))
        slots = rng.permutation(n_b + 2)[:n_b]
        for s_i in slots:
            x = W * (0.02 + 0.96 * s_i / (n_b + 2)) + W * 0.02 * rng.random()
            objects.append(_build_building(rng, pal, x, horizon, H, W, lit_windows=night))
        counts["building"] = n_b

        n_t = int(rng.integers(3, 9))
        for _ in range(n_t):
            tr = _build_tree(rng, pal, H, W, horizon)
            # keep trees off the road band
            if road_y0 - 2 < tr.base_y < road_y1 + 2:
                tr.base_y = road_y1 + 3 + (H - road_y1) * 0.5 * rng.random()
            objects.append(tr)
        counts["tree"] = n_t

        n_g = int(rng.integers(10, 27))
        for _ in range(n_g):
            g = _build_grass(rng, H, W, horizon)
            if road_y0 - 1 < g.base_y < road_y1 + 1:
                continue
            objects.append(g)
        counts["grass"] = n_g

        objects.append(_build_car(rng, pal, road_y0, road_y1, W))
        counts["car"] = 1
    else:
        n_t = int(rng.integers(6, 13))
        for _ in range(n_t):
            objects.append(_build_tree(rng, pal, H, W, horizon))
        counts["tree"] = n_t
        n_r = int(rng.integers(1, 4))
        for _ in range(n_r):
            objects.append(_build_rock(rng, pal, H, W, horizon))
        n_g = int(rng.integers(18, 42))
        for _ in range(n_g):
            objects.append(_build_grass(rng, H, W, horizon))
        counts["grass"] = n_g

    complexity = len(mountains) + sum(len(o.shapes) for o in objects)
    if road is not None:
        complexity += len(road.shapes)
    metadata = SceneMetadata(time_of_day=tod, object_counts=counts, complexity=float(complexity))

    return Scene(
        seed=seed,
        family=family,
        size=(H, W),
        time_of_day=tod,
        sky_top=sky_top,
        sky_bottom=sky_bottom,
        light=light,
        horizon_y=horizon,
        celestial=celestial,
        shadow_shear=shadow_shear,
        shadow_opacity=shadow_opacity,
        mountains=mountains,
        ground=ground,
        road=road,
        objects=objects,
        metadata=metadata,
    )
