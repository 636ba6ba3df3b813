"""Stereo 3D rendering of a 2-DoF beam decomposition to SVG.

A beam's component form is drawn as a gray bar of length sigma00 along
the upright 1-axis plus three colored vectors (red v1, green v2, blue v3),
viewed with the 2-axis to the left and the 3-axis to the right.  Two
orthographic panes at slightly different azimuths form a cross-eyed-free
stereo pair.  The heading lists the pairwise scalar products of the
vectors.  Output is byte-stable: all coordinates are printed with fixed
precision and nothing depends on runtime state.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .dirac import BeamMatrix4

__all__ = ["Scene", "RenderOptions", "scene_of", "render_svg", "scene_to_json", "scene_from_json"]


@dataclass(frozen=True, eq=False)
class Scene:
    """Geometry extracted from a beam: bar length, vectors, dot products."""

    sigma00: float
    v1: np.ndarray
    v2: np.ndarray
    v3: np.ndarray
    dots: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("v1", "v2", "v3"):
            v = np.array(getattr(self, name), dtype=float)
            v.setflags(write=False)
            object.__setattr__(self, name, v)
        object.__setattr__(self, "sigma00", float(self.sigma00))
        dots = {
            "rg": float(self.v1 @ self.v2),
            "rb": float(self.v1 @ self.v3),
            "gb": float(self.v2 @ self.v3),
        }
        object.__setattr__(self, "dots", dots)


@dataclass(frozen=True)
class RenderOptions:
    pane_width: int = 360
    pane_height: int = 360
    azimuth_deg: float = 45.0
    stereo_sep_deg: float = 2.5
    elevation_deg: float = 16.0
    margin: float = 28.0


def scene_of(beam: BeamMatrix4) -> Scene:
    return Scene(beam.sigma00, beam.v1, beam.v2, beam.v3)


def scene_to_json(scene: Scene) -> str:
    doc = {
        "sigma00": scene.sigma00,
        "v1": list(scene.v1),
        "v2": list(scene.v2),
        "v3": list(scene.v3),
        "dots": scene.dots,
    }
    return json.dumps(doc, indent=2)


def scene_from_json(text: str) -> Scene:
    doc = json.loads(text)
    return Scene(doc["sigma00"], doc["v1"], doc["v2"], doc["v3"])


def _fmt(x: float) -> str:
    x = 0.0 if abs(x) < 5e-5 else x  # avoid the string "-0.0000"
    return f"{x:.4f}"


def _project(azimuth_deg: float, elevation_deg: float):
    """Orthographic screen basis: returns (right, up) world rows.

    World axis 1 is upright; at azimuth 45 deg axis 2 leaves to the left
    and axis 3 to the right, each dipping slightly with the elevation.
    """
    a = math.radians(azimuth_deg)
    el = math.radians(elevation_deg)
    right = np.array([0.0, -math.cos(a), math.sin(a)])
    fwd = np.array([0.0, -math.sin(a), -math.cos(a)])
    up = math.cos(el) * np.array([1.0, 0.0, 0.0]) + math.sin(el) * fwd
    return right, up


def _pane(scene: Scene, opt: RenderOptions, azimuth: float, x0: float) -> list:
    right, up = _project(azimuth, opt.elevation_deg)
    reach = max(
        [1.0, abs(scene.sigma00)]
        + [float(np.linalg.norm(v)) for v in (scene.v1, scene.v2, scene.v3)]
    )
    half = min(opt.pane_width, opt.pane_height) / 2.0 - opt.margin
    scale = half / reach
    cx = x0 + opt.pane_width / 2.0
    cy = opt.pane_height / 2.0 + 14.0

    def screen(p) -> tuple[float, float]:
        p = np.asarray(p, dtype=float)
        return cx + scale * float(right @ p), cy - scale * float(up @ p)

    parts = [
        f'<rect x="{_fmt(x0)}" y="0" width="{opt.pane_width}" '
        f'height="{opt.pane_height}" fill="white" stroke="#cccccc"/>'
    ]

    def line(p, q, color, width, dash=None, marker=None):
        (x1, y1), (x2, y2) = screen(p), screen(q)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        extra += f' marker-end="url(#{marker})"' if marker else ""
        parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{color}" stroke-width="{width}"{extra}/>'
        )

    def label(p, text, color):
        x, y = screen(p)
        parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" fill="{color}" '
            f'font-size="11" font-family="monospace">{text}</text>'
        )

    # coordinate axes, dashed, slightly longer than the data
    ax = 1.12 * reach
    for axis, name in (((ax, 0, 0), "1"), ((0, ax, 0), "2"), ((0, 0, ax), "3")):
        line((0, 0, 0), axis, "#999999", 0.8, dash="4 3")
        label(np.asarray(axis) * 1.04, name, "#777777")

    # scalar bar along the upright axis
    line((0, 0, 0), (scene.sigma00, 0.0, 0.0), "#b0b0b0", 7)

    for v, color, marker in (
        (scene.v1, "#cc0000", "ar"),
        (scene.v2, "#008800", "ag"),
        (scene.v3, "#0000cc", "ab"),
    ):
        if float(np.linalg.norm(v)) > 1e-12:
            line((0, 0, 0), v, color, 2.2, marker=marker)
    return parts


def render_svg(scene: Scene, options: RenderOptions | None = None) -> str:
    """Two-pane stereo SVG document; a pure function of (scene, options)."""
    opt = options or RenderOptions()
    width = 2 * opt.pane_width + 10
    height = opt.pane_height
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    )
    defs = "<defs>" + "".join(
        f'<marker id="{mid}" markerWidth="8" markerHeight="8" refX="6" refY="3" '
        f'orient="auto"><path d="M0,0 L6,3 L0,6 z" fill="{color}"/></marker>'
        for mid, color in (("ar", "#cc0000"), ("ag", "#008800"), ("ab", "#0000cc"))
    ) + "</defs>"
    heading = (
        f"(R,G)={_fmt(scene.dots['rg'])}  (R,B)={_fmt(scene.dots['rb'])}  "
        f"(G,B)={_fmt(scene.dots['gb'])}"
    )
    title = (
        f'<text x="10" y="14" font-size="12" font-family="monospace" '
        f'fill="#333333">{heading}</text>'
    )
    body = []
    for i, az in enumerate(
        (opt.azimuth_deg - opt.stereo_sep_deg, opt.azimuth_deg + opt.stereo_sep_deg)
    ):
        body.extend(_pane(scene, opt, az, i * (opt.pane_width + 10.0)))
    return "\n".join([head, defs, title, *body, "</svg>"]) + "\n"
