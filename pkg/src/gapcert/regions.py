"""Boundary polylines of the certified regions, ready for plotting.

Each region becomes a tuple of named segments; a segment carries exactly
`resolution` (re, im) samples so downstream row counts are predictable.
Unbounded regions are cut at a clipping radius, which callers default to
ten times the largest input magnitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .applications import CoulombRegion, DiracSpec, _envelope_b_max, _envelope_xy
from .enclosures import GKCover, QuadBound
from .errors import ConditionNotApplicable

__all__ = [
    "Segment",
    "hyperbola_boundary",
    "strip_boundary",
    "sector_boundary",
    "coulomb_boundary",
    "envelope_boundary",
    "segments_to_csv",
]


@dataclass(frozen=True)
class Segment:
    """One polyline: connect the points in order, segments are independent."""

    name: str
    re: tuple[float, ...]
    im: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.re) != len(self.im):
            raise ValueError("re and im must have equal length")


def _check_resolution(resolution: int) -> int:
    if int(resolution) != resolution or resolution < 2:
        raise ValueError("resolution must be an integer >= 2")
    return int(resolution)


def _check_clip(clip: float) -> float:
    clip = float(clip)
    if not math.isfinite(clip) or clip <= 0:
        raise ValueError("clip must be finite and positive")
    return clip


def _seg(name: str, re: np.ndarray, im: np.ndarray) -> Segment:
    return Segment(name, tuple(float(x) for x in re), tuple(float(y) for y in im))


def hyperbola_boundary(q: QuadBound, resolution: int, clip: float) -> tuple[Segment, Segment]:
    """Upper and lower branch of |Im z|^2 = (a^2 + b^2 Re^2)/(1 - b^2).

    With b = 0 the branches degenerate to the horizontal lines Im = +-a.
    """
    resolution = _check_resolution(resolution)
    clip = _check_clip(clip)
    if q.b >= 1.0:
        raise ConditionNotApplicable("no enclosure for b >= 1: the hyperbola degenerates")
    re = np.linspace(-clip, clip, resolution)
    im = np.sqrt((q.a**2 + q.b**2 * re**2) / (1.0 - q.b**2))
    return _seg("upper", re, im), _seg("lower", re, -im)


def strip_boundary(lo: float, hi: float, resolution: int, clip: float) -> tuple[Segment]:
    """Closed rectangle around the strip (lo, hi) cut at |Im| = clip."""
    resolution = _check_resolution(resolution)
    clip = _check_clip(clip)
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise ValueError("requires lo < hi")
    corners = np.array(
        [(lo, -clip), (hi, -clip), (hi, clip), (lo, clip), (lo, -clip)], dtype=float
    )
    lengths = np.linalg.norm(np.diff(corners, axis=0), axis=1)
    cum = np.concatenate([[0.0], np.cumsum(lengths)])
    t = np.linspace(0.0, cum[-1], resolution)
    re = np.interp(t, cum, corners[:, 0])
    im = np.interp(t, cum, corners[:, 1])
    return (_seg("rectangle", re, im),)


def sector_boundary(cover: GKCover, resolution: int, clip: float) -> tuple[Segment, ...]:
    """Ball circle plus the four sector boundary rays, cut at |z| = clip."""
    resolution = _check_resolution(resolution)
    clip = _check_clip(clip)
    theta = np.linspace(0.0, 2.0 * math.pi, resolution)
    segments = [_seg("ball", cover.r_eps * np.cos(theta), cover.r_eps * np.sin(theta))]
    r = np.linspace(cover.r_eps, max(clip, cover.r_eps), resolution)
    for name, angle in (
        ("sector-ne", cover.half_angle),
        ("sector-se", -cover.half_angle),
        ("sector-nw", math.pi - cover.half_angle),
        ("sector-sw", math.pi + cover.half_angle),
    ):
        segments.append(_seg(name, r * math.cos(angle), r * math.sin(angle)))
    return tuple(segments)


def coulomb_boundary(region: CoulombRegion, resolution: int, clip: float) -> tuple[Segment, ...]:
    """Boundary of the two lens-shaped components the spectrum may occupy.

    Each component {+-Re z >= halfwidth, inside the hyperbola} contributes
    a vertical chord plus upper and lower hyperbola arcs: six segments.
    """
    resolution = _check_resolution(resolution)
    clip = _check_clip(clip)
    q = region.quad
    if q.b >= 1.0:
        raise ConditionNotApplicable("no enclosure for b >= 1: the hyperbola degenerates")
    hw = region.halfwidth

    def height(re: np.ndarray) -> np.ndarray:
        return np.sqrt((q.a**2 + q.b**2 * re**2) / (1.0 - q.b**2))

    h0 = float(height(np.array([hw]))[0])
    chord_im = np.linspace(-h0, h0, resolution)
    arc_re = np.linspace(hw, max(clip, hw), resolution)
    arc_im = height(arc_re)
    segments = []
    for side, sign in (("right", 1.0), ("left", -1.0)):
        segments.append(_seg(f"{side}-chord", np.full(resolution, sign * hw), chord_im))
        segments.append(_seg(f"{side}-upper", sign * arc_re, arc_im))
        segments.append(_seg(f"{side}-lower", sign * arc_re, -arc_im))
    return tuple(segments)


def _b_at_re(spec: DiracSpec, target: float, b_max: float) -> float:
    """b with envelope abscissa x(b) = target, found by geometric bisection."""
    lo = b_max
    for _ in range(2000):
        x, _ = _envelope_xy(spec, lo)
        if x >= target:
            break
        lo *= 0.5
    else:
        raise ConditionNotApplicable("envelope abscissa never reaches the clipping radius")
    hi = b_max
    for _ in range(200):
        mid = math.sqrt(lo * hi)
        x, _ = _envelope_xy(spec, mid)
        if x >= target:
            lo = mid
        else:
            hi = mid
    return lo


def envelope_boundary(
    spec: DiracSpec, resolution: int, clip: float, name: str | None = None
) -> tuple[Segment]:
    """Upper envelope arm from |Re z| = clip in to the real-axis crossing."""
    resolution = _check_resolution(resolution)
    clip = _check_clip(clip)
    b_max = _envelope_b_max(spec.p)
    b = np.geomspace(_b_at_re(spec, clip, b_max), b_max, resolution)
    x, y = _envelope_xy(spec, b)
    return (_seg(name or f"p={spec.p:g}", np.maximum(x, 0.0), y),)


def segments_to_csv(segments: tuple[Segment, ...]) -> str:
    """Fixed-header CSV, one row per sample, floats in round-trip form."""
    lines = ["segment,re,im"]
    for seg in segments:
        for re, im in zip(seg.re, seg.im):
            lines.append(f"{seg.name},{re!r},{im!r}")
    return "\n".join(lines) + "\n"
