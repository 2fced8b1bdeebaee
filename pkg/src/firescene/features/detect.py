"""Corner detection: FAST-9 segment test, Harris ranking, patch orientation.

Single scale by design; near-duplicate UAV frames share scale closely.
Candidates need a contiguous arc of 9 circle pixels all brighter (or all
darker) than the center by the intensity threshold, survive a 3x3
non-maximum suppression on the Harris response, and carry the
intensity-centroid orientation of their 31x31 circular patch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .image import GrayImage

BORDER_MARGIN = 16  # keeps every descriptor/orientation sample inside the image
FAST_ARC = 9
FAST_THRESHOLD = 20
HARRIS_K = 0.04
HARRIS_WINDOW = 7
ORIENTATION_RADIUS = 15
MIN_IMAGE_SIDE = 32

# Radius-3 Bresenham circle, clockwise from 12 o'clock: (dx, dy) pairs.
CIRCLE = (
    (0, -3), (1, -3), (2, -2), (3, -1), (3, 0), (3, 1), (2, 2), (1, 3),
    (0, 3), (-1, 3), (-2, 2), (-3, 1), (-3, 0), (-3, -1), (-2, -2), (-1, -3),
)


class ImageTooSmallError(ValueError):
    pass


@dataclass(frozen=True)
class Keypoint:
    x: float
    y: float
    response: float
    angle: float  # radians in (-pi, pi]


def _shifted_interior(arr: np.ndarray, dx: int, dy: int, margin: int) -> np.ndarray:
    h, w = arr.shape
    return arr[margin + dy : h - margin + dy, margin + dx : w - margin + dx]


def _fast_corner_mask(img: np.ndarray, threshold: int, margin: int) -> np.ndarray:
    """Segment-test mask over the interior region (margin clipped away)."""
    center = _shifted_interior(img, 0, 0, margin).astype(np.int16)
    bright = np.empty((16,) + center.shape, dtype=bool)
    dark = np.empty_like(bright)
    for i, (dx, dy) in enumerate(CIRCLE):
        ring = _shifted_interior(img, dx, dy, margin).astype(np.int16)
        bright[i] = ring >= center + threshold
        dark[i] = ring <= center - threshold

    def has_arc(flags: np.ndarray) -> np.ndarray:
        run = flags.copy()
        for k in range(1, FAST_ARC):
            run &= np.roll(flags, -k, axis=0)
        return run.any(axis=0)

    return has_arc(bright) | has_arc(dark)


def _sobel(img: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    f = img.astype(np.float64)
    padded = np.pad(f, 1, mode="edge")

    def shift(dy, dx):
        h, w = f.shape
        return padded[1 + dy : 1 + dy + h, 1 + dx : 1 + dx + w]

    gx = (
        shift(-1, 1) + 2 * shift(0, 1) + shift(1, 1)
        - shift(-1, -1) - 2 * shift(0, -1) - shift(1, -1)
    )
    gy = (
        shift(1, -1) + 2 * shift(1, 0) + shift(1, 1)
        - shift(-1, -1) - 2 * shift(-1, 0) - shift(-1, 1)
    )
    return gx, gy


def _box_sum(arr: np.ndarray, size: int) -> np.ndarray:
    """Sum over a size x size window centered on each pixel (edge-padded)."""
    r = size // 2
    padded = np.pad(arr, r + 1, mode="edge")
    c = padded.cumsum(axis=0).cumsum(axis=1)
    h, w = arr.shape
    lo, hi = 0, size  # window [i-r, i+r] in padded coordinates
    return (
        c[hi : hi + h, hi : hi + w]
        - c[lo : lo + h, hi : hi + w]
        - c[hi : hi + h, lo : lo + w]
        + c[lo : lo + h, lo : lo + w]
    )


def _harris_response(img: np.ndarray) -> np.ndarray:
    gx, gy = _sobel(img)
    sxx = _box_sum(gx * gx, HARRIS_WINDOW)
    syy = _box_sum(gy * gy, HARRIS_WINDOW)
    sxy = _box_sum(gx * gy, HARRIS_WINDOW)
    det = sxx * syy - sxy * sxy
    trace = sxx + syy
    return det - HARRIS_K * trace * trace


def _nms_first_wins(response: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    """3x3 non-max suppression; exact ties go to the row-major earlier pixel."""
    padded = np.pad(response, 1, mode="constant", constant_values=-np.inf)
    h, w = response.shape

    def nbr(dy, dx):
        return padded[1 + dy : 1 + dy + h, 1 + dx : 1 + dx + w]

    earlier = [(-1, -1), (-1, 0), (-1, 1), (0, -1)]
    later = [(0, 1), (1, -1), (1, 0), (1, 1)]
    keep = candidates.copy()
    for dy, dx in earlier:
        keep &= response > nbr(dy, dx)
    for dy, dx in later:
        keep &= response >= nbr(dy, dx)
    return keep


def _orientation_weights() -> tuple[np.ndarray, np.ndarray]:
    r = ORIENTATION_RADIUS
    ys, xs = np.mgrid[-r : r + 1, -r : r + 1]
    disc = (xs * xs + ys * ys) <= r * r
    return (xs * disc).astype(np.float64), (ys * disc).astype(np.float64)


_XW, _YW = _orientation_weights()


def _intensity_centroid_angle(img: np.ndarray, y: int, x: int) -> float:
    r = ORIENTATION_RADIUS
    patch = img[y - r : y + r + 1, x - r : x + r + 1].astype(np.float64)
    m10 = float((patch * _XW).sum())
    m01 = float((patch * _YW).sum())
    return math.atan2(m01, m10)


def detect(image: GrayImage, max_features: int = 8000, threshold: int = FAST_THRESHOLD) -> list[Keypoint]:
    """Detect oriented corners, strongest Harris response first.

    Keypoints keep a BORDER_MARGIN-pixel margin so downstream description
    always samples inside the image. Ordering is deterministic: response
    descending, then row-major position.
    """
    if image.width < MIN_IMAGE_SIDE or image.height < MIN_IMAGE_SIDE:
        raise ImageTooSmallError(
            f"image {image.width}x{image.height} below detection minimum "
            f"{MIN_IMAGE_SIDE}x{MIN_IMAGE_SIDE}"
        )
    img = image.pixels
    m = BORDER_MARGIN
    if image.width <= 2 * m or image.height <= 2 * m:
        return []

    corners = _fast_corner_mask(img, threshold, m)
    if not corners.any():
        return []
    response = _harris_response(img)
    interior = response[m:-m, m:-m]
    keep = _nms_first_wins(interior, corners)
    ys, xs = np.nonzero(keep)
    if len(ys) == 0:
        return []
    scores = interior[ys, xs]

    order = np.lexsort((xs, ys, -scores))[:max_features]
    out = []
    for idx in order:
        y, x = int(ys[idx]) + m, int(xs[idx]) + m
        out.append(
            Keypoint(
                x=float(x),
                y=float(y),
                response=float(scores[idx]),
                angle=_intensity_centroid_angle(img, y, x),
            )
        )
    return out
