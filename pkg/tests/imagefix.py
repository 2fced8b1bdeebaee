"""Synthetic image fixtures for the feature-matching tests."""

from __future__ import annotations

import math

import numpy as np

from firescene.features import GrayImage


def synthetic_texture(width: int, height: int, seed: int) -> GrayImage:
    """Multi-scale block noise: plenty of corners at several scales."""
    rng = np.random.default_rng(seed)
    coarse = rng.integers(0, 256, size=(height // 16 + 1, width // 16 + 1), dtype=np.int32)
    coarse = np.kron(coarse, np.ones((16, 16), dtype=np.int32))[:height, :width]
    mid = rng.integers(-40, 40, size=(height // 4 + 1, width // 4 + 1), dtype=np.int32)
    mid = np.kron(mid, np.ones((4, 4), dtype=np.int32))[:height, :width]
    img = np.clip(coarse + mid, 0, 255).astype(np.uint8)
    return GrayImage.from_array(img)


def noise_image(width: int, height: int, seed: int) -> GrayImage:
    rng = np.random.default_rng(seed)
    return GrayImage.from_array(rng.integers(0, 256, size=(height, width), dtype=np.uint8))


def warp_rigid(image: GrayImage, angle_deg: float, shift_xy: tuple[float, float]) -> GrayImage:
    """Rotate about the image center then translate; nearest-neighbor sampling."""
    h, w = image.pixels.shape
    cy, cx = (h - 1) / 2.0, (w - 1) / 2.0
    theta = math.radians(angle_deg)
    c, s = math.cos(theta), math.sin(theta)
    ys, xs = np.mgrid[0:h, 0:w].astype(np.float64)
    # Inverse map: undo the shift, then rotate by -theta about the center.
    xs_r = xs - shift_xy[0] - cx
    ys_r = ys - shift_xy[1] - cy
    src_x = np.round(c * xs_r + s * ys_r + cx).astype(np.int64)
    src_y = np.round(-s * xs_r + c * ys_r + cy).astype(np.int64)
    valid = (src_x >= 0) & (src_x < w) & (src_y >= 0) & (src_y < h)
    out = np.zeros((h, w), dtype=np.uint8)
    out[valid] = image.pixels[src_y[valid], src_x[valid]]
    return GrayImage.from_array(out)


def rigid_points(pts: np.ndarray, angle_deg: float, shift_xy: tuple[float, float], center: tuple[float, float]) -> np.ndarray:
    """Forward-map points with the same transform warp_rigid applies."""
    theta = math.radians(angle_deg)
    c, s = math.cos(theta), math.sin(theta)
    cx, cy = center
    x = pts[:, 0] - cx
    y = pts[:, 1] - cy
    return np.stack(
        [c * x - s * y + cx + shift_xy[0], s * x + c * y + cy + shift_xy[1]], axis=1
    )
