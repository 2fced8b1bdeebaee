"""Steered binary descriptors: 256 fixed intensity comparisons per keypoint.

The frozen sampling pattern is rotated to the keypoint orientation before
sampling (angles quantized to 32 steps so rotated integer offsets can be
precomputed once). Bit b is set when the patch is darker at the pair's first
point than at its second.
"""

from __future__ import annotations

import math

import numpy as np

from .brief_pattern import N_PAIRS, PATCH_RADIUS, PATTERN
from .detect import Keypoint
from .image import GrayImage

DESCRIPTOR_BITS = N_PAIRS
ANGLE_BINS = 32


def _rotated_patterns() -> np.ndarray:
    """(ANGLE_BINS, 256, 4) integer offsets, one table per quantized angle."""
    tables = np.empty((ANGLE_BINS, N_PAIRS, 4), dtype=np.int32)
    pat = PATTERN.astype(np.float64)
    for b in range(ANGLE_BINS):
        theta = 2.0 * math.pi * b / ANGLE_BINS
        c, s = math.cos(theta), math.sin(theta)
        for col in (0, 2):  # rotate both points of each pair
            x, y = pat[:, col], pat[:, col + 1]
            tables[b, :, col] = np.round(x * c - y * s)
            tables[b, :, col + 1] = np.round(x * s + y * c)
    assert np.abs(tables).max() <= PATCH_RADIUS
    return tables

_ROTATED = _rotated_patterns()


def describe(image: GrayImage, keypoints: list[Keypoint]) -> tuple[np.ndarray, list[Keypoint]]:
    """Compute packed 256-bit descriptors for every describable keypoint.

    Returns (descriptors, kept_keypoints): descriptors are a (N, 32) uint8
    array aligned 1:1 with the surviving keypoints. Keypoints too close to
    the border to sample are filtered out, not fatal.
    """
    img = image.pixels
    h, w = img.shape
    kept: list[Keypoint] = []
    coords = []
    bins = []
    for kp in keypoints:
        x, y = int(round(kp.x)), int(round(kp.y))
        if not (PATCH_RADIUS <= x < w - PATCH_RADIUS and PATCH_RADIUS <= y < h - PATCH_RADIUS):
            continue
        kept.append(kp)
        coords.append((y, x))
        frac = (kp.angle % (2.0 * math.pi)) / (2.0 * math.pi)
        bins.append(int(round(frac * ANGLE_BINS)) % ANGLE_BINS)

    if not kept:
        return np.empty((0, DESCRIPTOR_BITS // 8), dtype=np.uint8), []

    coords_arr = np.asarray(coords, dtype=np.int64)
    bins_arr = np.asarray(bins, dtype=np.int64)
    bits = np.empty((len(kept), DESCRIPTOR_BITS), dtype=bool)
    for b in np.unique(bins_arr):
        sel = np.nonzero(bins_arr == b)[0]
        table = _ROTATED[b]
        ys = coords_arr[sel, 0][:, None]
        xs = coords_arr[sel, 1][:, None]
        v1 = img[ys + table[:, 1], xs + table[:, 0]]
        v2 = img[ys + table[:, 3], xs + table[:, 2]]
        bits[sel] = v1 < v2
    return np.packbits(bits, axis=1), kept


def hamming_distance(a: np.ndarray, b: np.ndarray) -> int:
    """Hamming distance between two packed descriptors."""
    return int(np.bitwise_count(np.bitwise_xor(a, b)).sum())
