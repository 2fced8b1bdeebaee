"""End-to-end image matching: detect -> describe -> match -> verify.

A pair of frames counts as near-duplicates when RANSAC confirms at least
``min_inliers`` geometrically consistent matches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .describe import describe
from .detect import detect
from .image import GrayImage
from .matching import match
from .ransac import RansacError, ransac_homography

import numpy as np


@dataclass(frozen=True)
class MatchConfig:
    max_features: int = 8000
    fast_threshold: int = 20
    ratio: float = 0.8
    reproj_threshold_px: float = 20.0
    ransac_iterations: int = 2000
    seed: int = 0
    min_inliers: int = 15


@dataclass(frozen=True)
class MatchResult:
    """Funnel counts for one image pair plus the verified transform.

    ``putative`` counts nearest-neighbor candidates (one per query
    descriptor), ``survivors`` those passing the ratio test, ``inliers`` the
    RANSAC-consistent subset. The homography is present only when RANSAC
    succeeded with at least 4 inliers.
    """

    putative: int
    survivors: int
    inliers: int
    homography: tuple[float, ...] | None
    near_duplicate: bool

    def __post_init__(self) -> None:
        if not (self.inliers <= self.survivors <= self.putative):
            raise ValueError("match funnel must satisfy inliers <= survivors <= putative")

    def as_dict(self) -> dict[str, Any]:
        return {
            "putative": self.putative,
            "survivors": self.survivors,
            "inliers": self.inliers,
            "homography": None if self.homography is None else list(self.homography),
            "near_duplicate": self.near_duplicate,
        }


def _empty_result() -> MatchResult:
    return MatchResult(putative=0, survivors=0, inliers=0, homography=None, near_duplicate=False)


def match_images(a: GrayImage, b: GrayImage, config: MatchConfig | None = None) -> MatchResult:
    """Run the full matching pipeline between two grayscale images."""
    config = config or MatchConfig()
    kps_a = detect(a, config.max_features, config.fast_threshold)
    kps_b = detect(b, config.max_features, config.fast_threshold)
    if not kps_a or not kps_b:
        return _empty_result()
    desc_a, kept_a = describe(a, kps_a)
    desc_b, kept_b = describe(b, kps_b)
    if len(kept_a) == 0 or len(kept_b) == 0:
        return _empty_result()

    pairs, _ = match(desc_a, desc_b, config.ratio)
    putative = len(desc_a)
    survivors = len(pairs)
    if survivors < 4:
        return MatchResult(
            putative=putative, survivors=survivors, inliers=0, homography=None, near_duplicate=False
        )

    src = np.array([(kept_a[i].x, kept_a[i].y) for i in pairs[:, 0]])
    dst = np.array([(kept_b[j].x, kept_b[j].y) for j in pairs[:, 1]])
    try:
        result = ransac_homography(
            src,
            dst,
            reproj_threshold=config.reproj_threshold_px,
            iterations=config.ransac_iterations,
            seed=config.seed,
        )
    except RansacError:
        return MatchResult(
            putative=putative, survivors=survivors, inliers=0, homography=None, near_duplicate=False
        )

    hom = None
    if result.homography is not None and result.inlier_count >= 4:
        hom = tuple(float(v) for v in result.homography.reshape(-1))
    return MatchResult(
        putative=putative,
        survivors=survivors,
        inliers=result.inlier_count,
        homography=hom,
        near_duplicate=result.inlier_count >= config.min_inliers,
    )
