"""RANSAC homography estimation over point correspondences.

Minimal 4-point DLT fits (with Hartley coordinate normalization) are scored
by inlier count under a forward reprojection threshold; the best model is
refit on its full inlier set. Sampling uses an explicitly seeded generator,
so results are bit-reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class RansacError(Exception):
    pass


class DegenerateSamplesError(RansacError):
    """Every sampled minimal set was collinear."""


@dataclass(frozen=True)
class RansacResult:
    homography: np.ndarray | None  # (3, 3), bottom-right normalized to 1
    inlier_mask: np.ndarray        # bool, aligned with the input pairs
    inlier_count: int


def _normalization(pts: np.ndarray) -> np.ndarray:
    """Similarity transform sending the centroid to 0 and mean norm to sqrt(2)."""
    centroid = pts.mean(axis=0)
    dist = np.sqrt(((pts - centroid) ** 2).sum(axis=1)).mean()
    scale = np.sqrt(2.0) / dist if dist > 0 else 1.0
    return np.array(
        [
            [scale, 0.0, -scale * centroid[0]],
            [0.0, scale, -scale * centroid[1]],
            [0.0, 0.0, 1.0],
        ]
    )


def _dlt(src: np.ndarray, dst: np.ndarray) -> np.ndarray | None:
    """Direct linear transform with normalization; None when rank-deficient."""
    t_src = _normalization(src)
    t_dst = _normalization(dst)
    ones = np.ones((len(src), 1))
    s = (np.hstack([src, ones]) @ t_src.T)[:, :2]
    d = (np.hstack([dst, ones]) @ t_dst.T)[:, :2]

    a = np.zeros((2 * len(src), 9))
    a[0::2, 0:2] = s
    a[0::2, 2] = 1.0
    a[0::2, 6:8] = -s * d[:, 0:1]
    a[0::2, 8] = -d[:, 0]
    a[1::2, 3:5] = s
    a[1::2, 5] = 1.0
    a[1::2, 6:8] = -s * d[:, 1:2]
    a[1::2, 8] = -d[:, 1]

    try:
        _, sv, vt = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError:
        return None
    if sv[-2] < 1e-12:  # nullspace dimension > 1: degenerate configuration
        return None
    h_norm = vt[-1].reshape(3, 3)
    h = np.linalg.inv(t_dst) @ h_norm @ t_src
    if abs(h[2, 2]) < 1e-12:
        return None
    return h / h[2, 2]


def _any_three_collinear(pts: np.ndarray) -> bool:
    n = len(pts)
    span = np.abs(pts).max() + 1.0
    tol = 1e-9 * span * span
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                v1 = pts[j] - pts[i]
                v2 = pts[k] - pts[i]
                if abs(v1[0] * v2[1] - v1[1] * v2[0]) <= tol:
                    return True
    return False


def _reprojection_errors(h: np.ndarray, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    ones = np.ones((len(src), 1))
    proj = np.hstack([src, ones]) @ h.T
    w = proj[:, 2]
    errors = np.full(len(src), np.inf)
    ok = np.abs(w) > 1e-12
    errors[ok] = np.sqrt(
        (proj[ok, 0] / w[ok] - dst[ok, 0]) ** 2 + (proj[ok, 1] / w[ok] - dst[ok, 1]) ** 2
    )
    return errors


def ransac_homography(
    src_pts: np.ndarray,
    dst_pts: np.ndarray,
    *,
    reproj_threshold: float = 20.0,
    iterations: int = 2000,
    seed: int = 0,
) -> RansacResult:
    """Estimate a homography mapping src points onto dst points.

    An inlier has forward reprojection error strictly below the threshold.
    The best minimal model by inlier count (first found wins ties) is refit
    on all of its inliers; if the refit holds at least 4 inliers it becomes
    the final model, otherwise the minimal fit stands.
    """
    src = np.asarray(src_pts, dtype=np.float64).reshape(-1, 2)
    dst = np.asarray(dst_pts, dtype=np.float64).reshape(-1, 2)
    if len(src) != len(dst):
        raise ValueError("correspondence lists differ in length")
    n = len(src)
    if n < 4:
        raise RansacError(f"insufficient correspondences: {n} < 4")

    rng = np.random.Generator(np.random.PCG64(seed))
    best_mask: np.ndarray | None = None
    best_count = 0
    best_h: np.ndarray | None = None
    produced_model = False

    for _ in range(iterations):
        idx = rng.choice(n, size=4, replace=False)
        s, d = src[idx], dst[idx]
        if _any_three_collinear(s) or _any_three_collinear(d):
            continue
        h = _dlt(s, d)
        if h is None:
            continue
        produced_model = True
        mask = _reprojection_errors(h, src, dst) < reproj_threshold
        count = int(mask.sum())
        if count > best_count:
            best_count, best_mask, best_h = count, mask, h

    if not produced_model:
        raise DegenerateSamplesError("all sampled minimal sets were degenerate")
    assert best_h is not None and best_mask is not None

    refit = _dlt(src[best_mask], dst[best_mask]) if best_count >= 4 else None
    if refit is not None:
        mask = _reprojection_errors(refit, src, dst) < reproj_threshold
        count = int(mask.sum())
        if count >= 4:
            return RansacResult(homography=refit, inlier_mask=mask, inlier_count=count)
    return RansacResult(homography=best_h, inlier_mask=best_mask, inlier_count=best_count)
