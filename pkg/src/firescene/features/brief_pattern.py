"""Frozen intensity-pair sampling pattern for the binary descriptor.

256 (x1, y1, x2, y2) offsets inside a radius-15 disc around the keypoint.
The table was generated once by ``generate_pattern(PATTERN_SEED)`` below
(integer-rounded Gaussian draws, sigma = radius/2.5, rejection-sampled to the
disc, coincident pairs redrawn) and is committed verbatim so descriptors never
depend on runtime RNG state. A regression test regenerates it and compares.
"""

from __future__ import annotations

import numpy as np

PATCH_RADIUS = 15
PATTERN_SEED = 9
N_PAIRS = 256


def generate_pattern(seed: int = PATTERN_SEED) -> np.ndarray:
    """Regenerate the sampling table; must reproduce PATTERN for the fixed seed."""
    rng = np.random.Generator(np.random.PCG64(seed))

    def draw_point() -> tuple[int, int]:
        while True:
            x, y = rng.normal(0.0, PATCH_RADIUS / 2.5, size=2)
            xi, yi = int(round(x)), int(round(y))
            if xi * xi + yi * yi <= PATCH_RADIUS * PATCH_RADIUS:
                return xi, yi

    pairs = []
    while len(pairs) < N_PAIRS:
        p = draw_point()
        q = draw_point()
        while q == p:
            q = draw_point()
        pairs.append((p[0], p[1], q[0], q[1]))
    return np.array(pairs, dtype=np.int8)


_PATTERN_TABLE = (
    (-5, 1, -10, 4),
    (7, -3, 3, 2),
    (-2, -5, -12, 8),
    (0, 15, 5, 2),
    (-4, 8, -3, 9),
    (-2, 1, -1, -2),
    (5, -5, 5, -7),
    (3, -6, -11, -4),
    (-9, 3, 0, 3),
    (1, -2, 0, 6),
    (-1, -5, -6, -1),
    (-4, 11, -7, -6),
    (-2, 4, -2, -6),
    (-5, -2, 6, -6),
    (-1, -4, 2, 2),
    (1, -3, -5, -2),
    (0, 4, 0, 3),
    (-10, -5, -6, 1),
    (3, -9, -1, 4),
    (5, -7, 3, 2),
    (-3, 12, -7, -2),
    (3, 1, -1, 8),
    (9, 5, 6, 0),
    (-7, 13, -6, 13),
    (-1, 1, -1, 6),
    (-3, 11, 3, 1),
    (-3, 2, 0, 11),
    (6, -9, 9, -11),
    (0, 5, 0, -7),
    (7, -11, -9, 8),
    (-5, 1, 5, -1),
    (2, 1, 1, 7),
    (6, 2, 6, -3),
    (-5, -6, 5, 10),
    (1, -12, -3, 3),
    (2, 1, 6, 6),
    (-8, 3, -4, 1),
    (7, 11, 4, -3),
    (-2, 3, -6, 0),
    (4, 6, -2, 2),
    (8, 2, -10, 1),
    (2, -3, 0, -9),
    (7, 3, -3, 1),
    (1, -5, 12, -7),
    (-2, 3, -2, 7),
    (-6, 3, -13, 4),
    (4, 2, 2, 2),
    (5, 6, -6, 6),
    (-6, 1, -2, 3),
    (-2, 2, -3, -6),
    (6, 3, 3, 6),
    (-6, 5, -6, 2),
    (-1, 2, 4, 0),
    (-6, 6, 7, 4),
    (6, -11, 0, -1),
    (-12, 1, 0, -9),
    (-5, 1, 4, 4),
    (-7, -6, -3, 0),
    (-3, -1, 4, 4),
    (1, -7, -3, 3),
    (5, 6, -6, -3),
    (-7, -11, 8, 3),
    (-4, 0, 2, 11),
    (5, 9, 3, 8),
    (9, 6, 0, 7),
    (-2, 9, -2, -4),
    (11, -2, 1, -6),
    (-4, -2, -6, 7),
    (-4, -7, 7, 4),
    (-14, -3, 6, -5),
    (-2, -1, -13, -5),
    (5, 9, 0, -1),
    (3, 1, 3, -5),
    (0, 3, 4, -9),
    (5, 1, 1, -10),
    (0, -9, 0, 0),
    (1, 0, 7, 5),
    (5, 5, 12, -5),
    (-2, 2, -9, 6),
    (10, -7, -5, 6),
    (8, -10, 3, -1),
    (-11, -2, -3, 1),
    (0, -2, -1, -1),
    (3, 6, 6, -5),
    (-5, -4, 9, 3),
    (-5, -7, -6, 0),
    (-7, 0, 8, -2),
    (5, -9, 2, 2),
    (-6, 8, 0, -4),
    (-2, 6, -8, 1),
    (-6, 1, -3, 0),
    (5, 0, 3, 4),
    (2, 1, 0, 4),
    (7, 11, 11, -6),
    (2, 3, 7, 6),
    (-9, 2, -10, -3),
    (-6, -4, 9, -3),
    (-3, 1, 6, -10),
    (10, -5, -6, 1),
    (5, -4, -1, -6),
    (4, 5, -2, 7),
    (-10, -3, -6, -4),
    (-10, 6, -6, -1),
    (7, 10, 7, -13),
    (-2, -2, -4, -5),
    (-3, 3, -3, -8),
    (-10, 1, -10, 4),
    (-3, -3, 1, -2),
    (4, -8, 10, -9),
    (5, 0, -5, 6),
    (-2, 7, -2, -9),
    (-4, 0, -3, 1),
    (-6, 10, -3, 3),
    (-10, 5, 9, 4),
    (-1, -6, 4, 4),
    (-8, 0, 3, -5),
    (4, -2, 9, -8),
    (3, 1, -11, -6),
    (-5, 6, -2, 0),
    (-1, 12, -1, -9),
    (-5, -7, -2, -9),
    (-5, 12, 1, 2),
    (11, -10, 3, -3),
    (0, -4, 1, 7),
    (7, 2, 5, -7),
    (12, 3, -4, 0),
    (7, -7, 0, 4),
    (-6, 13, 5, 10),
    (-6, 1, 9, 3),
    (8, -11, 0, -12),
    (-3, 2, -1, -8),
    (2, 4, -1, 5),
    (7, 7, -2, 3),
    (-4, -1, 6, -1),
    (-3, -4, 3, 10),
    (6, -1, 5, 6),
    (9, -4, 4, -2),
    (-3, 8, 3, 0),
    (8, 1, -5, 5),
    (-6, -5, -2, -1),
    (5, -2, -11, -3),
    (2, -1, -1, -7),
    (-2, 3, 4, -5),
    (-4, -6, 6, -4),
    (-2, -5, -5, -1),
    (5, -3, 7, 0),
    (14, 2, 0, -1),
    (4, -11, -4, -1),
    (-5, -6, 8, -9),
    (-3, -3, -3, -6),
    (5, -1, 10, -8),
    (1, -8, 1, 7),
    (-7, 6, -5, -7),
    (2, 4, 1, 2),
    (0, -3, -13, -2),
    (-4, 3, -5, 12),
    (4, -3, 4, -1),
    (8, -3, 9, -6),
    (1, 0, -5, -2),
    (0, -7, -5, 3),
    (-5, 10, 10, -3),
    (2, 3, 4, -3),
    (4, -3, -1, 8),
    (0, -6, -3, 2),
    (-5, -6, 1, -6),
    (13, -4, 4, -9),
    (-2, 5, 3, 4),
    (-3, 1, -1, -8),
    (7, -4, -1, 5),
    (0, 9, -1, 0),
    (7, 4, -3, 0),
    (1, 10, -5, 1),
    (4, 1, -3, 5),
    (-6, 12, 1, 4),
    (3, -3, -1, 0),
    (-5, -2, -6, 7),
    (3, -3, -2, -3),
    (-2, 2, -2, -3),
    (2, -1, 0, 1),
    (-1, -7, -1, 7),
    (-5, -5, -2, -2),
    (8, -2, 7, 5),
    (4, 4, 2, 3),
    (7, -12, 2, 7),
    (-4, 0, 5, -10),
    (2, -7, 1, 2),
    (1, -6, 0, -4),
    (2, -2, -5, 6),
    (-7, -3, 7, 2),
    (5, -6, 1, -5),
    (-11, 4, -6, 1),
    (-6, 3, 3, -6),
    (-3, -1, -4, 4),
    (-1, 0, -4, -9),
    (0, 5, 7, 1),
    (-8, -2, 1, -7),
    (-2, -4, -5, -6),
    (2, 3, 7, -2),
    (0, -10, 2, 8),
    (-5, 3, -3, 3),
    (4, -9, -5, -5),
    (-1, 8, 0, 1),
    (1, -4, 6, 3),
    (5, 2, -8, 3),
    (-4, -6, -3, 5),
    (7, 1, -2, 6),
    (5, 4, -10, 3),
    (12, -7, -2, -5),
    (-3, -1, 12, -2),
    (10, -6, 4, 0),
    (-3, 2, 8, 2),
    (4, 1, 3, 3),
    (5, -1, -4, -3),
    (-3, 3, -5, 4),
    (2, 8, 1, 7),
    (3, 1, -2, 3),
    (1, -4, -3, -12),
    (7, 7, -3, -8),
    (4, 7, 0, -4),
    (8, 5, 6, 12),
    (0, 1, 12, 5),
    (-9, 4, 3, -7),
    (-6, -5, 4, -9),
    (-1, -5, 11, -2),
    (4, 0, -2, -11),
    (-2, -13, -4, 0),
    (0, -5, -1, -7),
    (4, -7, -1, 11),
    (-6, 7, -4, 0),
    (-3, -5, -4, 1),
    (-2, 11, -5, -2),
    (1, 3, -8, 1),
    (-6, 0, -2, 7),
    (5, 9, -5, -4),
    (0, -4, -5, 2),
    (13, 1, 9, -9),
    (0, -4, 3, -11),
    (1, -11, 9, -1),
    (-5, -13, 8, 0),
    (-4, 7, -9, 6),
    (7, -2, 7, 10),
    (-5, -4, 5, 4),
    (-9, 7, -3, -6),
    (2, -11, -1, 2),
    (4, -7, -2, 6),
    (1, 4, 1, 1),
    (-5, -7, -2, -7),
    (9, 4, 7, -9),
    (-8, 4, 1, 1),
    (6, -6, -8, -5),
    (12, 0, -5, 9),
    (5, 5, 4, -1),
    (10, 5, -7, -7),
    (-4, 5, -4, -2),
    (-3, 0, 7, -3),
    (0, 10, -9, 2),
)

PATTERN = np.array(_PATTERN_TABLE, dtype=np.int8)
