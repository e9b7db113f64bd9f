"""Region analysis of the refined lesion mask and feature assembly.

The classifier consumes an 8-component vector of color and shape measures
computed from the lesion mask and the original RGB image.
"""

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch

_NEIGHBORS_8 = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))


@dataclass(frozen=True)
class Region:
    """One 8-connected foreground component.

    pixels are (x, y) pairs in scan order; bbox is inclusive (x0, y0, x1, y1);
    perimeter counts exposed cardinal edges.
    """

    id: int
    pixels: tuple
    area: int
    bbox: tuple
    perimeter: int

    @property
    def elongation(self) -> float:
        x0, y0, x1, y1 = self.bbox
        bw, bh = x1 - x0 + 1, y1 - y0 + 1
        return max(bw, bh) / min(bw, bh)


FEATURE_NAMES = (
    "lesion_area_fraction",
    "perimeter_norm",
    "compactness",
    "region_count",
    "lesion_mean_r",
    "lesion_mean_g",
    "lesion_mean_b",
    "max_elongation",
)

CSV_HEADER = ",".join(FEATURE_NAMES)


@dataclass(frozen=True)
class FeatureVector:
    """The d=8 color+shape feature space shared by both classifiers."""

    lesion_area_fraction: float
    perimeter_norm: float
    compactness: float
    region_count: float
    lesion_mean_r: float
    lesion_mean_g: float
    lesion_mean_b: float
    max_elongation: float

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in FEATURE_NAMES])

    def to_csv_row(self) -> str:
        return ",".join(f"{getattr(self, name):.6f}" for name in FEATURE_NAMES)

    @classmethod
    def from_array(cls, values) -> "FeatureVector":
        values = np.asarray(values, dtype=float)
        if values.shape != (len(FEATURE_NAMES),):
            raise DimensionMismatch(
                f"expected {len(FEATURE_NAMES)} components, got shape {values.shape}"
            )
        return cls(*(float(v) for v in values))


def connected_components(mask: np.ndarray) -> list:
    """8-connected labeling of a bool mask.

    Regions come back sorted by area descending, ties broken by the smallest
    (y, x) of their scan-order first pixel.
    """
    mask = np.asarray(mask).astype(bool, copy=False)
    if mask.ndim != 2:
        raise ValueError("mask must be 2-d")
    h, w = mask.shape
    seen = np.zeros_like(mask)
    raw = []
    for y in range(h):
        for x in range(w):
            if not mask[y, x] or seen[y, x]:
                continue
            pixels = []
            queue = deque([(y, x)])
            seen[y, x] = True
            while queue:
                cy, cx = queue.popleft()
                pixels.append((cx, cy))
                for dy, dx in _NEIGHBORS_8:
                    ny, nx = cy + dy, cx + dx
                    if 0 <= ny < h and 0 <= nx < w and mask[ny, nx] and not seen[ny, nx]:
                        seen[ny, nx] = True
                        queue.append((ny, nx))
            raw.append(pixels)

    raw.sort(key=lambda px: (-len(px), (px[0][1], px[0][0])))
    regions = []
    for i, pixels in enumerate(raw):
        xs = [p[0] for p in pixels]
        ys = [p[1] for p in pixels]
        own = np.zeros_like(mask)
        own[ys, xs] = True
        regions.append(
            Region(
                id=i,
                pixels=tuple(pixels),
                area=len(pixels),
                bbox=(min(xs), min(ys), max(xs), max(ys)),
                perimeter=mask_perimeter(own),
            )
        )
    return regions


def mask_perimeter(mask: np.ndarray) -> int:
    """Total exposed-edge count of a mask.

    Sums, over the four cardinal directions, the foreground pixels whose
    neighbor in that direction is background or outside the image.
    """
    mask = np.asarray(mask).astype(bool, copy=False)
    if mask.ndim != 2:
        raise ValueError("mask must be 2-d")
    p = np.pad(mask, 1, mode="constant", constant_values=False)
    top = mask & ~p[:-2, 1:-1]
    bottom = mask & ~p[2:, 1:-1]
    left = mask & ~p[1:-1, :-2]
    right = mask & ~p[1:-1, 2:]
    return int(top.sum() + bottom.sum() + left.sum() + right.sum())


def perimeter(region: Region, mask: np.ndarray) -> int:
    """Exposed-edge count of one region within its mask."""
    mask = np.asarray(mask).astype(bool, copy=False)
    own = np.zeros_like(mask)
    for x, y in region.pixels:
        if not mask[y, x]:
            raise ValueError(f"region pixel ({x}, {y}) is background in the mask")
        own[y, x] = True
    # cardinal neighbors of a region pixel are either in the same region or
    # background (4-adjacent pixels always share an 8-connected component),
    # so the region's own raster gives the exact directional edge totals
    return mask_perimeter(own)


def extract_features(img: np.ndarray, mask: np.ndarray) -> FeatureVector:
    """Build the 8-component color+shape vector for one lesion mask.

    Channel means are taken over mask-true pixels of the original RGB image.
    An all-false mask yields the defined degenerate vector
    (0, 0, 0, 0, 0, 0, 0, 1).
    """
    img = np.asarray(img)
    mask = np.asarray(mask).astype(bool, copy=False)
    if img.ndim != 3 or img.shape[2] != 3 or mask.ndim != 2:
        raise DimensionMismatch("expected (h, w, 3) image and (h, w) mask")
    if img.shape[:2] != mask.shape:
        raise DimensionMismatch(
            f"image {img.shape[:2]} and mask {mask.shape} dimensions differ"
        )
    h, w = mask.shape
    area = int(mask.sum())
    if area == 0:
        return FeatureVector(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0)

    regions = connected_components(mask)
    total_perimeter = mask_perimeter(mask)
    means = img[mask].astype(np.float64).mean(axis=0) / 255.0
    return FeatureVector(
        lesion_area_fraction=area / (w * h),
        perimeter_norm=total_perimeter / (2.0 * (w + h)),
        compactness=total_perimeter**2 / (4.0 * np.pi * area),
        region_count=float(len(regions)),
        lesion_mean_r=float(means[0]),
        lesion_mean_g=float(means[1]),
        lesion_mean_b=float(means[2]),
        max_elongation=max(r.elongation for r in regions),
    )
