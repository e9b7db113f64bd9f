"""Binary morphology and raster filters for lesion-mask refinement.

Masks are bool arrays; all operations act on the last two axes, so a stack
of masks ``(n, h, w)`` is processed in one call.  Boundary policy: pixels
outside the image are background for erosion, and dilation is clipped to
the image frame.
"""

import numpy as np

from ..errors import CaneSentinelError


class BadWindow(CaneSentinelError):
    """Median filter window is even or too small."""


# ---------------------------------------------------------------------------
# structuring elements

def full_se(height: int, width: int | None = None) -> np.ndarray:
    """Solid rectangular structuring element with odd sides."""
    if width is None:
        width = height
    se = np.ones((height, width), dtype=bool)
    require_structuring_element(se)
    return se


def cross_se(size: int = 3) -> np.ndarray:
    """Plus-shaped structuring element (4-neighborhood for size 3)."""
    se = np.zeros((size, size), dtype=bool)
    se[size // 2, :] = True
    se[:, size // 2] = True
    require_structuring_element(se)
    return se


def reflect_se(se: np.ndarray) -> np.ndarray:
    """Point reflection of a structuring element about its origin."""
    return se[::-1, ::-1].copy()


def require_structuring_element(se: np.ndarray) -> None:
    """Validate SE invariants: odd sides, origin set, at least one bit."""
    se = np.asarray(se)
    if se.ndim != 2 or se.dtype != bool:
        raise ValueError("structuring element must be a 2-d bool array")
    h, w = se.shape
    if h % 2 == 0 or w % 2 == 0:
        raise ValueError(f"structuring element sides must be odd, got {h}x{w}")
    if not se.any():
        raise ValueError("structuring element has no bits set")
    if not se[h // 2, w // 2]:
        raise ValueError("structuring element origin bit must be set")


def _se_offsets(se: np.ndarray):
    ry, rx = se.shape[0] // 2, se.shape[1] // 2
    ys, xs = np.nonzero(se)
    return list(zip(ys - ry, xs - rx)), ry, rx


def _as_mask(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim < 2:
        raise ValueError("mask must have at least two axes")
    return a.astype(bool, copy=False)


def _padded(a: np.ndarray, ry: int, rx: int) -> np.ndarray:
    pad = [(0, 0)] * (a.ndim - 2) + [(ry, ry), (rx, rx)]
    return np.pad(a, pad, mode="constant", constant_values=False)


# ---------------------------------------------------------------------------
# erosion / dilation / opening

def erode(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Binary erosion: output true where `b` placed at p fits inside `a`."""
    a = _as_mask(a)
    require_structuring_element(b)
    offsets, ry, rx = _se_offsets(b)
    h, w = a.shape[-2:]
    p = _padded(a, ry, rx)
    out = np.ones_like(a, dtype=bool)
    for dy, dx in offsets:
        out &= p[..., ry + dy : ry + dy + h, rx + dx : rx + dx + w]
    return out


def dilate(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Binary dilation: output true where the reflection of `b` hits `a`."""
    a = _as_mask(a)
    require_structuring_element(b)
    offsets, ry, rx = _se_offsets(b)
    h, w = a.shape[-2:]
    p = _padded(a, ry, rx)
    out = np.zeros_like(a, dtype=bool)
    for dy, dx in offsets:
        out |= p[..., ry - dy : ry - dy + h, rx - dx : rx - dx + w]
    return out


def open_mask(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Dilation followed by erosion with the same element.

    This is the composite the segmentation pipeline calls "refine".  Note
    the order: dilate first, then erode (use ``refine_mask`` with
    ``order="standard"`` for the erosion-first composite).
    """
    return erode(dilate(a, b), b)


def refine_mask(a: np.ndarray, b: np.ndarray, order: str = "paper") -> np.ndarray:
    """Composite mask cleanup step.

    order "paper"    -> dilate then erode (the default pipeline behavior)
    order "standard" -> erode then dilate
    """
    if order == "paper":
        return open_mask(a, b)
    if order == "standard":
        return dilate(erode(a, b), b)
    raise ValueError(f"unknown morphology order {order!r}")


# ---------------------------------------------------------------------------
# median filter

def median_filter(img: np.ndarray, window: int = 3) -> np.ndarray:
    """Median filter with clamp-to-edge padding.

    Works on (h, w) uint8 rasters and on bool masks, where the odd window
    makes the median a strict majority vote.  Returns the input dtype.
    """
    if not isinstance(window, (int, np.integer)) or window < 3 or window % 2 == 0:
        raise BadWindow(f"window must be odd and >= 3, got {window!r}")
    img = np.asarray(img)
    if img.ndim != 2:
        raise ValueError("median_filter expects a 2-d raster")
    r = window // 2
    padded = np.pad(img.astype(np.uint8), r, mode="edge")
    windows = np.lib.stride_tricks.sliding_window_view(padded, (window, window))
    med = np.median(windows, axis=(-2, -1))
    if img.dtype == bool:
        return med > 0.5
    return med.astype(img.dtype)


# ---------------------------------------------------------------------------
# thinning

def skeletonize(a: np.ndarray) -> np.ndarray:
    """Two-subcycle thinning (Zhang-Suen rules), iterated to a fixed point.

    Output is a subset of the input and re-running is a no-op.
    """
    img = _as_mask(a)
    if img.ndim != 2:
        raise ValueError("skeletonize expects a 2-d mask")
    img = img.copy()
    while True:
        changed = False
        for subcycle in (0, 1):
            p = np.pad(img, 1, mode="constant", constant_values=False)
            # neighbors clockwise from north: P2..P9
            P2 = p[:-2, 1:-1]
            P3 = p[:-2, 2:]
            P4 = p[1:-1, 2:]
            P5 = p[2:, 2:]
            P6 = p[2:, 1:-1]
            P7 = p[2:, :-2]
            P8 = p[1:-1, :-2]
            P9 = p[:-2, :-2]
            ring = (P2, P3, P4, P5, P6, P7, P8, P9)
            b = sum(n.astype(np.uint8) for n in ring)
            transitions = sum(
                (~ring[i] & ring[(i + 1) % 8]).astype(np.uint8) for i in range(8)
            )
            if subcycle == 0:
                cond = ~(P2 & P4 & P6) & ~(P4 & P6 & P8)
            else:
                cond = ~(P2 & P4 & P8) & ~(P2 & P6 & P8)
            kill = img & (b >= 2) & (b <= 6) & (transitions == 1) & cond
            if kill.any():
                img &= ~kill
                changed = True
        if not changed:
            return img
