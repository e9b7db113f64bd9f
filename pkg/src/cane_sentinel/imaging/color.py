"""Color conversions for leaf rasters."""

import numpy as np

# broadcast luminance weights (sum to 1)
LUMA_WEIGHTS = np.array([0.299, 0.587, 0.114])


def rgb_to_gray(img: np.ndarray) -> np.ndarray:
    """Convert an (h, w, 3) uint8 image to (h, w) uint8 luminance.

    Per-pixel ``0.299 r + 0.587 g + 0.114 b``, rounded half away from zero
    and clamped to 0..255.
    """
    img = np.asarray(img)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError("rgb_to_gray expects an (h, w, 3) array")
    y = img.astype(np.float64) @ LUMA_WEIGHTS
    # values are non-negative, so half away from zero == floor(y + 0.5)
    return np.clip(np.floor(y + 0.5), 0, 255).astype(np.uint8)


def as_unit_rgb(img: np.ndarray) -> np.ndarray:
    """Flatten an (h, w, 3) uint8 image to (n, 3) float64 pixels in [0, 1]."""
    img = np.asarray(img)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError("expected an (h, w, 3) array")
    return img.reshape(-1, 3).astype(np.float64) / 255.0
