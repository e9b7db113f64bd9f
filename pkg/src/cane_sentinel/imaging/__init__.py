"""Image decoding, segmentation, and binary morphology."""

from .color import rgb_to_gray, as_unit_rgb
from .kmeans import (
    ClusterModel,
    ClusterRole,
    DegenerateClusters,
    KNotThree,
    KTooLarge,
    kmeans_assign,
    kmeans_fit,
    select_lesion_cluster,
)
from .morphology import (
    BadWindow,
    cross_se,
    dilate,
    erode,
    full_se,
    median_filter,
    open_mask,
    reflect_se,
    refine_mask,
    require_structuring_element,
    skeletonize,
)
from .ppm import encode_pbm, encode_ppm, load_pbm, load_ppm

__all__ = [
    "rgb_to_gray",
    "as_unit_rgb",
    "ClusterModel",
    "ClusterRole",
    "DegenerateClusters",
    "KNotThree",
    "KTooLarge",
    "kmeans_assign",
    "kmeans_fit",
    "select_lesion_cluster",
    "BadWindow",
    "cross_se",
    "dilate",
    "erode",
    "full_se",
    "median_filter",
    "open_mask",
    "reflect_se",
    "refine_mask",
    "require_structuring_element",
    "skeletonize",
    "encode_pbm",
    "encode_ppm",
    "load_pbm",
    "load_ppm",
]
