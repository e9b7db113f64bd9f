"""K-means pixel clustering and lesion-cluster selection.

Clustering runs in normalized RGB space ([0,1]^3) with a deterministic
farthest-first init seeded at the brightest pixel, so repeated runs on the
same image are bit-identical without a seed parameter.
"""

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from ..errors import CaneSentinelError
from .color import LUMA_WEIGHTS, as_unit_rgb


class KTooLarge(CaneSentinelError):
    """More clusters requested than the image has pixels."""


class KNotThree(CaneSentinelError):
    """Lesion-cluster selection requires the k=3 pipeline default."""


class DegenerateClusters(CaneSentinelError):
    """Two of the three clusters are empty; roles cannot be assigned."""


class ClusterRole(str, Enum):
    BACKGROUND = "background"
    HEALTHY = "healthy"
    LESION = "lesion"


@dataclass(frozen=True)
class ClusterModel:
    """Fitted centroids plus bookkeeping from the Lloyd run.

    `roles` stays None until select_lesion_cluster tags each cluster.
    `objective_trace` holds the within-cluster sum of squared distances
    after each iteration (non-increasing).
    """

    k: int
    centroids: np.ndarray          # (k, 3) float64 in [0, 1]
    counts: np.ndarray             # (k,) pixels per cluster
    roles: tuple[ClusterRole, ...] | None = None
    inertia: float = 0.0
    n_iter: int = 0
    objective_trace: tuple[float, ...] = ()

    def role_index(self, role: ClusterRole) -> int:
        if self.roles is None:
            raise ValueError("cluster roles not assigned yet")
        return self.roles.index(role)


def _sq_dists(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centroids[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def _farthest_first_init(points: np.ndarray, k: int) -> np.ndarray:
    """Seed at the brightest pixel, then repeatedly take the point farthest
    from the chosen set (ties resolve to the lowest pixel index)."""
    luminance = points @ LUMA_WEIGHTS
    centroids = [points[int(np.argmax(luminance))]]
    if k == 1:
        return np.array(centroids)
    d2 = np.sum((points - centroids[0]) ** 2, axis=1)
    for _ in range(1, k):
        nxt = points[int(np.argmax(d2))]
        centroids.append(nxt)
        d2 = np.minimum(d2, np.sum((points - nxt) ** 2, axis=1))
    return np.array(centroids)


def kmeans_fit(img: np.ndarray, k: int = 3, max_iter: int = 100) -> ClusterModel:
    """Lloyd iterations on the image's pixels in [0,1]^3.

    Stops when assignments are unchanged or after `max_iter` iterations.
    An emptied cluster is re-seeded with the pixel farthest from its own
    centroid.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    points = as_unit_rgb(img)
    n = len(points)
    if k > n:
        raise KTooLarge(f"k={k} exceeds pixel count {n}")

    centroids = _farthest_first_init(points, k)
    labels = None
    trace = []
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        new_labels = np.argmin(_sq_dists(points, centroids), axis=1)
        if labels is not None and np.array_equal(new_labels, labels):
            n_iter -= 1
            break
        labels = new_labels
        counts = np.bincount(labels, minlength=k)
        for j in range(k):
            if counts[j] > 0:
                centroids[j] = points[labels == j].mean(axis=0)
        # re-seed empty clusters at the point farthest from its centroid
        empties = np.flatnonzero(counts == 0)
        if empties.size:
            own = np.sum((points - centroids[labels]) ** 2, axis=1)
            for j in empties:
                centroids[j] = points[int(np.argmax(own))]
        d2 = _sq_dists(points, centroids)
        trace.append(float(d2[np.arange(n), labels].sum()))

    counts = np.bincount(labels, minlength=k)
    return ClusterModel(
        k=k,
        centroids=centroids,
        counts=counts,
        inertia=trace[-1],
        n_iter=n_iter,
        objective_trace=tuple(trace),
    )


def kmeans_assign(model: ClusterModel, img: np.ndarray) -> np.ndarray:
    """Label raster: each pixel mapped to its nearest centroid.

    Distance ties resolve to the lowest centroid index.
    """
    points = as_unit_rgb(img)
    labels = np.argmin(_sq_dists(points, model.centroids), axis=1)
    return labels.reshape(img.shape[:2])


def select_lesion_cluster(model: ClusterModel, labels: np.ndarray):
    """Assign Background/Healthy/Lesion roles and build the lesion mask.

    Background is the cluster holding the most image-border pixels, Healthy
    the largest remaining cluster by pixel count, Lesion the one left over.
    Returns (model with roles filled, bool lesion mask).
    """
    if model.k != 3:
        raise KNotThree(f"role selection needs k=3, got k={model.k}")
    labels = np.asarray(labels)
    if labels.ndim != 2:
        raise ValueError("labels must be a 2-d raster")
    counts = np.bincount(labels.ravel(), minlength=3)
    if int(np.count_nonzero(counts == 0)) >= 2:
        raise DegenerateClusters(
            "two clusters are empty; the image has no separable regions"
        )

    border = np.concatenate(
        [labels[0, :], labels[-1, :], labels[1:-1, 0], labels[1:-1, -1]]
    )
    background = int(np.argmax(np.bincount(border, minlength=3)))
    rest = [j for j in range(3) if j != background]
    # larger remaining cluster is the healthy tissue; ties -> lower index
    if counts[rest[1]] > counts[rest[0]]:
        rest = [rest[1], rest[0]]
    healthy, lesion = rest

    roles = [None, None, None]
    roles[background] = ClusterRole.BACKGROUND
    roles[healthy] = ClusterRole.HEALTHY
    roles[lesion] = ClusterRole.LESION
    tagged = replace(model, roles=tuple(roles), counts=counts)
    return tagged, labels == lesion
