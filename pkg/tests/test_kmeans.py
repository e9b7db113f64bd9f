import numpy as np
import pytest

from cane_sentinel.imaging import kmeans as km
from cane_sentinel.imaging.color import LUMA_WEIGHTS


# ---------------------------------------------------------------------------
# naive Lloyd oracle: plain loops, same deterministic init rule

def lloyd_oracle(points, k, max_iter=100):
    lum = [float(p @ LUMA_WEIGHTS) for p in points]
    first = max(range(len(points)), key=lambda i: (lum[i], -i))
    centroids = [points[first].copy()]
    while len(centroids) < k:
        dmin = [min(float(np.sum((p - c) ** 2)) for c in centroids) for p in points]
        centroids.append(points[max(range(len(points)), key=lambda i: (dmin[i], -i))].copy())

    labels = None
    for _ in range(max_iter):
        new = []
        for p in points:
            d = [float(np.sum((p - c) ** 2)) for c in centroids]
            new.append(d.index(min(d)))
        if labels == new:
            break
        labels = new
        for j in range(k):
            members = [points[i] for i in range(len(points)) if labels[i] == j]
            if members:
                centroids[j] = np.mean(members, axis=0)
        empties = [j for j in range(k) if labels.count(j) == 0]
        if empties:
            own = [float(np.sum((points[i] - centroids[labels[i]]) ** 2))
                   for i in range(len(points))]
            for j in empties:
                centroids[j] = points[max(range(len(points)), key=lambda i: (own[i], -i))].copy()
    objective = sum(float(np.sum((points[i] - centroids[labels[i]]) ** 2))
                    for i in range(len(points)))
    return np.array(centroids), labels, objective


def img_from_unit(pixels, h, w):
    arr = (np.asarray(pixels).reshape(h, w, 3) * 255.0).round().astype(np.uint8)
    return arr


# ---------------------------------------------------------------------------
# kmeans_fit

def test_k1_centroid_is_channel_mean(rng):
    img = rng.integers(0, 256, size=(8, 8, 3), dtype=np.uint8)
    model = km.kmeans_fit(img, k=1)
    mean = img.reshape(-1, 3).astype(np.float64).mean(axis=0) / 255.0
    assert np.allclose(model.centroids[0], mean, atol=1e-12, rtol=0)
    assert model.counts.tolist() == [64]


def test_two_point_masses_recovered_exactly():
    img = np.zeros((4, 8, 3), dtype=np.uint8)
    img[:, :4, 1] = 255   # left half pure green
    img[:, 4:, 0] = 255   # right half pure red
    model = km.kmeans_fit(img, k=2)
    cents = {tuple(c) for c in model.centroids}
    assert cents == {(0.0, 1.0, 0.0), (1.0, 0.0, 0.0)}
    assert sorted(model.counts.tolist()) == [16, 16]


def test_matches_naive_lloyd_on_tiny_raster(rng):
    img = rng.integers(0, 256, size=(4, 4, 3), dtype=np.uint8)
    model = km.kmeans_fit(img, k=3)
    points = img.reshape(-1, 3).astype(np.float64) / 255.0
    cents, labels, objective = lloyd_oracle(points, 3)
    assert np.array_equal(model.centroids, cents)
    assert model.inertia == objective


def test_objective_non_increasing(rng):
    for _ in range(5):
        img = rng.integers(0, 256, size=(16, 16, 3), dtype=np.uint8)
        model = km.kmeans_fit(img, k=3)
        trace = model.objective_trace
        assert len(trace) >= 1
        assert all(b <= a + 1e-12 for a, b in zip(trace, trace[1:]))


def test_k_too_large():
    img = np.zeros((2, 2, 3), dtype=np.uint8)
    with pytest.raises(km.KTooLarge):
        km.kmeans_fit(img, k=5)
    with pytest.raises(ValueError):
        km.kmeans_fit(img, k=0)


def test_counts_sum_to_pixel_count(rng):
    img = rng.integers(0, 256, size=(6, 7, 3), dtype=np.uint8)
    model = km.kmeans_fit(img, k=3)
    assert model.counts.sum() == 42


# ---------------------------------------------------------------------------
# kmeans_assign

def test_assign_pixel_on_centroid():
    img = np.zeros((1, 3, 3), dtype=np.uint8)
    img[0, 0] = (255, 0, 0)
    img[0, 1] = (0, 255, 0)
    img[0, 2] = (0, 255, 0)
    model = km.kmeans_fit(img, k=2)
    labels = km.kmeans_assign(model, img)
    red_idx = int(np.argmin(np.sum((model.centroids - [1, 0, 0]) ** 2, axis=1)))
    assert labels[0, 0] == red_idx


def test_assign_tie_goes_to_lowest_index():
    model = km.ClusterModel(
        k=3,
        centroids=np.array([[0.0, 0.0, 0.0], [0.5, 0.5, 0.5], [0.5, 0.0, 0.0]]),
        counts=np.array([1, 1, 1]),
    )
    # pixel at (0.25, 0, 0) is equidistant from centroids 0 and 2
    img = np.array([[[64, 0, 0]]], dtype=np.uint8)
    img_unit = np.array([[[0.25, 0.0, 0.0]]])
    labels = km.kmeans_assign(model, (img_unit * 255).astype(np.uint8))
    # 0.25*255 = 63.75 doesn't round-trip; build the tie on an exact grid
    model2 = km.ClusterModel(
        k=3,
        centroids=np.array([[0.0, 0.0, 0.0], [1.0, 1.0, 1.0], [0.4, 0.0, 0.0]]),
        counts=np.array([1, 1, 1]),
    )
    img2 = np.array([[[51, 0, 0]]], dtype=np.uint8)  # 51/255 = 0.2 exactly
    labels2 = km.kmeans_assign(model2, img2)
    assert labels2[0, 0] == 0


def test_assign_matches_brute_force(rng):
    img = rng.integers(0, 256, size=(8, 8, 3), dtype=np.uint8)
    model = km.kmeans_fit(img, k=4)
    labels = km.kmeans_assign(model, img)
    pts = img.reshape(-1, 3).astype(np.float64) / 255.0
    for i, p in enumerate(pts):
        d = [float(np.sum((p - c) ** 2)) for c in model.centroids]
        assert labels.ravel()[i] == d.index(min(d))


# ---------------------------------------------------------------------------
# select_lesion_cluster

def leaf_with_lines():
    """Green leaf filling the interior, black border, white lesion lines."""
    img = np.zeros((12, 12, 3), dtype=np.uint8)
    img[2:-2, 2:-2] = (30, 160, 40)
    img[4, 3:-3] = (240, 240, 220)
    img[7, 3:-3] = (240, 240, 220)
    return img


def test_roles_on_leaf_with_lines():
    img = leaf_with_lines()
    model = km.kmeans_fit(img, k=3)
    labels = km.kmeans_assign(model, img)
    tagged, mask = km.select_lesion_cluster(model, labels)
    bg = tagged.role_index(km.ClusterRole.BACKGROUND)
    healthy = tagged.role_index(km.ClusterRole.HEALTHY)
    lesion = tagged.role_index(km.ClusterRole.LESION)
    # black cluster is background, green healthy, white lesion
    assert np.allclose(tagged.centroids[bg], [0, 0, 0], atol=0.05)
    assert tagged.centroids[healthy][1] > 0.5
    assert tagged.centroids[lesion].min() > 0.7
    assert mask.sum() == 12  # two 6-pixel lines
    assert np.array_equal(mask, labels == lesion)


def test_two_color_image_gives_empty_lesion_mask():
    img = np.zeros((8, 8, 3), dtype=np.uint8)
    img[2:-2, 2:-2] = (40, 180, 60)
    model = km.kmeans_fit(img, k=3)
    labels = km.kmeans_assign(model, img)
    tagged, mask = km.select_lesion_cluster(model, labels)
    assert not mask.any()
    lesion = tagged.role_index(km.ClusterRole.LESION)
    assert tagged.counts[lesion] == 0


def test_border_cluster_is_background_regardless_of_size():
    # border ring color occupies fewer pixels than the interior color
    img = np.zeros((10, 10, 3), dtype=np.uint8)
    img[:, :] = (200, 40, 40)
    img[1:-1, 1:-1] = (40, 200, 40)
    img[4:6, 4:6] = (250, 250, 250)
    model = km.kmeans_fit(img, k=3)
    labels = km.kmeans_assign(model, img)
    tagged, mask = km.select_lesion_cluster(model, labels)
    bg = tagged.role_index(km.ClusterRole.BACKGROUND)
    assert np.allclose(tagged.centroids[bg], [200 / 255, 40 / 255, 40 / 255], atol=0.02)
    assert tagged.counts[bg] < tagged.counts[tagged.role_index(km.ClusterRole.HEALTHY)]


def test_uniform_image_degenerate():
    img = np.full((6, 6, 3), 120, dtype=np.uint8)
    model = km.kmeans_fit(img, k=3)
    labels = km.kmeans_assign(model, img)
    with pytest.raises(km.DegenerateClusters):
        km.select_lesion_cluster(model, labels)


def test_k_not_three():
    img = np.zeros((4, 4, 3), dtype=np.uint8)
    img[0, 0] = (255, 255, 255)
    model = km.kmeans_fit(img, k=2)
    labels = km.kmeans_assign(model, img)
    with pytest.raises(km.KNotThree):
        km.select_lesion_cluster(model, labels)
