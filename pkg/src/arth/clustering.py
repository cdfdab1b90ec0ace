"""Word-difficulty clustering: two-feature profiles (syllable count and
log-scaled usage frequency), z-score or min-max normalization, K-means with
k-means++ seeding, and difficulty ranking of the fitted clusters.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .frequency import FrequencyStore, lookup_lemma
from .preprocess import PreprocessedDoc
from .syllables import count_syllables_rule


class DegenerateFeatureError(ValueError):
    """A feature column has zero variance (or zero range)."""


class InvalidKError(ValueError):
    pass


@dataclass
class NormalizationParams:
    mu: tuple[float, ...]
    sigma: tuple[float, ...]
    min: tuple[float, ...]
    max: tuple[float, ...]


@dataclass
class WordProfile:
    lemma: str
    syllables: int
    frequency: int
    features_raw: tuple[float, float]
    features_z: tuple[float, float] | None = None
    cluster: int | None = None


@dataclass
class ClusterModel:
    k: int
    centroids: np.ndarray            # (k, n_features), normalized space
    labels: np.ndarray               # per-point cluster id
    sse: float
    n_iter: int
    assignments: dict[str, int] = field(default_factory=dict)
    difficulty_rank: list[int] = field(default_factory=list)


def zscore_normalize(values: list[float]) -> tuple[list[float], NormalizationParams]:
    """Standardize with population sigma; output has mean 0 and std 1."""
    if len(values) < 2:
        raise DegenerateFeatureError("need at least 2 values to standardize")
    arr = np.asarray(values, dtype=float)
    mu = float(arr.mean())
    sigma = float(arr.std())  # population standard deviation
    if sigma == 0.0:
        raise DegenerateFeatureError("zero variance feature")
    params = NormalizationParams(
        mu=(mu,), sigma=(sigma,), min=(float(arr.min()),), max=(float(arr.max()),)
    )
    return list((arr - mu) / sigma), params


def minmax_normalize(values: list[float]) -> list[float]:
    """Rescale to [0, 1]; endpoints map to exactly 0 and 1."""
    arr = np.asarray(values, dtype=float)
    lo, hi = float(arr.min()), float(arr.max())
    if hi == lo:
        raise DegenerateFeatureError("zero range feature")
    return list((arr - lo) / (hi - lo))


def choose_k(n_unique_words: int) -> int:
    """5 for more than 400 words, otherwise 3; clamped to the point count."""
    if n_unique_words < 1:
        raise InvalidKError("need at least one word")
    k = 5 if n_unique_words > 400 else 3
    return min(k, n_unique_words)


def _kmeans_pp_init(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(points)
    centroids = np.empty((k, points.shape[1]))
    centroids[0] = points[rng.integers(n)]
    closest = np.full(n, np.inf)
    for i in range(1, k):
        dist = ((points - centroids[i - 1]) ** 2).sum(axis=1)
        closest = np.minimum(closest, dist)
        total = closest.sum()
        if total == 0:
            centroids[i] = points[rng.integers(n)]
            continue
        centroids[i] = points[rng.choice(n, p=closest / total)]
    return centroids


def kmeans(
    points: list | np.ndarray,
    k: int,
    seed: int,
    max_iters: int = 100,
    tol: float = 1e-6,
) -> ClusterModel:
    """Lloyd's algorithm with k-means++ initialization.

    The within-cluster SSE is asserted non-increasing across iterations;
    a cluster that empties is reseeded at the point farthest from its
    assigned centroid.
    """
    points = np.asarray(points, dtype=float)
    distinct = len(np.unique(points, axis=0))
    if k < 1 or k > distinct:
        raise InvalidKError(f"k={k} but only {distinct} distinct points")
    rng = np.random.default_rng(seed)
    centroids = _kmeans_pp_init(points, k, rng)
    previous_sse = math.inf
    labels = np.zeros(len(points), dtype=int)
    sse = 0.0
    for iteration in range(max_iters):
        dists = ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        labels = dists.argmin(axis=1)
        # repair empty clusters before the update step
        for cluster_id in range(k):
            if not (labels == cluster_id).any():
                farthest = dists[np.arange(len(points)), labels].argmax()
                centroids[cluster_id] = points[farthest]
                labels[farthest] = cluster_id
                dists[farthest] = ((points[farthest] - centroids) ** 2).sum(axis=1)
        sse = float(dists[np.arange(len(points)), labels].sum())
        assert sse <= previous_sse + 1e-9, "SSE increased during Lloyd iteration"
        previous_sse = sse
        new_centroids = np.vstack(
            [points[labels == cluster_id].mean(axis=0) for cluster_id in range(k)]
        )
        shift = float(np.abs(new_centroids - centroids).max())
        centroids = new_centroids
        if shift < tol:
            break
    # final assignment against the converged centroids
    dists = ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    labels = dists.argmin(axis=1)
    sse = float(dists[np.arange(len(points)), labels].sum())
    return ClusterModel(k=k, centroids=centroids, labels=labels, sse=sse,
                        n_iter=iteration + 1)


_ALPHA_ONLY = re.compile(r"[^a-z]")


def build_profiles(
    doc: PreprocessedDoc,
    freq_store: FrequencyStore,
    syllable_counter=count_syllables_rule,
) -> list[WordProfile]:
    """One profile per unique content lemma: syllable count plus
    log10(frequency + 1)."""
    profiles = []
    for lemma in doc.content_words:
        countable = _ALPHA_ONLY.sub("", lemma.lower())
        if not countable:
            continue
        sentence_index, token_index = doc.content_words[lemma][0]
        surface = doc.token_at(sentence_index, token_index).normalized
        syllables = syllable_counter(countable)
        frequency = lookup_lemma(freq_store, lemma, surface)
        profiles.append(
            WordProfile(
                lemma=lemma,
                syllables=syllables,
                frequency=frequency,
                features_raw=(float(syllables), math.log10(frequency + 1)),
            )
        )
    return profiles


def normalize_profiles(
    profiles: list[WordProfile], mode: str = "zscore"
) -> NormalizationParams:
    """Fill in features_z for every profile; a degenerate feature column is
    zeroed out and clustering proceeds on the remaining one."""
    matrix = np.array([p.features_raw for p in profiles], dtype=float)
    mus, sigmas, mins, maxs = [], [], [], []
    normalized = np.zeros_like(matrix)
    for col in range(matrix.shape[1]):
        values = list(matrix[:, col])
        mins.append(float(matrix[:, col].min()))
        maxs.append(float(matrix[:, col].max()))
        try:
            if mode == "zscore":
                z, params = zscore_normalize(values)
                mus.append(params.mu[0])
                sigmas.append(params.sigma[0])
            elif mode == "minmax":
                z = minmax_normalize(values)
                mus.append(0.0)
                sigmas.append(0.0)
            else:
                raise ValueError(f"unknown normalization mode: {mode}")
            normalized[:, col] = z
        except DegenerateFeatureError:
            mus.append(float(matrix[:, col].mean()))
            sigmas.append(0.0)
            normalized[:, col] = 0.0
    for i, profile in enumerate(profiles):
        profile.features_z = (float(normalized[i, 0]), float(normalized[i, 1]))
    return NormalizationParams(
        mu=tuple(mus), sigma=tuple(sigmas), min=tuple(mins), max=tuple(maxs)
    )


def rank_clusters(model: ClusterModel) -> list[int]:
    """Cluster ids hardest first: by centroid score s = z_syllables -
    z_logfreq descending, ties by id ascending."""
    scores = model.centroids[:, 0] - model.centroids[:, 1]
    return sorted(range(model.k), key=lambda c: (-scores[c], c))


def fit_cluster_model(
    profiles: list[WordProfile],
    k: int,
    seed: int,
    mode: str = "zscore",
) -> tuple[ClusterModel, NormalizationParams]:
    """Normalize profiles, run K-means, and attach lemma assignments and the
    difficulty ranking."""
    params = normalize_profiles(profiles, mode=mode)
    points = np.array([p.features_z for p in profiles], dtype=float)
    model = kmeans(points, k, seed)
    for profile, label in zip(profiles, model.labels):
        profile.cluster = int(label)
        model.assignments[profile.lemma] = int(label)
    model.difficulty_rank = rank_clusters(model)
    return model, params


def cluster_report(
    model: ClusterModel,
    profiles: list[WordProfile],
    params: NormalizationParams,
) -> dict:
    """JSON-ready report: centroids in raw and normalized space, members,
    and the difficulty ranking."""
    members: dict[int, list[str]] = {c: [] for c in range(model.k)}
    for profile in profiles:
        members[profile.cluster].append(profile.lemma)
    clusters = []
    for cluster_id in range(model.k):
        z = model.centroids[cluster_id]
        raw = [z[i] * params.sigma[i] + params.mu[i] for i in range(len(z))]
        clusters.append(
            {
                "id": cluster_id,
                "centroid_z": [float(v) for v in z],
                "centroid_raw": {
                    "syllables": float(raw[0]),
                    "log10_frequency": float(raw[1]),
                },
                "members": sorted(members[cluster_id]),
            }
        )
    return {
        "k": model.k,
        "sse": model.sse,
        "difficulty_rank": model.difficulty_rank,
        "clusters": clusters,
    }
