"""Monte Carlo estimation of expected distances between random points.

Every supported space is homogeneous, so the expected distance between two
random points equals the expected distance from one random point to a fixed
base point (the identity coset, or the north pole on the sphere); that single
random point is what gets sampled, one rotation or unit vector per trial. On
quotients by a finite isotropy group the distance is the minimum over the
orbit of the sample. Estimates carry a standard error from a streaming
(count, mean, M2) aggregation, and work is split into per-worker substreams
whose merge is independent of execution order, so a fixed (seed, workers, N)
reproduces the estimate bit for bit.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .flagspec import FiniteIsotropy
from .orthogonal import (
    RngStream,
    _as_generator,
    _matrix_of,
    geodesic_distance,
    rotation_angles_matrix,
    sample_rotation_matrices,
)
from .spaces import Kernel, Space, classify

_BATCH = 1 << 17
_MIN_NORM = 1e-8


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo mean with its standard error and provenance."""

    mean: float
    stderr: float
    n_samples: int
    seed: int

    def __post_init__(self) -> None:
        if self.n_samples < 1:
            raise ValueError("an estimate needs at least one sample")
        if self.stderr < 0.0 or math.isnan(self.stderr):
            raise ValueError(f"invalid standard error {self.stderr!r}")


def quotient_distance(a, b, h: FiniteIsotropy) -> float:
    """Distance between the cosets of ``a`` and ``b`` modulo the isotropy ``h``.

    The minimum of geodesic_distance(a hj, b) over the group elements hj;
    symmetric and well-defined on cosets because the metric is bi-invariant
    and the group is closed under products and inverses.
    """
    ma, mb = _matrix_of(a), _matrix_of(b)
    if ma.shape != mb.shape or ma.shape[0] != h.n:
        raise ValueError(
            f"dimension mismatch: a {ma.shape}, b {mb.shape}, isotropy n={h.n}"
        )
    return min(geodesic_distance(ma @ e.matrix, mb) for e in h.elements)


def sphere_point(rng) -> np.ndarray:
    """A uniform random point on the unit 2-sphere (normalized Gaussian draw)."""
    gen = _as_generator(rng)
    while True:
        v = gen.standard_normal(3)
        norm = np.linalg.norm(v)
        if norm >= _MIN_NORM:
            return v / norm


def _unit_vectors(gen: np.random.Generator, count: int) -> np.ndarray:
    v = gen.standard_normal((count, 3))
    norms = np.linalg.norm(v, axis=1)
    while True:
        bad = norms < _MIN_NORM
        if not bad.any():
            break
        v[bad] = gen.standard_normal((int(bad.sum()), 3))
        norms[bad] = np.linalg.norm(v[bad], axis=1)
    return v / norms[:, None]


def _principal_angle_from_traces(traces: np.ndarray, n: int) -> np.ndarray:
    """Rotation angle of SO(2)/SO(3) matrices given their traces."""
    if n == 3:
        cos = (traces - 1.0) / 2.0
    else:
        cos = traces / 2.0
    return np.arccos(np.clip(cos, -1.0, 1.0))


def _orbit_signs(kern: Kernel) -> np.ndarray:
    if kern.isotropy is not None:
        return kern.isotropy.diagonal_signs()
    return np.ones((1, kern.n))


def _kernel_distances(kern: Kernel, gen: np.random.Generator, count: int, two_point: bool) -> np.ndarray:
    """One batch of distance samples for a kernel; consumes ``gen`` sequentially."""
    if kern.kind == "point":
        return np.zeros(count)
    if kern.kind in ("sphere", "projective-plane"):
        v = _unit_vectors(gen, count)
        cos = (_unit_vectors(gen, count) * v).sum(axis=1) if two_point else v[:, 2]
        if kern.kind == "projective-plane":
            cos = np.abs(cos)
        return np.arccos(np.clip(cos, -1.0, 1.0))
    # Rotation-group kinds: "son" and "finite-quotient".
    n = kern.n
    if n == 1:
        return np.zeros(count)
    a = sample_rotation_matrices(n, count, gen)
    b = sample_rotation_matrices(n, count, gen) if two_point else None
    signs = _orbit_signs(kern)
    if n in (2, 3):
        if b is None:
            diag = np.diagonal(a, axis1=1, axis2=2)
        else:
            diag = np.einsum("mik,mik->mk", a, b)
        return _principal_angle_from_traces(diag @ signs.T, n).min(axis=1)
    # General n: per-sample Schur decompositions (slow, small-N use only).
    out = np.empty(count)
    for i in range(count):
        target = np.eye(n) if b is None else b[i]
        best = math.inf
        for s in signs:
            angles = rotation_angles_matrix((a[i] * s) @ target.T)
            best = min(best, math.sqrt(float(np.sum(angles * angles))))
        out[i] = best
    return out


def sample_distances(space: Space, count: int, rng, *, two_point: bool = False) -> np.ndarray:
    """Raw distance samples for a space, one random draw (or pair) per entry."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    kern = classify(space)
    gen = _as_generator(rng)
    chunks = []
    done = 0
    while done < count:
        m = min(_BATCH, count - done)
        chunks.append(_kernel_distances(kern, gen, m, two_point))
        done += m
    return np.concatenate(chunks) if chunks else np.zeros(0)


def _batch_stats(x: np.ndarray) -> tuple[int, float, float]:
    mean = float(x.mean())
    return len(x), mean, float(((x - mean) ** 2).sum())


def _merge_stats(a: tuple[int, float, float], b: tuple[int, float, float]) -> tuple[int, float, float]:
    na, ma, m2a = a
    nb, mb, m2b = b
    if na == 0:
        return b
    if nb == 0:
        return a
    n = na + nb
    delta = mb - ma
    return n, ma + delta * (nb / n), m2a + m2b + delta * delta * (na * (nb / n))


def _chunk_stats(kern: Kernel, seed: int, chunk: int, size: int, two_point: bool) -> tuple[int, float, float]:
    gen = RngStream(seed, chunk).generator()
    stats = (0, 0.0, 0.0)
    done = 0
    while done < size:
        m = min(_BATCH, size - done)
        stats = _merge_stats(stats, _batch_stats(_kernel_distances(kern, gen, m, two_point)))
        done += m
    return stats


def _chunk_sizes(n: int, workers: int) -> list[int]:
    base, extra = divmod(n, workers)
    return [base + (1 if i < extra else 0) for i in range(workers)]


def estimate_expected_distance(
    space: Space,
    n_samples: int,
    *,
    seed: int = 0,
    workers: int = 1,
    two_point: bool = False,
) -> Estimate:
    """Estimate the expected distance between two random points of ``space``.

    By default each trial draws a single random point and measures its
    distance to the base point, which homogeneity makes equivalent to the
    two-point expectation; ``two_point=True`` draws both points (twice the
    work, same mean). ``n_samples`` is split into ``workers`` contiguous
    chunks, each on its own substream of ``seed``, and merged in chunk order,
    so the result is a pure function of (space, n_samples, seed, workers).
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    kern = classify(space)
    sizes = _chunk_sizes(n_samples, workers)
    if workers == 1:
        parts = [_chunk_stats(kern, seed, 0, n_samples, two_point)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_chunk_stats, kern, seed, i, size, two_point)
                for i, size in enumerate(sizes)
            ]
            parts = [f.result() for f in futures]
    count, mean, m2 = (0, 0.0, 0.0)
    for part in parts:
        count, mean, m2 = _merge_stats((count, mean, m2), part)
    stderr = math.sqrt(m2 / (count - 1) / count) if count > 1 else 0.0
    return Estimate(mean=mean, stderr=stderr, n_samples=count, seed=seed)
