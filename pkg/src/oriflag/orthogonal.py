"""Haar-distributed sampling of SO(n) and the bi-invariant geodesic distance.

A random Gaussian matrix is orthogonalized (Householder QR with the sign of
the R diagonal folded into Q, or literal modified Gram-Schmidt on request) and
the determinant is fixed to +1 by swapping the first two rows. The geodesic
distance between rotations A and B is ``sqrt(0.5 * sum |log mu_k|^2)`` over
the eigenvalues ``mu_k`` of ``A B^T``, equivalently the root-sum-square of the
principal rotation angles of ``A B^T``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur

ORTHOGONALITY_TOL = 1e-12
DETERMINANT_TOL = 1e-10

# Subdiagonal entries of the real Schur form below this are treated as zero
# (the corresponding rotation angle is indistinguishable from 0 or pi).
_SCHUR_BLOCK_TOL = 1e-12

# Householder QR on an n x n standard Gaussian is rank deficient only if the
# draw is degenerate; diagonal entries of R below this trigger a resample.
_RANK_TOL = 1e-12

_MAX_RESAMPLE = 100


class Rotation:
    """An n x n real special orthogonal matrix, validated at construction."""

    __slots__ = ("matrix",)

    def __init__(self, matrix) -> None:
        m = np.array(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"rotation matrix must be square, got shape {m.shape}")
        n = m.shape[0]
        defect = np.abs(m.T @ m - np.eye(n)).max()
        if defect > ORTHOGONALITY_TOL:
            raise ValueError(f"matrix is not orthogonal: max |Q^T Q - I| = {defect:.3e}")
        det = float(np.linalg.det(m))
        if abs(det - 1.0) > DETERMINANT_TOL:
            raise ValueError(f"matrix has determinant {det!r}, expected +1")
        m.setflags(write=False)
        self.matrix = m

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, n: int) -> "Rotation":
        return cls(np.eye(n))

    def transpose(self) -> "Rotation":
        return Rotation(self.matrix.T)

    inverse = transpose

    def __matmul__(self, other: "Rotation") -> "Rotation":
        if not isinstance(other, Rotation):
            return NotImplemented
        return Rotation(self.matrix @ other.matrix)

    def to_lists(self) -> list[list[float]]:
        """Row-major nested lists, the JSON serialization of a rotation."""
        return self.matrix.tolist()

    def __repr__(self) -> str:
        return f"Rotation({self.matrix.tolist()})"


@dataclass(frozen=True)
class RngStream:
    """A named, reproducible random stream.

    The same (seed, stream) pair always produces the same sample sequence;
    distinct stream ids give statistically independent sequences. Wraps
    numpy's SeedSequence spawn-key mechanism.
    """

    seed: int
    stream: int = 0

    def __post_init__(self) -> None:
        if self.seed < 0 or self.stream < 0:
            raise ValueError("seed and stream id must be nonnegative")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        return np.random.default_rng(ss)


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")


def _modified_gram_schmidt(a: np.ndarray) -> np.ndarray | None:
    """Orthonormalize the columns of ``a`` in place order; None if degenerate."""
    q = a.astype(float).copy()
    for j in range(q.shape[1]):
        for i in range(j):
            q[:, j] -= (q[:, i] @ q[:, j]) * q[:, i]
        norm = np.linalg.norm(q[:, j])
        if norm < _RANK_TOL:
            return None
        q[:, j] /= norm
    return q


def random_special_orthogonal(n: int, rng, *, gram_schmidt: bool = False) -> Rotation:
    """Draw a Haar-distributed rotation in SO(n).

    Orthogonalizes a standard Gaussian n x n matrix; if the result has
    determinant -1 its first two rows are swapped, which preserves the Haar
    property. ``gram_schmidt=True`` uses literal modified Gram-Schmidt instead
    of Householder QR (same distribution, less orthogonal at large n).
    Degenerate Gaussian draws are resampled, never silently accepted.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if n == 1:
        return Rotation([[1.0]])
    gen = _as_generator(rng)
    for _ in range(_MAX_RESAMPLE):
        a = gen.standard_normal((n, n))
        if gram_schmidt:
            q = _modified_gram_schmidt(a)
            if q is None:
                continue
        else:
            q, r = np.linalg.qr(a)
            d = np.diagonal(r)
            if np.abs(d).min() < _RANK_TOL:
                continue
            q = q * np.sign(d)
        if np.linalg.det(q) < 0:
            q[[0, 1]] = q[[1, 0]]
        return Rotation(q)
    raise RuntimeError("persistent rank-deficient Gaussian draws; rng is broken")


def sample_rotation_matrices(n: int, count: int, rng) -> np.ndarray:
    """Vectorized Haar sampling: a (count, n, n) stack of SO(n) matrices.

    Same construction as :func:`random_special_orthogonal` (QR route), batched
    for Monte Carlo use.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if count < 0:
        raise ValueError("count must be nonnegative")
    gen = _as_generator(rng)
    if n == 1:
        return np.ones((count, 1, 1))
    q = np.empty((count, n, n))
    todo = np.arange(count)
    tries = 0
    while todo.size:
        tries += 1
        if tries > _MAX_RESAMPLE:
            raise RuntimeError("persistent rank-deficient Gaussian draws; rng is broken")
        a = gen.standard_normal((todo.size, n, n))
        qi, ri = np.linalg.qr(a)
        d = np.diagonal(ri, axis1=1, axis2=2)
        qi = qi * np.sign(d)[:, None, :]
        flip = _batch_det(qi) < 0
        qi[flip] = qi[flip][:, _swap_first_two(n), :]
        ok = np.abs(d).min(axis=1) >= _RANK_TOL
        q[todo[ok]] = qi[ok]
        todo = todo[~ok]
    return q


def _swap_first_two(n: int) -> np.ndarray:
    idx = np.arange(n)
    idx[0], idx[1] = 1, 0
    return idx


def _batch_det(q: np.ndarray) -> np.ndarray:
    n = q.shape[-1]
    if n == 2:
        return q[:, 0, 0] * q[:, 1, 1] - q[:, 0, 1] * q[:, 1, 0]
    if n == 3:
        return np.einsum("ni,ni->n", q[:, 0], np.cross(q[:, 1], q[:, 2]))
    return np.linalg.det(q)


def _matrix_of(a) -> np.ndarray:
    if isinstance(a, Rotation):
        return a.matrix
    return np.asarray(a, dtype=float)


def rotation_angles_matrix(m: np.ndarray) -> np.ndarray:
    """Principal rotation angles of a special orthogonal matrix.

    Returns the floor(n/2) angles in [0, pi], sorted descending, extracted
    from the 2x2 blocks of the real Schur form. Eigenvalue -1 pairs contribute
    an angle of pi; the remaining +1 eigenvalues contribute zeros.
    """
    n = m.shape[0]
    if n == 1:
        return np.zeros(0)
    t, _ = schur(m, output="real")
    angles = []
    minus_ones = 0
    i = 0
    while i < n:
        if i + 1 < n and abs(t[i + 1, i]) > _SCHUR_BLOCK_TOL:
            angles.append(math.atan2(abs(t[i, i + 1]), t[i, i]))
            i += 2
        else:
            if t[i, i] < 0.0:
                minus_ones += 1
            i += 1
    if minus_ones % 2:
        raise ArithmeticError("odd multiplicity of eigenvalue -1; input is not in SO(n)")
    angles.extend([math.pi] * (minus_ones // 2))
    angles.extend([0.0] * (n // 2 - len(angles)))
    out = np.array(angles)
    out[::-1].sort()
    return out


def rotation_angles(a) -> np.ndarray:
    """Principal rotation angles of ``a`` (Rotation or matrix), see above."""
    return rotation_angles_matrix(_matrix_of(a))


def geodesic_distance(a, b) -> float:
    """Riemannian geodesic distance on SO(n) between rotations ``a`` and ``b``.

    Depends only on the eigenvalues of ``A B^T``: with principal angles psi_j
    of that product, the distance is sqrt(sum psi_j^2).
    """
    ma, mb = _matrix_of(a), _matrix_of(b)
    if ma.shape != mb.shape:
        raise ValueError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    angles = rotation_angles_matrix(ma @ mb.T)
    return float(math.sqrt(np.sum(angles * angles)))
