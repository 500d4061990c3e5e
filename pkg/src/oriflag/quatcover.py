"""The double cover of SO(3) by unit quaternions.

Quaternions are written q = x + y i + z j + w k with real part x, matching
the Cartesian coordinates (x, y, z, w) on the unit 3-sphere. Conjugation
q u q^-1 rotates the purely imaginary quaternion u, and q, -q induce the same
rotation, so the covering map scales distances by exactly 2. Two coordinate
systems on the 3-sphere are provided: hyperspherical angles and join
coordinates (the 3-sphere as a join of two circles).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .flagspec import FlagSpec, isotropy_group
from .orthogonal import Rotation

UNIT_TOL = 1e-12


@dataclass(frozen=True)
class UnitQuaternion:
    """A point of the unit 3-sphere: x + y i + z j + w k with real part x."""

    x: float
    y: float
    z: float
    w: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "z", float(self.z))
        object.__setattr__(self, "w", float(self.w))
        norm2 = self.x**2 + self.y**2 + self.z**2 + self.w**2
        if abs(norm2 - 1.0) > 2 * UNIT_TOL:
            raise ValueError(f"not a unit quaternion: |q|^2 = {norm2!r}")

    @classmethod
    def identity(cls) -> "UnitQuaternion":
        return cls(1.0, 0.0, 0.0, 0.0)

    @classmethod
    def from_axis_angle(cls, axis, angle: float) -> "UnitQuaternion":
        """The lift cos(angle/2) + sin(angle/2) n of rotation by ``angle`` about ``n``."""
        n = np.asarray(axis, dtype=float)
        norm = np.linalg.norm(n)
        if abs(norm - 1.0) > UNIT_TOL:
            raise ValueError("axis must be a unit 3-vector")
        h = 0.5 * angle
        s = math.sin(h)
        return cls(math.cos(h), s * n[0], s * n[1], s * n[2])

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z, self.w])

    @property
    def imaginary(self) -> np.ndarray:
        return np.array([self.y, self.z, self.w])

    def conjugate(self) -> "UnitQuaternion":
        return UnitQuaternion(self.x, -self.y, -self.z, -self.w)

    def __neg__(self) -> "UnitQuaternion":
        return UnitQuaternion(-self.x, -self.y, -self.z, -self.w)

    def __mul__(self, other: "UnitQuaternion") -> "UnitQuaternion":
        if not isinstance(other, UnitQuaternion):
            return NotImplemented
        a, b, c, d = self.x, self.y, self.z, self.w
        e, f, g, h = other.x, other.y, other.z, other.w
        return UnitQuaternion(
            a * e - b * f - c * g - d * h,
            a * f + b * e + c * h - d * g,
            a * g - b * h + c * e + d * f,
            a * h + b * g - c * f + d * e,
        )


ONE = UnitQuaternion(1.0, 0.0, 0.0, 0.0)
I = UnitQuaternion(0.0, 1.0, 0.0, 0.0)
J = UnitQuaternion(0.0, 0.0, 1.0, 0.0)
K = UnitQuaternion(0.0, 0.0, 0.0, 1.0)


def _mul_raw(p: tuple, q: tuple) -> tuple:
    """Hamilton product on raw 4-tuples, no unit-norm validation."""
    a, b, c, d = p
    e, f, g, h = q
    return (
        a * e - b * f - c * g - d * h,
        a * f + b * e + c * h - d * g,
        a * g - b * h + c * e + d * f,
        a * h + b * g - c * f + d * e,
    )


def rotate_vector(q: UnitQuaternion, u) -> np.ndarray:
    """Rotate the unit 3-vector ``u`` by the rotation covered by ``q``.

    Computed as the quaternion conjugation q u q^-1; for q = cos t + sin t n
    this is rotation of u about the axis n by angle 2t.
    """
    v = np.asarray(u, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    if abs(v @ v - 1.0) > 2 * UNIT_TOL:
        raise ValueError("vector must have unit norm")
    p = (q.x, q.y, q.z, q.w)
    out = _mul_raw(_mul_raw(p, (0.0, v[0], v[1], v[2])), (q.x, -q.y, -q.z, -q.w))
    return np.array(out[1:])


def quaternion_to_rotation(q: UnitQuaternion) -> Rotation:
    """The 3x3 rotation covered by ``q``; columns are the rotated basis vectors.

    Exactly even in q: the matrix for -q is computed identically.
    """
    cols = [rotate_vector(q, e) for e in np.eye(3)]
    return Rotation(np.column_stack(cols))


def rotation_to_quaternion(r: Rotation) -> UnitQuaternion:
    """The lift of ``r`` with nonnegative real part.

    Uses the largest of the four Shepperd branch discriminants to avoid
    cancellation near rotation angle pi. When the real part is zero (angle
    exactly pi, where both lifts have x = 0) the representative whose first
    nonzero imaginary coordinate is positive is returned.
    """
    if not isinstance(r, Rotation) or r.n != 3:
        raise ValueError("expected a 3x3 Rotation")
    m = r.matrix
    t = m[0, 0] + m[1, 1] + m[2, 2]
    branch = int(np.argmax([t, m[0, 0], m[1, 1], m[2, 2]]))
    if branch == 0:
        s = 2.0 * math.sqrt(1.0 + t)
        q = (0.25 * s, (m[2, 1] - m[1, 2]) / s, (m[0, 2] - m[2, 0]) / s, (m[1, 0] - m[0, 1]) / s)
    elif branch == 1:
        s = 2.0 * math.sqrt(1.0 + m[0, 0] - m[1, 1] - m[2, 2])
        q = ((m[2, 1] - m[1, 2]) / s, 0.25 * s, (m[0, 1] + m[1, 0]) / s, (m[0, 2] + m[2, 0]) / s)
    elif branch == 2:
        s = 2.0 * math.sqrt(1.0 + m[1, 1] - m[0, 0] - m[2, 2])
        q = ((m[0, 2] - m[2, 0]) / s, (m[0, 1] + m[1, 0]) / s, 0.25 * s, (m[1, 2] + m[2, 1]) / s)
    else:
        s = 2.0 * math.sqrt(1.0 + m[2, 2] - m[0, 0] - m[1, 1])
        q = ((m[1, 0] - m[0, 1]) / s, (m[0, 2] + m[2, 0]) / s, (m[1, 2] + m[2, 1]) / s, 0.25 * s)
    norm = math.sqrt(sum(c * c for c in q))
    q = tuple(c / norm for c in q)
    if q[0] < 0.0:
        q = tuple(-c for c in q)
    elif q[0] == 0.0:
        for comp in q[1:]:
            if comp > 0.0:
                break
            if comp < 0.0:
                q = tuple(-c for c in q)
                break
    return UnitQuaternion(*q)


def sphere_distance(p: UnitQuaternion, q: UnitQuaternion) -> float:
    """Great-circle distance on the unit 3-sphere, in [0, pi]."""
    dot = p.x * q.x + p.y * q.y + p.z * q.z + p.w * q.w
    return math.acos(min(1.0, max(-1.0, dot)))


def lifted_orbit(spec: FlagSpec, q: UnitQuaternion) -> frozenset[UnitQuaternion]:
    """Preimage on the 3-sphere of the isotropy coset through ``q``'s rotation.

    For lambda = (1,1,1) the isotropy group SG is finite and the coset of
    A = quaternion_to_rotation(q) is {A h : h in SG}; its full preimage under
    the double cover is {+-(q hq) : hq a lift of h}. The trivial partition
    (full flag) yields the eight vertices of a rotated regular 16-cell.
    """
    if spec.lam.parts != (1, 1, 1):
        raise ValueError(f"lifted orbits require lambda = (1,1,1), got ({spec.lam})")
    lifts = [rotation_to_quaternion(h) for h in isotropy_group(spec).elements]
    orbit = set()
    for h in lifts:
        qh = q * h
        orbit.add(qh)
        orbit.add(-qh)
    return frozenset(orbit)


@dataclass(frozen=True)
class Hyperspherical:
    """Hyperspherical angles (phi1, phi2, phi3) on the unit 3-sphere.

    Cartesian coordinates are x = cos phi1, y = sin phi1 cos phi2,
    z = sin phi1 sin phi2 cos phi3, w = sin phi1 sin phi2 sin phi3, with the
    volume element sin^2 phi1 sin phi2. The x >= 0 half (phi1 <= pi/2)
    parametrizes SO(3), where the induced volume element is 8 sin^2 phi1 sin phi2.
    """

    phi1: float
    phi2: float
    phi3: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.phi1 <= math.pi and 0.0 <= self.phi2 <= math.pi):
            raise ValueError(f"phi1, phi2 must lie in [0, pi]: {self}")
        if not (0.0 <= self.phi3 < 2.0 * math.pi):
            raise ValueError(f"phi3 must lie in [0, 2*pi): {self}")


@dataclass(frozen=True)
class JoinCoords:
    """Join coordinates (alpha, theta1, theta2) on the unit 3-sphere.

    Cartesian coordinates are x = cos alpha cos theta1, y = cos alpha sin theta1,
    z = sin alpha cos theta2, w = sin alpha sin theta2; the volume element is
    cos alpha sin alpha. Level sets of alpha are tori collapsing to circles at
    alpha = 0 and alpha = pi/2. Angles are normalized to (-pi, pi], which makes
    the region x >= |y| the contiguous band |theta1| <= pi/4.
    """

    alpha: float
    theta1: float
    theta2: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 0.5 * math.pi:
            raise ValueError(f"alpha must lie in [0, pi/2]: {self}")
        if not (-math.pi < self.theta1 <= math.pi and -math.pi < self.theta2 <= math.pi):
            raise ValueError(f"theta1, theta2 must lie in (-pi, pi]: {self}")


def hyperspherical_to_cartesian(h: Hyperspherical) -> UnitQuaternion:
    s1, s2 = math.sin(h.phi1), math.sin(h.phi2)
    return UnitQuaternion(
        math.cos(h.phi1),
        s1 * math.cos(h.phi2),
        s1 * s2 * math.cos(h.phi3),
        s1 * s2 * math.sin(h.phi3),
    )


def cartesian_to_hyperspherical(q: UnitQuaternion) -> Hyperspherical:
    phi1 = math.acos(min(1.0, max(-1.0, q.x)))
    r = math.hypot(q.z, q.w)
    phi2 = math.atan2(r, q.y)
    phi3 = math.atan2(q.w, q.z) % (2.0 * math.pi)
    if phi3 >= 2.0 * math.pi:  # float mod can round a tiny negative up to 2*pi
        phi3 = 0.0
    return Hyperspherical(phi1, phi2, phi3)


def join_to_cartesian(j: JoinCoords) -> UnitQuaternion:
    ca, sa = math.cos(j.alpha), math.sin(j.alpha)
    return UnitQuaternion(
        ca * math.cos(j.theta1),
        ca * math.sin(j.theta1),
        sa * math.cos(j.theta2),
        sa * math.sin(j.theta2),
    )


def cartesian_to_join(q: UnitQuaternion) -> JoinCoords:
    alpha = math.atan2(math.hypot(q.z, q.w), math.hypot(q.x, q.y))
    theta1 = math.atan2(q.y, q.x)
    theta2 = math.atan2(q.w, q.z)
    if theta1 <= -math.pi:
        theta1 = math.pi
    if theta2 <= -math.pi:
        theta2 = math.pi
    return JoinCoords(alpha, theta1, theta2)
