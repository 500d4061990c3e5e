"""Space identifiers: which manifold an expectation or volume refers to.

A space is one of SO(n), a flag specification, the unit 2-sphere, or the real
projective plane. Flag specifications whose isotropy group is finite (all
parts of lambda equal to 1) are handled directly; the two-part lambdas of 3
reduce to the sphere and projective plane; a single-part lambda is a point.
Anything else has a continuous isotropy group with no distance machinery here
and is rejected as unsupported.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .flagspec import (
    FiniteIsotropy,
    FlagSpec,
    FlagSpecParseError,
    OrderedPartition,
    SetPartition,
    isotropy_group,
    parse_flagspec,
)


class UnsupportedSpaceError(ValueError):
    """The requested computation is not defined for this space."""


@dataclass(frozen=True)
class SpecialOrthogonal:
    """The rotation group SO(n) itself."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")


@dataclass(frozen=True)
class Sphere2:
    """The unit 2-sphere with great-circle distance."""


@dataclass(frozen=True)
class ProjectivePlane2:
    """The real projective plane, antipodal quotient of the unit 2-sphere."""


Space = SpecialOrthogonal | FlagSpec | Sphere2 | ProjectivePlane2

SPHERE2 = Sphere2()
PROJECTIVE_PLANE2 = ProjectivePlane2()


def _flag(parts, blocks) -> FlagSpec:
    return FlagSpec(OrderedPartition(tuple(parts)), SetPartition(tuple(tuple(b) for b in blocks)))


SPACE_ALIASES: dict[str, Space] = {
    "so3": _flag((1, 1, 1), ((1,), (2,), (3,))),
    "s2": _flag((1, 2), ((1,), (2,))),
    "rp2": _flag((1, 2), ((1, 2),)),
    "full-flag": _flag((1, 1, 1), ((1, 2, 3),)),
    "partial-flag-1": _flag((1, 1, 1), ((1,), (2, 3))),
    "partial-flag-2": _flag((1, 1, 1), ((2,), (1, 3))),
    "partial-flag-3": _flag((1, 1, 1), ((3,), (1, 2))),
    "trivial-flag": _flag((3,), ((1,),)),
}

_SON_RE = re.compile(r"^so(\d+)$")


def parse_space(text: str) -> Space:
    """Resolve a CLI space argument: alias, soN, or flag spec text."""
    key = text.strip().lower()
    if key in SPACE_ALIASES:
        return SPACE_ALIASES[key]
    m = _SON_RE.match(key)
    if m:
        return SpecialOrthogonal(int(m.group(1)))
    return parse_flagspec(text)


def space_label(space: Space) -> str:
    """Short human-readable name, preferring the CLI alias when one exists."""
    for name, value in SPACE_ALIASES.items():
        if value == space:
            return name
    if isinstance(space, SpecialOrthogonal):
        return f"so{space.n}"
    if isinstance(space, Sphere2):
        return "s2"
    if isinstance(space, ProjectivePlane2):
        return "rp2"
    return space.to_text()


def space_json(space: Space):
    """JSON-serializable description of a space."""
    if isinstance(space, FlagSpec):
        return space.to_json_dict()
    return space_label(space)


@dataclass(frozen=True)
class Kernel:
    """How to sample and measure a space.

    ``kind`` is one of "point", "son", "finite-quotient", "sphere",
    "projective-plane". For the rotation-group kinds, ``n`` is the matrix
    dimension and ``isotropy`` the finite isotropy group (trivial for "son").
    """

    kind: str
    n: int = 0
    isotropy: FiniteIsotropy | None = None


def classify(space: Space) -> Kernel:
    """Map a space to its sampling/distance kernel, or raise if unsupported."""
    if isinstance(space, SpecialOrthogonal):
        return Kernel("son", n=space.n)
    if isinstance(space, Sphere2):
        return Kernel("sphere")
    if isinstance(space, ProjectivePlane2):
        return Kernel("projective-plane")
    if isinstance(space, FlagSpec):
        parts = space.lam.parts
        if len(parts) == 1:
            return Kernel("point", n=space.n)
        if all(p == 1 for p in parts):
            iso = isotropy_group(space)
            if iso.order == 1:
                return Kernel("son", n=space.n)
            return Kernel("finite-quotient", n=space.n, isotropy=iso)
        if sorted(parts) == [1, 2]:
            if space.p.is_complete:
                return Kernel("sphere")
            return Kernel("projective-plane")
        raise UnsupportedSpaceError(
            f"no distance machinery for lambda = ({space.lam}) with partition {space.p}; "
            "supported: lambda all ones, a single part, or the 3 = 1+2 sphere cases"
        )
    raise UnsupportedSpaceError(f"not a space: {space!r}")


__all__ = [
    "FlagSpecParseError",
    "Kernel",
    "PROJECTIVE_PLANE2",
    "ProjectivePlane2",
    "SPACE_ALIASES",
    "SPHERE2",
    "Space",
    "SpecialOrthogonal",
    "Sphere2",
    "UnsupportedSpaceError",
    "classify",
    "parse_space",
    "space_json",
    "space_label",
]
