"""Vector algebra of flat 4-space with metric signature (-, -, +, +).

Points and tangent vectors share the ``Vector4`` type.  The bilinear form
has index 2, so nonzero vectors split into spacelike / timelike / null
causal classes, and the level sets ``<x-m, x-m> = +-r^2`` play the role of
spheres (a pseudo-sphere for ``+r^2``, a pseudo-hyperbolic space for
``-r^2``, whose ``x1 > 0`` sheet is the hyperbolic-space slice).

Everything here is a pure function of immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "METRIC_DIAGONAL",
    "Vector4",
    "CausalCharacter",
    "QuadricTag",
    "QuadricMembership",
    "inner",
    "classify",
    "cross",
    "quadric_membership",
]

#: Diagonal of the metric in the standard rectangular coordinates.
METRIC_DIAGONAL = (-1.0, -1.0, 1.0, 1.0)

_COMPONENT_NAMES = ("x1", "x2", "x3", "x4")


@dataclass(frozen=True)
class Vector4:
    """A point or tangent vector, with finite components enforced."""

    x1: float
    x2: float
    x3: float
    x4: float

    def __post_init__(self):
        for name in _COMPONENT_NAMES:
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ValueError(f"component {name} must be finite, got {value!r}")

    @staticmethod
    def zero() -> "Vector4":
        return Vector4(0.0, 0.0, 0.0, 0.0)

    def components(self) -> tuple[float, float, float, float]:
        return (self.x1, self.x2, self.x3, self.x4)

    def is_zero(self) -> bool:
        return self.x1 == 0.0 and self.x2 == 0.0 and self.x3 == 0.0 and self.x4 == 0.0

    def __add__(self, other: "Vector4") -> "Vector4":
        return Vector4(self.x1 + other.x1, self.x2 + other.x2,
                       self.x3 + other.x3, self.x4 + other.x4)

    def __sub__(self, other: "Vector4") -> "Vector4":
        return Vector4(self.x1 - other.x1, self.x2 - other.x2,
                       self.x3 - other.x3, self.x4 - other.x4)

    def __neg__(self) -> "Vector4":
        return Vector4(-self.x1, -self.x2, -self.x3, -self.x4)

    def __mul__(self, scalar: float) -> "Vector4":
        return Vector4(self.x1 * scalar, self.x2 * scalar,
                       self.x3 * scalar, self.x4 * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "Vector4":
        return self * (1.0 / scalar)


class CausalCharacter(Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    NULL = "null"


class QuadricTag(Enum):
    PSEUDO_SPHERE = "pseudo_sphere"
    PSEUDO_HYPERBOLIC = "pseudo_hyperbolic"
    HYPERBOLIC_SPACE = "hyperbolic_space"
    NONE = "none"


@dataclass(frozen=True)
class QuadricMembership:
    """Result of testing a point against the radius-r quadrics."""

    tag: QuadricTag
    radius: float | None

    @property
    def is_pseudo_hyperbolic(self) -> bool:
        # The x1 > 0 sheet is contained in the full pseudo-hyperbolic quadric.
        return self.tag in (QuadricTag.PSEUDO_HYPERBOLIC, QuadricTag.HYPERBOLIC_SPACE)


def inner(v: Vector4, w: Vector4) -> float:
    """Index-2 inner product: -v1*w1 - v2*w2 + v3*w3 + v4*w4."""
    return math.fsum((-v.x1 * w.x1, -v.x2 * w.x2, v.x3 * w.x3, v.x4 * w.x4))


def classify(v: Vector4, tol: float = 1e-12) -> CausalCharacter:
    """Causal class of ``v`` with a null band of half-width ``tol``.

    The zero vector counts as spacelike; null requires a nonzero vector.
    """
    if tol < 0:
        raise ValueError("tol must be >= 0")
    if v.is_zero():
        return CausalCharacter.SPACELIKE
    q = inner(v, v)
    if q < -tol:
        return CausalCharacter.TIMELIKE
    if q > tol:
        return CausalCharacter.SPACELIKE
    return CausalCharacter.NULL


def _det3(row0, row1, row2) -> float:
    (a, b, c), (d, e, f), (g, h, i) = row0, row1, row2
    return math.fsum((a * e * i, -a * f * h, -b * d * i, b * f * g, c * d * h, -c * e * g))


def cross(x: Vector4, y: Vector4, z: Vector4) -> Vector4:
    """Ternary cross product adapted to the (-,-,+,+) metric.

    Cofactor expansion of the formal determinant whose first row carries
    the basis vectors weighted by the metric signs (-e1, -e2, e3, e4); the
    result is metric-orthogonal to each argument and totally antisymmetric.
    """
    rows = [x.components(), y.components(), z.components()]

    def minor(col: int) -> float:
        reduced = [tuple(r[k] for k in range(4) if k != col) for r in rows]
        return _det3(*reduced)

    return Vector4(-minor(0), minor(1), minor(2), -minor(3))


def quadric_membership(p: Vector4, center: Vector4, radius: float,
                       tol: float = 1e-12) -> QuadricMembership:
    """Classify ``p`` against the radius-``radius`` quadrics centred at ``center``.

    ``pseudo_sphere`` when ``<p-m, p-m>`` is within ``tol`` of ``+r^2``,
    ``pseudo_hyperbolic`` when within ``tol`` of ``-r^2``; the latter is
    reported as ``hyperbolic_space`` when additionally ``p.x1 > 0`` (the
    most specific tag wins).
    """
    if radius <= 0:
        raise ValueError("radius must be > 0")
    if tol < 0:
        raise ValueError("tol must be >= 0")
    d = p - center
    q = inner(d, d)
    r2 = radius * radius
    if abs(q - r2) <= tol:
        return QuadricMembership(QuadricTag.PSEUDO_SPHERE, radius)
    if abs(q + r2) <= tol:
        tag = QuadricTag.HYPERBOLIC_SPACE if p.x1 > 0 else QuadricTag.PSEUDO_HYPERBOLIC
        return QuadricMembership(tag, radius)
    return QuadricMembership(QuadricTag.NONE, None)
