"""One-parameter rotation groups and Killing fields of the ambient space.

Six coordinate-plane rotations preserve the (-,-,+,+) inner product: four
hyperbolic boosts mixing a negative slot with a positive one, and two
elliptic spins acting inside the definite planes (x1,x2) and (x3,x4).
The general linear Killing field is a six-parameter combination of these
generators; ``lie_residual`` evaluates the Lie derivative of the constant
metric along a linear field, which vanishes exactly on Killing fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .ambient import METRIC_DIAGONAL, Vector4

__all__ = [
    "Rotation",
    "KillingParams",
    "killing_field",
    "killing_matrix",
    "lie_residual",
    "rotation_matrix",
    "generator_matrix",
    "apply_matrix",
]

_G = np.diag(METRIC_DIAGONAL)


class Rotation(Enum):
    """The six coordinate-plane rotations, named by the slots they mix."""

    BOOST_13 = ("boost13", (0, 2), True)
    BOOST_14 = ("boost14", (0, 3), True)
    BOOST_23 = ("boost23", (1, 2), True)
    BOOST_24 = ("boost24", (1, 3), True)
    SPIN_12 = ("spin12", (0, 1), False)
    SPIN_34 = ("spin34", (2, 3), False)

    def __init__(self, label: str, plane: tuple[int, int], hyperbolic: bool):
        self.label = label
        self.plane = plane
        self.hyperbolic = hyperbolic

    @classmethod
    def from_label(cls, label: str) -> "Rotation":
        for member in cls:
            if member.label == label:
                return member
        raise ValueError(f"unknown rotation {label!r}")


@dataclass(frozen=True)
class KillingParams:
    """Coefficients of the six generator terms; any reals are accepted."""

    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0
    e: float = 0.0
    f: float = 0.0


def killing_field(params: KillingParams, p: Vector4) -> Vector4:
    """Value of the six-parameter Killing field at the point ``p``.

    With p = (x1, x2, x3, x4) the components are
    ``(a*x4 + c*x3 - f*x2,  b*x3 + d*x4 + f*x1,
       b*x2 + c*x1 - e*x4,  a*x1 + d*x2 + e*x3)``.
    """
    x1, x2, x3, x4 = p.components()
    a, b, c, d, e, f = params.a, params.b, params.c, params.d, params.e, params.f
    return Vector4(
        a * x4 + c * x3 - f * x2,
        b * x3 + d * x4 + f * x1,
        b * x2 + c * x1 - e * x4,
        a * x1 + d * x2 + e * x3,
    )


def killing_matrix(params: KillingParams) -> np.ndarray:
    """Matrix A with killing_field(params, p) == A @ p."""
    a, b, c, d, e, f = params.a, params.b, params.c, params.d, params.e, params.f
    return np.array([
        [0.0, -f, c, a],
        [f, 0.0, b, d],
        [c, b, 0.0, -e],
        [a, d, e, 0.0],
    ])


def lie_residual(field_matrix: np.ndarray) -> np.ndarray:
    """Lie derivative of the metric along the linear field W(p) = A p.

    For a constant metric this is S_ij = sum_k (g_ik A_kj + g_jk A_ki);
    S == 0 exactly when the field is Killing.
    """
    a = np.asarray(field_matrix, dtype=float)
    if a.shape != (4, 4):
        raise ValueError("field matrix must be 4x4")
    if not np.all(np.isfinite(a)):
        raise ValueError("field matrix must be finite")
    ga = _G @ a
    return ga + ga.T


def rotation_matrix(rotation: Rotation, angle: float) -> np.ndarray:
    """One-parameter group element: identity outside the rotation plane,
    a cosh/sinh block for boosts and a cos/sin block for spins inside it."""
    if not math.isfinite(angle):
        raise ValueError("angle must be finite")
    m = np.eye(4)
    i, j = rotation.plane
    if rotation.hyperbolic:
        ch, sh = math.cosh(angle), math.sinh(angle)
        m[i, i] = ch
        m[i, j] = sh
        m[j, i] = sh
        m[j, j] = ch
    else:
        co, si = math.cos(angle), math.sin(angle)
        m[i, i] = co
        m[i, j] = si
        m[j, i] = -si
        m[j, j] = co
    return m


def generator_matrix(rotation: Rotation) -> np.ndarray:
    """Derivative of ``rotation_matrix(rotation, s)`` at s = 0."""
    m = np.zeros((4, 4))
    i, j = rotation.plane
    if rotation.hyperbolic:
        m[i, j] = 1.0
        m[j, i] = 1.0
    else:
        m[i, j] = 1.0
        m[j, i] = -1.0
    return m


def apply_matrix(matrix: np.ndarray, v: Vector4) -> Vector4:
    out = np.asarray(matrix, dtype=float) @ np.array(v.components())
    return Vector4(*out.tolist())
