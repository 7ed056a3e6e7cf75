"""Curvature of 2-surfaces traced by rotating a profile curve.

A ``DoubleRotationSurface`` immerses (t, s) -> family point at angles
(x(t), w(t)) and profile parameter s, i.e. both rotation angles follow a
path while s runs along the profile.  Two independent computations are
reported side by side:

* closed-form values ``K_formula`` and ``H_formula = h3 e3 + h4 e4`` in
  each family's closed-form normal frame (these formulas are under
  audit: gaps are data, not failures);
* finite-difference oracles: intrinsic ``K_oracle`` from the induced
  2-metric via Christoffel symbols and the single independent curvature
  component, and ``H_oracle`` from second partials of the immersion with
  the tangential part projected away.

Profile and angle expressions are evaluated without the domain-interval
guard here, because central differences must straddle the evaluation
point; grid drivers keep the sample points themselves inside the domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ambient import Vector4, inner
from .expressions import ProfileFunction
from .surfaces import DegenerateMetricError, FamilyKind, SurfaceFamily

__all__ = [
    "DoubleRotationSurface",
    "CurvatureReport",
    "FrameDegenerateError",
    "normal_frame",
    "curvature_report",
    "gaussian_curvature_fd",
    "mean_curvature_fd",
]


class FrameDegenerateError(ValueError):
    """A normal-frame radicand was not strictly positive."""


@dataclass(frozen=True)
class DoubleRotationSurface:
    """A 2-surface (t, s) -> immersion(x(t), w(t), s) over one family."""

    family: SurfaceFamily
    angle_u: ProfileFunction
    angle_v: ProfileFunction

    def point(self, t: float, s: float) -> Vector4:
        fam = self.family
        return fam.immerse_values(fam.fa.evaluate(s, check=False),
                                  fam.fb.evaluate(s, check=False),
                                  self.angle_u.evaluate(t, check=False),
                                  self.angle_v.evaluate(t, check=False))

    def tangents(self, t: float, s: float) -> tuple[Vector4, Vector4]:
        """Exact tangent vectors (d/dt, d/ds) by the chain rule."""
        fam = self.family
        u = self.angle_u.evaluate(t, check=False)
        v = self.angle_v.evaluate(t, check=False)
        du = self.angle_u.derivative(t, check=False)
        dv = self.angle_v.derivative(t, check=False)
        frame = fam.frame_values(fam.fa.evaluate(s, check=False),
                                 fam.fb.evaluate(s, check=False),
                                 fam.fa.derivative(s, check=False),
                                 fam.fb.derivative(s, check=False), u, v)
        tangent_t = frame[0] * du + frame[1] * dv
        tangent_s = frame[2]
        return tangent_t, tangent_s

    def induced_metric(self, t: float, s: float) -> np.ndarray:
        st, ss = self.tangents(t, s)
        return np.array([[inner(st, st), inner(st, ss)],
                         [inner(ss, st), inner(ss, ss)]])

    def _scalars(self, t: float, s: float) -> dict[str, float]:
        fam = self.family
        return {
            "fa": fam.fa.evaluate(s, check=False),
            "fb": fam.fb.evaluate(s, check=False),
            "dfa": fam.fa.derivative(s, check=False),
            "dfb": fam.fb.derivative(s, check=False),
            "d2fa": fam.fa.second_derivative(s, check=False),
            "d2fb": fam.fb.second_derivative(s, check=False),
            "x": self.angle_u.evaluate(t, check=False),
            "w": self.angle_v.evaluate(t, check=False),
            "dx": self.angle_u.derivative(t, check=False),
            "dw": self.angle_v.derivative(t, check=False),
            "d2x": self.angle_u.second_derivative(t, check=False),
            "d2w": self.angle_v.second_derivative(t, check=False),
        }


def _radicands(kind: FamilyKind, c: dict[str, float]) -> tuple[float, float]:
    fa, fb, dfa, dfb = c["fa"], c["fb"], c["dfa"], c["dfb"]
    dx, dw = c["dx"], c["dw"]
    if kind is FamilyKind.HYPERBOLIC14:
        return fb * fb * dw * dw - fa * fa * dx * dx, dfb * dfb - dfa * dfa
    if kind is FamilyKind.HYPERBOLIC23:
        return fb * fb * dw * dw + fa * fa * dx * dx, dfa * dfa + dfb * dfb
    return fb * fb * dw * dw - fa * fa * dx * dx, dfb * dfb - dfa * dfa


def normal_frame(surface: DoubleRotationSurface, t: float,
                 s: float) -> tuple[Vector4, Vector4]:
    """The closed-form unit normals (e3, e4) of the surface.

    Both radicands must be strictly positive; e3/e4 are then unit vectors
    (spacelike or timelike depending on the family) orthogonal to the
    surface tangents and to each other.
    """
    c = surface._scalars(t, s)
    kind = surface.family.kind
    rad3, rad4 = _radicands(kind, c)
    if rad3 <= 0.0 or rad4 <= 0.0:
        raise FrameDegenerateError(
            f"normal frame degenerate at t={t!r}, s={s!r} "
            f"(radicands {rad3!r}, {rad4!r})")
    q3, q4 = math.sqrt(rad3), math.sqrt(rad4)
    fa, fb, dfa, dfb = c["fa"], c["fb"], c["dfa"], c["dfb"]
    x, w, dx, dw = c["x"], c["w"], c["dx"], c["dw"]
    if kind is FamilyKind.HYPERBOLIC14:
        e3 = Vector4(fb * dw * math.sinh(x), fa * dx * math.cosh(w),
                     fb * dw * math.cosh(x), fa * dx * math.sinh(w)) / q3
        e4 = Vector4(dfb * math.cosh(x), dfa * math.sinh(w),
                     dfb * math.sinh(x), dfa * math.cosh(w)) / q4
    elif kind is FamilyKind.HYPERBOLIC23:
        # middle-slot signs fixed so both vectors are orthogonal to the
        # surface tangents (inner product with S_t is 2*fa*fb*dx*dw and
        # with S_s is -2*dfa*dfb otherwise)
        e3 = Vector4(fb * dw * math.sinh(x), -fa * dx * math.sinh(w),
                     -fa * dx * math.cosh(w), fb * dw * math.cosh(x)) / q3
        e4 = Vector4(dfb * math.cosh(x), -dfa * math.cosh(w),
                     -dfa * math.sinh(w), dfb * math.sinh(x)) / q4
    else:
        e3 = Vector4(-fb * dw * math.cos(x), fb * dw * math.sin(x),
                     -fa * dx * math.cos(w), fa * dx * math.sin(w)) / q3
        e4 = Vector4(dfb * math.sin(x), dfb * math.cos(x),
                     dfa * math.sin(w), dfa * math.cos(w)) / q4
    return e3, e4


def _closed_forms(surface: DoubleRotationSurface, t: float,
                  s: float) -> tuple[float, float, float]:
    """(K, h3, h4) from the per-family closed-form expressions."""
    c = surface._scalars(t, s)
    kind = surface.family.kind
    rad3, rad4 = _radicands(kind, c)
    if rad3 <= 0.0 or rad4 <= 0.0:
        raise FrameDegenerateError(
            f"normal frame degenerate at t={t!r}, s={s!r} "
            f"(radicands {rad3!r}, {rad4!r})")
    fa, fb, dfa, dfb = c["fa"], c["fb"], c["dfa"], c["dfb"]
    d2fa, d2fb = c["d2fa"], c["d2fb"]
    dx, dw, d2x, d2w = c["dx"], c["dw"], c["d2x"], c["d2w"]
    q3, q4 = math.sqrt(rad3), math.sqrt(rad4)

    if kind is FamilyKind.HYPERBOLIC14:
        wronskian = dfa * d2fb - d2fa * dfb
        curv = ((dfa * fb - fa * dfb) ** 2 * (dx * dw) ** 2 / rad3
                + (dfa * fb * dw * dw - dfb * fa * dx * dx) * wronskian / rad4)
        h3 = (fa * fb * (d2x * dw + dx * d2w) / (2.0 * q3)
              + (dfb * fa * dx * dx - dfa * fb * dw * dw) / (2.0 * q4))
        h4 = wronskian / (2.0 * q4)
    elif kind is FamilyKind.HYPERBOLIC23:
        cross_term = d2fa * dfb + dfa * d2fb
        curv = -((fa * dfb + dfa * fb) ** 2 * (dx * dw) ** 2 / rad3
                 + (fa * dfb * dx * dx + dfa * fb * dw * dw) * cross_term / rad4)
        h3 = fa * fb * (dx * d2w + d2x * dw) / (2.0 * q3)
        h4 = ((fa * dfb * dx * dx + dfa * fb * dw * dw - d2fa * dfb - dfa * d2fb)
              / (2.0 * q4))
    else:
        wronskian = -d2fa * dfb + dfa * d2fb
        curv = -((dfa * fb - fa * dfb) ** 2 * (dx * dw) ** 2 / rad3
                 + wronskian * (dfb * fa * dx * dx - dfa * fb * dw * dw) ** 2 / rad4)
        h3 = fb * fa * (dx * d2w - dw * d2x) / (2.0 * q3)
        h4 = ((dfb * fa * dx * dx - dfa * fb * dw * dw + d2fa * dfb - dfa * d2fb)
              / (2.0 * q4))
    return curv, h3, h4


# ---------------------------------------------------------------------------
# finite-difference oracles

def _christoffel(metric_fn, t: float, s: float, h: float) -> np.ndarray:
    """Gamma[a, b, c] of a 2-metric, metric derivatives by central
    differences of step h (coordinate 0 is t, coordinate 1 is s)."""
    g = metric_fn(t, s)
    dg = np.empty((2, 2, 2))
    dg[0] = (metric_fn(t + h, s) - metric_fn(t - h, s)) / (2.0 * h)
    dg[1] = (metric_fn(t, s + h) - metric_fn(t, s - h)) / (2.0 * h)
    det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    if det == 0.0:
        raise DegenerateMetricError(t, which="induced 2-metric")
    ginv = np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]]) / det
    gamma = np.empty((2, 2, 2))
    for a in range(2):
        for b in range(2):
            for c in range(2):
                total = 0.0
                for d in range(2):
                    total += ginv[a, d] * (dg[b][d, c] + dg[c][b, d] - dg[d][b, c])
                gamma[a, b, c] = 0.5 * total
    return gamma


def gaussian_curvature_fd(metric_fn, t: float, s: float, h: float) -> float:
    """Intrinsic curvature of a 2-metric from the single independent
    curvature component: K = R_0101 / det(g), all derivatives by central
    differences of step ``h``.  Works for either metric signature."""
    g = metric_fn(t, s)
    det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    if det == 0.0:
        raise DegenerateMetricError(t, which="induced 2-metric")
    gamma = _christoffel(metric_fn, t, s, h)
    dgamma_dt = (_christoffel(metric_fn, t + h, s, h)
                 - _christoffel(metric_fn, t - h, s, h)) / (2.0 * h)
    dgamma_ds = (_christoffel(metric_fn, t, s + h, h)
                 - _christoffel(metric_fn, t, s - h, h)) / (2.0 * h)
    # R^l_{101} = d_0 Gamma^l_{11} - d_1 Gamma^l_{01} + quadratic terms
    riemann = np.empty(2)
    for l in range(2):
        quad = 0.0
        for m in range(2):
            quad += (gamma[l, 0, m] * gamma[m, 1, 1]
                     - gamma[l, 1, m] * gamma[m, 0, 1])
        riemann[l] = dgamma_dt[l, 1, 1] - dgamma_ds[l, 0, 1] + quad
    r_0101 = g[0, 0] * riemann[0] + g[0, 1] * riemann[1]
    return r_0101 / det


def mean_curvature_fd(point_fn, tangents_fn, t: float, s: float,
                      h: float) -> Vector4:
    """Mean curvature vector: half the metric trace of the second partials
    of the immersion, with the tangential part projected away.

    Second partials use central differences of step ``h``; tangents and
    the induced metric come from ``tangents_fn`` exactly, so the result is
    independent of any closed-form normal frame.
    """
    st, ss = tangents_fn(t, s)
    g = np.array([[inner(st, st), inner(st, ss)],
                  [inner(ss, st), inner(ss, ss)]])
    det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    if det == 0.0:
        raise DegenerateMetricError(t, which="induced 2-metric")
    ginv = np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]]) / det

    center = point_fn(t, s)
    stt = (point_fn(t + h, s) - 2.0 * center + point_fn(t - h, s)) / (h * h)
    sss = (point_fn(t, s + h) - 2.0 * center + point_fn(t, s - h)) / (h * h)
    sts = (point_fn(t + h, s + h) - point_fn(t + h, s - h)
           - point_fn(t - h, s + h) + point_fn(t - h, s - h)) / (4.0 * h * h)

    trace = (stt * float(ginv[0, 0]) + sss * float(ginv[1, 1])
             + sts * float(ginv[0, 1] + ginv[1, 0])) * 0.5
    # remove the tangential projection g^{ab} <trace, S_a> S_b
    coeff0 = float(ginv[0, 0]) * inner(trace, st) + float(ginv[0, 1]) * inner(trace, ss)
    coeff1 = float(ginv[1, 0]) * inner(trace, st) + float(ginv[1, 1]) * inner(trace, ss)
    return trace - (st * coeff0 + ss * coeff1)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurvatureReport:
    """Closed-form versus oracle curvature at one (t, s) point.

    ``K_gap`` and ``H_gap`` are reported discrepancies, not assertions:
    the closed forms are under numerical audit.
    """

    K_formula: float
    K_oracle: float
    h3: float
    h4: float
    e3: Vector4
    e4: Vector4
    H_formula: Vector4
    H_oracle: Vector4
    K_gap: float
    H_gap: float


def default_fd_step(t: float, s: float) -> float:
    return 1e-4 * (1.0 + abs(t) + abs(s))


def curvature_report(surface: DoubleRotationSurface, t: float, s: float,
                     fd_step: float | None = None) -> CurvatureReport:
    """Evaluate closed forms and oracles at (t, s) and report the gaps."""
    h = default_fd_step(t, s) if fd_step is None else fd_step
    if h <= 0.0:
        raise ValueError("fd_step must be > 0")
    k_formula, h3, h4 = _closed_forms(surface, t, s)
    e3, e4 = normal_frame(surface, t, s)
    h_formula = e3 * h3 + e4 * h4
    k_oracle = gaussian_curvature_fd(surface.induced_metric, t, s, h)
    h_oracle = mean_curvature_fd(surface.point, surface.tangents, t, s, h)
    delta = h_formula - h_oracle
    h_gap = max(abs(x) for x in delta.components())
    return CurvatureReport(
        K_formula=k_formula,
        K_oracle=k_oracle,
        h3=h3,
        h4=h4,
        e3=e3,
        e4=e4,
        H_formula=h_formula,
        H_oracle=h_oracle,
        K_gap=abs(k_formula - k_oracle),
        H_gap=h_gap,
    )
