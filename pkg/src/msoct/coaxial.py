"""Coaxial families on the real axis and their unit-speed Mobius flows.

All families here are in the normalized position: the line of centers is
the real axis and the radical axis is the imaginary axis.  Flows are the
conjugates ``T^-1 o nu_t o T`` of the three standard flows

* tangent family (parabolic):   ``nu_t(z) = z - i t``
* intersecting family (hyperbolic): ``nu_t(z) = e^t z``
* disjoint family (elliptic):   ``nu_t(z) = e^{i t} z``
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import BadKindParams, IdenticalCircles, NumericBreakdown, OutOfRange
from .inversive import MobiusMap, PlanarCircle, apply_mobius

SQRT3 = math.sqrt(3.0)
INCENTER = 1j / SQRT3
DISCRIMINANT_TOL = 1e-10
BREAKDOWN_TOL = 1e-13


class FamilyKind(str, enum.Enum):
    INTERSECTING = "intersecting"  # hyperbolic flow
    TANGENT = "tangent"  # parabolic flow
    DISJOINT = "disjoint"  # elliptic flow

    @property
    def flow_name(self) -> str:
        return {"intersecting": "hyperbolic", "tangent": "parabolic", "disjoint": "elliptic"}[self.value]


@dataclass(frozen=True)
class CoaxialFamily:
    kind: FamilyKind
    y: float
    generators: tuple
    radical_foot: complex = 0j


@dataclass(frozen=True)
class EnvelopePair:
    A1: PlanarCircle
    A2: PlanarCircle
    f1: float
    f2: float
    r1: float
    r2: float
    x1: float
    x2: float


@dataclass(frozen=True)
class FlowSpec:
    family: CoaxialFamily
    conjugator: MobiusMap
    orientation: int = 1


@dataclass(frozen=True)
class FlowedCircleState:
    t: float
    a1: complex
    a2: complex
    z: complex
    r: float

    @property
    def circle(self) -> PlanarCircle:
        return PlanarCircle(self.z, self.r)


def build_family(cu: PlanarCircle, cv: PlanarCircle) -> CoaxialFamily:
    """Classify the pencil through two circles by the power of its radical-axis foot."""
    if cu == cv:
        raise IdenticalCircles(f"{cu} and {cv} coincide")
    delta = cv.center - cu.center
    dist = abs(delta)
    if dist == 0.0:
        # concentric: limit points are the common center and infinity
        return CoaxialFamily(FamilyKind.DISJOINT, 0.0, (cu, cv), cu.center)
    e = delta / dist
    s = (dist * dist + cu.radius ** 2 - cv.radius ** 2) / (2.0 * dist)
    foot = cu.center + s * e
    power = s * s - cu.radius ** 2
    if abs(power) <= DISCRIMINANT_TOL:
        return CoaxialFamily(FamilyKind.TANGENT, 0.0, (cu, cv), foot)
    if power < 0:
        return CoaxialFamily(FamilyKind.INTERSECTING, math.sqrt(-power), (cu, cv), foot)
    return CoaxialFamily(FamilyKind.DISJOINT, math.sqrt(power), (cu, cv), foot)


def _check_normalized(family: CoaxialFamily) -> None:
    if abs(family.radical_foot) > 1e-9:
        raise BadKindParams("family is not in normalized position (radical axis off the imaginary axis)")
    if family.kind is not FamilyKind.TANGENT and family.y <= 0.0:
        raise BadKindParams(f"{family.kind.value} family needs y > 0, got {family.y}")


def conjugator(family: CoaxialFamily, x: float = 1.0) -> MobiusMap:
    """Map sending the family to its standard position.

    ``x`` is the normalizing real point: ``x2`` for an intersecting family
    (sent to 1) and ``x1`` for a disjoint family (sent to 1).  It is unused
    for the tangent family, whose conjugator is ``1/z``.
    """
    _check_normalized(family)
    y = family.y
    if family.kind is FamilyKind.TANGENT:
        return MobiusMap(0, 1, 1, 0)
    if family.kind is FamilyKind.INTERSECTING:
        if x <= 0.0:
            raise BadKindParams(f"x must be positive, got {x}")
        kappa = (x - 1j * y) / (x + 1j * y)
        return MobiusMap(kappa, kappa * 1j * y, 1, -1j * y)
    if x <= y:
        raise BadKindParams(f"elliptic conjugator needs x1 > y, got x1={x}, y={y}")
    kappa = (x + y) / (x - y)
    return MobiusMap(kappa, -kappa * y, 1, y)


def family_member(family: CoaxialFamily, x: float) -> tuple:
    """Center and radius ``(f, r)`` of the member through the real point ``x``."""
    y = family.y
    if family.kind is FamilyKind.TANGENT:
        return x / 2.0, x / 2.0
    if family.kind is FamilyKind.INTERSECTING:
        return (x * x - y * y) / (2.0 * x), (x * x + y * y) / (2.0 * x)
    return (x * x + y * y) / (2.0 * x), (x * x - y * y) / (2.0 * x)


def envelope(family: CoaxialFamily, x1: float, x2: float) -> EnvelopePair:
    if not 1.0 < x1 < x2:
        raise OutOfRange(f"need 1 < x1 < x2, got x1={x1}, x2={x2}")
    if family.kind is FamilyKind.DISJOINT and x1 <= family.y:
        raise OutOfRange(f"need x1 > y for a disjoint family, got x1={x1}, y={family.y}")
    f1, r1 = family_member(family, x1)
    f2, r2 = family_member(family, x2)
    return EnvelopePair(PlanarCircle(f1, r1), PlanarCircle(f2, r2), f1, f2, r1, r2, x1, x2)


def standard_flow(kind: FamilyKind, t: float) -> MobiusMap:
    if kind is FamilyKind.TANGENT:
        return MobiusMap.translation(-1j * t)
    if kind is FamilyKind.INTERSECTING:
        return MobiusMap.scaling(math.exp(t))
    return MobiusMap.scaling(cmath.exp(1j * t))


def flow_spec(family: CoaxialFamily, env: EnvelopePair, initial: PlanarCircle, eps: float = 1e-3) -> FlowSpec:
    """Unit-speed flow for the family, oriented counterclockwise on the right-hand generator."""
    x = env.x1 if family.kind is FamilyKind.DISJOINT else env.x2
    spec = FlowSpec(family, conjugator(family, x), 1)
    if flow_circle(spec, initial, eps).center.imag < 0:
        spec = FlowSpec(family, spec.conjugator, -1)
    return spec


def flow_map(spec: FlowSpec, t: float) -> MobiusMap:
    T = spec.conjugator
    return T.inverse() @ standard_flow(spec.family.kind, spec.orientation * t) @ T


def flow_circle(spec: FlowSpec, c: PlanarCircle, t: float) -> PlanarCircle:
    if t == 0:
        return c
    return apply_mobius(flow_map(spec, t), c)


def tangency_points(spec: FlowSpec, env: EnvelopePair, t: float) -> tuple:
    """Closed-form points where the flowed circle touches ``A1`` and ``A2``."""
    kind = spec.family.kind
    t = spec.orientation * t
    y = spec.family.y
    if kind is FamilyKind.TANGENT:
        a1, a2 = (x * (1 + x * t * 1j) / (1 + x * x * t * t) for x in (env.x1, env.x2))
        return a1, a2
    Tinv = spec.conjugator.inverse()
    if kind is FamilyKind.INTERSECTING:
        theta = math.acos((env.f1 * env.f2 + y * y) / (env.r1 * env.r2))
        return Tinv(cmath.exp(t + theta * 1j)), Tinv(math.exp(t))
    rot = cmath.exp(t * 1j)
    return Tinv(rot), Tinv(rot * spec.conjugator(complex(env.x2)))


def tangency_radius(env: EnvelopePair, a1: complex, a2: complex) -> complex:
    """Radius of the circle touching A1 at a1 and A2 at a2 (complex-valued formula, real value)."""
    den = env.r2 * (a1 - env.f1) + env.r1 * (a2 - env.f2)
    if abs(den) < BREAKDOWN_TOL:
        raise NumericBreakdown(f"radius denominator {abs(den):.3e} below {BREAKDOWN_TOL}")
    return env.r1 * env.r2 * (a2 - a1) / den


def flowed_state(spec: FlowSpec, env: EnvelopePair, t: float) -> FlowedCircleState:
    a1, a2 = tangency_points(spec, env, t)
    r = tangency_radius(env, a1, a2)
    z = env.f1 + (env.r1 + r) * (a1 - env.f1) / env.r1
    return FlowedCircleState(t, a1, a2, complex(z), r.real)


def rotated_inv_dist(z: complex, r: float) -> float:
    """Inversive distance between C(z, r) and its image under the 2pi/3 rotation about i/sqrt(3)."""
    return abs(SQRT3 * z - 1j) ** 2 / (2.0 * r * r) - 1.0


def ellipse_residual(env: EnvelopePair, z: complex) -> float:
    """Residual of the Cartesian equation of the ellipse of flowed centers."""
    s = env.r1 + env.r2
    g = env.f2 - env.f1
    return (2 * z.real - env.f1 - env.f2) ** 2 / s ** 2 + 4 * z.imag ** 2 / (s * s - g * g) - 1.0
