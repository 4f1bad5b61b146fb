"""Circles, inversive distance, Mobius maps and stereographic projection.

Planar points are plain Python ``complex`` numbers.  A planar circle's
companion disk is always the bounded one; a spherical circle's companion
disk is the cap of radius ``< pi`` about its stored center.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import LineImage, NorthPoleCircle

# Stand-in for the point at infinity in Mobius actions; never stored in a circle.
INFINITY = complex(math.inf, 0.0)

POLE_TOL = 1e-12
NORTH = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class PlanarCircle:
    center: complex
    radius: float

    def __post_init__(self):
        center = complex(self.center)
        radius = float(self.radius)
        if not (cmath.isfinite(center) and math.isfinite(radius)):
            raise ValueError(f"non-finite circle: center={center}, radius={radius}")
        if radius <= 0.0:
            raise ValueError(f"radius must be positive, got {radius}")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", radius)

    def contains(self, z: complex) -> bool:
        return abs(z - self.center) < self.radius

    def point(self, angle: float) -> complex:
        return self.center + self.radius * cmath.exp(1j * angle)


@dataclass(frozen=True)
class SphericalCircle:
    """Circle on the unit sphere: unit center direction and spherical radius in (0, pi)."""

    center: tuple
    radius: float

    def __post_init__(self):
        c = tuple(float(x) for x in self.center)
        if len(c) != 3:
            raise ValueError("center must be a 3-vector")
        norm = math.sqrt(sum(x * x for x in c))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"center must be a unit vector, |c| = {norm!r}")
        radius = float(self.radius)
        if not 0.0 < radius < math.pi:
            raise ValueError(f"spherical radius must lie in (0, pi), got {radius}")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", radius)

    @classmethod
    def from_vector(cls, v, radius: float) -> "SphericalCircle":
        v = np.asarray(v, dtype=float)
        return cls(tuple(v / np.linalg.norm(v)), radius)

    @property
    def vec(self) -> np.ndarray:
        return np.array(self.center)

    def contains_point(self, p) -> bool:
        return _angle_between(self.vec, np.asarray(p, dtype=float)) < self.radius


class PairKind(str, enum.Enum):
    SEPARATED = "separated"
    EXTERNALLY_TANGENT = "externally_tangent"
    OVERLAPPING = "overlapping"
    ORTHOGONAL = "orthogonal"
    INTERNALLY_TANGENT = "internally_tangent"
    CONTAINED = "contained"


@dataclass(frozen=True)
class PairClassification:
    kind: PairKind
    angle: Optional[float] = None
    delta: Optional[float] = None


def inv_dist_plane(c1: PlanarCircle, c2: PlanarCircle) -> float:
    dist2 = abs(c1.center - c2.center) ** 2
    return (dist2 - c1.radius ** 2 - c2.radius ** 2) / (2.0 * c1.radius * c2.radius)


def inv_dist_sphere(s1: SphericalCircle, s2: SphericalCircle) -> float:
    cos_angle = float(np.dot(s1.vec, s2.vec))
    num = -cos_angle + math.cos(s1.radius) * math.cos(s2.radius)
    den = math.sin(s1.radius) * math.sin(s2.radius)
    return num / den


def classify_pair(d: float, tol: float = 1e-12) -> PairClassification:
    if not math.isfinite(d):
        raise ValueError(f"inversive distance must be finite, got {d}")
    if abs(d - 1.0) <= tol:
        return PairClassification(PairKind.EXTERNALLY_TANGENT)
    if abs(d + 1.0) <= tol:
        return PairClassification(PairKind.INTERNALLY_TANGENT)
    if d > 1.0:
        return PairClassification(PairKind.SEPARATED, delta=math.acosh(d))
    if d < -1.0:
        return PairClassification(PairKind.CONTAINED, delta=math.acosh(-d))
    if abs(d) <= tol:
        return PairClassification(PairKind.ORTHOGONAL, angle=math.pi / 2)
    return PairClassification(PairKind.OVERLAPPING, angle=math.acos(d))


@dataclass(frozen=True)
class MobiusMap:
    """``z -> (a w + b) / (c w + d)`` with ``w = conj(z)`` when ``conjugate_first``.

    Entries are rescaled on construction so the largest has magnitude 1.
    """

    a: complex
    b: complex
    c: complex
    d: complex
    conjugate_first: bool = False

    def __post_init__(self):
        entries = [complex(x) for x in (self.a, self.b, self.c, self.d)]
        scale = max(abs(x) for x in entries)
        if scale == 0.0 or not math.isfinite(scale):
            raise ValueError("degenerate Mobius matrix")
        entries = [x / scale for x in entries]
        a, b, c, d = entries
        if abs(a * d - b * c) <= 1e-14:
            raise ValueError("Mobius matrix is singular (|ad - bc| <= 1e-14)")
        for name, value in zip("abcd", entries):
            object.__setattr__(self, name, value)
        object.__setattr__(self, "conjugate_first", bool(self.conjugate_first))

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, shift: complex) -> "MobiusMap":
        return cls(1, shift, 0, 1)

    @classmethod
    def scaling(cls, factor: complex) -> "MobiusMap":
        return cls(factor, 0, 0, 1)

    @classmethod
    def rotation_about(cls, center: complex, angle: float) -> "MobiusMap":
        w = cmath.exp(1j * angle)
        return cls(w, center * (1 - w), 0, 1)

    @classmethod
    def inversion(cls, o: PlanarCircle) -> "MobiusMap":
        """Inversion through the circle ``o``: ``z -> p + rho^2 / conj(z - p)``."""
        p, rho = o.center, o.radius
        return cls(p, rho * rho - abs(p) ** 2, 1, -p.conjugate(), conjugate_first=True)

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def pole(self) -> complex:
        """Preimage of infinity (``INFINITY`` for affine maps)."""
        if self.c == 0:
            return INFINITY
        p = -self.d / self.c
        return p.conjugate() if self.conjugate_first else p

    def __call__(self, z: complex) -> complex:
        if cmath.isinf(z):
            return INFINITY if self.c == 0 else self.a / self.c
        w = z.conjugate() if self.conjugate_first else z
        den = self.c * w + self.d
        if den == 0:
            return INFINITY
        return (self.a * w + self.b) / den

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        """Composition ``self o other``."""
        if self.conjugate_first:
            oa, ob, oc, od = (x.conjugate() for x in (other.a, other.b, other.c, other.d))
        else:
            oa, ob, oc, od = other.a, other.b, other.c, other.d
        return MobiusMap(
            self.a * oa + self.b * oc,
            self.a * ob + self.b * od,
            self.c * oa + self.d * oc,
            self.c * ob + self.d * od,
            conjugate_first=self.conjugate_first != other.conjugate_first,
        )

    def inverse(self) -> "MobiusMap":
        a, b, c, d = self.d, -self.b, -self.c, self.a
        if self.conjugate_first:
            a, b, c, d = (x.conjugate() for x in (a, b, c, d))
        return MobiusMap(a, b, c, d, conjugate_first=self.conjugate_first)


def apply_mobius(m: MobiusMap, c: PlanarCircle) -> PlanarCircle:
    p, r = c.center, c.radius
    if m.conjugate_first:
        p = p.conjugate()
    a, b, cc, d = m.a, m.b, m.c, m.d
    if cc == 0:
        return PlanarCircle((a * p + b) / d, r * abs(a / d))
    q = -d / cc
    gap = abs(q - p) - r
    if abs(gap) <= POLE_TOL * max(1.0, r):
        raise LineImage(f"circle C({p}, {r}) passes through the pole {q} of the map")
    den = abs(cc * p + d) ** 2 - abs(cc) ** 2 * r * r
    center = ((a * p + b) * (cc * p + d).conjugate() - a * cc.conjugate() * r * r) / den
    radius = r * abs(a * d - b * cc) / abs(den)
    return PlanarCircle(center, radius)


def invert_in_circle(o: PlanarCircle, c: PlanarCircle) -> PlanarCircle:
    """Image of ``c`` under inversion in ``o`` (direct formula, better conditioned than the matrix route)."""
    delta = c.center - o.center
    power = abs(delta) ** 2 - c.radius ** 2  # power of o's center with respect to c
    if abs(abs(delta) - c.radius) <= POLE_TOL * max(1.0, c.radius):
        raise LineImage(f"circle {c} passes through the center of {o}")
    k = o.radius ** 2 / power
    return PlanarCircle(o.center + k * delta, abs(k) * c.radius)


def _angle_between(u: np.ndarray, v: np.ndarray) -> float:
    # atan2 form keeps precision near 0 and pi
    return math.atan2(np.linalg.norm(np.cross(u, v)), float(np.dot(u, v)))


def point_lift(z: complex) -> np.ndarray:
    """Inverse stereographic projection from the north pole."""
    if cmath.isinf(z):
        return NORTH.copy()
    s = abs(z) ** 2
    return np.array([2 * z.real, 2 * z.imag, s - 1.0]) / (s + 1.0)


def point_drop(p) -> complex:
    x, y, zc = (float(v) for v in p)
    if zc >= 1.0:
        return INFINITY
    return complex(x, y) / (1.0 - zc)


def stereographic_lift(c: PlanarCircle) -> SphericalCircle:
    p, r = c.center, c.radius
    rho = abs(p)
    u = p / rho if rho > 0 else 1.0 + 0j
    # the diameter along the ray through p sits at signed distances rho -+ r
    lo = math.atan(rho - r)
    hi = math.atan(rho + r)
    polar = lo + hi  # angle of the spherical center from the south pole
    radius = hi - lo
    center = (math.sin(polar) * u.real, math.sin(polar) * u.imag, -math.cos(polar))
    return SphericalCircle.from_vector(center, radius)


def stereographic_drop(s: SphericalCircle) -> PlanarCircle:
    v = s.vec
    polar = _angle_between(v, -NORTH)
    if abs(math.pi - polar - s.radius) <= POLE_TOL:
        raise NorthPoleCircle(f"circle {s} passes through the north pole")
    horiz = complex(v[0], v[1])
    u = horiz / abs(horiz) if abs(horiz) > 1e-300 else 1.0 + 0j
    s1 = math.tan((polar - s.radius) / 2)
    s2 = math.tan((polar + s.radius) / 2)
    return PlanarCircle(u * (s1 + s2) / 2, abs(s2 - s1) / 2)
