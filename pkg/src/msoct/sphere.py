"""Lifting planar configurations to the sphere, normalizing them, and checking packings."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import optimize

from .coaxial import INCENTER, FamilyKind
from .construction import (
    VERTICES,
    Configuration,
    ExtremaReport,
    MsParams,
    configuration,
    find_extrema,
    involution_fixed_point,
    orthogonal_circle,
    profile_d,
)
from .errors import (
    BadEquatorialSetup,
    LabelMismatch,
    NoOrthogonalCircle,
    NormalizationFailed,
    NoTangencySolution,
)
from .inversive import (
    MobiusMap,
    PlanarCircle,
    SphericalCircle,
    _angle_between,
    apply_mobius,
    inv_dist_sphere,
    stereographic_lift,
)
from .polyhedral import EdgeLabeledTriangulation, octahedron

SOUTH = np.array([0.0, 0.0, -1.0])
DIAGONALS = (("u", "u'"), ("v", "v'"), ("w", "w'"))
FLOW_WINDOW = (-10.0, 10.0)
LABEL_TOL = 1e-8
ANTIPODAL_TOL = 1e-9
COLLINEAR_TOL = 1e-10
AREA_TOL = 1e-6
CERT_TOL = 1e-6


@dataclass(frozen=True)
class SphericalRealization:
    circles: dict = field(hash=False)
    provenance: dict = field(default_factory=dict, hash=False)

    def __getitem__(self, key: str) -> SphericalCircle:
        return self.circles[key]

    def inv_dist(self, p: str, q: str) -> float:
        return inv_dist_sphere(self.circles[p], self.circles[q])

    def centers(self) -> dict:
        return {k: c.vec for k, c in self.circles.items()}

    def radii(self) -> dict:
        return {k: c.radius for k, c in self.circles.items()}

    def triangulation(self) -> EdgeLabeledTriangulation:
        """The Ma-Schlenker octahedron whose labels this realization carries."""
        return octahedron(
            self.inv_dist("u", "v"), self.inv_dist("w'", "u"),
            self.inv_dist("w'", "v"), self.inv_dist("u'", "v'"),
        )


def polar_angle(p) -> float:
    """Angle from the south pole."""
    return _angle_between(np.asarray(p, dtype=float), SOUTH)


def lift_configuration(config: Configuration, pre: Optional[MobiusMap] = None, **provenance) -> SphericalRealization:
    circles = {}
    for key in VERTICES:
        c = config[key] if pre is None else apply_mobius(pre, config[key])
        circles[key] = stereographic_lift(c)
    return SphericalRealization(circles, {"t": config.t, **provenance})


def _frame_map(log_scale: float) -> MobiusMap:
    # center the concentric circles O, O' at the origin, then flow along meridians
    return MobiusMap.scaling(math.exp(log_scale)) @ MobiusMap.translation(-INCENTER)


@dataclass(frozen=True)
class NormalizationContext:
    params: MsParams
    tau: float
    log_scale: float
    o_radius: float
    o_prime_radius: float

    @property
    def frame(self) -> MobiusMap:
        return _frame_map(self.log_scale)

    @property
    def o_south(self) -> bool:
        """Lifted O is a latitude inside the southern hemisphere."""
        return self.o_radius * math.exp(self.log_scale) < 1.0

    @property
    def o_prime_north(self) -> bool:
        return self.o_prime_radius * math.exp(self.log_scale) > 1.0


def _latitude_gap(config: Configuration, log_scale: float) -> float:
    """Radius of L minus radius of L' after the frame map with the given meridian flow."""
    frame = _frame_map(log_scale)
    low = polar_angle(stereographic_lift(apply_mobius(frame, config["u"])).vec)
    high = polar_angle(stereographic_lift(apply_mobius(frame, config["w'"])).vec)
    return low - (math.pi - high)


def equalizing_log_scale(config: Configuration) -> float:
    """Meridian flow parameter giving L and L' equal radii for this configuration."""
    gap = lambda k: _latitude_gap(config, k)  # noqa: E731
    lo, hi = FLOW_WINDOW
    if gap(lo) * gap(hi) > 0:
        raise NormalizationFailed(f"latitude radii cannot be equalized for flow parameter in {FLOW_WINDOW}")
    return float(optimize.bisect(gap, lo, hi, xtol=1e-12, maxiter=200))


def normalization_context(params: MsParams, tau: float) -> NormalizationContext:
    o = orthogonal_circle(params.a)
    config = configuration(params, tau)
    moved = config["w'"]
    dist = abs(moved.center - INCENTER)
    if dist <= moved.radius:
        raise NoOrthogonalCircle("no circle centered at the incenter is orthogonal to the primed circles")
    o_prime = math.sqrt(dist * dist - moved.radius ** 2)
    return NormalizationContext(params, tau, equalizing_log_scale(config), o.radius, o_prime)


def lift_and_normalize(
    config: Configuration, ctx: NormalizationContext, per_configuration: bool = True
) -> SphericalRealization:
    """Lift with O, O' centered on the polar axis and L, L' of equal radius.

    By default the meridian flow equalizes L and L' for ``config`` itself;
    with ``per_configuration=False`` the flow found at ``tau`` is reused.
    """
    k = equalizing_log_scale(config) if per_configuration else ctx.log_scale
    return lift_configuration(config, _frame_map(k), tau=ctx.tau, log_scale=k, normalized=True)


def normalized_realization(
    params: MsParams, t: float, ctx: NormalizationContext, per_configuration: bool = True
) -> SphericalRealization:
    return lift_and_normalize(configuration(params, t), ctx, per_configuration)


@dataclass(frozen=True)
class PackingReport:
    is_realization: bool
    non_antipodal: bool
    non_great_circle: bool
    triangulates: bool
    total_area: float
    face_signs: dict = field(hash=False)
    face_areas: dict = field(default_factory=dict, hash=False)
    crossings: tuple = ()

    @property
    def passes(self) -> bool:
        return self.is_realization and self.non_antipodal and self.non_great_circle and self.triangulates


def _det(a, b, c) -> float:
    return float(np.dot(a, np.cross(b, c)))


def _corner(v, p, q) -> float:
    tp = p - np.dot(v, p) * v
    tq = q - np.dot(v, q) * v
    return math.atan2(np.linalg.norm(np.cross(tp, tq)), float(np.dot(tp, tq)))


def face_area(a, b, c) -> float:
    """Angle excess of the geodesic triangle."""
    return _corner(a, b, c) + _corner(b, c, a) + _corner(c, a, b) - math.pi


def _on_arc(q, a, b, normal, tol) -> bool:
    return np.dot(np.cross(a, q), normal) > tol and np.dot(np.cross(q, b), normal) > tol


def arcs_cross(a, b, c, d, tol: float = 1e-12) -> bool:
    """Whether the minor geodesic arcs ab and cd meet at an interior point of both."""
    n1, n2 = np.cross(a, b), np.cross(c, d)
    line = np.cross(n1, n2)
    norm = np.linalg.norm(line)
    if norm < tol:
        return False
    line = line / norm
    for q in (line, -line):
        if _on_arc(q, a, b, n1, tol) and _on_arc(q, c, d, n2, tol):
            return True
    return False


def _inside(p, face_pts, tol: float = 1e-12) -> bool:
    a, b, c = face_pts
    return _det(a, b, p) > tol and _det(b, c, p) > tol and _det(c, a, p) > tol


def validate_packing(r: SphericalRealization, k: EdgeLabeledTriangulation) -> PackingReport:
    pts = r.centers()
    is_realization = all(
        abs(r.inv_dist(p, q) - k.beta(p, q)) <= LABEL_TOL * max(1.0, abs(k.beta(p, q))) for p, q in k.edges
    )
    non_antipodal = all(_angle_between(pts[p], pts[q]) < math.pi - ANTIPODAL_TOL for p, q in k.edges)
    signs = {face: _det(*(pts[v] for v in face)) for face in k.faces}
    non_great_circle = all(abs(s) > COLLINEAR_TOL for s in signs.values())
    areas = {face: face_area(*(pts[v] for v in face)) for face in k.faces}
    total = sum(areas.values())
    crossings = []
    for (p, q), (s, t) in itertools.combinations(k.edges, 2):
        if {p, q} & {s, t}:
            continue
        if arcs_cross(pts[p], pts[q], pts[s], pts[t]):
            crossings.append(((p, q), (s, t)))
    for face in k.faces:
        for v in k.vertices:
            if v not in face and _inside(pts[v], [pts[x] for x in face]):
                crossings.append((face, v))
    triangulates = (
        all(s > 0 for s in signs.values())
        and abs(total - 4 * math.pi) <= AREA_TOL
        and not crossings
    )
    return PackingReport(
        is_realization, non_antipodal, non_great_circle, triangulates, total, signs, areas, tuple(crossings)
    )


class Verdict(str, enum.Enum):
    NOT_EQUIVALENT = "not_equivalent"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class NonEquivalenceCertificate:
    edge_labels_match: bool
    diagonal_multiset_1: tuple
    diagonal_multiset_2: tuple
    separation: float
    verdict: Verdict


def diagonal_multiset(r: SphericalRealization) -> tuple:
    return tuple(sorted(abs(r.inv_dist(p, q)) for p, q in DIAGONALS))


def certify_nonequivalence(
    r1: SphericalRealization, r2: SphericalRealization, k: Optional[EdgeLabeledTriangulation] = None
) -> NonEquivalenceCertificate:
    """One-sided certificate: differing diagonal invariants rule out any inversive equivalence."""
    k = k or r1.triangulation()
    worst = max(abs(abs(r1.inv_dist(p, q)) - abs(r2.inv_dist(p, q))) for p, q in k.edges)
    if worst > CERT_TOL:
        raise LabelMismatch(f"edge labels differ by {worst:.3e} > {CERT_TOL}")
    m1, m2 = diagonal_multiset(r1), diagonal_multiset(r2)
    separation = max(abs(x - y) for x, y in zip(m1, m2))
    verdict = Verdict.NOT_EQUIVALENT if separation > CERT_TOL else Verdict.INCONCLUSIVE
    return NonEquivalenceCertificate(True, m1, m2, separation, verdict)


# Construction directly on the sphere


@dataclass(frozen=True)
class SphericalPencil:
    """Circles cut from the sphere by the planes through a common line.

    A spherical circle with center ``n`` and radius ``r`` is the section by
    the plane ``n . x = cos r``.
    """

    point: np.ndarray = field(hash=False)  # a point of the common line
    direction: np.ndarray = field(hash=False)

    @classmethod
    def through(cls, s1: SphericalCircle, s2: SphericalCircle) -> "SphericalPencil":
        n1, n2 = s1.vec, s2.vec
        h1, h2 = math.cos(s1.radius), math.cos(s2.radius)
        direction = np.cross(n1, n2)
        if np.linalg.norm(direction) < 1e-14:
            raise BadEquatorialSetup("circles have parallel planes; the pencil line is at infinity")
        direction = direction / np.linalg.norm(direction)
        # point of the line closest to the origin
        g = np.array([[n1 @ n1, n1 @ n2], [n1 @ n2, n2 @ n2]])
        lam = np.linalg.solve(g, [h1, h2])
        return cls(lam[0] * n1 + lam[1] * n2, direction)

    def contains(self, s: SphericalCircle, tol: float = 1e-9) -> bool:
        n, h = s.vec, math.cos(s.radius)
        return abs(n @ self.direction) < tol and abs(n @ self.point - h) < tol

    def member_through(self, p) -> SphericalCircle:
        """The member through a point of the sphere, with companion cap on the side away from the line."""
        p = np.asarray(p, dtype=float)
        n = np.cross(self.direction, p - self.point)
        n = n / np.linalg.norm(n)
        h = float(n @ p)
        if h < 0:
            n, h = -n, -h
        return SphericalCircle.from_vector(n, math.acos(min(1.0, h)))

    def equatorial_point(self) -> Optional[complex]:
        """Where the line meets the equatorial plane (``q``), if it crosses it."""
        if abs(self.direction[2]) < 1e-14:
            return None
        s = -self.point[2] / self.direction[2]
        q = self.point + s * self.direction
        return complex(q[0], q[1])


def equator_frame(a: float) -> MobiusMap:
    """Similarity sending the circle O to the unit circle, i.e. O to the equator after lifting."""
    try:
        rho = orthogonal_circle(a).radius
    except NoOrthogonalCircle as exc:
        raise BadEquatorialSetup(
            "equal circles centered equally spaced on the equator always have a > 1/2"
        ) from exc
    return MobiusMap.scaling(1.0 / rho) @ MobiusMap.translation(-INCENTER)


def equatorial_radius(a: float) -> float:
    """Spherical radius of three equally spaced equatorial circles at pairwise inversive distance a."""
    if a <= 0.5:
        raise BadEquatorialSetup(f"a must exceed 1/2 for an equatorial base triple, got {a}")
    # (1/2 + cos^2 r) / sin^2 r = a
    return math.acos(math.sqrt((a - 0.5) / (a + 1.0)))


@dataclass(frozen=True)
class OnSphereSweep:
    params: MsParams
    m_plane: float
    ts: tuple
    realizations: tuple
    d_values: tuple
    pencil: SphericalPencil
    A1: SphericalCircle
    A2: SphericalCircle
    normalized: bool = False  # raw outputs are realizations, not yet packings

    def plane_time(self, t: float) -> float:
        return self.m_plane - t


def on_sphere_construction(a: float, x1: float, x2: float, ts, extrema: Optional[ExtremaReport] = None) -> OnSphereSweep:
    """Realizations with base circles on the equator and the local maximum of d at t = 0.

    The sphere time ``t`` corresponds to the planar flow time ``m - t``, which
    places ``C_w'(t)`` in the upper hemisphere for small ``t > 0``.
    """
    params = MsParams(a, x1, x2)
    frame = equator_frame(a)
    ex = extrema or find_extrema(params)
    # the involution in O fixes m exactly; solve for it rather than reuse the optimizer's estimate
    m = involution_fixed_point(params, ex.m)
    lifted_base = [stereographic_lift(apply_mobius(frame, c)) for c in params.base]
    for s in lifted_base:
        if abs(s.center[2]) > 1e-9:
            raise BadEquatorialSetup("base circles are not centered on the equator")
    pencil = SphericalPencil.through(lifted_base[0], lifted_base[1])
    A1 = stereographic_lift(apply_mobius(frame, params.env.A1))
    A2 = stereographic_lift(apply_mobius(frame, params.env.A2))
    realizations, ds = [], []
    for t in ts:
        cfg = configuration(params, m - t)
        realizations.append(lift_configuration(cfg, frame, t_sphere=float(t), normalized=False))
        ds.append(profile_d(params, m - t))
    return OnSphereSweep(params, m, tuple(float(t) for t in ts), tuple(realizations), tuple(ds), pencil, A1, A2)


@dataclass(frozen=True)
class TangencyExample:
    A2: SphericalCircle
    tau: float  # sphere time; the primed circles touch at +-tau
    realization: SphericalRealization
    params: MsParams
    extrema: ExtremaReport
    context: NormalizationContext
    sweep: OnSphereSweep


def _min_d(params: MsParams) -> float:
    return find_extrema(params).d_tau


def tangency_example(x1_choice: Optional[float] = None, x2_window=(2.05, 40.0)) -> TangencyExample:
    """Critical packing of O(1, b, 1, 1): base radii pi/3 and A1 = C_v, primed circles tangent at +-tau."""
    a = 1.0
    x1 = 2.0 if x1_choice is None else x1_choice  # C_v = C(1, 1) meets the real axis at 2
    lo, hi = max(x2_window[0], x1 + 1e-3), x2_window[1]
    grid = np.geomspace(lo, hi, 60)
    values = []
    for x2 in grid:
        try:
            values.append(_min_d(MsParams(a, x1, float(x2))) - 1.0)
        except ArithmeticError:
            values.append(math.nan)
    bracket = None
    for i in range(len(grid) - 1):
        if values[i] * values[i + 1] < 0:
            bracket = (float(grid[i]), float(grid[i + 1]))
            break
    if bracket is None:
        raise NoTangencySolution(f"min d(t) never crosses 1 for x2 in {x2_window}")
    x2 = optimize.brentq(lambda s: _min_d(MsParams(a, x1, s)) - 1.0, *bracket, xtol=1e-14, rtol=1e-15)
    params = MsParams(a, x1, x2)
    ex = find_extrema(params)
    if abs(ex.d_tau - 1.0) > 1e-8:
        raise NoTangencySolution(f"tangency solve converged to d(tau) = {ex.d_tau}")
    tau_sphere = ex.m - ex.tau
    sweep = on_sphere_construction(a, x1, x2, (-tau_sphere, 0.0, tau_sphere), extrema=ex)
    ctx = normalization_context(params, ex.tau)
    realization = normalized_realization(params, ex.tau, ctx)
    return TangencyExample(sweep.A2, tau_sphere, realization, params, ex, ctx, sweep)
