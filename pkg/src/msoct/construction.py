"""The planar Ma-Schlenker construction and the inversive-distance profile d(t).

Three circles of equal radius sit at ``-1``, ``1`` and ``i sqrt(3)`` with
pairwise inversive distance ``a``.  An initial circle ``C`` centered on the
positive real axis is flowed along the coaxial family of ``C_u`` and
``C_v``; its two rotated copies about the incenter ``i/sqrt(3)`` complete
the octahedral configuration ``C(t)``.  ``d(t)`` is the inversive distance
between the flowed circle and its rotated copy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np
from scipy import optimize

from .coaxial import (
    INCENTER,
    SQRT3,
    CoaxialFamily,
    EnvelopePair,
    FamilyKind,
    FlowedCircleState,
    FlowSpec,
    build_family,
    envelope,
    flow_circle,
    flow_spec,
    flowed_state,
    rotated_inv_dist,
)
from .errors import (
    BadKindParams,
    CenterInsideCircle,
    NegativeC,
    NoInteriorMinimum,
    NoOrthogonalCircle,
    OutOfBand,
    OutOfRange,
)
from .inversive import (
    MobiusMap,
    PlanarCircle,
    apply_mobius,
    inv_dist_plane,
    invert_in_circle,
)

VERTICES = ("u", "v", "w", "u'", "v'", "w'")
ROTATION = MobiusMap.rotation_about(INCENTER, 2 * math.pi / 3)
HALF_PLANE_TOL = 1e-12
TWO_PI = 2 * math.pi


def base_radius(a: float) -> float:
    return math.sqrt(2.0 / (a + 1.0))


def a_from_y(y: float, kind: str) -> float:
    """Face label ``a`` whose base circles generate a family with parameter ``y``."""
    if not 0.0 < y < 1.0:
        raise BadKindParams(f"y must lie in (0, 1), got {y}")
    if kind == "hyperbolic":
        return (1 - y * y) / (1 + y * y)
    if kind == "elliptic":
        return (1 + y * y) / (1 - y * y)
    raise ValueError(f"y determines a only for hyperbolic or elliptic flows, not {kind!r}")


def base_triple(a: float) -> tuple:
    if a < 0:
        raise ValueError(f"face label a must be non-negative, got {a}")
    r = base_radius(a)
    return PlanarCircle(-1.0, r), PlanarCircle(1.0, r), PlanarCircle(1j * SQRT3, r)


@dataclass(frozen=True)
class MsParams:
    a: float
    x1: float
    x2: float

    def __post_init__(self):
        if self.a < 0:
            raise ValueError(f"face label a must be non-negative, got {self.a}")
        if not 1.0 < self.x1 < self.x2:
            raise OutOfRange(f"need 1 < x1 < x2, got x1={self.x1}, x2={self.x2}")

    @classmethod
    def from_y(cls, y: float, x1: float, x2: float, kind: str = "elliptic") -> "MsParams":
        return cls(a_from_y(y, kind), x1, x2)

    @cached_property
    def r_base(self) -> float:
        return base_radius(self.a)

    @cached_property
    def base(self) -> tuple:
        return base_triple(self.a)

    @cached_property
    def family(self) -> CoaxialFamily:
        return build_family(self.base[0], self.base[1])

    @property
    def kind(self) -> FamilyKind:
        return self.family.kind

    @property
    def y(self) -> float:
        return self.family.y

    @cached_property
    def env(self) -> EnvelopePair:
        return envelope(self.family, self.x1, self.x2)

    @cached_property
    def initial(self) -> PlanarCircle:
        return PlanarCircle((self.x1 + self.x2) / 2, (self.x2 - self.x1) / 2)

    @cached_property
    def flow(self) -> FlowSpec:
        return flow_spec(self.family, self.env, self.initial)

    @property
    def b(self) -> float:
        return inv_dist_plane(self.base[0], self.initial)

    @property
    def c(self) -> float:
        return inv_dist_plane(self.base[1], self.initial)

    @property
    def periodic(self) -> bool:
        return self.kind is FamilyKind.DISJOINT


def initial_circle(params: MsParams) -> tuple:
    c = params.c
    if c < 0:
        raise NegativeC(f"<C_v, C> = {c} < 0")
    return params.initial, params.b, c


@dataclass(frozen=True)
class Configuration:
    t: float
    circles: dict

    def __getitem__(self, key: str) -> PlanarCircle:
        return self.circles[key]

    def labels(self) -> dict:
        """Inversive distances on all fifteen vertex pairs, keyed by sorted pairs."""
        out = {}
        for i, p in enumerate(VERTICES):
            for q in VERTICES[i + 1:]:
                out[(p, q)] = inv_dist_plane(self.circles[p], self.circles[q])
        return out


def flowed_circle(params: MsParams, t: float) -> PlanarCircle:
    return flow_circle(params.flow, params.initial, t)


def state(params: MsParams, t: float) -> FlowedCircleState:
    return flowed_state(params.flow, params.env, t)


def configuration(params: MsParams, t: float) -> Configuration:
    cu, cv, cw = params.base
    moved = flowed_circle(params, t)
    once = apply_mobius(ROTATION, moved)
    twice = apply_mobius(ROTATION, once)
    return Configuration(t, {"u": cu, "v": cv, "w": cw, "w'": moved, "u'": once, "v'": twice})


def profile_d(params: MsParams, t: float) -> float:
    s = state(params, t)
    return rotated_inv_dist(s.z, s.r)


def profile_d_direct(params: MsParams, t: float) -> float:
    """d(t) from the configuration circles themselves (independent of the closed form)."""
    cfg = configuration(params, t)
    return inv_dist_plane(cfg["w'"], cfg["u'"])


@dataclass(frozen=True)
class ExtremaReport:
    tau: float
    m: float
    d_tau: float
    d_m: float
    tau_prime: float
    d_tau_prime: float
    M: Optional[float] = None
    d_M: Optional[float] = None
    omega: Optional[float] = None
    slopes: dict = field(default_factory=dict)

    def band(self) -> tuple:
        return self.d_tau, self.d_m

    def log_mid_target(self) -> float:
        """Geometric midpoint of the pair band; d spans decades in the elliptic case."""
        return math.sqrt(self.d_tau * self.d_m)


SEARCH_WINDOW = (-10.0, 10.0)
GRID_POINTS = 4001


def _refine(fn, lo: float, hi: float, maximize: bool) -> float:
    g = (lambda t: -fn(t)) if maximize else fn
    res = optimize.minimize_scalar(g, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
    t = float(res.x)
    # a minimizer is only located to ~sqrt(eps); polish on the slope's sign change
    h, w = 1e-5, 1e-7
    slope = lambda s: _slope(fn, s, h)  # noqa: E731
    for _ in range(4):
        if slope(t - w) * slope(t + w) < 0:
            return float(optimize.brentq(slope, t - w, t + w, xtol=1e-15, rtol=4 * np.finfo(float).eps))
        w *= 10
    return t


def _slope(fn, t: float, h: float = 1e-6) -> float:
    return (fn(t + h) - fn(t - h)) / (2 * h)


def _sweep(params: MsParams) -> tuple:
    if params.periodic:
        ts = np.linspace(0.0, TWO_PI, GRID_POINTS)
    else:
        ts = np.linspace(*SEARCH_WINDOW, GRID_POINTS)
    ds = np.array([profile_d(params, float(t)) for t in ts])
    return ts, ds


def _grid_extrema(ds: np.ndarray, periodic: bool) -> tuple:
    if periodic:
        # last grid point repeats the first
        core = ds[:-1]
        left, right = np.roll(core, 1), np.roll(core, -1)
        idx = np.arange(len(core))
    else:
        core = ds[1:-1]
        left, right = ds[:-2], ds[2:]
        idx = np.arange(1, len(ds) - 1)
    mins = idx[(core < left) & (core <= right)]
    maxs = idx[(core > left) & (core >= right)]
    return mins, maxs


def find_extrema(params: MsParams) -> ExtremaReport:
    fn = lambda t: profile_d(params, t)  # noqa: E731
    ts, ds = _sweep(params)
    step = ts[1] - ts[0]
    mins, maxs = _grid_extrema(ds, params.periodic)
    if len(mins) == 0:
        raise NoInteriorMinimum("d(t) has no interior minimum on the searched window")
    tmins = sorted(_refine(fn, ts[i] - step, ts[i] + step, False) for i in mins)
    tmaxs = sorted(_refine(fn, ts[i] - step, ts[i] + step, True) for i in maxs)
    if params.periodic:
        tmins = sorted(t % TWO_PI for t in tmins)
        tmaxs = sorted(t % TWO_PI for t in tmaxs)
    dmins = [fn(t) for t in tmins]
    lowest = min(dmins)
    scale = max(1.0, abs(lowest))
    # the two global minimizers are exchanged by the involution and tie in value
    globals_ = [t for t, d in zip(tmins, dmins) if d - lowest <= 1e-7 * scale]
    tau = globals_[0]
    between = [t for t in tmaxs if t > tau and (len(globals_) < 2 or t < globals_[1])]
    if not between:
        raise NoInteriorMinimum("no local maximum separates the two global minimizers")
    m = between[0]
    tau_prime = globals_[1] if len(globals_) > 1 else tau
    M = d_M = omega = None
    if params.periodic:
        omega = TWO_PI
        M = max(tmaxs, key=fn)
        d_M = fn(M)
    slopes = {"tau": _slope(fn, tau), "m": _slope(fn, m)}
    if M is not None:
        slopes["M"] = _slope(fn, M)
    for name, t in (("tau", tau), ("m", m)):
        if name == "tau":
            ok = _slope(fn, t - 1e-3) < 0 < _slope(fn, t + 1e-3)
        else:
            ok = _slope(fn, t - 1e-3) > 0 > _slope(fn, t + 1e-3)
        if not ok:
            raise NoInteriorMinimum(f"derivative sign check failed at {name}={t}")
    return ExtremaReport(
        tau=tau, m=m, d_tau=fn(tau), d_m=fn(m), tau_prime=tau_prime, d_tau_prime=fn(tau_prime),
        M=M, d_M=d_M, omega=omega, slopes=slopes,
    )


def _bisect(fn, target: float, lo: float, hi: float) -> float:
    return float(optimize.bisect(lambda t: fn(t) - target, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=500))


def find_pair(params: MsParams, d_target: float, extrema: Optional[ExtremaReport] = None) -> tuple:
    """Parameters ``t < tau < t'`` on the two branches around ``tau`` with ``d = d_target``."""
    ex = extrema or find_extrema(params)
    if not ex.d_tau < d_target < ex.d_m:
        raise OutOfBand(f"d_target={d_target} outside the open band ({ex.d_tau}, {ex.d_m})")
    fn = lambda t: profile_d(params, t)  # noqa: E731
    t_right = _bisect(fn, d_target, ex.tau, ex.m)
    if params.periodic:
        lo = ex.M - TWO_PI
    else:
        lo, width = ex.tau, 0.05
        while fn(lo) <= d_target:
            lo = ex.tau - width
            width *= 2
            if lo < SEARCH_WINDOW[0]:
                raise OutOfBand(f"no left branch reaches d_target={d_target}")
    t_left = _bisect(fn, d_target, lo, ex.tau)
    return t_left, t_right


def orthogonal_circle(a: float) -> PlanarCircle:
    if a <= 0.5:
        raise NoOrthogonalCircle(f"no circle is orthogonal to the base triple when a={a} <= 1/2")
    return PlanarCircle(INCENTER, math.sqrt(4.0 / 3.0 - 2.0 / (a + 1.0)))


def half_plane_area(z: complex) -> float:
    """Twice the signed area of the triangle (-1, z, i/sqrt 3); positive on the side of z = 1."""
    p, q = z - (-1.0), INCENTER - (-1.0)
    return p.real * q.imag - p.imag * q.real


def in_half_plane(z: complex) -> bool:
    return half_plane_area(z) > HALF_PLANE_TOL


@dataclass(frozen=True)
class CriticalityReport:
    in_half_plane: bool
    o_circle: Optional[PlanarCircle]
    inv_dist_to_O: Optional[float]
    passes: bool
    center: complex = 0j


def criticality_check(params: MsParams, tau: float) -> CriticalityReport:
    o = orthogonal_circle(params.a)
    moved = flowed_circle(params, tau)
    inside = in_half_plane(moved.center)
    to_o = inv_dist_plane(moved, o)
    return CriticalityReport(inside, o, to_o, inside and to_o > 0, moved.center)


def alpha(params: MsParams, t: float) -> float:
    """Half the angle the flowed circle subtends at the incenter."""
    s = state(params, t)
    dist = abs(s.z - INCENTER)
    if dist <= s.r:
        raise CenterInsideCircle(f"the incenter lies inside the flowed circle at t={t}")
    return math.asin(s.r / dist)


def _flow_parameter_of(params: MsParams, circle: PlanarCircle) -> float:
    """Flow time ``s`` with ``mu_s(C) = circle``, for a circle of the flowed family."""
    T = params.flow.conjugator
    w0 = apply_mobius(T, params.initial).center
    w1 = apply_mobius(T, circle).center
    kind = params.kind
    if kind is FamilyKind.TANGENT:
        s = (w0 - w1).imag
    elif kind is FamilyKind.INTERSECTING:
        s = math.log(abs(w1) / abs(w0))
    else:
        s = np.angle(w1 / w0)
    return params.flow.orientation * float(s)


def involution_partner(params: MsParams, t: float) -> float:
    o = orthogonal_circle(params.a)
    image = invert_in_circle(o, flowed_circle(params, t))
    s = _flow_parameter_of(params, image)
    if params.periodic:
        # representative in (t - pi, t + pi]
        s = t + math.remainder(s - t, TWO_PI)
    return s


def involution_fixed_point(params: MsParams, near: float, half_width: float = 0.5) -> float:
    g = lambda t: involution_partner(params, t) - t  # noqa: E731
    return float(optimize.brentq(g, near - half_width, near + half_width, xtol=1e-14))
