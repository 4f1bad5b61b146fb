"""Edge-labeled triangulations and spherical polyhedral metrics built from packing radii."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

from .errors import InvalidFace, UndefinedLength
from .inversive import PlanarCircle, inv_dist_plane, inv_dist_sphere

TANGENT_TOL = 1e-12
FLAT_TOL = 1e-6


def edge_key(p: str, q: str) -> frozenset:
    return frozenset((p, q))


@dataclass(frozen=True)
class EdgeLabeledTriangulation:
    """Closed oriented triangulation of the sphere with a label on every edge.

    ``faces`` are vertex triples in their positive cyclic order.
    """

    vertices: tuple
    faces: tuple
    labels: dict = field(hash=False)

    def __post_init__(self):
        directed = {}
        for face in self.faces:
            for i in range(3):
                arc = (face[i], face[(i + 1) % 3])
                if arc in directed:
                    raise ValueError(f"edge {arc} traversed twice in the same direction")
                directed[arc] = face
        for p, q in directed:
            if (q, p) not in directed:
                raise ValueError(f"edge {p}{q} lies in only one face")
        edges = {edge_key(p, q) for p, q in directed}
        if set(self.labels) != edges:
            raise ValueError("labels must be given on exactly the edges of the triangulation")
        if len(self.vertices) - len(edges) + len(self.faces) != 2:
            raise ValueError("V - E + F != 2: not a triangulation of the sphere")

    @property
    def edges(self) -> list:
        return sorted(tuple(sorted(e)) for e in self.labels)

    def beta(self, p: str, q: str) -> float:
        return self.labels[edge_key(p, q)]

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.labels) + len(self.faces)

    def non_edges(self) -> list:
        return [
            (p, q) for p, q in itertools.combinations(self.vertices, 2)
            if edge_key(p, q) not in self.labels
        ]


# Oriented counterclockwise as seen from outside the sphere in the lifted construction.
OCTAHEDRON_FACES = (
    ("w", "v", "u"),
    ("v'", "w'", "u'"),
    ("w'", "u", "v"),
    ("u'", "v", "w"),
    ("v'", "w", "u"),
    ("u'", "w'", "v"),
    ("v'", "u'", "w"),
    ("w'", "v'", "u"),
)


def octahedron(a: float, b: float, c: float, d: float) -> EdgeLabeledTriangulation:
    """Ma-Schlenker octahedron: ``a`` on face uvw, ``d`` on face w'v'u', teepee alternating b, c."""
    labels = {
        edge_key("u", "v"): a, edge_key("v", "w"): a, edge_key("w", "u"): a,
        edge_key("u'", "v'"): d, edge_key("v'", "w'"): d, edge_key("w'", "u'"): d,
        edge_key("w'", "u"): b, edge_key("u'", "v"): b, edge_key("v'", "w"): b,
        edge_key("w'", "v"): c, edge_key("u'", "w"): c, edge_key("v'", "u"): c,
    }
    return EdgeLabeledTriangulation(("u", "v", "w", "u'", "v'", "w'"), OCTAHEDRON_FACES, labels)


@dataclass(frozen=True)
class LengthFunction:
    lengths: dict = field(hash=False)

    def __getitem__(self, edge) -> float:
        return self.lengths[edge_key(*edge)]


def length_function(k: EdgeLabeledTriangulation, radii: dict) -> LengthFunction:
    lengths = {}
    for p, q in k.edges:
        ru, rv = radii[p], radii[q]
        arg = math.cos(ru) * math.cos(rv) - k.beta(p, q) * math.sin(ru) * math.sin(rv)
        if not abs(arg) < 1.0:
            raise UndefinedLength((p, q), arg)
        lengths[edge_key(p, q)] = math.acos(arg)
    ell = LengthFunction(lengths)
    for face in k.faces:
        sides = [ell[(face[i], face[(i + 1) % 3])] for i in range(3)]
        for i in range(3):
            if not sides[i] < sides[(i + 1) % 3] + sides[(i + 2) % 3]:
                raise InvalidFace(face, f"strict triangle inequality fails for side {i}")
        if not sum(sides) < 2 * math.pi:
            raise InvalidFace(face, f"perimeter {sum(sides)} >= 2 pi")
    return ell


def corner_angle(opposite: float, adj1: float, adj2: float) -> float:
    """Spherical triangle angle from its three sides, half-angle form."""
    s = (opposite + adj1 + adj2) / 2
    num = math.sin(s - adj1) * math.sin(s - adj2)
    den = math.sin(s) * math.sin(s - opposite)
    return 2 * math.atan(math.sqrt(num / den))


@dataclass(frozen=True)
class VertexAngleReport:
    sums: dict = field(hash=False)
    singular: tuple = ()

    @property
    def flat(self) -> bool:
        return not self.singular


def angle_sums(k: EdgeLabeledTriangulation, ell: LengthFunction, tol: float = FLAT_TOL) -> VertexAngleReport:
    sums = dict.fromkeys(k.vertices, 0.0)
    for face in k.faces:
        for i in range(3):
            v, p, q = face[i], face[(i + 1) % 3], face[(i + 2) % 3]
            sums[v] += corner_angle(ell[(p, q)], ell[(v, p)], ell[(v, q)])
    singular = tuple(v for v in k.vertices if abs(sums[v] - 2 * math.pi) > tol)
    return VertexAngleReport(sums, singular)


class EdgeClass(str, enum.Enum):
    DEEP_OVERLAP = "deep_overlap"
    OVERLAP = "overlap"
    TANGENT = "tangent"
    SEPARATED = "separated"


def edge_class(beta: float) -> EdgeClass:
    if abs(beta - 1.0) <= TANGENT_TOL:
        return EdgeClass.TANGENT
    if beta < 0:
        return EdgeClass.DEEP_OVERLAP
    if beta < 1:
        return EdgeClass.OVERLAP
    return EdgeClass.SEPARATED


@dataclass(frozen=True)
class LabelSummary:
    per_edge: dict = field(hash=False)
    edge_segregated: bool = True
    edge_separated: bool = False

    @property
    def deep_overlaps(self) -> list:
        return [e for e, cls in self.per_edge.items() if cls is EdgeClass.DEEP_OVERLAP]


def classify_labels(k: EdgeLabeledTriangulation) -> LabelSummary:
    per_edge = {e: edge_class(k.beta(*e)) for e in k.edges}
    betas = [k.beta(*e) for e in k.edges]
    return LabelSummary(per_edge, all(b >= 0 for b in betas), all(b > 1 for b in betas))


def is_segregated(circles) -> bool:
    """True iff every pair of companion disks overlaps by at most pi/2 (up to round-off).

    Accepts a mapping of planar or spherical circles, or any object with a
    ``circles`` mapping (configurations and realizations).
    """
    circles = getattr(circles, "circles", circles)
    values = list(circles.values()) if hasattr(circles, "values") else list(circles)
    for c1, c2 in itertools.combinations(values, 2):
        dist = inv_dist_plane if isinstance(c1, PlanarCircle) else inv_dist_sphere
        if dist(c1, c2) < -TANGENT_TOL:
            return False
    return True
