"""JSON run reports: case summaries and certified pairs.

Numbers are written with 12 significant digits and keys in a fixed order,
so identical runs give byte-identical files.
"""

from __future__ import annotations

import enum
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from .construction import CriticalityReport, ExtremaReport, MsParams
from .sphere import NonEquivalenceCertificate, PackingReport

SIG_DIGITS = 12
SCHEMA_VERSION = 1


@dataclass(frozen=True)
class CaseSpec:
    """Exactly one of ``a`` and ``y`` is given; ``kind`` disambiguates ``y``."""

    x1: float
    x2: float
    a: Optional[float] = None
    y: Optional[float] = None
    kind: str = "elliptic"

    def __post_init__(self):
        if (self.a is None) == (self.y is None):
            raise ValueError("give exactly one of a and y")
        if not 1.0 < self.x1 < self.x2:
            raise ValueError(f"need 1 < x1 < x2, got x1={self.x1}, x2={self.x2}")

    def params(self) -> MsParams:
        if self.a is not None:
            return MsParams(self.a, self.x1, self.x2)
        return MsParams.from_y(self.y, self.x1, self.x2, self.kind)


def rounded(x):
    """Recursively convert to JSON-ready values, floats kept to 12 significant digits."""
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, bool) or x is None or isinstance(x, (str, int)):
        return x
    if isinstance(x, complex):
        return [rounded(x.real), rounded(x.imag)]
    if isinstance(x, float) or hasattr(x, "__float__"):
        v = float(x)
        if not math.isfinite(v):
            return None
        return float(f"{v:.{SIG_DIGITS}g}")
    if isinstance(x, dict):
        return {str(k): rounded(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [rounded(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def spec_json(spec: CaseSpec, params: MsParams) -> dict:
    return {
        "a": params.a, "y": spec.y, "x1": spec.x1, "x2": spec.x2,
        "kind": params.kind.flow_name, "family": params.kind.value,
    }


def extrema_json(ex: ExtremaReport) -> dict:
    out = {"tau": ex.tau, "d_tau": ex.d_tau, "m": ex.m, "d_m": ex.d_m,
           "tau_prime": ex.tau_prime, "d_tau_prime": ex.d_tau_prime}
    if ex.M is not None:
        out.update({"M": ex.M, "d_M": ex.d_M, "omega": ex.omega})
    return out


def criticality_json(rep: CriticalityReport) -> dict:
    return {
        "passes": rep.passes,
        "in_half_plane": rep.in_half_plane,
        "inv_dist_to_O": rep.inv_dist_to_O,
        "center": rep.center,
        "O": None if rep.o_circle is None else {"center": rep.o_circle.center, "radius": rep.o_circle.radius},
    }


def packing_json(rep: PackingReport) -> dict:
    return {
        "passes": rep.passes,
        "is_realization": rep.is_realization,
        "non_antipodal": rep.non_antipodal,
        "non_great_circle": rep.non_great_circle,
        "triangulates": rep.triangulates,
        "total_area": rep.total_area,
        "face_signs": {"".join(face): s for face, s in rep.face_signs.items()},
        "crossings": len(rep.crossings),
    }


def certificate_json(cert: NonEquivalenceCertificate) -> dict:
    return {
        "verdict": cert.verdict,
        "edge_labels_match": cert.edge_labels_match,
        "diagonals_1": list(cert.diagonal_multiset_1),
        "diagonals_2": list(cert.diagonal_multiset_2),
        "separation": cert.separation,
    }


@dataclass
class RunReport:
    command: str
    data: dict = field(default_factory=dict)
    exit_code: int = 0

    def to_json(self) -> str:
        body = {"schema_version": SCHEMA_VERSION, "command": self.command, **self.data, "exit_code": self.exit_code}
        return json.dumps(rounded(body), indent=2, ensure_ascii=False) + "\n"


def atomic_write(path, text: str) -> None:
    """Write through a temporary file in the target directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_schema() -> dict:
    return json.loads(resources.files("msoct").joinpath("report_schema.json").read_text())
