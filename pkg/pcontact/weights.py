"""
Weight Models and Sample Points

A fibre metric h on a line bundle is given on each chart by a weight phi,
|s|^2_h = |s|^2 e^{-phi}. Two smooth models are evaluable:

- flat: phi = 0
- fubini_study: phi = k * log(1 + sum |z_j|^2) on chart coordinates

Both come with closed-form first derivatives (d phi / d z_j) and the
complex Hessian (d^2 phi / d z_j d zbar_l) used by the numeric checks.

Sample points are rational, drawn on the 1/16 grid of [1/2, 2] (real and
imaginary parts) from numpy's default_rng, so every run is reproducible
from its seed.
"""

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from pcontact.atlas import BundleDescriptor, ChartId, ChartModel, Trivial, Twist, chart_to_json, transition_function
from pcontact.errors import RejectedInput
from pcontact.symcore import NumericForm, Scalar

GRID = 16
GRID_LOW, GRID_HIGH = 8, 32  # [1/2, 2] in sixteenths


class WeightKind(Enum):
    """Supported smooth weights"""
    FLAT = "flat"
    FUBINI_STUDY = "fubini_study"


@dataclass(frozen=True)
class WeightModel:
    """Local weight of a fibre metric"""
    kind: WeightKind = WeightKind.FLAT
    k: int = 0

    @classmethod
    def flat(cls) -> "WeightModel":
        return cls(WeightKind.FLAT, 0)

    @classmethod
    def fubini_study(cls, k: int) -> "WeightModel":
        return cls(WeightKind.FUBINI_STUDY, k)

    @classmethod
    def for_bundle(cls, bundle: BundleDescriptor) -> "WeightModel":
        """FS weight of O(k), flat weight of the trivial torus bundle"""
        if isinstance(bundle, Twist):
            return cls.fubini_study(bundle.k)
        if isinstance(bundle, Trivial):
            return cls.flat()
        raise RejectedInput(f"no canonical weight for {bundle}")

    def phi(self, point: Sequence[complex]) -> float:
        if self.kind == WeightKind.FLAT:
            return 0.0
        return self.k * math.log(1.0 + _norm2(point))

    def dphi(self, point: Sequence[complex]) -> np.ndarray:
        """(d phi / d z_j)_j"""
        z = np.asarray([complex(c) for c in point], dtype=complex)
        if self.kind == WeightKind.FLAT:
            return np.zeros(len(z), dtype=complex)
        return self.k * np.conj(z) / (1.0 + _norm2(point))

    def ddbar(self, point: Sequence[complex]) -> np.ndarray:
        """Hermitian matrix H_jl = d^2 phi / d z_j d zbar_l"""
        z = np.asarray([complex(c) for c in point], dtype=complex)
        n = len(z)
        if self.kind == WeightKind.FLAT:
            return np.zeros((n, n), dtype=complex)
        s = 1.0 + _norm2(point)
        return self.k * (np.eye(n) / s - np.outer(np.conj(z), z) / s ** 2)

    def dphi_form(self, point: Sequence[complex]) -> NumericForm:
        """d phi as a numeric (1,0)-form"""
        gradient = self.dphi(point)
        return NumericForm(len(gradient), 1, {(j,): gradient[j] for j in range(len(gradient))})

    def describe(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "k": self.k}


def _norm2(point: Sequence[complex]) -> float:
    return float(sum(abs(complex(c)) ** 2 for c in point))


def weight_gluing_residual(model: ChartModel, bundle: BundleDescriptor, weight: WeightModel,
                           point: Sequence, source: ChartId, target: ChartId) -> float:
    """|phi_source - phi_target - log|g_{source,target}|^2| at a point of the source chart"""
    moved = model.transform_point(source, target, point)
    g = transition_function(bundle, source, target).eval_at([complex(c) for c in moved])
    return abs(weight.phi(point) - weight.phi(moved) - math.log(abs(g) ** 2))


def sample_points(nvars: int, count: int, seed: int = 0) -> List[List[Scalar]]:
    """Deterministic rational points, every coordinate on the 1/16 grid of [1/2, 2] + i[1/2, 2]"""
    rng = np.random.default_rng(seed)
    grid = rng.integers(GRID_LOW, GRID_HIGH + 1, size=(count, nvars, 2))
    return [
        [Scalar(Fraction(int(re), GRID), Fraction(int(im), GRID)) for re, im in row]
        for row in grid
    ]


def as_complex(point: Sequence) -> List[complex]:
    return [complex(c) for c in point]


def render_point(point: Sequence) -> List[str]:
    return [c.render() if isinstance(c, Scalar) else repr(complex(c)) for c in point]


@dataclass
class PointSample:
    """One evaluated point of a numeric check"""
    index: int
    point: List[str]
    values: Dict[str, Any] = field(default_factory=dict)
    note: str = ""  # set when the point was skipped

    @property
    def skipped(self) -> bool:
        return bool(self.note)

    def to_dict(self) -> Dict[str, Any]:
        row = {"index": self.index, "point": self.point, "values": dict(self.values)}
        if self.note:
            row["note"] = self.note
        return row


@dataclass
class PointReport:
    """Per-point rows of a numeric check plus its summary"""
    check: str
    chart: Any
    weight: Optional[WeightModel] = None
    rows: List[PointSample] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    holds: bool = True

    @property
    def evaluated(self) -> List[PointSample]:
        return [r for r in self.rows if not r.skipped]

    def max_value(self, key: str) -> float:
        return max((float(r.values[key]) for r in self.evaluated), default=0.0)

    def min_value(self, key: str) -> float:
        return min((float(r.values[key]) for r in self.evaluated), default=0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "chart": chart_to_json(self.chart),
            "weight": None if self.weight is None else self.weight.describe(),
            "holds": self.holds,
            "summary": dict(self.summary),
            "skipped": sum(1 for r in self.rows if r.skipped),
            "rows": [r.to_dict() for r in self.rows],
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)
