"""
Curvature - pointwise spectra, positivity and contraction kernels

Numeric lab for the curvature side of the vanishing arguments. Everything
is evaluated in the frame where the Kahler metric is the identity and the
curvature of the line bundle is diagonal, iTheta = sum lambda_j idz_j^dzbar_j.

Key Operations:
- curvature_op_apply: eigenvalue factor sum_J + sum_K - sum_all on (J,K) components
- m_positive / dual_positivity: sums of the m smallest eigenvalues
- contact_pairing_value: -sum_J lambda_{C_J} |G_J|^2
- scalar_curvature / spectrum_from_frame / fs_frame / load_frame: frame data at a point
- kernel_rank_at / directsum_at: pointwise kernels of the contraction maps

The dual bundle flips every eigenvalue; callers negate spectra explicitly.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from pcontact.atlas import ChartId, Section
from pcontact.errors import PoleError, RejectedInput
from pcontact.linalg import DEFAULT_RTOL, exact_rank, numeric_rank
from pcontact.symcore import MultiIndex, Scalar, check_multi_index, del_op, eval_at, eval_exact
from pcontact.weights import PointReport, PointSample, WeightKind, WeightModel, as_complex, render_point

log = logging.getLogger(__name__)

HERMITIAN_ATOL = 1e-12

Real = Union[int, float, Fraction]


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of iTheta_h(L) with respect to the metric, ascending"""
    values: Tuple[Real, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(sorted(self.values)))

    @property
    def n(self) -> int:
        return len(self.values)

    def negated(self) -> "Spectrum":
        """Spectrum of the dual bundle"""
        return Spectrum(tuple(-v for v in self.values))

    def subset_sum(self, indices: Sequence[int]) -> Real:
        return sum((self.values[i] for i in indices), 0)

    def to_dict(self) -> Dict[str, Any]:
        return {"values": [str(v) if isinstance(v, Fraction) else v for v in self.values]}


def parse_spectrum(text: str) -> Spectrum:
    """Read eigenvalues separated by commas or whitespace; rationals like 3/2 are exact"""
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise RejectedInput("empty spectrum")
    values: List[Real] = []
    for token in tokens:
        try:
            values.append(Fraction(token))
        except ValueError:
            raise RejectedInput(f"not a real number: {token!r}")
    return Spectrum(tuple(values))


def _check_index(index: Sequence[int], n: int) -> MultiIndex:
    return check_multi_index(index, len(index), n)


def curvature_op_apply(spec: Spectrum, components: Mapping[Tuple[MultiIndex, MultiIndex], Any]) -> Dict[Tuple[MultiIndex, MultiIndex], Any]:
    """Multiply the dz_J ^ dzbar_K component by sum_J lambda + sum_K lambda - sum_all lambda"""
    n = spec.n
    total = spec.subset_sum(range(n))
    result = {}
    for (J, K), value in components.items():
        J, K = _check_index(J, n), _check_index(K, n)
        factor = spec.subset_sum(J) + spec.subset_sum(K) - total
        result[(J, K)] = value * factor
    return result


def m_positive(spec: Spectrum, m: int) -> bool:
    """Sum of any m eigenvalues is >= 0, i.e. the m smallest"""
    if not 1 <= m <= spec.n:
        raise RejectedInput(f"m = {m} outside 1..{spec.n}")
    return spec.subset_sum(range(m)) >= 0


def dual_positivity(spec: Spectrum, p: int) -> bool:
    """(n-p)-positivity of the dual bundle: m_positive(-spec, n-p)"""
    return m_positive(spec.negated(), spec.n - p)


def _abs2(value) -> Real:
    if isinstance(value, Scalar):
        return value.abs2()
    if isinstance(value, (int, Fraction)):
        return Fraction(value) ** 2
    return abs(complex(value)) ** 2


def contact_pairing_value(spec: Spectrum, gamma_components: Mapping[MultiIndex, Any], p: int) -> Real:
    """-sum_J lambda_{C_J} |G_J|^2, C_J the complement of J"""
    n = spec.n
    total = spec.subset_sum(range(n))
    value: Real = 0
    for J, component in gamma_components.items():
        J = _check_index(J, n)
        if len(J) != p:
            raise RejectedInput(f"component {J} does not have length p = {p}")
        complement = total - spec.subset_sum(J)
        value -= complement * _abs2(component)
    return value


# ============================================================================
# Frames
# ============================================================================

@dataclass
class PointFrame:
    """Metric and curvature matrices at one point"""
    point: List[complex]
    metric: np.ndarray
    curvature: np.ndarray
    weight: Optional[WeightModel] = None
    dphi: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))

    def __post_init__(self):
        self.metric = np.asarray(self.metric, dtype=complex)
        self.curvature = np.asarray(self.curvature, dtype=complex)
        n = len(self.metric)
        if self.metric.shape != (n, n) or self.curvature.shape != (n, n):
            raise RejectedInput(f"metric {self.metric.shape} and curvature {self.curvature.shape} must be square of equal size")
        if not np.allclose(self.metric, self.metric.conj().T, atol=HERMITIAN_ATOL):
            raise RejectedInput("metric is not Hermitian")
        if not np.allclose(self.curvature, self.curvature.conj().T, atol=HERMITIAN_ATOL):
            raise RejectedInput("curvature is not Hermitian")
        _cholesky(self.metric)

    @property
    def n(self) -> int:
        return len(self.metric)


def _cholesky(metric: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.cholesky(metric)
    except np.linalg.LinAlgError:
        raise RejectedInput("metric is not positive definite")


def scalar_curvature(frame: PointFrame) -> float:
    """(1/2pi) trace(metric^{-1} curvature)"""
    _cholesky(frame.metric)
    trace = np.trace(np.linalg.solve(frame.metric, frame.curvature))
    return float(trace.real) / (2 * math.pi)


def spectrum_from_frame(frame: PointFrame) -> Spectrum:
    """Generalized eigenvalues of (curvature, metric) via the Cholesky reduction"""
    L = _cholesky(frame.metric)
    L_inv = np.linalg.inv(L)
    reduced = L_inv @ frame.curvature @ L_inv.conj().T
    reduced = (reduced + reduced.conj().T) / 2
    return Spectrum(tuple(float(v) for v in np.linalg.eigvalsh(reduced)))


def load_frame(filepath: str) -> PointFrame:
    """
    Read a metric and curvature frame from a plain-text matrix file.

    2n rows of n entries, the metric rows first; complex entries are written
    like 1+2j and # starts a comment.
    """
    try:
        data = np.loadtxt(filepath, dtype=complex, comments="#", ndmin=2)
    except ValueError as e:
        raise RejectedInput(f"{filepath}: {e}")
    rows, n = data.shape
    if n == 0 or rows != 2 * n:
        raise RejectedInput(f"{filepath}: expected 2n rows of n entries (metric, then curvature), got {rows}x{n}")
    return PointFrame([0j] * n, data[:n], data[n:])


def fs_frame(n: int, k: int, point: Sequence) -> PointFrame:
    """Fubini-Study metric, curvature k * i ddbar log(1+|z|^2) and d phi of O(k)"""
    z = as_complex(point)
    if len(z) != n:
        raise RejectedInput(f"point has {len(z)} coordinates, P^{n} charts have {n}")
    weight = WeightModel.fubini_study(k)
    metric = WeightModel.fubini_study(1).ddbar(z)
    return PointFrame(z, metric, weight.ddbar(z), weight, weight.dphi(z))


# ============================================================================
# Contraction kernels
# ============================================================================

def _contraction_matrix(coeffs: Mapping[MultiIndex, Any], n: int, zero) -> Dict[MultiIndex, List[Any]]:
    """Rows of xi -> xi _| G keyed by the (p-1)-index, one column per d/dz_j"""
    rows: Dict[MultiIndex, List[Any]] = {}
    for index, value in coeffs.items():
        for position, var in enumerate(index):
            key = index[:position] + index[position + 1:]
            row = rows.setdefault(key, [zero] * n)
            row[var] = row[var] + (value if position % 2 == 0 else -value)
    return rows


def _is_exact_point(point: Sequence) -> bool:
    return all(isinstance(c, (Scalar, int, Fraction)) for c in point)


def kernel_rank_at(s: Section, point: Sequence, chart: Optional[ChartId] = None, rtol: float = DEFAULT_RTOL) -> int:
    """
    dim ker(xi -> xi _| G) at a point of the chart.

    Exact at points with Scalar coordinates, SVD with relative
    threshold rtol otherwise. Raises PoleError at a pole.
    """
    chart = s.model.chart_ids()[0] if chart is None else chart
    form = s.form(chart)
    n = form.nvars
    if form.degree == 0:
        return n
    if _is_exact_point(point):
        rows = _contraction_matrix(eval_exact(form, point), n, Scalar(0))
        return n - exact_rank(list(rows.values()), n)
    values = eval_at(form, as_complex(point))
    rows = _contraction_matrix(values.coeffs, n, 0j)
    return n - numeric_rank(np.array(list(rows.values())) if rows else np.zeros((0, n)), rtol)


def directsum_at(s: Section, weight: WeightModel, point: Sequence, chart: Optional[ChartId] = None,
                 rtol: float = DEFAULT_RTOL) -> int:
    """
    dim(F ^ G) with F = ker(xi _| G) and G = ker(xi _| D'_h G), D'_h G = dG - dphi ^ G.

    A flat weight at an exact point is solved exactly through dG alone.
    """
    chart = s.model.chart_ids()[0] if chart is None else chart
    form = s.form(chart)
    n = form.nvars
    if form.degree == 0:
        return n
    derivative = del_op(form)

    if weight.kind == WeightKind.FLAT and _is_exact_point(point):
        stacked = list(_contraction_matrix(eval_exact(form, point), n, Scalar(0)).values())
        stacked += list(_contraction_matrix(eval_exact(derivative, point), n, Scalar(0)).values())
        return n - exact_rank(stacked, n)

    z = as_complex(point)
    gamma = eval_at(form, z)
    twisted = eval_at(derivative, z) - weight.dphi_form(z).wedge(gamma)
    stacked = list(_contraction_matrix(gamma.coeffs, n, 0j).values())
    stacked += list(_contraction_matrix(twisted.coeffs, n, 0j).values())
    matrix = np.array(stacked) if stacked else np.zeros((0, n))
    return n - numeric_rank(matrix, rtol)


def kernel_report(s: Section, points: Sequence[Sequence], chart: Optional[ChartId] = None,
                  weight: Optional[WeightModel] = None, rtol: float = DEFAULT_RTOL) -> PointReport:
    """
    kernel_rank_at (no weight) or directsum_at (with weight) over a batch of points.

    holds when every evaluated point reports 0.
    """
    chart = s.model.chart_ids()[0] if chart is None else chart
    check = "kernel_rank" if weight is None else "directsum"
    report = PointReport(check, chart, weight)
    for index, point in enumerate(points):
        row = PointSample(index, render_point(point))
        try:
            if weight is None:
                row.values["kernel"] = kernel_rank_at(s, point, chart, rtol)
            else:
                row.values["intersection"] = directsum_at(s, weight, point, chart, rtol)
        except PoleError as e:
            row.note = f"pole: {e}"
            log.warning(f"Skipping point {index}: {e}")
        report.rows.append(row)
    key = "kernel" if weight is None else "intersection"
    report.summary = {f"max_{key}": int(report.max_value(key)), f"min_{key}": int(report.min_value(key))}
    report.holds = all(r.values[key] == 0 for r in report.evaluated)
    return report


def scalar_curvature_report(n: int, k: int, points: Sequence[Sequence], tol: float = 1e-9) -> PointReport:
    """Scalar curvature of Fubini-Study frames of O(k); holds when constant across points"""
    report = PointReport("scalar_curvature", 0, WeightModel.fubini_study(k))
    for index, point in enumerate(points):
        frame = fs_frame(n, k, point)
        report.rows.append(PointSample(index, render_point(point), {"scalar_curvature": scalar_curvature(frame)}))
    spread = report.max_value("scalar_curvature") - report.min_value("scalar_curvature")
    report.summary = {
        "min": report.min_value("scalar_curvature"),
        "max": report.max_value("scalar_curvature"),
        "spread": spread,
        "tolerance": tol,
    }
    report.holds = spread <= tol
    return report
