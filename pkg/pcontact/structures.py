"""
Structures - p-contact and s-symplectic sections

Verification and construction of bundle-valued holomorphic structures:

- A p-contact structure is an L-valued (p,0)-form G on a (2p+1)-fold with
  G ^ dG nowhere zero (p odd).
- An s-symplectic structure is an L-valued (s,0)-form W on a 2s-fold with
  W ^ W nowhere zero (s even).

Key Operations:
- is_p_contact / is_s_symplectic: gluing, parity and the nonzero-constant rule
- construct_pn / contact_power / product_structure: the explicit constructions
- quadratic_T / quadratic_S: the degree-2 maps on a space of sections
- no_contact_check_at, volume_form_at, metric_independence_at: numeric checks
"""

import cmath
import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence

from pcontact.atlas import (
    ChartId,
    ExternalTensor,
    GlueStatus,
    Product,
    Projective,
    Section,
    Torus,
    Trivial,
    Twist,
    anticanonical_bundle,
    chart_to_json,
    glue_check,
    make_section,
    pullback,
    verified,
)
from pcontact.cohomology import section_from_homogeneous
from pcontact.errors import PContactError, PoleError, RejectedInput
from pcontact.symcore import (
    Form,
    LaurentPoly,
    NumericForm,
    Scalar,
    del_op,
    eval_at,
    wedge,
    wedge_power,
)
from pcontact.weights import PointReport, PointSample, WeightModel, as_complex, render_point

log = logging.getLogger(__name__)

NUMERIC_ZERO = 1e-12


class StructureVerdict(Enum):
    """Outcome of a structure predicate"""
    P_CONTACT = "p_contact"
    S_SYMPLECTIC = "s_symplectic"
    FAILS = "fails"


class FailureReason(Enum):
    """Why a predicate failed"""
    DIMENSION = "dimension"                          # degree does not fit the model dimension
    PARITY = "parity"                                # p even / s odd
    GLUING = "gluing"
    ZERO_TOP_FORM = "zero top form"
    POLAR_TOP_FORM = "non-polynomial top coefficient"
    VANISHING_TOP_FORM = "top coefficient has zeros"


@dataclass(frozen=True)
class ParityChecks:
    """Degree and dimension arithmetic of a structure"""
    kind: str            # "p_contact" or "s_symplectic"
    degree: int
    dim: int
    degree_fits: bool    # n = 2p+1 or n = 2s
    degree_parity: bool  # p odd or s even
    dim_residue: int     # n mod 4: 3 for p-contact, 0 for s-symplectic

    @property
    def holds(self) -> bool:
        return self.degree_fits and self.degree_parity

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "degree": self.degree,
            "dim": self.dim,
            "degree_fits": self.degree_fits,
            "degree_parity": self.degree_parity,
            "dim_mod_4": self.dim_residue,
        }


@dataclass
class StructureReport:
    """Verdict of is_p_contact / is_s_symplectic with the chart-constant table"""
    verdict: StructureVerdict
    parity_checks: ParityChecks
    top_form_constants: Dict[ChartId, Scalar] = field(default_factory=dict)
    bundle_root_check: bool = False  # L^2 = -K
    glue_status: GlueStatus = GlueStatus.UNVERIFIED
    reason: Optional[FailureReason] = None
    chart: Optional[ChartId] = None
    witness: Optional[str] = None
    polar_charts: List[ChartId] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.verdict != StructureVerdict.FAILS

    def constants(self) -> List[Scalar]:
        return list(self.top_form_constants.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "reason": None if self.reason is None else self.reason.value,
            "chart": None if self.chart is None else chart_to_json(self.chart),
            "witness": self.witness,
            "parity_checks": self.parity_checks.to_dict(),
            "bundle_root_check": self.bundle_root_check,
            "glue_status": self.glue_status.value,
            "top_form_constants": [
                {"chart": chart_to_json(c), "constant": value.render()}
                for c, value in self.top_form_constants.items()
            ],
            "polar_charts": [chart_to_json(c) for c in self.polar_charts],
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def save_to_file(self, filepath: str):
        with open(filepath, "w", encoding="utf-8") as f:
            f.write(self.to_json())


# ============================================================================
# Predicates
# ============================================================================

def _contact_top(form: Form) -> Form:
    return wedge(form, del_op(form))


def _symplectic_top(form: Form) -> Form:
    return wedge(form, form)


def _decide(s: Section, checks: ParityChecks, success: StructureVerdict,
            top: Callable[[Form], Form], workers: int) -> StructureReport:
    """Shared body of the two predicates: gluing, then the per-chart constant rule"""
    report = StructureReport(
        StructureVerdict.FAILS,
        checks,
        bundle_root_check=s.bundle.power(2) == anticanonical_bundle(s.model),
        glue_status=s.glue_status,
    )
    if not checks.degree_fits:
        report.reason = FailureReason.DIMENSION
        return report
    if not checks.degree_parity:
        report.reason = FailureReason.PARITY
        return report

    if s.glue_status != GlueStatus.VERIFIED:
        cert = glue_check(s, workers)
        s = cert.section
        report.glue_status = cert.status
        if not cert.verified:
            failure = cert.failures[0]
            report.reason = FailureReason.GLUING
            report.chart = failure.source
            report.witness = failure.witness.render(s.names(failure.target))
            return report

    for chart in s.model.chart_ids():
        form = s.form(chart)
        if form.has_negative_exponents():
            report.polar_charts.append(chart)
        coefficient = top(form).top_coefficient()
        if coefficient.is_constant() and not coefficient.is_zero():
            report.top_form_constants[chart] = coefficient.constant_value()
            continue
        if report.reason is not None:
            continue
        report.chart = chart
        report.witness = coefficient.render(s.names(chart))
        if coefficient.is_zero():
            report.reason = FailureReason.ZERO_TOP_FORM
        elif not coefficient.is_polynomial():
            report.reason = FailureReason.POLAR_TOP_FORM
        else:
            report.reason = FailureReason.VANISHING_TOP_FORM

    if report.polar_charts:
        log.warning(f"Chart forms with poles inside their chart: {[chart_to_json(c) for c in report.polar_charts]}")
    if report.reason is None:
        report.verdict = success
    return report


def is_p_contact(s: Section, workers: int = 1) -> StructureReport:
    """
    Decide whether s is a p-contact structure.

    On every chart the top coefficient of G ^ dG must be a nonzero
    constant (a polynomial on C^n without zeros is constant). Unverified
    sections are glue-checked first.
    """
    n, p = s.dim, s.degree
    checks = ParityChecks("p_contact", p, n, n == 2 * p + 1, p % 2 == 1, n % 4)
    report = _decide(s, checks, StructureVerdict.P_CONTACT, _contact_top, workers)
    log.info(f"is_p_contact on {s.model}: {report.verdict.value}")
    return report


def is_s_symplectic(s: Section, workers: int = 1) -> StructureReport:
    """Decide whether s is an s-symplectic structure (W ^ W a nonzero constant per chart)"""
    n, deg = s.dim, s.degree
    checks = ParityChecks("s_symplectic", deg, n, n == 2 * deg, deg % 2 == 0, n % 4)
    report = _decide(s, checks, StructureVerdict.S_SYMPLECTIC, _symplectic_top, workers)
    log.info(f"is_s_symplectic on {s.model}: {report.verdict.value}")
    return report


def top_form_section(s: Section) -> Section:
    """The L^2-valued top-degree section (G ^ dG) or (W ^ W), chart by chart"""
    if s.dim == 2 * s.degree + 1:
        top = _contact_top
    elif s.dim == 2 * s.degree:
        top = _symplectic_top
    else:
        raise RejectedInput(f"degree {s.degree} is neither (n-1)/2 nor n/2 for n = {s.dim}")
    forms = {chart: top(s.form(chart)) for chart in s.model.chart_ids()}
    return make_section(s.model, s.bundle.power(2), s.dim, forms)


# ============================================================================
# Constructions
# ============================================================================

def construct_pn(n: int, workers: int = 1) -> Section:
    """
    The explicit O(p+1)-valued p-contact structure of P^n, n = 2p+1, p odd.

    Chart 0 carries G_0 = z_n dz_1^...^dz_p + dz_{p+1}^...^dz_{n-1};
    G_a = pullback(G_0) / g_{0a} on the other charts.
    """
    if n < 3 or n % 4 != 3:
        raise RejectedInput(f"n = {n}: the construction needs n = 2p+1 with p odd (n = 3 mod 4)")
    p = (n - 1) // 2
    model, bundle = Projective(n), Twist(n, p + 1)

    # chart 0 variables z_1..z_n sit at positions 0..n-1
    gamma0 = (
        Form.dz(n, *range(p)) * LaurentPoly.variable(n, n - 1)
        + Form.dz(n, *range(p, n - 1))
    )
    forms = {0: gamma0}
    for chart in model.chart_ids()[1:]:
        forms[chart] = pullback(gamma0, 0, chart, model) * bundle.transition(0, chart).inverse()

    cert = glue_check(make_section(model, bundle, p, forms), workers)
    if not cert.verified:
        raise PContactError(f"P^{n} construction failed to glue on {len(cert.failures)} chart pairs")
    log.info(f"[OK] Built the {p}-contact structure of P^{n} ({len(forms)} charts)")
    return cert.section


def contact_power(eta: Section, l: int, workers: int = 1) -> Section:
    """The F^{l+1}-valued p-contact candidate eta ^ (d eta)^l, p = 2l+1"""
    if eta.degree != 1:
        raise RejectedInput(f"contact_power needs a 1-form, got degree {eta.degree}")
    if l < 0:
        raise RejectedInput(f"l must be nonnegative, got {l}")
    if eta.dim != 4 * l + 3:
        raise RejectedInput(f"l = {l} needs dimension n = 2p+1 = {4 * l + 3}, model has {eta.dim}")
    eta = verified(eta, workers)
    if eta.glue_status != GlueStatus.VERIFIED:
        raise RejectedInput(f"eta does not glue: {eta.glue_failure.to_dict(eta.names(eta.glue_failure.target))}")
    if l == 0:
        return eta

    forms = {
        chart: wedge(eta.form(chart), wedge_power(del_op(eta.form(chart)), l))
        for chart in eta.model.chart_ids()
    }
    cert = glue_check(make_section(eta.model, eta.bundle.power(l + 1), 2 * l + 1, forms), workers)
    if not cert.verified:
        raise PContactError(f"contact power failed to glue on {len(cert.failures)} chart pairs")
    return cert.section


def product_structure(omega: Section, gamma: Section, workers: int = 1) -> Section:
    """
    G~ = pr_1^* W ^ pr_2^* G on Y x Z.

    W must be s-symplectic with s even and G p-contact with p odd; the
    result is (s+p)-contact with values in the external tensor bundle.
    """
    omega_report = is_s_symplectic(omega, workers)
    if not omega_report.holds:
        raise RejectedInput(f"first factor is not s-symplectic: {omega_report.reason.value}")
    gamma_report = is_p_contact(gamma, workers)
    if not gamma_report.holds:
        raise RejectedInput(f"second factor is not p-contact: {gamma_report.reason.value}")

    model = Product(omega.model, gamma.model)
    bundle = ExternalTensor(omega.bundle, gamma.bundle)
    total, offset = model.dim, omega.dim
    forms = {}
    for chart in model.chart_ids():
        left, right = chart
        forms[chart] = wedge(omega.form(left).embed(total, 0), gamma.form(right).embed(total, offset))
    cert = glue_check(make_section(model, bundle, omega.degree + gamma.degree, forms), workers)
    if not cert.verified:
        raise PContactError(f"product section failed to glue on {len(cert.failures)} chart pairs")
    return cert.section


def product_top_identity(omega: Section, gamma: Section, product: Section) -> bool:
    """G~ ^ dG~ == pr_1^*(W ^ W) ^ pr_2^*(G ^ dG) on every product chart"""
    tops = top_form_section(product)
    total, offset = product.dim, omega.dim
    for left, right in product.model.chart_ids():
        w, g = omega.form(left), gamma.form(right)
        expected = wedge(wedge(w, w).embed(total, 0), _contact_top(g).embed(total, offset))
        if tops.form((left, right)) != expected:
            return False
    return True


def standard_contact_section(n: int) -> Section:
    """O(2)-valued contact form of P^n from sum x_{2i} dx_{2i+1} - x_{2i+1} dx_{2i}"""
    if n < 1 or n % 2 == 0:
        raise RejectedInput(f"P^{n}: the standard contact form needs n odd")
    N = n + 1
    eta = Form.zero(N, 1)
    for i in range(0, N, 2):
        eta = eta + Form.dz(N, i + 1) * LaurentPoly.variable(N, i) - Form.dz(N, i) * LaurentPoly.variable(N, i + 1)
    return section_from_homogeneous(eta, n, 2)


def standard_symplectic_torus(dim: int) -> Section:
    """W = dz1^dz2 + dz3^dz4 + ... on the torus of dimension 2s"""
    if dim < 2 or dim % 2:
        raise RejectedInput(f"torus dimension {dim} is not even")
    omega = Form.zero(dim, 2)
    for i in range(0, dim, 2):
        omega = omega + Form.dz(dim, i, i + 1)
    return make_section(Torus(dim), Trivial(dim), 2, {0: omega})


def contact_root_k(n: int) -> Optional[int]:
    """k with O(k)^{p+1} = -K_{P^n}: 2 for every odd n"""
    if n < 1:
        raise RejectedInput(f"P^{n} is not a projective space")
    return 2 if n % 2 == 1 else None


# ============================================================================
# Quadratic maps
# ============================================================================

@dataclass
class QuadraticForm:
    """Symmetric matrix of a homogeneous quadratic map on a basis of sections"""
    matrix: List[List[Scalar]]

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def is_symmetric(self) -> bool:
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(self.dim) for j in range(i))

    def evaluate(self, coords: Sequence) -> Scalar:
        """c^T M c"""
        coords = [Scalar.coerce(c) for c in coords]
        if len(coords) != self.dim:
            raise RejectedInput(f"expected {self.dim} coordinates, got {len(coords)}")
        total = Scalar(0)
        for i, ci in enumerate(coords):
            for j, cj in enumerate(coords):
                total = total + ci * cj * self.matrix[i][j]
        return total

    def to_dict(self) -> Dict[str, Any]:
        return {"dim": self.dim, "matrix": [[v.render() for v in row] for row in self.matrix]}


def _chart_zero_constant(s: Section, top: Callable[[Form], Form]) -> Scalar:
    chart = s.model.chart_ids()[0]
    coefficient = top(s.form(chart)).top_coefficient()
    if not coefficient.is_constant():
        raise RejectedInput(
            f"top coefficient on chart {chart_to_json(chart)} is not constant: {coefficient.render(s.names(chart))}"
        )
    return coefficient.constant_value()


def _polarize(basis: Sequence[Section], value: Callable[[Section], Scalar]) -> QuadraticForm:
    diagonal = [value(b) for b in basis]
    half = Scalar(1) / 2
    matrix = [[Scalar(0)] * len(basis) for _ in basis]
    for i in range(len(basis)):
        matrix[i][i] = diagonal[i]
        for j in range(i):
            entry = (value(basis[i] + basis[j]) - diagonal[i] - diagonal[j]) * half
            matrix[i][j] = matrix[j][i] = entry
    return QuadraticForm(matrix)


def quadratic_T(basis: Sequence[Section], workers: int = 1) -> QuadraticForm:
    """T(G) = chart-0 constant of G ^ dG, polarized over a basis of O(p+1)-valued sections"""
    checked = []
    for b in basis:
        if not isinstance(b.model, Projective) or b.dim != 2 * b.degree + 1:
            raise RejectedInput(f"T needs degree-p sections on P^(2p+1), got degree {b.degree} on {b.model}")
        if b.bundle != Twist(b.dim, b.degree + 1):
            raise RejectedInput(f"T needs O(p+1)-valued sections, got {b.bundle}")
        b = verified(b, workers)
        if b.glue_status != GlueStatus.VERIFIED:
            raise RejectedInput("T needs glue-verified sections")
        checked.append(b)
    return _polarize(checked, lambda s: _chart_zero_constant(s, _contact_top))


def quadratic_T_value(s: Section) -> Scalar:
    return _chart_zero_constant(s, _contact_top)


def quadratic_S(basis: Sequence[Section], workers: int = 1) -> QuadraticForm:
    """S(W) = chart-0 constant of W ^ W, the s-symplectic counterpart of T"""
    checked = []
    for b in basis:
        if b.dim != 2 * b.degree:
            raise RejectedInput(f"S needs degree-s sections on 2s-folds, got degree {b.degree} in dimension {b.dim}")
        b = verified(b, workers)
        if b.glue_status != GlueStatus.VERIFIED:
            raise RejectedInput("S needs glue-verified sections")
        checked.append(b)
    return _polarize(checked, lambda s: _chart_zero_constant(s, _symplectic_top))


# ============================================================================
# Numeric point checks
# ============================================================================

def _default_chart(s: Section, chart: Optional[ChartId]) -> ChartId:
    return s.model.chart_ids()[0] if chart is None else chart


def _embed_pair(form: NumericForm, n: int, conjugate: bool = False) -> NumericForm:
    """Place a (p,0)-form in the generator set dz_0..dz_{n-1}, dzbar_0..dzbar_{n-1}"""
    if conjugate:
        return form.conjugate().shifted(n, 2 * n)
    return form.shifted(0, 2 * n)


def _lebesgue_factor(n: int) -> complex:
    """dz_1^..^dz_n^dzbar_1^..^dzbar_n = sign * (-2i)^n dx_1 dy_1 ... dx_n dy_n"""
    sign = (-1) ** (n * (n - 1) // 2)
    return sign * (-2j) ** n


def no_contact_residual(s: Section, weight: WeightModel, point: Sequence, chart: Optional[ChartId] = None) -> float:
    """Largest coefficient of dG - dphi ^ G at a point"""
    chart = _default_chart(s, chart)
    form = s.form(chart)
    z = as_complex(point)
    gamma = eval_at(form, z)
    dgamma = eval_at(del_op(form), z)
    return (dgamma - weight.dphi_form(z).wedge(gamma)).norm()


def no_contact_check_at(s: Section, weight: WeightModel, points: Sequence[Sequence],
                        chart: Optional[ChartId] = None, tol: float = 1e-9) -> PointReport:
    """
    Test D'_h G = dG - dphi ^ G = 0 at each point.

    holds means the no-contact equation is satisfied at every evaluated
    point; a p-contact section fails it.
    """
    chart = _default_chart(s, chart)
    report = PointReport("no_contact", chart, weight)
    for index, point in enumerate(points):
        row = PointSample(index, render_point(point))
        try:
            row.values["residual"] = no_contact_residual(s, weight, point, chart)
        except PoleError as e:
            row.note = f"pole: {e}"
            log.warning(f"Skipping point {index}: {e}")
        report.rows.append(row)
    report.summary = {
        "max_residual": report.max_value("residual"),
        "min_residual": report.min_value("residual"),
        "tolerance": tol,
    }
    report.holds = report.max_value("residual") <= tol
    return report


def volume_form_at(s: Section, weight: WeightModel, point: Sequence, chart: Optional[ChartId] = None) -> float:
    """
    Density of i^{n^2} {G ^ dG, G ^ dG}_{h^2} against Lebesgue measure.

    With G ^ dG = c dz_1^...^dz_n this is 2^n |c|^2 e^{-2 phi}.
    """
    chart = _default_chart(s, chart)
    n = s.dim
    z = as_complex(point)
    c = _contact_top(s.form(chart)).top_coefficient().eval_at(z)
    value = (1j ** (n * n % 4)) * _lebesgue_factor(n) * abs(c) ** 2 * cmath.exp(-2 * weight.phi(z))
    return value.real


def volume_form_formula_at(s: Section, weight: WeightModel, point: Sequence, chart: Optional[ChartId] = None) -> float:
    """
    The same density from i d(G ^ Gbar e^{-phi}) ^ dbar(G ^ Gbar e^{-phi}).

    Both factors are expanded with the weight derivatives; the identity
    with volume_form_at holds for odd n.
    """
    chart = _default_chart(s, chart)
    n, p = s.dim, s.degree
    form = s.form(chart)
    z = as_complex(point)
    gamma = eval_at(form, z)
    dgamma = eval_at(del_op(form), z)
    dphi = weight.dphi_form(z)

    g, gbar = _embed_pair(gamma, n), _embed_pair(gamma, n, conjugate=True)
    dg, dgbar = _embed_pair(dgamma, n), _embed_pair(dgamma, n, conjugate=True)
    dp, dbarp = _embed_pair(dphi, n), _embed_pair(dphi, n, conjugate=True)
    g_gbar = g.wedge(gbar)
    scale = cmath.exp(-weight.phi(z))

    holomorphic = (dg.wedge(gbar) - dp.wedge(g_gbar)).scale(scale)
    antiholomorphic = (g.wedge(dgbar).scale((-1) ** p) - dbarp.wedge(g_gbar)).scale(scale)
    top = holomorphic.wedge(antiholomorphic).scale(1j)
    return (top.coefficient(range(2 * n)) * _lebesgue_factor(n)).real


def volume_check(s: Section, weight: WeightModel, points: Sequence[Sequence],
                 chart: Optional[ChartId] = None, rtol: float = 1e-6) -> PointReport:
    """Positivity of the volume density and agreement of its two expressions"""
    chart = _default_chart(s, chart)
    report = PointReport("volume", chart, weight)
    for index, point in enumerate(points):
        row = PointSample(index, render_point(point))
        try:
            local = volume_form_at(s, weight, point, chart)
            formula = volume_form_formula_at(s, weight, point, chart)
        except PoleError as e:
            row.note = f"pole: {e}"
            log.warning(f"Skipping point {index}: {e}")
        else:
            row.values = {
                "density": local,
                "formula": formula,
                "relative_difference": abs(local - formula) / max(abs(local), NUMERIC_ZERO),
            }
        report.rows.append(row)
    positive = all(r.values["density"] > 0 for r in report.evaluated)
    agreement = report.max_value("relative_difference")
    report.summary = {
        "min_density": report.min_value("density"),
        "max_relative_difference": agreement,
        "all_positive": positive,
        "tolerance": rtol,
    }
    report.holds = positive and agreement <= rtol
    return report


def metric_deviation(s: Section, weight: WeightModel, point: Sequence, chart: Optional[ChartId] = None) -> float:
    """
    |G ^ D'_h G - G ^ dG| relative to |G ^ dG| at a point.

    D'_h G = dG - dphi ^ G is built from the numeric values of G, dG and
    dphi; G ^ dG is the exact product evaluated at the point. The two agree
    for odd degree, where G ^ dphi ^ G cancels.
    """
    chart = _default_chart(s, chart)
    form = s.form(chart)
    z = as_complex(point)
    reference = eval_at(_contact_top(form), z)
    gamma = eval_at(form, z)
    connection = eval_at(del_op(form), z) - weight.dphi_form(z).wedge(gamma)
    difference = gamma.wedge(connection) - reference
    scale = reference.norm()
    return difference.norm() / scale if scale > NUMERIC_ZERO else difference.norm()


def metric_independence_at(s: Section, weights: Sequence[WeightModel], points: Sequence[Sequence],
                           chart: Optional[ChartId] = None, tol: float = 1e-9) -> List[PointReport]:
    """One report per weight, each row the deviation of G ^ D'_h G from G ^ dG"""
    chart = _default_chart(s, chart)
    reports = []
    for weight in weights:
        report = PointReport("metric_independence", chart, weight)
        for index, point in enumerate(points):
            row = PointSample(index, render_point(point))
            try:
                row.values["deviation"] = metric_deviation(s, weight, point, chart)
            except PoleError as e:
                row.note = f"pole: {e}"
            report.rows.append(row)
        report.summary = {"max_deviation": report.max_value("deviation"), "tolerance": tol}
        report.holds = report.max_value("deviation") <= tol
        reports.append(report)
    return reports


def print_structure_report(report: StructureReport):
    """Pretty print a structure report"""
    print("\n" + "=" * 70)
    print("STRUCTURE REPORT")
    print("=" * 70)
    print(f"\nVERDICT: {report.verdict.value.upper()}")
    if report.reason is not None:
        print(f"Reason: {report.reason.value} (chart {chart_to_json(report.chart)})")
        if report.witness:
            print(f"Witness: {report.witness}")
    checks = report.parity_checks
    print(f"\nDegree {checks.degree} on dimension {checks.dim} (n mod 4 = {checks.dim_residue})")
    print(f"Bundle square is anticanonical: {report.bundle_root_check}")
    print(f"Gluing: {report.glue_status.value}")
    if report.top_form_constants:
        print("\nChart constants:")
        for chart, value in report.top_form_constants.items():
            print(f"  {str(chart_to_json(chart)):>12}  {value.render()}")
    if report.polar_charts:
        print(f"\nCharts with poles: {[chart_to_json(c) for c in report.polar_charts]}")
    print("=" * 70)
