"""
Chart Atlas - models, line bundles, pullbacks and gluing verification

A global bundle-valued form is stored as one Form per chart. This module
knows the supported chart models, how chart coordinates change, the
transition functions of the supported line bundles, and how to verify
symbolically that the chart pieces glue.

Supported Models:
1. Projective(n) - charts 0..n, chart a has variables z_j = x_j/x_a, j != a
2. Torus(n) - one chart, constant-coefficient forms only
3. Product(left, right) - charts indexed by pairs, variables concatenated

Gluing Convention:
- For the ordered pair (a, b) the identity pullback(G_a, a -> b) = g_ab * G_b
  is checked in chart b's coordinates, with g_ab = (x_b / x_a)^k for O(k).

Section files are JSON with a versioned header and one term mapping per
chart, bodies in the canonical rendering of symcore.
"""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import product as cartesian
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from pcontact.errors import PoleError, RejectedInput, SectionFormatError
from pcontact.symcore import Form, LaurentPoly, Scalar, parse_form_terms, wedge

log = logging.getLogger(__name__)

ChartId = Union[int, Tuple[Any, Any]]

SECTION_FORMAT = "pcontact-section"
SECTION_VERSION = 1


# ============================================================================
# Chart models
# ============================================================================

@dataclass(frozen=True)
class Projective:
    """Complex projective space P^n with its n+1 standard charts"""
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise RejectedInput(f"P^{self.n}: dimension must be at least 1")

    @property
    def dim(self) -> int:
        return self.n

    def chart_ids(self) -> Tuple[int, ...]:
        return tuple(range(self.n + 1))

    def labels(self, chart: int) -> List[int]:
        """Homogeneous indices {0..n} minus the chart, in increasing order"""
        self._check(chart)
        return [j for j in range(self.n + 1) if j != chart]

    def variable_names(self, chart: int) -> List[str]:
        return [f"z{j}" for j in self.labels(chart)]

    def position(self, chart: int, label: int) -> int:
        """Variable position of homogeneous index `label` inside `chart`"""
        if label == chart:
            raise RejectedInput(f"index {label} is not a variable of chart {chart}")
        return label if label < chart else label - 1

    def coordinate_images(self, source: int, target: int) -> List[LaurentPoly]:
        """z_j^(source) = (x_j/x_target) / (x_source/x_target) in target variables"""
        self._check(source)
        self._check(target)
        n = self.n
        if source == target:
            return [LaurentPoly.variable(n, i) for i in range(n)]
        images = []
        for j in self.labels(source):
            exp = [0] * n
            if j != target:
                exp[self.position(target, j)] += 1
            exp[self.position(target, source)] -= 1
            images.append(LaurentPoly.monomial(exp))
        return images

    def transform_point(self, source: int, target: int, point: Sequence) -> List:
        self._check(source)
        self._check(target)
        if source == target:
            return list(point)
        homogeneous = {source: 1}
        for j, z in zip(self.labels(source), point):
            homogeneous[j] = z
        denominator = homogeneous[target]
        if denominator == 0:
            raise PoleError(self.position(source, target), f"point lies on the hyperplane x{target} = 0")
        return [homogeneous[j] / denominator for j in self.labels(target)]

    def describe(self) -> Dict[str, Any]:
        return {"kind": "projective", "n": self.n}

    def _check(self, chart):
        if chart not in self.chart_ids():
            raise RejectedInput(f"P^{self.n} has no chart {chart!r}")

    def __str__(self) -> str:
        return f"P^{self.n}"


@dataclass(frozen=True)
class Torus:
    """Flat complex torus C^n / lattice; a single chart"""
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise RejectedInput(f"torus dimension must be at least 1, got {self.n}")

    @property
    def dim(self) -> int:
        return self.n

    def chart_ids(self) -> Tuple[int, ...]:
        return (0,)

    def variable_names(self, chart: int) -> List[str]:
        self._check(chart)
        return [f"z{j}" for j in range(1, self.n + 1)]

    def coordinate_images(self, source: int, target: int) -> List[LaurentPoly]:
        self._check(source)
        self._check(target)
        return [LaurentPoly.variable(self.n, i) for i in range(self.n)]

    def transform_point(self, source: int, target: int, point: Sequence) -> List:
        self._check(source)
        self._check(target)
        return list(point)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "torus", "n": self.n}

    def _check(self, chart):
        if chart != 0:
            raise RejectedInput(f"a torus has the single chart 0, got {chart!r}")

    def __str__(self) -> str:
        return f"T^{self.n}"


@dataclass(frozen=True)
class Product:
    """Binary product; charts are pairs, left variables come first"""
    left: "ChartModel"
    right: "ChartModel"

    @property
    def dim(self) -> int:
        return self.left.dim + self.right.dim

    def chart_ids(self) -> Tuple[Tuple[Any, Any], ...]:
        return tuple(cartesian(self.left.chart_ids(), self.right.chart_ids()))

    def variable_names(self, chart) -> List[str]:
        a, b = self._split(chart)
        return [f"L{name}" for name in self.left.variable_names(a)] + [
            f"R{name}" for name in self.right.variable_names(b)
        ]

    def coordinate_images(self, source, target) -> List[LaurentPoly]:
        (a, b), (c, d) = self._split(source), self._split(target)
        total, offset = self.dim, self.left.dim
        return [img.embed(total, 0) for img in self.left.coordinate_images(a, c)] + [
            img.embed(total, offset) for img in self.right.coordinate_images(b, d)
        ]

    def transform_point(self, source, target, point: Sequence) -> List:
        (a, b), (c, d) = self._split(source), self._split(target)
        offset = self.left.dim
        return self.left.transform_point(a, c, point[:offset]) + self.right.transform_point(b, d, point[offset:])

    def describe(self) -> Dict[str, Any]:
        return {"kind": "product", "left": self.left.describe(), "right": self.right.describe()}

    def _split(self, chart) -> Tuple[Any, Any]:
        if not isinstance(chart, tuple) or len(chart) != 2:
            raise RejectedInput(f"product charts are pairs, got {chart!r}")
        return chart

    def __str__(self) -> str:
        return f"{self.left} x {self.right}"


ChartModel = Union[Projective, Torus, Product]


def _require_mapping(value, field_name: str) -> Mapping[str, Any]:
    if not isinstance(value, Mapping):
        raise SectionFormatError(field_name, f"expected a JSON object, got {type(value).__name__}")
    return value


def model_from_dict(data: Mapping[str, Any], field_name: str = "model") -> ChartModel:
    kind = _require_mapping(data, field_name).get("kind")
    if kind == "projective":
        return Projective(int(data["n"]))
    if kind == "torus":
        return Torus(int(data["n"]))
    if kind == "product":
        return Product(
            model_from_dict(data["left"], f"{field_name}.left"),
            model_from_dict(data["right"], f"{field_name}.right"),
        )
    raise RejectedInput(f"unknown chart model kind {kind!r}")


def transform_point(model: ChartModel, source: ChartId, target: ChartId, point: Sequence) -> List:
    """The same geometric point in another chart's coordinates"""
    return model.transform_point(source, target, point)


# ============================================================================
# Line bundles
# ============================================================================

@dataclass(frozen=True)
class Twist:
    """O(k) on P^n"""
    n: int
    k: int

    @property
    def base_dim(self) -> int:
        return self.n

    def transition(self, source: int, target: int) -> LaurentPoly:
        """g_{source,target} = (x_target/x_source)^k in target-chart variables"""
        charts = range(self.n + 1)
        if source not in charts or target not in charts:
            raise RejectedInput(f"O({self.k}) on P^{self.n} has no chart pair ({source!r}, {target!r})")
        if source == target or self.k == 0:
            return LaurentPoly.one(self.n)
        position = source if source < target else source - 1
        return LaurentPoly.variable(self.n, position, -self.k)

    def power(self, m: int) -> "Twist":
        return Twist(self.n, self.k * m)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "twist", "n": self.n, "k": self.k}

    def __str__(self) -> str:
        return f"O({self.k})"


@dataclass(frozen=True)
class Trivial:
    """Trivial bundle on a torus"""
    n: int

    @property
    def base_dim(self) -> int:
        return self.n

    def transition(self, source, target) -> LaurentPoly:
        if source != 0 or target != 0:
            raise RejectedInput(f"trivial torus bundle has no chart pair ({source!r}, {target!r})")
        return LaurentPoly.one(self.n)

    def power(self, m: int) -> "Trivial":
        return self

    def describe(self) -> Dict[str, Any]:
        return {"kind": "trivial", "n": self.n}

    def __str__(self) -> str:
        return "O"


@dataclass(frozen=True)
class ExternalTensor:
    """pr_1^* L (x) pr_2^* F on a product"""
    left: "BundleDescriptor"
    right: "BundleDescriptor"

    @property
    def base_dim(self) -> int:
        return self.left.base_dim + self.right.base_dim

    def transition(self, source, target) -> LaurentPoly:
        if not (isinstance(source, tuple) and isinstance(target, tuple)):
            raise RejectedInput(f"external tensor transitions need chart pairs, got {source!r}, {target!r}")
        total, offset = self.base_dim, self.left.base_dim
        g_left = self.left.transition(source[0], target[0]).embed(total, 0)
        g_right = self.right.transition(source[1], target[1]).embed(total, offset)
        return g_left * g_right

    def power(self, m: int) -> "ExternalTensor":
        return ExternalTensor(self.left.power(m), self.right.power(m))

    def describe(self) -> Dict[str, Any]:
        return {"kind": "external", "left": self.left.describe(), "right": self.right.describe()}

    def __str__(self) -> str:
        return f"{self.left} [x] {self.right}"


BundleDescriptor = Union[Twist, Trivial, ExternalTensor]


def bundle_from_dict(data: Mapping[str, Any], field_name: str = "bundle") -> BundleDescriptor:
    kind = _require_mapping(data, field_name).get("kind")
    if kind == "twist":
        return Twist(int(data["n"]), int(data["k"]))
    if kind == "trivial":
        return Trivial(int(data["n"]))
    if kind == "external":
        return ExternalTensor(
            bundle_from_dict(data["left"], f"{field_name}.left"),
            bundle_from_dict(data["right"], f"{field_name}.right"),
        )
    raise RejectedInput(f"unknown bundle kind {kind!r}")


def bundle_matches(model: ChartModel, bundle: BundleDescriptor) -> bool:
    if isinstance(model, Projective):
        return isinstance(bundle, Twist) and bundle.n == model.n
    if isinstance(model, Torus):
        return isinstance(bundle, Trivial) and bundle.n == model.n
    if isinstance(model, Product):
        return (
            isinstance(bundle, ExternalTensor)
            and bundle_matches(model.left, bundle.left)
            and bundle_matches(model.right, bundle.right)
        )
    return False


def anticanonical_bundle(model: ChartModel) -> BundleDescriptor:
    """-K: O(n+1) on P^n, trivial on a torus, external tensor on products"""
    if isinstance(model, Projective):
        return Twist(model.n, model.n + 1)
    if isinstance(model, Torus):
        return Trivial(model.n)
    return ExternalTensor(anticanonical_bundle(model.left), anticanonical_bundle(model.right))


def transition_function(bundle: BundleDescriptor, source: ChartId, target: ChartId) -> LaurentPoly:
    """g_{source,target} expressed in the target chart's coordinates"""
    return bundle.transition(source, target)


# ============================================================================
# Pullback
# ============================================================================

def pullback(form: Form, source: ChartId, target: ChartId, model: ChartModel) -> Form:
    """
    Rewrite a form in source-chart variables in target-chart variables.

    Coefficients are substituted, differentials expanded by the chain rule.
    """
    if source == target:
        return form
    n = model.dim
    if form.nvars != n:
        raise RejectedInput(f"form has {form.nvars} variables, chart has {n}")
    images = model.coordinate_images(source, target)
    differentials = [Form(n, 1, {(j,): image.diff(j) for j in range(n)}) for image in images]
    frames: Dict[Tuple[int, ...], Form] = {}
    result = Form.zero(n, form.degree)
    for index, poly in form.coeffs.items():
        if index not in frames:
            frame = Form.function(LaurentPoly.one(n))
            for i in index:
                frame = wedge(frame, differentials[i])
            frames[index] = frame
        result = result + frames[index] * poly.substitute(images, n)
    return result


# ============================================================================
# Sections
# ============================================================================

class GlueStatus(Enum):
    """Gluing state of a section"""
    UNVERIFIED = "unverified"
    VERIFIED = "verified"
    FAILED = "failed"


@dataclass(frozen=True)
class OverlapCheck:
    """One ordered chart pair of a gluing verification"""
    source: ChartId
    target: ChartId
    holds: bool
    witness: Optional[Form] = None  # pullback(G_source) - g * G_target when nonzero

    def to_dict(self, names: Optional[Sequence[str]] = None) -> Dict[str, Any]:
        return {
            "overlap": [chart_to_json(self.source), chart_to_json(self.target)],
            "holds": self.holds,
            "witness": None if self.witness is None else self.witness.render(names),
        }


@dataclass(frozen=True)
class Section:
    """A bundle-valued (p,0)-form given by its chart pieces"""
    model: ChartModel
    bundle: BundleDescriptor
    degree: int
    chart_forms: Mapping[ChartId, Form]
    glue_status: GlueStatus = GlueStatus.UNVERIFIED
    glue_failure: Optional[OverlapCheck] = None

    @property
    def dim(self) -> int:
        return self.model.dim

    def form(self, chart: ChartId) -> Form:
        return self.chart_forms[chart]

    def names(self, chart: ChartId) -> List[str]:
        return self.model.variable_names(chart)

    def __add__(self, other: "Section") -> "Section":
        if (self.model, self.bundle, self.degree) != (other.model, other.bundle, other.degree):
            raise RejectedInput("sections live on different models, bundles or degrees")
        forms = {c: self.chart_forms[c] + other.chart_forms[c] for c in self.model.chart_ids()}
        both = self.glue_status == other.glue_status == GlueStatus.VERIFIED
        return Section(self.model, self.bundle, self.degree, forms,
                       GlueStatus.VERIFIED if both else GlueStatus.UNVERIFIED)

    def scaled(self, factor) -> "Section":
        """Constant multiple; gluing is preserved"""
        factor = Scalar.coerce(factor)
        forms = {c: f * factor for c, f in self.chart_forms.items()}
        status = self.glue_status if self.glue_status == GlueStatus.VERIFIED else GlueStatus.UNVERIFIED
        return Section(self.model, self.bundle, self.degree, forms, status)

    def render(self) -> Dict[str, str]:
        return {str(chart_to_json(c)): f.render(self.names(c)) for c, f in self.chart_forms.items()}


def make_section(model: ChartModel, bundle: BundleDescriptor, degree: int,
                 chart_forms: Mapping[ChartId, Form]) -> Section:
    """Validate shapes and build an unverified Section"""
    if not bundle_matches(model, bundle):
        raise RejectedInput(f"bundle {bundle} does not live on {model}")
    if not 0 <= degree <= model.dim:
        raise RejectedInput(f"degree {degree} impossible on a {model.dim}-dimensional model")
    charts = model.chart_ids()
    missing = [c for c in charts if c not in chart_forms]
    extra = [c for c in chart_forms if c not in charts]
    if missing or extra:
        raise RejectedInput(f"chart forms mismatch: missing {missing}, unknown {extra}")
    forms: Dict[ChartId, Form] = {}
    for chart in charts:
        form = chart_forms[chart]
        if form.nvars != model.dim:
            raise RejectedInput(f"chart {chart!r}: form has {form.nvars} variables, model has {model.dim}")
        if form.degree != degree:
            raise RejectedInput(f"chart {chart!r}: form has degree {form.degree}, section degree is {degree}")
        if isinstance(model, Torus) and not form.has_constant_coefficients():
            raise RejectedInput(f"torus forms must have constant coefficients: {form.render()}")
        forms[chart] = form
    return Section(model, bundle, degree, forms)


@dataclass(frozen=True)
class GluingCertificate:
    """Outcome of glue_check over every ordered chart pair"""
    section: Section
    status: GlueStatus
    overlaps: List[OverlapCheck] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.status == GlueStatus.VERIFIED

    @property
    def failures(self) -> List[OverlapCheck]:
        return [o for o in self.overlaps if not o.holds]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "pairs_checked": len(self.overlaps),
            "failures": [o.to_dict(self.section.names(o.target)) for o in self.failures],
        }


def check_overlap(s: Section, source: ChartId, target: ChartId) -> OverlapCheck:
    moved = pullback(s.chart_forms[source], source, target, s.model)
    expected = s.chart_forms[target] * transition_function(s.bundle, source, target)
    difference = moved - expected
    if difference.is_zero():
        return OverlapCheck(source, target, True)
    return OverlapCheck(source, target, False, difference)


def glue_check(s: Section, workers: int = 1) -> GluingCertificate:
    """
    Verify G_source = g_{source,target} G_target on every ordered chart pair.

    Failure is an outcome, never an exception; the returned certificate
    carries the section with its updated glue_status.
    """
    charts = s.model.chart_ids()
    pairs = [(a, b) for a in charts for b in charts if a != b]
    log.info(f"Checking gluing of a degree-{s.degree} {s.bundle}-valued section on {s.model}: {len(pairs)} ordered pairs")

    if workers > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            overlaps = list(pool.map(lambda pair: check_overlap(s, *pair), pairs))
    else:
        overlaps = [check_overlap(s, a, b) for a, b in pairs]

    failures = [o for o in overlaps if not o.holds]
    if failures:
        log.warning(f"Gluing failed on {len(failures)} of {len(pairs)} ordered pairs")
        updated = replace(s, glue_status=GlueStatus.FAILED, glue_failure=failures[0])
        return GluingCertificate(updated, GlueStatus.FAILED, overlaps)
    updated = replace(s, glue_status=GlueStatus.VERIFIED, glue_failure=None)
    return GluingCertificate(updated, GlueStatus.VERIFIED, overlaps)


def verified(s: Section, workers: int = 1) -> Section:
    """Return s with gluing checked if it was not already verified"""
    if s.glue_status == GlueStatus.VERIFIED:
        return s
    return glue_check(s, workers).section


# ============================================================================
# Section files
# ============================================================================

def chart_to_json(chart: ChartId):
    if isinstance(chart, tuple):
        return [chart_to_json(c) for c in chart]
    return chart


def chart_from_json(value) -> ChartId:
    if isinstance(value, list):
        return tuple(chart_from_json(v) for v in value)
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    raise RejectedInput(f"not a chart id: {value!r}")


def section_to_dict(s: Section) -> Dict[str, Any]:
    return {
        "format": SECTION_FORMAT,
        "version": SECTION_VERSION,
        "model": s.model.describe(),
        "bundle": s.bundle.describe(),
        "degree": s.degree,
        "glue_status": s.glue_status.value,
        "charts": [
            {
                "chart": chart_to_json(chart),
                "variables": s.names(chart),
                "terms": s.chart_forms[chart].to_mapping(s.names(chart)),
            }
            for chart in s.model.chart_ids()
        ],
    }


def dumps_section(s: Section) -> str:
    return json.dumps(section_to_dict(s), indent=2, sort_keys=True) + "\n"


def save_section(s: Section, filepath: str):
    """Write a section file"""
    with open(filepath, "w", encoding="utf-8") as f:
        f.write(dumps_section(s))


def section_from_dict(data: Mapping[str, Any]) -> Section:
    """Read a section file body; loaded sections are always unverified"""
    if not isinstance(data, Mapping):
        raise SectionFormatError("header", "section file must hold a JSON object")
    if data.get("format") != SECTION_FORMAT:
        raise SectionFormatError("header", f"format must be {SECTION_FORMAT!r}")
    if data.get("version") != SECTION_VERSION:
        raise SectionFormatError("header", f"unsupported version {data.get('version')!r}")
    model_data = _require_mapping(data.get("model"), "model")
    bundle_data = _require_mapping(data.get("bundle"), "bundle")
    entries = data.get("charts")
    if not isinstance(entries, list):
        raise SectionFormatError("charts", f"expected a JSON array, got {type(entries).__name__}")
    try:
        model = model_from_dict(model_data)
        bundle = bundle_from_dict(bundle_data)
        degree = int(data["degree"])
    except SectionFormatError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise SectionFormatError("header", f"missing or invalid field: {e}")

    forms: Dict[ChartId, Form] = {}
    for position, entry in enumerate(entries):
        entry = _require_mapping(entry, f"charts[{position}]")
        try:
            chart = chart_from_json(entry["chart"])
        except (KeyError, RejectedInput) as e:
            raise SectionFormatError(f"charts[{position}]", f"invalid chart entry: {e}")
        terms = _require_mapping(entry.get("terms"), f"charts[{position}].terms")
        try:
            names = model.variable_names(chart)
        except RejectedInput as e:
            raise SectionFormatError(f"chart {chart_to_json(chart)}", str(e))
        form = Form.zero(model.dim, degree)
        for label, body in terms.items():
            try:
                form = form + parse_form_terms({label: body}, names, degree)
            except (ValueError, TypeError, AttributeError) as e:
                raise SectionFormatError(f"chart {chart_to_json(chart)}, term {label}", str(e))
        forms[chart] = form
    try:
        return make_section(model, bundle, degree, forms)
    except RejectedInput as e:
        raise SectionFormatError("charts", str(e))


def loads_section(text: str) -> Section:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SectionFormatError(f"line {e.lineno}, column {e.colno}", e.msg)
    return section_from_dict(data)


def load_section(filepath: str) -> Section:
    """Read a section file"""
    with open(filepath, "r", encoding="utf-8") as f:
        return loads_section(f.read())
