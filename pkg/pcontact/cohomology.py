"""
Cohomology - twisted holomorphic forms on projective space

H^{p,0}(P^n, O(k)) is computed as the kernel of the Euler contraction on
Lambda^p V* (x) S^{k-p} V*, V = C^{n+1}. Vanishing of H^{p,q}(P^N, O(k))
is decided by the four Bott-type cases, and the hypersurface procedure
chains these into a full certificate that a smooth odd-degree hypersurface
X in P^{n+1} has H^{p,0}(X, O_X(k)) = 0 for the only twist k a p-contact
structure could use.

Key Operations:
- zspace_basis: exact kernel basis of the Euler contraction
- dehomogenize / section_from_homogeneous: chart forms and Sections
- bott_vanishing: first applicable case (a)-(d) with re-checked conditions
- hypersurface_certificate: restriction sequence, injection chain, endgame
- spin_root_k: square root of -K on P^n
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, combinations_with_replacement
from typing import Any, Dict, List, Optional, Sequence, Tuple

import sympy as sp

from pcontact.atlas import Projective, Section, Twist, make_section
from pcontact.errors import RejectedInput
from pcontact.linalg import exact_nullspace, integral_vector
from pcontact.symcore import Form, LaurentPoly, MultiIndex, Scalar, contract, euler_field

log = logging.getLogger(__name__)


# ============================================================================
# H^{p,0}(P^n, O(k)) via the Euler contraction
# ============================================================================

@dataclass
class ZSpaceBasis:
    """Kernel of the Euler contraction on Lambda^p V* (x) S^{k-p} V*"""
    n: int
    p: int
    k: int
    basis: List[Form] = field(default_factory=list)  # forms in n+1 homogeneous variables
    ambient_dim: int = 0
    rank: int = 0

    @property
    def dim(self) -> int:
        return len(self.basis)

    def names(self) -> List[str]:
        return [f"x{j}" for j in range(self.n + 1)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "p": self.p,
            "k": self.k,
            "dimension": self.dim,
            "ambient_dimension": self.ambient_dim,
            "contraction_rank": self.rank,
            "basis": [form.render(self.names()) for form in self.basis],
        }


def monomials(nvars: int, degree: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of total degree `degree`, lexicographic (x0^d first)"""
    result = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exp = [0] * nvars
        for i in combo:
            exp[i] += 1
        result.append(tuple(exp))
    return result


def zspace_basis(n: int, p: int, k: int, column_order: Optional[Sequence[int]] = None) -> ZSpaceBasis:
    """
    Solve xi _| alpha = 0 exactly on the monomial basis.

    Args:
        n: projective dimension
        p: form degree
        k: twist
        column_order: optional permutation of the ambient basis (the
            dimension does not depend on it)

    Returns:
        ZSpaceBasis with integer-scaled kernel vectors
    """
    if n < 1 or p < 0:
        raise RejectedInput(f"need n >= 1 and p >= 0, got n={n}, p={p}")
    if k < p or p > n + 1:
        return ZSpaceBasis(n, p, k)

    N = n + 1
    columns: List[Tuple[MultiIndex, Tuple[int, ...]]] = [
        (index, exp) for index in combinations(range(N), p) for exp in monomials(N, k - p)
    ]
    if column_order is not None:
        if sorted(column_order) != list(range(len(columns))):
            raise RejectedInput("column_order must be a permutation of the ambient basis")
        columns = [columns[i] for i in column_order]

    elements = [Form(N, p, {index: LaurentPoly.monomial(exp)}) for index, exp in columns]
    if p == 0:
        kernel = [[Scalar(1) if i == j else Scalar(0) for i in range(len(columns))] for j in range(len(columns))]
        rank = 0
    else:
        xi = euler_field(N)
        rows: Dict[Tuple[MultiIndex, Tuple[int, ...]], Dict[int, Scalar]] = {}
        for col, element in enumerate(elements):
            for index, poly in contract(xi, element).coeffs.items():
                for exp, coeff in poly.terms.items():
                    rows.setdefault((index, exp), {})[col] = coeff
        matrix = [[row.get(c, Scalar(0)) for c in range(len(columns))] for _, row in sorted(rows.items())]
        kernel = exact_nullspace(matrix, len(columns))
        rank = len(columns) - len(kernel)

    basis = []
    for vector in kernel:
        vector = integral_vector(vector)
        alpha = Form.zero(N, p)
        for coeff, element in zip(vector, elements):
            if coeff:
                alpha = alpha + element * coeff
        basis.append(alpha)
    log.info(f"Z^({p},{k}) on P^{n}: ambient {len(columns)}, rank {rank}, kernel {len(basis)}")
    return ZSpaceBasis(n, p, k, basis, len(columns), rank)


def dehomogenize(alpha: Form, chart: int) -> Form:
    """Set x_chart = 1 and dx_chart = 0; the rest become chart variables"""
    N = alpha.nvars
    n = N - 1
    if not 0 <= chart < N:
        raise RejectedInput(f"P^{n} has no chart {chart}")
    images = [
        LaurentPoly.one(n) if j == chart else LaurentPoly.variable(n, j if j < chart else j - 1)
        for j in range(N)
    ]
    coeffs = {}
    for index, poly in alpha.coeffs.items():
        if chart in index:
            continue
        new_index = tuple(i if i < chart else i - 1 for i in index)
        coeffs[new_index] = coeffs.get(new_index, LaurentPoly.zero(n)) + poly.substitute(images, n)
    return Form(n, alpha.degree, coeffs)


def section_from_homogeneous(alpha: Form, n: int, k: int) -> Section:
    """O(k)-valued section of P^n whose chart pieces are the dehomogenizations of alpha"""
    if alpha.nvars != n + 1:
        raise RejectedInput(f"homogeneous form has {alpha.nvars} variables, P^{n} needs {n + 1}")
    if not all(poly.is_homogeneous(k - alpha.degree) for poly in alpha.coeffs.values()):
        raise RejectedInput(f"coefficients must be homogeneous of degree k - p = {k - alpha.degree}")
    model = Projective(n)
    forms = {chart: dehomogenize(alpha, chart) for chart in model.chart_ids()}
    return make_section(model, Twist(n, k), alpha.degree, forms)


def h0_projective(n: int, k: int) -> int:
    """dim H^0(P^n, O(k))"""
    return int(sp.binomial(n + k, n)) if k >= 0 else 0


def euler_sequence_count(n: int) -> int:
    """h^0(O(1)^{n+1}) - h^0(O(2)), the expected dim of Z^(1,2) on P^n"""
    return (n + 1) * h0_projective(n, 1) - h0_projective(n, 2)


def spin_root_k(n: int) -> Optional[int]:
    """k with O(k)^2 = O(n+1) = -K_{P^n}; None when n is even"""
    if n < 1:
        raise RejectedInput(f"P^{n} is not a projective space")
    return (n + 1) // 2 if n % 2 == 1 else None


# ============================================================================
# Vanishing certificates
# ============================================================================

class Justification(Enum):
    """Why a step holds"""
    CASE_A = "case (a)"
    CASE_B = "case (b)"
    CASE_C = "case (c)"
    CASE_D = "case (d)"
    DEGREE_OUT_OF_RANGE = "degree out of range"
    ARITHMETIC = "arithmetic"
    RESTRICTION_SEQUENCE = "restriction-sequence"
    INJECTION_CHAIN = "injection-chain"
    AKIZUKI_NAKANO = "Akizuki-Nakano"
    KODAIRA = "Kodaira"
    NOT_COVERED = "not covered"


class Verdict(Enum):
    VANISHES = "vanishes"
    NOT_COVERED = "not_covered"


@dataclass(frozen=True)
class CohomologyGroup:
    """H^q(space, sheaf^{form_degree}(twist)) = H^{form_degree,q} when the sheaf is Omega of the space"""
    space: str
    form_degree: int
    q: int
    twist: int
    sheaf: str = "Omega"

    def label(self) -> str:
        return f"H^{self.q}({self.space}, {self.sheaf}^{self.form_degree}({self.twist}))"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "space": self.space,
            "sheaf": self.sheaf,
            "form_degree": self.form_degree,
            "q": self.q,
            "twist": self.twist,
        }


@dataclass
class VanishingStep:
    """One audited line of a certificate"""
    group: Optional[CohomologyGroup]
    justification: Justification
    checks: List[str] = field(default_factory=list)
    holds: bool = True
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": None if self.group is None else self.group.to_dict(),
            "label": "" if self.group is None else self.group.label(),
            "justification": self.justification.value,
            "checks": list(self.checks),
            "holds": self.holds,
            "note": self.note,
        }

    def __repr__(self):
        status = "OK" if self.holds else "OPEN"
        where = self.group.label() if self.group else self.note
        return f"[{status}] {where} -- {self.justification.value}: {'; '.join(self.checks)}"


@dataclass
class VanishingCertificate:
    """Target group, audited steps and overall verdict"""
    target: CohomologyGroup
    steps: List[VanishingStep] = field(default_factory=list)
    verdict: Verdict = Verdict.NOT_COVERED
    parameters: Dict[str, int] = field(default_factory=dict)

    @property
    def open_steps(self) -> List[VanishingStep]:
        return [s for s in self.steps if not s.holds]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target": self.target.to_dict(),
            "target_label": self.target.label(),
            "parameters": dict(self.parameters),
            "verdict": self.verdict.value,
            "steps": [s.to_dict() for s in self.steps],
        }


def _fmt(condition: str, value: bool) -> str:
    return f"{condition} [{'true' if value else 'false'}]"


def bott_vanishing(p: int, q: int, k: int, N: int) -> VanishingStep:
    """
    H^{p,q}(P^N, O(k)) = 0 by the first applicable case:

    (a) q not in {0, p, N}
    (b) q = 0, k <= p, (k, p) != (0, 0)
    (c) p = q not in {0, N}, k != 0
    (d) q = N, k >= p - N, (k, p) != (0, N)

    Degrees outside [0, N] vanish trivially. Otherwise not covered.
    """
    group = CohomologyGroup(f"P^{N}", p, q, k)
    if not (0 <= p <= N and 0 <= q <= N):
        return VanishingStep(group, Justification.DEGREE_OUT_OF_RANGE, [
            _fmt(f"0 <= p = {p} <= {N}", 0 <= p <= N),
            _fmt(f"0 <= q = {q} <= {N}", 0 <= q <= N),
        ])
    if q not in (0, p, N):
        return VanishingStep(group, Justification.CASE_A, [_fmt(f"q = {q} not in {{0, {p}, {N}}}", True)])
    if q == 0 and k <= p and (k, p) != (0, 0):
        return VanishingStep(group, Justification.CASE_B, [
            _fmt("q = 0", True),
            _fmt(f"k = {k} <= p = {p}", True),
            _fmt(f"(k, p) = ({k}, {p}) != (0, 0)", True),
        ])
    if p == q and q not in (0, N) and k != 0:
        return VanishingStep(group, Justification.CASE_C, [
            _fmt(f"p = q = {q} not in {{0, {N}}}", True),
            _fmt(f"k = {k} != 0", True),
        ])
    if q == N and k >= p - N and (k, p) != (0, N):
        return VanishingStep(group, Justification.CASE_D, [
            _fmt(f"q = N = {N}", True),
            _fmt(f"k = {k} >= p - N = {p - N}", True),
            _fmt(f"(k, p) = ({k}, {p}) != (0, {N})", True),
        ])
    return VanishingStep(group, Justification.NOT_COVERED, [f"p = {p}, q = {q}, k = {k}, N = {N}"], holds=False)


def hypersurface_twist(n: int, d: int) -> int:
    """k = p + 1 + (1 - d)/2 for n = 2p + 1"""
    return (n - 1) // 2 + 1 + (1 - d) // 2


def hypersurface_certificate(n: int, d: int) -> VanishingCertificate:
    """
    Certify H^{p,0}(X, O_X(k)) = 0 for a smooth degree-d hypersurface X in P^{n+1}.

    Step 1 reduces to H^{0,p}(X, O_X(k - pd)) through the injection chain
    given the middle vanishings; Step 2 gets each middle vanishing from the
    restriction sequence and two Bott vanishings on P^{n+1}.
    """
    if n % 4 != 3:
        raise RejectedInput(f"n = {n}: p-contact dimensions satisfy n = 3 mod 4")
    if d == 1:
        raise RejectedInput("d = 1: X is a copy of P^n, which carries the explicit p-contact construction")
    if d < 1 or d % 2 == 0:
        raise RejectedInput(f"d = {d}: the degree must be odd (X must be spin)")
    if d > n:
        raise RejectedInput(f"d = {d} > n = {n}: X is not covered (Fano requires d <= n here)")

    p = (n - 1) // 2
    k = hypersurface_twist(n, d)
    N = n + 1
    target = CohomologyGroup("X", p, 0, k, "Omega_X")
    cert = VanishingCertificate(target, parameters={"n": n, "d": d, "p": p, "k": k, "N": N})
    log.info(f"[1/3] Hypersurface of degree {d} in P^{N}: p = {p}, k = {k}")

    cert.steps.append(VanishingStep(None, Justification.ARITHMETIC, [
        _fmt(f"n = 2p + 1 with p = {p} odd", n == 2 * p + 1 and p % 2 == 1),
        _fmt(f"k = p + 1 + (1 - d)/2 = {k}", 2 * k == 2 * (p + 1) + 1 - d),
        _fmt(f"-K_X = O_X(n + 2 - d) = O_X({n + 2 - d}) = O_X(2k)", n + 2 - d == 2 * k),
        _fmt(f"Fano: n + 2 - d = {n + 2 - d} > 0", n + 2 - d > 0),
    ], note="preliminaries"))

    # Step 2: middle groups from the restriction sequence
    log.info(f"[2/3] Restriction sequence on P^{N}: {2 * p} Bott steps")
    middle_holds = []
    for i in range(p):
        first = bott_vanishing(p - i, i, k - i * d, N)
        second = bott_vanishing(p - i, i + 1, k - (i + 1) * d, N)
        cert.steps.extend([first, second])
        holds = first.holds and second.holds
        middle_holds.append(holds)
        cert.steps.append(VanishingStep(
            CohomologyGroup("X", p - i, i, k - i * d, "Omega_P|X"),
            Justification.RESTRICTION_SEQUENCE,
            [_fmt(f"{first.group.label()} = 0", first.holds), _fmt(f"{second.group.label()} = 0", second.holds)],
            holds,
        ))

    # Step 1: injection chain H^i(X, Omega^{p-i}_X(k-id)) -> H^{i+1}(X, Omega^{p-i-1}_X(k-(i+1)d))
    log.info(f"[3/3] Injection chain of length {p} and endgame")
    for i in range(p):
        source = CohomologyGroup("X", p - i, i, k - i * d, "Omega_X")
        image = CohomologyGroup("X", p - i - 1, i + 1, k - (i + 1) * d, "Omega_X")
        cert.steps.append(VanishingStep(
            source,
            Justification.INJECTION_CHAIN,
            [_fmt(f"H^{i}(X, Omega_P|X^{p - i}({k - i * d})) = 0", middle_holds[i]),
             f"injects into {image.label()}"],
            middle_holds[i],
        ))

    last = k - p * d
    end = CohomologyGroup("X", 0, p, last, "Omega_X")
    if last < 0:
        cert.steps.append(VanishingStep(end, Justification.AKIZUKI_NAKANO, [
            _fmt(f"k - pd = {last} < 0", True),
            _fmt(f"0 + p = {p} < n = {n}", p < n),
        ], p < n))
    else:
        ample = n + 2 - d + last
        cert.steps.append(VanishingStep(end, Justification.KODAIRA, [
            _fmt(f"k - pd = {last} >= 0", True),
            _fmt(f"-K_X + O_X(k - pd) = O_X({ample}) ample", ample > 0),
            _fmt(f"n + p = {n + p} > n = {n}", True),
        ], ample > 0))

    cert.verdict = Verdict.VANISHES if all(s.holds for s in cert.steps) else Verdict.NOT_COVERED
    if cert.verdict != Verdict.VANISHES:
        log.warning(f"{len(cert.open_steps)} certificate steps are not covered")
    return cert


def print_vanishing_certificate(cert: VanishingCertificate):
    """Pretty print a certificate"""
    print("\n" + "=" * 70)
    print(f"VANISHING CERTIFICATE: {cert.target.label()}")
    print("=" * 70)
    for key, value in cert.parameters.items():
        print(f"  {key} = {value}")
    print()
    for i, step in enumerate(cert.steps, 1):
        print(f"{i:3d}. {step}")
    print(f"\nVERDICT: {cert.verdict.value.upper()}")
    print("=" * 70)
