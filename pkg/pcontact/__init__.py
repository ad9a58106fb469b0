"""
p-contact Structure Engine
Exact symbolic verification of holomorphic p-contact and s-symplectic structures

Chart-local forms over Gaussian rationals, gluing certificates on projective
spaces, tori and their products, cohomology vanishing certificates and a
pointwise curvature lab.
"""

__version__ = "1.0.0"

from .errors import PContactError, RejectedInput, PoleError, SectionFormatError
from .config import EngineConfig
from .symcore import (
    Scalar, LaurentPoly, Form, NumericForm,
    wedge, wedge_power, del_op, contract, euler_field, eval_at, eval_exact, normalize,
    parse_laurent,
)
from .atlas import (
    Projective, Torus, Product, Twist, Trivial, ExternalTensor,
    Section, GlueStatus, GluingCertificate,
    make_section, pullback, transition_function, transform_point, glue_check,
    load_section, save_section,
)
from .weights import WeightModel, sample_points
from .structures import (
    StructureReport, StructureVerdict, QuadraticForm,
    is_p_contact, is_s_symplectic, construct_pn, contact_power, product_structure,
    quadratic_T, quadratic_S, no_contact_check_at, volume_form_at, metric_independence_at,
)
from .cohomology import (
    ZSpaceBasis, VanishingCertificate,
    zspace_basis, dehomogenize, bott_vanishing, hypersurface_certificate, spin_root_k,
)
from .curvature import (
    Spectrum, PointFrame,
    curvature_op_apply, m_positive, contact_pairing_value, scalar_curvature, fs_frame, load_frame,
    kernel_rank_at, directsum_at,
)
from .certificate import Certificate, emit, parse_certificate

__all__ = [
    # Errors and configuration
    "PContactError",
    "RejectedInput",
    "PoleError",
    "SectionFormatError",
    "EngineConfig",

    # Symbolic core
    "Scalar",
    "LaurentPoly",
    "Form",
    "NumericForm",
    "wedge",
    "wedge_power",
    "del_op",
    "contract",
    "euler_field",
    "eval_at",
    "eval_exact",
    "normalize",
    "parse_laurent",

    # Atlas
    "Projective",
    "Torus",
    "Product",
    "Twist",
    "Trivial",
    "ExternalTensor",
    "Section",
    "GlueStatus",
    "GluingCertificate",
    "make_section",
    "pullback",
    "transition_function",
    "transform_point",
    "glue_check",
    "load_section",
    "save_section",
    "WeightModel",
    "sample_points",

    # Structures
    "StructureReport",
    "StructureVerdict",
    "QuadraticForm",
    "is_p_contact",
    "is_s_symplectic",
    "construct_pn",
    "contact_power",
    "product_structure",
    "quadratic_T",
    "quadratic_S",
    "no_contact_check_at",
    "volume_form_at",
    "metric_independence_at",

    # Cohomology
    "ZSpaceBasis",
    "VanishingCertificate",
    "zspace_basis",
    "dehomogenize",
    "bott_vanishing",
    "hypersurface_certificate",
    "spin_root_k",

    # Curvature
    "Spectrum",
    "PointFrame",
    "curvature_op_apply",
    "m_positive",
    "contact_pairing_value",
    "scalar_curvature",
    "fs_frame",
    "load_frame",
    "kernel_rank_at",
    "directsum_at",

    # Certificates
    "Certificate",
    "emit",
    "parse_certificate",
]
