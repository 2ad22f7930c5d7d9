"""Shape-derivative calculus for cosine boundary fields and the constant audits."""
from .audits import (
    audit_lemma7_bootstrap,
    audit_lemma8_constants,
    audit_lemma9_constants,
    audit_lemma11_constants,
    audit_section6_simplifications,
    audit_tangent,
    bootstrap_map,
)
from .fields import (
    BoundaryField,
    SecondVariation,
    alpha_and_w0dd,
    dv0,
    dv0_coefficient,
    field_x1,
    field_x2,
    field_x3,
    hadamard_dlambda2,
    hadamard_dlambda2_quadrature,
    scaling_field,
    tangent_space_member,
)
from .jacobians import RampSpec, audit_lemma10_jacobians, quadratic_ramp

__all__ = [
    "BoundaryField",
    "RampSpec",
    "SecondVariation",
    "alpha_and_w0dd",
    "audit_lemma10_jacobians",
    "audit_lemma11_constants",
    "audit_lemma7_bootstrap",
    "audit_lemma8_constants",
    "audit_lemma9_constants",
    "audit_section6_simplifications",
    "audit_tangent",
    "bootstrap_map",
    "dv0",
    "dv0_coefficient",
    "field_x1",
    "field_x2",
    "field_x3",
    "hadamard_dlambda2",
    "hadamard_dlambda2_quadrature",
    "quadratic_ramp",
    "scaling_field",
    "tangent_space_member",
]
