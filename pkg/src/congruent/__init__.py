"""Exact congruent-number witnesses over Q, real quadratic fields and the
explicit cubic fields Q(lambda)."""

from .constructions import (
    cnm_point_search,
    cubic_witness,
    desboves_identity_check,
    kappa_lambda_closed_form,
    quadratic_witness,
    substituted_identity_check,
)
from .correspondence import (
    Triangle,
    generate_triangles,
    point_to_triangle,
    triangle_new,
    triangle_to_points,
)
from .elliptic import (
    TORSION_ORDERS,
    CurveEn,
    CurvePoint,
    certify_infinite_order,
    division_poly_sq,
    point_add,
    scalar_mul,
)
from .exact import Interval, Poly, is_rational_square, rational_roots, squarefree_part
from .number_field import QQ, FieldElement, NumberField
from .tunnell import count_representations, tunnell_verdict

__version__ = "0.1.0"
