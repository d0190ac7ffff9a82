from .core import (GeometryError, NotConvex, OriginNotInterior,
                   TooFewVertices, ZeroDirection, ZeroVector, SingularMap,
                   DegenerateSystem, NonSmoothPoint, SupportNotUnique,
                   NonPositiveAlpha, DegenerateSample, NoSignChangeFound,
                   NonFiniteValue, Tolerances, SymplecticForm, STANDARD_FORM,
                   ConvexPolygon, RoundedPolygon, BoundaryPoint, omega,
                   validate_polygon, area, ray_boundary, hausdorff_distance,
                   apply_linear)
from .gauge import (GaugeContext, SamplingConfig, gauge_eval,
                    dual_gauge_eval, dual_body, dual_context, antipode_p,
                    dual_normalize, dual_hausdorff)
from .orthogonality import (is_orthogonal, b_plus, b_minus, b_map, a_plus,
                            a_minus)
from .asymmetry import (AsymmetryReport, f_out, f_in, f_hat_out, c_out, c_in,
                        c_hat_out, find_common_orthogonal,
                        asymmetry_profile)
from .generators import (BodySpec, hexagon, rounded, random_convex_polygon,
                         regular, symmetrize, reanchor, jitter)

__all__ = [
    'GeometryError', 'NotConvex', 'OriginNotInterior', 'TooFewVertices',
    'ZeroDirection', 'ZeroVector', 'SingularMap', 'DegenerateSystem',
    'NonSmoothPoint', 'SupportNotUnique', 'NonPositiveAlpha',
    'DegenerateSample', 'NoSignChangeFound', 'NonFiniteValue',
    'Tolerances', 'SymplecticForm', 'STANDARD_FORM', 'ConvexPolygon',
    'RoundedPolygon', 'BoundaryPoint', 'omega', 'validate_polygon', 'area',
    'ray_boundary', 'hausdorff_distance', 'apply_linear',
    'GaugeContext', 'SamplingConfig', 'gauge_eval', 'dual_gauge_eval',
    'dual_body', 'dual_context', 'antipode_p', 'dual_normalize',
    'dual_hausdorff',
    'is_orthogonal', 'b_plus', 'b_minus', 'b_map', 'a_plus', 'a_minus',
    'AsymmetryReport', 'f_out', 'f_in', 'f_hat_out', 'c_out', 'c_in',
    'c_hat_out', 'find_common_orthogonal', 'asymmetry_profile',
    'BodySpec', 'hexagon', 'rounded', 'random_convex_polygon', 'regular',
    'symmetrize', 'reanchor', 'jitter'
]
