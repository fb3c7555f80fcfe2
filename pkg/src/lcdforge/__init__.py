"""LCD codes from J-affine variety codes and their subfield-subcodes."""
from .cyclotomic import (CyclotomicAtlas, CyclotomicSet, atlas, cardinality_window_checks, closure,
                         is_symmetric_univariate, orbit)
from .distance import DistanceResult, distance_report, exact_distance_enumeration, low_weight_search
from .field import GF, FieldError, build_field
from .fixtures import Fixture, Verdict, fixture_table, run_fixture
from .matrix import LinearCode, Matrix, dual_code, hull_dimension
from .subfield import (CodeReport, ConstructionRequest, PreconditionError, construct, lcd_verify,
                       subfield_subcode, subfield_subcode_oracle, trace_class_vector)
from .variety import (ConfigError, DeltaSet, VarietyConfig, build_evaluation_code,
                      close_under_reciprocals, predict_inner_nonzero, reciprocal_set)

__version__ = "0.1.0"

__all__ = [
    "GF", "FieldError", "build_field",
    "Matrix", "LinearCode", "dual_code", "hull_dimension",
    "VarietyConfig", "DeltaSet", "ConfigError", "build_evaluation_code", "predict_inner_nonzero",
    "reciprocal_set", "close_under_reciprocals",
    "CyclotomicSet", "CyclotomicAtlas", "atlas", "orbit", "closure", "is_symmetric_univariate",
    "cardinality_window_checks",
    "DistanceResult", "exact_distance_enumeration", "low_weight_search", "distance_report",
    "ConstructionRequest", "CodeReport", "PreconditionError", "construct", "lcd_verify",
    "subfield_subcode", "subfield_subcode_oracle", "trace_class_vector",
    "Fixture", "Verdict", "fixture_table", "run_fixture",
]
