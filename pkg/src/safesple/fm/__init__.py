from .model import (
    Configuration,
    Feature,
    FeatureModel,
    GroupKind,
    HazardTrace,
    Optionality,
)
from .parser import ParseError, SemanticError, parse_feature_model, unparse
from .analysis import (
    CoverageReport,
    HazardCoverage,
    InvalidSelectionError,
    ValidityReport,
    Verdict,
    check_configuration,
    count_variants,
    hazard_coverage,
    slice_count,
    submodel,
    to_propositional,
)

__all__ = [
    "Configuration",
    "CoverageReport",
    "Feature",
    "FeatureModel",
    "GroupKind",
    "HazardCoverage",
    "HazardTrace",
    "InvalidSelectionError",
    "Optionality",
    "ParseError",
    "SemanticError",
    "ValidityReport",
    "Verdict",
    "check_configuration",
    "count_variants",
    "hazard_coverage",
    "parse_feature_model",
    "slice_count",
    "submodel",
    "to_propositional",
    "unparse",
]
