from .model import (
    Comparator,
    EvidenceCheck,
    GsnNode,
    NodeKind,
    ParamSource,
    ParameterRef,
    SafetyCaseTemplate,
    SemanticType,
)
from .catalog import (
    Finding,
    ParseError,
    StructureError,
    load_template,
    load_template_file,
    render_template_graph,
    topological_order,
    validate_template,
)
from .binding import (
    BindingSchema,
    ConflictError,
    EquivalenceClass,
    MappingError,
    map_features_to_parameters,
    schema_bindings,
)
from ..paths import pilot_template_path, template_dir, wind_template_path

__all__ = [
    "BindingSchema",
    "Comparator",
    "ConflictError",
    "EquivalenceClass",
    "EvidenceCheck",
    "Finding",
    "GsnNode",
    "MappingError",
    "NodeKind",
    "ParamSource",
    "ParameterRef",
    "ParseError",
    "SafetyCaseTemplate",
    "SemanticType",
    "StructureError",
    "load_template",
    "load_template_file",
    "map_features_to_parameters",
    "pilot_template_path",
    "render_template_graph",
    "schema_bindings",
    "template_dir",
    "topological_order",
    "validate_template",
    "wind_template_path",
]
