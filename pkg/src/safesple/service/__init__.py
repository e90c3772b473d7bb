from .policy import AirspacePolicy, PolicyError, PolicyMode, PolicySet
from .decide import EntryDecision, Verdict, decide
from .store import NotFoundError, RequestStore
from .pipeline import EntryPipeline, InvalidConfigurationError, PipelineResult, ValidationError

__all__ = [
    "AirspacePolicy",
    "EntryDecision",
    "EntryPipeline",
    "InvalidConfigurationError",
    "NotFoundError",
    "PipelineResult",
    "PolicyError",
    "PolicyMode",
    "PolicySet",
    "RequestStore",
    "ValidationError",
    "Verdict",
    "decide",
]
