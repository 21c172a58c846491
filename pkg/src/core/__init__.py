"""Core components: protocol models, error taxonomy and input guards"""

from .errors import (
    BMGeodesicError,
    InputError,
    VerificationError,
    ConstructionError,
    SearchError,
    OptimizerError,
)
from .protocol import (
    PathKind,
    OptimizerConfig,
    DistanceReport,
    InclusionReport,
    ExtremeDistances,
    PartitionCheck,
    SandwichReport,
    AreaRatioInvariant,
    SeparationWitness,
    FamilyCertificate,
    AttachmentCertificate,
    PathManifest,
)

__all__ = [
    # Errors
    "BMGeodesicError",
    "InputError",
    "VerificationError",
    "ConstructionError",
    "SearchError",
    "OptimizerError",
    # Protocol models
    "PathKind",
    "OptimizerConfig",
    "DistanceReport",
    "InclusionReport",
    "ExtremeDistances",
    "PartitionCheck",
    "SandwichReport",
    "AreaRatioInvariant",
    "SeparationWitness",
    "FamilyCertificate",
    "AttachmentCertificate",
    "PathManifest",
]
