from .core.family import Family, FamilyMember, family_closure, find_member
from .core.graph import Graph, TriangleSite, WyeSite, complete_graph, delta_y, y_delta
from .core.spatial import PLEmbedding, contract_y, random_embedding
from .core.verifier import IdentityReport, verify_main
from .core.weights import WeightMap, derive_weights

__all__ = [
    "Family",
    "FamilyMember",
    "Graph",
    "IdentityReport",
    "PLEmbedding",
    "TriangleSite",
    "WeightMap",
    "WyeSite",
    "complete_graph",
    "contract_y",
    "delta_y",
    "derive_weights",
    "family_closure",
    "find_member",
    "random_embedding",
    "verify_main",
    "y_delta",
]
__version__ = "0.1.0"
